#include "gretheme/theming.hpp"

#include "gretheme/error.hpp"
#include "gretheme/search.hpp"
#include "gretheme/text_io.hpp"
#include "gretheme/vector_ops.hpp"

#include <algorithm>
#include <cctype>

namespace gretheme {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_coordinate(GameToken t) { return index_of(t) >= index_of(GameToken::C0); }

}  // namespace

Theming Theming::chess_default() {
    Theming t;
    t.assign(GameToken::White, {"white"});
    t.assign(GameToken::Black, {"black"});
    t.assign(GameToken::King, {"king"});
    t.assign(GameToken::Queen, {"queen"});
    t.assign(GameToken::Bishop, {"bishop"});
    t.assign(GameToken::Rook, {"rook"});
    t.assign(GameToken::Knight, {"knight"});
    t.assign(GameToken::Pawn, {"pawn"});
    t.assign(GameToken::Capture, {"capture"});
    t.assign(GameToken::Castling, {"castling"});
    t.assign(GameToken::Promote, {"promote", "transform"});
    t.assign(GameToken::Checkmate, {"checkmate"});
    t.assign(GameToken::Check, {"check", "control", "prevent"});
    t.assign(GameToken::Stalemate, {"stalemate", "deadlock"});
    t.assign(GameToken::WinWhite, {"victory"});
    t.assign(GameToken::WinBlack, {"defeat"});
    t.assign(GameToken::Draw, {"draw", "tie", "deadlock"});
    return t;
}

void Theming::assign(GameToken token, std::vector<std::string> words) {
    if (is_coordinate(token))
        throw Error("board coordinate token " + std::string(token_name(token)) +
                    " cannot carry a theme");
    if (words.empty())
        throw Error("token " + std::string(token_name(token)) + " needs at least one word");
    if (words.size() > 3)
        warnings_.push_back("token " + std::string(token_name(token)) + " has " +
                            std::to_string(words.size()) + " words (convention is at most 3)");
    assignments_[token] = std::move(words);
}

Theming Theming::parse(std::string_view text, const std::string& source) {
    Theming t;
    std::size_t lineno = 0;
    while (!text.empty()) {
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string_view::npos)
            throw FileFormatError(source, lineno, "expected 'Token: word[, word...]'");
        const auto name = trim(line.substr(0, colon));
        auto token = parse_token(name);
        if (!token) throw FileFormatError(source, lineno, "unknown token '" + std::string(name) + "'");
        if (t.contains(*token))
            throw FileFormatError(source, lineno, "token '" + std::string(name) + "' listed twice");
        auto words = parse_word_list(line.substr(colon + 1));
        try {
            t.assign(*token, std::move(words));
        } catch (const Error& e) {
            throw FileFormatError(source, lineno, e.what());
        }
    }
    return t;
}

Theming Theming::load(const std::string& path) { return parse(read_text_file(path), path); }

const std::vector<std::string>& Theming::words(GameToken t) const {
    auto it = assignments_.find(t);
    if (it == assignments_.end())
        throw Error("token " + std::string(token_name(t)) + " is outside the theming domain");
    return it->second;
}

std::vector<GameToken> Theming::domain() const {
    std::vector<GameToken> out;
    for (const auto& [t, w] : assignments_) out.push_back(t);
    return out;
}

std::vector<std::string> Theming::word_multiset() const {
    std::vector<std::string> out;
    for (const auto& [t, w] : assignments_) out.insert(out.end(), w.begin(), w.end());
    return out;
}

std::string Theming::to_text() const {
    std::string out;
    for (const auto& [t, words] : assignments_) {
        out += token_name(t);
        out += ':';
        for (std::size_t i = 0; i < words.size(); ++i) out += (i ? ", " : " ") + words[i];
        out += '\n';
    }
    return out;
}

ThemeVectors::ThemeVectors(const Theming& theming, const EmbeddingSpace& words)
    : theming_(theming), words_(&words) {
    for (auto t : theming.domain()) {
        std::vector<Vector> vs;
        for (const auto& w : theming.words(t)) {
            if (!words.contains(w))
                throw Error("theming word '" + w + "' (token " + std::string(token_name(t)) +
                            ") is not in the word space");
            vs.push_back(words.vector(w));
        }
        vectors_.emplace(t, mean(vs));
    }
}

const Vector& ThemeVectors::theme(GameToken token) const {
    auto it = vectors_.find(token);
    if (it == vectors_.end())
        throw Error("token " + std::string(token_name(token)) + " is outside the theming domain");
    return it->second;
}

GuidingVector guiding_from_example(const EmbeddingSpace& words, const std::string& start,
                                   const std::string& finish) {
    GuidingVector g;
    g.displacement = subtract(words[finish], words[start]);
    g.mode = GuideMode::Example;
    g.start_label = start;
    g.finish_label = finish;
    return g;
}

GuidingVector guiding_from_field(const EmbeddingSpace& words, const Theming& theming,
                                 const std::vector<std::string>& target) {
    if (target.empty()) throw Error("semantic field is empty");
    std::vector<Vector> a, b;
    for (const auto& w : theming.word_multiset()) a.push_back(words.vector(w));
    for (const auto& w : target) b.push_back(words.vector(w));
    const Vector mean_a = mean(a);
    const Vector mean_b = mean(b);

    GuidingVector g;
    g.displacement = subtract(mean_b, mean_a);
    g.mode = GuideMode::Field;
    auto label = [&](const Vector& v) {
        if (norm2(v) == 0.0) return std::string();
        return nearest(words, v, 1).front().entry;
    };
    g.start_label = label(mean_a);
    g.finish_label = label(mean_b);
    return g;
}

std::vector<std::string> parse_word_list(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ',' || text[i] == '\n') {
            auto w = trim(text.substr(start, i - start));
            if (!w.empty() && w.front() != '#') out.emplace_back(w);
            start = i + 1;
        }
    }
    return out;
}

}  // namespace gretheme
