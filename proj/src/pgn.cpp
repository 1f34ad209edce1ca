#include "gretheme/pgn.hpp"

#include "gretheme/san.hpp"

#include <cctype>
#include <optional>

namespace gretheme {

std::string_view result_marker(GameResult r) {
    switch (r) {
        case GameResult::WhiteWin: return "1-0";
        case GameResult::BlackWin: return "0-1";
        case GameResult::Draw: return "1/2-1/2";
    }
    return "*";
}

const std::string* RawGame::header(std::string_view name) const {
    for (const auto& [k, v] : headers)
        if (k == name) return &v;
    return nullptr;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_delimiter(char c) {
    return is_space(c) || c == '{' || c == '}' || c == '(' || c == ')' || c == '[' || c == ']' ||
           c == ';' || c == '$';
}

std::optional<GameResult> parse_result(std::string_view w) {
    if (w == "1-0") return GameResult::WhiteWin;
    if (w == "0-1") return GameResult::BlackWin;
    if (w == "1/2-1/2") return GameResult::Draw;
    return std::nullopt;
}

class Reader {
public:
    Reader(std::string_view text, std::size_t first_index, bool strict)
        : text_(text), next_index_(first_index), strict_(strict) {}

    PgnBatch run() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (is_space(c)) {
                ++pos_;
            } else if (c == '%' && at_line_start()) {
                skip_line();
            } else if (c == '[') {
                if (cur_ && in_movetext_) {
                    fail("truncated game (no result)");
                    finish();
                }
                start_if_needed();
                read_tag();
            } else if (c == '{') {
                start_if_needed();
                auto end = text_.find('}', pos_);
                if (end == std::string_view::npos) {
                    fail("unterminated comment");
                    pos_ = text_.size();
                } else {
                    pos_ = end + 1;
                }
            } else if (c == ';') {
                skip_line();
            } else if (c == '(') {
                start_if_needed();
                in_movetext_ = true;
                ++depth_;
                ++pos_;
            } else if (c == ')') {
                start_if_needed();
                if (depth_ == 0) fail("unbalanced ')'");
                else --depth_;
                ++pos_;
            } else if (c == '$') {
                ++pos_;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
            } else {
                std::size_t start = pos_;
                while (pos_ < text_.size() && !is_delimiter(text_[pos_])) ++pos_;
                if (pos_ == start) ++pos_;  // stray ']' or '}'
                word(text_.substr(start, pos_ - start));
            }
        }
        if (cur_) {
            fail("truncated game (no result)");
            finish();
        }
        return std::move(out_);
    }

private:
    bool at_line_start() const { return pos_ == 0 || text_[pos_ - 1] == '\n'; }

    void skip_line() {
        auto end = text_.find('\n', pos_);
        pos_ = end == std::string_view::npos ? text_.size() : end + 1;
    }

    void start_if_needed() {
        if (cur_) return;
        cur_.emplace();
        cur_->index = next_index_++;
        error_.reset();
        in_movetext_ = false;
        depth_ = 0;
    }

    std::size_t move_number() const { return cur_ ? cur_->moves.size() / 2 + 1 : 0; }

    void fail(const std::string& what, std::size_t move_number = 0) {
        if (!error_) error_.emplace(cur_ ? cur_->index : next_index_, move_number, what);
    }

    void finish() {
        if (error_) {
            if (strict_) throw *error_;
            out_.skipped.push_back(*error_);
        } else {
            out_.games.push_back(std::move(*cur_));
        }
        cur_.reset();
        error_.reset();
        in_movetext_ = false;
        depth_ = 0;
    }

    void read_tag() {
        const std::size_t line_end = std::min(text_.find('\n', pos_), text_.size());
        std::string_view line = text_.substr(pos_, line_end - pos_);
        std::size_t i = 1;
        auto skip_ws = [&] {
            while (i < line.size() && is_space(line[i])) ++i;
        };
        skip_ws();
        std::size_t name_start = i;
        while (i < line.size() && (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_'))
            ++i;
        std::string name(line.substr(name_start, i - name_start));
        skip_ws();
        std::string value;
        bool ok = !name.empty() && i < line.size() && line[i] == '"';
        if (ok) {
            ++i;
            ok = false;
            while (i < line.size()) {
                char c = line[i++];
                if (c == '\\' && i < line.size()) {
                    value += line[i++];
                } else if (c == '"') {
                    ok = true;
                    break;
                } else {
                    value += c;
                }
            }
        }
        if (ok) {
            skip_ws();
            ok = i < line.size() && line[i] == ']';
        }
        if (!ok) {
            fail("malformed header");
            pos_ = line_end;
            return;
        }
        pos_ += i + 1;
        cur_->headers.emplace_back(std::move(name), std::move(value));
    }

    void word(std::string_view w) {
        start_if_needed();
        in_movetext_ = true;
        if (depth_ > 0) return;

        if (w == "*") {
            fail("game has no result");
            finish();
            return;
        }
        if (auto r = parse_result(w)) {
            cur_->result = *r;
            if (const auto* h = cur_->header("Result"); h && *h != "*" && *h != w)
                fail("result marker disagrees with Result header");
            finish();
            return;
        }

        // Move number indication, possibly glued to the move: "12.", "12...", "12.e4".
        std::size_t i = 0;
        while (i < w.size() && std::isdigit(static_cast<unsigned char>(w[i]))) ++i;
        if (i < w.size() && w[i] == '.') {
            while (i < w.size() && w[i] == '.') ++i;
            w.remove_prefix(i);
        } else if (i == w.size()) {
            fail("stray number '" + std::string(w) + "'", move_number());
            return;
        }
        while (!w.empty() && w.front() == '.') w.remove_prefix(1);
        if (w.empty() || w == "e.p.") return;

        if (!parse_san(w)) {
            fail("invalid SAN '" + std::string(w) + "'", move_number());
            return;
        }
        cur_->moves.emplace_back(w);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t next_index_;
    bool strict_;
    PgnBatch out_;
    std::optional<RawGame> cur_;
    std::optional<PgnError> error_;
    bool in_movetext_ = false;
    int depth_ = 0;
};

}  // namespace

std::vector<RawGame> parse_pgn(std::string_view text) {
    return Reader(text, 0, true).run().games;
}

PgnBatch parse_pgn_lenient(std::string_view text, std::size_t first_index) {
    return Reader(text, first_index, false).run();
}

}  // namespace gretheme
