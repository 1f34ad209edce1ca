// gretheme: ingest chess games, train game vectors, and retheme game tokens
// with word vectors.

#include "gretheme/embedding_space.hpp"
#include "gretheme/error.hpp"
#include "gretheme/ingest.hpp"
#include "gretheme/retheme.hpp"
#include "gretheme/search.hpp"
#include "gretheme/skipgram.hpp"
#include "gretheme/text_io.hpp"
#include "gretheme/theming.hpp"
#include "gretheme/valuation.hpp"
#include "gretheme/vector_ops.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

using namespace gretheme;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : Error {
    using Error::Error;
};

std::string fixed4(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    return buf;
}

double round4(double x) { return std::round(x * 1e4) / 1e4; }

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.resize(width, ' ');
    return s;
}

std::string data_path(const std::string& name) { return std::string(GRETHEME_DATA_DIR) + "/" + name; }

std::string file_hash(const std::string& path) { return hex64(fnv1a64(read_text_file(path))); }

void log(const std::string& msg) { std::cerr << "gretheme: " << msg << '\n'; }

// ---------------------------------------------------------------------------
// Settings

struct Global {
    std::string config;
    std::string format = "text";
    int threads = 0;
};

struct IngestArgs {
    std::string pgn, out, convention = "mover";
};

struct TrainArgs {
    std::string corpus, out;
    TrainingConfig config;
};

struct NeighborsArgs {
    std::string words;
    std::vector<std::string> expression;
    std::size_t k = 10;
    bool alphabetic = false;
    std::string out;
};

struct RethemeArgs {
    std::string words, game, theming, nouns, out;
    std::vector<std::string> guide_example;
    std::string guide_field;
    std::string mode = "combined";
    std::size_t n = 10;
    std::uint64_t seed = 1;
    std::size_t k = 3;
    bool discard_start = false;
    // pieces only
    std::string from_neighbors;
    std::vector<std::string> discard;
};

struct AnalyzeArgs {
    std::string game, words, expert, out;
};

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) std::cout << text;
    else write_text_file(out, text);
}

void check_format(const std::string& f) {
    if (f != "text" && f != "json" && f != "tsv") throw UsageError("unknown format '" + f + "'");
}

// ---------------------------------------------------------------------------
// Environment and config file layering. CLI values are already set when this
// runs; each still-unset option takes GRETHEME_<NAME>, then the config file.

std::string env_name(const std::string& option) {
    std::string s = "GRETHEME_";
    for (char c : option) s += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

std::vector<std::string> split_values(const std::string& s, bool many) {
    if (!many) return {s};
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

void fill(CLI::Option* opt, std::vector<std::string> values) {
    opt->add_result(std::move(values));
    opt->run_callback();
}

void layer_options(const std::vector<CLI::Option*>& options, const std::string& section,
                   const std::vector<CLI::ConfigItem>& items) {
    for (auto* opt : options) {
        const std::string name = opt->get_single_name();
        if (name.empty() || name == "help" || name == "config" || opt->count() > 0) continue;
        const bool many = opt->get_expected_max() > 1;
        if (const char* v = std::getenv(env_name(name).c_str())) {
            fill(opt, split_values(v, many));
            continue;
        }
        auto key_matches = [&](const CLI::ConfigItem& item) {
            std::string key = item.name;
            std::replace(key.begin(), key.end(), '_', '-');
            return key == name;
        };
        const CLI::ConfigItem* found = nullptr;
        for (const auto& item : items) {
            if (!key_matches(item)) continue;
            if (item.parents.size() == 1 && item.parents[0] == section) found = &item;
            else if (item.parents.empty() && !found) found = &item;
        }
        if (found) fill(opt, found->inputs);
    }
}

void apply_layers(CLI::App& app, CLI::App* sub, const std::string& config) {
    std::vector<CLI::ConfigItem> items;
    if (!config.empty()) {
        if (!std::filesystem::exists(config)) throw UsageError("config file not found: " + config);
        items = CLI::ConfigTOML().from_file(config);
    }
    layer_options(app.get_options(), "", items);
    if (sub) layer_options(sub->get_options(), sub->get_name(), items);
}

void require(const std::string& value, const std::string& flag) {
    if (value.empty()) throw UsageError("--" + flag + " is required");
}

// ---------------------------------------------------------------------------
// ingest

int cmd_ingest(const Global& g, const IngestArgs& a) {
    require(a.pgn, "pgn");
    require(a.out, "out");
    IngestOptions opts;
    opts.threads = g.threads;
    if (a.convention == "mover") opts.convention = RowConvention::MoverRelative;
    else if (a.convention == "absolute") opts.convention = RowConvention::Absolute;
    else throw UsageError("unknown row convention '" + a.convention + "'");

    auto result = ingest_pgn_file(a.pgn, opts);
    for (const auto& e : result.errors) log("skipped " + e);
    std::string corpus;
    for (const auto& s : result.sentences) corpus += s.to_string() + '\n';
    write_text_file(a.out, corpus);

    if (g.format == "json") {
        json j;
        j["command"] = "ingest";
        j["games_parsed"] = result.games_parsed;
        j["games_skipped"] = result.games_skipped;
        json counts = json::object();
        for (auto t : all_tokens()) counts[std::string(token_name(t))] = result.token_counts[index_of(t)];
        j["token_counts"] = counts;
        j["input_hash"] = file_hash(a.pgn);
        std::cout << j.dump(2) << '\n';
    } else {
        const char* sep = g.format == "tsv" ? "\t" : ": ";
        std::cout << "games_parsed" << sep << result.games_parsed << '\n'
                  << "games_skipped" << sep << result.games_skipped << '\n';
        for (auto t : all_tokens())
            std::cout << token_name(t) << sep << result.token_counts[index_of(t)] << '\n';
    }
    if (result.games_parsed == 0) {
        log("no parsable games in " + a.pgn);
        return 1;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// train

int cmd_train(const Global& g, TrainArgs a) {
    require(a.corpus, "corpus");
    require(a.out, "out");
    auto sentences = read_corpus(a.corpus);
    if (sentences.empty()) throw UsageError("corpus " + a.corpus + " has no sentences");
    const Corpus corpus = build_vocab(std::move(sentences), a.config.min_count);
    const auto model = train(corpus, a.config);
    for (const auto& w : model.warnings) log("warning: " + w);
    save_text_vectors(model.input, a.out);

    const auto scores = pair_scores(model, corpus, a.config.window, a.config.seed, 20000);
    if (g.format == "json") {
        json j;
        j["command"] = "train";
        j["sentences"] = corpus.sentences.size();
        j["vocabulary"] = corpus.vocabulary.size();
        j["dimension"] = a.config.dimension;
        j["epochs"] = a.config.epochs;
        j["seed"] = a.config.seed;
        j["pairs_per_epoch"] = model.pairs_per_epoch;
        j["positive_pair_score"] = round4(scores.positive_mean);
        j["negative_pair_score"] = round4(scores.negative_mean);
        j["corpus_hash"] = file_hash(a.corpus);
        std::cout << j.dump(2) << '\n';
    } else {
        const char* sep = g.format == "tsv" ? "\t" : ": ";
        std::cout << "sentences" << sep << corpus.sentences.size() << '\n'
                  << "vocabulary" << sep << corpus.vocabulary.size() << '\n'
                  << "dimension" << sep << a.config.dimension << '\n'
                  << "seed" << sep << a.config.seed << '\n'
                  << "pairs_per_epoch" << sep << model.pairs_per_epoch << '\n'
                  << "positive_pair_score" << sep << fixed4(scores.positive_mean) << '\n'
                  << "negative_pair_score" << sep << fixed4(scores.negative_mean) << '\n';
    }
    return 0;
}

// ---------------------------------------------------------------------------
// neighbors

struct Term {
    double sign;
    std::string word;
};

std::vector<Term> parse_expression(const std::vector<std::string>& parts) {
    std::vector<std::string> tokens;
    for (const auto& p : parts) {
        std::istringstream in(p);
        for (std::string t; in >> t;) tokens.push_back(t);
    }
    std::vector<Term> terms;
    double sign = 1.0;
    bool want_word = true;
    for (const auto& t : tokens) {
        if (t == "+" || t == "-") {
            if (want_word && !terms.empty()) throw UsageError("two operators in a row in expression");
            sign = t == "-" ? -1.0 : 1.0;
            want_word = true;
        } else {
            if (!want_word) throw UsageError("missing operator before '" + t + "'");
            terms.push_back({sign, t});
            sign = 1.0;
            want_word = false;
        }
    }
    if (terms.empty() || want_word) throw UsageError("incomplete expression");
    return terms;
}

int cmd_neighbors(const Global& g, const NeighborsArgs& a) {
    require(a.words, "words");
    if (a.k == 0) throw UsageError("--k must be at least 1");
    const auto terms = parse_expression(a.expression);
    const auto space = load_text_vectors(a.words);
    Vector q(space.dimension(), 0.0);
    std::vector<std::string> exclude;
    for (const auto& t : terms) {
        const auto v = space[t.word];
        for (std::size_t i = 0; i < q.size(); ++i) q[i] += t.sign * v[i];
        if (terms.size() > 1) exclude.push_back(t.word);
    }
    SearchOptions so;
    so.alphabetic_only = a.alphabetic;
    so.threads = g.threads;
    const auto top = nearest(space, q, a.k, exclude, so);

    std::string expr;
    for (std::size_t i = 0; i < terms.size(); ++i)
        expr += (i ? (terms[i].sign < 0 ? " - " : " + ") : (terms[i].sign < 0 ? "-" : "")) + terms[i].word;

    std::ostringstream out;
    if (g.format == "json") {
        json j;
        j["command"] = "neighbors";
        j["expression"] = expr;
        j["k"] = a.k;
        j["neighbors"] = json::array();
        for (const auto& n : top) j["neighbors"].push_back({{"word", n.entry}, {"score", round4(n.score)}});
        out << j.dump(2) << '\n';
    } else if (g.format == "tsv") {
        out << "rank\tword\tscore\n";
        for (std::size_t i = 0; i < top.size(); ++i)
            out << i + 1 << '\t' << top[i].entry << '\t' << fixed4(top[i].score) << '\n';
    } else {
        out << "# " << expr << '\n';
        for (std::size_t i = 0; i < top.size(); ++i)
            out << pad(std::to_string(i + 1), 4) << pad(top[i].entry, 24) << fixed4(top[i].score) << '\n';
    }
    emit(out.str(), a.out);
    return 0;
}

// ---------------------------------------------------------------------------
// retheme / pieces

const std::array<GameToken, 6> kPieceTokens = {GameToken::King,   GameToken::Queen,
                                               GameToken::Bishop, GameToken::Rook,
                                               GameToken::Knight, GameToken::Pawn};

RethemeMode parse_mode(const std::string& m) {
    if (m == "baseline") return RethemeMode::Baseline;
    if (m == "combined") return RethemeMode::Combined;
    throw UsageError("unknown mode '" + m + "' (baseline or combined)");
}

std::vector<std::string> field_words(const std::string& spec) {
    if (!spec.empty() && spec[0] == '@') return parse_word_list(read_text_file(spec.substr(1)));
    return parse_word_list(spec);
}

struct RethemeRun {
    RethemeTable table;
    GuidingVector guide;
    std::vector<std::string> field;
    json inputs = json::object();
};

RethemeRun run_retheme(const Global& g, const RethemeArgs& a) {
    require(a.words, "words");
    const auto mode = parse_mode(a.mode);
    if (mode == RethemeMode::Combined) require(a.game, "game");
    if (a.n == 0) throw UsageError("--n must be at least 1");
    if (a.k == 0) throw UsageError("--k must be at least 1");
    const bool by_example = !a.guide_example.empty();
    const bool by_field = !a.guide_field.empty();
    if (by_example == by_field) throw UsageError("give exactly one of --guide-example or --guide-field");
    if (by_example && a.guide_example.size() != 2)
        throw UsageError("--guide-example takes a start and a finish word");

    RethemeRun run;
    const Theming theming = a.theming.empty() ? Theming::chess_default() : Theming::load(a.theming);
    for (const auto& w : theming.warnings()) log("warning: " + w);
    const auto words = load_text_vectors(a.words);
    run.inputs["words"] = file_hash(a.words);
    if (!a.theming.empty()) run.inputs["theming"] = file_hash(a.theming);

    std::optional<EmbeddingSpace> game;
    if (mode == RethemeMode::Combined) {
        game = load_text_vectors(a.game);
        run.inputs["game"] = file_hash(a.game);
    }
    const ThemeVectors themes(theming, words);
    if (by_example) {
        run.guide = guiding_from_example(words, a.guide_example[0], a.guide_example[1]);
    } else {
        run.field = field_words(a.guide_field);
        run.guide = guiding_from_field(words, theming, run.field);
    }

    const std::string nouns_path = a.nouns.empty() ? data_path("nouns.txt") : a.nouns;
    const auto nouns = NounList::load(nouns_path);

    RethemeOptions opts;
    opts.mode = mode;
    opts.sample_size = a.n;
    opts.seed = a.seed;
    opts.query.k = a.k;
    opts.discard_start = a.discard_start;
    opts.threads = g.threads;
    run.table = retheme_all(themes, game ? &*game : nullptr, run.guide, opts, nouns.predicate());
    return run;
}

json guide_json(const RethemeRun& run) {
    json j;
    j["kind"] = run.guide.mode == GuideMode::Example ? "example" : "field";
    j["start"] = run.guide.start_label;
    j["finish"] = run.guide.finish_label;
    if (!run.field.empty()) j["field"] = run.field;
    return j;
}

std::string guide_text(const RethemeRun& run) {
    return std::string(run.guide.mode == GuideMode::Example ? "example" : "field") + "(" +
           run.guide.start_label + " -> " + run.guide.finish_label + ")";
}

std::string selection_text(const Selection& s) {
    if (!s.word) return "-";
    return *s.word + (s.is_noun ? "" : "*");
}

std::string render_retheme(const Global& g, const RethemeArgs& a, const RethemeRun& run) {
    const bool combined = parse_mode(a.mode) == RethemeMode::Combined;
    std::ostringstream out;
    if (g.format == "json") {
        json j;
        j["command"] = "retheme";
        j["mode"] = a.mode;
        j["guide"] = guide_json(run);
        j["n"] = combined ? json(a.n) : json(nullptr);
        j["seed"] = a.seed;
        j["k"] = a.k;
        j["inputs"] = run.inputs;
        j["rows"] = json::array();
        for (const auto& r : run.table.rows) {
            json row;
            row["token"] = token_name(r.token);
            row["neighbors"] = json::array();
            for (const auto& n : r.top_neighbors)
                row["neighbors"].push_back({{"word", n.entry}, {"score", round4(n.score)}});
            row["selected"] = r.selection.word ? json(*r.selection.word) : json(nullptr);
            row["selected_is_noun"] = r.selection.is_noun;
            row["r_squared"] = r.r_squared ? json(round4(*r.r_squared)) : json(nullptr);
            if (combined) {
                row["sample"] = json::array();
                for (auto t : r.sample) row["sample"].push_back(token_name(t));
            }
            j["rows"].push_back(row);
        }
        if (run.table.mean_r_squared)
            j["r_squared"] = {{"mean", round4(*run.table.mean_r_squared)},
                              {"std", round4(*run.table.std_r_squared)}};
        else
            j["r_squared"] = nullptr;
        out << j.dump(2) << '\n';
    } else if (g.format == "tsv") {
        out << "token\tneighbors\tselected\tr_squared\n";
        for (const auto& r : run.table.rows) {
            out << token_name(r.token) << '\t';
            for (std::size_t i = 0; i < r.top_neighbors.size(); ++i)
                out << (i ? " " : "") << r.top_neighbors[i].entry;
            out << '\t' << selection_text(r.selection) << '\t'
                << (r.r_squared ? fixed4(*r.r_squared) : "N/A") << '\n';
        }
    } else {
        out << "# retheme mode=" << a.mode << " guide=" << guide_text(run);
        if (combined) out << " N=" << a.n;
        out << " seed=" << a.seed << " k=" << a.k << '\n';
        out << pad("Token", 12) << pad("Nearest words", 48) << pad("Selected", 20) << "R2\n";
        for (const auto& r : run.table.rows) {
            std::string nb;
            for (std::size_t i = 0; i < r.top_neighbors.size(); ++i)
                nb += (i ? " " : "") + r.top_neighbors[i].entry;
            out << pad(std::string(token_name(r.token)), 12) << pad(nb, 48)
                << pad(selection_text(r.selection), 20)
                << (r.r_squared ? fixed4(*r.r_squared) : "N/A") << '\n';
        }
        out << "Average R2: ";
        if (run.table.mean_r_squared)
            out << fixed4(*run.table.mean_r_squared) << " +/- " << fixed4(*run.table.std_r_squared) << '\n';
        else
            out << "N/A\n";
    }
    return out.str();
}

int cmd_retheme(const Global& g, const RethemeArgs& a) {
    const auto run = run_retheme(g, a);
    emit(render_retheme(g, a, run), a.out);
    return 0;
}

// "Token<TAB>word word word" lines; the words are a token's nearest
// neighbors, best first.
std::map<GameToken, std::vector<Neighbor>> read_neighbor_fixture(const std::string& path) {
    std::map<GameToken, std::vector<Neighbor>> out;
    LineReader reader(path);
    std::string line;
    while (reader.next(line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        const std::string name = line.substr(0, tab);
        const auto token = parse_token(name);
        if (!token) throw FileFormatError(path, reader.line_number(), "unknown token '" + name + "'");
        std::vector<Neighbor> ns;
        if (tab != std::string::npos) {
            std::istringstream in(line.substr(tab + 1));
            for (std::string w; in >> w;) ns.push_back({w, 0.0, ns.size()});
        }
        out[*token] = std::move(ns);
    }
    return out;
}

int cmd_pieces(const Global& g, const RethemeArgs& a) {
    std::vector<std::pair<GameToken, Selection>> rows;
    json meta = json::object();
    std::vector<std::string> discard = a.discard;
    if (!a.from_neighbors.empty()) {
        const auto fixture = read_neighbor_fixture(a.from_neighbors);
        const auto nouns = NounList::load(a.nouns.empty() ? data_path("nouns.txt") : a.nouns);
        for (auto t : kPieceTokens) {
            auto it = fixture.find(t);
            Selection s;
            if (it != fixture.end()) s = select_from_neighbors(it->second, discard, nouns.predicate());
            rows.emplace_back(t, s);
        }
        meta["source"] = "neighbors";
        meta["inputs"] = {{"neighbors", file_hash(a.from_neighbors)}};
    } else {
        RethemeArgs args = a;
        const auto run = run_retheme(g, args);
        const auto nouns = NounList::load(a.nouns.empty() ? data_path("nouns.txt") : a.nouns);
        if (discard.empty()) discard = discard_words(run.guide, a.discard_start);
        for (auto t : kPieceTokens)
            for (const auto& r : run.table.rows)
                if (r.token == t)
                    rows.emplace_back(t, select_from_neighbors(r.top_neighbors, discard, nouns.predicate()));
        meta["source"] = "retheme";
        meta["mode"] = a.mode;
        meta["guide"] = guide_json(run);
        meta["n"] = a.mode == "combined" ? json(a.n) : json(nullptr);
        meta["seed"] = a.seed;
        meta["inputs"] = run.inputs;
    }

    std::ostringstream out;
    if (g.format == "json") {
        json j;
        j["command"] = "pieces";
        for (auto& [k, v] : meta.items()) j[k] = v;
        j["discard"] = discard;
        j["pieces"] = json::array();
        for (const auto& [t, s] : rows)
            j["pieces"].push_back({{"token", token_name(t)},
                                   {"word", s.word ? json(*s.word) : json(nullptr)},
                                   {"is_noun", s.is_noun}});
        out << j.dump(2) << '\n';
    } else {
        const bool tsv = g.format == "tsv";
        if (tsv) out << "token\tword\tis_noun\n";
        for (const auto& [t, s] : rows) {
            if (tsv)
                out << token_name(t) << '\t' << (s.word ? *s.word : "") << '\t'
                    << (s.is_noun ? "true" : "false") << '\n';
            else
                out << pad(std::string(token_name(t)), 10) << selection_text(s) << '\n';
        }
        if (!tsv) {
            bool flagged = false;
            for (const auto& [t, s] : rows) flagged |= !s.is_noun;
            if (flagged) out << "(* not in the noun list; - nothing left after discards)\n";
        }
    }
    emit(out.str(), a.out);
    return 0;
}

// ---------------------------------------------------------------------------
// analyze

int cmd_analyze(const Global& g, const AnalyzeArgs& a) {
    require(a.game, "game");
    const auto game = load_text_vectors(a.game);
    std::optional<EmbeddingSpace> words;
    json inputs = {{"game", file_hash(a.game)}};
    if (!a.words.empty()) {
        words = load_text_vectors(a.words);
        inputs["words"] = file_hash(a.words);
    }
    const auto expert = a.expert.empty() ? ExpertValuation::evans() : ExpertValuation::load(a.expert);
    const auto report = valuation_report(game, words ? &*words : nullptr, "", expert);

    std::ostringstream out;
    if (g.format == "json") {
        json j;
        j["command"] = "analyze";
        j["pieces"] = json::array();
        for (auto p : kValuationPieces) j["pieces"].push_back(piece_name(p));
        json ev = json::array();
        for (double v : expert.values()) ev.push_back(round4(v));
        j["expert"] = ev;
        j["inputs"] = inputs;
        j["rows"] = json::array();
        for (const auto& r : report.rows) {
            json row;
            row["label"] = r.label;
            row["anchor"] = r.anchor;
            row["space"] = r.game_space ? "game" : "word";
            json raw = json::array(), norm = json::array();
            for (double v : r.raw) raw.push_back(round4(v));
            for (double v : r.normalized) norm.push_back(round4(v));
            row["raw"] = raw;
            row["normalized"] = norm;
            row["spearman"] = round4(r.spearman_vs_expert);
            j["rows"].push_back(row);
        }
        out << j.dump(2) << '\n';
    } else if (g.format == "tsv") {
        out << "row";
        for (auto p : kValuationPieces) out << '\t' << piece_name(p);
        out << "\tspearman\n";
        out << "expert";
        for (double v : expert.values()) out << '\t' << fixed4(v);
        out << "\t1.0000\n";
        for (const auto& r : report.rows) {
            out << (r.game_space ? "game:" : "word:") << r.anchor;
            for (double v : r.normalized) out << '\t' << fixed4(v);
            out << '\t' << fixed4(r.spearman_vs_expert) << '\n';
        }
    } else {
        out << pad("", 48);
        for (auto p : kValuationPieces) out << pad(std::string(piece_name(p)), 9);
        out << "Spearman\n";
        out << pad("Expert valuation", 48);
        for (double v : expert.values()) out << pad(fixed4(v), 9);
        out << fixed4(1.0) << '\n';
        for (const auto& r : report.rows) {
            out << pad(r.label, 48);
            for (double v : r.normalized) out << pad(fixed4(v), 9);
            out << fixed4(r.spearman_vs_expert) << '\n';
        }
        out << "(similarities linearly normalised to [1, 10])\n";
    }
    emit(out.str(), a.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Retheme chess tokens with game and word embeddings"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", "gretheme 0.1");

    Global g;
    app.add_option("--config", g.config, "TOML config file ([section] per subcommand)");
    app.add_option("--format", g.format, "Output format: text, json or tsv");
    app.add_option("--threads", g.threads, "OpenMP threads (0: default)");

    IngestArgs ia;
    auto* ingest = app.add_subcommand("ingest", "Encode PGN games into a token corpus");
    ingest->add_option("--pgn", ia.pgn, "PGN file (.pgn or .pgn.gz)");
    ingest->add_option("--out", ia.out, "Corpus output, one game per line");
    ingest->add_option("--convention", ia.convention, "Row numbering: mover or absolute");

    TrainArgs ta;
    auto* trainc = app.add_subcommand("train", "Train skip-gram game vectors on a corpus");
    trainc->add_option("--corpus", ta.corpus, "Corpus file");
    trainc->add_option("--out", ta.out, "Vector file to write");
    trainc->add_option("--dimension", ta.config.dimension);
    trainc->add_option("--window", ta.config.window);
    trainc->add_option("--negatives", ta.config.negatives);
    trainc->add_option("--epochs", ta.config.epochs);
    trainc->add_option("--learning-rate", ta.config.learning_rate);
    trainc->add_option("--min-count", ta.config.min_count);
    trainc->add_option("--subsample", ta.config.subsample);
    trainc->add_option("--seed", ta.config.seed);
    trainc->add_option("--train-threads", ta.config.threads,
                       "Trainer threads; more than 1 is not reproducible");

    NeighborsArgs na;
    auto* neighbors = app.add_subcommand("neighbors", "Nearest words to a word or 'a - b + c'");
    neighbors->add_option("expression", na.expression, "Word or expression");
    neighbors->add_option("--words", na.words, "Word vector file");
    neighbors->add_option("--k", na.k, "Number of neighbors");
    neighbors->add_flag("--alphabetic", na.alphabetic, "Only entries made of letters");
    neighbors->add_option("--out", na.out, "Write the listing here instead of stdout");

    RethemeArgs ra;
    auto add_retheme_options = [&](CLI::App* c) {
        c->add_option("--words", ra.words, "Word vector file");
        c->add_option("--game", ra.game, "Game vector file (combined mode)");
        c->add_option("--theming", ra.theming, "Theming file (default: built-in chess theme)");
        c->add_option("--nouns", ra.nouns, "Noun list for word selection");
        c->add_option("--guide-example", ra.guide_example, "Start and finish word")->expected(2);
        c->add_option("--guide-field", ra.guide_field, "Comma-separated target words, or @file");
        c->add_option("--mode", ra.mode, "baseline or combined");
        c->add_option("--n", ra.n, "Regression sample size");
        c->add_option("--seed", ra.seed, "Sampling seed");
        c->add_option("--k", ra.k, "Neighbors per token");
        c->add_flag("--discard-start", ra.discard_start, "Also discard the guide's start word");
        c->add_option("--out", ra.out, "Write the table here instead of stdout");
    };
    auto* retheme = app.add_subcommand("retheme", "Retheme every themed token");
    add_retheme_options(retheme);
    auto* pieces = app.add_subcommand("pieces", "Pick one word per chess piece");
    add_retheme_options(pieces);
    pieces->add_option("--from-neighbors", ra.from_neighbors, "Precomputed neighbor lists (TSV)");
    pieces->add_option("--discard", ra.discard, "Words to drop before selection");

    AnalyzeArgs aa;
    auto* analyze = app.add_subcommand("analyze", "Compare piece similarities to expert valuation");
    analyze->add_option("--game", aa.game, "Game vector file");
    analyze->add_option("--words", aa.words, "Word vector file");
    analyze->add_option("--expert", aa.expert, "Expert valuation file");
    analyze->add_option("--out", aa.out, "Write the report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        apply_layers(app, sub, g.config);
        check_format(g.format);
        if (sub == ingest) return cmd_ingest(g, ia);
        if (sub == trainc) return cmd_train(g, ta);
        if (sub == neighbors) return cmd_neighbors(g, na);
        if (sub == retheme) return cmd_retheme(g, ra);
        if (sub == pieces) return cmd_pieces(g, ra);
        if (sub == analyze) return cmd_analyze(g, aa);
        return 2;
    } catch (const CLI::ParseError& e) {
        log(e.what());
        return 1;
    } catch (const Error& e) {
        log(e.what());
        return 1;
    } catch (const std::exception& e) {
        log(std::string("internal error: ") + e.what());
        return 2;
    }
}
