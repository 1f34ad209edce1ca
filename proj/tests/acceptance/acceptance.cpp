// Acceptance suite. Prints one PASS/FAIL line per criterion.
//
//   acceptance --cli <gretheme binary> [--only 1,4,...] [--require-all]
//
// Criteria 2, 3 and 7 need real data, located through environment variables:
//   GRETHEME_PGN    real games (.pgn or .pgn.gz), >= 100,000 for criterion 7
//   GRETHEME_GLOVE  50-d word vectors with a 400k vocabulary
// Without them those criteria print FAIL with "not evaluated". The exit code
// is 1 if any evaluated criterion fails. With --require-all an unevaluated
// criterion exits 77 instead (ctest skip) when nothing evaluated failed.

#include "gretheme/encoder.hpp"
#include "gretheme/ingest.hpp"
#include "gretheme/pgn.hpp"
#include "gretheme/retheme.hpp"
#include "gretheme/search.hpp"
#include "gretheme/skipgram.hpp"
#include "gretheme/text_io.hpp"
#include "gretheme/theming.hpp"
#include "gretheme/valuation.hpp"

#include "../support.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace gretheme;

namespace {

struct Outcome {
    enum Kind { Pass, Fail, NotEvaluated } kind = Fail;
    std::string detail;
};

Outcome pass(std::string d) { return {Outcome::Pass, std::move(d)}; }
Outcome fail(std::string d) { return {Outcome::Fail, std::move(d)}; }
Outcome not_evaluated(std::string d) { return {Outcome::NotEvaluated, std::move(d)}; }

std::string fmt(double x, int prec = 6) {
    std::ostringstream o;
    o.precision(prec);
    o << x;
    return o.str();
}

std::string env(const char* name) {
    const char* v = std::getenv(name);
    return v ? v : "";
}

std::string cli_path;

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

// Theming words plus the wildlife field and filler words, random 50-d.
EmbeddingSpace synthetic_words(std::uint64_t seed) {
    std::set<std::string> words;
    for (const auto& w : Theming::chess_default().word_multiset()) words.insert(w);
    for (const char* w : {"lion", "elephant", "zebra", "eating", "becoming", "extinction", "control", "win",
                          "loss", "wild", "face"})
        words.insert(w);
    std::vector<std::string> all(words.begin(), words.end());
    for (const auto& f : testing::numbered("filler", 1000)) all.push_back(f);
    return testing::random_space(all, 50, seed);
}

// Game vectors trained on a slice of the random-game fixture.
const EmbeddingSpace& trained_game_space() {
    static const EmbeddingSpace space = [] {
        const auto text = read_text_file(testing::fixture("random_10k.pgn.gz"));
        const auto part = ingest_pgn(std::string_view(text).substr(0, text.size() / 30));
        std::vector<Sentence> s;
        for (const auto& g : part.sentences) s.push_back(g.tokens);
        TrainingConfig c;
        c.epochs = 2;
        c.seed = 17;
        return train(build_vocab(std::move(s)), c).input;
    }();
    return space;
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
    // Excerpts as printed, outcome spelled WinWhite.
    const std::vector<std::string> want{
        "Turn Black Rook C4 R7 C4 R0 Capture Knight",
        "Turn Black Pawn C5 R1 C5 R0 Promote Queen Check",
        "Turn White King C4 R7 C2 R7 Castling Checkmate WinWhite",
    };
    const auto games = parse_pgn(read_text_file(testing::fixture("table1.pgn")));
    if (games.size() != 3) return fail("fixture has " + std::to_string(games.size()) + " games");
    for (std::size_t i = 0; i < 3; ++i) {
        const auto sentence = encode_game(games[i]);
        const auto clause = split_clauses(sentence.tokens).front();
        std::string got;
        for (auto t : clause) got += (got.empty() ? "" : " ") + std::string(token_name(t));
        if (got != want[i]) return fail("row " + std::to_string(i + 1) + ": got '" + got + "'");
    }
    return pass("3 rows byte-exact");
}

Outcome corpus_closure(const std::string& path, std::size_t min_games) {
    IngestResult r;
    try {
        r = ingest_pgn_file(path);
    } catch (const std::exception& e) {
        return fail(std::string("exception: ") + e.what());
    }
    std::size_t in_set = 0;
    for (const auto& s : r.sentences)
        for (auto t : s.tokens) in_set += index_of(t) < kTokenCount;
    std::size_t total = 0;
    for (auto c : r.token_counts) total += c;
    if (r.games_parsed < min_games)
        return fail(std::to_string(r.games_parsed) + " games parsed, need " + std::to_string(min_games));
    if (in_set != total) return fail("tokens outside the 34-token set");
    if (!r.errors.empty())
        return fail(std::to_string(r.errors.size()) + " games raised errors, first: " + r.errors.front());
    return pass(std::to_string(r.games_parsed) + " games, " + std::to_string(total) +
                " tokens, all in the 34-token set, 0 exceptions");
}

Outcome criterion2() {
    const auto real = env("GRETHEME_PGN");
    if (real.empty()) {
        const auto proxy = corpus_closure(testing::fixture("random_10k.pgn.gz"), 10000);
        return not_evaluated("no real games (set GRETHEME_PGN); synthetic proxy on 10,000 random legal games: " +
                             std::string(proxy.kind == Outcome::Pass ? "ok, " : "FAILED, ") + proxy.detail);
    }
    return corpus_closure(real, 10000);
}

Outcome criterion3() {
    const auto path = env("GRETHEME_GLOVE");
    if (path.empty()) return not_evaluated("no word vectors (set GRETHEME_GLOVE)");
    const auto words = load_text_vectors(path);
    std::string detail;
    bool ok = true;
    auto analogy = [&](const std::string& a, const std::string& b, const std::string& c, const std::string& want) {
        std::vector<double> q(words.dimension());
        const auto va = words[a], vb = words[b], vc = words[c];
        for (std::size_t i = 0; i < q.size(); ++i) q[i] = va[i] - vb[i] + vc[i];
        const std::vector<std::string> ex{a, b, c};
        const auto top = nearest(words, q, 3, ex);
        bool found = false;
        std::string list;
        for (const auto& n : top) {
            found |= n.entry == want;
            list += (list.empty() ? "" : " ") + n.entry;
        }
        ok &= found;
        detail += a + "-" + b + "+" + c + " -> [" + list + "]; ";
    };
    analogy("sky", "blue", "grass", "green");
    analogy("king", "man", "woman", "queen");
    return ok ? pass(detail) : fail(detail);
}

RethemeTable synthetic_retheme(std::size_t n, std::uint64_t seed) {
    static const EmbeddingSpace words = synthetic_words(5);
    static const ThemeVectors themes(Theming::chess_default(), words);
    static const GuidingVector guide = guiding_from_field(
        words, Theming::chess_default(),
        {"lion", "elephant", "zebra", "eating", "becoming", "extinction", "control", "win", "loss"});
    RethemeOptions opts;
    opts.sample_size = n;
    opts.seed = seed;
    return retheme_all(themes, &trained_game_space(), guide, opts, NounPredicate{});
}

Outcome criterion4() {
    std::string detail;
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto t = synthetic_retheme(5, seed);
        if (t.rows.size() != 17) return fail("expected 17 rows");
        const double m = *t.mean_r_squared, s = *t.std_r_squared;
        detail += "seed " + std::to_string(seed) + ": " + fmt(m, 10) + " +/- " + fmt(s, 3) + "; ";
        if (std::abs(m - 1.0) > 1e-6 || s > 1e-6) return fail(detail);
    }
    return pass("N=5 over 17 tokens, " + detail);
}

Outcome criterion5() {
    double lo = 1, hi = 0, smin = 1;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto t = synthetic_retheme(10, seed);
        const double m = *t.mean_r_squared, s = *t.std_r_squared;
        lo = std::min(lo, m);
        hi = std::max(hi, m);
        smin = std::min(smin, s);
        if (!(m > 0 && m < 1 && s > 0))
            return fail("seed " + std::to_string(seed) + ": " + fmt(m) + " +/- " + fmt(s));
    }
    return pass("N=10, 20 seeds: mean R2 in [" + fmt(lo, 4) + ", " + fmt(hi, 4) + "], min std " + fmt(smin, 3));
}

Outcome criterion6() {
    // Word vectors of the theme words are A * G + b for random A, b.
    const auto& game = trained_game_space();
    const auto theming = Theming::chess_default();
    std::mt19937_64 rng(99);
    std::normal_distribution<double> normal;
    const std::size_t g = game.dimension(), w = 50;
    std::vector<double> a(w * g), b(w);
    for (auto& x : a) x = normal(rng);
    for (auto& x : b) x = normal(rng);
    Theming one;
    EmbeddingSpace words(w);
    for (auto t : theming.domain()) {
        const std::string word = "w_" + lower(std::string(token_name(t)));
        one.assign(t, {word});
        const auto gv = game[token_name(t)];
        std::vector<double> y(w);
        for (std::size_t i = 0; i < w; ++i) {
            y[i] = b[i];
            for (std::size_t j = 0; j < g; ++j) y[i] += a[i * g + j] * gv[j];
        }
        words.add(word, y);
    }
    const ThemeVectors themes(one, words);
    double worst = 0, worst_r2 = 0;
    for (std::size_t n : {1u, 5u, 10u, 16u}) {
        for (auto t : one.domain()) {
            const auto m = fit_token_model(themes, game, t, n, rng);
            worst_r2 = std::max(worst_r2, std::abs(1.0 - m.r_squared));
            for (auto s : m.sample) {
                const auto p = m.apply(game[token_name(s)]);
                const auto& y = themes.theme(s);
                for (std::size_t i = 0; i < w; ++i) worst = std::max(worst, std::abs(p[i] - y[i]));
            }
        }
    }
    const std::string detail = "N in {1,5,10,16}: max residual " + fmt(worst, 3) + ", max |1-R2| " + fmt(worst_r2, 3);
    return worst < 1e-8 && worst_r2 < 1e-9 ? pass(detail) : fail(detail);
}

Outcome criterion7() {
    const auto pgn = env("GRETHEME_PGN");
    const auto glove = env("GRETHEME_GLOVE");
    if (pgn.empty() || glove.empty())
        return not_evaluated("needs >= 100,000 real games and word vectors (set GRETHEME_PGN and GRETHEME_GLOVE)");
    const auto t0 = std::chrono::steady_clock::now();
    IngestResult r = ingest_pgn_file(pgn);
    if (r.games_parsed < 100000) return fail(std::to_string(r.games_parsed) + " games parsed, need 100,000");
    std::vector<Sentence> s;
    for (auto& g : r.sentences) s.push_back(std::move(g.tokens));
    r = {};
    TrainingConfig c;
    if (auto t = env("GRETHEME_TRAIN_THREADS"); !t.empty()) c.threads = std::stoi(t);
    const auto game = train(build_vocab(std::move(s)), c).input;
    const double minutes =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / 60.0;
    const auto words = load_text_vectors(glove);
    const auto report = valuation_report(game, &words, "");
    const double g_rho = report.rows[0].spearman_vs_expert;
    const double w_rho = report.rows[1].spearman_vs_expert;
    const std::string detail = "game rho " + fmt(g_rho, 4) + ", word 'checkmate' rho " + fmt(w_rho, 4) +
                               ", ingest+train " + fmt(minutes, 3) + " min";
    return g_rho >= 0.6 && g_rho > std::abs(w_rho) ? pass(detail) : fail(detail);
}

Outcome criterion8() {
    const auto nouns = NounList::load(testing::data_file("nouns.txt"));
    const std::vector<std::string> discard{"wild"};
    auto run = [&](const std::string& file) {
        std::map<std::string, std::string> out;
        LineReader reader(testing::fixture(file));
        std::string line;
        while (reader.next(line)) {
            const auto tab = line.find('\t');
            std::vector<Neighbor> ns;
            std::istringstream in(line.substr(tab + 1));
            for (std::string w; in >> w;) ns.push_back({w, 0.0, ns.size()});
            const auto sel = select_from_neighbors(ns, discard, nouns.predicate());
            out[line.substr(0, tab)] = sel.word.value_or("-");
        }
        return out;
    };
    const std::vector<std::pair<std::string, std::string>> want{
        {"King", "cat"}, {"Queen", "hunters"}, {"Bishop", "foxes"},
        {"Rook", "hunt"}, {"Knight", "boar"},  {"Pawn", "hare"}};
    const auto got = run("field_combined_top3.tsv");
    std::string detail;
    bool ok = true;
    for (const auto& [tok, word] : want) {
        const auto it = got.find(tok);
        const std::string g = it == got.end() ? "?" : it->second;
        ok &= g == word;
        detail += tok + "->" + g + " ";
    }
    return ok ? pass(detail) : fail(detail);
}

Outcome criterion9() {
    const auto space = testing::random_space(testing::numbered("e", 1000), 50, 2024);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal;
    SearchOptions opts;
    opts.threads = 4;
    for (int q = 0; q < 200; ++q) {
        std::vector<double> v(50);
        for (auto& x : v) x = normal(rng);
        const auto fast = nearest(space, v, 10, {}, opts);
        // Naive full scan.
        std::vector<std::pair<double, std::size_t>> all;
        for (std::size_t i = 0; i < space.size(); ++i) {
            const auto r = space.row(i);
            double d = 0, nr = 0, nq = 0;
            for (std::size_t j = 0; j < 50; ++j) {
                d += r[j] * v[j];
                nr += r[j] * r[j];
                nq += v[j] * v[j];
            }
            all.emplace_back(d / std::sqrt(nr * nq), i);
        }
        std::sort(all.begin(), all.end(), [](auto a, auto b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        for (std::size_t i = 0; i < fast.size(); ++i)
            if (fast[i].index != all[i].second || std::abs(fast[i].score - all[i].first) > 1e-12)
                return fail("query " + std::to_string(q) + " differs at rank " + std::to_string(i + 1));
        if (fast != nearest_reference(space, v, 10))
            return fail("query " + std::to_string(q) + " differs from the serial reference");
    }
    return pass("200 queries x top-10 over 1,000 entries identical");
}

int run_cli(const std::string& args) {
    const std::string cmd = "\"" + cli_path + "\" " + args + " >/dev/null 2>&1";
    return std::system(cmd.c_str());
}

Outcome criterion10() {
    if (cli_path.empty()) return fail("no --cli given");
    testing::TempDir dir("accept10");
    const auto text = read_text_file(testing::fixture("random_10k.pgn.gz"));
    write_text_file(dir.file("g.pgn"), text.substr(0, text.size() / 50));
    write_text_file(dir.file("words.txt"), format_text_vectors(synthetic_words(8)));
    if (run_cli("ingest --pgn " + dir.file("g.pgn") + " --out " + dir.file("c.txt")) != 0)
        return fail("ingest failed");
    for (const char* out : {"v1.txt", "v2.txt"})
        if (run_cli("train --corpus " + dir.file("c.txt") + " --epochs 2 --seed 5 --out " + dir.file(out)) != 0)
            return fail("train failed");
    for (const char* out : {"r1.json", "r2.json"})
        if (run_cli("retheme --format json --words " + dir.file("words.txt") + " --game " + dir.file("v1.txt") +
                    " --guide-field lion,elephant,zebra,eating,becoming,extinction,control,win,loss"
                    " --n 10 --seed 3 --out " + dir.file(out)) != 0)
            return fail("retheme failed");
    const bool train_same = read_text_file(dir.file("v1.txt")) == read_text_file(dir.file("v2.txt"));
    const bool retheme_same = read_text_file(dir.file("r1.json")) == read_text_file(dir.file("r2.json"));
    if (!train_same) return fail("train outputs differ");
    if (!retheme_same) return fail("retheme outputs differ");
    return pass("train and retheme outputs bit-identical across two runs");
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    bool require_all = false;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--cli" && i + 1 < argc) cli_path = argv[++i];
        else if (a == "--require-all") require_all = true;
        else if (a == "--only" && i + 1 < argc) {
            std::istringstream in(argv[++i]);
            for (std::string n; std::getline(in, n, ',');) only.insert(std::stoi(n));
        } else {
            std::cerr << "usage: acceptance --cli <path> [--only 1,2] [--require-all]\n";
            return 2;
        }
    }

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"Table 1 encoding", criterion1},
        {"corpus closure on real games", criterion2},
        {"analogy sanity on published word vectors", criterion3},
        {"underdetermination: N=5 gives R2 = 1.0 +/- 0.0", criterion4},
        {"partial fit: N=10 gives 0 < R2 < 1, std > 0", criterion5},
        {"regression oracle on affine themings", criterion6},
        {"valuation ordering on real games", criterion7},
        {"selection golden test (pieces)", criterion8},
        {"nearest-neighbor oracle equivalence", criterion9},
        {"determinism of train and retheme", criterion10},
    };

    int failed = 0, unevaluated = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && !only.contains(id)) continue;
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool ok = o.kind == Outcome::Pass;
        failed += o.kind == Outcome::Fail;
        unevaluated += o.kind == Outcome::NotEvaluated;
        std::cout << (ok ? "PASS" : "FAIL") << "  " << id << ". " << criteria[i].first << " -- "
                  << (o.kind == Outcome::NotEvaluated ? "not evaluated: " : "") << o.detail << " ("
                  << fmt(secs, 3) << " s)" << std::endl;
    }
    if (failed) return 1;
    if (unevaluated && require_all) return 77;
    return 0;
}
