#include "gretheme/encoder.hpp"
#include "gretheme/error.hpp"
#include "gretheme/ingest.hpp"
#include "gretheme/pgn.hpp"
#include "gretheme/text_io.hpp"

#include "../support.hpp"

#include <doctest.h>

#include <sstream>

using namespace gretheme;

namespace {

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);)
        if (!l.empty()) out.push_back(l);
    return out;
}

std::vector<std::string> encode_all(const std::string& pgn) {
    std::vector<std::string> out;
    for (const auto& g : parse_pgn(pgn)) out.push_back(encode_game(g).to_string());
    return out;
}

}  // namespace

TEST_CASE("fixture games match the reference encoder") {
    for (const char* name : {"table1", "special"}) {
        CAPTURE(name);
        const auto got = encode_all(read_text_file(testing::fixture(std::string(name) + ".pgn")));
        const auto want = lines(read_text_file(testing::fixture(std::string(name) + "_expected.txt")));
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == want[i]);
    }
}

TEST_CASE("random games match the reference encoder") {
    const auto result = ingest_pgn_file(testing::fixture("random_10k.pgn.gz"));
    const auto want = lines(read_text_file(testing::fixture("random_10k_expected.txt.gz")));
    CHECK(result.games_skipped == 0);
    REQUIRE(result.sentences.size() >= want.size());
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < want.size(); ++i) mismatches += result.sentences[i].to_string() != want[i];
    CHECK(mismatches == 0);
}

TEST_CASE("absolute rows differ from mover rows only for black") {
    const auto g = parse_pgn("1. e4 e5 1-0\n").front();
    CHECK(encode_game(g, RowConvention::Absolute).to_string() ==
          "Turn White Pawn C4 R6 C4 R4 Turn Black Pawn C4 R1 C4 R3 WinWhite");
    CHECK(encode_game(g, RowConvention::MoverRelative).to_string() ==
          "Turn White Pawn C4 R6 C4 R4 Turn Black Pawn C4 R6 C4 R4 WinWhite");
}

TEST_CASE("check suffix must agree with the board") {
    CHECK_THROWS_AS(encode_game(parse_pgn("1. e4 e5 2. Qh5+ 1-0\n").front()), ReplayError);
    CHECK_THROWS_AS(encode_game(parse_pgn("1. f3 e5 2. g4 Qh4+ 0-1\n").front()), ReplayError);
    CHECK_NOTHROW(encode_game(parse_pgn("1. f3 e5 2. g4 Qh4 0-1\n").front()));
}

TEST_CASE("replay errors name the ply") {
    try {
        encode_game(parse_pgn("1. e4 e5 2. Ke3 1-0\n").front());
        FAIL("expected ReplayError");
    } catch (const ReplayError& e) {
        CHECK(e.ply() == 2);
    }
}

TEST_CASE("empty move list cannot be encoded") {
    CHECK_THROWS_AS(encode({}, GameResult::Draw, false), Error);
}

TEST_CASE("sentence properties over the random corpus") {
    const auto text = read_text_file(testing::fixture("random_10k.pgn.gz"));
    const auto batch = parse_pgn_lenient(text.substr(0, text.size() / 20));
    REQUIRE(batch.games.size() > 100);
    for (const auto& game : batch.games) {
        const auto replayed = replay(game);
        const auto sentence = encode_game(game);
        const auto clauses = split_clauses(sentence.tokens);
        REQUIRE(clauses.size() == replayed.records.size());
        for (std::size_t i = 0; i < clauses.size(); ++i) {
            const auto extra = (i + 1 == clauses.size()) ? 1 + sentence.stalemate : 0;
            CHECK(clauses[i].size() >= 7 + extra);
            CHECK(clauses[i].size() <= 13 + extra);
        }
        CHECK(sentence.tokens.back() == outcome_token(game.result));

        // Material bookkeeping: start material minus captures plus promotions
        // equals the final board.
        std::array<std::array<int, 6>, 2> count{};
        const auto start = Board::initial();
        for (int i = 0; i < 64; ++i)
            if (auto p = start.at(Square::from_index(i)))
                ++count[static_cast<int>(p->side)][static_cast<int>(p->piece)];
        for (const auto& r : replayed.records) {
            if (r.captured) --count[static_cast<int>(opposite(r.side))][static_cast<int>(*r.captured)];
            if (r.promotion) {
                --count[static_cast<int>(r.side)][static_cast<int>(Piece::Pawn)];
                ++count[static_cast<int>(r.side)][static_cast<int>(*r.promotion)];
            }
        }
        std::array<std::array<int, 6>, 2> final_count{};
        for (int i = 0; i < 64; ++i)
            if (auto p = replayed.final_board.at(Square::from_index(i)))
                ++final_count[static_cast<int>(p->side)][static_cast<int>(p->piece)];
        CHECK(count == final_count);
    }
}

TEST_CASE("parallel ingest equals the serial reference") {
    const auto text = read_text_file(testing::fixture("random_10k.pgn.gz"));
    const std::string_view part(text.data(), text.size() / 10);
    IngestOptions opts;
    opts.threads = 4;
    const auto par = ingest_pgn(part, opts);
    const auto ser = ingest_pgn_serial(part, opts);
    REQUIRE(par.sentences.size() == ser.sentences.size());
    for (std::size_t i = 0; i < par.sentences.size(); ++i)
        CHECK(par.sentences[i].tokens == ser.sentences[i].tokens);
    CHECK(par.token_counts == ser.token_counts);
    CHECK(par.games_skipped == ser.games_skipped);
}

TEST_CASE("ingest skips corrupt games and keeps going") {
    const auto r = ingest_pgn("[Event \"a\"]\n\n1. e4 e5 1-0\n\n[Event \"b\"]\n\n1. e4 e4 1-0\n\n"
                              "[Event \"c\"]\n\n1. d4 d5 0-1\n\n[Event \"d\"]\n\n1. d4 *\n");
    CHECK(r.games_parsed == 2);
    CHECK(r.games_skipped == 2);
    CHECK(r.errors.size() == 2);
}

TEST_CASE("streamed file ingest equals whole-text ingest") {
    testing::TempDir dir("ingest");
    const auto text = read_text_file(testing::fixture("random_10k.pgn.gz"));
    const std::string part = text.substr(0, text.size() / 10);
    write_text_file(dir.file("part.pgn"), part);
    const auto whole = ingest_pgn_serial(part);
    const auto streamed = ingest_pgn_file(dir.file("part.pgn"));
    REQUIRE(whole.sentences.size() == streamed.sentences.size());
    CHECK(whole.token_counts == streamed.token_counts);
}

TEST_CASE("token names round trip") {
    for (auto t : all_tokens()) CHECK(parse_token(token_name(t)) == t);
    CHECK_FALSE(parse_token("Castle"));
    CHECK(all_tokens().size() == 34);
}
