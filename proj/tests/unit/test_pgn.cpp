#include "gretheme/error.hpp"
#include "gretheme/pgn.hpp"

#include <doctest.h>

using namespace gretheme;

TEST_CASE("headers, comments, NAGs and variations") {
    const auto games = parse_pgn(
        "[Event \"x\"]\n[White \"a\"]\n\n"
        "1. e4 {[%clk 0:03:00]} e5 $1 2. Nf3 (2. f4 exf4 (2... d5)) Nc6 ; rest\n"
        "% escape line\n"
        "3.Bb5 a6 1-0\n");
    REQUIRE(games.size() == 1);
    REQUIRE(games[0].header("White"));
    CHECK(*games[0].header("White") == "a");
    CHECK(games[0].moves == std::vector<std::string>{"e4", "e5", "Nf3", "Nc6", "Bb5", "a6"});
    CHECK(games[0].result == GameResult::WhiteWin);
}

TEST_CASE("black move numbers and e.p. markers") {
    const auto g = parse_pgn("1. e4 a6 2. e5 d5 3. exd6 e.p. 3... Qxd6 1/2-1/2\n");
    REQUIRE(g.size() == 1);
    CHECK(g[0].moves.size() == 6);
    CHECK(g[0].result == GameResult::Draw);
}

TEST_CASE("several games in one file") {
    const auto g = parse_pgn("[Event \"a\"]\n\n1. e4 e5 1-0\n\n[Event \"b\"]\n\n1. d4 0-1\n");
    REQUIRE(g.size() == 2);
    CHECK(g[1].index == 1);
    CHECK(g[1].result == GameResult::BlackWin);
}

TEST_CASE("strict parsing errors carry game and move") {
    try {
        parse_pgn("[Event \"a\"]\n\n1. e4 e5 1-0\n\n[Event \"b\"]\n\n1. e4 e5 2. Nf3 *\n");
        FAIL("expected a PgnError");
    } catch (const PgnError& e) {
        CHECK(e.game_index() == 1);
    }
    CHECK_THROWS_AS(parse_pgn("1. e4 e5\n"), PgnError);        // missing result
    CHECK_THROWS_AS(parse_pgn("1. e4 {open comment 1-0\n"), PgnError);
    CHECK_THROWS_AS(parse_pgn("1. e4 (e5 1-0\n"), PgnError);
}

TEST_CASE("lenient parsing skips bad games") {
    const auto batch = parse_pgn_lenient(
        "[Event \"a\"]\n\n1. e4 e5 1-0\n\n[Event \"b\"]\n\n1. e4 *\n\n[Event \"c\"]\n\n1. d4 d5 0-1\n");
    CHECK(batch.games.size() == 2);
    REQUIRE(batch.skipped.size() == 1);
    CHECK(batch.skipped[0].game_index() == 1);
}

TEST_CASE("result markers") {
    CHECK(result_marker(GameResult::WhiteWin) == "1-0");
    CHECK(result_marker(GameResult::BlackWin) == "0-1");
    CHECK(result_marker(GameResult::Draw) == "1/2-1/2");
}
