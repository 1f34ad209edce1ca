#include "gretheme/error.hpp"
#include "gretheme/theming.hpp"
#include "gretheme/vector_ops.hpp"

#include "../support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace gretheme;

TEST_CASE("default chess theming") {
    const auto t = Theming::chess_default();
    CHECK(t.size() == 17);
    const std::vector<std::string> names = [&] {
        std::vector<std::string> out;
        for (auto tok : t.domain()) out.emplace_back(token_name(tok));
        return out;
    }();
    CHECK(names == std::vector<std::string>{"White", "Black", "King", "Queen", "Bishop", "Rook",
                                            "Knight", "Pawn", "Capture", "Castling", "Promote",
                                            "Check", "Checkmate", "Stalemate", "Draw", "WinWhite",
                                            "WinBlack"});
    CHECK(t.words(GameToken::Check) == std::vector<std::string>{"check", "control", "prevent"});
    const auto all = t.word_multiset();
    CHECK(std::count(all.begin(), all.end(), "deadlock") == 2);
    CHECK(all.size() == 23);
    CHECK_THROWS_AS(t.words(GameToken::R0), Error);
}

TEST_CASE("shipped theming file equals the built-in one") {
    CHECK(Theming::load(testing::data_file("theming_chess.txt")).to_text() ==
          Theming::chess_default().to_text());
}

TEST_CASE("theming parse errors") {
    CHECK_THROWS_AS(Theming::parse("R0: row\n"), FileFormatError);
    CHECK_THROWS_AS(Theming::parse("King: king\nKing: lion\n"), FileFormatError);
    CHECK_THROWS_AS(Theming::parse("Kong: king\n"), FileFormatError);
    CHECK_THROWS_AS(Theming::parse("King king\n"), FileFormatError);
    CHECK_THROWS_AS(Theming::parse("King:\n"), FileFormatError);
    const auto t = Theming::parse("# comment\nKing: a, b, c, d\n");
    CHECK(t.warnings().size() == 1);
    CHECK(t.size() == 1);
}

TEST_CASE("theme vectors are word means") {
    EmbeddingSpace w(2);
    w.add("check", std::vector<double>{1, 0});
    w.add("control", std::vector<double>{0, 1});
    w.add("prevent", std::vector<double>{2, 2});
    w.add("king", std::vector<double>{5, 5});
    Theming t;
    t.assign(GameToken::Check, {"check", "control", "prevent"});
    t.assign(GameToken::King, {"king"});
    const ThemeVectors tv(t, w);
    CHECK(tv.theme(GameToken::Check) == Vector{1, 1});
    CHECK(tv.theme(GameToken::King) == Vector{5, 5});
    CHECK_THROWS_AS(tv.theme(GameToken::Pawn), Error);

    t.assign(GameToken::Pawn, {"pawn"});
    CHECK_THROWS_AS(ThemeVectors(t, w), Error);
}

TEST_CASE("guiding vectors") {
    EmbeddingSpace w(2);
    w.add("king", std::vector<double>{1, 0});
    w.add("lion", std::vector<double>{0, 1});
    w.add("zebra", std::vector<double>{0, 3});
    w.add("face", std::vector<double>{1, 0.1});
    const auto g = guiding_from_example(w, "king", "lion");
    CHECK(g.displacement == Vector{-1, 1});
    CHECK(g.finish_label == "lion");
    CHECK_THROWS_AS(guiding_from_example(w, "king", "tiger"), UnknownEntryError);

    Theming t;
    t.assign(GameToken::King, {"king"});
    const auto f = guiding_from_field(w, t, {"lion", "zebra"});
    CHECK(f.displacement == Vector{-1, 2});
    CHECK(f.start_label == "king");
    CHECK(f.finish_label == "lion");
    CHECK_THROWS_AS(guiding_from_field(w, t, {}), Error);
}

TEST_CASE("word lists") {
    CHECK(parse_word_list(" lion, zebra ,,win\nloss\n") ==
          std::vector<std::string>{"lion", "zebra", "win", "loss"});
}
