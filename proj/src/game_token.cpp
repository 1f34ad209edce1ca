#include "gretheme/game_token.hpp"

#include <cassert>

namespace gretheme {

namespace {

constexpr std::array<std::string_view, kTokenCount> kNames = {
    "Turn",   "White", "Black",   "King",     "Queen",     "Bishop",    "Rook",
    "Knight", "Pawn",  "Capture", "Castling", "Promote",   "Check",     "Checkmate",
    "Stalemate", "Draw", "WinWhite", "WinBlack",
    "C0", "C1", "C2", "C3", "C4", "C5", "C6", "C7",
    "R0", "R1", "R2", "R3", "R4", "R5", "R6", "R7",
};

constexpr std::array<GameToken, kTokenCount> make_all() {
    std::array<GameToken, kTokenCount> out{};
    for (std::size_t i = 0; i < kTokenCount; ++i) out[i] = static_cast<GameToken>(i);
    return out;
}

constexpr auto kAll = make_all();

}  // namespace

std::string_view token_name(GameToken t) { return kNames[index_of(t)]; }

std::optional<GameToken> parse_token(std::string_view text) {
    for (std::size_t i = 0; i < kTokenCount; ++i) {
        if (kNames[i] == text) return static_cast<GameToken>(i);
    }
    return std::nullopt;
}

GameToken column_token(int col) {
    assert(col >= 0 && col < 8);
    return static_cast<GameToken>(index_of(GameToken::C0) + static_cast<std::size_t>(col));
}

GameToken row_token(int row) {
    assert(row >= 0 && row < 8);
    return static_cast<GameToken>(index_of(GameToken::R0) + static_cast<std::size_t>(row));
}

const std::array<GameToken, kTokenCount>& all_tokens() { return kAll; }

}  // namespace gretheme
