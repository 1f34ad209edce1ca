#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace gretheme {

// The 34 symbols of the chess description language.
enum class GameToken : std::uint8_t {
    Turn,
    White,
    Black,
    King,
    Queen,
    Bishop,
    Rook,
    Knight,
    Pawn,
    Capture,
    Castling,
    Promote,
    Check,
    Checkmate,
    Stalemate,
    Draw,
    WinWhite,
    WinBlack,
    C0, C1, C2, C3, C4, C5, C6, C7,
    R0, R1, R2, R3, R4, R5, R6, R7,
};

inline constexpr std::size_t kTokenCount = 34;

constexpr std::size_t index_of(GameToken t) { return static_cast<std::size_t>(t); }

std::string_view token_name(GameToken t);
std::optional<GameToken> parse_token(std::string_view text);

GameToken column_token(int col);
GameToken row_token(int row);

// All tokens in canonical (declaration) order.
const std::array<GameToken, kTokenCount>& all_tokens();

}  // namespace gretheme
