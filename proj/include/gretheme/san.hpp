#pragma once

#include "gretheme/board.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace gretheme {

enum class CheckSuffix : std::uint8_t { None, Check, Mate };
enum class CastleSide : std::uint8_t { None, King, Queen };

// Syntactic content of one SAN move; origin squares are only partially known.
struct SanMove {
    Piece piece = Piece::Pawn;
    CastleSide castle = CastleSide::None;
    Square to;
    std::optional<int> from_col;
    std::optional<int> from_row;
    bool capture = false;
    std::optional<Piece> promotion;
    CheckSuffix suffix = CheckSuffix::None;
};

// Parses SAN syntax. Trailing annotation glyphs (!, ?) are accepted and
// dropped; "0-0" is accepted for castling. Returns nullopt on bad syntax.
std::optional<SanMove> parse_san(std::string_view text);

// Resolves a parsed SAN move against a position. Throws Error when no legal
// move or more than one legal move matches.
Move resolve_san(const Board& board, const SanMove& san);

}  // namespace gretheme
