#pragma once

#include "gretheme/board.hpp"
#include "gretheme/game_token.hpp"
#include "gretheme/pgn.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gretheme {

// One resolved move. Squares are absolute board coordinates (see Square).
struct MoveRecord {
    Side side = Side::White;
    Piece piece = Piece::Pawn;
    Square from;
    Square to;
    std::optional<Piece> captured;
    std::optional<Piece> promotion;
    bool is_castling = false;
    bool gives_check = false;
    bool gives_checkmate = false;

    friend bool operator==(const MoveRecord&, const MoveRecord&) = default;
};

struct ReplayedGame {
    std::vector<MoveRecord> records;
    Board final_board;
};

// Replays SAN moves from the standard start, or from the FEN tag when the
// game carries SetUp "1". Check and mate flags come from the board and must
// agree with any '+'/'#' on the SAN. Throws ReplayError.
ReplayedGame replay(const RawGame& game);

// How rows are written into token sentences.
//  MoverRelative: rows are seen from the moving side, so row 7 is always the
//                 mover's own back rank (White: 8 - rank, Black: rank - 1).
//  Absolute:      row = 8 - rank for both sides.
// Columns are the file index in both conventions.
enum class RowConvention : std::uint8_t { MoverRelative, Absolute };

struct GameSentence {
    std::vector<GameToken> tokens;
    GameResult outcome = GameResult::Draw;
    bool stalemate = false;

    std::string to_string() const;
};

GameToken outcome_token(GameResult r);

// Emits one clause per move:
//   Turn <Side> <Piece> C<fc> R<fr> C<tc> R<tr> [Capture <Piece>] [Promote <Piece>]
//   [Castling] [Check | Checkmate]
// and appends [Stalemate] and the outcome token to the final clause.
// Requires at least one record.
GameSentence encode(std::span<const MoveRecord> records, GameResult result, bool stalemate,
                    RowConvention convention = RowConvention::MoverRelative);

// replay + stalemate detection + encode.
GameSentence encode_game(const RawGame& game,
                         RowConvention convention = RowConvention::MoverRelative);

// Splits a sentence into move clauses (each starts at a Turn token).
std::vector<std::span<const GameToken>> split_clauses(std::span<const GameToken> tokens);

}  // namespace gretheme
