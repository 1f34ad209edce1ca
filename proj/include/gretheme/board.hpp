#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gretheme {

enum class Side : std::uint8_t { White, Black };
enum class Piece : std::uint8_t { King, Queen, Bishop, Rook, Knight, Pawn };

constexpr Side opposite(Side s) { return s == Side::White ? Side::Black : Side::White; }

// Board coordinates: col is the file (a = 0 ... h = 7), row is 8 - rank
// (row 0 = rank 8, row 7 = rank 1). This is also FEN order.
struct Square {
    int col = 0;
    int row = 0;

    constexpr int index() const { return row * 8 + col; }
    constexpr bool valid() const { return col >= 0 && col < 8 && row >= 0 && row < 8; }
    static constexpr Square from_index(int i) { return {i % 8, i / 8}; }
    // Algebraic name, e.g. "e4".
    std::string name() const;

    friend constexpr bool operator==(Square, Square) = default;
};

struct ColoredPiece {
    Side side;
    Piece piece;

    friend constexpr bool operator==(ColoredPiece, ColoredPiece) = default;
};

struct CastlingRights {
    bool white_king = false;
    bool white_queen = false;
    bool black_king = false;
    bool black_queen = false;

    friend constexpr bool operator==(CastlingRights, CastlingRights) = default;
};

struct Move {
    Square from;
    Square to;
    std::optional<Piece> promotion;
    bool is_castling = false;
    bool is_en_passant = false;

    friend bool operator==(const Move&, const Move&) = default;
};

// Mailbox board with full legal move generation.
class Board {
public:
    static Board initial();
    // Standard six-field FEN (the clock fields may be omitted). Throws Error
    // on malformed input or a position that breaks the board invariants.
    static Board from_fen(std::string_view fen);

    std::string to_fen() const;

    std::optional<ColoredPiece> at(Square s) const { return squares_[s.index()]; }
    Side side_to_move() const { return side_to_move_; }
    const CastlingRights& castling() const { return castling_; }
    std::optional<Square> en_passant_target() const { return en_passant_; }
    int halfmove_clock() const { return halfmove_clock_; }
    int fullmove_number() const { return fullmove_number_; }
    Square king_square(Side s) const { return Square::from_index(king_[static_cast<int>(s)]); }

    bool is_attacked(Square s, Side by) const;
    bool in_check(Side s) const { return is_attacked(king_square(s), opposite(s)); }

    std::vector<Move> legal_moves() const;
    // Legal moves of one piece type landing on `to`.
    std::vector<Move> legal_moves_to(Piece piece, Square to) const;
    bool has_legal_move() const;
    bool is_legal(const Move& m) const;

    // Applies a move assumed legal for the side to move.
    void apply(const Move& m);
    Board after(const Move& m) const {
        Board b = *this;
        b.apply(m);
        return b;
    }

    bool is_checkmate() const { return in_check(side_to_move_) && !has_legal_move(); }
    bool is_stalemate() const { return !in_check(side_to_move_) && !has_legal_move(); }

    friend bool operator==(const Board&, const Board&) = default;

private:
    void put(Square s, std::optional<ColoredPiece> p);
    void pseudo_moves(std::vector<Move>& out, std::optional<Piece> only, int only_to) const;
    void add_pawn_moves(std::vector<Move>& out, Square from, int only_to) const;
    void add_castling(std::vector<Move>& out) const;
    void validate() const;

    std::array<std::optional<ColoredPiece>, 64> squares_{};
    std::array<int, 2> king_{-1, -1};
    Side side_to_move_ = Side::White;
    CastlingRights castling_{};
    std::optional<Square> en_passant_;
    int halfmove_clock_ = 0;
    int fullmove_number_ = 1;
};

// True iff the side to move has no legal move and is not in check.
bool detect_stalemate(const Board& board);

std::string_view piece_name(Piece p);

}  // namespace gretheme
