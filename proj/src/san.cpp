#include "gretheme/san.hpp"

#include "gretheme/error.hpp"

namespace gretheme {

namespace {

std::optional<Piece> piece_letter(char c) {
    switch (c) {
        case 'K': return Piece::King;
        case 'Q': return Piece::Queen;
        case 'R': return Piece::Rook;
        case 'B': return Piece::Bishop;
        case 'N': return Piece::Knight;
        default: return std::nullopt;
    }
}

bool is_file(char c) { return c >= 'a' && c <= 'h'; }
bool is_rank(char c) { return c >= '1' && c <= '8'; }

}  // namespace

std::optional<SanMove> parse_san(std::string_view s) {
    while (!s.empty() && (s.back() == '!' || s.back() == '?')) s.remove_suffix(1);
    SanMove m;
    if (!s.empty() && s.back() == '#') {
        m.suffix = CheckSuffix::Mate;
        s.remove_suffix(1);
    } else if (!s.empty() && s.back() == '+') {
        m.suffix = CheckSuffix::Check;
        s.remove_suffix(1);
    }
    if (s.empty()) return std::nullopt;

    if (s == "O-O" || s == "0-0") {
        m.piece = Piece::King;
        m.castle = CastleSide::King;
        return m;
    }
    if (s == "O-O-O" || s == "0-0-0") {
        m.piece = Piece::King;
        m.castle = CastleSide::Queen;
        return m;
    }

    // Promotion suffix: "=Q" or bare "Q" after the destination.
    if (s.size() >= 3) {
        if (auto p = piece_letter(s.back()); p && *p != Piece::King) {
            std::string_view head = s.substr(0, s.size() - 1);
            if (!head.empty() && head.back() == '=') head.remove_suffix(1);
            if (!head.empty() && is_rank(head.back())) {
                m.promotion = p;
                s = head;
            }
        }
    }

    if (auto p = piece_letter(s.front())) {
        m.piece = *p;
        s.remove_prefix(1);
    }
    if (s.size() < 2 || !is_file(s[s.size() - 2]) || !is_rank(s.back())) return std::nullopt;
    m.to = Square{s[s.size() - 2] - 'a', '8' - s.back()};
    s.remove_suffix(2);
    if (!s.empty() && s.back() == 'x') {
        m.capture = true;
        s.remove_suffix(1);
    }
    // What remains is disambiguation: file, rank, or both.
    if (s.size() > 2) return std::nullopt;
    for (char c : s) {
        if (is_file(c) && !m.from_col && !m.from_row) m.from_col = c - 'a';
        else if (is_rank(c) && !m.from_row) m.from_row = '8' - c;
        else return std::nullopt;
    }

    if (m.piece == Piece::Pawn) {
        if (m.from_row) return std::nullopt;
        if (m.capture != m.from_col.has_value()) return std::nullopt;
        const int last = m.to.row;
        if ((last == 0 || last == 7) != m.promotion.has_value()) return std::nullopt;
    } else if (m.promotion) {
        return std::nullopt;
    }
    return m;
}

Move resolve_san(const Board& board, const SanMove& san) {
    if (san.castle != CastleSide::None) {
        const int r = board.side_to_move() == Side::White ? 7 : 0;
        const Square to{san.castle == CastleSide::King ? 6 : 2, r};
        for (const auto& m : board.legal_moves_to(Piece::King, to)) {
            if (m.is_castling) return m;
        }
        throw Error("illegal castling");
    }

    std::optional<Move> found;
    for (const auto& m : board.legal_moves_to(san.piece, san.to)) {
        if (m.is_castling) continue;
        if (san.from_col && m.from.col != *san.from_col) continue;
        if (san.from_row && m.from.row != *san.from_row) continue;
        if (m.promotion != san.promotion) continue;
        if (found) throw Error("ambiguous move");
        found = m;
    }
    if (!found) throw Error("illegal move");
    const bool captures = board.at(found->to).has_value() || found->is_en_passant;
    if (san.capture && !captures) throw Error("capture marker on a non-capture");
    return *found;
}

}  // namespace gretheme
