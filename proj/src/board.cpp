#include "gretheme/board.hpp"

#include "gretheme/error.hpp"

#include <cctype>
#include <cstdlib>
#include <charconv>
#include <sstream>

namespace gretheme {

namespace {

constexpr std::array<std::array<int, 2>, 8> kKnightSteps = {{
    {1, 2}, {2, 1}, {2, -1}, {1, -2}, {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2},
}};
constexpr std::array<std::array<int, 2>, 8> kKingSteps = {{
    {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1},
}};
constexpr std::array<std::array<int, 2>, 4> kDiagonals = {{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
constexpr std::array<std::array<int, 2>, 4> kOrthogonals = {{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

// Row delta of a pawn push for each side (white moves toward row 0).
constexpr int pawn_dir(Side s) { return s == Side::White ? -1 : 1; }
constexpr int home_row(Side s) { return s == Side::White ? 7 : 0; }
constexpr int promotion_row(Side s) { return s == Side::White ? 0 : 7; }

constexpr std::array<Piece, 4> kPromotions = {Piece::Queen, Piece::Rook, Piece::Bishop,
                                              Piece::Knight};

char piece_char(ColoredPiece p) {
    constexpr std::string_view letters = "kqbrnp";
    char c = letters[static_cast<int>(p.piece)];
    return p.side == Side::White ? static_cast<char>(std::toupper(c)) : c;
}

std::optional<ColoredPiece> piece_from_char(char c) {
    Side side = std::isupper(static_cast<unsigned char>(c)) ? Side::White : Side::Black;
    switch (std::tolower(static_cast<unsigned char>(c))) {
        case 'k': return ColoredPiece{side, Piece::King};
        case 'q': return ColoredPiece{side, Piece::Queen};
        case 'b': return ColoredPiece{side, Piece::Bishop};
        case 'r': return ColoredPiece{side, Piece::Rook};
        case 'n': return ColoredPiece{side, Piece::Knight};
        case 'p': return ColoredPiece{side, Piece::Pawn};
        default: return std::nullopt;
    }
}

}  // namespace

std::string Square::name() const {
    return {static_cast<char>('a' + col), static_cast<char>('8' - row)};
}

std::string_view piece_name(Piece p) {
    switch (p) {
        case Piece::King: return "King";
        case Piece::Queen: return "Queen";
        case Piece::Bishop: return "Bishop";
        case Piece::Rook: return "Rook";
        case Piece::Knight: return "Knight";
        case Piece::Pawn: return "Pawn";
    }
    return "?";
}

Board Board::initial() {
    return from_fen("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1");
}

void Board::put(Square s, std::optional<ColoredPiece> p) {
    squares_[s.index()] = p;
    if (p && p->piece == Piece::King) king_[static_cast<int>(p->side)] = s.index();
}

Board Board::from_fen(std::string_view fen) {
    std::istringstream in{std::string(fen)};
    std::string placement, side, castling, ep, half = "0", full = "1";
    if (!(in >> placement >> side >> castling >> ep)) throw Error("FEN: missing fields");
    in >> half >> full;
    if (std::string extra; in >> extra) throw Error("FEN: trailing field '" + extra + "'");

    Board b;
    int row = 0, col = 0;
    int kings[2] = {0, 0};
    for (char c : placement) {
        if (c == '/') {
            if (col != 8) throw Error("FEN: short rank");
            ++row;
            col = 0;
        } else if (c >= '1' && c <= '8') {
            col += c - '0';
        } else {
            auto p = piece_from_char(c);
            if (!p || col >= 8 || row >= 8) throw Error("FEN: bad placement");
            if (p->piece == Piece::King) ++kings[static_cast<int>(p->side)];
            b.put({col, row}, p);
            ++col;
        }
        if (col > 8) throw Error("FEN: long rank");
    }
    if (row != 7 || col != 8) throw Error("FEN: placement does not cover 8 ranks");
    if (kings[0] != 1 || kings[1] != 1) throw Error("FEN: each side needs exactly one king");

    if (side == "w") b.side_to_move_ = Side::White;
    else if (side == "b") b.side_to_move_ = Side::Black;
    else throw Error("FEN: bad side to move");

    if (castling != "-") {
        for (char c : castling) {
            switch (c) {
                case 'K': b.castling_.white_king = true; break;
                case 'Q': b.castling_.white_queen = true; break;
                case 'k': b.castling_.black_king = true; break;
                case 'q': b.castling_.black_queen = true; break;
                default: throw Error("FEN: bad castling field");
            }
        }
    }
    if (ep != "-") {
        if (ep.size() != 2 || ep[0] < 'a' || ep[0] > 'h' || ep[1] < '1' || ep[1] > '8')
            throw Error("FEN: bad en passant square");
        b.en_passant_ = Square{ep[0] - 'a', '8' - ep[1]};
    }
    auto parse_int = [](const std::string& s, int& out) {
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        if (ec != std::errc() || p != s.data() + s.size()) throw Error("FEN: bad move counter");
    };
    parse_int(half, b.halfmove_clock_);
    parse_int(full, b.fullmove_number_);
    b.validate();
    return b;
}

void Board::validate() const {
    for (int c = 0; c < 8; ++c) {
        for (int r : {0, 7}) {
            auto p = squares_[Square{c, r}.index()];
            if (p && p->piece == Piece::Pawn) throw Error("FEN: pawn on a back rank");
        }
    }
    if (en_passant_ && en_passant_->row != 2 && en_passant_->row != 5)
        throw Error("FEN: en passant target off the third/sixth rank");
    auto has = [&](Square s, ColoredPiece p) { return squares_[s.index()] == p; };
    const ColoredPiece wk{Side::White, Piece::King}, bk{Side::Black, Piece::King};
    const ColoredPiece wr{Side::White, Piece::Rook}, br{Side::Black, Piece::Rook};
    if ((castling_.white_king && !(has({4, 7}, wk) && has({7, 7}, wr))) ||
        (castling_.white_queen && !(has({4, 7}, wk) && has({0, 7}, wr))) ||
        (castling_.black_king && !(has({4, 0}, bk) && has({7, 0}, br))) ||
        (castling_.black_queen && !(has({4, 0}, bk) && has({0, 0}, br))))
        throw Error("FEN: castling right without king and rook at home");
    if (in_check(opposite(side_to_move_))) throw Error("FEN: side not to move is in check");
}

std::string Board::to_fen() const {
    std::string out;
    for (int r = 0; r < 8; ++r) {
        int empty = 0;
        for (int c = 0; c < 8; ++c) {
            auto p = squares_[Square{c, r}.index()];
            if (!p) {
                ++empty;
                continue;
            }
            if (empty) out += static_cast<char>('0' + empty);
            empty = 0;
            out += piece_char(*p);
        }
        if (empty) out += static_cast<char>('0' + empty);
        if (r != 7) out += '/';
    }
    out += side_to_move_ == Side::White ? " w " : " b ";
    std::string rights;
    if (castling_.white_king) rights += 'K';
    if (castling_.white_queen) rights += 'Q';
    if (castling_.black_king) rights += 'k';
    if (castling_.black_queen) rights += 'q';
    out += rights.empty() ? "-" : rights;
    out += ' ';
    out += en_passant_ ? en_passant_->name() : "-";
    out += ' ' + std::to_string(halfmove_clock_) + ' ' + std::to_string(fullmove_number_);
    return out;
}

bool Board::is_attacked(Square s, Side by) const {
    auto is = [&](int c, int r, Piece p) {
        if (c < 0 || c > 7 || r < 0 || r > 7) return false;
        auto q = squares_[r * 8 + c];
        return q && q->side == by && q->piece == p;
    };
    // A pawn attacks diagonally forward, so the attacker sits one row behind.
    const int pr = s.row - pawn_dir(by);
    if (is(s.col - 1, pr, Piece::Pawn) || is(s.col + 1, pr, Piece::Pawn)) return true;
    for (auto [dc, dr] : kKnightSteps)
        if (is(s.col + dc, s.row + dr, Piece::Knight)) return true;
    for (auto [dc, dr] : kKingSteps)
        if (is(s.col + dc, s.row + dr, Piece::King)) return true;
    auto ray = [&](int dc, int dr, Piece a, Piece b) {
        int c = s.col + dc, r = s.row + dr;
        while (c >= 0 && c < 8 && r >= 0 && r < 8) {
            auto q = squares_[r * 8 + c];
            if (q) return q->side == by && (q->piece == a || q->piece == b);
            c += dc;
            r += dr;
        }
        return false;
    };
    for (auto [dc, dr] : kDiagonals)
        if (ray(dc, dr, Piece::Bishop, Piece::Queen)) return true;
    for (auto [dc, dr] : kOrthogonals)
        if (ray(dc, dr, Piece::Rook, Piece::Queen)) return true;
    return false;
}

void Board::add_pawn_moves(std::vector<Move>& out, Square from, int only_to) const {
    const Side side = side_to_move_;
    const int dir = pawn_dir(side);
    auto emit = [&](Square to, bool ep) {
        if (only_to >= 0 && to.index() != only_to) return;
        if (to.row == promotion_row(side)) {
            for (Piece p : kPromotions) out.push_back({from, to, p, false, false});
        } else {
            out.push_back({from, to, std::nullopt, false, ep});
        }
    };
    Square one{from.col, from.row + dir};
    if (one.valid() && !squares_[one.index()]) {
        emit(one, false);
        Square two{from.col, from.row + 2 * dir};
        if (from.row == home_row(side) + dir && !squares_[two.index()]) emit(two, false);
    }
    for (int dc : {-1, 1}) {
        Square to{from.col + dc, from.row + dir};
        if (!to.valid()) continue;
        auto target = squares_[to.index()];
        if (target && target->side != side) emit(to, false);
        else if (!target && en_passant_ && *en_passant_ == to) emit(to, true);
    }
}

void Board::add_castling(std::vector<Move>& out) const {
    const Side side = side_to_move_;
    const int r = home_row(side);
    const bool king_side = side == Side::White ? castling_.white_king : castling_.black_king;
    const bool queen_side = side == Side::White ? castling_.white_queen : castling_.black_queen;
    if (!king_side && !queen_side) return;
    const Side enemy = opposite(side);
    if (is_attacked({4, r}, enemy)) return;
    auto empty = [&](int c) { return !squares_[Square{c, r}.index()]; };
    auto safe = [&](int c) { return !is_attacked({c, r}, enemy); };
    if (king_side && empty(5) && empty(6) && safe(5) && safe(6))
        out.push_back({{4, r}, {6, r}, std::nullopt, true, false});
    if (queen_side && empty(1) && empty(2) && empty(3) && safe(3) && safe(2))
        out.push_back({{4, r}, {2, r}, std::nullopt, true, false});
}

void Board::pseudo_moves(std::vector<Move>& out, std::optional<Piece> only, int only_to) const {
    const Side side = side_to_move_;
    for (int i = 0; i < 64; ++i) {
        auto p = squares_[i];
        if (!p || p->side != side || (only && p->piece != *only)) continue;
        const Square from = Square::from_index(i);
        auto target_ok = [&](Square to) {
            if (!to.valid()) return false;
            if (only_to >= 0 && to.index() != only_to) return false;
            auto q = squares_[to.index()];
            return !q || q->side != side;
        };
        auto slide = [&](const auto& dirs) {
            for (auto [dc, dr] : dirs) {
                Square to{from.col + dc, from.row + dr};
                while (to.valid()) {
                    auto q = squares_[to.index()];
                    if (q && q->side == side) break;
                    if (only_to < 0 || to.index() == only_to)
                        out.push_back({from, to, std::nullopt, false, false});
                    if (q) break;
                    to.col += dc;
                    to.row += dr;
                }
            }
        };
        switch (p->piece) {
            case Piece::Pawn: add_pawn_moves(out, from, only_to); break;
            case Piece::Knight:
                for (auto [dc, dr] : kKnightSteps) {
                    Square to{from.col + dc, from.row + dr};
                    if (target_ok(to)) out.push_back({from, to, std::nullopt, false, false});
                }
                break;
            case Piece::King:
                for (auto [dc, dr] : kKingSteps) {
                    Square to{from.col + dc, from.row + dr};
                    if (target_ok(to)) out.push_back({from, to, std::nullopt, false, false});
                }
                break;
            case Piece::Bishop: slide(kDiagonals); break;
            case Piece::Rook: slide(kOrthogonals); break;
            case Piece::Queen:
                slide(kDiagonals);
                slide(kOrthogonals);
                break;
        }
    }
    if (!only || *only == Piece::King) {
        std::vector<Move> castles;
        add_castling(castles);
        for (const auto& m : castles)
            if (only_to < 0 || m.to.index() == only_to) out.push_back(m);
    }
}

bool Board::is_legal(const Move& m) const {
    return !after(m).in_check(side_to_move_);
}

std::vector<Move> Board::legal_moves() const {
    std::vector<Move> pseudo;
    pseudo.reserve(64);
    pseudo_moves(pseudo, std::nullopt, -1);
    std::vector<Move> out;
    out.reserve(pseudo.size());
    for (const auto& m : pseudo)
        if (is_legal(m)) out.push_back(m);
    return out;
}

std::vector<Move> Board::legal_moves_to(Piece piece, Square to) const {
    std::vector<Move> pseudo;
    pseudo_moves(pseudo, piece, to.index());
    std::vector<Move> out;
    for (const auto& m : pseudo)
        if (is_legal(m)) out.push_back(m);
    return out;
}

bool Board::has_legal_move() const {
    std::vector<Move> pseudo;
    pseudo.reserve(64);
    pseudo_moves(pseudo, std::nullopt, -1);
    for (const auto& m : pseudo)
        if (is_legal(m)) return true;
    return false;
}

void Board::apply(const Move& m) {
    const Side side = side_to_move_;
    const auto moving = squares_[m.from.index()];
    const bool capture = squares_[m.to.index()].has_value() || m.is_en_passant;

    if (m.is_en_passant) put({m.to.col, m.from.row}, std::nullopt);
    put(m.from, std::nullopt);
    put(m.to, m.promotion ? ColoredPiece{side, *m.promotion} : moving);
    if (m.is_castling) {
        const int r = m.from.row;
        if (m.to.col == 6) {
            put({7, r}, std::nullopt);
            put({5, r}, ColoredPiece{side, Piece::Rook});
        } else {
            put({0, r}, std::nullopt);
            put({3, r}, ColoredPiece{side, Piece::Rook});
        }
    }

    auto clear_rights_for = [&](Square s) {
        if (s == Square{4, 7}) castling_.white_king = castling_.white_queen = false;
        if (s == Square{4, 0}) castling_.black_king = castling_.black_queen = false;
        if (s == Square{7, 7}) castling_.white_king = false;
        if (s == Square{0, 7}) castling_.white_queen = false;
        if (s == Square{7, 0}) castling_.black_king = false;
        if (s == Square{0, 0}) castling_.black_queen = false;
    };
    clear_rights_for(m.from);
    clear_rights_for(m.to);

    en_passant_.reset();
    const bool pawn = moving && moving->piece == Piece::Pawn;
    if (pawn && std::abs(m.to.row - m.from.row) == 2)
        en_passant_ = Square{m.from.col, (m.from.row + m.to.row) / 2};

    halfmove_clock_ = (pawn || capture) ? 0 : halfmove_clock_ + 1;
    if (side == Side::Black) ++fullmove_number_;
    side_to_move_ = opposite(side);
}

bool detect_stalemate(const Board& board) { return board.is_stalemate(); }

}  // namespace gretheme
