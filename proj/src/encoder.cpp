#include "gretheme/encoder.hpp"

#include "gretheme/error.hpp"
#include "gretheme/san.hpp"

namespace gretheme {

namespace {

GameToken piece_token(Piece p) {
    switch (p) {
        case Piece::King: return GameToken::King;
        case Piece::Queen: return GameToken::Queen;
        case Piece::Bishop: return GameToken::Bishop;
        case Piece::Rook: return GameToken::Rook;
        case Piece::Knight: return GameToken::Knight;
        case Piece::Pawn: return GameToken::Pawn;
    }
    return GameToken::Pawn;
}

Board start_position(const RawGame& game) {
    const auto* setup = game.header("SetUp");
    const auto* fen = game.header("FEN");
    if (fen && (!setup || *setup == "1")) {
        try {
            return Board::from_fen(*fen);
        } catch (const Error& e) {
            throw ReplayError(0, "FEN", e.what());
        }
    }
    return Board::initial();
}

}  // namespace

ReplayedGame replay(const RawGame& game) {
    ReplayedGame out{{}, start_position(game)};
    Board& board = out.final_board;
    out.records.reserve(game.moves.size());
    for (std::size_t ply = 0; ply < game.moves.size(); ++ply) {
        const std::string& text = game.moves[ply];
        auto san = parse_san(text);
        if (!san) throw ReplayError(ply, text, "invalid SAN");
        Move move;
        try {
            move = resolve_san(board, *san);
        } catch (const Error& e) {
            throw ReplayError(ply, text, e.what());
        }

        MoveRecord rec;
        rec.side = board.side_to_move();
        rec.piece = board.at(move.from)->piece;
        rec.from = move.from;
        rec.to = move.to;
        if (move.is_en_passant) rec.captured = Piece::Pawn;
        else if (auto target = board.at(move.to)) rec.captured = target->piece;
        rec.promotion = move.promotion;
        rec.is_castling = move.is_castling;

        board.apply(move);
        rec.gives_check = board.in_check(board.side_to_move());
        rec.gives_checkmate = rec.gives_check && !board.has_legal_move();

        if (san->suffix == CheckSuffix::Mate && !rec.gives_checkmate)
            throw ReplayError(ply, text, "marked '#' but does not mate");
        if (san->suffix == CheckSuffix::Check && (!rec.gives_check || rec.gives_checkmate))
            throw ReplayError(ply, text,
                              rec.gives_checkmate ? "marked '+' but mates" : "marked '+' but no check");
        out.records.push_back(rec);
    }
    return out;
}

GameToken outcome_token(GameResult r) {
    switch (r) {
        case GameResult::WhiteWin: return GameToken::WinWhite;
        case GameResult::BlackWin: return GameToken::WinBlack;
        case GameResult::Draw: return GameToken::Draw;
    }
    return GameToken::Draw;
}

GameSentence encode(std::span<const MoveRecord> records, GameResult result, bool stalemate,
                    RowConvention convention) {
    if (records.empty()) throw Error("cannot encode a game without moves");
    GameSentence s;
    s.outcome = result;
    s.stalemate = stalemate;
    s.tokens.reserve(records.size() * 8 + 2);
    for (const auto& r : records) {
        const bool flip = convention == RowConvention::MoverRelative && r.side == Side::Black;
        auto row = [flip](int row) { return row_token(flip ? 7 - row : row); };
        s.tokens.push_back(GameToken::Turn);
        s.tokens.push_back(r.side == Side::White ? GameToken::White : GameToken::Black);
        s.tokens.push_back(piece_token(r.piece));
        s.tokens.push_back(column_token(r.from.col));
        s.tokens.push_back(row(r.from.row));
        s.tokens.push_back(column_token(r.to.col));
        s.tokens.push_back(row(r.to.row));
        if (r.captured) {
            s.tokens.push_back(GameToken::Capture);
            s.tokens.push_back(piece_token(*r.captured));
        }
        if (r.promotion) {
            s.tokens.push_back(GameToken::Promote);
            s.tokens.push_back(piece_token(*r.promotion));
        }
        if (r.is_castling) s.tokens.push_back(GameToken::Castling);
        if (r.gives_checkmate) s.tokens.push_back(GameToken::Checkmate);
        else if (r.gives_check) s.tokens.push_back(GameToken::Check);
    }
    if (stalemate) s.tokens.push_back(GameToken::Stalemate);
    s.tokens.push_back(outcome_token(result));
    return s;
}

GameSentence encode_game(const RawGame& game, RowConvention convention) {
    auto replayed = replay(game);
    return encode(replayed.records, game.result, detect_stalemate(replayed.final_board),
                  convention);
}

std::string GameSentence::to_string() const {
    std::string out;
    out.reserve(tokens.size() * 4);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ' ';
        out += token_name(tokens[i]);
    }
    return out;
}

std::vector<std::span<const GameToken>> split_clauses(std::span<const GameToken> tokens) {
    std::vector<std::span<const GameToken>> out;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= tokens.size(); ++i) {
        if (i == tokens.size() || tokens[i] == GameToken::Turn) {
            out.push_back(tokens.subspan(start, i - start));
            start = i;
        }
    }
    if (tokens.empty()) out.clear();
    return out;
}

}  // namespace gretheme
