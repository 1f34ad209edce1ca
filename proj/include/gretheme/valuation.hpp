#pragma once

#include "gretheme/board.hpp"
#include "gretheme/embedding_space.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gretheme {

// Report column order.
inline constexpr std::array<Piece, 6> kValuationPieces = {
    Piece::Queen, Piece::Rook, Piece::King, Piece::Bishop, Piece::Knight, Piece::Pawn};

// Expert piece values in kValuationPieces order.
class ExpertValuation {
public:
    // Queen 10, Rook 5, King 4, Bishop 3.75, Knight 3.5, Pawn 1.
    static ExpertValuation evans();
    // "Piece value" per line, '#' comments; all six pieces, each once.
    static ExpertValuation load(const std::string& path);

    double value(Piece p) const;
    const std::array<double, 6>& values() const { return values_; }

private:
    std::array<double, 6> values_{};
};

// Cosine of each target against the anchor, in target order.
std::vector<double> similarity_profile(const EmbeddingSpace& space, std::span<const double> anchor,
                                       std::span<const std::string> targets);

// Affine map min -> lo, max -> hi. All-equal input maps to lo.
std::vector<double> normalize_linear(std::span<const double> values, double lo = 1.0,
                                     double hi = 10.0);

// Average ranks (1-based), ties share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

// Pearson correlation of average ranks.
double spearman(std::span<const double> xs, std::span<const double> ys);

struct ValuationRow {
    std::string label;
    std::string anchor;
    bool game_space = false;
    std::vector<double> raw;
    std::vector<double> normalized;
    double spearman_vs_expert = 0.0;
};

struct ValuationReport {
    ExpertValuation expert = ExpertValuation::evans();
    std::vector<ValuationRow> rows;
    std::string metadata;
};

ValuationRow valuation_row(const EmbeddingSpace& space, const std::string& anchor, bool game_space,
                           const std::string& label, const ExpertValuation& expert);

// Game row against Checkmate; word rows against "checkmate" and "win" when a
// word space is given.
ValuationReport valuation_report(const EmbeddingSpace& game_space, const EmbeddingSpace* word_space,
                                 const std::string& metadata,
                                 const ExpertValuation& expert = ExpertValuation::evans());

}  // namespace gretheme
