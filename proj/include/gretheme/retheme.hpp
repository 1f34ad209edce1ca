#pragma once

#include "gretheme/embedding_space.hpp"
#include "gretheme/game_token.hpp"
#include "gretheme/search.hpp"
#include "gretheme/theming.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace gretheme {

// Affine map from game space to word space, fitted for one token on a
// sample of the other themed tokens:
//   (weights, bias) = argmin sum_{t in sample} |weights * G_t + bias - theme(t)|^2
struct TokenRegressionModel {
    GameToken token = GameToken::King;
    std::vector<GameToken> sample;  // never contains `token`
    std::size_t word_dim = 0;
    std::size_t game_dim = 0;
    std::vector<double> weights;  // word_dim x game_dim, row-major
    Vector bias;                  // word_dim
    double r_squared = 0.0;       // on the sample

    Vector apply(std::span<const double> game_vector) const;
    // weights * v, without the bias.
    Vector apply_linear(std::span<const double> v) const;
};

// Uniform draw of n tokens from domain \ {token}, without replacement.
std::vector<GameToken> draw_sample(std::span<const GameToken> domain, GameToken token,
                                   std::size_t n, std::mt19937_64& rng);

// Least squares over the given sample. The system is solved with a complete
// orthogonal decomposition, which returns the minimum-norm solution when the
// sample is too small to pin the map down. Throws Error if the sample
// contains `token`, is empty, or references tokens missing from either space.
TokenRegressionModel fit_token_model(const ThemeVectors& themes, const EmbeddingSpace& game_space,
                                     GameToken token, std::span<const GameToken> sample);

// Draws the sample with `rng`, then fits. Requires 1 <= n <= |domain| - 1.
TokenRegressionModel fit_token_model(const ThemeVectors& themes, const EmbeddingSpace& game_space,
                                     GameToken token, std::size_t n, std::mt19937_64& rng);

// Mean over output coordinates of 1 - SS_res / SS_tot. A coordinate with no
// variance counts 1 when its residual vanishes and 0 otherwise.
// `targets` and `predictions` are row-major (samples x dim).
double coefficient_of_determination(std::span<const double> targets,
                                    std::span<const double> predictions, std::size_t dim);

using NounPredicate = std::function<bool(std::string_view)>;

// Word list backed noun test; one word per line, '#' comments.
class NounList {
public:
    static NounList load(const std::string& path);
    static NounList from_words(std::vector<std::string> words);
    bool contains(std::string_view word) const;
    std::size_t size() const { return words_.size(); }
    NounPredicate predicate() const;

private:
    std::unordered_set<std::string> words_;
};

struct Selection {
    std::optional<std::string> word;
    bool is_noun = false;  // false flags a fallback to the first remaining word
};

// Drop discarded words from the neighbor list, then take the first noun; if
// none qualifies take the first remaining word (flagged); absent when every
// neighbor was discarded.
Selection select_from_neighbors(std::span<const Neighbor> neighbors,
                                std::span<const std::string> discard,
                                const NounPredicate& is_noun);

// Nearest `k` words to `vector` (default 3), then select_from_neighbors.
Selection select_word(const EmbeddingSpace& words, std::span<const double> vector,
                      std::span<const std::string> discard, const NounPredicate& is_noun,
                      std::size_t k = 3);

struct RethemeResult {
    GameToken token = GameToken::King;
    Vector output;
    std::vector<Neighbor> top_neighbors;
    Selection selection;
    std::optional<double> r_squared;  // absent for the baseline
    std::vector<GameToken> sample;
};

struct RethemeQuery {
    std::size_t k = 3;
    SearchOptions search;
};

// theme(token) + displacement.
RethemeResult retheme_baseline(const ThemeVectors& themes, GameToken token,
                               const GuidingVector& guide, const RethemeQuery& query = {});

// model(G_token) + displacement.
RethemeResult retheme_combined(const TokenRegressionModel& model, const EmbeddingSpace& game_space,
                               const GuidingVector& guide, const EmbeddingSpace& words,
                               const RethemeQuery& query = {});

enum class RethemeMode { Baseline, Combined };

struct RethemeOptions {
    RethemeMode mode = RethemeMode::Combined;
    std::size_t sample_size = 10;
    std::uint64_t seed = 1;
    RethemeQuery query;
    // Also discard the guide's start word during selection.
    bool discard_start = false;
    int threads = 0;  // 0: OpenMP default
};

struct RethemeTable {
    std::vector<RethemeResult> rows;  // theming domain order
    std::optional<double> mean_r_squared;
    std::optional<double> std_r_squared;  // population standard deviation
};

// Words removed before selection for a guide: its finish word, plus the
// start word when requested.
std::vector<std::string> discard_words(const GuidingVector& guide, bool discard_start);

// One row per themed token. Samples are drawn sequentially from one seeded
// generator in domain order, then the per-token fits and searches run in
// parallel, so the table does not depend on the thread count.
RethemeTable retheme_all(const ThemeVectors& themes, const EmbeddingSpace* game_space,
                         const GuidingVector& guide, const RethemeOptions& options,
                         const NounPredicate& is_noun);

// Single-threaded reference for retheme_all.
RethemeTable retheme_all_serial(const ThemeVectors& themes, const EmbeddingSpace* game_space,
                                const GuidingVector& guide, const RethemeOptions& options,
                                const NounPredicate& is_noun);

}  // namespace gretheme
