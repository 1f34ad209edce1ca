#include "gretheme/retheme.hpp"

#include "gretheme/error.hpp"
#include "gretheme/text_io.hpp"
#include "gretheme/vector_ops.hpp"

#include <Eigen/Dense>
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace gretheme {

namespace {

// Unbiased index in [0, n) by rejection; avoids implementation-defined
// standard distributions so samples match across standard libraries.
std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    const std::uint64_t range = n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return static_cast<std::size_t>(x % range);
}

const std::string& game_name_checked(const EmbeddingSpace& game_space, GameToken t,
                                     std::string& scratch) {
    scratch = std::string(token_name(t));
    if (!game_space.contains(scratch))
        throw Error("token " + scratch + " has no vector in the game space");
    return scratch;
}

}  // namespace

Vector TokenRegressionModel::apply_linear(std::span<const double> v) const {
    if (v.size() != game_dim) throw Error("game vector dimension mismatch");
    Vector out(word_dim, 0.0);
    for (std::size_t i = 0; i < word_dim; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < game_dim; ++j) s += weights[i * game_dim + j] * v[j];
        out[i] = s;
    }
    return out;
}

Vector TokenRegressionModel::apply(std::span<const double> game_vector) const {
    Vector out = apply_linear(game_vector);
    for (std::size_t i = 0; i < word_dim; ++i) out[i] += bias[i];
    return out;
}

std::vector<GameToken> draw_sample(std::span<const GameToken> domain, GameToken token,
                                   std::size_t n, std::mt19937_64& rng) {
    std::vector<GameToken> pool;
    for (auto t : domain)
        if (t != token) pool.push_back(t);
    if (n < 1 || n > pool.size())
        throw Error("sample size N=" + std::to_string(n) + " outside [1, " +
                    std::to_string(pool.size()) + "]");
    // Partial Fisher-Yates.
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + uniform_index(rng, pool.size() - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(n);
    return pool;
}

double coefficient_of_determination(std::span<const double> targets,
                                    std::span<const double> predictions, std::size_t dim) {
    if (dim == 0 || targets.size() != predictions.size() || targets.size() % dim != 0)
        throw Error("R^2: shape mismatch");
    const std::size_t n = targets.size() / dim;
    if (n == 0) throw Error("R^2 of an empty sample");
    double total = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
        double mean_y = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            mean_y += targets[i * dim + j];
            scale = std::max(scale, std::abs(targets[i * dim + j]));
        }
        mean_y /= static_cast<double>(n);
        double ss_tot = 0.0, ss_res = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double y = targets[i * dim + j];
            const double r = y - predictions[i * dim + j];
            ss_tot += (y - mean_y) * (y - mean_y);
            ss_res += r * r;
        }
        // "No variance" and "no residual" are judged relative to the data scale.
        const double eps = 1e-24 * std::max(1.0, scale * scale) * static_cast<double>(n);
        if (ss_tot <= eps) total += ss_res <= eps ? 1.0 : 0.0;
        else total += 1.0 - ss_res / ss_tot;
    }
    return total / static_cast<double>(dim);
}

TokenRegressionModel fit_token_model(const ThemeVectors& themes, const EmbeddingSpace& game_space,
                                     GameToken token, std::span<const GameToken> sample) {
    if (!themes.theming().contains(token))
        throw Error("token " + std::string(token_name(token)) + " is outside the theming domain");
    if (sample.empty()) throw Error("empty regression sample");
    if (std::find(sample.begin(), sample.end(), token) != sample.end())
        throw Error("regression sample contains the token being rethemed");
    std::string name;
    game_name_checked(game_space, token, name);

    const std::size_t n = sample.size();
    const std::size_t g = game_space.dimension();
    const std::size_t w = themes.word_space().dimension();

    Eigen::MatrixXd x(n, g + 1);
    Eigen::MatrixXd y(n, w);
    for (std::size_t i = 0; i < n; ++i) {
        const auto gv = game_space.row(game_space.index_of(game_name_checked(game_space, sample[i], name)));
        for (std::size_t j = 0; j < g; ++j) x(i, j) = gv[j];
        x(i, g) = 1.0;
        const auto& tv = themes.theme(sample[i]);
        for (std::size_t j = 0; j < w; ++j) y(i, j) = tv[j];
    }
    const Eigen::MatrixXd coef = x.completeOrthogonalDecomposition().solve(y);  // (g+1) x w

    TokenRegressionModel m;
    m.token = token;
    m.sample.assign(sample.begin(), sample.end());
    m.word_dim = w;
    m.game_dim = g;
    m.weights.resize(w * g);
    m.bias.resize(w);
    for (std::size_t i = 0; i < w; ++i) {
        for (std::size_t j = 0; j < g; ++j) m.weights[i * g + j] = coef(j, i);
        m.bias[i] = coef(g, i);
    }

    std::vector<double> targets, predictions;
    targets.reserve(n * w);
    predictions.reserve(n * w);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& tv = themes.theme(sample[i]);
        targets.insert(targets.end(), tv.begin(), tv.end());
        const auto p = m.apply(game_space.row(game_space.index_of(token_name(sample[i]))));
        predictions.insert(predictions.end(), p.begin(), p.end());
    }
    m.r_squared = coefficient_of_determination(targets, predictions, w);
    return m;
}

TokenRegressionModel fit_token_model(const ThemeVectors& themes, const EmbeddingSpace& game_space,
                                     GameToken token, std::size_t n, std::mt19937_64& rng) {
    const auto domain = themes.theming().domain();
    if (std::find(domain.begin(), domain.end(), token) == domain.end())
        throw Error("token " + std::string(token_name(token)) + " is outside the theming domain");
    const auto sample = draw_sample(domain, token, n, rng);
    return fit_token_model(themes, game_space, token, sample);
}

NounList NounList::load(const std::string& path) {
    std::vector<std::string> words = parse_word_list(read_text_file(path));
    return from_words(std::move(words));
}

NounList NounList::from_words(std::vector<std::string> words) {
    NounList n;
    for (auto& w : words) n.words_.insert(std::move(w));
    return n;
}

bool NounList::contains(std::string_view word) const { return words_.contains(std::string(word)); }

NounPredicate NounList::predicate() const {
    return [this](std::string_view w) { return contains(w); };
}

Selection select_from_neighbors(std::span<const Neighbor> neighbors,
                                std::span<const std::string> discard,
                                const NounPredicate& is_noun) {
    std::vector<const Neighbor*> remaining;
    for (const auto& n : neighbors)
        if (std::find(discard.begin(), discard.end(), n.entry) == discard.end())
            remaining.push_back(&n);
    if (remaining.empty()) return {};
    for (const auto* n : remaining)
        if (is_noun && is_noun(n->entry)) return {n->entry, true};
    return {remaining.front()->entry, false};
}

Selection select_word(const EmbeddingSpace& words, std::span<const double> vector,
                      std::span<const std::string> discard, const NounPredicate& is_noun,
                      std::size_t k) {
    const auto top = nearest(words, vector, k);
    return select_from_neighbors(top, discard, is_noun);
}

RethemeResult retheme_baseline(const ThemeVectors& themes, GameToken token,
                               const GuidingVector& guide, const RethemeQuery& query) {
    const auto& base = themes.theme(token);
    if (guide.displacement.size() != base.size()) throw Error("guide dimension mismatch");
    RethemeResult r;
    r.token = token;
    r.output = add(base, guide.displacement);
    r.top_neighbors = nearest(themes.word_space(), r.output, query.k, {}, query.search);
    return r;
}

RethemeResult retheme_combined(const TokenRegressionModel& model, const EmbeddingSpace& game_space,
                               const GuidingVector& guide, const EmbeddingSpace& words,
                               const RethemeQuery& query) {
    if (guide.displacement.size() != model.word_dim || words.dimension() != model.word_dim)
        throw Error("guide dimension mismatch");
    RethemeResult r;
    r.token = model.token;
    r.output = add(model.apply(game_space[token_name(model.token)]), guide.displacement);
    r.top_neighbors = nearest(words, r.output, query.k, {}, query.search);
    r.r_squared = model.r_squared;
    r.sample = model.sample;
    return r;
}

std::vector<std::string> discard_words(const GuidingVector& guide, bool discard_start) {
    std::vector<std::string> out;
    if (!guide.finish_label.empty()) out.push_back(guide.finish_label);
    if (discard_start && !guide.start_label.empty()) out.push_back(guide.start_label);
    return out;
}

namespace {

RethemeTable retheme_impl(const ThemeVectors& themes, const EmbeddingSpace* game_space,
                          const GuidingVector& guide, const RethemeOptions& options,
                          const NounPredicate& is_noun, int threads) {
    const auto domain = themes.theming().domain();
    const bool combined = options.mode == RethemeMode::Combined;
    if (combined && !game_space) throw Error("combined mode needs a game space");
    if (guide.displacement.size() != themes.word_space().dimension())
        throw Error("guide dimension does not match the word space");

    // Samples are drawn up front so parallel fitting cannot change them.
    std::vector<std::vector<GameToken>> samples(domain.size());
    if (combined) {
        if (options.sample_size < 1 || options.sample_size + 1 > domain.size())
            throw Error("sample size N=" + std::to_string(options.sample_size) + " outside [1, " +
                        std::to_string(domain.size() - 1) + "]");
        std::mt19937_64 rng(options.seed);
        for (std::size_t i = 0; i < domain.size(); ++i)
            samples[i] = draw_sample(domain, domain[i], options.sample_size, rng);
    }

    const auto discard = discard_words(guide, options.discard_start);
    RethemeTable table;
    table.rows.resize(domain.size());
    std::vector<std::string> errors(domain.size());
    const auto n = static_cast<std::ptrdiff_t>(domain.size());
    RethemeQuery query = options.query;
    query.search.threads = 1;

#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        try {
            RethemeResult r;
            if (combined) {
                const auto model = fit_token_model(themes, *game_space, domain[idx], samples[idx]);
                r = retheme_combined(model, *game_space, guide, themes.word_space(), query);
            } else {
                r = retheme_baseline(themes, domain[idx], guide, query);
            }
            r.selection = select_from_neighbors(r.top_neighbors, discard, is_noun);
            table.rows[idx] = std::move(r);
        } catch (const std::exception& e) {
            errors[idx] = e.what();
        }
    }
    for (const auto& e : errors)
        if (!e.empty()) throw Error(e);

    if (combined && !table.rows.empty()) {
        double sum = 0.0;
        for (const auto& r : table.rows) sum += *r.r_squared;
        const double mean = sum / static_cast<double>(table.rows.size());
        double var = 0.0;
        for (const auto& r : table.rows) var += (*r.r_squared - mean) * (*r.r_squared - mean);
        table.mean_r_squared = mean;
        table.std_r_squared = std::sqrt(var / static_cast<double>(table.rows.size()));
    }
    return table;
}

}  // namespace

RethemeTable retheme_all(const ThemeVectors& themes, const EmbeddingSpace* game_space,
                         const GuidingVector& guide, const RethemeOptions& options,
                         const NounPredicate& is_noun) {
    const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
    return retheme_impl(themes, game_space, guide, options, is_noun, threads);
}

RethemeTable retheme_all_serial(const ThemeVectors& themes, const EmbeddingSpace* game_space,
                                const GuidingVector& guide, const RethemeOptions& options,
                                const NounPredicate& is_noun) {
    return retheme_impl(themes, game_space, guide, options, is_noun, 1);
}

}  // namespace gretheme
