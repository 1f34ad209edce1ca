#include "gretheme/skipgram.hpp"

#include "gretheme/error.hpp"
#include "gretheme/text_io.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace gretheme {

void TrainingConfig::validate() const {
    if (dimension < 1) throw Error("dimension must be at least 1");
    if (window < 1) throw Error("window must be at least 1");
    if (epochs < 1) throw Error("epochs must be at least 1");
    if (!(learning_rate > 0.0)) throw Error("learning rate must be positive");
    if (!(min_rate_fraction >= 0.0 && min_rate_fraction <= 1.0))
        throw Error("min rate fraction must lie in [0, 1]");
    if (subsample < 0.0) throw Error("subsample threshold must be nonnegative");
    if (threads < 1) throw Error("threads must be at least 1");
}

std::size_t Corpus::total_tokens() const {
    std::size_t n = 0;
    for (auto c : counts) n += c;
    return n;
}

Corpus build_vocab(std::vector<Sentence> sentences, std::size_t min_count) {
    if (sentences.empty()) throw Error("empty corpus");
    std::array<std::size_t, kTokenCount> raw{};
    for (const auto& s : sentences)
        for (auto t : s) ++raw[index_of(t)];

    Corpus c;
    std::array<bool, kTokenCount> keep{};
    for (auto t : all_tokens()) {
        const auto i = index_of(t);
        if (raw[i] > 0 && raw[i] >= min_count) {
            keep[i] = true;
            c.vocabulary.push_back(t);
            c.counts[i] = raw[i];
        }
    }
    if (c.vocabulary.empty()) throw Error("vocabulary is empty after the min_count filter");
    for (auto& s : sentences) {
        std::erase_if(s, [&](GameToken t) { return !keep[index_of(t)]; });
        if (!s.empty()) c.sentences.push_back(std::move(s));
    }
    return c;
}

std::vector<Sentence> parse_corpus(std::string_view text, const std::string& source) {
    std::vector<Sentence> out;
    std::size_t lineno = 0;
    while (!text.empty()) {
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        Sentence s;
        while (!line.empty()) {
            auto sp = line.find(' ');
            std::string_view word = line.substr(0, sp);
            line = sp == std::string_view::npos ? std::string_view{} : line.substr(sp + 1);
            if (word.empty()) continue;
            auto t = parse_token(word);
            if (!t) throw FileFormatError(source, lineno, "unknown token '" + std::string(word) + "'");
            s.push_back(*t);
        }
        if (!s.empty()) out.push_back(std::move(s));
    }
    return out;
}

std::vector<Sentence> read_corpus(const std::string& path) {
    return parse_corpus(read_text_file(path), path);
}

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Unigram^0.75 noise distribution over vocabulary slots.
class NoiseSampler {
public:
    explicit NoiseSampler(const Corpus& c) {
        double acc = 0.0;
        for (auto t : c.vocabulary) {
            acc += std::pow(static_cast<double>(c.counts[index_of(t)]), 0.75);
            cumulative_.push_back(acc);
        }
    }
    std::size_t operator()(std::mt19937_64& rng) const {
        const double u = uniform01(rng) * cumulative_.back();
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        return std::min(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
    }

private:
    std::vector<double> cumulative_;
};

// Sentences rewritten as vocabulary slot indices.
std::vector<std::vector<std::size_t>> slot_sentences(const Corpus& c) {
    std::array<std::size_t, kTokenCount> slot{};
    for (std::size_t i = 0; i < c.vocabulary.size(); ++i) slot[index_of(c.vocabulary[i])] = i;
    std::vector<std::vector<std::size_t>> out;
    out.reserve(c.sentences.size());
    for (const auto& s : c.sentences) {
        std::vector<std::size_t> v;
        v.reserve(s.size());
        for (auto t : s) v.push_back(slot[index_of(t)]);
        out.push_back(std::move(v));
    }
    return out;
}

std::size_t pairs_in(std::size_t length, std::size_t window) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < length; ++i) {
        const std::size_t lo = i >= window ? i - window : 0;
        const std::size_t hi = std::min(length - 1, i + window);
        n += hi - lo;
    }
    return n;
}

struct Weights {
    std::size_t dim;
    std::vector<double> in;
    std::vector<double> out;
    double* in_row(std::size_t i) { return in.data() + i * dim; }
    double* out_row(std::size_t i) { return out.data() + i * dim; }
};

void sgns_step(Weights& w, std::size_t center, std::size_t context, std::size_t negatives,
               double alpha, const NoiseSampler& noise, std::mt19937_64& rng,
               std::vector<double>& grad) {
    const std::size_t d = w.dim;
    std::fill(grad.begin(), grad.end(), 0.0);
    double* in = w.in_row(center);
    for (std::size_t j = 0; j <= negatives; ++j) {
        std::size_t target = context;
        double label = 1.0;
        if (j > 0) {
            target = noise(rng);
            if (target == context) continue;
            label = 0.0;
        }
        double* out = w.out_row(target);
        double f = 0.0;
        for (std::size_t k = 0; k < d; ++k) f += in[k] * out[k];
        const double g = (label - sigmoid(f)) * alpha;
        for (std::size_t k = 0; k < d; ++k) grad[k] += g * out[k];
        for (std::size_t k = 0; k < d; ++k) out[k] += g * in[k];
    }
    for (std::size_t k = 0; k < d; ++k) in[k] += grad[k];
}

}  // namespace

SkipGramModel train(const Corpus& corpus, const TrainingConfig& config) {
    config.validate();
    if (corpus.vocabulary.empty()) throw Error("empty vocabulary");
    const std::size_t V = corpus.vocabulary.size();
    const std::size_t d = config.dimension;

    SkipGramModel model;
    const auto sentences = slot_sentences(corpus);
    std::size_t longest = 0;
    for (const auto& s : sentences) {
        model.pairs_per_epoch += pairs_in(s.size(), config.window);
        longest = std::max(longest, s.size());
    }
    if (config.window >= longest)
        model.warnings.push_back("window " + std::to_string(config.window) +
                                 " is not shorter than any sentence");
    if (model.pairs_per_epoch == 0)
        model.warnings.push_back("corpus yields no (center, context) pairs");

    std::mt19937_64 rng(config.seed);
    Weights w{d, std::vector<double>(V * d), std::vector<double>(V * d, 0.0)};
    for (double& x : w.in) x = (uniform01(rng) - 0.5) / static_cast<double>(d);

    const NoiseSampler noise(corpus);
    const double total = static_cast<double>(model.pairs_per_epoch * config.epochs) + 1.0;
    const double floor_rate = config.learning_rate * config.min_rate_fraction;

    std::vector<double> keep_prob(V, 1.0);
    if (config.subsample > 0.0) {
        const double t = config.subsample * static_cast<double>(corpus.total_tokens());
        for (std::size_t i = 0; i < V; ++i) {
            const double f = static_cast<double>(corpus.counts[index_of(corpus.vocabulary[i])]);
            keep_prob[i] = std::min(1.0, (std::sqrt(f / t) + 1.0) * t / f);
        }
    }

    auto run_sentence = [&](const std::vector<std::size_t>& raw, std::mt19937_64& r,
                            std::size_t& processed, std::size_t scale, std::vector<double>& grad,
                            std::vector<std::size_t>& kept) {
        const std::vector<std::size_t>* s = &raw;
        if (config.subsample > 0.0) {
            kept.clear();
            for (auto t : raw)
                if (keep_prob[t] >= 1.0 || uniform01(r) < keep_prob[t]) kept.push_back(t);
            s = &kept;
        }
        const std::size_t n = s->size();
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t lo = i >= config.window ? i - config.window : 0;
            const std::size_t hi = std::min(n - 1, i + config.window);
            for (std::size_t c = lo; c <= hi; ++c) {
                if (c == i) continue;
                const double progress = static_cast<double>(processed * scale) / total;
                const double alpha = std::max(config.learning_rate * (1.0 - progress), floor_rate);
                sgns_step(w, (*s)[i], (*s)[c], config.negatives, alpha, noise, r, grad);
                ++processed;
            }
        }
    };

    if (config.threads == 1) {
        std::size_t processed = 0;
        std::vector<double> grad(d);
        std::vector<std::size_t> kept;
        for (std::size_t e = 0; e < config.epochs; ++e)
            for (const auto& s : sentences) run_sentence(s, rng, processed, 1, grad, kept);
    } else {
        const auto n = static_cast<std::ptrdiff_t>(sentences.size());
        const auto threads = static_cast<std::size_t>(config.threads);
        const std::uint64_t base = rng();
#pragma omp parallel num_threads(config.threads)
        {
            std::mt19937_64 local(base + static_cast<std::uint64_t>(omp_get_thread_num()));
            std::size_t processed = 0;
            std::vector<double> grad(d);
            std::vector<std::size_t> kept;
            for (std::size_t e = 0; e < config.epochs; ++e) {
#pragma omp for schedule(static)
                for (std::ptrdiff_t i = 0; i < n; ++i)
                    run_sentence(sentences[static_cast<std::size_t>(i)], local, processed, threads,
                                 grad, kept);
            }
        }
    }

    model.input = EmbeddingSpace(d);
    model.output = EmbeddingSpace(d);
    for (std::size_t i = 0; i < V; ++i) {
        std::string name(token_name(corpus.vocabulary[i]));
        model.input.add(name, std::span<const double>(w.in_row(i), d));
        model.output.add(name, std::span<const double>(w.out_row(i), d));
    }
    return model;
}

PairScores pair_scores(const SkipGramModel& model, const Corpus& corpus, std::size_t window,
                       std::uint64_t seed, std::size_t max_pairs) {
    const auto sentences = slot_sentences(corpus);
    const NoiseSampler noise(corpus);
    std::mt19937_64 rng(seed);
    PairScores out;
    if (sentences.empty() || window == 0) return out;
    double pos = 0.0, neg = 0.0;
    std::size_t attempts = 0;
    while (out.pairs < max_pairs && attempts < 4 * max_pairs) {
        ++attempts;
        const auto& s = sentences[rng() % sentences.size()];
        if (s.size() < 2) continue;
        const std::size_t i = rng() % s.size();
        const std::size_t lo = i >= window ? i - window : 0;
        const std::size_t hi = std::min(s.size() - 1, i + window);
        std::size_t c = lo + rng() % (hi - lo + 1);
        if (c == i) continue;
        const std::size_t negative = noise(rng);
        auto score = [&](std::size_t a, std::size_t b) {
            double f = 0.0;
            const auto in = model.input.row(a);
            const auto outv = model.output.row(b);
            for (std::size_t k = 0; k < in.size(); ++k) f += in[k] * outv[k];
            return sigmoid(f);
        };
        pos += score(s[i], s[c]);
        neg += score(s[i], negative);
        ++out.pairs;
    }
    if (out.pairs) {
        out.positive_mean = pos / static_cast<double>(out.pairs);
        out.negative_mean = neg / static_cast<double>(out.pairs);
    }
    return out;
}

}  // namespace gretheme
