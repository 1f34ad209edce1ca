#pragma once

#include "gretheme/embedding_space.hpp"
#include "gretheme/game_token.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace gretheme {

using Sentence = std::vector<GameToken>;

struct TrainingConfig {
    std::size_t dimension = 5;
    std::size_t window = 5;
    std::size_t negatives = 5;
    std::size_t epochs = 15;
    double learning_rate = 0.025;
    // The learning rate decays linearly to learning_rate * min_rate_fraction.
    double min_rate_fraction = 1e-4;
    std::size_t min_count = 0;
    // Frequent-token subsampling threshold; 0 disables it.
    double subsample = 0.0;
    std::uint64_t seed = 1;
    // 1 is deterministic. More threads shard sentences and update shared
    // weights without locks, which is not reproducible.
    int threads = 1;

    void validate() const;
};

struct Corpus {
    std::vector<Sentence> sentences;  // restricted to the vocabulary
    std::array<std::size_t, kTokenCount> counts{};
    std::vector<GameToken> vocabulary;  // canonical token order

    std::size_t total_tokens() const;
};

// Counts tokens and keeps those seen at least min_count times. Throws Error
// when there are no sentences or nothing survives the filter.
Corpus build_vocab(std::vector<Sentence> sentences, std::size_t min_count = 0);

// One sentence per line, tokens separated by single spaces. Throws
// FileFormatError on unknown tokens.
std::vector<Sentence> read_corpus(const std::string& path);
std::vector<Sentence> parse_corpus(std::string_view text, const std::string& source = "<corpus>");

struct SkipGramModel {
    EmbeddingSpace input;   // the token embeddings
    EmbeddingSpace output;  // context vectors, kept for diagnostics
    std::size_t pairs_per_epoch = 0;
    std::vector<std::string> warnings;
};

// Skip-gram with negative sampling. Context windows never cross sentence
// boundaries; the noise distribution is proportional to count^0.75.
SkipGramModel train(const Corpus& corpus, const TrainingConfig& config);

struct PairScores {
    double positive_mean = 0.0;  // mean sigmoid(in . out) over true pairs
    double negative_mean = 0.0;  // same over noise pairs
    std::size_t pairs = 0;
};

// Mean sigmoid score of observed (center, context) pairs versus pairs drawn
// from the noise distribution, over at most max_pairs sampled pairs.
PairScores pair_scores(const SkipGramModel& model, const Corpus& corpus, std::size_t window,
                       std::uint64_t seed, std::size_t max_pairs = 200000);

}  // namespace gretheme
