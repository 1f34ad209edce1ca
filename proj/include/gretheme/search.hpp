#pragma once

#include "gretheme/embedding_space.hpp"

#include <span>
#include <string>
#include <vector>

namespace gretheme {

struct Neighbor {
    std::string entry;
    double score = 0.0;  // cosine similarity
    std::size_t index = 0;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// dot(u, v) / (|u| |v|), clamped to [-1, 1]. Throws Error on a zero-norm
// operand or a dimension mismatch.
double cosine(std::span<const double> u, std::span<const double> v);

// Componentwise mean. Throws Error on an empty list or mixed dimensions.
Vector mean(std::span<const Vector> vectors);

struct SearchOptions {
    bool alphabetic_only = false;  // skip entries containing non-letters
    int threads = 0;               // 0: OpenMP default
};

// The k entries with the highest cosine to `query`, skipping `exclude`,
// sorted by score descending with ties in vocabulary order. Exact scan; the
// vocabulary is partitioned across OpenMP threads and partial top-k lists
// are merged.
std::vector<Neighbor> nearest(const EmbeddingSpace& space, std::span<const double> query,
                              std::size_t k, std::span<const std::string> exclude = {},
                              const SearchOptions& options = {});

// Serial full sort over every entry; the oracle for nearest().
std::vector<Neighbor> nearest_reference(const EmbeddingSpace& space,
                                        std::span<const double> query, std::size_t k,
                                        std::span<const std::string> exclude = {},
                                        const SearchOptions& options = {});

}  // namespace gretheme
