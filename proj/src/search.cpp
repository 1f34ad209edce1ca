#include "gretheme/search.hpp"

#include "gretheme/error.hpp"
#include "gretheme/vector_ops.hpp"

#include <omp.h>

#include <algorithm>
#include <cctype>

namespace gretheme {

double cosine(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) throw Error("cosine: dimension mismatch");
    const double nu = norm2(u), nv = norm2(v);
    if (nu == 0.0 || nv == 0.0) throw Error("cosine: zero-norm operand");
    return std::clamp(dot(u, v) / (nu * nv), -1.0, 1.0);
}

Vector mean(std::span<const Vector> vectors) {
    if (vectors.empty()) throw Error("mean of an empty list");
    Vector out(vectors.front().size(), 0.0);
    for (const auto& v : vectors) {
        if (v.size() != out.size()) throw Error("mean: dimension mismatch");
        for (std::size_t i = 0; i < v.size(); ++i) out[i] += v[i];
    }
    const double n = static_cast<double>(vectors.size());
    for (double& x : out) x /= n;
    return out;
}

namespace {

struct Scored {
    double score;
    std::size_t index;
};

// Higher score first, then vocabulary order.
bool better(const Scored& a, const Scored& b) {
    return a.score > b.score || (a.score == b.score && a.index < b.index);
}

bool alphabetic(const std::string& s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isalpha(c) != 0; });
}

// Shared by both search paths so they compute bit-identical scores.
struct Scorer {
    const EmbeddingSpace& space;
    std::span<const double> query;
    double query_norm;
    std::vector<char> skip;

    Scorer(const EmbeddingSpace& s, std::span<const double> q, std::span<const std::string> exclude,
           const SearchOptions& options)
        : space(s), query(q), query_norm(norm2(q)), skip(s.size(), 0) {
        if (q.size() != s.dimension()) throw Error("query dimension does not match the space");
        if (query_norm == 0.0) throw Error("zero-norm query");
        for (const auto& e : exclude)
            if (auto i = s.find(e)) skip[*i] = 1;
        if (options.alphabetic_only)
            for (std::size_t i = 0; i < s.size(); ++i)
                if (!alphabetic(s.entry(i))) skip[i] = 1;
    }

    double score(std::size_t i) const {
        const double n = space.norm(i);
        if (n == 0.0) return 0.0;
        return std::clamp(dot(query, space.row(i)) / (query_norm * n), -1.0, 1.0);
    }
};

std::vector<Neighbor> to_neighbors(const EmbeddingSpace& space, std::span<const Scored> best) {
    std::vector<Neighbor> out;
    out.reserve(best.size());
    for (const auto& s : best) out.push_back({space.entry(s.index), s.score, s.index});
    return out;
}

}  // namespace

std::vector<Neighbor> nearest(const EmbeddingSpace& space, std::span<const double> query,
                              std::size_t k, std::span<const std::string> exclude,
                              const SearchOptions& options) {
    if (k == 0) throw Error("k must be at least 1");
    const Scorer scorer(space, query, exclude, options);
    const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
    std::vector<std::vector<Scored>> partial(static_cast<std::size_t>(threads));
    const auto n = static_cast<std::ptrdiff_t>(space.size());

#pragma omp parallel num_threads(threads)
    {
        auto& heap = partial[static_cast<std::size_t>(omp_get_thread_num())];
        heap.reserve(k + 1);
        // Min-heap on `better`: the front is the worst of the current top-k.
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            if (scorer.skip[idx]) continue;
            Scored s{scorer.score(idx), idx};
            if (heap.size() < k) {
                heap.push_back(s);
                std::push_heap(heap.begin(), heap.end(), better);
            } else if (better(s, heap.front())) {
                std::pop_heap(heap.begin(), heap.end(), better);
                heap.back() = s;
                std::push_heap(heap.begin(), heap.end(), better);
            }
        }
    }

    std::vector<Scored> merged;
    for (const auto& p : partial) merged.insert(merged.end(), p.begin(), p.end());
    const std::size_t take = std::min(k, merged.size());
    std::partial_sort(merged.begin(), merged.begin() + static_cast<std::ptrdiff_t>(take),
                      merged.end(), better);
    merged.resize(take);
    return to_neighbors(space, merged);
}

std::vector<Neighbor> nearest_reference(const EmbeddingSpace& space,
                                        std::span<const double> query, std::size_t k,
                                        std::span<const std::string> exclude,
                                        const SearchOptions& options) {
    if (k == 0) throw Error("k must be at least 1");
    const Scorer scorer(space, query, exclude, options);
    std::vector<Scored> all;
    all.reserve(space.size());
    for (std::size_t i = 0; i < space.size(); ++i)
        if (!scorer.skip[i]) all.push_back({scorer.score(i), i});
    std::sort(all.begin(), all.end(), better);
    if (all.size() > k) all.resize(k);
    return to_neighbors(space, all);
}

}  // namespace gretheme
