#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gretheme {

using Vector = std::vector<double>;

// A vocabulary with one dense vector per entry, stored row-major. Used for
// both the 50-d word vectors and the 5-d game-token vectors. Immutable once
// built, so it can be shared across threads.
class EmbeddingSpace {
public:
    EmbeddingSpace() = default;
    explicit EmbeddingSpace(std::size_t dimension) : dimension_(dimension) {}

    // Appends an entry. Throws Error on duplicate entries, wrong dimension or
    // non-finite components.
    void add(std::string entry, std::span<const double> values);

    std::size_t dimension() const { return dimension_; }
    std::size_t size() const { return vocabulary_.size(); }
    bool empty() const { return vocabulary_.empty(); }

    const std::vector<std::string>& vocabulary() const { return vocabulary_; }
    const std::string& entry(std::size_t i) const { return vocabulary_[i]; }
    std::optional<std::size_t> find(std::string_view entry) const;
    bool contains(std::string_view entry) const { return find(entry).has_value(); }
    // Throws UnknownEntryError.
    std::size_t index_of(std::string_view entry) const;

    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * dimension_, dimension_};
    }
    std::span<const double> operator[](std::string_view entry) const { return row(index_of(entry)); }
    Vector vector(std::string_view entry) const;
    double norm(std::size_t i) const { return norms_[i]; }
    std::span<const double> data() const { return data_; }

    friend bool operator==(const EmbeddingSpace&, const EmbeddingSpace&) = default;

private:
    struct Hash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
    };

    std::size_t dimension_ = 0;
    std::vector<std::string> vocabulary_;
    std::vector<double> data_;
    std::vector<double> norms_;
    std::unordered_map<std::string, std::size_t, Hash, std::equal_to<>> index_;
};

struct LoadOptions {
    std::optional<std::size_t> expected_dimension;
    bool lowercase = false;  // fold entries to lowercase (word vectors)
};

// Reads "<entry> <v1> ... <vd>" lines, plain or gzip. Load order is
// vocabulary order. Errors carry the line number.
EmbeddingSpace load_text_vectors(const std::string& path, const LoadOptions& options = {});

// Writes the same format with round-trip precision. An empty space writes an
// empty file.
void save_text_vectors(const EmbeddingSpace& space, const std::string& path);
std::string format_text_vectors(const EmbeddingSpace& space);

}  // namespace gretheme
