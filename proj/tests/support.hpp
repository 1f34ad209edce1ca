#pragma once

#include "gretheme/embedding_space.hpp"
#include "gretheme/text_io.hpp"

#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace testing {

inline std::string fixture(const std::string& name) {
    return std::string(GRETHEME_FIXTURE_DIR) + "/" + name;
}

inline std::string data_file(const std::string& name) {
    return std::string(GRETHEME_DATA_DIR) + "/" + name;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("gretheme_" + tag + "_" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

// Gaussian vectors for the given entries.
inline gretheme::EmbeddingSpace random_space(const std::vector<std::string>& entries, std::size_t dim,
                                             std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    gretheme::EmbeddingSpace space(dim);
    std::vector<double> v(dim);
    for (const auto& e : entries) {
        for (auto& x : v) x = normal(rng);
        space.add(e, v);
    }
    return space;
}

inline std::vector<std::string> numbered(const std::string& prefix, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

}  // namespace testing
