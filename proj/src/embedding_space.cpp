#include "gretheme/embedding_space.hpp"

#include "gretheme/error.hpp"
#include "gretheme/text_io.hpp"
#include "gretheme/vector_ops.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace gretheme {

void EmbeddingSpace::add(std::string entry, std::span<const double> values) {
    if (dimension_ == 0) throw Error("embedding space has no dimension");
    if (values.size() != dimension_)
        throw Error("entry '" + entry + "' has " + std::to_string(values.size()) +
                    " components, expected " + std::to_string(dimension_));
    for (double v : values)
        if (!std::isfinite(v)) throw Error("entry '" + entry + "' has a non-finite component");
    if (index_.contains(entry)) throw Error("duplicate entry '" + entry + "'");
    index_.emplace(entry, vocabulary_.size());
    vocabulary_.push_back(std::move(entry));
    data_.insert(data_.end(), values.begin(), values.end());
    norms_.push_back(norm2(values));
}

std::optional<std::size_t> EmbeddingSpace::find(std::string_view entry) const {
    auto it = index_.find(entry);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t EmbeddingSpace::index_of(std::string_view entry) const {
    auto i = find(entry);
    if (!i) throw UnknownEntryError(std::string(entry));
    return *i;
}

Vector EmbeddingSpace::vector(std::string_view entry) const {
    auto r = row(index_of(entry));
    return {r.begin(), r.end()};
}

EmbeddingSpace load_text_vectors(const std::string& path, const LoadOptions& options) {
    LineReader reader(path);
    std::string line;
    std::optional<EmbeddingSpace> space;
    Vector values;
    while (reader.next(line)) {
        if (line.empty()) continue;
        const std::size_t lineno = reader.line_number();
        auto sp = line.find(' ');
        if (sp == std::string::npos || sp == 0)
            throw FileFormatError(path, lineno, "expected '<entry> <components...>'");
        std::string entry = line.substr(0, sp);
        if (options.lowercase)
            std::transform(entry.begin(), entry.end(), entry.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

        values.clear();
        const char* p = line.data() + sp;
        const char* end = line.data() + line.size();
        while (p < end) {
            while (p < end && *p == ' ') ++p;
            if (p == end) break;
            double v = 0;
            auto [next, ec] = std::from_chars(p, end, v);
            if (ec != std::errc() || (next != end && *next != ' '))
                throw FileFormatError(path, lineno, "non-numeric component in entry '" + entry + "'");
            values.push_back(v);
            p = next;
        }
        if (!space) {
            const std::size_t dim = options.expected_dimension.value_or(values.size());
            if (dim == 0) throw FileFormatError(path, lineno, "entry without components");
            space.emplace(dim);
        }
        if (values.size() != space->dimension())
            throw FileFormatError(path, lineno,
                                  "entry '" + entry + "' has " + std::to_string(values.size()) +
                                      " components, expected " +
                                      std::to_string(space->dimension()));
        try {
            space->add(std::move(entry), values);
        } catch (const FileFormatError&) {
            throw;
        } catch (const Error& e) {
            throw FileFormatError(path, lineno, e.what());
        }
    }
    if (!space) return EmbeddingSpace(options.expected_dimension.value_or(0));
    return std::move(*space);
}

std::string format_text_vectors(const EmbeddingSpace& space) {
    std::string out;
    char buf[32];
    for (std::size_t i = 0; i < space.size(); ++i) {
        out += space.entry(i);
        for (double v : space.row(i)) {
            // Shortest representation that parses back to the same double.
            auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
            out += ' ';
            out.append(buf, p);
        }
        out += '\n';
    }
    return out;
}

void save_text_vectors(const EmbeddingSpace& space, const std::string& path) {
    write_text_file(path, format_text_vectors(space));
}

}  // namespace gretheme
