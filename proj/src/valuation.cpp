#include "gretheme/valuation.hpp"

#include "gretheme/error.hpp"
#include "gretheme/search.hpp"
#include "gretheme/text_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

namespace gretheme {

namespace {

std::size_t column_of(Piece p) {
    for (std::size_t i = 0; i < kValuationPieces.size(); ++i)
        if (kValuationPieces[i] == p) return i;
    throw Error("piece has no valuation column");
}

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace

ExpertValuation ExpertValuation::evans() {
    ExpertValuation e;
    e.values_ = {10.0, 5.0, 4.0, 3.75, 3.5, 1.0};
    return e;
}

ExpertValuation ExpertValuation::load(const std::string& path) {
    const std::string text = read_text_file(path);
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    ExpertValuation e;
    std::array<bool, 6> seen{};
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream fields(line);
        std::string name, value;
        if (!(fields >> name)) continue;
        if (!(fields >> value)) throw FileFormatError(path, lineno, "expected 'Piece value'");
        std::optional<std::size_t> col;
        for (std::size_t i = 0; i < kValuationPieces.size(); ++i)
            if (lower(std::string(piece_name(kValuationPieces[i]))) == lower(name)) col = i;
        if (!col) throw FileFormatError(path, lineno, "unknown piece '" + name + "'");
        if (seen[*col]) throw FileFormatError(path, lineno, "piece '" + name + "' listed twice");
        double v = 0.0;
        auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc() || p != value.data() + value.size() || !std::isfinite(v))
            throw FileFormatError(path, lineno, "bad value '" + value + "'");
        seen[*col] = true;
        e.values_[*col] = v;
    }
    for (std::size_t i = 0; i < 6; ++i)
        if (!seen[i]) throw FileFormatError(path, lineno, "missing piece " + std::string(piece_name(kValuationPieces[i])));
    return e;
}

double ExpertValuation::value(Piece p) const { return values_[column_of(p)]; }

std::vector<double> similarity_profile(const EmbeddingSpace& space, std::span<const double> anchor,
                                       std::span<const std::string> targets) {
    std::vector<double> out;
    out.reserve(targets.size());
    for (const auto& t : targets) {
        if (!space.contains(t)) throw UnknownEntryError(t);
        out.push_back(cosine(space[t], anchor));
    }
    return out;
}

std::vector<double> normalize_linear(std::span<const double> values, double lo, double hi) {
    if (values.empty()) throw Error("cannot normalize an empty list");
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    std::vector<double> out(values.size(), lo);
    if (*mx == *mn) return out;
    const double span = *mx - *mn;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] == *mx) out[i] = hi;
        else out[i] = lo + (values[i] - *mn) / span * (hi - lo);
    }
    return out;
}

std::vector<double> average_ranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
        const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw Error("spearman: length mismatch");
    if (xs.size() < 2) throw Error("spearman needs at least two values");
    const auto rx = average_ranks(xs);
    const auto ry = average_ranks(ys);
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) throw Error("spearman undefined for a constant sequence");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

ValuationRow valuation_row(const EmbeddingSpace& space, const std::string& anchor, bool game_space,
                           const std::string& label, const ExpertValuation& expert) {
    if (!space.contains(anchor)) throw UnknownEntryError(anchor);
    std::vector<std::string> targets;
    for (auto p : kValuationPieces) {
        std::string name(piece_name(p));
        targets.push_back(game_space ? name : lower(name));
    }
    ValuationRow row;
    row.label = label;
    row.anchor = anchor;
    row.game_space = game_space;
    row.raw = similarity_profile(space, space[anchor], targets);
    row.normalized = normalize_linear(row.raw);
    row.spearman_vs_expert = spearman(row.raw, expert.values());
    return row;
}

ValuationReport valuation_report(const EmbeddingSpace& game_space, const EmbeddingSpace* word_space,
                                 const std::string& metadata, const ExpertValuation& expert) {
    ValuationReport r;
    r.expert = expert;
    r.metadata = metadata;
    r.rows.push_back(valuation_row(game_space, "Checkmate", true,
                                   "Similarity to token Checkmate (game vectors)", expert));
    if (word_space) {
        r.rows.push_back(valuation_row(*word_space, "checkmate", false,
                                       "Similarity to \"checkmate\" (word vectors)", expert));
        r.rows.push_back(valuation_row(*word_space, "win", false,
                                       "Similarity to \"win\" (word vectors)", expert));
    }
    return r;
}

}  // namespace gretheme
