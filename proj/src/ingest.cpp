#include "gretheme/ingest.hpp"

#include "gretheme/error.hpp"
#include "gretheme/text_io.hpp"

#include <omp.h>

#include <algorithm>
#include <optional>

namespace gretheme {

namespace {

struct Outcome {
    std::optional<GameSentence> sentence;
    std::string error;
};

Outcome ingest_one(const RawGame& game, RowConvention convention) {
    Outcome out;
    try {
        out.sentence = encode_game(game, convention);
    } catch (const ReplayError& e) {
        out.error = PgnError(game.index, e.ply() / 2 + 1, e.what()).what();
    } catch (const Error& e) {
        out.error = PgnError(game.index, 0, e.what()).what();
    }
    return out;
}

IngestResult collect(PgnBatch&& batch, std::vector<Outcome>&& outcomes) {
    IngestResult r;
    r.games_skipped = batch.skipped.size();
    // Merge per-game outcomes with the parse errors, keeping document order.
    std::vector<std::pair<std::size_t, std::string>> ordered;
    for (const auto& e : batch.skipped) ordered.emplace_back(e.game_index(), e.what());
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        auto& o = outcomes[i];
        if (o.sentence) {
            for (auto t : o.sentence->tokens) ++r.token_counts[index_of(t)];
            r.sentences.push_back(std::move(*o.sentence));
            ++r.games_parsed;
        } else {
            ordered.emplace_back(batch.games[i].index, std::move(o.error));
            ++r.games_skipped;
        }
    }
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [i, e] : ordered) r.errors.push_back(std::move(e));
    return r;
}

}  // namespace

void IngestResult::merge(IngestResult&& other) {
    for (auto& s : other.sentences) sentences.push_back(std::move(s));
    for (auto& e : other.errors) errors.push_back(std::move(e));
    games_parsed += other.games_parsed;
    games_skipped += other.games_skipped;
    for (std::size_t i = 0; i < kTokenCount; ++i) token_counts[i] += other.token_counts[i];
}

IngestResult ingest_pgn(std::string_view text, const IngestOptions& options,
                        std::size_t first_index) {
    PgnBatch batch = parse_pgn_lenient(text, first_index);
    std::vector<Outcome> outcomes(batch.games.size());
    const auto n = static_cast<std::ptrdiff_t>(batch.games.size());
    const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        outcomes[i] = ingest_one(batch.games[i], options.convention);
    }
    return collect(std::move(batch), std::move(outcomes));
}

IngestResult ingest_pgn_serial(std::string_view text, const IngestOptions& options,
                               std::size_t first_index) {
    PgnBatch batch = parse_pgn_lenient(text, first_index);
    std::vector<Outcome> outcomes;
    outcomes.reserve(batch.games.size());
    for (const auto& g : batch.games) outcomes.push_back(ingest_one(g, options.convention));
    return collect(std::move(batch), std::move(outcomes));
}

IngestResult ingest_pgn_file(const std::string& path, const IngestOptions& options) {
    ChunkReader reader(path, "[Event ");
    IngestResult total;
    std::string chunk;
    std::size_t index = 0;
    while (reader.next(chunk)) {
        auto part = ingest_pgn(chunk, options, index);
        index += part.games_parsed + part.games_skipped;
        total.merge(std::move(part));
    }
    return total;
}

}  // namespace gretheme
