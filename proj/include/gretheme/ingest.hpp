#pragma once

#include "gretheme/encoder.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace gretheme {

struct IngestOptions {
    RowConvention convention = RowConvention::MoverRelative;
    int threads = 0;  // 0: OpenMP default
};

struct IngestResult {
    std::vector<GameSentence> sentences;  // input order
    std::vector<std::string> errors;      // one per skipped game
    std::size_t games_parsed = 0;
    std::size_t games_skipped = 0;
    std::array<std::size_t, kTokenCount> token_counts{};

    void merge(IngestResult&& other);
};

// Parses a PGN document and encodes every good game. Bad games (syntax,
// illegal moves, missing result, no moves) are skipped and counted. Games
// are replayed in parallel; the output does not depend on the thread count.
IngestResult ingest_pgn(std::string_view text, const IngestOptions& options = {},
                        std::size_t first_index = 0);

// Single-threaded reference for ingest_pgn.
IngestResult ingest_pgn_serial(std::string_view text, const IngestOptions& options = {},
                               std::size_t first_index = 0);

// Streams a (possibly gzip) PGN file chunk by chunk.
IngestResult ingest_pgn_file(const std::string& path, const IngestOptions& options = {});

}  // namespace gretheme
