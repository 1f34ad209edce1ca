#pragma once

#include "gretheme/error.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gretheme {

enum class GameResult : std::uint8_t { WhiteWin, BlackWin, Draw };

std::string_view result_marker(GameResult r);

// One game as read from PGN: tag pairs plus the mainline SAN moves.
struct RawGame {
    std::size_t index = 0;  // position of the game in its document
    std::vector<std::pair<std::string, std::string>> headers;
    std::vector<std::string> moves;
    GameResult result = GameResult::Draw;

    const std::string* header(std::string_view name) const;
};

struct PgnBatch {
    std::vector<RawGame> games;
    std::vector<PgnError> skipped;
};

// Reads every game of a PGN document, dropping comments, NAGs and
// variations. Throws PgnError on the first bad game.
std::vector<RawGame> parse_pgn(std::string_view text);

// Like parse_pgn but skips bad games, recording one error per skipped game.
// `first_index` offsets game numbering for documents read in chunks.
PgnBatch parse_pgn_lenient(std::string_view text, std::size_t first_index = 0);

}  // namespace gretheme
