#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gretheme {

// Base class for every error caused by bad input or bad arguments. The CLI
// maps these to exit code 1; anything else is an internal error (exit 2).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A PGN game that could not be read or replayed.
class PgnError : public Error {
public:
    PgnError(std::size_t game_index, std::size_t move_number, const std::string& what)
        : Error("game " + std::to_string(game_index + 1) +
                (move_number ? ", move " + std::to_string(move_number) : std::string()) +
                ": " + what),
          game_index_(game_index),
          move_number_(move_number) {}

    std::size_t game_index() const { return game_index_; }
    // 1-based full-move number, or 0 when the error is not tied to a move.
    std::size_t move_number() const { return move_number_; }

private:
    std::size_t game_index_;
    std::size_t move_number_;
};

// Illegal or ambiguous SAN during replay.
class ReplayError : public Error {
public:
    ReplayError(std::size_t ply, const std::string& san, const std::string& what)
        : Error("ply " + std::to_string(ply + 1) + " (" + san + "): " + what), ply_(ply) {}

    // Zero-based; the message counts from 1.
    std::size_t ply() const { return ply_; }

private:
    std::size_t ply_;
};

// Malformed line in a vector, corpus, theming or word-list file.
class FileFormatError : public Error {
public:
    FileFormatError(const std::string& path, std::size_t line, const std::string& what)
        : Error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// A vocabulary entry, word or token that does not resolve.
class UnknownEntryError : public Error {
public:
    explicit UnknownEntryError(const std::string& entry)
        : Error("unknown entry '" + entry + "'"), entry_(entry) {}

    const std::string& entry() const { return entry_; }

private:
    std::string entry_;
};

}  // namespace gretheme
