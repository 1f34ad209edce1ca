#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

namespace gretheme {

// Reads a whole file; gzip input is decompressed transparently.
std::string read_text_file(const std::string& path);

// Line-by-line reader over plain or gzip files. Lines are returned without
// the trailing newline (and without a trailing '\r').
class LineReader {
public:
    explicit LineReader(const std::string& path);
    ~LineReader();
    LineReader(const LineReader&) = delete;
    LineReader& operator=(const LineReader&) = delete;

    bool next(std::string& line);
    std::size_t line_number() const { return line_number_; }
    const std::string& path() const { return path_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::string path_;
    std::size_t line_number_ = 0;
};

// Reads a file in blocks and hands out complete chunks of text, cut right
// before a line starting with `boundary`. Used to stream large PGN exports.
class ChunkReader {
public:
    ChunkReader(const std::string& path, std::string boundary, std::size_t block_size = 64u << 20);
    ~ChunkReader();
    ChunkReader(const ChunkReader&) = delete;
    ChunkReader& operator=(const ChunkReader&) = delete;

    bool next(std::string& chunk);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

void write_text_file(const std::string& path, std::string_view contents);

// 64-bit FNV-1a, used to fingerprint input files in run metadata.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

}  // namespace gretheme
