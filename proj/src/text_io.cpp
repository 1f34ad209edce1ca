#include "gretheme/text_io.hpp"

#include "gretheme/error.hpp"

#include <zlib.h>

#include <cstdint>
#include <cstdio>
#include <fstream>

namespace gretheme {

namespace {

struct GzFile {
    gzFile handle = nullptr;

    explicit GzFile(const std::string& path) : handle(gzopen(path.c_str(), "rb")) {
        if (!handle) throw Error("cannot open '" + path + "'");
        gzbuffer(handle, 1u << 18);
    }
    ~GzFile() {
        if (handle) gzclose(handle);
    }
    GzFile(const GzFile&) = delete;
    GzFile& operator=(const GzFile&) = delete;

    // Appends up to n bytes to out; returns bytes read.
    std::size_t read_into(std::string& out, std::size_t n, const std::string& path) {
        const std::size_t old = out.size();
        out.resize(old + n);
        int got = gzread(handle, out.data() + old, static_cast<unsigned>(n));
        if (got < 0) throw Error("read error in '" + path + "'");
        out.resize(old + static_cast<std::size_t>(got));
        return static_cast<std::size_t>(got);
    }
};

}  // namespace

std::string read_text_file(const std::string& path) {
    GzFile f(path);
    std::string out;
    while (f.read_into(out, 1u << 20, path) > 0) {
    }
    return out;
}

struct LineReader::Impl {
    explicit Impl(const std::string& path) : file(path) {}
    GzFile file;
    std::string buffer;
    std::size_t pos = 0;
    bool eof = false;
};

LineReader::LineReader(const std::string& path) : impl_(std::make_unique<Impl>(path)), path_(path) {}
LineReader::~LineReader() = default;

bool LineReader::next(std::string& line) {
    auto& s = *impl_;
    for (;;) {
        auto nl = s.buffer.find('\n', s.pos);
        if (nl != std::string::npos) {
            line.assign(s.buffer, s.pos, nl - s.pos);
            s.pos = nl + 1;
            break;
        }
        if (s.eof) {
            if (s.pos >= s.buffer.size()) return false;
            line.assign(s.buffer, s.pos, std::string::npos);
            s.pos = s.buffer.size();
            break;
        }
        s.buffer.erase(0, s.pos);
        s.pos = 0;
        if (s.file.read_into(s.buffer, 1u << 20, path_) == 0) s.eof = true;
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++line_number_;
    return true;
}

struct ChunkReader::Impl {
    Impl(const std::string& p, std::string b, std::size_t bs)
        : file(p), path(p), boundary("\n" + std::move(b)), block_size(bs) {}
    GzFile file;
    std::string path;
    std::string boundary;
    std::size_t block_size;
    std::string pending;
    bool eof = false;
};

ChunkReader::ChunkReader(const std::string& path, std::string boundary, std::size_t block_size)
    : impl_(std::make_unique<Impl>(path, std::move(boundary), block_size)) {}
ChunkReader::~ChunkReader() = default;

bool ChunkReader::next(std::string& chunk) {
    auto& s = *impl_;
    while (!s.eof) {
        if (s.file.read_into(s.pending, s.block_size, s.path) == 0) {
            s.eof = true;
            break;
        }
        auto cut = s.pending.rfind(s.boundary);
        if (cut != std::string::npos && cut > 0) {
            chunk.assign(s.pending, 0, cut + 1);
            s.pending.erase(0, cut + 1);
            return true;
        }
    }
    if (s.pending.empty()) return false;
    chunk = std::move(s.pending);
    s.pending.clear();
    return true;
}

void write_text_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error("write failed for '" + path + "'");
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace gretheme
