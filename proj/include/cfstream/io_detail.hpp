#pragma once

// Little-endian binary record helpers for model snapshots. The layouts are
// documented in docs/formats.md; fields round-trip bit exactly.

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>

#include "cfstream/errors.hpp"

namespace cfstream::io {

inline void write_bytes(std::ostream& out, const void* data, std::size_t len) {
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(len));
}

inline void read_bytes(std::istream& in, void* data, std::size_t len) {
    in.read(static_cast<char*>(data), static_cast<std::streamsize>(len));
    if (static_cast<std::size_t>(in.gcount()) != len) {
        throw IoError("snapshot truncated");
    }
}

template <class T>
void write_pod(std::ostream& out, T value) {
    write_bytes(out, &value, sizeof(T));
}

template <class T>
T read_pod(std::istream& in) {
    T value;
    read_bytes(in, &value, sizeof(T));
    return value;
}

inline void write_u8(std::ostream& o, std::uint8_t v) { write_pod(o, v); }
inline void write_u32(std::ostream& o, std::uint32_t v) { write_pod(o, v); }
inline void write_i64(std::ostream& o, std::int64_t v) { write_pod(o, v); }
inline void write_f64(std::ostream& o, double v) { write_pod(o, v); }
inline std::uint8_t read_u8(std::istream& i) { return read_pod<std::uint8_t>(i); }
inline std::uint32_t read_u32(std::istream& i) { return read_pod<std::uint32_t>(i); }
inline std::int64_t read_i64(std::istream& i) { return read_pod<std::int64_t>(i); }
inline double read_f64(std::istream& i) { return read_pod<double>(i); }

inline void write_magic(std::ostream& out, const char (&magic)[5]) {
    write_bytes(out, magic, 4);
}

inline void expect_magic(std::istream& in, const char (&magic)[5]) {
    char got[4];
    read_bytes(in, got, 4);
    if (std::memcmp(got, magic, 4) != 0) {
        throw IoError(std::string("bad snapshot magic, expected ") + magic);
    }
}

}  // namespace cfstream::io
