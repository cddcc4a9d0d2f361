#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "lulc/error.hpp"

// Little-endian binary stream helpers shared by the file formats.
// The host is assumed little-endian (checked at compile time).

static_assert(std::endian::native == std::endian::little,
              "file formats are little-endian; big-endian hosts are unsupported");

namespace lulc {

inline void write_u32le(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), 4);
}

inline void write_u64le(std::ostream& os, std::uint64_t v) {
    os.write(reinterpret_cast<const char*>(&v), 8);
}

inline void write_f64le(std::ostream& os, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    write_u64le(os, bits);
}

inline void write_bytes(std::ostream& os, const void* p, std::size_t n) {
    os.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(n));
}

inline void read_exact(std::istream& is, void* p, std::size_t n, const std::string& what) {
    is.read(reinterpret_cast<char*>(p), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(is.gcount()) != n)
        throw Error("truncated file while reading " + what);
}

inline std::uint32_t read_u32le(std::istream& is, const std::string& what) {
    std::uint32_t v;
    read_exact(is, &v, 4, what);
    return v;
}

inline std::uint64_t read_u64le(std::istream& is, const std::string& what) {
    std::uint64_t v;
    read_exact(is, &v, 8, what);
    return v;
}

inline double read_f64le(std::istream& is, const std::string& what) {
    std::uint64_t bits = read_u64le(is, what);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

} // namespace lulc
