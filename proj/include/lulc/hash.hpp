#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace lulc {

/// FNV-1a 64-bit.
inline std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t hash_file(const std::filesystem::path& path);
std::string hash_hex(std::uint64_t h);

} // namespace lulc
