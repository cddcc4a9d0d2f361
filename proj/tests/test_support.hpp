#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unistd.h>

#include "lulc/image.hpp"
#include "lulc/rng.hpp"

namespace testsup {

// Unique scratch directory, removed on destruction.
struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& prefix) {
        static std::uint64_t counter = 0;
        path = std::filesystem::temp_directory_path() /
               (prefix + "_" + std::to_string(++counter) + "_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

inline lulc::Image random_byte_image(int width, int height, int channels, lulc::Rng& rng) {
    lulc::Image img = lulc::make_image(width, height, channels);
    for (double& v : img.data) v = static_cast<double>(rng.uniform_int(256));
    return img;
}

} // namespace testsup
