#pragma once

#include <stdexcept>
#include <string>

namespace lulc {

/// Domain error carrying a human-readable message (offending paths included
/// by the thrower).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace lulc
