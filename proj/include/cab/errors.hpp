#pragma once

#include <stdexcept>
#include <string>

namespace cab {

// Exit-code-mapped error categories (see tools/cab_main.cpp).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct LightConeError : std::runtime_error {
    explicit LightConeError(const std::string& what) : std::runtime_error(what) {}
};

struct InvariantViolation : std::runtime_error {
    explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cab
