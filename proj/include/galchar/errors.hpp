#pragma once

#include <stdexcept>
#include <string>

namespace galchar {

// Exit-code taxonomy shared with the CLI: 1 usage, 2 capacity, 3 falsification.
struct invalid_input_error : std::runtime_error {
    explicit invalid_input_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct capacity_error : std::runtime_error {
    explicit capacity_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a computation contradicts a structural guarantee (e.g. an
// oracle class that matches no parameter). Signals a bug, never bad input.
struct falsification_error : std::runtime_error {
    explicit falsification_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace galchar
