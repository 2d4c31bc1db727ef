#pragma once

#include <stdexcept>
#include <string>

namespace fieldrank {

// Exit-code contract: 0 success, 2 input error, 3 validation error,
// 4 internal invariant failure.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct internal_error : std::logic_error {
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

enum ExitCode : int {
    exit_ok = 0,
    exit_input_error = 2,
    exit_validation_error = 3,
    exit_internal_error = 4,
};

}  // namespace fieldrank
