#pragma once

#include <stdexcept>
#include <string>

namespace sel {

/// Violated precondition on user-supplied input. Maps to CLI exit code 2.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Overflow, singular system, non-convergence. Maps to CLI exit code 3.
class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sel
