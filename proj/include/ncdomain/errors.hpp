#pragma once

#include <stdexcept>
#include <string>

namespace ncdomain {

// Bad input: malformed JSON, symbol violating regularity, dimension
// mismatches.  Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: singular solve, PSD violation beyond tolerance,
// basis-size cap exceeded.  Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace ncdomain
