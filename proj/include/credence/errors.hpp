#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace credence {

// Raised by every operation whose preconditions or type invariants are
// violated. The CLI maps these to exit code 1.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Formula syntax errors carry the 0-based character offset at which
// parsing failed.
struct ParseError : DomainError {
    std::size_t position;

    ParseError(const std::string& what, std::size_t pos)
        : DomainError(what + " at position " + std::to_string(pos)), position(pos) {}
};

} // namespace credence
