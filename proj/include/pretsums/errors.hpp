#pragma once

#include <stdexcept>
#include <string>

namespace pretsums {

// Input outside an operation's mathematical domain (exit code 1 on the CLI).
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Malformed function spec or CLI argument (exit code 2 on the CLI).
struct ParseError : std::invalid_argument {
    explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace pretsums
