#pragma once

#include <stdexcept>

namespace floorforge {

// Input outside an operation's mathematical domain: negative radicand,
// zero denominator, value below a function's range, non-prime p, ...
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A checker's stated hypothesis does not hold for the given arguments
// (attained residue inside the window, instance below the n-bound, ...).
// Checkers with an unchecked mode raise this only when that mode is off.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Structurally valid input the library deliberately does not evaluate:
// products of two irrational values, nested radicals, exponential residue
// scans with a modulus that is not a power of the base.
class UnsupportedError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace floorforge
