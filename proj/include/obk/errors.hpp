#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace obk {

// Base class for all errors thrown by the library.  The CLI maps each
// subclass to a stable process exit code (see tools/obk.cpp).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text (front DSL, word/presentation syntax, JSON shape).
struct SyntaxError : Error {
    int line = 0;  // 1-based; 0 when not tied to a text position
    int col = 0;
    SyntaxError(const std::string& msg, int line_ = 0, int col_ = 0)
        : Error(msg), line(line_), col(col_) {}
};

// Structurally well-formed input that violates a semantic requirement
// (dangling slots, unbalanced cusps, unknown names, bad counts...).
struct ValidationError : Error {
    using Error::Error;
};

// A move was requested whose preconditions do not hold.
struct IllegalMove : Error {
    using Error::Error;
};

// Balanced-presentation moves applied to an unbalanced presentation.
struct UnbalancedInput : IllegalMove {
    using IllegalMove::IllegalMove;
};

// Linking number requested for components that are not null-homologous
// in the underlying handlebody.
struct UndefinedLinking : Error {
    using Error::Error;
};

// The framing matrix was requested but some off-diagonal entries do not
// exist (circles passing through 1-handles with nonzero exponent sums).
struct UndefinedEntries : Error {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // 0-based circle indices
    UndefinedEntries(const std::string& msg,
                     std::vector<std::pair<std::size_t, std::size_t>> p)
        : Error(msg), pairs(std::move(p)) {}
};

// An operation outside the implemented regime (e.g. boundary data or
// classification in the presence of 1-handles).
struct UnsupportedPage : Error {
    using Error::Error;
};

// Connected sum with an empty page on one side.
struct UnsupportedSphere : Error {
    using Error::Error;
};

// Homology data that does not arise from any closed simply connected
// spin/non-spin 5-manifold of the supported families.
struct NotRealizable : Error {
    using Error::Error;
};

}  // namespace obk
