#pragma once

#include <stdexcept>
#include <string>

namespace recolor {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed domain object (broken invariant, bad move, improper precoloring).
struct ValidationError : Error {
    using Error::Error;
};

// Malformed instance file; message carries "path:line: ..." diagnostics.
struct ParseError : Error {
    using Error::Error;
};

// Instance exceeds the configured cap of an exact search.
struct SearchCapExceeded : Error {
    using Error::Error;
};

// Target coloring does not share the color-class multiset of the source.
struct MultisetMismatch : Error {
    using Error::Error;
};

// Swap across a non-edge while adjacent-only semantics are asserted.
struct AdjacencyViolation : Error {
    using Error::Error;
};

struct InvalidTarget : Error {
    using Error::Error;
};

struct WitnessInvalid : Error {
    using Error::Error;
};

struct BatchShapeMismatch : Error {
    using Error::Error;
};

struct NotBipartite : Error {
    using Error::Error;
};

struct PrecoloredDegreeNotOne : Error {
    using Error::Error;
};

} // namespace recolor
