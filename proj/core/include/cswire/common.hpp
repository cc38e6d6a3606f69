#pragma once

#include <stdexcept>
#include <string>

namespace cswire {

// Thrown when an input file or textual value cannot be read at all.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a value parses but violates an invariant (non-CPTP Kraus set,
// non-unit boundary vector, out-of-range site index, ...). The message names
// the violated condition.
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Comparison tolerances. `structural` gates yes/no predicates (unitarity,
// trace preservation, condition (2) equality); `arithmetic` gates identities
// that should hold to roundoff (decompose/recompose round trips).
struct Tolerances {
    double structural = 1e-9;
    double arithmetic = 1e-12;
};

inline const Tolerances& default_tol() {
    static const Tolerances t{};
    return t;
}

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace cswire
