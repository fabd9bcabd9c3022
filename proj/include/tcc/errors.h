#pragma once

#include <stdexcept>
#include <string>

namespace tcc {

/// Base of all library errors. Size mismatches on vectors use std::invalid_argument.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Builder input cannot produce a valid lattice (coloring, degenerate patch, ...).
struct InvalidLattice : Error {
    using Error::Error;
};

/// A dense or enumerative computation would exceed its documented cap.
struct CapExceeded : Error {
    using Error::Error;
};

/// X-type operator requested on a partial face.
struct RoleViolation : Error {
    using Error::Error;
};

/// Input outside the domain of a mapping (zero coefficient, branch point, cosh = 0).
struct DomainError : Error {
    using Error::Error;
};

/// The lattice has closed string-nets that are not boundaries, so the
/// overlap / partition-function identity does not apply.
struct HomologyObstruction : Error {
    using Error::Error;
};

/// A measurement outcome with zero probability was requested.
struct ImpossibleOutcome : Error {
    using Error::Error;
};

}  // namespace tcc
