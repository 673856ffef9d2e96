#pragma once

#include <stdexcept>
#include <string>

namespace pst {

// Base class for everything thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad call arguments: out-of-range sites, mismatched dimensions, invalid
// chain data. The CLI maps these to exit code 64.
struct argument_error : error {
    using error::error;
};

// Spectrum contains duplicate eigenvalues; unrealizable by a Jacobi matrix.
struct degenerate_spectrum_error : error {
    using error::error;
};

// Floating-point gaps could not be rationalized within tolerance, so the
// PST condition can neither be confirmed nor refuted.
struct indeterminate_error : error {
    using error::error;
};

// A spectrum was rejected by certification (some gap quotient is even).
// Thrown by design(); certify_spectrum() itself reports rejection as data.
struct rejection_error : error {
    using error::error;
};

// Near-degenerate eigenvalues made the spectral weights underflow.
struct conditioning_error : error {
    using error::error;
};

// The Lanczos recurrence lost positivity of an off-diagonal coefficient.
struct reconstruction_error : error {
    using error::error;
};

// Eigenvalue spacing collapsed below the resolvable limit; the input is
// not a clean Jacobi matrix.
struct degeneracy_error : error {
    using error::error;
};

// Overflow in the cumulative coupling products of the explicit
// eigenvector formula. Reported, never silently rescaled.
struct numeric_range_error : error {
    using error::error;
};

// Square-well packet carries too much weight outside the truncated basis.
struct truncation_error : error {
    using error::error;
};

// Operation not defined for the requested input (center site of an odd
// chain, fermionic two-way transfer).
struct unsupported_error : error {
    using error::error;
};

}  // namespace pst
