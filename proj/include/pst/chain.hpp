#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pst/errors.hpp"

namespace pst {

/// Mirror-conjugate of site j on a chain of n sites. Sites are 1-based.
inline std::size_t mirror_index(std::size_t j, std::size_t n) {
    if (j < 1 || j > n) {
        throw argument_error("site index " + std::to_string(j) +
                             " out of range 1.." + std::to_string(n));
    }
    return n - j + 1;
}

/// Nearest-neighbour chain: on-site energies lambda[0..n-1] and couplings
/// omega[0..n-2], i.e. the real symmetric tridiagonal matrix with diagonal
/// lambda and off-diagonal omega. Couplings must be strictly positive;
/// sign patterns are gauge-equivalent and negative couplings are rejected.
struct ChainSpec {
    std::vector<double> lambda;
    std::vector<double> omega;

    ChainSpec() = default;
    ChainSpec(std::vector<double> lam, std::vector<double> om)
        : lambda(std::move(lam)), omega(std::move(om)) {
        validate();
    }

    std::size_t size() const { return lambda.size(); }

    void validate() const {
        if (lambda.empty()) {
            throw argument_error("chain must have at least one site");
        }
        if (omega.size() + 1 != lambda.size()) {
            throw argument_error("coupling count must be one less than site count");
        }
        for (double v : lambda) {
            if (!std::isfinite(v)) throw argument_error("non-finite on-site energy");
        }
        for (std::size_t i = 0; i < omega.size(); ++i) {
            if (!std::isfinite(omega[i]) || omega[i] <= 0.0) {
                throw argument_error("coupling omega_" + std::to_string(i + 1) +
                                     " must be positive");
            }
        }
    }
};

/// True when the chain is symmetric about its center:
/// lambda_j = lambda_{N-j+1} and omega_j = omega_{N-j}, within tol (absolute).
inline bool is_persymmetric(const ChainSpec& spec, double tol = 1e-12) {
    const std::size_t n = spec.size();
    for (std::size_t j = 0; j < n / 2; ++j) {
        if (std::abs(spec.lambda[j] - spec.lambda[n - 1 - j]) > tol) return false;
    }
    for (std::size_t j = 0; j + 1 < n; ++j) {
        if (std::abs(spec.omega[j] - spec.omega[n - 2 - j]) > tol) return false;
    }
    return true;
}

/// Largest deviation from persymmetry, for diagnostics.
inline double persymmetry_deviation(const ChainSpec& spec) {
    const std::size_t n = spec.size();
    double dev = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        dev = std::max(dev, std::abs(spec.lambda[j] - spec.lambda[n - 1 - j]));
    }
    for (std::size_t j = 0; j + 1 < n; ++j) {
        dev = std::max(dev, std::abs(spec.omega[j] - spec.omega[n - 2 - j]));
    }
    return dev;
}

/// Infinity norm of the tridiagonal matrix; scale for tolerances.
inline double chain_norm(const ChainSpec& spec) {
    const std::size_t n = spec.size();
    double norm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double row = std::abs(spec.lambda[j]);
        if (j > 0) row += std::abs(spec.omega[j - 1]);
        if (j + 1 < n) row += std::abs(spec.omega[j]);
        norm = std::max(norm, row);
    }
    return norm;
}

}  // namespace pst
