#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "pst/chain.hpp"
#include "pst/eigen.hpp"
#include "pst/errors.hpp"
#include "pst/spectrum.hpp"

namespace pst {

using Complex = std::complex<double>;

/// Single-excitation propagator u[j][x] = <j| exp(-iHt) |x>. Unitary and
/// symmetric (H is real symmetric, so U = U^T).
struct Propagator {
    double t = 0.0;
    std::size_t n = 0;
    std::vector<Complex> u;  // row-major

    const Complex& at(std::size_t i, std::size_t j) const { return u[i * n + j]; }

    /// f_{j,x}(t) with 1-based site labels.
    const Complex& amp(std::size_t j, std::size_t x) const {
        if (j < 1 || j > n || x < 1 || x > n) {
            throw argument_error("site index out of range");
        }
        return u[(j - 1) * n + (x - 1)];
    }
};

/// O(n) transfer amplitude <y| exp(-iHt) |x> from a precomputed
/// eigensystem; the workhorse for time sweeps. Sites are 1-based.
inline Complex transfer_amplitude(const EigenSystem& eig, std::size_t y,
                                  std::size_t x, double t) {
    if (y < 1 || y > eig.n || x < 1 || x > eig.n) {
        throw argument_error("site index out of range");
    }
    Complex acc = 0.0;
    for (std::size_t k = 0; k < eig.n; ++k) {
        acc += eig.vec(y - 1, k) * eig.vec(x - 1, k) *
               std::polar(1.0, -eig.values[k] * t);
    }
    return acc;
}

inline Propagator propagate(const EigenSystem& eig, double t) {
    const std::size_t n = eig.n;
    Propagator p;
    p.t = t;
    p.n = n;
    p.u.assign(n * n, Complex(0.0));
    std::vector<Complex> phases(n);
    for (std::size_t k = 0; k < n; ++k) phases[k] = std::polar(1.0, -eig.values[k] * t);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                acc += eig.vec(i, k) * eig.vec(j, k) * phases[k];
            }
            p.u[i * n + j] = acc;
            p.u[j * n + i] = acc;
        }
    }
    return p;
}

inline Propagator propagate(const ChainSpec& spec, double t) {
    return propagate(eigensolve(spec), t);
}

/// (|f_{y,x}(t)|, arg f_{y,x}(t)) for 1-based sites x (source), y (probe).
inline std::pair<double, double> transfer_fidelity(const ChainSpec& spec,
                                                   std::size_t x, std::size_t y,
                                                   double t) {
    const std::size_t n = spec.size();
    if (x < 1 || x > n || y < 1 || y > n) {
        throw argument_error("site index out of range");
    }
    const Complex f = transfer_amplitude(eigensolve(spec), y, x, t);
    return {std::abs(f), std::arg(f)};
}

/// Max-norm distance between U(tau) and exp(-i phi) R, where R is the
/// index-reversal permutation. Zero for an exact mirror inversion.
inline double mirror_check(const ChainSpec& spec, const PSTCertificate& cert) {
    const std::size_t n = spec.size();
    const Propagator p = propagate(spec, cert.tau);
    const Complex phase = std::polar(1.0, -cert.phi);
    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Complex expected = (i == n - 1 - j) ? phase : Complex(0.0);
            dev = std::max(dev, std::abs(p.u[i * n + j] - expected));
        }
    }
    return dev;
}

/// ||U^dagger U - I||_max, for unitarity checks.
inline double unitarity_defect(const Propagator& p) {
    const std::size_t n = p.n;
    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                acc += std::conj(p.u[k * n + i]) * p.u[k * n + j];
            }
            dev = std::max(dev, std::abs(acc - (i == j ? 1.0 : 0.0)));
        }
    }
    return dev;
}

}  // namespace pst
