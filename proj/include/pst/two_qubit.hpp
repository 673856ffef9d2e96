#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <utility>

#include "pst/errors.hpp"

namespace pst {

using Complex = std::complex<double>;

/// Pure state of two qubits, amplitudes (a,b,c,d) over |00>, |01>, |10>, |11>.
struct PureTwoQubitState {
    Complex a{1.0}, b{0.0}, c{0.0}, d{0.0};

    double norm_sq() const {
        return std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
    }

    void require_normalized(double tol = 1e-9) const {
        if (std::abs(norm_sq() - 1.0) > tol) {
            throw argument_error("two-qubit state is not normalized");
        }
    }
};

/// Concurrence C = 2|ad - bc|: 0 for product states, 1 at maximal
/// entanglement.
inline double concurrence(const PureTwoQubitState& s) {
    s.require_normalized();
    return 2.0 * std::abs(s.a * s.d - s.b * s.c);
}

/// Singular values (s0 >= s1) of a 2x2 complex matrix, closed form.
inline std::pair<double, double> singular_values_2x2(Complex m00, Complex m01,
                                                     Complex m10, Complex m11) {
    const double fro = std::norm(m00) + std::norm(m01) + std::norm(m10) + std::norm(m11);
    const double det = std::abs(m00 * m11 - m01 * m10);
    const double disc = std::sqrt(std::max(0.0, fro * fro - 4.0 * det * det));
    const double s0 = std::sqrt(0.5 * (fro + disc));
    const double s1 = std::sqrt(std::max(0.0, 0.5 * (fro - disc)));
    return {s0, s1};
}

/// Schmidt coefficients of a normalized two-qubit state: the singular
/// values of [[a,b],[c,d]]. Satisfies s0^2 + s1^2 = 1 and 2 s0 s1 = C.
inline std::pair<double, double> schmidt_coefficients(const PureTwoQubitState& s) {
    s.require_normalized();
    return singular_values_2x2(s.a, s.b, s.c, s.d);
}

/// Effective two-qubit gate in the ordered basis {|00>, |10>, |01>, |11>}
/// with |10> = particle at x, |01> = particle at the mirror site.
struct TwoQubitGate {
    std::array<Complex, 16> m{};  // row-major 4x4

    const Complex& at(std::size_t i, std::size_t j) const { return m[i * 4 + j]; }
    Complex& at(std::size_t i, std::size_t j) { return m[i * 4 + j]; }

    double unitarity_defect() const {
        double dev = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                Complex acc = 0.0;
                for (std::size_t k = 0; k < 4; ++k) {
                    acc += std::conj(at(k, i)) * at(k, j);
                }
                dev = std::max(dev, std::abs(acc - (i == j ? 1.0 : 0.0)));
            }
        }
        return dev;
    }
};

/// Apply the gate. The state stores b = |01>, c = |10> while the gate acts
/// in {00,10,01,11} order, so the middle components swap on the way in
/// and out.
inline PureTwoQubitState apply_effective_gate(const TwoQubitGate& g,
                                              const PureTwoQubitState& s) {
    s.require_normalized();
    const std::array<Complex, 4> in{s.a, s.c, s.b, s.d};
    std::array<Complex, 4> out{};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            out[i] += g.at(i, j) * in[j];
        }
    }
    return PureTwoQubitState{out[0], out[2], out[1], out[3]};
}

}  // namespace pst
