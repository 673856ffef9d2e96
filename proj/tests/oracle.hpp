#pragma once

// Brute-force reference implementations for the test suites. Everything
// here is deliberately independent of the library's algorithms: dense
// cyclic-Jacobi diagonalization instead of bisection/inverse iteration,
// and a two-excitation Hamiltonian assembled from occupation-number
// algebra instead of single-particle amplitude products.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <vector>

#include "pst/chain.hpp"
#include "pst/two_particle.hpp"

namespace oracle {

struct DenseEig {
    std::size_t n = 0;
    std::vector<double> values;   // descending
    std::vector<double> vectors;  // row-major, column k belongs to values[k]

    double vec(std::size_t i, std::size_t k) const { return vectors[i * n + k]; }
};

inline DenseEig jacobi_eigensolve(std::vector<double> a, std::size_t n) {
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    double scale = 0.0;
    for (double x : a) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) scale = 1.0;

    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
        }
        if (off < 1e-28 * scale * scale) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                a[p * n + p] -= t * apq;
                a[q * n + q] += t * apq;
                a[p * n + q] = a[q * n + p] = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i != p && i != q) {
                        const double aip = a[i * n + p];
                        const double aiq = a[i * n + q];
                        a[i * n + p] = a[p * n + i] = c * aip - s * aiq;
                        a[i * n + q] = a[q * n + i] = s * aip + c * aiq;
                    }
                    const double vip = v[i * n + p];
                    const double viq = v[i * n + q];
                    v[i * n + p] = c * vip - s * viq;
                    v[i * n + q] = s * vip + c * viq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return a[x * n + x] > a[y * n + y];
    });
    DenseEig out;
    out.n = n;
    out.values.resize(n);
    out.vectors.resize(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a[order[k] * n + order[k]];
        for (std::size_t i = 0; i < n; ++i) out.vectors[i * n + k] = v[i * n + order[k]];
    }
    return out;
}

// exp(-i H t) for a dense real symmetric H.
inline std::vector<std::complex<double>> expm_sym(const std::vector<double>& h,
                                                  std::size_t n, double t) {
    const DenseEig eig = jacobi_eigensolve(h, n);
    std::vector<std::complex<double>> u(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            std::complex<double> acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                acc += eig.vec(i, k) * eig.vec(j, k) *
                       std::polar(1.0, -eig.values[k] * t);
            }
            u[i * n + j] = acc;
        }
    }
    return u;
}

inline std::vector<double> dense_hamiltonian(const pst::ChainSpec& spec) {
    const std::size_t n = spec.size();
    std::vector<double> h(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) h[i * n + i] = spec.lambda[i];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i * n + i + 1] = h[(i + 1) * n + i] = spec.omega[i];
    }
    return h;
}

// Two-excitation Hamiltonian in the normalized pair basis, built from
// creation/annihilation rules on occupation vectors.
inline std::vector<double> two_excitation_hamiltonian(const pst::ChainSpec& spec,
                                                      pst::Statistics kind) {
    const std::size_t n = spec.size();
    const pst::PairBasis basis(n, kind);
    const std::size_t dim = basis.dim();
    std::vector<double> h(dim * dim, 0.0);

    for (std::size_t idx = 0; idx < dim; ++idx) {
        const auto [x, y] = basis.sites(idx);
        h[idx * dim + idx] += spec.lambda[x - 1] + spec.lambda[y - 1];

        std::vector<int> occ(n, 0);
        occ[x - 1] += 1;
        occ[y - 1] += 1;

        for (std::size_t bond = 0; bond + 1 < n; ++bond) {
            const std::array<std::pair<std::size_t, std::size_t>, 2> moves{
                {{bond, bond + 1}, {bond + 1, bond}}};
            for (const auto& [from, to] : moves) {
                if (occ[from] == 0) continue;
                double coeff;
                std::vector<int> next = occ;
                if (kind == pst::Statistics::boson) {
                    coeff = std::sqrt(static_cast<double>(next[from]));
                    next[from] -= 1;
                    coeff *= std::sqrt(static_cast<double>(next[to] + 1));
                    next[to] += 1;
                } else {
                    int below = 0;
                    for (std::size_t i = 0; i < from; ++i) below += next[i];
                    const double sign_f = (below % 2 == 0) ? 1.0 : -1.0;
                    next[from] -= 1;
                    if (next[to] == 1) continue;  // Pauli blocked
                    below = 0;
                    for (std::size_t i = 0; i < to; ++i) below += next[i];
                    const double sign_t = (below % 2 == 0) ? 1.0 : -1.0;
                    next[to] += 1;
                    coeff = sign_f * sign_t;
                }
                std::size_t j = 0, l = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (next[i] == 2) {
                        j = l = i + 1;
                    } else if (next[i] == 1) {
                        if (j == 0) {
                            j = i + 1;
                        } else {
                            l = i + 1;
                        }
                    }
                }
                const std::size_t out = basis.index(j, l);
                h[out * dim + idx] += spec.omega[bond] * coeff;
            }
        }
    }
    return h;
}

}  // namespace oracle
