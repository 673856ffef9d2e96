#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "pst/chain.hpp"
#include "pst/errors.hpp"
#include "pst/sturm.hpp"

namespace pst {

enum class Parity { even, odd };

/// Full eigensystem of a chain Hamiltonian. Eigenvalues are strictly
/// descending (E_0 > E_1 > ... > E_{N-1}); column k of `vectors` is the
/// eigenvector of values[k], gauged so its first component is positive.
/// Parity labels come from the sign of a_1^k * a_N^k and are meaningful
/// for persymmetric chains.
struct EigenSystem {
    std::vector<double> values;
    std::vector<double> vectors;  // row-major n*n, vec(j,k) = a_j^k
    std::vector<Parity> parities;
    int nu = 0;  // parity offset from sign of omega_1...omega_{N-1}; 0 here
    std::size_t n = 0;

    double vec(std::size_t j, std::size_t k) const { return vectors[j * n + k]; }
};

namespace detail {

// y = H x for the tridiagonal chain matrix.
inline void apply_chain(const ChainSpec& spec, const std::vector<double>& x,
                        std::vector<double>& y) {
    const std::size_t n = spec.size();
    for (std::size_t j = 0; j < n; ++j) {
        double v = spec.lambda[j] * x[j];
        if (j > 0) v += spec.omega[j - 1] * x[j - 1];
        if (j + 1 < n) v += spec.omega[j] * x[j + 1];
        y[j] = v;
    }
}

inline double norm2(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

// Solve (H - mu*I) x = r by Gaussian elimination with partial pivoting.
// Fill-in is confined to a second superdiagonal. Zero pivots are replaced
// by a tiny value, which is exactly what inverse iteration wants.
inline std::vector<double> solve_shifted(const ChainSpec& spec, double mu,
                                         std::vector<double> r) {
    const std::size_t n = spec.size();
    const double scale = std::max(chain_norm(spec) + std::abs(mu), 1.0);
    const double pivfloor = scale * std::numeric_limits<double>::epsilon() *
                            std::numeric_limits<double>::epsilon();

    std::vector<double> d(n), u1(n, 0.0), u2(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) d[j] = spec.lambda[j] - mu;
    for (std::size_t j = 0; j + 1 < n; ++j) u1[j] = spec.omega[j];

    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double sub = spec.omega[i];
        if (std::abs(d[i]) >= std::abs(sub)) {
            double piv = d[i];
            if (std::abs(piv) < pivfloor) piv = piv < 0.0 ? -pivfloor : pivfloor;
            const double m = sub / piv;
            d[i] = piv;
            d[i + 1] -= m * u1[i];
            u1[i + 1] -= m * u2[i];
            r[i + 1] -= m * r[i];
        } else {
            // swap rows i and i+1, then eliminate
            const double di = d[i], ui = u1[i], vi = u2[i];
            d[i] = sub;
            u1[i] = d[i + 1];
            u2[i] = u1[i + 1];
            std::swap(r[i], r[i + 1]);
            const double m = di / sub;
            d[i + 1] = ui - m * u1[i];
            u1[i + 1] = vi - m * u2[i];
            r[i + 1] -= m * r[i];
        }
    }

    std::vector<double> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double v = r[ii];
        if (ii + 1 < n) v -= u1[ii] * x[ii + 1];
        if (ii + 2 < n) v -= u2[ii] * x[ii + 2];
        double piv = d[ii];
        if (std::abs(piv) < pivfloor) piv = piv < 0.0 ? -pivfloor : pivfloor;
        x[ii] = v / piv;
    }
    return x;
}

// k-th largest eigenvalue by bisection on the Sturm count.
inline double bisect_eigenvalue(const ChainSpec& spec, std::size_t k, double lo,
                                double hi) {
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (sturm_count_above(spec, mid) > static_cast<int>(k)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

/// Eigendecomposition by bisection on Sturm counts plus inverse iteration.
/// Self-contained; accuracy targets: residual <= 1e-9*(1+max|E|) and
/// column orthonormality <= 1e-10. Throws degeneracy_error if two computed
/// eigenvalues collapse within 1e-12*max|E| (impossible for clean input).
inline EigenSystem eigensolve(const ChainSpec& spec) {
    spec.validate();
    const std::size_t n = spec.size();

    EigenSystem eig;
    eig.n = n;
    eig.nu = 0;
    eig.values.resize(n);
    eig.vectors.assign(n * n, 0.0);
    eig.parities.assign(n, Parity::even);

    if (n == 1) {
        eig.values[0] = spec.lambda[0];
        eig.vectors[0] = 1.0;
        return eig;
    }

    // Gershgorin interval
    double glo = std::numeric_limits<double>::infinity();
    double ghi = -glo;
    for (std::size_t j = 0; j < n; ++j) {
        double r = 0.0;
        if (j > 0) r += spec.omega[j - 1];
        if (j + 1 < n) r += spec.omega[j];
        glo = std::min(glo, spec.lambda[j] - r);
        ghi = std::max(ghi, spec.lambda[j] + r);
    }
    const double pad = 1e-3 * (ghi - glo) + 1e-12;
    glo -= pad;
    ghi += pad;

    for (std::size_t k = 0; k < n; ++k) {
        eig.values[k] = detail::bisect_eigenvalue(spec, k, glo, ghi);
    }

    const double emax = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (eig.values[k] - eig.values[k + 1] <
            1e-12 * std::max(emax, std::numeric_limits<double>::min())) {
            throw degeneracy_error("eigenvalues " + std::to_string(k) + " and " +
                                   std::to_string(k + 1) +
                                   " are numerically degenerate");
        }
    }

    // Inverse iteration, orthogonalizing within clusters of close eigenvalues.
    const double scale = std::max(chain_norm(spec), 1.0);
    const double cluster_tol = 1e-7 * scale;
    const double resid_target = 64.0 * static_cast<double>(n) *
                                std::numeric_limits<double>::epsilon() * scale;
    std::vector<std::vector<double>> cols(n);
    std::size_t cluster_start = 0;
    std::vector<double> hx(n);

    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0 && eig.values[k - 1] - eig.values[k] > cluster_tol) cluster_start = k;

        std::mt19937 rng(0x9e3779b9u + static_cast<unsigned>(k));
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        std::vector<double> x(n);
        for (double& v : x) v = dist(rng);

        std::vector<double> best;
        double best_resid = std::numeric_limits<double>::infinity();
        for (int iter = 0; iter < 5; ++iter) {
            x = detail::solve_shifted(spec, eig.values[k], x);
            for (std::size_t c = cluster_start; c < k; ++c) {
                double dot = 0.0;
                for (std::size_t j = 0; j < n; ++j) dot += cols[c][j] * x[j];
                for (std::size_t j = 0; j < n; ++j) x[j] -= dot * cols[c][j];
            }
            const double nx = detail::norm2(x);
            if (nx == 0.0 || !std::isfinite(nx)) {
                for (double& v : x) v = dist(rng);
                continue;
            }
            for (double& v : x) v /= nx;
            detail::apply_chain(spec, x, hx);
            double resid = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                resid = std::max(resid, std::abs(hx[j] - eig.values[k] * x[j]));
            }
            if (resid < best_resid) {
                best_resid = resid;
                best = x;
            }
            if (resid <= resid_target) break;
        }
        cols[k] = std::move(best);
    }

    // Final re-orthonormalization pass; corrections are tiny for separated
    // spectra but pin down unitarity of downstream propagators.
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t c = 0; c < k; ++c) {
            double dot = 0.0;
            for (std::size_t j = 0; j < n; ++j) dot += cols[c][j] * cols[k][j];
            for (std::size_t j = 0; j < n; ++j) cols[k][j] -= dot * cols[c][j];
        }
        const double nx = detail::norm2(cols[k]);
        for (double& v : cols[k]) v /= nx;
    }

    for (std::size_t k = 0; k < n; ++k) {
        // gauge: first component positive
        double lead = cols[k][0];
        if (lead == 0.0) {
            for (std::size_t j = 0; j < n && lead == 0.0; ++j) lead = cols[k][j];
        }
        if (lead < 0.0) {
            for (double& v : cols[k]) v = -v;
        }
        for (std::size_t j = 0; j < n; ++j) eig.vectors[j * n + k] = cols[k][j];
        eig.parities[k] =
            cols[k][0] * cols[k][n - 1] >= 0.0 ? Parity::even : Parity::odd;
    }
    return eig;
}

/// Eigenvector coefficients from the Sturm minors,
/// a_j^k = P_{j-1}(E_k) / (omega_1 ... omega_{j-1}) * a_1^k, normalized.
/// Numerically unstable for large N (cumulative coupling products); meant
/// as a small-N cross-check of the main solver, not a production path.
inline std::vector<double> eigvec_from_sturm(const ChainSpec& spec,
                                             const EigenSystem& eig,
                                             std::size_t k) {
    const std::size_t n = spec.size();
    if (k >= n) {
        throw argument_error("eigenvector index " + std::to_string(k) +
                             " out of range");
    }

    // The minor recurrence amplifies any residual error in E_k along the
    // chain, so polish the eigenvalue to a root of P_N in extended
    // precision before evaluating the coefficients.
    long double ek = eig.values[k];
    for (int step = 0; step < 4; ++step) {
        long double p_prev = 1.0L, p_cur = ek - spec.lambda[0];
        long double d_prev = 0.0L, d_cur = 1.0L;
        for (std::size_t j = 2; j <= n; ++j) {
            const long double w = spec.omega[j - 2];
            const long double p = (ek - spec.lambda[j - 1]) * p_cur - w * w * p_prev;
            const long double d =
                p_cur + (ek - spec.lambda[j - 1]) * d_cur - w * w * d_prev;
            p_prev = p_cur;
            p_cur = p;
            d_prev = d_cur;
            d_cur = d;
        }
        if (d_cur == 0.0L || !std::isfinite(static_cast<double>(p_cur / d_cur))) break;
        const long double delta = p_cur / d_cur;
        ek -= delta;
        if (std::abs(static_cast<double>(delta)) <=
            1e-18 * std::max(1.0, std::abs(eig.values[k]))) {
            break;
        }
    }

    std::vector<long double> u(n);
    long double p_prev = 1.0L;                 // P_0
    long double p_cur = ek - spec.lambda[0];   // P_1
    long double prod = 1.0L;                   // omega_1 ... omega_{j-1}
    u[0] = 1.0L;
    for (std::size_t j = 1; j < n; ++j) {
        prod *= spec.omega[j - 1];
        if (!std::isfinite(static_cast<double>(prod)) || prod == 0.0L) {
            throw numeric_range_error("cumulative coupling product left the "
                                      "representable range at site " +
                                      std::to_string(j + 1));
        }
        u[j] = p_cur / prod;
        if (!std::isfinite(static_cast<double>(u[j]))) {
            throw numeric_range_error("Sturm eigenvector coefficient overflow at site " +
                                      std::to_string(j + 1));
        }
        if (j + 1 < n) {
            const long double w = spec.omega[j - 1];
            const long double p_next = (ek - spec.lambda[j]) * p_cur - w * w * p_prev;
            p_prev = p_cur;
            p_cur = p_next;
        }
    }
    long double s = 0.0L;
    for (long double v : u) s += v * v;
    const long double nx = std::sqrt(s);
    if (!std::isfinite(static_cast<double>(nx)) || nx == 0.0L) {
        throw numeric_range_error("Sturm eigenvector could not be normalized");
    }
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = static_cast<double>(u[j] / nx);
    return out;
}

/// Check the mirror relation a_{N-j+1}^k = (-1)^{k+nu} a_j^k for every
/// eigenvector, within tol. Expects an eigensystem of a persymmetric chain.
inline bool parity_check(const EigenSystem& eig, double tol) {
    const std::size_t n = eig.n;
    for (std::size_t k = 0; k < n; ++k) {
        const double s = ((k + static_cast<std::size_t>(eig.nu)) % 2 == 0) ? 1.0 : -1.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(eig.vec(n - 1 - j, k) - s * eig.vec(j, k)) > tol) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace pst
