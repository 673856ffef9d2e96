#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "pst/chain.hpp"
#include "pst/eigen.hpp"
#include "pst/errors.hpp"
#include "pst/spectrum.hpp"

namespace pst {

/// Squared first components (a_1^k)^2 of the eigenvectors of the unique
/// persymmetric chain with a given spectrum.
struct SpectralWeights {
    std::vector<double> w;
};

/// w_k proportional to (-1)^k / P'(E_k) with P(E) = prod_j (E - E_j),
/// normalized to sum 1. Interlacing makes every weight positive for a
/// strictly descending spectrum. Products are accumulated in log space.
inline SpectralWeights weights_from_spectrum(const Spectrum& spec) {
    const std::size_t n = spec.size();
    SpectralWeights out;
    out.w.assign(n, 1.0);
    if (n == 1) return out;

    double scale = 1.0;
    for (double v : spec.values) scale = std::max(scale, std::abs(v));

    std::vector<double> logw(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == k) continue;
            const double d = std::abs(spec.values[k] - spec.values[j]);
            if (d < 1e-13 * scale) {
                throw conditioning_error(
                    "eigenvalues " + std::to_string(std::min(j, k)) + " and " +
                    std::to_string(std::max(j, k)) +
                    " are too close; derivative of the characteristic "
                    "polynomial underflows");
            }
            acc += std::log(d);
        }
        logw[k] = -acc;
    }
    const double lmax = *std::max_element(logw.begin(), logw.end());
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        out.w[k] = std::exp(logw[k] - lmax);
        sum += out.w[k];
    }
    for (std::size_t k = 0; k < n; ++k) {
        out.w[k] /= sum;
        if (!(out.w[k] > 0.0) || !std::isfinite(out.w[k])) {
            throw conditioning_error("spectral weight " + std::to_string(k) +
                                     " underflowed to zero");
        }
    }
    return out;
}

/// Solve the inverse eigenvalue problem for the measure {(E_k, w_k)}:
/// discrete Stieltjes / Lanczos recursion with full reorthogonalization.
/// The three-term recurrence coefficients are the chain entries; the
/// result is persymmetry-averaged to kill roundoff drift (the exact
/// solution is persymmetric when the weights come from
/// weights_from_spectrum). Deterministic: fixed evaluation order.
inline ChainSpec reconstruct_chain(const Spectrum& spec, const SpectralWeights& weights) {
    const std::size_t n = spec.size();
    if (weights.w.size() != n) {
        throw argument_error("weight count does not match spectrum size");
    }
    double wsum = 0.0;
    for (double w : weights.w) {
        if (!(w > 0.0)) throw argument_error("spectral weights must be positive");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-10) {
        throw argument_error("spectral weights must be normalized");
    }

    const double spread = std::abs(spec.values.front() - spec.values.back());
    const double breakdown_tol = 1e3 * std::numeric_limits<double>::epsilon() * spread;

    std::vector<double> lambda(n, 0.0), omega(n > 0 ? n - 1 : 0, 0.0);
    std::vector<std::vector<double>> q;
    q.reserve(n);
    {
        std::vector<double> q0(n);
        for (std::size_t k = 0; k < n; ++k) q0[k] = std::sqrt(weights.w[k]);
        double nrm = 0.0;
        for (double v : q0) nrm += v * v;
        nrm = std::sqrt(nrm);
        for (double& v : q0) v /= nrm;
        q.push_back(std::move(q0));
    }

    std::vector<double> z(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto& qj = q[j];
        for (std::size_t k = 0; k < n; ++k) z[k] = spec.values[k] * qj[k];
        double alpha = 0.0;
        for (std::size_t k = 0; k < n; ++k) alpha += qj[k] * z[k];
        lambda[j] = alpha;
        if (j + 1 == n) break;

        for (std::size_t k = 0; k < n; ++k) z[k] -= alpha * qj[k];
        if (j > 0) {
            for (std::size_t k = 0; k < n; ++k) z[k] -= omega[j - 1] * q[j - 1][k];
        }
        for (int pass = 0; pass < 2; ++pass) {  // full reorthogonalization, twice
            for (std::size_t i = 0; i <= j; ++i) {
                double dot = 0.0;
                for (std::size_t k = 0; k < n; ++k) dot += q[i][k] * z[k];
                for (std::size_t k = 0; k < n; ++k) z[k] -= dot * q[i][k];
            }
        }
        double beta = 0.0;
        for (std::size_t k = 0; k < n; ++k) beta += z[k] * z[k];
        beta = std::sqrt(beta);
        if (!std::isfinite(beta) || beta <= breakdown_tol) {
            throw reconstruction_error(
                "Stieltjes recurrence broke down at step " + std::to_string(j + 1) +
                " (off-diagonal " + std::to_string(beta) + ")");
        }
        omega[j] = beta;
        std::vector<double> qn(n);
        for (std::size_t k = 0; k < n; ++k) qn[k] = z[k] / beta;
        q.push_back(std::move(qn));
    }

    // persymmetry enforcement
    for (std::size_t j = 0; j < n / 2; ++j) {
        const double avg = 0.5 * (lambda[j] + lambda[n - 1 - j]);
        lambda[j] = lambda[n - 1 - j] = avg;
    }
    for (std::size_t j = 0; j + 1 < n; ++j) {
        if (j < n - 2 - j) {
            const double avg = 0.5 * (omega[j] + omega[n - 2 - j]);
            omega[j] = omega[n - 2 - j] = avg;
        }
    }
    return ChainSpec(std::move(lambda), std::move(omega));
}

/// Certified chain design: certify the spectrum, build the persymmetric
/// weights, reconstruct, and verify the round trip through the forward
/// eigensolver (max eigenvalue error over max(1, max|E|)).
struct DesignResult {
    ChainSpec chain;
    PSTCertificate certificate;
    double roundtrip_error = 0.0;
};

inline DesignResult design(const Spectrum& spec) {
    auto cert = certify_spectrum(spec);
    if (!cert.certified) {
        throw rejection_error("spectrum not certifiable for perfect transfer: " +
                              cert.reason);
    }
    const auto weights = weights_from_spectrum(spec);
    auto chain = reconstruct_chain(spec, weights);

    auto eig = eigensolve(chain);
    double scale = 1.0;
    for (double v : spec.values) scale = std::max(scale, std::abs(v));
    double err = 0.0;
    for (std::size_t k = 0; k < spec.size(); ++k) {
        err = std::max(err, std::abs(eig.values[k] - spec.values[k]));
    }
    err /= scale;
    if (err > 1e-8) {
        throw reconstruction_error("round-trip eigenvalue error " +
                                   std::to_string(err) + " exceeds 1e-8");
    }
    return {std::move(chain), std::move(cert.certificate), err};
}

/// Entanglement-generation designs (protocol 1). The half-chain design is
/// embedded into a full chain whose symmetric-pair sector reproduces it.
struct ProtocolDesign {
    ChainSpec chain;                 // full chain
    PSTCertificate half_certificate;  // PST certificate of the half chain
    double roundtrip_error = 0.0;
};

/// Odd full length N = 2n-1 from a certified half spectrum of size n.
/// The coupling adjacent to the center is scaled down by sqrt(2) so the
/// pair-state sector carries exactly the designed half chain.
inline ProtocolDesign design_protocol1_odd(const Spectrum& half_spec) {
    auto half = design(half_spec);
    const std::size_t n = half.chain.size();
    if (n < 2) {
        throw argument_error("protocol 1 needs a half chain of at least 2 sites");
    }
    const std::size_t full = 2 * n - 1;
    std::vector<double> lambda(full), omega(full - 1);
    for (std::size_t j = 0; j < full; ++j) {
        lambda[j] = half.chain.lambda[j < n ? j : full - 1 - j];
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t j = 0; j + 1 < full; ++j) {
        const std::size_t src = j < n - 1 ? j : full - 2 - j;
        omega[j] = half.chain.omega[src] * (src == n - 2 ? inv_sqrt2 : 1.0);
    }
    return {ChainSpec(std::move(lambda), std::move(omega)),
            std::move(half.certificate), half.roundtrip_error};
}

/// Even full length N = 2n. The center coupling is a free positive
/// parameter (the paper's construction does not pin it); the center
/// on-site terms absorb it so the pair sector still matches the design.
inline ProtocolDesign design_protocol1_even(const Spectrum& half_spec,
                                            double center_coupling = 1.0) {
    if (!(center_coupling > 0.0) || !std::isfinite(center_coupling)) {
        throw argument_error(
            "center coupling must be positive; pick a smaller positive value");
    }
    auto half = design(half_spec);
    const std::size_t n = half.chain.size();
    const std::size_t full = 2 * n;
    std::vector<double> lambda(full), omega(full - 1);
    for (std::size_t j = 0; j < full; ++j) {
        const std::size_t src = j < n ? j : full - 1 - j;
        lambda[j] = half.chain.lambda[src] - (src == n - 1 ? center_coupling : 0.0);
    }
    for (std::size_t j = 0; j + 1 < full; ++j) {
        if (j == n - 1) {
            omega[j] = center_coupling;
        } else {
            const std::size_t src = j < n - 1 ? j : full - 2 - j;
            omega[j] = half.chain.omega[src];
        }
    }
    return {ChainSpec(std::move(lambda), std::move(omega)),
            std::move(half.certificate), half.roundtrip_error};
}

}  // namespace pst
