#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>

#include "pst/chain.hpp"
#include "pst/errors.hpp"
#include "pst/propagator.hpp"
#include "pst/spectrum.hpp"
#include "pst/two_particle.hpp"
#include "pst/two_qubit.hpp"

namespace pst {

/// The effective gate on a mirror pair as a closed form: vacuum fixed,
/// single-particle amplitudes swap with phase e^{-i phi}, double occupancy
/// picks up (-1)^eta e^{-2i phi}.
inline TwoQubitGate effective_gate_analytic(const PSTCertificate& cert,
                                            ParticleStatistics stats) {
    const Complex p = std::polar(1.0, -cert.phi);
    TwoQubitGate g;
    g.at(0, 0) = 1.0;
    g.at(1, 2) = p;
    g.at(2, 1) = p;
    g.at(3, 3) = (stats.eta() == 1 ? -1.0 : 1.0) * p * p;
    return g;
}

struct GateReport {
    TwoQubitGate analytic;
    TwoQubitGate numeric;
    double max_deviation = 0.0;
};

/// Build the gate both ways: the closed form above, and numerically from
/// the sector evolutions of the chain at tau (single-particle propagator
/// block plus the two-particle amplitude on the pair itself).
inline GateReport effective_gate_report(const ChainSpec& spec,
                                        const PSTCertificate& cert, std::size_t x,
                                        ParticleStatistics stats) {
    const std::size_t n = spec.size();
    const std::size_t xb = mirror_index(x, n);
    if (x == xb) {
        throw unsupported_error("site " + std::to_string(x) +
                                " is its own mirror; the pair gate needs x != x-bar");
    }
    GateReport rep;
    rep.analytic = effective_gate_analytic(cert, stats);

    const auto eig = eigensolve(spec);
    const Propagator f = propagate(eig, cert.tau);
    rep.numeric.at(0, 0) = 1.0;
    rep.numeric.at(1, 1) = f.amp(x, x);
    rep.numeric.at(1, 2) = f.amp(x, xb);
    rep.numeric.at(2, 1) = f.amp(xb, x);
    rep.numeric.at(2, 2) = f.amp(xb, xb);

    const auto pair = TwoParticleState::basis_state(n, stats, std::min(x, xb),
                                                    std::max(x, xb));
    const auto evolved = evolve_two_particle(f, stats, pair);
    const PairBasis basis(n, stats.kind);
    rep.numeric.at(3, 3) = evolved.amp[basis.index(std::min(x, xb), std::max(x, xb))];

    for (std::size_t i = 0; i < 16; ++i) {
        rep.max_deviation =
            std::max(rep.max_deviation, std::abs(rep.analytic.m[i] - rep.numeric.m[i]));
    }
    return rep;
}

/// The validated effective gate: closed form, cross-checked against the
/// numeric sector extraction within 1e-8.
inline TwoQubitGate effective_gate(const ChainSpec& spec, const PSTCertificate& cert,
                                   std::size_t x, ParticleStatistics stats) {
    auto rep = effective_gate_report(spec, cert, x, stats);
    if (rep.max_deviation > 1e-8) {
        throw error("chain does not realize the certified gate at tau: sector "
                    "deviation " +
                    std::to_string(rep.max_deviation));
    }
    return rep.analytic;
}

/// Simultaneous exchange of two qubit states between x and its mirror on a
/// bosonic chain. `at_x` and `at_xbar` factor the joint output; the
/// factorization is gauge-fixed so the largest component of `at_x` is
/// real positive (the joint amplitudes are gauge-free).
struct TwoWayResult {
    std::array<Complex, 2> at_x{};       // state received at x (sent from x-bar)
    std::array<Complex, 2> at_xbar{};    // state received at x-bar (sent from x)
    std::array<Complex, 4> joint{};      // pair amplitudes {00,01,10,11}, qubit 1 = x
    double leakage = 0.0;                // weight escaped to other sites
    double product_residual = 0.0;       // smaller Schmidt coefficient of the joint
};

inline TwoWayResult two_way_transfer(const ChainSpec& spec, const PSTCertificate& cert,
                                     std::size_t x, std::array<Complex, 2> a,
                                     std::array<Complex, 2> b,
                                     ParticleStatistics stats = ParticleStatistics::boson()) {
    if (stats.kind != Statistics::boson) {
        throw unsupported_error(
            "two-way transfer is a bosonic protocol; fermionic pairs pick up an "
            "entangling sign instead");
    }
    const std::size_t n = spec.size();
    const std::size_t xb = mirror_index(x, n);
    if (x == xb) throw unsupported_error("center site has no distinct mirror partner");
    if (std::abs(std::norm(a[0]) + std::norm(a[1]) - 1.0) > 1e-9 ||
        std::abs(std::norm(b[0]) + std::norm(b[1]) - 1.0) > 1e-9) {
        throw argument_error("qubit amplitudes must be normalized");
    }

    const auto eig = eigensolve(spec);
    const Propagator f = propagate(eig, cert.tau);

    TwoWayResult res;
    // vacuum sector
    const Complex c00 = a[0] * b[0];
    // single-particle sector: a1 b0 at x, a0 b1 at x-bar
    Complex cx = 0.0, cxb = 0.0;
    double leak = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
        const Complex out = f.amp(j, x) * (a[1] * b[0]) + f.amp(j, xb) * (a[0] * b[1]);
        if (j == x) {
            cx = out;
        } else if (j == xb) {
            cxb = out;
        } else {
            leak += std::norm(out);
        }
    }
    // two-particle sector
    const std::size_t lo = std::min(x, xb), hi = std::max(x, xb);
    auto pair = TwoParticleState::basis_state(n, stats, lo, hi);
    pair.amp[PairBasis(n, stats.kind).index(lo, hi)] = a[1] * b[1];
    const auto evolved = evolve_two_particle(f, stats, pair);
    const PairBasis basis(n, stats.kind);
    Complex c11 = 0.0;
    for (std::size_t i = 0; i < evolved.amp.size(); ++i) {
        if (i == basis.index(lo, hi)) {
            c11 = evolved.amp[i];
        } else {
            leak += std::norm(evolved.amp[i]);
        }
    }
    res.leakage = leak;
    res.joint = {c00, cxb, cx, c11};  // {00, 01, 10, 11}, first slot = qubit at x

    const auto [s0, s1] = singular_values_2x2(c00, cxb, cx, c11);
    res.product_residual = s1;

    // rank-1 factorization: pick the better-conditioned column of the
    // amplitude matrix M = [[c00, cxb], [cx, c11]] as the x-direction
    const double n0 = std::norm(c00) + std::norm(cx);
    const double n1 = std::norm(cxb) + std::norm(c11);
    std::array<Complex, 2> p = (n0 >= n1) ? std::array<Complex, 2>{c00, cx}
                                          : std::array<Complex, 2>{cxb, c11};
    const double pn = std::sqrt(std::norm(p[0]) + std::norm(p[1]));
    if (pn > 0.0) {
        p[0] /= pn;
        p[1] /= pn;
    }
    std::array<Complex, 2> q{std::conj(p[0]) * c00 + std::conj(p[1]) * cx,
                             std::conj(p[0]) * cxb + std::conj(p[1]) * c11};
    const std::size_t lead = std::abs(p[0]) >= std::abs(p[1]) ? 0 : 1;
    const Complex ph = std::abs(p[lead]) > 0.0 ? p[lead] / std::abs(p[lead]) : Complex(1.0);
    p[0] /= ph;
    p[1] /= ph;
    q[0] *= ph;
    q[1] *= ph;
    res.at_x = p;
    res.at_xbar = q;
    return res;
}

}  // namespace pst
