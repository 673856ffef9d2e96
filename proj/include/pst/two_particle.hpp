#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pst/chain.hpp"
#include "pst/errors.hpp"
#include "pst/propagator.hpp"

namespace pst {

enum class Statistics { fermion, boson };

/// Exchange statistics of the hopping particles. eta enters the effective
/// gate corner as (-1)^eta.
struct ParticleStatistics {
    Statistics kind = Statistics::fermion;

    int eta() const { return kind == Statistics::fermion ? 1 : 0; }
    double exchange_sign() const { return kind == Statistics::fermion ? -1.0 : 1.0; }

    static ParticleStatistics fermion() { return {Statistics::fermion}; }
    static ParticleStatistics boson() { return {Statistics::boson}; }
};

/// Ordered two-particle basis over site pairs, 1-based sites in ascending
/// order: (j,l) with j < l for fermions (dimension n(n-1)/2) and j <= l
/// for bosons (dimension n(n+1)/2), lexicographic.
struct PairBasis {
    std::size_t n = 0;
    Statistics kind = Statistics::fermion;

    PairBasis(std::size_t sites, Statistics k) : n(sites), kind(k) {
        pairs_.reserve(dim());
        lut_.assign(n * n, SIZE_MAX);
        for (std::size_t j = 1; j <= n; ++j) {
            for (std::size_t l = (kind == Statistics::fermion ? j + 1 : j); l <= n; ++l) {
                lut_[(j - 1) * n + (l - 1)] = pairs_.size();
                pairs_.emplace_back(j, l);
            }
        }
    }

    std::size_t dim() const {
        return kind == Statistics::fermion ? n * (n - 1) / 2 : n * (n + 1) / 2;
    }

    std::size_t index(std::size_t j, std::size_t l) const {
        if (j < 1 || l < 1 || j > n || l > n || j > l ||
            (kind == Statistics::fermion && j == l)) {
            throw argument_error("invalid site pair (" + std::to_string(j) + "," +
                                 std::to_string(l) + ")");
        }
        return lut_[(j - 1) * n + (l - 1)];
    }

    std::pair<std::size_t, std::size_t> sites(std::size_t idx) const {
        if (idx >= pairs_.size()) throw argument_error("pair index out of range");
        return pairs_[idx];
    }

private:
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
    std::vector<std::size_t> lut_;
};

/// Normalized state in the two-excitation sector.
struct TwoParticleState {
    ParticleStatistics stats;
    std::size_t n = 0;
    std::vector<Complex> amp;  // over PairBasis order

    double norm_sq() const {
        double s = 0.0;
        for (const Complex& v : amp) s += std::norm(v);
        return s;
    }

    /// Basis state |x y>. Unordered input is sorted; swapping fermions
    /// flips the sign. Double occupancy is bosonic only.
    static TwoParticleState basis_state(std::size_t n, ParticleStatistics stats,
                                        std::size_t x, std::size_t y) {
        double sign = 1.0;
        if (x > y) {
            std::swap(x, y);
            sign = stats.exchange_sign();
        }
        if (stats.kind == Statistics::fermion && x == y) {
            throw argument_error("fermions cannot doubly occupy a site");
        }
        PairBasis basis(n, stats.kind);
        TwoParticleState s;
        s.stats = stats;
        s.n = n;
        s.amp.assign(basis.dim(), Complex(0.0));
        s.amp[basis.index(x, y)] = sign;
        return s;
    }
};

/// Evolve a two-particle state for time t using products of
/// single-particle amplitudes: the pair (x,y) feeds (j,l) with
/// f_{j,x} f_{l,y} -+ f_{j,y} f_{l,x} (minus for fermions), and bosonic
/// doubly-occupied pairs carry 1/sqrt(2) on each side.
inline TwoParticleState evolve_two_particle(const Propagator& f,
                                            const ParticleStatistics& stats,
                                            const TwoParticleState& psi) {
    if (psi.n != f.n) {
        throw argument_error("state dimension does not match the chain");
    }
    if (psi.stats.kind != stats.kind) {
        throw argument_error("state statistics do not match the requested statistics");
    }
    const PairBasis basis(psi.n, stats.kind);
    if (psi.amp.size() != basis.dim()) {
        throw argument_error("state amplitude count does not match the pair basis");
    }
    const double ex = stats.exchange_sign();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    TwoParticleState out;
    out.stats = stats;
    out.n = psi.n;
    out.amp.assign(basis.dim(), Complex(0.0));

    for (std::size_t in = 0; in < basis.dim(); ++in) {
        if (psi.amp[in] == Complex(0.0)) continue;
        const auto [x, y] = basis.sites(in);
        const double win = (x == y) ? inv_sqrt2 : 1.0;
        for (std::size_t o = 0; o < basis.dim(); ++o) {
            const auto [j, l] = basis.sites(o);
            const double wout = (j == l) ? inv_sqrt2 : 1.0;
            const Complex m =
                f.amp(j, x) * f.amp(l, y) + ex * f.amp(j, y) * f.amp(l, x);
            out.amp[o] += win * wout * m * psi.amp[in];
        }
    }
    return out;
}

inline TwoParticleState evolve_two_particle(const ChainSpec& spec,
                                            const ParticleStatistics& stats,
                                            const TwoParticleState& psi, double t) {
    return evolve_two_particle(propagate(spec, t), stats, psi);
}

}  // namespace pst
