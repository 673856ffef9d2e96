#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "pst/errors.hpp"

namespace pst {

/// Wave packet in an infinite square well on [0, L], expanded over the
/// eigenfunctions psi_k(x) = sqrt(2/L) sin(k pi x / L), k = 1..M, with the
/// quadratic spectrum E_k = k^2 E_1 (hbar = 1, unit mass).
struct WellPacket {
    double length = 1.0;
    std::vector<std::complex<double>> modes;  // c_k, k = 1..M
    double truncation_tail = 0.0;  // weight of the target packet beyond mode M

    std::size_t mode_count() const { return modes.size(); }

    double ground_energy() const {
        const double pi = std::numbers::pi;
        return pi * pi / (2.0 * length * length);
    }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& c : modes) s += std::norm(c);
        return s;
    }

    std::complex<double> evaluate(double x, double t) const {
        const double pi = std::numbers::pi;
        const double e1 = ground_energy();
        std::complex<double> acc = 0.0;
        for (std::size_t k = 1; k <= modes.size(); ++k) {
            const double kk = static_cast<double>(k);
            const double psi = std::sqrt(2.0 / length) * std::sin(kk * pi * x / length);
            acc += modes[k - 1] * std::polar(1.0, -kk * kk * e1 * t) * psi;
        }
        return acc;
    }

    static WellPacket from_modes(double length, std::vector<std::complex<double>> coeffs) {
        if (!(length > 0.0)) throw argument_error("well length must be positive");
        if (coeffs.empty()) throw argument_error("packet needs at least one mode");
        double s = 0.0;
        for (const auto& c : coeffs) s += std::norm(c);
        if (!(s > 0.0)) throw argument_error("packet coefficients are all zero");
        const double inv = 1.0 / std::sqrt(s);
        for (auto& c : coeffs) c *= inv;
        WellPacket p;
        p.length = length;
        p.modes = std::move(coeffs);
        return p;
    }
};

/// Zero-momentum Gaussian centered at x0 with width sigma, made admissible
/// for the well by odd mirror images (it vanishes at both walls). The mode
/// coefficients then have the closed form sin(k pi x0 / L) *
/// exp(-(k pi sigma / L)^2), whose tail decays super-exponentially. The
/// truncation tail beyond mode M is recorded on the packet; the kept
/// coefficients are renormalized to a unit state.
inline WellPacket gaussian_well_packet(double length, double x0, double sigma,
                                       std::size_t modes) {
    if (!(length > 0.0) || !(sigma > 0.0) || x0 <= 0.0 || x0 >= length) {
        throw argument_error("gaussian packet needs 0 < x0 < L and sigma > 0");
    }
    if (modes == 0) throw argument_error("packet needs at least one mode");

    const double pi = std::numbers::pi;
    auto coeff = [&](std::size_t k) {
        const double kk = static_cast<double>(k);
        const double arg = kk * pi * sigma / length;
        return std::sin(kk * pi * x0 / length) * std::exp(-arg * arg);
    };

    std::vector<std::complex<double>> coeffs(modes);
    double captured = 0.0;
    for (std::size_t k = 1; k <= modes; ++k) {
        const double c = coeff(k);
        coeffs[k - 1] = c;
        captured += c * c;
    }
    double total = captured;
    for (std::size_t k = modes + 1; k <= 64 * modes + 4096; ++k) {
        const double c = coeff(k);
        const double c2 = c * c;
        total += c2;
        if (c2 < 1e-40 * total && k > modes + 16) break;
    }

    WellPacket p = WellPacket::from_modes(length, std::move(coeffs));
    p.truncation_tail = std::max(0.0, 1.0 - captured / total);
    return p;
}

struct RevivalResult {
    double max_deviation = 0.0;  // sup_x |Psi(x, t_m) + Psi(L-x, 0)|
    double mirror_time = 0.0;    // pi / E_1
    double max_abs_initial = 0.0;
};

/// Mirror-revival check: evolve the packet to t_m = pi/E_1 and compare
/// with the sign-flipped spatial mirror of the initial packet on a uniform
/// grid. (The full revival sits at 2 pi / E_1; the mirror image appears at
/// half of it.)
inline RevivalResult well_mirror_revival(const WellPacket& packet, std::size_t samples) {
    if (packet.modes.empty()) throw argument_error("empty packet");
    if (samples < 2) throw argument_error("need at least 2 sample points");
    if (packet.truncation_tail > 1e-12) {
        throw truncation_error("packet leaves " + std::to_string(packet.truncation_tail) +
                               " of its weight beyond the truncated basis");
    }
    if (std::abs(packet.norm_sq() - 1.0) > 1e-10) {
        throw argument_error("packet is not normalized");
    }

    RevivalResult res;
    res.mirror_time = std::numbers::pi / packet.ground_energy();
    const double L = packet.length;
    for (std::size_t i = 0; i < samples; ++i) {
        const double x = L * static_cast<double>(i) / static_cast<double>(samples - 1);
        const auto evolved = packet.evaluate(x, res.mirror_time);
        const auto mirrored = packet.evaluate(L - x, 0.0);
        res.max_deviation = std::max(res.max_deviation, std::abs(evolved + mirrored));
        res.max_abs_initial = std::max(res.max_abs_initial, std::abs(mirrored));
    }
    return res;
}

}  // namespace pst
