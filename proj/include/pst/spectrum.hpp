#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pst/errors.hpp"

namespace pst {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Eigenvalue spectrum, strictly descending. Exact-mode spectra carry the
/// values as rationals and certification decisions become exact integer
/// arithmetic; float-mode spectra go through continued-fraction
/// rationalization of the gap ratios.
struct Spectrum {
    std::vector<double> values;
    std::vector<Rational> exact;
    bool exact_mode = false;

    std::size_t size() const { return values.size(); }

    static Spectrum from_values(std::vector<double> vals) {
        if (vals.empty()) throw argument_error("spectrum must be non-empty");
        for (double v : vals) {
            if (!std::isfinite(v)) throw argument_error("non-finite spectrum value");
        }
        std::sort(vals.begin(), vals.end(), std::greater<double>());
        for (std::size_t k = 0; k + 1 < vals.size(); ++k) {
            if (vals[k] == vals[k + 1]) {
                throw degenerate_spectrum_error(
                    "duplicate eigenvalue " + std::to_string(vals[k]) +
                    " cannot be realized by a chain with nonzero couplings");
            }
        }
        Spectrum s;
        s.values = std::move(vals);
        return s;
    }

    static Spectrum from_rationals(std::vector<Rational> vals) {
        if (vals.empty()) throw argument_error("spectrum must be non-empty");
        std::sort(vals.begin(), vals.end(), std::greater<Rational>());
        for (std::size_t k = 0; k + 1 < vals.size(); ++k) {
            if (vals[k] == vals[k + 1]) {
                throw degenerate_spectrum_error(
                    "duplicate eigenvalue in exact spectrum");
            }
        }
        Spectrum s;
        s.values.reserve(vals.size());
        for (const auto& r : vals) s.values.push_back(r.convert_to<double>());
        s.exact = std::move(vals);
        s.exact_mode = true;
        return s;
    }
};

/// Proof object for the PST spectrum condition: adjacent gaps are odd
/// multiples of a common unit delta, so exp(-i E_k tau) = (-1)^k
/// exp(-i phi) at tau = pi/delta (the minimal such time).
struct PSTCertificate {
    double tau = 0.0;
    double phi = 0.0;  // in [0, 2*pi)
    double delta = 0.0;
    std::vector<long long> odd_multipliers;  // gap k = multiplier[k] * delta
    bool exact = false;
    Rational delta_exact = 0;
    Rational phi_over_pi = 0;  // phi as an exact multiple of pi, in [0, 2)
};

struct CertificationResult {
    bool certified = false;
    PSTCertificate certificate;
    std::string reason;
    std::ptrdiff_t offending_gap = -1;  // first gap whose quotient is even
    long long offending_quotient = 0;
};

namespace detail {

inline BigInt rational_floor(const Rational& r) {
    BigInt num = numerator(r), den = denominator(r);
    BigInt q = num / den;
    if (num < 0 && q * den != num) --q;
    return q;
}

inline Rational rational_mod2(const Rational& r) {
    const Rational two(2);
    Rational m = r - two * Rational(rational_floor(r / two));
    if (m < 0) m += two;  // cannot happen after floor, kept as a guard
    return m;
}

inline Rational rational_gcd(const Rational& a, const Rational& b) {
    using boost::multiprecision::gcd;
    using boost::multiprecision::lcm;
    return Rational(gcd(numerator(a), numerator(b)),
                    lcm(denominator(a), denominator(b)));
}

// Best rational approximation p/q to x > 0 with q <= maxden and
// |x - p/q| <= tol, via continued-fraction convergents (plus the final
// semiconvergent under the denominator cap).
inline bool rationalize(double x, long long maxden, double tol, long long& p,
                        long long& q) {
    long long h0 = 1, k0 = 0;
    long long h1 = static_cast<long long>(std::floor(x)), k1 = 1;
    double frac = x - std::floor(x);
    for (int iter = 0; iter < 64; ++iter) {
        if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) <= tol) {
            p = h1;
            q = k1;
            return true;
        }
        if (frac <= 0.0) break;
        const double v = 1.0 / frac;
        const double af = std::floor(v);
        if (af > 9.0e15) break;  // x is a convergent to within double noise
        frac = v - af;
        const long long a = static_cast<long long>(af);
        const long long h2 = a * h1 + h0;
        const long long k2 = a * k1 + k0;
        if (k2 > maxden || h2 < 0) {
            const long long t = (maxden - k0) / k1;  // largest usable semiconvergent
            const long long hs = t * h1 + h0;
            const long long ks = t * k1 + k0;
            if (ks >= 1 &&
                std::abs(x - static_cast<double>(hs) / static_cast<double>(ks)) <= tol) {
                p = hs;
                q = ks;
                return true;
            }
            return false;
        }
        h0 = h1;
        k0 = k1;
        h1 = h2;
        k1 = k2;
    }
    if (k1 >= 1 && k1 <= maxden &&
        std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) <= tol) {
        p = h1;
        q = k1;
        return true;
    }
    return false;
}

inline double wrap_phase(double phi) {
    const double two_pi = 2.0 * std::numbers::pi;
    phi = std::fmod(phi, two_pi);
    if (phi < 0.0) phi += two_pi;
    if (phi >= two_pi) phi = 0.0;
    return phi;
}

}  // namespace detail

/// Decide the PST condition for a spectrum. Certified spectra get the
/// minimal tau = pi/delta with delta the gcd of the gaps and all gap
/// quotients odd; otherwise the first offending gap is reported. Exact
/// spectra are decided in integer arithmetic. Float spectra whose gap
/// ratios cannot be rationalized (denominator <= 1e6, tolerance 1e-9)
/// raise indeterminate_error rather than mis-certifying.
inline CertificationResult certify_spectrum(const Spectrum& spec) {
    const std::size_t n = spec.size();
    if (n == 0) throw argument_error("empty spectrum");
    CertificationResult res;

    if (n == 1) {
        // no gap constrains tau; report the tau = pi convention
        res.certified = true;
        res.certificate.exact = spec.exact_mode;
        res.certificate.delta = 1.0;
        res.certificate.tau = std::numbers::pi;
        if (spec.exact_mode) {
            res.certificate.delta_exact = 1;
            res.certificate.phi_over_pi = detail::rational_mod2(spec.exact[0]);
            res.certificate.phi =
                res.certificate.phi_over_pi.convert_to<double>() * std::numbers::pi;
        } else {
            res.certificate.phi =
                detail::wrap_phase(spec.values[0] * std::numbers::pi);
        }
        return res;
    }

    if (spec.exact_mode) {
        std::vector<Rational> gaps(n - 1);
        for (std::size_t k = 0; k + 1 < n; ++k) gaps[k] = spec.exact[k] - spec.exact[k + 1];
        Rational g = gaps[0];
        for (std::size_t k = 1; k < gaps.size(); ++k) g = detail::rational_gcd(g, gaps[k]);

        std::vector<BigInt> mult(n - 1);
        for (std::size_t k = 0; k < gaps.size(); ++k) {
            const Rational q = gaps[k] / g;
            mult[k] = numerator(q);  // denominator is 1 by construction of the gcd
            if (mult[k] % 2 == 0) {
                res.certified = false;
                res.offending_gap = static_cast<std::ptrdiff_t>(k);
                res.offending_quotient =
                    mult[k] <= BigInt(std::numeric_limits<long long>::max())
                        ? mult[k].convert_to<long long>()
                        : 0;
                res.reason = "gap " + std::to_string(k) + " is " + mult[k].str() +
                             " gap units; an even quotient breaks the alternating "
                             "phase condition";
                return res;
            }
        }
        res.certified = true;
        res.certificate.exact = true;
        res.certificate.delta_exact = g;
        res.certificate.delta = g.convert_to<double>();
        res.certificate.tau = std::numbers::pi / res.certificate.delta;
        res.certificate.phi_over_pi = detail::rational_mod2(spec.exact[0] / g);
        res.certificate.phi =
            res.certificate.phi_over_pi.convert_to<double>() * std::numbers::pi;
        if (res.certificate.phi >= 2.0 * std::numbers::pi) res.certificate.phi = 0.0;
        res.certificate.odd_multipliers.reserve(n - 1);
        for (const auto& m : mult) {
            if (m > BigInt(std::numeric_limits<long long>::max())) {
                throw indeterminate_error("gap quotient exceeds representable range");
            }
            res.certificate.odd_multipliers.push_back(m.convert_to<long long>());
        }
        return res;
    }

    // float mode
    std::vector<double> gaps(n - 1);
    double gmin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        gaps[k] = spec.values[k] - spec.values[k + 1];
        gmin = std::min(gmin, gaps[k]);
    }

    constexpr long long kMaxDen = 1000000;
    constexpr double kRatioTol = 1e-9;
    std::vector<long long> ps(n - 1), qs(n - 1);
    for (std::size_t k = 0; k < gaps.size(); ++k) {
        if (!detail::rationalize(gaps[k] / gmin, kMaxDen, kRatioTol, ps[k], qs[k])) {
            throw indeterminate_error(
                "gap ratio " + std::to_string(gaps[k] / gmin) + " (gap " +
                std::to_string(k) +
                ") has no rational form with denominator <= 1e6 within 1e-9");
        }
    }
    BigInt gnum = ps[0], gden = qs[0];
    for (std::size_t k = 1; k < ps.size(); ++k) {
        gnum = boost::multiprecision::gcd(gnum, BigInt(ps[k]));
        gden = boost::multiprecision::lcm(gden, BigInt(qs[k]));
    }
    std::vector<long long> mult(n - 1);
    double mdotg = 0.0, mdotm = 0.0;
    for (std::size_t k = 0; k < ps.size(); ++k) {
        const BigInt m = (BigInt(ps[k]) * (gden / qs[k])) / gnum;
        if (m > BigInt(std::numeric_limits<long long>::max() / 4)) {
            throw indeterminate_error("gap quotients exceed representable range");
        }
        mult[k] = m.convert_to<long long>();
        if (mult[k] % 2 == 0) {
            res.certified = false;
            res.offending_gap = static_cast<std::ptrdiff_t>(k);
            res.offending_quotient = mult[k];
            res.reason = "gap " + std::to_string(k) + " is " +
                         std::to_string(mult[k]) +
                         " gap units; an even quotient breaks the alternating "
                         "phase condition";
            return res;
        }
        const double md = static_cast<double>(mult[k]);
        mdotg += md * gaps[k];
        mdotm += md * md;
    }

    res.certified = true;
    res.certificate.exact = false;
    res.certificate.odd_multipliers = std::move(mult);
    res.certificate.delta = mdotg / mdotm;  // least-squares gap unit
    res.certificate.tau = std::numbers::pi / res.certificate.delta;
    res.certificate.phi = detail::wrap_phase(spec.values[0] * res.certificate.tau);

    // Confirm the phase condition actually holds at the computed tau, phi;
    // gaps that merely rationalized within tolerance are not accepted.
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const std::complex<double> lhs =
            std::polar(1.0, -spec.values[k] * res.certificate.tau);
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        const std::complex<double> rhs =
            sign * std::polar(1.0, -res.certificate.phi);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    if (worst > 1e-10) {
        throw indeterminate_error(
            "gaps rationalize but the phase condition misses by " +
            std::to_string(worst) + "; spectrum too noisy to certify");
    }
    return res;
}

}  // namespace pst
