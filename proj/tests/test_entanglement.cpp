#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "oracle.hpp"
#include "pst/design.hpp"
#include "pst/protocols.hpp"
#include "pst/two_qubit.hpp"
#include "test_util.hpp"

using Catch::Approx;
using namespace pst;

namespace {

PureTwoQubitState random_state(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PureTwoQubitState s{Complex(u(rng), u(rng)), Complex(u(rng), u(rng)),
                        Complex(u(rng), u(rng)), Complex(u(rng), u(rng))};
    const double n = std::sqrt(s.norm_sq());
    s.a /= n;
    s.b /= n;
    s.c /= n;
    s.d /= n;
    return s;
}

PureTwoQubitState random_product_state(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Complex p0(u(rng), u(rng)), p1(u(rng), u(rng));
    Complex q0(u(rng), u(rng)), q1(u(rng), u(rng));
    const double np = std::sqrt(std::norm(p0) + std::norm(p1));
    const double nq = std::sqrt(std::norm(q0) + std::norm(q1));
    p0 /= np;
    p1 /= np;
    q0 /= nq;
    q1 /= nq;
    return PureTwoQubitState{p0 * q0, p0 * q1, p1 * q0, p1 * q1};
}

const PureTwoQubitState kPlusPlus{0.5, 0.5, 0.5, 0.5};

}  // namespace

TEST_CASE("concurrence of reference states") {
    CHECK(concurrence(PureTwoQubitState{1.0, 0.0, 0.0, 0.0}) == 0.0);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(concurrence(PureTwoQubitState{0.0, r, r, 0.0}) == Approx(1.0));
    CHECK(concurrence(PureTwoQubitState{0.6, 0.0, 0.0, 0.8}) == Approx(0.96));
    CHECK_THROWS_AS(concurrence(PureTwoQubitState{1.0, 1.0, 0.0, 0.0}),
                    argument_error);
}

TEST_CASE("schmidt coefficients") {
    auto [s0, s1] = schmidt_coefficients(PureTwoQubitState{1.0, 0.0, 0.0, 0.0});
    CHECK(s0 == Approx(1.0));
    CHECK(s1 == Approx(0.0).margin(1e-12));

    auto [t0, t1] = schmidt_coefficients(PureTwoQubitState{0.6, 0.0, 0.0, 0.8});
    CHECK(t0 == Approx(0.8));
    CHECK(t1 == Approx(0.6));
}

TEST_CASE("2 s0 s1 equals the concurrence on random states") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 1000; ++trial) {
        auto s = random_state(rng);
        auto [s0, s1] = schmidt_coefficients(s);
        CHECK(2.0 * s0 * s1 == Approx(concurrence(s)).margin(1e-12));
        CHECK(s0 * s0 + s1 * s1 == Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("concurrence is invariant under local phases") {
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    for (int trial = 0; trial < 200; ++trial) {
        auto s = random_state(rng);
        const double c0 = concurrence(s);
        // row phases (first qubit) and column phases (second qubit)
        const Complex r0 = std::polar(1.0, ang(rng)), r1 = std::polar(1.0, ang(rng));
        const Complex q0 = std::polar(1.0, ang(rng)), q1 = std::polar(1.0, ang(rng));
        PureTwoQubitState t{s.a * r0 * q0, s.b * r0 * q1, s.c * r1 * q0,
                            s.d * r1 * q1};
        CHECK(concurrence(t) == Approx(c0).margin(1e-12));
    }
}

TEST_CASE("fermionic gate entangles |+>|+> to the paper's Schmidt form") {
    auto spec = testutil::family_chain(1);
    auto cert = certify_spectrum(Spectrum::from_values({4.0, 3.0, 2.0, 1.0}));
    REQUIRE(cert.certified);
    auto g = effective_gate(spec, cert.certificate, 1, ParticleStatistics::fermion());
    auto out = apply_effective_gate(g, kPlusPlus);
    CHECK(concurrence(out) == Approx(1.0).margin(1e-9));
    auto [s0, s1] = schmidt_coefficients(out);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(s0 == Approx(r).margin(1e-9));
    CHECK(s1 == Approx(r).margin(1e-9));

    // vacuum fixed point
    auto vac = apply_effective_gate(g, PureTwoQubitState{1.0, 0.0, 0.0, 0.0});
    CHECK(concurrence(vac) == Approx(0.0).margin(1e-12));
    CHECK(std::abs(vac.a - Complex(1.0)) < 1e-12);
}

TEST_CASE("bosonic gate never entangles product states") {
    auto spec = testutil::family_chain(1);
    auto cert = certify_spectrum(Spectrum::from_values({4.0, 3.0, 2.0, 1.0}));
    auto g = effective_gate(spec, cert.certificate, 1, ParticleStatistics::boson());
    std::mt19937 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        auto s = random_product_state(rng);
        CHECK(concurrence(apply_effective_gate(g, s)) < 1e-10);
    }
}

TEST_CASE("bosonic gate preserves concurrence of arbitrary pair states") {
    auto res = design(Spectrum::from_values({5.0, 2.0, 1.0, 0.0, -3.0}));
    auto g = effective_gate(res.chain, res.certificate, 2, ParticleStatistics::boson());
    std::mt19937 rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        auto s = random_state(rng);
        CHECK(concurrence(apply_effective_gate(g, s)) ==
              Approx(concurrence(s)).margin(1e-10));
    }
}

TEST_CASE("fermionic gate on ad=bc inputs gives concurrence 4|ad|") {
    auto res = design(Spectrum::from_values({5.0, 2.0, 1.0, 0.0, -3.0}));
    auto g = effective_gate(res.chain, res.certificate, 1, ParticleStatistics::fermion());
    std::mt19937 rng(15);
    for (int trial = 0; trial < 100; ++trial) {
        auto s = random_product_state(rng);  // product states satisfy ad = bc
        const double expected = 4.0 * std::abs(s.a * s.d);
        CHECK(concurrence(apply_effective_gate(g, s)) ==
              Approx(expected).margin(1e-10));
    }
    // the paper's explicit case: all amplitudes 1/2
    auto out = apply_effective_gate(g, kPlusPlus);
    CHECK(concurrence(out) == Approx(1.0).margin(1e-10));
}

TEST_CASE("half-chain matrix of the uniform 3-chain") {
    auto half = protocol1_halfchain_matrix(ChainSpec({0.0, 0.0, 0.0}, {1.0, 1.0}));
    REQUIRE(half.size() == 2);
    CHECK(half.lambda[0] == 0.0);
    CHECK(half.lambda[1] == 0.0);
    CHECK(half.omega[0] == Approx(std::sqrt(2.0)));
}

TEST_CASE("half-chain matrix of a 5-site chain boosts the center coupling") {
    ChainSpec spec({1.0, 2.0, 3.0, 2.0, 1.0}, {0.5, 0.75, 0.75, 0.5});
    auto half = protocol1_halfchain_matrix(spec);
    REQUIRE(half.size() == 3);
    CHECK(half.lambda == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(half.omega[0] == 0.5);
    CHECK(half.omega[1] == Approx(0.75 * std::sqrt(2.0)));
}

TEST_CASE("half-chain reduction errors") {
    CHECK_THROWS_AS(protocol1_halfchain_matrix(ChainSpec({0.0, 1.0}, {1.0})),
                    argument_error);  // not persymmetric
    CHECK_THROWS_AS(protocol1_halfchain_matrix(ChainSpec({0.0, 0.0}, {1.0})),
                    argument_error);  // even length
    CHECK_THROWS_AS(protocol1_halfchain_matrix_even(ChainSpec({0.0, 0.0, 0.0}, {1.0, 1.0})),
                    argument_error);  // odd length
}

TEST_CASE("pair-sector evolution matches the half-chain matrix") {
    std::mt19937 rng(16);
    std::uniform_real_distribution<double> time(-3.0, 3.0);
    std::uniform_int_distribution<int> half_sites(1, 4);
    for (int trial = 0; trial < 40; ++trial) {
        const bool odd = trial % 2 == 0;
        const std::size_t n_full =
            odd ? 2 * static_cast<std::size_t>(half_sites(rng)) + 1
                : 2 * static_cast<std::size_t>(half_sites(rng));
        auto spec = testutil::random_persymmetric_chain(rng, n_full, -2.0, 2.0, 0.5, 2.0);
        const auto half =
            odd ? protocol1_halfchain_matrix(spec) : protocol1_halfchain_matrix_even(spec);
        const double t = time(rng);

        // full-chain evolution via the dense oracle, restricted to pairs
        const auto u_full = oracle::expm_sym(oracle::dense_hamiltonian(spec), n_full, t);
        const auto p_half = propagate(half, t);

        for (std::size_t j = 0; j < half.size(); ++j) {
            HalfChainState e;
            e.full_n = n_full;
            e.amp.assign(half.size(), Complex(0.0));
            e.amp[j] = 1.0;
            const auto embedded = halfchain_embed(e);
            std::vector<Complex> evolved(n_full, Complex(0.0));
            for (std::size_t r = 0; r < n_full; ++r) {
                for (std::size_t c = 0; c < n_full; ++c) {
                    evolved[r] += u_full[r * n_full + c] * embedded[c];
                }
            }
            const auto reduced = halfchain_project(evolved, n_full);
            for (std::size_t i = 0; i < half.size(); ++i) {
                CAPTURE(n_full, odd, t, i, j);
                CHECK(std::abs(reduced.amp[i] - p_half.at(i, j)) < 1e-10);
            }
        }
    }
}

TEST_CASE("protocol 1 on the designed 3-site chain") {
    auto des = design_protocol1_odd(Spectrum::from_values({1.0, -1.0}));
    const double tau = des.half_certificate.tau;

    auto at0 = run_protocol1(des.chain, 0.0);
    CHECK(at0.concurrence == Approx(0.0).margin(1e-12));

    auto at_tau = run_protocol1(des.chain, tau);
    CHECK(at_tau.concurrence == Approx(1.0).margin(1e-8));
    CHECK(at_tau.leakage < 1e-10);
    CHECK(concurrence(at_tau.pair) == Approx(1.0).margin(1e-8));

    CHECK_THROWS_AS(run_protocol1(ChainSpec({0.0, 0.0}, {1.0}), 1.0), argument_error);
}

TEST_CASE("protocol 1 on the designed 5-site chain, brute force") {
    const double s = std::sqrt(2.0);
    auto des = design_protocol1_odd(Spectrum::from_values({s, 0.0, -s}));
    REQUIRE(des.chain.size() == 5);
    const double tau = std::numbers::pi / s;

    auto res = run_protocol1(des.chain, tau);
    CHECK(res.concurrence == Approx(1.0).margin(1e-9));

    // independent check: dense 5x5 exponential of the full chain
    const auto u = oracle::expm_sym(oracle::dense_hamiltonian(des.chain), 5, tau);
    const Complex a1 = u[0 * 5 + 2];  // center column
    const Complex a5 = u[4 * 5 + 2];
    CHECK(2.0 * std::abs(a1) * std::abs(a5) == Approx(1.0).margin(1e-9));
}

TEST_CASE("protocol 1 on a designed 7-site chain") {
    auto des = design_protocol1_odd(Spectrum::from_values({4.0, 3.0, 2.0, 1.0}));
    REQUIRE(des.chain.size() == 7);
    auto res = run_protocol1(des.chain, des.half_certificate.tau);
    CHECK(res.concurrence >= 1.0 - 1e-6);
}

TEST_CASE("protocol 1 even-length transfer moves the center pair to the ends") {
    auto des = design_protocol1_even(Spectrum::from_values({1.0, -1.0}), 1.0);
    REQUIRE(des.chain.size() == 4);
    auto res = run_protocol1_even(des.chain, des.half_certificate.tau);
    CHECK(res.concurrence == Approx(1.0).margin(1e-8));
    CHECK(res.leakage < 1e-10);
    CHECK_THROWS_AS(run_protocol1_even(ChainSpec({0.0, 0.0, 0.0}, {1.0, 1.0}), 1.0),
                    argument_error);
}

TEST_CASE("protocol 2 runs") {
    auto spec = testutil::family_chain(1);
    auto cert = certify_spectrum(Spectrum::from_values({4.0, 3.0, 2.0, 1.0})).certificate;

    auto fres = run_protocol2(spec, cert, 1, ParticleStatistics::fermion(), kPlusPlus);
    CHECK(fres.concurrence_before == Approx(0.0).margin(1e-12));
    CHECK(fres.concurrence_after == Approx(1.0).margin(1e-9));
    CHECK(fres.product_input);

    auto bres = run_protocol2(spec, cert, 1, ParticleStatistics::boson(), kPlusPlus);
    CHECK(bres.concurrence_after == Approx(0.0).margin(1e-10));

    // entangled input: still computed, flagged
    const double r = 1.0 / std::sqrt(2.0);
    auto eres = run_protocol2(spec, cert, 1, ParticleStatistics::fermion(),
                              PureTwoQubitState{0.0, r, r, 0.0});
    CHECK_FALSE(eres.product_input);
    CHECK(eres.concurrence_after == Approx(1.0).margin(1e-9));
}
