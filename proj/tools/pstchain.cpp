// pstchain: spectrum certification, chain design, transfer simulation,
// effective gates, entanglement protocols, and the square-well mirror
// revival demo. JSON reports on stdout; diagnostics on stderr.
//
// Exit codes: 0 success, 2 domain rejection (uncertifiable/unsupported),
// 3 numerical failure, 64 usage error.

#include <array>
#include <cctype>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pst/chain_io.hpp"
#include "pst/design.hpp"
#include "pst/gates.hpp"
#include "pst/propagator.hpp"
#include "pst/protocols.hpp"
#include "pst/spectrum.hpp"
#include "pst/two_qubit.hpp"
#include "pst/well.hpp"

namespace {

using json = nlohmann::ordered_json;
using pst::Complex;

constexpr const char* kGenerator = "pstchain 1.0.0";

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const pst::argument_error*>(&e)) return 64;
    if (dynamic_cast<const pst::rejection_error*>(&e) ||
        dynamic_cast<const pst::unsupported_error*>(&e) ||
        dynamic_cast<const pst::degenerate_spectrum_error*>(&e)) {
        return 2;
    }
    if (dynamic_cast<const pst::error*>(&e)) return 3;
    return 3;
}

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

bool looks_integral(const std::string& tok) {
    std::size_t i = (tok[0] == '+' || tok[0] == '-') ? 1 : 0;
    if (i >= tok.size()) return false;
    for (; i < tok.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return false;
    }
    return true;
}

double parse_double(const std::string& tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw pst::argument_error("malformed number: '" + tok + "'");
    }
    if (used != tok.size()) throw pst::argument_error("malformed number: '" + tok + "'");
    return v;
}

// Comma-separated eigenvalues. Integers and p/q fractions select the
// exact certification path; any decimal falls back to float mode.
pst::Spectrum parse_spectrum(const std::string& text) {
    const auto tokens = split_csv(text);
    bool exact = true;
    for (const auto& tok : tokens) {
        if (tok.empty()) throw pst::argument_error("empty spectrum entry");
        const auto slash = tok.find('/');
        if (slash == std::string::npos) {
            exact = exact && looks_integral(tok);
        } else {
            const std::string num = tok.substr(0, slash);
            const std::string den = tok.substr(slash + 1);
            if (!looks_integral(num) || !looks_integral(den)) {
                throw pst::argument_error("malformed rational: '" + tok + "'");
            }
        }
    }
    if (exact) {
        std::vector<pst::Rational> vals;
        vals.reserve(tokens.size());
        for (const auto& tok : tokens) {
            const auto slash = tok.find('/');
            if (slash == std::string::npos) {
                vals.emplace_back(pst::BigInt(tok));
            } else {
                const pst::BigInt den(tok.substr(slash + 1));
                if (den == 0) throw pst::argument_error("zero denominator: '" + tok + "'");
                vals.emplace_back(pst::BigInt(tok.substr(0, slash)), den);
            }
        }
        return pst::Spectrum::from_rationals(std::move(vals));
    }
    std::vector<double> vals;
    vals.reserve(tokens.size());
    for (const auto& tok : tokens) vals.push_back(parse_double(tok));
    return pst::Spectrum::from_values(std::move(vals));
}

pst::ParticleStatistics parse_statistics(const std::string& text) {
    if (text == "fermion") return pst::ParticleStatistics::fermion();
    if (text == "boson") return pst::ParticleStatistics::boson();
    throw pst::argument_error("statistics must be 'fermion' or 'boson'");
}

// 4 reals (real amplitudes) or 8 reals (re,im interleaved) for |00>,|01>,|10>,|11>.
pst::PureTwoQubitState parse_state(const std::string& text) {
    const auto tokens = split_csv(text);
    std::vector<double> vals;
    for (const auto& tok : tokens) vals.push_back(parse_double(tok));
    std::array<Complex, 4> amp{};
    if (vals.size() == 4) {
        for (std::size_t i = 0; i < 4; ++i) amp[i] = vals[i];
    } else if (vals.size() == 8) {
        for (std::size_t i = 0; i < 4; ++i) amp[i] = Complex(vals[2 * i], vals[2 * i + 1]);
    } else {
        throw pst::argument_error("state needs 4 amplitudes (or 8 re,im values)");
    }
    return pst::PureTwoQubitState{amp[0], amp[1], amp[2], amp[3]};
}

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw pst::argument_error("cannot write file: " + path);
    out << text;
}

json complex_pair(const Complex& z) { return json::array({z.real(), z.imag()}); }

json gate_json(const pst::TwoQubitGate& g) {
    json re = json::array(), im = json::array();
    for (std::size_t i = 0; i < 4; ++i) {
        json rrow = json::array(), irow = json::array();
        for (std::size_t j = 0; j < 4; ++j) {
            rrow.push_back(g.at(i, j).real());
            irow.push_back(g.at(i, j).imag());
        }
        re.push_back(rrow);
        im.push_back(irow);
    }
    return json{{"re", re}, {"im", im}};
}

json state_json(const pst::PureTwoQubitState& s) {
    return json{{"a", complex_pair(s.a)},
                {"b", complex_pair(s.b)},
                {"c", complex_pair(s.c)},
                {"d", complex_pair(s.d)}};
}

void print_json(const json& j) { std::fputs((j.dump(2) + "\n").c_str(), stdout); }

// Certificate for a chain file: take tau/phi from metadata when present,
// otherwise re-certify the eigensolved spectrum (float mode).
pst::PSTCertificate certificate_for(const pst::ChainFile& file) {
    if (file.metadata) {
        pst::PSTCertificate cert;
        cert.tau = file.metadata->tau;
        cert.phi = file.metadata->phi;
        cert.delta = cert.tau > 0.0 ? std::numbers::pi / cert.tau : 0.0;
        return cert;
    }
    const auto eig = pst::eigensolve(file.chain);
    auto res = pst::certify_spectrum(pst::Spectrum::from_values(eig.values));
    if (!res.certified) {
        throw pst::rejection_error("chain spectrum is not PST-certifiable: " +
                                   res.reason);
    }
    return res.certificate;
}

int cmd_check(const std::string& spectrum_arg) {
    const auto spec = parse_spectrum(spectrum_arg);
    const auto res = pst::certify_spectrum(spec);
    if (!res.certified) {
        print_json(json{{"certified", false},
                        {"reason", res.reason},
                        {"offending_gap_index", res.offending_gap}});
        return 2;
    }
    print_json(json{{"certified", true},
                    {"tau", res.certificate.tau},
                    {"phi", res.certificate.phi},
                    {"delta", res.certificate.delta},
                    {"odd_multipliers", res.certificate.odd_multipliers},
                    {"exact", res.certificate.exact}});
    return 0;
}

int cmd_design(const std::string& spectrum_arg, const std::string& out_path) {
    const auto spec = parse_spectrum(spectrum_arg);
    const auto res = pst::design(spec);
    pst::ChainFile file;
    file.chain = res.chain;
    pst::ChainFileMetadata meta;
    meta.spectrum = spec.values;
    meta.tau = res.certificate.tau;
    meta.phi = res.certificate.phi;
    meta.generator = kGenerator;
    file.metadata = std::move(meta);
    write_text(out_path, pst::serialize_chain_file(file));
    std::fprintf(stderr, "round-trip max eigenvalue error: %.3e\n", res.roundtrip_error);
    return 0;
}

int cmd_fidelity(const std::string& chain_path, std::size_t from, std::size_t to,
                 double t_max, std::size_t steps, const std::string& out_path) {
    if (steps < 2) throw pst::argument_error("need at least 2 sweep steps");
    const auto file = pst::read_chain_file(chain_path);
    const std::size_t n = file.chain.size();
    if (from < 1 || from > n || to < 1 || to > n) {
        throw pst::argument_error("site out of range 1.." + std::to_string(n));
    }
    const auto eig = pst::eigensolve(file.chain);
    std::string csv = "t,magnitude,phase\n";
    for (std::size_t i = 0; i < steps; ++i) {
        const double t =
            t_max * static_cast<double>(i) / static_cast<double>(steps - 1);
        const Complex f = pst::transfer_amplitude(eig, to, from, t);
        csv += format_g17(t) + "," + format_g17(std::abs(f)) + "," +
               format_g17(std::arg(f)) + "\n";
    }
    write_text(out_path, csv);
    return 0;
}

int cmd_gate(const std::string& chain_path, std::size_t site,
             const std::string& statistics) {
    const auto file = pst::read_chain_file(chain_path);
    const auto stats = parse_statistics(statistics);
    const auto cert = certificate_for(file);
    const auto rep = pst::effective_gate_report(file.chain, cert, site, stats);
    print_json(json{{"site", site},
                    {"statistics", statistics},
                    {"tau", cert.tau},
                    {"phi", cert.phi},
                    {"analytic", gate_json(rep.analytic)},
                    {"numeric", gate_json(rep.numeric)},
                    {"max_deviation", rep.max_deviation}});
    return 0;
}

json protocol1_report(const char* variant, const pst::ProtocolDesign& des,
                      std::size_t steps, bool even) {
    const double tau = des.half_certificate.tau;
    json traj = json::array();
    pst::Protocol1Result last;
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = tau * static_cast<double>(i) / static_cast<double>(steps - 1);
        last = even ? pst::run_protocol1_even(des.chain, t)
                    : pst::run_protocol1(des.chain, t);
        traj.push_back(json{{"t", t}, {"concurrence", last.concurrence}});
    }
    json amps_re = json::array(), amps_im = json::array();
    for (const auto& a : last.amplitudes) {
        amps_re.push_back(a.real());
        amps_im.push_back(a.imag());
    }
    return json{{"variant", variant},
                {"n", des.chain.size()},
                {"tau", tau},
                {"trajectory", traj},
                {"final",
                 json{{"concurrence", last.concurrence},
                      {"leakage", last.leakage},
                      {"pair", state_json(last.pair)},
                      {"amplitudes", json{{"re", amps_re}, {"im", amps_im}}}}}};
}

int cmd_protocol(const std::string& variant, const std::string& half_spectrum,
                 double center_coupling, std::size_t steps,
                 const std::string& chain_path, std::size_t site,
                 const std::string& statistics, const std::string& state_arg) {
    if (steps < 2) throw pst::argument_error("need at least 2 trajectory steps");
    if (variant == "p1-odd" || variant == "p1-even") {
        if (half_spectrum.empty()) {
            throw pst::argument_error("protocol 1 needs --half-spectrum");
        }
        const auto spec = parse_spectrum(half_spectrum);
        if (variant == "p1-odd") {
            print_json(protocol1_report("p1-odd", pst::design_protocol1_odd(spec),
                                        steps, false));
        } else {
            print_json(protocol1_report(
                "p1-even", pst::design_protocol1_even(spec, center_coupling), steps,
                true));
        }
        return 0;
    }
    if (variant == "p2") {
        if (chain_path.empty() || site == 0 || statistics.empty() || state_arg.empty()) {
            throw pst::argument_error(
                "protocol 2 needs --chain, --site, --statistics and --state");
        }
        const auto file = pst::read_chain_file(chain_path);
        const auto stats = parse_statistics(statistics);
        const auto cert = certificate_for(file);
        auto input = parse_state(state_arg);
        const auto res = pst::run_protocol2(file.chain, cert, site, stats, input);
        print_json(json{{"variant", "p2"},
                        {"site", site},
                        {"statistics", statistics},
                        {"product_input", res.product_input},
                        {"before", json{{"state", state_json(input)},
                                        {"concurrence", res.concurrence_before}}},
                        {"after", json{{"state", state_json(res.output)},
                                       {"concurrence", res.concurrence_after}}}});
        return 0;
    }
    throw pst::argument_error("variant must be p1-odd, p1-even or p2");
}

int cmd_revival(std::size_t modes, double length, double x0, double sigma,
                std::size_t samples, const std::string& coeffs) {
    pst::WellPacket packet;
    if (!coeffs.empty()) {
        std::vector<Complex> c;
        for (const auto& tok : split_csv(coeffs)) c.emplace_back(parse_double(tok));
        packet = pst::WellPacket::from_modes(length, std::move(c));
    } else {
        if (x0 <= 0.0) x0 = length / 4.0;
        if (sigma <= 0.0) sigma = length / 20.0;
        packet = pst::gaussian_well_packet(length, x0, sigma, modes);
    }
    if (packet.mode_count() < 2) {
        throw pst::argument_error("need at least 2 modes");
    }
    if (packet.truncation_tail > 1e-12) {
        std::fprintf(stderr, "truncation tail %.6e exceeds 1e-12; increase --modes\n",
                     packet.truncation_tail);
        return 3;
    }
    const auto res = pst::well_mirror_revival(packet, samples);
    print_json(json{{"mirror_time", res.mirror_time},
                    {"max_deviation", res.max_deviation},
                    {"relative_deviation",
                     res.max_abs_initial > 0.0 ? res.max_deviation / res.max_abs_initial
                                               : 0.0},
                    {"max_abs_initial", res.max_abs_initial},
                    {"truncation_tail", packet.truncation_tail},
                    {"modes", packet.mode_count()},
                    {"samples", samples}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Design and simulate chains with perfect quantum state transfer"};
    app.require_subcommand(1);

    std::string spectrum_arg, out_path = "-", chain_path, statistics, state_arg;
    std::string variant, half_spectrum, coeffs;
    std::size_t from = 1, to = 1, steps = 201, site = 0, modes = 64, samples = 1024;
    double t_max = 1.0, center_coupling = 1.0, length = 1.0, x0 = -1.0, sigma = -1.0;

    auto* check = app.add_subcommand("check", "Certify a spectrum for perfect transfer");
    check->add_option("--spectrum", spectrum_arg, "comma-separated eigenvalues")
        ->required();

    auto* design = app.add_subcommand("design", "Design the chain realizing a spectrum");
    design->add_option("--spectrum", spectrum_arg, "comma-separated eigenvalues")
        ->required();
    design->add_option("--out", out_path, "output chain file ('-' for stdout)");

    auto* fidelity =
        app.add_subcommand("fidelity", "Sweep the transfer amplitude over time (CSV)");
    fidelity->add_option("--chain", chain_path, "chain file")->required();
    fidelity->add_option("--from", from, "source site (1-based)")->required();
    fidelity->add_option("--to", to, "probe site (1-based)")->required();
    fidelity->add_option("--t-max", t_max, "sweep end time")->required();
    fidelity->add_option("--steps", steps, "number of rows (default 201)");
    fidelity->add_option("--out", out_path, "output CSV ('-' for stdout)");

    auto* gate = app.add_subcommand("gate", "Effective two-qubit gate on a mirror pair");
    gate->add_option("--chain", chain_path, "chain file")->required();
    gate->add_option("--site", site, "site x (pairs with its mirror)")->required();
    gate->add_option("--statistics", statistics, "fermion | boson")->required();

    auto* protocol = app.add_subcommand("protocol", "Run an entanglement protocol");
    protocol->add_option("--variant", variant, "p1-odd | p1-even | p2")->required();
    protocol->add_option("--half-spectrum", half_spectrum,
                         "half-chain spectrum (p1 variants)");
    protocol->add_option("--center-coupling", center_coupling,
                         "free center coupling (p1-even, default 1)");
    protocol->add_option("--steps", steps, "trajectory points (default 201)");
    protocol->add_option("--chain", chain_path, "chain file (p2)");
    protocol->add_option("--site", site, "site x (p2)");
    protocol->add_option("--statistics", statistics, "fermion | boson (p2)");
    protocol->add_option("--state", state_arg,
                         "input amplitudes a,b,c,d for |00>,|01>,|10>,|11> (p2); "
                         "4 reals or 8 re,im values");

    auto* revival = app.add_subcommand(
        "revival", "Square-well mirror revival of a Gaussian packet");
    revival->add_option("--modes", modes, "number of well modes (default 64)");
    revival->add_option("--length", length, "well width L (default 1)");
    revival->add_option("--x0", x0, "packet center (default L/4)");
    revival->add_option("--sigma", sigma, "packet width (default L/20)");
    revival->add_option("--samples", samples, "grid points (default 1024)");
    revival->add_option("--coeffs", coeffs, "explicit mode coefficients (overrides "
                                            "the Gaussian)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (app.got_subcommand(check)) return cmd_check(spectrum_arg);
        if (app.got_subcommand(design)) return cmd_design(spectrum_arg, out_path);
        if (app.got_subcommand(fidelity)) {
            return cmd_fidelity(chain_path, from, to, t_max, steps, out_path);
        }
        if (app.got_subcommand(gate)) return cmd_gate(chain_path, site, statistics);
        if (app.got_subcommand(protocol)) {
            return cmd_protocol(variant, half_spectrum, center_coupling, steps,
                                chain_path, site, statistics, state_arg);
        }
        if (app.got_subcommand(revival)) {
            return cmd_revival(modes, length, x0, sigma, samples, coeffs);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e);
    }
    return 64;
}
