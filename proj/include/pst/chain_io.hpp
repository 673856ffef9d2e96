#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pst/chain.hpp"
#include "pst/errors.hpp"

namespace pst {

/// On-disk chain description (version 1). Canonical form: fixed key
/// order, numbers as shortest round-trip decimals, two-space indent,
/// trailing newline. serialize(parse(serialize(x))) is byte-identical.
struct ChainFileMetadata {
    std::vector<double> spectrum;  // descending
    double tau = 0.0;
    double phi = 0.0;
    std::string generator;
};

struct ChainFile {
    int version = 1;
    ChainSpec chain;
    std::optional<ChainFileMetadata> metadata;
};

inline std::string serialize_chain_file(const ChainFile& file) {
    nlohmann::ordered_json j;
    j["version"] = file.version;
    j["n"] = file.chain.size();
    j["lambda"] = file.chain.lambda;
    j["omega"] = file.chain.omega;
    if (file.metadata) {
        nlohmann::ordered_json m;
        m["spectrum"] = file.metadata->spectrum;
        m["tau"] = file.metadata->tau;
        m["phi"] = file.metadata->phi;
        m["generator"] = file.metadata->generator;
        j["metadata"] = std::move(m);
    }
    return j.dump(2) + "\n";
}

inline ChainFile parse_chain_file(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw argument_error(std::string("chain file is not valid JSON: ") + e.what());
    }
    try {
        ChainFile file;
        file.version = j.at("version").get<int>();
        if (file.version != 1) {
            throw argument_error("unsupported chain file version " +
                                 std::to_string(file.version));
        }
        const auto n = j.at("n").get<std::size_t>();
        auto lambda = j.at("lambda").get<std::vector<double>>();
        auto omega = j.at("omega").get<std::vector<double>>();
        if (lambda.size() != n || omega.size() + 1 != n) {
            throw argument_error("chain file arrays do not match n");
        }
        file.chain = ChainSpec(std::move(lambda), std::move(omega));
        if (j.contains("metadata")) {
            const auto& m = j.at("metadata");
            ChainFileMetadata meta;
            meta.spectrum = m.at("spectrum").get<std::vector<double>>();
            meta.tau = m.at("tau").get<double>();
            meta.phi = m.at("phi").get<double>();
            meta.generator = m.at("generator").get<std::string>();
            file.metadata = std::move(meta);
        }
        return file;
    } catch (const nlohmann::json::exception& e) {
        throw argument_error(std::string("malformed chain file: ") + e.what());
    }
}

inline ChainFile read_chain_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw argument_error("cannot open chain file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_chain_file(buf.str());
}

inline void write_chain_file(const std::string& path, const ChainFile& file) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw argument_error("cannot write chain file: " + path);
    out << serialize_chain_file(file);
}

}  // namespace pst
