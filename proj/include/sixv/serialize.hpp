#pragma once

// JSON (de)serialization for configurations and boundary conditions.
// Edge bits are written as a '0'/'1' string in edge-id order: horizontal
// edges h(j,i) = j*(n+1)+i first, then vertical edges v(i,j) = n*(n+1)
// + i*(n+1)+j.  Bit 1 means the edge is kept (directed E resp. N).

#include <string>

#include <json.hpp>

#include "lattice.hpp"

namespace sixv {

using json = nlohmann::json;

inline json boundary_to_json(const BoundaryCondition& bc) {
    json j;
    j["kind"] = bc.kind;
    if (bc.kind != "free" && bc.kind != "domain-wall") {
        json stubs = json::array();
        for (auto [e, b] : bc.fixed_stubs) stubs.push_back({e, b ? 1 : 0});
        j["stubs"] = stubs;
    }
    return j;
}

inline BoundaryCondition boundary_from_json(const json& j, int n) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "free") return BoundaryCondition::free_boundary();
    if (kind == "domain-wall") return BoundaryCondition::domain_wall(n);
    // any other kind carries its stub list explicitly
    std::vector<std::pair<int, bool>> stubs;
    for (const auto& s : j.at("stubs"))
        stubs.emplace_back(s.at(0).get<int>(), s.at(1).get<int>() != 0);
    BoundaryCondition bc =
        BoundaryCondition::explicit_stubs(std::move(stubs), kind);
    bc.validate(n);
    return bc;
}

inline json config_to_json(const Configuration& c,
                           const BoundaryCondition& bc) {
    Lattice lat(c.n);
    std::string bits(lat.num_edges(), '0');
    for (int e = 0; e < lat.num_edges(); ++e)
        if (c.kept(e)) bits[e] = '1';
    json j;
    j["n"] = c.n;
    j["boundary"] = boundary_to_json(bc);
    j["edges"] = bits;
    return j;
}

struct SerializedConfig {
    Configuration config;
    BoundaryCondition boundary;
};

inline SerializedConfig config_from_json(const json& j) {
    int n = j.at("n").get<int>();
    if (n < 1) throw std::invalid_argument("n must be positive");
    Lattice lat(n);
    std::string bits = j.at("edges").get<std::string>();
    if (static_cast<int>(bits.size()) != lat.num_edges())
        throw std::invalid_argument("edge string has wrong length");
    Configuration c(n);
    for (int e = 0; e < lat.num_edges(); ++e) {
        if (bits[e] != '0' && bits[e] != '1')
            throw std::invalid_argument("edge string must be 0/1");
        c.set(e, bits[e] == '1');
    }
    BoundaryCondition bc = boundary_from_json(j.at("boundary"), n);
    if (!ice_ok(c)) throw InvalidConfiguration("configuration violates ice rule");
    if (!bc.satisfied_by(c))
        throw InvalidConfiguration("configuration violates boundary condition");
    return {std::move(c), std::move(bc)};
}

}  // namespace sixv
