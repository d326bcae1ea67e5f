#include "cab/serialize.hpp"

namespace cab {

void to_json(nlohmann::json& j, const Geometry& g) {
    j = {{"sides", g.sides}, {"alphabet", g.alphabet}};
}

void from_json(const nlohmann::json& j, Geometry& g) {
    g.sides = j.at("sides").get<std::vector<int>>();
    g.alphabet = j.at("alphabet").get<int>();
    g.validate();
}

void to_json(nlohmann::json& j, const Region& r) { j = r.cells; }

Region region_from_json(const nlohmann::json& j, const Geometry& g) {
    return Region::of(j.get<std::vector<Coord>>(), g);
}

nlohmann::json configuration_to_json(const Configuration& c) {
    return {{"region", c.region}, {"symbols", symbols_to_string(c.symbols)}};
}

Configuration configuration_from_json(const nlohmann::json& j, const Geometry& g) {
    const Region r = region_from_json(j.at("region"), g);
    return make_configuration(r, symbols_from_string(j.at("symbols").get<std::string>(), g.alphabet), g);
}

nlohmann::json full_state_to_json(const FullState& s) {
    return {{"geometry", s.geom}, {"cells", symbols_to_string(s.cells)}};
}

FullState full_state_from_json(const nlohmann::json& j) {
    Geometry g = j.at("geometry").get<Geometry>();
    auto cells = symbols_from_string(j.at("cells").get<std::string>(), g.alphabet);
    if (cells.size() != g.cells()) throw ConfigError("full state: cell count mismatch");
    return FullState{g, std::move(cells)};
}

nlohmann::json cylinder_to_json(const CylinderSet& s) {
    std::vector<std::string> members;
    members.reserve(s.members.size());
    for (const auto& m : s.members) members.push_back(symbols_to_string(m));
    return {{"region", s.region}, {"members", members}};
}

CylinderSet cylinder_from_json(const nlohmann::json& j, const Geometry& g) {
    const Region r = region_from_json(j.at("region"), g);
    std::vector<std::vector<Sym>> members;
    for (const auto& m : j.at("members"))
        members.push_back(symbols_from_string(m.get<std::string>(), g.alphabet));
    return CylinderSet::of(r, std::move(members));
}

nlohmann::json certificate_to_json(const Certificate& c) {
    const char* kind = c.kind == CertificateKind::cond_prep     ? "cond-prep"
                       : c.kind == CertificateKind::uncond_prep ? "uncond-prep"
                                                                : "map";
    return {{"kind", kind},
            {"program_region", c.program_region},
            {"program", symbols_to_string(c.program)},
            {"t", c.t},
            {"verification_hash", c.verification_hash}};
}

Certificate certificate_from_json(const nlohmann::json& j, const Geometry& g) {
    Certificate c;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "cond-prep") c.kind = CertificateKind::cond_prep;
    else if (kind == "uncond-prep") c.kind = CertificateKind::uncond_prep;
    else if (kind == "map") c.kind = CertificateKind::map;
    else throw ConfigError("certificate: unknown kind");
    c.program_region = region_from_json(j.at("program_region"), g);
    c.program = symbols_from_string(j.at("program").get<std::string>(), g.alphabet);
    c.t = j.at("t").get<int>();
    c.verification_hash = j.at("verification_hash").get<uint64_t>();
    return c;
}

nlohmann::json estimate_to_json(const ProbabilityEstimate& e) {
    return {{"p_hat", e.p_hat}, {"n", e.n},     {"seed", e.seed},
            {"half_width", e.half_width}, {"lo", e.lo}, {"hi", e.hi}};
}

uint64_t state_digest(const FullState& s) {
    uint64_t h = 0xCBF29CE484222325ull;
    for (Sym c : s.cells) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

}  // namespace cab
