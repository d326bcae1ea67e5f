#include "cab/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cab/rng.hpp"

namespace cab {

FullState step(const FullState& s, const Rule& rule, Direction dir) {
    std::string why;
    if (!rule.compatible(s.geom, &why)) throw ConfigError("step: " + why);
    FullState out = s;
    rule.apply(out, dir);
    return out;
}

FullState evolve(const FullState& s, const Rule& rule, long long t) {
    std::string why;
    if (!rule.compatible(s.geom, &why)) throw ConfigError("evolve: " + why);
    FullState out = s;
    const Direction dir = t >= 0 ? Direction::forward : Direction::backward;
    for (long long i = std::llabs(t); i > 0; --i) rule.apply(out, dir);
    return out;
}

bool InducedMap::is_identity(int alphabet) const {
    if (region != target) return false;
    for (uint64_t r = 0; r < table.size(); ++r)
        if (table[r] != config_from_rank(r, region.size(), alphabet)) return false;
    return true;
}

bool InducedMap::is_bijection(int alphabet) const {
    std::vector<bool> seen(table.size(), false);
    for (const auto& out : table) {
        uint64_t r = config_rank(out, alphabet);
        if (r >= table.size() || seen[r]) return false;
        seen[r] = true;
    }
    return true;
}

InducedMap induced_map(const Rule& rule, const Geometry& g, const Configuration& env,
                       const Region& region, const Region& target, int t, uint64_t cap) {
    if (t < 0) throw ConfigError("induced_map: t must be nonnegative");
    if (!light_cone_valid(g, target, t, rule.radius()))
        throw LightConeError("induced_map: (target, t) not light-cone valid on this torus");
    const Region dep = rule.dependency(target, t, g);
    if (!dep.subset_of(region_union(env.region, region)))
        throw ConfigError("induced_map: env and region do not cover the dependency of target");
    const int a = g.alphabet;
    uint64_t count = 1;
    for (size_t i = 0; i < region.size(); ++i) {
        count *= static_cast<uint64_t>(a);
        if (count > cap) throw CapExceeded("induced_map: a^|region| exceeds cap");
    }
    InducedMap m{region, target, t, env, {}};
    m.table.reserve(count);
    FullState base = FullState::zeros(g);
    base.set(env);
    for (uint64_t rank = 0; rank < count; ++rank) {
        FullState s = base;
        s.set(Configuration{region, config_from_rank(rank, region.size(), a)});
        m.table.push_back(restrict_to(evolve(s, rule, t), target).symbols);
    }
    return m;
}

FullState random_state(const Geometry& g, uint64_t seed) {
    SplitMix64 rng(seed);
    FullState s = FullState::zeros(g);
    for (auto& c : s.cells) c = static_cast<Sym>(rng.bounded(static_cast<uint32_t>(g.alphabet)));
    return s;
}

FullState translate_state(const FullState& s, const Coord& v) {
    const Geometry& g = s.geom;
    FullState out = FullState::zeros(g);
    const uint64_t n = g.cells();
    for (uint64_t i = 0; i < n; ++i) {
        Coord c = g.coord(i);
        for (size_t k = 0; k < c.size(); ++k) c[k] += v[k];
        out.cells[g.index(c)] = s.cells[i];
    }
    return out;
}

namespace {

uint64_t state_space_size(const Geometry& g, uint64_t cap, bool* fits) {
    uint64_t total = 1;
    *fits = true;
    for (uint64_t i = 0, n = g.cells(); i < n; ++i) {
        total *= static_cast<uint64_t>(g.alphabet);
        if (total > cap) {
            *fits = false;
            return 0;
        }
    }
    return total;
}

}  // namespace

ReversibilityReport verify_reversibility(const Rule& rule, const Geometry& g,
                                         std::optional<SampledMode> sampled, uint64_t cap) {
    std::string why;
    if (!rule.compatible(g, &why)) throw ConfigError("verify_reversibility: " + why);
    ReversibilityReport rep;
    auto check = [&](const FullState& s) {
        ++rep.tested;
        if (step(step(s, rule, Direction::forward), rule, Direction::backward) != s) {
            rep.counterexample = s;
            return false;
        }
        return true;
    };
    if (!sampled) {
        bool fits = false;
        uint64_t total = state_space_size(g, cap, &fits);
        if (!fits) throw CapExceeded("verify_reversibility: exhaustive mode exceeds cap");
        rep.exhaustive = true;
        for (uint64_t r = 0; r < total; ++r)
            if (!check(FullState::from_rank(r, g))) return rep;
    } else {
        for (uint64_t i = 0; i < sampled->n; ++i)
            if (!check(random_state(g, substream_seed(sampled->seed, i)))) return rep;
    }
    rep.pass = true;
    return rep;
}

CovarianceReport verify_translation_covariance(const Rule& rule, const Geometry& g,
                                               const Coord& shift_vector,
                                               std::optional<SampledMode> sampled, uint64_t cap) {
    std::string why;
    if (!rule.compatible(g, &why)) throw ConfigError("verify_translation_covariance: " + why);
    CovarianceReport rep;
    const int stride = rule.covariance_stride();
    for (int c : shift_vector)
        if (c % stride != 0) {
            rep.status = CovarianceReport::Status::rejected_precondition;
            return rep;
        }
    auto check = [&](const FullState& s) {
        ++rep.tested;
        if (translate_state(step(s, rule, Direction::forward), shift_vector) !=
            step(translate_state(s, shift_vector), rule, Direction::forward)) {
            rep.counterexample = s;
            return false;
        }
        return true;
    };
    if (!sampled) {
        bool fits = false;
        uint64_t total = state_space_size(g, cap, &fits);
        if (!fits) throw CapExceeded("verify_translation_covariance: exhaustive mode exceeds cap");
        for (uint64_t r = 0; r < total; ++r)
            if (!check(FullState::from_rank(r, g))) return rep;
    } else {
        for (uint64_t i = 0; i < sampled->n; ++i)
            if (!check(random_state(g, substream_seed(sampled->seed, i)))) return rep;
    }
    rep.pass = true;
    return rep;
}

}  // namespace cab
