#include "cab/universality.hpp"

#include <algorithm>
#include <string>

namespace cab {

namespace {

uint64_t checked_pow(uint64_t base, size_t exp, uint64_t cap, const char* what) {
    uint64_t r = 1;
    while (exp--) {
        r *= base;
        if (r > cap) throw CapExceeded(std::string(what) + ": enumeration exceeds cap");
    }
    return r;
}

uint64_t fnv1a(uint64_t h, const std::vector<Sym>& syms) {
    for (Sym s : syms) {
        h ^= s;
        h *= 0x100000001B3ull;
    }
    return h;
}

struct SearchContext {
    const Rule& rule;
    const Geometry& g;
    const Region& region;
    const Region& window;
    BackgroundPolicy policy;
    uint64_t cap;

    // Simulates with environment e on the window, background assignment bg on
    // the policy cells, initial content init on the region.
    Configuration outcome(const Configuration& e, const Configuration& bg,
                          const std::vector<Sym>& init, int t) const {
        FullState s = FullState::zeros(g);
        s.set(e);
        s.set(bg);
        s.set(Configuration{region, init});
        return restrict_to(evolve(s, rule, t), region);
    }

    Region background_cells(int t) const {
        if (policy == BackgroundPolicy::zero) return Region::empty();
        return region_difference(rule.dependency(region, t, g),
                                 region_union(window, region));
    }
};

// check(e, bg, t, hash) -> true if (e, bg, t) realizes the target over every
// quantified input; hash accumulates the re-simulated outputs.
template <typename Check>
SearchResult run_search(const SearchContext& ctx, int max_time, CertificateKind kind,
                        Check&& check) {
    if (!ctx.window.disjoint_with(ctx.region))
        throw ConfigError("search: window must be disjoint from the target region");
    if (!light_cone_valid(ctx.g, ctx.region, max_time, ctx.rule.radius()))
        throw LightConeError("search: (region, T) not light-cone valid on this torus");
    const int a = ctx.g.alphabet;
    const uint64_t env_total = checked_pow(static_cast<uint64_t>(a), ctx.window.size(),
                                           ctx.cap, "search window");
    uint64_t tested = 0;
    for (int t = 0; t <= max_time; ++t) {
        const Region bg_region = ctx.background_cells(t);
        const uint64_t bg_total = checked_pow(static_cast<uint64_t>(a), bg_region.size(),
                                              ctx.cap, "search background");
        for (uint64_t er = 0; er < env_total; ++er) {
            ++tested;
            const Configuration e{ctx.window, config_from_rank(er, ctx.window.size(), a)};
            uint64_t hash = 0xCBF29CE484222325ull;
            bool ok = true;
            for (uint64_t br = 0; br < bg_total && ok; ++br) {
                const Configuration bg{bg_region, config_from_rank(br, bg_region.size(), a)};
                ok = check(e, bg, t, hash);
            }
            if (ok) {
                const Region prog_region =
                    region_intersection(ctx.window, ctx.rule.dependency(ctx.region, t, ctx.g));
                Certificate cert;
                cert.kind = kind;
                cert.program_region = prog_region;
                cert.program = restrict_to(e, prog_region).symbols;
                cert.t = t;
                cert.verification_hash = hash;
                return cert;
            }
        }
    }
    return NotFoundWithinBounds{max_time, ctx.window, tested};
}

}  // namespace

bool found(const SearchResult& r) { return std::holds_alternative<Certificate>(r); }

const Certificate& certificate(const SearchResult& r) { return std::get<Certificate>(r); }

SearchResult search_conditional_prep(const Rule& rule, const Geometry& g,
                                     const PreparationTask& task, uint64_t cap) {
    if (!task.c_i) throw ConfigError("conditional prep: c_i required");
    SearchContext ctx{rule, g, task.region, task.window, task.policy, cap};
    return run_search(ctx, task.max_time, CertificateKind::cond_prep,
                      [&](const Configuration& e, const Configuration& bg, int t, uint64_t& hash) {
                          const Configuration out = ctx.outcome(e, bg, task.c_i->symbols, t);
                          hash = fnv1a(hash, out.symbols);
                          return out == task.c_f;
                      });
}

SearchResult search_unconditional_prep(const Rule& rule, const Geometry& g,
                                       const PreparationTask& task, uint64_t cap) {
    SearchContext ctx{rule, g, task.region, task.window, task.policy, cap};
    const int a = g.alphabet;
    const uint64_t inputs = checked_pow(static_cast<uint64_t>(a), task.region.size(), cap,
                                        "unconditional prep inputs");
    return run_search(ctx, task.max_time, CertificateKind::uncond_prep,
                      [&](const Configuration& e, const Configuration& bg, int t, uint64_t& hash) {
                          for (uint64_t ir = 0; ir < inputs; ++ir) {
                              const Configuration out = ctx.outcome(
                                  e, bg, config_from_rank(ir, task.region.size(), a), t);
                              hash = fnv1a(hash, out.symbols);
                              if (out != task.c_f) return false;
                          }
                          return true;
                      });
}

SearchResult search_map(const Rule& rule, const Geometry& g, const BijectionTask& task,
                        uint64_t cap) {
    SearchContext ctx{rule, g, task.region, task.window, task.policy, cap};
    const int a = g.alphabet;
    const uint64_t inputs = checked_pow(static_cast<uint64_t>(a), task.region.size(), cap,
                                        "map inputs");
    if (task.map.size() != inputs) throw ConfigError("map task: table must be total on A^R");
    return run_search(ctx, task.max_time, CertificateKind::map,
                      [&](const Configuration& e, const Configuration& bg, int t, uint64_t& hash) {
                          for (uint64_t ir = 0; ir < inputs; ++ir) {
                              const Configuration out = ctx.outcome(
                                  e, bg, config_from_rank(ir, task.region.size(), a), t);
                              hash = fnv1a(hash, out.symbols);
                              if (out.symbols != task.map[ir]) return false;
                          }
                          return true;
                      });
}

namespace {

Configuration rebuild_env(const Region& window, const Certificate& cert) {
    std::vector<Sym> syms(window.size(), 0);
    for (size_t i = 0; i < cert.program_region.size(); ++i) {
        long p = window.index_of(cert.program_region.cells[i]);
        if (p < 0) throw ConfigError("certificate program region not inside window");
        syms[static_cast<size_t>(p)] = cert.program[i];
    }
    return Configuration{window, std::move(syms)};
}

}  // namespace

bool verify_certificate(const Rule& rule, const Geometry& g, const PreparationTask& task,
                        const Certificate& cert, bool unconditional) {
    SearchContext ctx{rule, g, task.region, task.window, task.policy, kDefaultEnumerationCap};
    const Configuration e = rebuild_env(task.window, cert);
    const Region bg_region = ctx.background_cells(cert.t);
    const int a = g.alphabet;
    const uint64_t bg_total = checked_pow(static_cast<uint64_t>(a), bg_region.size(),
                                          kDefaultEnumerationCap, "verify background");
    std::vector<std::vector<Sym>> inits;
    if (unconditional) {
        const uint64_t inputs = checked_pow(static_cast<uint64_t>(a), task.region.size(),
                                            kDefaultEnumerationCap, "verify inputs");
        for (uint64_t i = 0; i < inputs; ++i)
            inits.push_back(config_from_rank(i, task.region.size(), a));
    } else {
        if (!task.c_i) return false;
        inits.push_back(task.c_i->symbols);
    }
    for (uint64_t br = 0; br < bg_total; ++br) {
        const Configuration bg{bg_region, config_from_rank(br, bg_region.size(), a)};
        for (const auto& init : inits)
            if (ctx.outcome(e, bg, init, cert.t) != task.c_f) return false;
    }
    return true;
}

bool verify_certificate(const Rule& rule, const Geometry& g, const BijectionTask& task,
                        const Certificate& cert) {
    SearchContext ctx{rule, g, task.region, task.window, task.policy, kDefaultEnumerationCap};
    const Configuration e = rebuild_env(task.window, cert);
    const Region bg_region = ctx.background_cells(cert.t);
    const int a = g.alphabet;
    const uint64_t bg_total = checked_pow(static_cast<uint64_t>(a), bg_region.size(),
                                          kDefaultEnumerationCap, "verify background");
    const uint64_t inputs = checked_pow(static_cast<uint64_t>(a), task.region.size(),
                                        kDefaultEnumerationCap, "verify inputs");
    for (uint64_t br = 0; br < bg_total; ++br) {
        const Configuration bg{bg_region, config_from_rank(br, bg_region.size(), a)};
        for (uint64_t ir = 0; ir < inputs; ++ir)
            if (ctx.outcome(e, bg, config_from_rank(ir, task.region.size(), a), cert.t).symbols !=
                task.map[ir])
                return false;
    }
    return true;
}

std::optional<Configuration> instability_witness(const Rule& rule, const Geometry& g,
                                                 const Region& region, const Coord& x,
                                                 uint64_t cap) {
    const Region dep = rule.dependency(Region::single(x, g), 1, g);
    if (!dep.subset_of(region))
        throw ConfigError("instability_witness: region must cover the one-step dependency of x");
    const int a = g.alphabet;
    uint64_t total = 1;
    bool capped = false;
    for (size_t i = 0; i < region.size(); ++i) {
        total *= static_cast<uint64_t>(a);
        if (total > cap) { capped = true; total = cap; break; }
    }
    const Coord xw = g.wrap(x);
    for (uint64_t r = 0; r < total; ++r) {
        const Configuration c{region, config_from_rank(r, region.size(), a)};
        FullState s = FullState::zeros(g);
        s.set(c);
        if (step(s, rule, Direction::forward).at(xw) != s.at(xw)) return c;
    }
    if (capped) throw CapExceeded("instability_witness: scan truncated without a witness");
    return std::nullopt;
}

PersistenceReport persistence_probe(const Rule& rule, const Geometry& g, const Region& region,
                                    const Region& program_region, const Configuration& c_p,
                                    const Configuration& c_f, int horizon, uint64_t cap) {
    if (!region.disjoint_with(program_region))
        throw ConfigError("persistence_probe: R and R_p must be disjoint");
    if (!light_cone_valid(g, region, horizon, rule.radius()))
        throw LightConeError("persistence_probe: horizon not light-cone valid");
    PersistenceReport rep;
    rep.horizon = horizon;
    const int a = g.alphabet;
    const Region pinned = region_union(region, program_region);
    for (int t = 1; t <= horizon; ++t) {
        const Region adv = region_difference(rule.dependency(region, t, g), pinned);
        const uint64_t total = checked_pow(static_cast<uint64_t>(a), adv.size(), cap,
                                           "persistence frontier");
        for (uint64_t r = 0; r < total; ++r) {
            FullState s = FullState::zeros(g);
            s.set(c_p);
            s.set(c_f);  // region starts in the prepared state
            const Configuration env{adv, config_from_rank(r, adv.size(), a)};
            s.set(env);
            if (restrict_to(evolve(s, rule, t), region) != c_f) {
                rep.held = false;
                rep.first_deviation_t = t;
                rep.witness_environment = env;
                return rep;
            }
        }
    }
    return rep;
}

}  // namespace cab
