#include "cab/thermo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "cab/rng.hpp"

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

constexpr uint64_t kSampleBlock = 1024;

}  // namespace

void SplitSpec::validate() const {
    geom.validate();
    if (axis < 0 || axis >= geom.dim()) throw ConfigError("split: axis out of range");
    const int n = geom.sides[static_cast<size_t>(axis)];
    if (boundary <= 0 || boundary >= n)
        throw ConfigError("split: both bands must be nonempty");
}

Region SplitSpec::hot_cells() const {
    std::vector<Coord> cells;
    for (uint64_t i = 0, n = geom.cells(); i < n; ++i) {
        Coord c = geom.coord(i);
        if (is_hot(c)) cells.push_back(std::move(c));
    }
    return Region::of(std::move(cells), geom);
}

Region SplitSpec::cold_cells() const {
    std::vector<Coord> cells;
    for (uint64_t i = 0, n = geom.cells(); i < n; ++i) {
        Coord c = geom.coord(i);
        if (!is_hot(c)) cells.push_back(std::move(c));
    }
    return Region::of(std::move(cells), geom);
}

FullState sample_initial_state(const SplitSpec& split, uint64_t seed) {
    split.validate();
    SplitMix64 rng(seed);
    FullState s = FullState::zeros(split.geom);
    const uint64_t n = split.geom.cells();
    for (uint64_t i = 0; i < n; ++i) {
        const Sym v = static_cast<Sym>(rng.bounded(static_cast<uint32_t>(split.geom.alphabet)));
        if (split.is_hot(split.geom.coord(i))) s.cells[i] = v;
    }
    return s;
}

double physical_prior_exact(const Rule& rule, const SplitSpec& split, const Configuration& c,
                            int t, uint64_t cap) {
    split.validate();
    const Geometry& g = split.geom;
    if (!light_cone_valid(g, c.region, t, rule.radius()))
        throw LightConeError("physical_prior: (region, t) not light-cone valid");
    const Region dep = rule.dependency(c.region, t, g);
    std::vector<Coord> hot;
    for (const auto& cell : dep.cells)
        if (split.is_hot(cell)) hot.push_back(cell);
    const Region hot_dep{std::move(hot)};
    const int a = g.alphabet;
    const uint64_t total = checked_pow(static_cast<uint64_t>(a), hot_dep.size(), cap,
                                       "physical_prior");
    uint64_t count = 0;
    for (uint64_t r = 0; r < total; ++r) {
        FullState s = FullState::zeros(g);
        s.set(Configuration{hot_dep, config_from_rank(r, hot_dep.size(), a)});
        if (restrict_to(evolve(s, rule, t), c.region) == c) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(total);
}

ProbabilityEstimate physical_prior_mc(const Rule& rule, const SplitSpec& split,
                                      const Configuration& c, int t, uint64_t n, uint64_t seed,
                                      int workers) {
    split.validate();
    const Geometry& g = split.geom;
    if (!light_cone_valid(g, c.region, t, rule.radius()))
        throw LightConeError("physical_prior: (region, t) not light-cone valid");
    const uint64_t blocks = (n + kSampleBlock - 1) / kSampleBlock;
    std::vector<uint64_t> block_hits(blocks, 0);
    std::atomic<uint64_t> next_block{0};
    auto run = [&]() {
        for (;;) {
            const uint64_t b = next_block.fetch_add(1);
            if (b >= blocks) return;
            const uint64_t lo = b * kSampleBlock;
            const uint64_t hi = std::min(n, lo + kSampleBlock);
            uint64_t hits = 0;
            for (uint64_t i = lo; i < hi; ++i) {
                FullState s = sample_initial_state(split, substream_seed(seed, b) ^ (i - lo));
                if (restrict_to(evolve(s, rule, t), c.region) == c) ++hits;
            }
            block_hits[b] = hits;
        }
    };
    if (workers <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run);
        for (auto& th : pool) th.join();
    }
    uint64_t hits = 0;
    for (uint64_t h : block_hits) hits += h;
    return wilson_estimate(hits, n, seed);
}

int integer_code_length(uint64_t t) {
    int bits = 0;
    for (uint64_t v = t + 1; v > 1; v >>= 1) ++bits;
    return 2 * bits + 1;
}

namespace {

const Region& target_region(const ComplexityTarget& t) {
    if (std::holds_alternative<Configuration>(t)) return std::get<Configuration>(t).region;
    return std::get<MapTarget>(t).region;
}

// Robust verification of one (R_M, c_M, t) candidate.
bool complexity_candidate_ok(const Rule& rule, const SplitSpec& split,
                             const ComplexityTarget& target, const Region& r_m,
                             const std::vector<Sym>& c_m, int t, uint64_t cap) {
    const Geometry& g = split.geom;
    const Region& reg = target_region(target);
    const Region dep = rule.dependency(reg, t, g);
    const bool is_map_target = std::holds_alternative<MapTarget>(target);
    // For configuration targets the hot part of the target region is
    // quantified like the rest of the hot band; for map targets it carries
    // the quantified input c_i instead.
    std::vector<Coord> hot_free_cells;
    for (const auto& cell : dep.cells)
        if (split.is_hot(cell) && !r_m.contains(cell) &&
            !(is_map_target && reg.contains(cell)))
            hot_free_cells.push_back(cell);
    const Region hot_free{std::move(hot_free_cells)};
    const int a = g.alphabet;
    const uint64_t free_total = checked_pow(static_cast<uint64_t>(a), hot_free.size(), cap,
                                            "complexity verification");
    const uint64_t inputs = is_map_target
        ? checked_pow(static_cast<uint64_t>(a), reg.size(), cap, "complexity map inputs")
        : 1;
    for (uint64_t fr = 0; fr < free_total; ++fr) {
        for (uint64_t ir = 0; ir < inputs; ++ir) {
            FullState s = FullState::zeros(g);  // cold band zeroed
            s.set(Configuration{r_m, c_m});
            s.set(Configuration{hot_free, config_from_rank(fr, hot_free.size(), a)});
            if (is_map_target) s.set(Configuration{reg, config_from_rank(ir, reg.size(), a)});
            const auto out = restrict_to(evolve(s, rule, t), reg).symbols;
            if (is_map_target) {
                if (out != std::get<MapTarget>(target).map[ir]) return false;
            } else {
                if (out != std::get<Configuration>(target).symbols) return false;
            }
        }
    }
    return true;
}

}  // namespace

ComplexityResult physical_complexity(const Rule& rule, const SplitSpec& split,
                                     const ComplexityTarget& target,
                                     const ComplexityBounds& bounds) {
    split.validate();
    const Geometry& g = split.geom;
    const Region& reg = target_region(target);
    if (!light_cone_valid(g, reg, bounds.max_time, rule.radius()))
        throw LightConeError("physical_complexity: (region, T) not light-cone valid");
    std::vector<Coord> pool_cells;
    for (const auto& cell : bounds.window.cells)
        if (split.is_hot(cell) && !reg.contains(cell)) pool_cells.push_back(cell);
    const Region pool{std::move(pool_cells)};
    const int a = g.alphabet;
    const double log2a = std::log2(static_cast<double>(a));

    std::optional<ComplexityCertificate> best;
    uint64_t tested = 0;
    const int max_m = std::min<int>(bounds.max_program_cells, static_cast<int>(pool.size()));
    for (int m = 0; m <= max_m; ++m) {
        if (best && static_cast<double>(m) * log2a + 1.0 > best->value + 1e-12) break;
        // combinations of pool cells, lexicographic
        std::vector<size_t> idx(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) idx[static_cast<size_t>(i)] = static_cast<size_t>(i);
        bool more = m <= static_cast<int>(pool.size());
        if (m == 0) more = true;
        while (more) {
            std::vector<Coord> cells;
            for (size_t i : idx) cells.push_back(pool.cells[i]);
            const Region r_m{std::move(cells)};
            const uint64_t cfg_total = checked_pow(static_cast<uint64_t>(a), r_m.size(),
                                                   bounds.cap, "complexity programs");
            for (uint64_t cr = 0; cr < cfg_total; ++cr) {
                const auto c_m = config_from_rank(cr, r_m.size(), a);
                for (int t = 0; t <= bounds.max_time; ++t) {
                    const double cost = static_cast<double>(m) * log2a +
                                        static_cast<double>(integer_code_length(static_cast<uint64_t>(t)));
                    if (best && cost > best->value + 1e-12) continue;
                    if (best && std::abs(cost - best->value) <= 1e-12 && t >= best->t) continue;
                    ++tested;
                    if (complexity_candidate_ok(rule, split, target, r_m, c_m, t, bounds.cap)) {
                        best = ComplexityCertificate{r_m, c_m, t, cost};
                    }
                }
            }
            // next combination
            if (m == 0) break;
            int i = m - 1;
            while (i >= 0 && idx[static_cast<size_t>(i)] ==
                                 pool.size() - static_cast<size_t>(m - i)) --i;
            if (i < 0) break;
            ++idx[static_cast<size_t>(i)];
            for (int j = i + 1; j < m; ++j)
                idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
        }
    }
    if (best) return *best;
    return NotFoundWithinBounds{bounds.max_time, bounds.window, tested};
}

bool verify_complexity_certificate(const Rule& rule, const SplitSpec& split,
                                   const ComplexityTarget& target,
                                   const ComplexityCertificate& cert, uint64_t cap) {
    for (const auto& cell : cert.program_region.cells)
        if (!split.is_hot(cell)) return false;
    return complexity_candidate_ok(rule, split, target, cert.program_region, cert.program,
                                   cert.t, cap);
}

PriorBoundReport check_complexity_prior_bound(const Rule& rule, const SplitSpec& split,
                                              const Configuration& c,
                                              const ComplexityBounds& bounds) {
    PriorBoundReport rep;
    const auto result = physical_complexity(rule, split, ComplexityTarget{c}, bounds);
    if (found_complexity(result)) rep.complexity = std::get<ComplexityCertificate>(result).value;
    double best = std::numeric_limits<double>::infinity();
    int best_t = 0;
    for (int t = 0; t <= bounds.max_time; ++t) {
        const double p = physical_prior_exact(rule, split, c, t, bounds.cap);
        if (p <= 0.0) continue;
        const double v = -std::log2(p) + integer_code_length(static_cast<uint64_t>(t));
        if (v < best) {
            best = v;
            best_t = t;
        }
    }
    rep.prior_bound = best;
    rep.bound_t = best_t;
    rep.computable = rep.complexity.has_value() && std::isfinite(best);
    if (rep.computable) rep.holds = *rep.complexity + 1e-9 >= best;
    return rep;
}

KraftReport kraft_check(const Rule& rule, const SplitSpec& split,
                        const std::vector<Configuration>& mutually_exclusive,
                        const ComplexityBounds& bounds) {
    // mutual exclusivity: each pair must conflict somewhere on their overlap
    for (size_t i = 0; i < mutually_exclusive.size(); ++i)
        for (size_t j = i + 1; j < mutually_exclusive.size(); ++j) {
            const auto& ci = mutually_exclusive[i];
            const auto& cj = mutually_exclusive[j];
            const Region overlap = region_intersection(ci.region, cj.region);
            if (overlap.size() == 0 || restrict_to(ci, overlap) == restrict_to(cj, overlap))
                throw ConfigError("kraft_check: configurations are not mutually exclusive");
        }
    KraftReport rep;
    rep.total = mutually_exclusive.size();
    for (const auto& c : mutually_exclusive) {
        const auto result = physical_complexity(rule, split, ComplexityTarget{c}, bounds);
        if (found_complexity(result)) {
            ++rep.found;
            rep.sum += std::exp2(-std::get<ComplexityCertificate>(result).value);
        }
    }
    rep.holds = rep.sum <= 1.0 + 1e-12;
    return rep;
}

CycleCostReport cycle_cost(const Rule& rule, const Geometry& g, const Configuration& c, int tau,
                           int k, std::optional<std::pair<int, int>> tau_window, uint64_t cap) {
    if (tau <= 0 || k <= 0) throw ConfigError("cycle_cost: tau and k must be positive");
    auto fk = [&](int tau_) -> std::optional<double> {
        const int horizon = (k - 1) * tau_;
        if (!light_cone_valid(g, c.region, horizon, rule.radius()))
            throw LightConeError("cycle_cost: horizon not light-cone valid");
        CylinderSet acc = canonicalize(CylinderSet::single(c), g.alphabet);
        CylinderSet pre = acc;
        for (int j = 1; j < k; ++j) {
            pre = preimage(rule, g, pre, tau_, cap);
            acc = cylinder_intersection(acc, pre, g.alphabet, cap);
            if (acc.members.empty()) return std::nullopt;
        }
        return free_energy(acc, g.alphabet);
    };
    CycleCostReport rep;
    rep.c = c;
    rep.tau = tau;
    rep.k = k;
    rep.free_energy_bits = fk(tau);
    if (tau_window) {
        double sum = 0.0;
        bool all_finite = true;
        int count = 0;
        for (int t = tau_window->first; t <= tau_window->second; ++t) {
            const auto f = fk(t);
            if (!f) {
                all_finite = false;
                break;
            }
            sum += *f;
            ++count;
        }
        if (all_finite && count > 0) rep.averaged = sum / count;
    }
    return rep;
}

InfluxReport entropy_influx_experiment(const Rule& rule, const Geometry& g, const Region& region,
                                       const Coord& x, const Region& program_region,
                                       const Configuration& c_p, int t, uint64_t cap) {
    const Region shifted = translate(region, x, g);
    if (!region.disjoint_with(shifted))
        throw ConfigError("entropy_influx: R and R+x must be disjoint");
    if (!light_cone_valid(g, shifted, t, rule.radius()) ||
        !light_cone_valid(g, region, t, rule.radius()))
        throw LightConeError("entropy_influx: (R, t) not light-cone valid");
    const int a = g.alphabet;

    // expected content of R+x: the translated copy of c on R
    std::vector<size_t> out_pos(region.size());
    for (size_t i = 0; i < region.size(); ++i) {
        Coord y = region.cells[i];
        for (size_t kk = 0; kk < y.size(); ++kk) y[kk] += x[kk];
        out_pos[i] = static_cast<size_t>(shifted.index_of(g.wrap(y)));
    }

    // transfer certificate check over all c in A^R and all unpinned cone cells
    const Region dep = rule.dependency(shifted, t, g);
    const Region pinned = region_union(region, program_region);
    const Region free_cells = region_difference(dep, pinned);
    const uint64_t free_total = checked_pow(static_cast<uint64_t>(a), free_cells.size(), cap,
                                            "influx transfer check");
    const uint64_t inputs = checked_pow(static_cast<uint64_t>(a), region.size(), cap,
                                        "influx inputs");
    bool verified = true;
    for (uint64_t fr = 0; fr < free_total && verified; ++fr) {
        for (uint64_t ir = 0; ir < inputs && verified; ++ir) {
            const auto in_syms = config_from_rank(ir, region.size(), a);
            FullState s = FullState::zeros(g);
            s.set(c_p);
            s.set(Configuration{free_cells, config_from_rank(fr, free_cells.size(), a)});
            s.set(Configuration{region, in_syms});
            const auto out = restrict_to(evolve(s, rule, t), shifted).symbols;
            for (size_t i = 0; i < region.size(); ++i)
                if (out[out_pos[i]] != in_syms[i]) {
                    verified = false;
                    break;
                }
        }
    }

    // entropy of R at time t under nu = point mass on R x uniform elsewhere
    const Region window = region_union(rule.dependency(region, t, g), region);
    const Configuration zero_r{region, std::vector<Sym>(region.size(), 0)};
    const RegionDistribution dist =
        pushforward(DistSpec{zero_r}, region_difference(window, region), rule, g, t, region, cap);
    InfluxReport rep;
    rep.transfer_verified = verified;
    rep.measured_entropy_bits = marginal_entropy(dist, region, a);
    rep.bound_bits = static_cast<double>(region.size()) /
                     std::pow(static_cast<double>(a), static_cast<double>(program_region.size())) *
                     std::log2(static_cast<double>(a));
    rep.holds = verified && rep.measured_entropy_bits + 1e-9 >= rep.bound_bits;
    return rep;
}

MixingReport weak_mixing_exact(const Rule& rule, const Geometry& g,
                               const std::vector<CylinderSet>& sets, int horizon, uint64_t cap) {
    if (sets.size() < 2) throw ConfigError("weak_mixing: need at least two sets");
    MixingReport rep;
    rep.product = 1.0;
    for (const auto& s : sets) rep.product *= cylinder_measure(s, g.alphabet);
    std::vector<CylinderSet> cur;
    cur.reserve(sets.size());
    for (const auto& s : sets) cur.push_back(canonicalize(s, g.alphabet));
    std::vector<int> applied(sets.size(), 0);
    double sum = 0.0;
    for (int j = 0; j < horizon; ++j) {
        CylinderSet acc = cur[0];
        for (size_t i = 1; i < sets.size(); ++i) {
            const int need = static_cast<int>(i) * j;
            while (applied[i] < need) {
                cur[i] = preimage_step(rule, g, cur[i], cap);
                ++applied[i];
            }
            acc = cylinder_intersection(acc, cur[i], g.alphabet, cap);
        }
        const double term = cylinder_measure(acc, g.alphabet);
        rep.terms.push_back(term);
        sum += term;
    }
    rep.average = sum / static_cast<double>(horizon);
    rep.gap = std::abs(rep.average - rep.product);
    return rep;
}

MixingReport weak_mixing_mc(const Rule& rule, const Geometry& g,
                            const std::vector<CylinderSet>& sets, int horizon, uint64_t n,
                            uint64_t seed) {
    if (sets.size() < 2) throw ConfigError("weak_mixing: need at least two sets");
    MixingReport rep;
    rep.product = 1.0;
    for (const auto& s : sets) rep.product *= cylinder_measure(s, g.alphabet);
    double sum = 0.0;
    for (int j = 0; j < horizon; ++j) {
        uint64_t hits = 0;
        for (uint64_t i = 0; i < n; ++i) {
            FullState s = random_state(g, substream_seed(seed ^ static_cast<uint64_t>(j), i));
            bool in_all = true;
            FullState cur = s;
            int applied = 0;
            for (size_t si = 0; si < sets.size() && in_all; ++si) {
                const int need = static_cast<int>(si) * j;
                while (applied < need) {
                    cur = step(cur, rule, Direction::forward);
                    ++applied;
                }
                const auto obs = restrict_to(cur, sets[si].region).symbols;
                in_all = std::binary_search(sets[si].members.begin(), sets[si].members.end(), obs);
            }
            if (in_all) ++hits;
        }
        const double term = static_cast<double>(hits) / static_cast<double>(n);
        rep.terms.push_back(term);
        sum += term;
    }
    rep.average = sum / static_cast<double>(horizon);
    rep.gap = std::abs(rep.average - rep.product);
    return rep;
}

}  // namespace cab
