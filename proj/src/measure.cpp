#include "cab/measure.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "cab/rng.hpp"

namespace cab {

namespace {

constexpr uint64_t kSampleBlock = 1024;  // fixed block size keeps merged MC results
                                         // independent of the worker count

uint64_t checked_pow(uint64_t base, size_t exp, uint64_t cap, const char* what) {
    uint64_t r = 1;
    while (exp--) {
        r *= base;
        if (r > cap) throw CapExceeded(std::string(what) + ": enumeration exceeds cap");
    }
    return r;
}

}  // namespace

CylinderSet CylinderSet::of(const Region& r, std::vector<std::vector<Sym>> members) {
    for (const auto& m : members)
        if (m.size() != r.size()) throw ConfigError("cylinder set: member length != region size");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return CylinderSet{r, std::move(members)};
}

CylinderSet CylinderSet::single(const Configuration& c) {
    return CylinderSet{c.region, {c.symbols}};
}

CylinderSet CylinderSet::full(const Region& r, int alphabet) {
    uint64_t total = checked_pow(static_cast<uint64_t>(alphabet), r.size(),
                                 kDefaultEnumerationCap, "cylinder full");
    std::vector<std::vector<Sym>> members;
    members.reserve(total);
    for (uint64_t i = 0; i < total; ++i) members.push_back(config_from_rank(i, r.size(), alphabet));
    return CylinderSet{r, std::move(members)};
}

void RegionDistribution::validate(double tol) const {
    double sum = 0.0;
    for (double p : probabilities) {
        if (p < 0.0) throw InvariantViolation("distribution: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > tol) throw InvariantViolation("distribution: not normalized");
}

ProbabilityEstimate wilson_estimate(uint64_t successes, uint64_t n, uint64_t seed) {
    const double z = 1.959963984540054;
    const double nn = static_cast<double>(n);
    const double p = n ? static_cast<double>(successes) / nn : 0.0;
    ProbabilityEstimate e;
    e.p_hat = p;
    e.n = n;
    e.seed = seed;
    if (n == 0) return e;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double hw = (z / denom) * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
    e.half_width = hw;
    e.lo = std::max(0.0, center - hw);
    e.hi = std::min(1.0, center + hw);
    return e;
}

double cylinder_measure(const CylinderSet& b, int alphabet) {
    return static_cast<double>(b.members.size()) *
           std::pow(static_cast<double>(alphabet), -static_cast<double>(b.region.size()));
}

std::optional<double> free_energy(const CylinderSet& b, int alphabet) {
    if (b.members.empty()) return std::nullopt;
    return static_cast<double>(b.region.size()) * std::log2(static_cast<double>(alphabet)) -
           std::log2(static_cast<double>(b.members.size()));
}

std::optional<double> prep_free_energy(const Rule& rule, const Geometry& g,
                                       const Configuration& c_i, const Configuration& c_f,
                                       int t, const Region& window, uint64_t cap) {
    if (!light_cone_valid(g, c_f.region, t, rule.radius()))
        throw LightConeError("prep_free_energy: (c_f, t) not light-cone valid");
    const Region needed = region_union(rule.dependency(c_f.region, t, g), c_i.region);
    if (!needed.subset_of(window))
        throw ConfigError("prep_free_energy: window must cover c_i and the dependency of c_f");
    const Region free_cells = region_difference(window, c_i.region);
    const int a = g.alphabet;
    const uint64_t total = checked_pow(static_cast<uint64_t>(a), free_cells.size(), cap,
                                       "prep_free_energy");
    FullState base = FullState::zeros(g);
    base.set(c_i);
    uint64_t count = 0;
    for (uint64_t r = 0; r < total; ++r) {
        FullState s = base;
        s.set(Configuration{free_cells, config_from_rank(r, free_cells.size(), a)});
        if (restrict_to(evolve(s, rule, t), c_f.region) == c_f) ++count;
    }
    if (count == 0) return std::nullopt;
    return static_cast<double>(window.size()) * std::log2(static_cast<double>(a)) -
           std::log2(static_cast<double>(count));
}

double marginal_entropy(const RegionDistribution& dist, const Region& subregion, int alphabet) {
    if (!subregion.subset_of(dist.region))
        throw ConfigError("marginal_entropy: subregion not contained in distribution region");
    const size_t m = subregion.size();
    const uint64_t bins = checked_pow(static_cast<uint64_t>(alphabet), m,
                                      kDefaultEnumerationCap, "marginal_entropy");
    std::vector<double> marg(bins, 0.0);
    std::vector<size_t> pick;  // positions of subregion cells within dist.region order
    pick.reserve(m);
    for (const auto& c : subregion.cells) pick.push_back(static_cast<size_t>(dist.region.index_of(c)));
    for (uint64_t r = 0; r < dist.probabilities.size(); ++r) {
        if (dist.probabilities[r] == 0.0) continue;
        const auto syms = config_from_rank(r, dist.region.size(), alphabet);
        uint64_t sub = 0;
        for (size_t p : pick) sub = sub * static_cast<uint64_t>(alphabet) + syms[p];
        marg[sub] += dist.probabilities[r];
    }
    double h = 0.0;
    for (double p : marg)
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

RegionDistribution pushforward(const DistSpec& spec, const Region& window, const Rule& rule,
                               const Geometry& g, int t, const Region& target, uint64_t cap) {
    // No light-cone requirement: the coverage check below makes the result
    // exact for the torus dynamics even when the cone wraps.
    const Region fixed_region = spec.fixed ? spec.fixed->region : Region::empty();
    const Region dep = rule.dependency(target, t, g);
    if (!region_difference(dep, fixed_region).subset_of(window))
        throw ConfigError("pushforward: window does not cover the dependency of target");
    const Region free_cells = region_difference(window, fixed_region);
    const int a = g.alphabet;
    const uint64_t total = checked_pow(static_cast<uint64_t>(a), free_cells.size(), cap,
                                       "pushforward");
    const uint64_t bins = checked_pow(static_cast<uint64_t>(a), target.size(), cap, "pushforward");
    std::vector<double> probs(bins, 0.0);
    FullState base = FullState::zeros(g);
    if (spec.fixed) base.set(*spec.fixed);
    const double w = 1.0 / static_cast<double>(total);
    for (uint64_t r = 0; r < total; ++r) {
        FullState s = base;
        s.set(Configuration{free_cells, config_from_rank(r, free_cells.size(), a)});
        probs[config_rank(restrict_to(evolve(s, rule, t), target).symbols, a)] += w;
    }
    return RegionDistribution{target, std::move(probs)};
}

ProbabilityEstimate estimate_event_probability(const DistSpec& spec, const Rule& rule,
                                               const Geometry& g, int t, const CylinderSet& event,
                                               uint64_t n, uint64_t seed, int workers) {
    if (!light_cone_valid(g, event.region, t, rule.radius()))
        throw LightConeError("estimate_event_probability: (event, t) not light-cone valid");
    const uint64_t blocks = (n + kSampleBlock - 1) / kSampleBlock;
    std::vector<uint64_t> block_hits(blocks, 0);
    std::atomic<uint64_t> next_block{0};
    auto run = [&]() {
        for (;;) {
            const uint64_t b = next_block.fetch_add(1);
            if (b >= blocks) return;
            SplitMix64 rng(substream_seed(seed, b));
            const uint64_t lo = b * kSampleBlock;
            const uint64_t hi = std::min(n, lo + kSampleBlock);
            uint64_t hits = 0;
            for (uint64_t i = lo; i < hi; ++i) {
                FullState s = FullState::zeros(g);
                for (auto& c : s.cells)
                    c = static_cast<Sym>(rng.bounded(static_cast<uint32_t>(g.alphabet)));
                if (spec.fixed) s.set(*spec.fixed);
                const auto out = restrict_to(evolve(s, rule, t), event.region).symbols;
                if (std::binary_search(event.members.begin(), event.members.end(), out)) ++hits;
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

CylinderSet canonicalize(const CylinderSet& s, int alphabet) {
    CylinderSet cur = CylinderSet::of(s.region, s.members);
    bool changed = true;
    while (changed && cur.region.size() > 0) {
        changed = false;
        for (size_t pos = 0; pos < cur.region.size(); ++pos) {
            // cell removable iff membership never depends on its symbol
            std::vector<std::vector<Sym>> reduced;
            reduced.reserve(cur.members.size());
            for (const auto& m : cur.members) {
                std::vector<Sym> r(m);
                r.erase(r.begin() + static_cast<long>(pos));
                reduced.push_back(std::move(r));
            }
            std::sort(reduced.begin(), reduced.end());
            bool removable = reduced.size() % static_cast<size_t>(alphabet) == 0;
            if (removable) {
                for (size_t i = 0; i < reduced.size(); i += static_cast<size_t>(alphabet)) {
                    for (size_t k = 1; k < static_cast<size_t>(alphabet); ++k)
                        if (reduced[i + k] != reduced[i]) { removable = false; break; }
                    if (!removable) break;
                }
            }
            if (!removable) continue;
            reduced.erase(std::unique(reduced.begin(), reduced.end()), reduced.end());
            std::vector<Coord> cells = cur.region.cells;
            cells.erase(cells.begin() + static_cast<long>(pos));
            cur = CylinderSet{Region{std::move(cells)}, std::move(reduced)};
            changed = true;
            break;
        }
    }
    return cur;
}

CylinderSet preimage_step(const Rule& rule, const Geometry& g, const CylinderSet& s, uint64_t cap) {
    const Region dep = rule.dependency(s.region, 1, g);
    const int a = g.alphabet;
    const uint64_t total = checked_pow(static_cast<uint64_t>(a), dep.size(), cap, "preimage_step");
    if (!light_cone_valid(g, s.region, 1, rule.radius()))
        throw LightConeError("preimage_step: region too large for this torus");
    std::vector<std::vector<Sym>> members;
    FullState base = FullState::zeros(g);
    for (uint64_t r = 0; r < total; ++r) {
        const auto syms = config_from_rank(r, dep.size(), a);
        FullState st = base;
        st.set(Configuration{dep, syms});
        const auto out = restrict_to(step(st, rule, Direction::forward), s.region).symbols;
        if (std::binary_search(s.members.begin(), s.members.end(), out)) members.push_back(syms);
    }
    return canonicalize(CylinderSet{dep, std::move(members)}, a);
}

CylinderSet preimage(const Rule& rule, const Geometry& g, const CylinderSet& s, int t,
                     uint64_t cap) {
    CylinderSet cur = s;
    for (int i = 0; i < t; ++i) cur = preimage_step(rule, g, cur, cap);
    return cur;
}

CylinderSet cylinder_intersection(const CylinderSet& a, const CylinderSet& b, int alphabet,
                                  uint64_t cap) {
    const Region u = region_union(a.region, b.region);
    const uint64_t total = checked_pow(static_cast<uint64_t>(alphabet), u.size(), cap,
                                       "cylinder_intersection");
    std::vector<size_t> pa, pb;
    for (const auto& c : a.region.cells) pa.push_back(static_cast<size_t>(u.index_of(c)));
    for (const auto& c : b.region.cells) pb.push_back(static_cast<size_t>(u.index_of(c)));
    std::vector<std::vector<Sym>> members;
    for (uint64_t r = 0; r < total; ++r) {
        const auto syms = config_from_rank(r, u.size(), alphabet);
        std::vector<Sym> sa, sb;
        sa.reserve(pa.size());
        sb.reserve(pb.size());
        for (size_t p : pa) sa.push_back(syms[p]);
        for (size_t p : pb) sb.push_back(syms[p]);
        if (std::binary_search(a.members.begin(), a.members.end(), sa) &&
            std::binary_search(b.members.begin(), b.members.end(), sb))
            members.push_back(syms);
    }
    return CylinderSet{u, std::move(members)};
}

}  // namespace cab
