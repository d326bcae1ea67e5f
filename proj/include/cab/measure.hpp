#pragma once

#include <optional>

#include "cab/engine.hpp"

namespace cab {

/// A region plus a set of configurations on it; denotes the set of global
/// states agreeing with some member on the region.
struct CylinderSet {
    Region region;
    std::vector<std::vector<Sym>> members;  // sorted, unique

    static CylinderSet of(const Region& r, std::vector<std::vector<Sym>> members);
    static CylinderSet single(const Configuration& c);
    static CylinderSet full(const Region& r, int alphabet);

    bool operator==(const CylinderSet&) const = default;
};

/// Explicit probability table over A^region, indexed by configuration rank.
struct RegionDistribution {
    Region region;
    std::vector<double> probabilities;

    void validate(double tol = 1e-12) const;
};

/// Frequency estimate with a Wilson 95% interval.
struct ProbabilityEstimate {
    double p_hat = 0.0;
    uint64_t n = 0;
    uint64_t seed = 0;
    double half_width = 0.0;
    double lo = 0.0;
    double hi = 1.0;
};

ProbabilityEstimate wilson_estimate(uint64_t successes, uint64_t n, uint64_t seed);

double cylinder_measure(const CylinderSet& b, int alphabet);

/// -log2 of the cylinder measure, in bits; nullopt means the set is empty
/// (F = infinity, the "impossible" outcome).
std::optional<double> free_energy(const CylinderSet& b, int alphabet);

/// Exact free energy of the preparation process c_i -> c_f after t steps:
/// -log2 mu(cyl(c_i) intersect alpha_t^{-1}(cyl(c_f))), enumerated over the
/// window. The window must cover c_i's region and the dependency of c_f.
std::optional<double> prep_free_energy(const Rule& rule, const Geometry& g,
                                       const Configuration& c_i, const Configuration& c_f,
                                       int t, const Region& window,
                                       uint64_t cap = kDefaultEnumerationCap);

double marginal_entropy(const RegionDistribution& dist, const Region& subregion, int alphabet);

/// Initial distribution: an optional fixed configuration, i.i.d. uniform on
/// every other cell of the window (exact modes) or of the torus (sampling).
struct DistSpec {
    std::optional<Configuration> fixed;
};

/// Exact distribution of evolve(., t)|_target when spec.fixed is pinned and
/// the rest of `window` is uniform; cells outside the window are zeroed and
/// must not influence the target (window covers the target's dependency).
RegionDistribution pushforward(const DistSpec& spec, const Region& window, const Rule& rule,
                               const Geometry& g, int t, const Region& target,
                               uint64_t cap = kDefaultEnumerationCap);

ProbabilityEstimate estimate_event_probability(const DistSpec& spec, const Rule& rule,
                                               const Geometry& g, int t, const CylinderSet& event,
                                               uint64_t n, uint64_t seed, int workers = 1);

// ---- cylinder-set dynamics -------------------------------------------------

/// Drop cells whose value never affects membership, so preimage regions stay
/// small for rules (like the shift) whose preimages are again thin cylinders.
CylinderSet canonicalize(const CylinderSet& s, int alphabet);

/// The set alpha_1^{-1}(S) = { s : step(s, fwd) in S }, canonicalized.
CylinderSet preimage_step(const Rule& rule, const Geometry& g, const CylinderSet& s,
                          uint64_t cap = kDefaultEnumerationCap);

CylinderSet preimage(const Rule& rule, const Geometry& g, const CylinderSet& s, int t,
                     uint64_t cap = kDefaultEnumerationCap);

CylinderSet cylinder_intersection(const CylinderSet& a, const CylinderSet& b, int alphabet,
                                  uint64_t cap = kDefaultEnumerationCap);

}  // namespace cab
