#pragma once

#include "cab/universality.hpp"

namespace cab {

/// Hot/cold split of the torus into two contiguous bands along one axis:
/// cold cells (coordinate < boundary) start all-zero, hot cells start
/// i.i.d. uniform.
struct SplitSpec {
    Geometry geom;
    int axis = 0;
    int boundary = 0;  // cold band is [0, boundary), hot band [boundary, n)

    void validate() const;
    bool is_hot(const Coord& c) const { return c[static_cast<size_t>(axis)] >= boundary; }
    Region hot_cells() const;
    Region cold_cells() const;
};

FullState sample_initial_state(const SplitSpec& split, uint64_t seed);

/// Exact P_t(c): probability that the evolved hot/cold initial state shows c
/// on c.region at time t, by enumerating the hot cells of the light cone.
double physical_prior_exact(const Rule& rule, const SplitSpec& split, const Configuration& c,
                            int t, uint64_t cap = kDefaultEnumerationCap);

ProbabilityEstimate physical_prior_mc(const Rule& rule, const SplitSpec& split,
                                      const Configuration& c, int t, uint64_t n, uint64_t seed,
                                      int workers = 1);

/// Elias-gamma code length of t+1; satisfies Kraft with equality.
int integer_code_length(uint64_t t);

struct ComplexityBounds {
    int max_time = 0;              // T
    Region window;                 // candidate program cells: window cap hot band
    int max_program_cells = 0;
    uint64_t cap = kDefaultEnumerationCap;
};

struct ComplexityCertificate {
    Region program_region;        // R_M, inside the hot band
    std::vector<Sym> program;     // c_M
    int t = 0;
    double value = 0.0;           // |R_M| log2 a + l(t)
};

using ComplexityResult = std::variant<ComplexityCertificate, NotFoundWithinBounds>;

inline bool found_complexity(const ComplexityResult& r) {
    return std::holds_alternative<ComplexityCertificate>(r);
}

struct MapTarget {
    Region region;
    std::vector<std::vector<Sym>> map;  // indexed by input config rank
};

using ComplexityTarget = std::variant<Configuration, MapTarget>;

/// Minimal |R_M| log2 a + l(t) over robust programs: the target must be
/// realized for every assignment of the hot light-cone cells outside R_M,
/// with the cold band zeroed. Tie-break: cost, then t, then (R_M, c_M).
ComplexityResult physical_complexity(const Rule& rule, const SplitSpec& split,
                                     const ComplexityTarget& target,
                                     const ComplexityBounds& bounds);

bool verify_complexity_certificate(const Rule& rule, const SplitSpec& split,
                                   const ComplexityTarget& target,
                                   const ComplexityCertificate& cert,
                                   uint64_t cap = kDefaultEnumerationCap);

struct PriorBoundReport {
    std::optional<double> complexity;        // C, if found within bounds
    double prior_bound = 0.0;                // min_t (-log2 P_t + l(t))
    int bound_t = 0;
    bool computable = false;                 // both sides available
    bool holds = true;
};

PriorBoundReport check_complexity_prior_bound(const Rule& rule, const SplitSpec& split,
                                              const Configuration& c,
                                              const ComplexityBounds& bounds);

struct KraftReport {
    double sum = 0.0;
    size_t found = 0;
    size_t total = 0;
    bool holds = true;  // sum <= 1
};

KraftReport kraft_check(const Rule& rule, const SplitSpec& split,
                        const std::vector<Configuration>& mutually_exclusive,
                        const ComplexityBounds& bounds);

struct CycleCostReport {
    Configuration c;
    int tau = 0;
    int k = 0;
    std::optional<double> free_energy_bits;  // F_k(tau); nullopt = impossible
    std::optional<double> averaged;          // mean F_k over [tau0, tau1] if requested
};

/// Exact F_k(tau) = -log2 mu of the intersection of the k repeat cylinders,
/// via backward cylinder propagation.
CycleCostReport cycle_cost(const Rule& rule, const Geometry& g, const Configuration& c, int tau,
                           int k, std::optional<std::pair<int, int>> tau_window = std::nullopt,
                           uint64_t cap = kDefaultEnumerationCap);

struct InfluxReport {
    bool transfer_verified = false;
    double measured_entropy_bits = 0.0;
    double bound_bits = 0.0;
    bool holds = false;
};

/// Entropy-influx experiment: verify the transfer certificate
/// alpha_t(c_p, c)|_{R+x} = c for all c, then measure the entropy of R at
/// time t under nu = (point mass on R) x (uniform elsewhere in the cone).
InfluxReport entropy_influx_experiment(const Rule& rule, const Geometry& g, const Region& region,
                                       const Coord& x, const Region& program_region,
                                       const Configuration& c_p, int t,
                                       uint64_t cap = kDefaultEnumerationCap);

struct MixingReport {
    std::vector<double> terms;  // mu(intersection) per j < horizon
    double average = 0.0;       // Cesaro average
    double product = 0.0;       // product of the set measures
    double gap = 0.0;
};

/// k-fold weak-mixing diagnostic: term j is the exact measure of
/// S_0 cap phi^{-j}(S_1) cap ... cap phi^{-(k-1)j}(S_{k-1}).
MixingReport weak_mixing_exact(const Rule& rule, const Geometry& g,
                               const std::vector<CylinderSet>& sets, int horizon,
                               uint64_t cap = kDefaultEnumerationCap);

MixingReport weak_mixing_mc(const Rule& rule, const Geometry& g,
                            const std::vector<CylinderSet>& sets, int horizon, uint64_t n,
                            uint64_t seed);

}  // namespace cab
