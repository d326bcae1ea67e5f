#pragma once

#include <optional>
#include <vector>

#include "cab/rules.hpp"

namespace cab {

constexpr uint64_t kDefaultExhaustiveCap = 1ull << 24;
constexpr uint64_t kDefaultEnumerationCap = 1ull << 20;

FullState step(const FullState& s, const Rule& rule, Direction dir);
FullState evolve(const FullState& s, const Rule& rule, long long t);

/// The finite map alpha_t(env, .)|_target with everything outside
/// env.region and region zeroed; valid only when env.region and region
/// cover the t-step dependency of target.
struct InducedMap {
    Region region;       // inputs range over A^region
    Region target;       // outputs are configurations of target
    int t = 0;
    Configuration env;
    std::vector<std::vector<Sym>> table;  // indexed by input config rank

    bool is_identity(int alphabet) const;
    bool is_bijection(int alphabet) const;
};

InducedMap induced_map(const Rule& rule, const Geometry& g, const Configuration& env,
                       const Region& region, const Region& target, int t,
                       uint64_t cap = kDefaultEnumerationCap);

struct SampledMode {
    uint64_t n = 10000;
    uint64_t seed = 0;
};

struct ReversibilityReport {
    bool pass = false;
    uint64_t tested = 0;
    bool exhaustive = false;
    std::optional<FullState> counterexample;  // state with bwd(fwd(s)) != s
};

ReversibilityReport verify_reversibility(const Rule& rule, const Geometry& g,
                                         std::optional<SampledMode> sampled = std::nullopt,
                                         uint64_t cap = kDefaultExhaustiveCap);

struct CovarianceReport {
    enum class Status { ok, rejected_precondition };
    Status status = Status::ok;
    bool pass = false;
    uint64_t tested = 0;
    std::optional<FullState> counterexample;
};

CovarianceReport verify_translation_covariance(const Rule& rule, const Geometry& g,
                                               const Coord& shift_vector,
                                               std::optional<SampledMode> sampled = std::nullopt,
                                               uint64_t cap = kDefaultExhaustiveCap);

FullState translate_state(const FullState& s, const Coord& v);
FullState random_state(const Geometry& g, uint64_t seed);

}  // namespace cab
