#pragma once

#include <variant>

#include "cab/measure.hpp"

namespace cab {

/// What happens to cells of the light cone that are neither the target region
/// nor the search window: pinned to zero, or quantified like c_i.
enum class BackgroundPolicy { zero, enumerate_all };

struct PreparationTask {
    Region region;                        // R
    std::optional<Configuration> c_i;     // conditional: fixed initial content
    Configuration c_f;
    int max_time = 0;                     // T
    Region window;                        // W, disjoint from R
    BackgroundPolicy policy = BackgroundPolicy::zero;
};

struct BijectionTask {
    Region region;
    std::vector<std::vector<Sym>> map;    // pi, indexed by input config rank
    int max_time = 0;
    Region window;
    BackgroundPolicy policy = BackgroundPolicy::zero;
};

enum class CertificateKind { cond_prep, uncond_prep, map };

struct Certificate {
    CertificateKind kind = CertificateKind::cond_prep;
    Region program_region;    // window cells inside the dependency cone
    std::vector<Sym> program;
    int t = 0;
    uint64_t verification_hash = 0;
};

struct NotFoundWithinBounds {
    int max_time = 0;
    Region window;
    uint64_t candidates_tested = 0;
};

using SearchResult = std::variant<Certificate, NotFoundWithinBounds>;

bool found(const SearchResult& r);
const Certificate& certificate(const SearchResult& r);

SearchResult search_conditional_prep(const Rule& rule, const Geometry& g,
                                     const PreparationTask& task,
                                     uint64_t cap = kDefaultEnumerationCap);
SearchResult search_unconditional_prep(const Rule& rule, const Geometry& g,
                                       const PreparationTask& task,
                                       uint64_t cap = kDefaultEnumerationCap);
SearchResult search_map(const Rule& rule, const Geometry& g, const BijectionTask& task,
                        uint64_t cap = kDefaultEnumerationCap);

/// Independent re-simulation of a returned certificate over all quantified
/// inputs; true iff the certified claim reproduces exactly.
bool verify_certificate(const Rule& rule, const Geometry& g, const PreparationTask& task,
                        const Certificate& cert, bool unconditional);
bool verify_certificate(const Rule& rule, const Geometry& g, const BijectionTask& task,
                        const Certificate& cert);

/// A configuration c of R with alpha_1(e, c)|_x != c|_x for every environment
/// e; checkable locally because R covers the one-step dependency of x.
std::optional<Configuration> instability_witness(const Rule& rule, const Geometry& g,
                                                 const Region& region, const Coord& x,
                                                 uint64_t cap = kDefaultEnumerationCap);

struct PersistenceReport {
    bool held = true;
    int first_deviation_t = 0;
    std::optional<Configuration> witness_environment;
    int horizon = 0;
};

/// Adversarial probe: searches assignments of the light-cone frontier outside
/// R and R_p for the earliest time at which R deviates from c_f.
PersistenceReport persistence_probe(const Rule& rule, const Geometry& g, const Region& region,
                                    const Region& program_region, const Configuration& c_p,
                                    const Configuration& c_f, int horizon,
                                    uint64_t cap = kDefaultEnumerationCap);

}  // namespace cab
