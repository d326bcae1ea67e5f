#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cab/errors.hpp"

namespace cab {

using Sym = uint8_t;
using Coord = std::vector<int>;

/// Periodic torus geometry: d side lengths plus the cell alphabet size.
struct Geometry {
    std::vector<int> sides;
    int alphabet = 2;

    int dim() const { return static_cast<int>(sides.size()); }
    uint64_t cells() const;
    bool operator==(const Geometry&) const = default;

    int wrap(int v, int axis) const {
        int n = sides[static_cast<size_t>(axis)];
        int r = v % n;
        return r < 0 ? r + n : r;
    }
    Coord wrap(const Coord& c) const;

    uint64_t index(const Coord& c) const;  // row-major over wrapped coords
    Coord coord(uint64_t idx) const;

    void validate() const;  // throws ConfigError
};

/// Ordered set of distinct cells, wrapped to [0, n_i) and sorted
/// lexicographically so the serialized form is unique.
struct Region {
    std::vector<Coord> cells;  // canonical: wrapped, sorted, unique

    static Region of(std::vector<Coord> raw, const Geometry& g);
    static Region single(const Coord& c, const Geometry& g) { return of({c}, g); }
    static Region empty() { return Region{}; }

    size_t size() const { return cells.size(); }
    bool contains(const Coord& c) const;
    /// Index of c in canonical order, or -1.
    long index_of(const Coord& c) const;
    bool subset_of(const Region& other) const;
    bool disjoint_with(const Region& other) const;
    bool operator==(const Region&) const = default;
};

Region region_union(const Region& a, const Region& b);
Region region_difference(const Region& a, const Region& b);
Region region_intersection(const Region& a, const Region& b);
Region translate(const Region& r, const Coord& v, const Geometry& g);

/// Symbols assigned to a region, one per cell in region order.
struct Configuration {
    Region region;
    std::vector<Sym> symbols;

    bool operator==(const Configuration&) const = default;
};

Configuration make_configuration(const Region& r, std::vector<Sym> symbols, const Geometry& g);

/// Rank of a configuration's symbol string, first cell most significant, so
/// numeric order equals lexicographic order of the string.
uint64_t config_rank(const std::vector<Sym>& symbols, int alphabet);
std::vector<Sym> config_from_rank(uint64_t rank, size_t len, int alphabet);

/// One symbol per torus cell, row-major.
struct FullState {
    Geometry geom;
    std::vector<Sym> cells;

    static FullState zeros(const Geometry& g);
    static FullState from_rank(uint64_t rank, const Geometry& g);
    uint64_t rank() const;

    Sym at(const Coord& c) const { return cells[geom.index(c)]; }
    void set(const Coord& c, Sym v) { cells[geom.index(c)] = v; }
    void set(const Configuration& cfg);

    bool operator==(const FullState&) const = default;
};

Region moore_neighborhood(const Region& region, int radius, const Geometry& g);

Configuration restrict_to(const FullState& s, const Region& r);
Configuration restrict_to(const Configuration& c, const Region& r);

/// True iff the radius-(radius*t) dependence neighborhood of the region does
/// not self-overlap through the torus on any axis; then finite-torus
/// evolution of the region over t steps matches the infinite lattice.
bool light_cone_valid(const Geometry& g, const Region& region, int t, int radius = 1);

/// Minimal circular extent of the region's coordinates along one axis.
int region_extent(const Region& region, int axis, const Geometry& g);

std::string symbols_to_string(const std::vector<Sym>& symbols);
std::vector<Sym> symbols_from_string(const std::string& s, int alphabet);

}  // namespace cab
