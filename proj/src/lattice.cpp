#include "cab/lattice.hpp"

#include <algorithm>
#include <set>

namespace cab {

uint64_t Geometry::cells() const {
    uint64_t n = 1;
    for (int s : sides) n *= static_cast<uint64_t>(s);
    return n;
}

Coord Geometry::wrap(const Coord& c) const {
    Coord out(c.size());
    for (size_t i = 0; i < c.size(); ++i) out[i] = wrap(c[i], static_cast<int>(i));
    return out;
}

uint64_t Geometry::index(const Coord& c) const {
    uint64_t idx = 0;
    for (size_t i = 0; i < sides.size(); ++i)
        idx = idx * static_cast<uint64_t>(sides[i]) + static_cast<uint64_t>(wrap(c[i], static_cast<int>(i)));
    return idx;
}

Coord Geometry::coord(uint64_t idx) const {
    Coord c(sides.size());
    for (size_t i = sides.size(); i-- > 0;) {
        c[i] = static_cast<int>(idx % static_cast<uint64_t>(sides[i]));
        idx /= static_cast<uint64_t>(sides[i]);
    }
    return c;
}

void Geometry::validate() const {
    if (sides.empty()) throw ConfigError("geometry: dimension must be positive");
    for (int s : sides)
        if (s <= 0) throw ConfigError("geometry: side lengths must be positive");
    if (alphabet < 2) throw ConfigError("geometry: alphabet size must be >= 2");
}

Region Region::of(std::vector<Coord> raw, const Geometry& g) {
    for (auto& c : raw) {
        if (static_cast<int>(c.size()) != g.dim())
            throw ConfigError("region: coordinate dimension mismatch");
        c = g.wrap(c);
    }
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    return Region{std::move(raw)};
}

bool Region::contains(const Coord& c) const {
    return std::binary_search(cells.begin(), cells.end(), c);
}

long Region::index_of(const Coord& c) const {
    auto it = std::lower_bound(cells.begin(), cells.end(), c);
    if (it == cells.end() || *it != c) return -1;
    return it - cells.begin();
}

bool Region::subset_of(const Region& other) const {
    return std::includes(other.cells.begin(), other.cells.end(), cells.begin(), cells.end());
}

bool Region::disjoint_with(const Region& other) const {
    for (const auto& c : cells)
        if (other.contains(c)) return false;
    return true;
}

Region region_union(const Region& a, const Region& b) {
    std::vector<Coord> out;
    std::set_union(a.cells.begin(), a.cells.end(), b.cells.begin(), b.cells.end(),
                   std::back_inserter(out));
    return Region{std::move(out)};
}

Region region_difference(const Region& a, const Region& b) {
    std::vector<Coord> out;
    std::set_difference(a.cells.begin(), a.cells.end(), b.cells.begin(), b.cells.end(),
                        std::back_inserter(out));
    return Region{std::move(out)};
}

Region region_intersection(const Region& a, const Region& b) {
    std::vector<Coord> out;
    std::set_intersection(a.cells.begin(), a.cells.end(), b.cells.begin(), b.cells.end(),
                          std::back_inserter(out));
    return Region{std::move(out)};
}

Region translate(const Region& r, const Coord& v, const Geometry& g) {
    std::vector<Coord> out;
    out.reserve(r.size());
    for (const auto& c : r.cells) {
        Coord t(c.size());
        for (size_t i = 0; i < c.size(); ++i) t[i] = c[i] + v[i];
        out.push_back(g.wrap(t));
    }
    std::sort(out.begin(), out.end());
    return Region{std::move(out)};
}

Configuration make_configuration(const Region& r, std::vector<Sym> symbols, const Geometry& g) {
    if (symbols.size() != r.size()) throw ConfigError("configuration: symbol count != region size");
    for (Sym s : symbols)
        if (s >= g.alphabet) throw ConfigError("configuration: symbol out of alphabet");
    return Configuration{r, std::move(symbols)};
}

uint64_t config_rank(const std::vector<Sym>& symbols, int alphabet) {
    uint64_t r = 0;
    for (Sym s : symbols) r = r * static_cast<uint64_t>(alphabet) + s;
    return r;
}

std::vector<Sym> config_from_rank(uint64_t rank, size_t len, int alphabet) {
    std::vector<Sym> out(len);
    for (size_t i = len; i-- > 0;) {
        out[i] = static_cast<Sym>(rank % static_cast<uint64_t>(alphabet));
        rank /= static_cast<uint64_t>(alphabet);
    }
    return out;
}

FullState FullState::zeros(const Geometry& g) {
    return FullState{g, std::vector<Sym>(g.cells(), 0)};
}

FullState FullState::from_rank(uint64_t rank, const Geometry& g) {
    FullState s{g, config_from_rank(rank, g.cells(), g.alphabet)};
    return s;
}

uint64_t FullState::rank() const { return config_rank(cells, geom.alphabet); }

void FullState::set(const Configuration& cfg) {
    for (size_t i = 0; i < cfg.region.size(); ++i)
        set(cfg.region.cells[i], cfg.symbols[i]);
}

Region moore_neighborhood(const Region& region, int radius, const Geometry& g) {
    if (radius < 0) throw ConfigError("moore_neighborhood: radius must be >= 0");
    std::set<Coord> acc;
    const int d = g.dim();
    Coord off(d, -radius);
    for (const auto& c : region.cells) {
        std::fill(off.begin(), off.end(), -radius);
        while (true) {
            Coord y(d);
            for (int i = 0; i < d; ++i) y[i] = c[i] + off[i];
            acc.insert(g.wrap(y));
            int axis = d - 1;
            while (axis >= 0 && off[axis] == radius) off[axis--] = -radius;
            if (axis < 0) break;
            ++off[axis];
        }
    }
    return Region{std::vector<Coord>(acc.begin(), acc.end())};
}

Configuration restrict_to(const FullState& s, const Region& r) {
    std::vector<Sym> syms;
    syms.reserve(r.size());
    for (const auto& c : r.cells) syms.push_back(s.at(c));
    return Configuration{r, std::move(syms)};
}

Configuration restrict_to(const Configuration& c, const Region& r) {
    std::vector<Sym> syms;
    syms.reserve(r.size());
    for (const auto& cell : r.cells) {
        long i = c.region.index_of(cell);
        if (i < 0) throw ConfigError("restrict: region not contained in configuration domain");
        syms.push_back(c.symbols[static_cast<size_t>(i)]);
    }
    return Configuration{r, std::move(syms)};
}

int region_extent(const Region& region, int axis, const Geometry& g) {
    if (region.size() == 0) return 0;
    const int n = g.sides[static_cast<size_t>(axis)];
    std::vector<int> xs;
    xs.reserve(region.size());
    for (const auto& c : region.cells) xs.push_back(c[static_cast<size_t>(axis)]);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (xs.size() == 1) return 0;
    // extent = n minus the largest circular gap between occupied coordinates
    int max_gap = n - xs.back() + xs.front();
    for (size_t i = 1; i < xs.size(); ++i) max_gap = std::max(max_gap, xs[i] - xs[i - 1]);
    return n - max_gap;
}

bool light_cone_valid(const Geometry& g, const Region& region, int t, int radius) {
    if (region.size() == 0) return true;
    for (int axis = 0; axis < g.dim(); ++axis) {
        long long span = 2ll * radius * t + region_extent(region, axis, g);
        if (span >= g.sides[static_cast<size_t>(axis)]) return false;
    }
    return true;
}

std::string symbols_to_string(const std::vector<Sym>& symbols) {
    static const char* digits = "0123456789abcdefghijklmnopqrstuvwxyz";
    std::string out;
    out.reserve(symbols.size());
    for (Sym s : symbols) {
        if (s >= 36) throw ConfigError("symbol string form supports alphabets up to 36");
        out.push_back(digits[s]);
    }
    return out;
}

std::vector<Sym> symbols_from_string(const std::string& s, int alphabet) {
    std::vector<Sym> out;
    out.reserve(s.size());
    for (char ch : s) {
        int v;
        if (ch >= '0' && ch <= '9') v = ch - '0';
        else if (ch >= 'a' && ch <= 'z') v = ch - 'a' + 10;
        else throw ConfigError(std::string("bad symbol character: ") + ch);
        if (v >= alphabet) throw ConfigError("symbol out of alphabet");
        out.push_back(static_cast<Sym>(v));
    }
    return out;
}

}  // namespace cab
