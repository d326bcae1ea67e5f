#include "cab/rules.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace cab {

namespace {

uint64_t ipow(uint64_t b, uint64_t e) {
    uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// Lexicographic offsets over {-1,0,1}^d.
std::vector<Coord> neighborhood_offsets(int dim) {
    std::vector<Coord> offs;
    Coord off(static_cast<size_t>(dim), -1);
    while (true) {
        offs.push_back(off);
        int axis = dim - 1;
        while (axis >= 0 && off[static_cast<size_t>(axis)] == 1) off[static_cast<size_t>(axis--)] = -1;
        if (axis < 0) break;
        ++off[static_cast<size_t>(axis)];
    }
    return offs;
}

// Lexicographic offsets over {0,1}^d (block cell order).
std::vector<Coord> block_offsets(int dim) {
    std::vector<Coord> offs;
    Coord off(static_cast<size_t>(dim), 0);
    while (true) {
        offs.push_back(off);
        int axis = dim - 1;
        while (axis >= 0 && off[static_cast<size_t>(axis)] == 1) off[static_cast<size_t>(axis--)] = 0;
        if (axis < 0) break;
        ++off[static_cast<size_t>(axis)];
    }
    return offs;
}

}  // namespace

Region Rule::dependency(const Region& target, int t, const Geometry& g) const {
    return moore_neighborhood(target, radius() * t, g);
}

// ---------------------------------------------------------------- ShiftRule

ShiftRule::ShiftRule(Coord v) : v_(std::move(v)) {
    for (int c : v_)
        if (c < -1 || c > 1) throw ConfigError("shift: components must be in {-1,0,1} (radius 1)");
}

std::string ShiftRule::name() const {
    std::string n = "shift";
    for (int c : v_) n += (c < 0 ? "" : "+") + std::to_string(c);
    return n;
}

int ShiftRule::radius() const {
    int r = 0;
    for (int c : v_) r = std::max(r, std::abs(c));
    return r;
}

bool ShiftRule::compatible(const Geometry& g, std::string* why) const {
    if (g.dim() != static_cast<int>(v_.size())) {
        if (why) *why = "shift vector dimension != geometry dimension";
        return false;
    }
    return true;
}

void ShiftRule::apply(FullState& s, Direction dir) const {
    const Geometry& g = s.geom;
    std::vector<Sym> out(s.cells.size());
    const int sign = dir == Direction::forward ? 1 : -1;
    const uint64_t n = g.cells();
    for (uint64_t i = 0; i < n; ++i) {
        Coord c = g.coord(i);
        for (size_t k = 0; k < c.size(); ++k) c[k] -= sign * v_[k];
        out[i] = s.cells[g.index(c)];
    }
    s.cells = std::move(out);
}

Region ShiftRule::dependency(const Region& target, int t, const Geometry& g) const {
    Coord back(v_.size());
    for (size_t i = 0; i < v_.size(); ++i) back[i] = -v_[i] * t;
    return translate(target, back, g);
}

nlohmann::json ShiftRule::to_json() const {
    return {{"family", "shift"}, {"vector", v_}};
}

// ---------------------------------------------------------------- TableRule

TableRule::TableRule(std::string name, int dim, int alphabet,
                     std::vector<Sym> forward, std::vector<Sym> backward)
    : name_(std::move(name)), dim_(dim), alphabet_(alphabet),
      fwd_(std::move(forward)), bwd_(std::move(backward)) {
    const uint64_t want = ipow(static_cast<uint64_t>(alphabet_), ipow(3, static_cast<uint64_t>(dim_)));
    if (fwd_.size() != want || bwd_.size() != want)
        throw ConfigError("table rule: table size must be a^(3^d)");
    for (Sym s : fwd_)
        if (s >= alphabet_) throw ConfigError("table rule: forward entry out of alphabet");
    for (Sym s : bwd_)
        if (s >= alphabet_) throw ConfigError("table rule: backward entry out of alphabet");
}

bool TableRule::compatible(const Geometry& g, std::string* why) const {
    if (g.dim() != dim_) {
        if (why) *why = "table rule dimension mismatch";
        return false;
    }
    if (g.alphabet != alphabet_) {
        if (why) *why = "table rule alphabet mismatch";
        return false;
    }
    return true;
}

void TableRule::apply(FullState& s, Direction dir) const {
    const Geometry& g = s.geom;
    const auto offs = neighborhood_offsets(dim_);
    const auto& table = dir == Direction::forward ? fwd_ : bwd_;
    std::vector<Sym> out(s.cells.size());
    const uint64_t n = g.cells();
    Coord y(static_cast<size_t>(dim_));
    for (uint64_t i = 0; i < n; ++i) {
        Coord c = g.coord(i);
        uint64_t rank = 0;
        for (const auto& off : offs) {
            for (size_t k = 0; k < y.size(); ++k) y[k] = c[k] + off[k];
            rank = rank * static_cast<uint64_t>(alphabet_) + s.at(y);
        }
        out[i] = table[rank];
    }
    s.cells = std::move(out);
}

nlohmann::json TableRule::to_json() const {
    return {{"family", "table"}, {"name", name_}, {"dim", dim_}, {"alphabet", alphabet_},
            {"forward", fwd_}, {"backward", bwd_}};
}

// ---------------------------------------------------------- SecondOrderRule

SecondOrderRule::SecondOrderRule(std::string name, int dim, int base_alphabet, std::vector<Sym> f)
    : name_(std::move(name)), dim_(dim), a0_(base_alphabet), f_(std::move(f)) {
    const uint64_t want = ipow(static_cast<uint64_t>(a0_), ipow(3, static_cast<uint64_t>(dim_)));
    if (f_.size() != want) throw ConfigError("second-order rule: f size must be a0^(3^d)");
    for (Sym s : f_)
        if (s >= a0_) throw ConfigError("second-order rule: f entry out of base alphabet");
}

bool SecondOrderRule::compatible(const Geometry& g, std::string* why) const {
    if (g.dim() != dim_) {
        if (why) *why = "second-order rule dimension mismatch";
        return false;
    }
    if (g.alphabet != a0_ * a0_) {
        if (why) *why = "second-order rule needs paired alphabet a0^2";
        return false;
    }
    return true;
}

void SecondOrderRule::apply(FullState& s, Direction dir) const {
    const Geometry& g = s.geom;
    const auto offs = neighborhood_offsets(dim_);
    std::vector<Sym> out(s.cells.size());
    const uint64_t n = g.cells();
    const int a0 = a0_;
    Coord y(static_cast<size_t>(dim_));
    for (uint64_t i = 0; i < n; ++i) {
        Coord c = g.coord(i);
        const int cur = s.cells[i] / a0;
        const int prev = s.cells[i] % a0;
        uint64_t rank = 0;
        for (const auto& off : offs) {
            for (size_t k = 0; k < y.size(); ++k) y[k] = c[k] + off[k];
            const int layer = dir == Direction::forward ? s.at(y) / a0 : s.at(y) % a0;
            rank = rank * static_cast<uint64_t>(a0) + layer;
        }
        const int fval = f_[rank];
        if (dir == Direction::forward) {
            const int next = ((fval - prev) % a0 + a0) % a0;
            out[i] = static_cast<Sym>(next * a0 + cur);
        } else {
            const int older = ((fval - cur) % a0 + a0) % a0;
            out[i] = static_cast<Sym>(prev * a0 + older);
        }
    }
    s.cells = std::move(out);
}

nlohmann::json SecondOrderRule::to_json() const {
    return {{"family", "second-order"}, {"name", name_}, {"dim", dim_},
            {"base_alphabet", a0_}, {"f", f_}};
}

// ------------------------------------------------------------- MargolusRule

MargolusRule::MargolusRule(std::string name, int dim, int alphabet, std::vector<uint32_t> perm)
    : name_(std::move(name)), dim_(dim), alphabet_(alphabet), perm_(std::move(perm)) {
    const uint64_t want = ipow(static_cast<uint64_t>(alphabet_), ipow(2, static_cast<uint64_t>(dim_)));
    if (perm_.size() != want) throw ConfigError("margolus: permutation size must be a^(2^d)");
    inv_.assign(perm_.size(), 0);
    std::vector<bool> seen(perm_.size(), false);
    for (uint32_t i = 0; i < perm_.size(); ++i) {
        uint32_t img = perm_[i];
        if (img >= perm_.size() || seen[img])
            throw ConfigError("margolus: block table is not a bijection");
        seen[img] = true;
        inv_[img] = i;
    }
}

bool MargolusRule::compatible(const Geometry& g, std::string* why) const {
    if (g.dim() != dim_) {
        if (why) *why = "margolus dimension mismatch";
        return false;
    }
    if (g.alphabet != alphabet_) {
        if (why) *why = "margolus alphabet mismatch";
        return false;
    }
    for (int s : g.sides)
        if (s % 2 != 0) {
            if (why) *why = "margolus requires even side lengths";
            return false;
        }
    return true;
}

void MargolusRule::apply_phase(FullState& s, int parity, bool inverse) const {
    const Geometry& g = s.geom;
    const auto offs = block_offsets(dim_);
    const auto& table = inverse ? inv_ : perm_;
    const uint64_t n = g.cells();
    std::vector<uint64_t> idx(offs.size());
    for (uint64_t i = 0; i < n; ++i) {
        Coord anchor = g.coord(i);
        bool is_anchor = true;
        for (int k = 0; k < dim_; ++k)
            if (anchor[static_cast<size_t>(k)] % 2 != parity) { is_anchor = false; break; }
        if (!is_anchor) continue;
        uint64_t rank = 0;
        for (size_t j = 0; j < offs.size(); ++j) {
            Coord y(anchor);
            for (int k = 0; k < dim_; ++k) y[static_cast<size_t>(k)] += offs[j][static_cast<size_t>(k)];
            idx[j] = g.index(y);
            rank = rank * static_cast<uint64_t>(alphabet_) + s.cells[idx[j]];
        }
        uint64_t out = table[rank];
        for (size_t j = offs.size(); j-- > 0;) {
            s.cells[idx[j]] = static_cast<Sym>(out % static_cast<uint64_t>(alphabet_));
            out /= static_cast<uint64_t>(alphabet_);
        }
    }
}

void MargolusRule::apply(FullState& s, Direction dir) const {
    if (dir == Direction::forward) {
        apply_phase(s, 0, false);
        apply_phase(s, 1, false);
    } else {
        apply_phase(s, 1, true);
        apply_phase(s, 0, true);
    }
}

Region MargolusRule::dependency(const Region& target, int t, const Geometry& g) const {
    // Inverse of one step: odd-phase block closure, then even-phase closure.
    auto closure = [&](const Region& r, int parity) {
        std::set<Coord> acc;
        for (const auto& c : r.cells) {
            Coord anchor(c);
            for (int k = 0; k < dim_; ++k) {
                int v = anchor[static_cast<size_t>(k)];
                anchor[static_cast<size_t>(k)] = g.wrap(v - ((v % 2 + 2) % 2 == parity ? 0 : 1), k);
            }
            for (const auto& off : block_offsets(dim_)) {
                Coord y(anchor);
                for (int k = 0; k < dim_; ++k) y[static_cast<size_t>(k)] += off[static_cast<size_t>(k)];
                acc.insert(g.wrap(y));
            }
        }
        return Region{std::vector<Coord>(acc.begin(), acc.end())};
    };
    Region dep = target;
    for (int i = 0; i < t; ++i) dep = closure(closure(dep, 1), 0);
    return dep;
}

nlohmann::json MargolusRule::to_json() const {
    return {{"family", "margolus"}, {"name", name_}, {"dim", dim_}, {"alphabet", alphabet_},
            {"block_permutation", perm_}};
}

// ------------------------------------------------------------ bundled rules

RulePtr make_shift(Coord v) { return std::make_shared<ShiftRule>(std::move(v)); }

RulePtr make_identity_1d() {
    // forward = backward = center cell (neighborhood index order l,c,r).
    std::vector<Sym> t(8);
    for (int l = 0; l < 2; ++l)
        for (int c = 0; c < 2; ++c)
            for (int r = 0; r < 2; ++r) t[static_cast<size_t>(l * 4 + c * 2 + r)] = static_cast<Sym>(c);
    return std::make_shared<TableRule>("identity", 1, 2, t, t);
}

RulePtr make_billiard_ball() {
    // 2x2 binary blocks: a lone particle jumps to the opposite corner, the two
    // diagonal pairs swap (head-on collision), everything else is fixed.
    std::vector<uint32_t> perm = {0, 8, 4, 3, 2, 5, 9, 7, 1, 6, 10, 11, 12, 13, 14, 15};
    return std::make_shared<MargolusRule>("billiard-ball", 2, 2, std::move(perm));
}

RulePtr make_second_order_xor() {
    std::vector<Sym> f(8);
    for (int l = 0; l < 2; ++l)
        for (int c = 0; c < 2; ++c)
            for (int r = 0; r < 2; ++r) f[static_cast<size_t>(l * 4 + c * 2 + r)] = static_cast<Sym>(l ^ c ^ r);
    return std::make_shared<SecondOrderRule>("second-order-xor", 1, 2, std::move(f));
}

RulePtr make_broken_majority_1d() {
    std::vector<Sym> fwd(8), bwd(8);
    for (int l = 0; l < 2; ++l)
        for (int c = 0; c < 2; ++c)
            for (int r = 0; r < 2; ++r)
                fwd[static_cast<size_t>(l * 4 + c * 2 + r)] = static_cast<Sym>((l + c + r) >= 2 ? 1 : 0);
    for (size_t i = 0; i < 8; ++i) bwd[i] = static_cast<Sym>((i >> 1) & 1);  // center; not an inverse
    return std::make_shared<TableRule>("broken-majority", 1, 2, std::move(fwd), std::move(bwd));
}

std::vector<RulePtr> bundled_rules() {
    return {make_shift({1}), make_shift({-1}), make_identity_1d(), make_billiard_ball(),
            make_second_order_xor()};
}

RulePtr rule_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("family"))
        throw ConfigError("rule: expected object with a \"family\" field");
    const std::string family = j.at("family").get<std::string>();
    if (family == "shift") {
        return make_shift(j.at("vector").get<Coord>());
    }
    if (family == "table") {
        return std::make_shared<TableRule>(
            j.value("name", std::string("table")), j.at("dim").get<int>(),
            j.at("alphabet").get<int>(), j.at("forward").get<std::vector<Sym>>(),
            j.at("backward").get<std::vector<Sym>>());
    }
    if (family == "second-order") {
        return std::make_shared<SecondOrderRule>(
            j.value("name", std::string("second-order")), j.at("dim").get<int>(),
            j.at("base_alphabet").get<int>(), j.at("f").get<std::vector<Sym>>());
    }
    if (family == "margolus") {
        return std::make_shared<MargolusRule>(
            j.value("name", std::string("margolus")), j.at("dim").get<int>(),
            j.at("alphabet").get<int>(), j.at("block_permutation").get<std::vector<uint32_t>>());
    }
    throw ConfigError("rule: unknown family \"" + family + "\"");
}

}  // namespace cab
