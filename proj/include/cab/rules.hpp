#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cab/lattice.hpp"
#include "json.hpp"

namespace cab {

enum class Direction { forward, backward };

/// A reversible, translation-covariant radius-1 (radius-2 for Margolus
/// composite steps) local update rule. Rules are immutable; apply() is the
/// single-step kernel in either direction.
class Rule {
public:
    virtual ~Rule() = default;

    virtual std::string name() const = 0;
    virtual std::string family() const = 0;
    /// Dependence radius of one step (L-infinity).
    virtual int radius() const = 0;
    /// Per-axis stride of the declared covariance sublattice (1 or 2).
    virtual int covariance_stride() const = 0;
    virtual bool compatible(const Geometry& g, std::string* why = nullptr) const = 0;
    virtual void apply(FullState& s, Direction dir) const = 0;
    virtual nlohmann::json to_json() const = 0;

    /// Cells whose initial value can influence the given region after t
    /// forward steps. Default is the radius*t Moore neighborhood; block rules
    /// override with the tighter block closure.
    virtual Region dependency(const Region& target, int t, const Geometry& g) const;
};

using RulePtr = std::shared_ptr<const Rule>;

class ShiftRule final : public Rule {
public:
    explicit ShiftRule(Coord v);

    std::string name() const override;
    std::string family() const override { return "shift"; }
    int radius() const override;
    int covariance_stride() const override { return 1; }
    bool compatible(const Geometry& g, std::string* why) const override;
    void apply(FullState& s, Direction dir) const override;
    Region dependency(const Region& target, int t, const Geometry& g) const override;
    nlohmann::json to_json() const override;

    const Coord& shift_vector() const { return v_; }

private:
    Coord v_;
};

/// Explicit radius-1 local table with an explicit (claimed) inverse table.
/// Reversibility is a claim to be checked by verify_reversibility, not a
/// construction guarantee; irreversible tables serve as negative fixtures.
class TableRule final : public Rule {
public:
    TableRule(std::string name, int dim, int alphabet,
              std::vector<Sym> forward, std::vector<Sym> backward);

    std::string name() const override { return name_; }
    std::string family() const override { return "table"; }
    int radius() const override { return 1; }
    int covariance_stride() const override { return 1; }
    bool compatible(const Geometry& g, std::string* why) const override;
    void apply(FullState& s, Direction dir) const override;
    nlohmann::json to_json() const override;

private:
    std::string name_;
    int dim_;
    int alphabet_;
    std::vector<Sym> fwd_, bwd_;  // indexed by neighborhood rank, offsets lex
};

/// Second-order reversible rule on the paired alphabet A0 x A0: a cell's
/// symbol encodes (current, previous) layer values; the next pair is
/// (f(current neighborhood) - previous mod a0, current).
class SecondOrderRule final : public Rule {
public:
    SecondOrderRule(std::string name, int dim, int base_alphabet, std::vector<Sym> f);

    std::string name() const override { return name_; }
    std::string family() const override { return "second-order"; }
    int radius() const override { return 1; }
    int covariance_stride() const override { return 1; }
    bool compatible(const Geometry& g, std::string* why) const override;
    void apply(FullState& s, Direction dir) const override;
    nlohmann::json to_json() const override;

    int base_alphabet() const { return a0_; }

private:
    std::string name_;
    int dim_;
    int a0_;
    std::vector<Sym> f_;  // indexed by current-layer neighborhood rank
};

/// Block rule on the Margolus partition: one step applies a bijective
/// permutation of A^(2^d) to every block of the even partition, then to every
/// block of the odd partition (anchors offset by one on every axis). The
/// composite step is a fixed map, so (alpha_t) is a group; it is covariant
/// under the 2Z^d sublattice and has dependence radius 2.
class MargolusRule final : public Rule {
public:
    MargolusRule(std::string name, int dim, int alphabet, std::vector<uint32_t> perm);

    std::string name() const override { return name_; }
    std::string family() const override { return "margolus"; }
    int radius() const override { return 2; }
    int covariance_stride() const override { return 2; }
    bool compatible(const Geometry& g, std::string* why) const override;
    void apply(FullState& s, Direction dir) const override;
    Region dependency(const Region& target, int t, const Geometry& g) const override;
    nlohmann::json to_json() const override;

    /// Apply the block permutation to every block anchored at cells with all
    /// coordinates congruent to `parity` mod 2. Exposed for the hand-applied
    /// oracle in tests.
    void apply_phase(FullState& s, int parity, bool inverse) const;

private:
    std::string name_;
    int dim_;
    int alphabet_;
    std::vector<uint32_t> perm_, inv_;
};

// Bundled rules.
RulePtr make_shift(Coord v);
RulePtr make_identity_1d();
RulePtr make_billiard_ball();
RulePtr make_second_order_xor();
/// Radius-1 majority table with a bogus inverse; irreversible negative fixture.
RulePtr make_broken_majority_1d();

std::vector<RulePtr> bundled_rules();

RulePtr rule_from_json(const nlohmann::json& j);

}  // namespace cab
