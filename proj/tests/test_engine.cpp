#include "doctest.h"

#include <map>

#include "cab/engine.hpp"
#include "cab/rng.hpp"

using namespace cab;

namespace {

FullState state_from_string(const Geometry& g, const std::string& s) {
    return FullState{g, symbols_from_string(s, g.alphabet)};
}

FullState random_state_for(const Geometry& g, SplitMix64& rng) {
    FullState s = FullState::zeros(g);
    for (auto& c : s.cells) c = static_cast<Sym>(rng.bounded(static_cast<uint64_t>(g.alphabet)));
    return s;
}

// Independent derivation of the billiard-ball 2x2 block map from its prose
// description: a lone particle jumps to the opposite corner, the two diagonal
// pairs swap, everything else stays put. Bit order s00 s01 s10 s11, s00 MSB.
uint32_t bbm_block_oracle(uint32_t rank) {
    const int s00 = (rank >> 3) & 1, s01 = (rank >> 2) & 1;
    const int s10 = (rank >> 1) & 1, s11 = rank & 1;
    const int count = s00 + s01 + s10 + s11;
    if (count == 1) return static_cast<uint32_t>(s11 << 3 | s10 << 2 | s01 << 1 | s00);
    if (rank == 0b0110) return 0b1001;
    if (rank == 0b1001) return 0b0110;
    return rank;
}

// Hand-applied composite Margolus step: even-anchored blocks, then odd.
FullState bbm_step_oracle(const FullState& in) {
    FullState s = in;
    for (int parity : {0, 1}) {
        FullState next = s;
        const Geometry& g = s.geom;
        for (int ax = parity; ax < g.sides[0]; ax += 2)
            for (int ay = parity; ay < g.sides[1]; ay += 2) {
                const uint32_t rank = static_cast<uint32_t>(
                    s.at({ax, ay}) << 3 | s.at({ax, ay + 1}) << 2 | s.at({ax + 1, ay}) << 1 |
                    s.at({ax + 1, ay + 1}));
                const uint32_t img = bbm_block_oracle(rank);
                next.set({ax, ay}, static_cast<Sym>((img >> 3) & 1));
                next.set({ax, ay + 1}, static_cast<Sym>((img >> 2) & 1));
                next.set({ax + 1, ay}, static_cast<Sym>((img >> 1) & 1));
                next.set({ax + 1, ay + 1}, static_cast<Sym>(img & 1));
            }
        s = next;
    }
    return s;
}

struct Bundled {
    RulePtr rule;
    Geometry geom;  // small torus where exhaustive checks fit
};

std::vector<Bundled> bundled_on_small_tori() {
    return {{make_shift({1}), Geometry{{4}, 2}},
            {make_shift({-1}), Geometry{{4}, 2}},
            {make_identity_1d(), Geometry{{4}, 2}},
            {make_second_order_xor(), Geometry{{4}, 4}},
            {make_billiard_ball(), Geometry{{4, 4}, 2}}};
}

}  // namespace

TEST_CASE("step matches the shift examples") {
    Geometry g{{4}, 2};
    const auto shift = make_shift({1});
    CHECK(step(state_from_string(g, "1000"), *shift, Direction::forward) ==
          state_from_string(g, "0100"));
    CHECK(step(state_from_string(g, "0001"), *shift, Direction::forward) ==
          state_from_string(g, "1000"));
}

TEST_CASE("step forward-then-backward is the identity for every bundled rule") {
    SplitMix64 rng(21);
    for (const auto& [rule, g] : bundled_on_small_tori()) {
        INFO(rule->name());
        for (int it = 0; it < 200; ++it) {
            const FullState s = random_state_for(g, rng);
            CHECK(step(step(s, *rule, Direction::forward), *rule, Direction::backward) == s);
            CHECK(step(step(s, *rule, Direction::backward), *rule, Direction::forward) == s);
        }
    }
}

TEST_CASE("billiard-ball step matches the hand-applied block oracle") {
    Geometry g{{4, 4}, 2};
    const auto bbm = make_billiard_ball();

    // one particle: even phase moves it within its block, odd phase again
    FullState one = FullState::zeros(g);
    one.set({0, 0}, 1);
    const FullState moved = step(one, *bbm, Direction::forward);
    CHECK(moved == bbm_step_oracle(one));
    CHECK(moved.at({2, 2}) == 1);  // (0,0) -> (1,1) -> (2,2)

    SplitMix64 rng(8);
    for (int it = 0; it < 500; ++it) {
        const FullState s = random_state_for(g, rng);
        CHECK(step(s, *bbm, Direction::forward) == bbm_step_oracle(s));
    }
}

TEST_CASE("evolve group laws: identity, composition, inverse") {
    SplitMix64 rng(33);
    Geometry g8{{8}, 2};
    const auto shift = make_shift({1});
    CHECK(evolve(state_from_string(g8, "10000000"), *shift, 3) ==
          state_from_string(g8, "00010000"));

    for (const auto& [rule, g] : bundled_on_small_tori()) {
        INFO(rule->name());
        for (int it = 0; it < 100; ++it) {
            const FullState s = random_state_for(g, rng);
            const long long t1 = static_cast<long long>(rng.bounded(13)) - 6;
            const long long t2 = static_cast<long long>(rng.bounded(13)) - 6;
            CHECK(evolve(s, *rule, 0) == s);
            CHECK(evolve(evolve(s, *rule, t1), *rule, t2) == evolve(s, *rule, t1 + t2));
            CHECK(evolve(evolve(s, *rule, 5), *rule, -5) == s);
        }
    }
}

TEST_CASE("step rejects incompatible geometries") {
    const auto bbm = make_billiard_ball();
    CHECK_THROWS_AS(step(FullState::zeros(Geometry{{5, 4}, 2}), *bbm, Direction::forward),
                    ConfigError);  // odd side
    CHECK_THROWS_AS(step(FullState::zeros(Geometry{{4}, 2}), *bbm, Direction::forward),
                    ConfigError);  // wrong dimension
    const auto sox = make_second_order_xor();
    CHECK_THROWS_AS(step(FullState::zeros(Geometry{{4}, 2}), *sox, Direction::forward),
                    ConfigError);  // needs the paired alphabet
}

TEST_CASE("induced_map matches the spec examples") {
    Geometry g{{16}, 2};
    const auto shift = make_shift({1});

    // env pins cell -1 to 1: cell 0 at t=1 is constantly 1
    const Configuration env1 = make_configuration(Region::single({-1}, g), {1}, g);
    const Region r0 = Region::single({0}, g);
    const InducedMap m1 = induced_map(*shift, g, env1, r0, r0, 1);
    CHECK(m1.table == std::vector<std::vector<Sym>>{{1}, {1}});

    // identity rule: any env, target = R, any t gives the identity map
    const auto ident = make_identity_1d();
    const Region covered = moore_neighborhood(r0, 3, g);
    const Configuration zero_env =
        make_configuration(region_difference(covered, r0),
                           std::vector<Sym>(covered.size() - r0.size(), 0), g);
    const InducedMap m2 = induced_map(*ident, g, zero_env, r0, r0, 3);
    CHECK(m2.is_identity(g.alphabet));
    CHECK(m2.is_bijection(g.alphabet));

    // coverage violations are rejected
    CHECK_THROWS_AS(induced_map(*shift, g, Configuration{}, r0, r0, 1), ConfigError);
}

TEST_CASE("induced_map on the billiard ball agrees with direct simulation") {
    Geometry g{{10, 10}, 2};
    const auto bbm = make_billiard_ball();
    const Region r = Region::of({{4, 4}, {4, 5}}, g);
    const int t = 2;
    const Region dep = bbm->dependency(r, t, g);
    const Region env_region = region_difference(dep, r);
    const Configuration env =
        make_configuration(env_region, std::vector<Sym>(env_region.size(), 0), g);
    const InducedMap m = induced_map(*bbm, g, env, r, r, t);
    REQUIRE(m.table.size() == 4);
    for (uint64_t rank = 0; rank < 4; ++rank) {
        FullState s = FullState::zeros(g);
        s.set(make_configuration(r, config_from_rank(rank, r.size(), 2), g));
        const FullState out = evolve(s, *bbm, t);
        CHECK(m.table[rank] == restrict_to(out, r).symbols);
    }
}

TEST_CASE("induced_map is identical across torus sizes when light-cone valid") {
    const auto shift = make_shift({1});
    const auto sox = make_second_order_xor();
    for (const auto& [rule, alphabet] :
         std::vector<std::pair<RulePtr, int>>{{shift, 2}, {sox, 4}}) {
        Geometry small{{16}, alphabet}, large{{20}, alphabet};
        const int t = 2;
        for (const Geometry* gp : {&small, &large}) (void)gp;
        const Region r = Region::of({{8}}, small);
        const Region dep_region = moore_neighborhood(r, t, small);  // coords fit both tori
        InducedMap maps[2];
        int i = 0;
        for (const Geometry& g : {small, large}) {
            const Region target = Region::of({{8}}, g);
            const Region dep = moore_neighborhood(target, t, g);
            const Region env_region = region_difference(dep, target);
            const Configuration env =
                make_configuration(env_region, std::vector<Sym>(env_region.size(), 0), g);
            maps[i++] = induced_map(*rule, g, env, target, target, t);
        }
        CHECK(maps[0].table == maps[1].table);
        CHECK(dep_region.size() == 2 * t + 1);
    }
}

TEST_CASE("locality: states agreeing on the t-cone of R evolve identically on R") {
    SplitMix64 rng(17);
    Geometry g{{16}, 2};
    const auto shift = make_shift({1});
    const auto ident = make_identity_1d();
    for (const RulePtr& rule : {shift, ident}) {
        for (int it = 0; it < 100; ++it) {
            const int t = 1 + static_cast<int>(rng.bounded(3));
            const Region r = Region::single({static_cast<int>(rng.bounded(16))}, g);
            const Region cone = moore_neighborhood(r, t * rule->radius(), g);
            FullState a = random_state_for(g, rng);
            FullState b = random_state_for(g, rng);
            for (const Coord& c : cone.cells) b.set(c, a.at(c));
            CHECK(restrict_to(evolve(a, *rule, t), r) == restrict_to(evolve(b, *rule, t), r));
        }
    }
}

TEST_CASE("dependency sets really cover: values outside never matter") {
    SplitMix64 rng(71);
    Geometry g{{12, 12}, 2};
    const auto bbm = make_billiard_ball();
    const Region r = Region::of({{5, 5}}, g);
    for (int t = 1; t <= 2; ++t) {
        const Region dep = bbm->dependency(r, t, g);
        for (int it = 0; it < 60; ++it) {
            FullState a = random_state_for(g, rng);
            FullState b = random_state_for(g, rng);
            for (const Coord& c : dep.cells) b.set(c, a.at(c));
            CHECK(restrict_to(evolve(a, *bbm, t), r) == restrict_to(evolve(b, *bbm, t), r));
        }
        // and the block closure is tighter than the Moore cone of radius 2t
        CHECK(dep.size() <= moore_neighborhood(r, 2 * t, g).size());
    }
}

TEST_CASE("verify_reversibility: positive and negative fixtures") {
    Geometry g{{4}, 2};
    const auto rep = verify_reversibility(*make_shift({1}), g);
    CHECK(rep.pass);
    CHECK(rep.exhaustive);
    CHECK(rep.tested == 16);

    const auto bad = verify_reversibility(*make_broken_majority_1d(), g);
    CHECK(!bad.pass);
    REQUIRE(bad.counterexample.has_value());
    const FullState& w = *bad.counterexample;
    CHECK(step(step(w, *make_broken_majority_1d(), Direction::forward),
               *make_broken_majority_1d(), Direction::backward) != w);

    const auto bbm = verify_reversibility(*make_billiard_ball(), Geometry{{4, 4}, 2},
                                          SampledMode{10000, 1});
    CHECK(bbm.pass);
    CHECK(!bbm.exhaustive);
    CHECK(bbm.tested == 10000);

    // exhaustive mode over the cap is refused, not silently sampled
    CHECK_THROWS_AS(verify_reversibility(*make_billiard_ball(), Geometry{{8, 8}, 2}, std::nullopt,
                                         1 << 20),
                    CapExceeded);
}

TEST_CASE("verify_translation_covariance honors the declared sublattice") {
    CHECK(verify_translation_covariance(*make_shift({1}), Geometry{{8}, 2}, {1}).pass);

    const auto bbm = make_billiard_ball();
    Geometry g{{4, 4}, 2};
    const auto even = verify_translation_covariance(*bbm, g, {2, 0});
    CHECK(even.status == CovarianceReport::Status::ok);
    CHECK(even.pass);

    const auto odd = verify_translation_covariance(*bbm, g, {1, 0});
    CHECK(odd.status == CovarianceReport::Status::rejected_precondition);
}

TEST_CASE("one step permutes the full state set (finite measure preservation)") {
    for (const auto& [rule, g] : bundled_on_small_tori()) {
        INFO(rule->name());
        uint64_t states = 1;
        for (uint64_t i = 0; i < g.cells(); ++i) states *= static_cast<uint64_t>(g.alphabet);
        std::vector<bool> hit(states, false);
        for (uint64_t r = 0; r < states; ++r) {
            const uint64_t img = step(FullState::from_rank(r, g), *rule, Direction::forward).rank();
            CHECK(!hit[img]);
            hit[img] = true;
        }
    }
}

TEST_CASE("rule descriptions round-trip through JSON") {
    for (const auto& rule : bundled_rules()) {
        const RulePtr back = rule_from_json(rule->to_json());
        CHECK(back->family() == rule->family());
        CHECK(back->to_json() == rule->to_json());
    }
    CHECK_THROWS_AS(rule_from_json(nlohmann::json{{"family", "nope"}}), ConfigError);
    // non-bijective block tables are rejected at load time
    nlohmann::json bad = make_billiard_ball()->to_json();
    bad["block_permutation"][0] = 8;
    CHECK_THROWS_AS(rule_from_json(bad), ConfigError);
}
