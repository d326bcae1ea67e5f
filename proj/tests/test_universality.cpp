#include "doctest.h"

#include "cab/rng.hpp"
#include "cab/universality.hpp"

using namespace cab;

namespace {

Region reg1(const Geometry& g, std::initializer_list<int> cells) {
    std::vector<Coord> coords;
    for (int c : cells) coords.push_back({c});
    return Region::of(coords, g);
}

uint64_t ipow(uint64_t b, uint64_t e) {
    uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// Independent brute-force preparation search: first (t, env) in the canonical
// order (t ascending, env rank ascending over the whole window) that maps
// every required c_i to c_f with zeros outside. Returns (t, full-window env).
std::optional<std::pair<int, std::vector<Sym>>> oracle_prep(const Rule& rule, const Geometry& g,
                                                            const PreparationTask& task,
                                                            bool unconditional) {
    const int a = g.alphabet;
    for (int t = 0; t <= task.max_time; ++t) {
        for (uint64_t er = 0; er < ipow(a, task.window.size()); ++er) {
            const auto env = config_from_rank(er, task.window.size(), a);
            bool ok = true;
            const uint64_t inputs = unconditional ? ipow(a, task.region.size()) : 1;
            for (uint64_t ir = 0; ir < inputs && ok; ++ir) {
                FullState s = FullState::zeros(g);
                s.set(make_configuration(task.window, env, g));
                if (unconditional)
                    s.set(make_configuration(task.region,
                                             config_from_rank(ir, task.region.size(), a), g));
                else if (task.c_i)
                    s.set(*task.c_i);
                ok = restrict_to(evolve(s, rule, t), task.c_f.region).symbols == task.c_f.symbols;
            }
            if (ok) return std::make_pair(t, env);
        }
    }
    return std::nullopt;
}

void check_against_oracle(const Rule& rule, const Geometry& g, const PreparationTask& task,
                          bool unconditional) {
    const SearchResult r = unconditional ? search_unconditional_prep(rule, g, task)
                                         : search_conditional_prep(rule, g, task);
    const auto oracle = oracle_prep(rule, g, task, unconditional);
    REQUIRE(found(r) == oracle.has_value());
    if (!oracle) return;
    const Certificate& cert = certificate(r);
    CHECK(cert.t == oracle->first);
    // the certificate's program is the oracle env restricted to the program
    // region; all trimmed-away window cells of the oracle env are zero
    const Configuration full_env = make_configuration(task.window, oracle->second, g);
    CHECK(restrict_to(full_env, cert.program_region).symbols == cert.program);
    for (size_t i = 0; i < task.window.size(); ++i)
        if (!cert.program_region.contains(task.window.cells[i]))
            CHECK(oracle->second[i] == 0);
    CHECK(verify_certificate(rule, g, task, cert, unconditional));
}

}  // namespace

TEST_CASE("conditional prep: worked shift example") {
    Geometry g{{16}, 2};
    const auto shift = make_shift({1});
    PreparationTask task;
    task.region = reg1(g, {0});
    task.c_i = make_configuration(task.region, {0}, g);
    task.c_f = make_configuration(task.region, {1}, g);
    task.max_time = 5;
    task.window = reg1(g, {-5, -4, -3, -2, -1});
    const SearchResult r = search_conditional_prep(*shift, g, task);
    REQUIRE(found(r));
    const Certificate& cert = certificate(r);
    CHECK(cert.t == 1);
    CHECK(cert.kind == CertificateKind::cond_prep);
    CHECK(cert.program_region == reg1(g, {-1}));
    CHECK(cert.program == std::vector<Sym>{1});
    check_against_oracle(*shift, g, task, false);
}

TEST_CASE("conditional prep: identity rule cannot change its region") {
    Geometry g{{16}, 2};
    const auto ident = make_identity_1d();
    PreparationTask task;
    task.region = reg1(g, {0});
    task.c_i = make_configuration(task.region, {0}, g);
    task.c_f = make_configuration(task.region, {1}, g);
    task.max_time = 3;
    task.window = reg1(g, {-3, -2, -1, 1, 2});
    const SearchResult r = search_conditional_prep(*ident, g, task);
    CHECK(!found(r));
    CHECK(std::get<NotFoundWithinBounds>(r).candidates_tested > 0);
}

TEST_CASE("conditional prep on the billiard ball agrees with the exhaustive oracle") {
    Geometry g{{10, 10}, 2};
    const auto bbm = make_billiard_ball();
    PreparationTask task;
    task.region = Region::of({{2, 2}}, g);
    task.c_i = make_configuration(task.region, {0}, g);
    task.c_f = make_configuration(task.region, {1}, g);
    task.max_time = 2;
    task.window = Region::of({{0, 0}, {0, 1}, {1, 0}}, g);
    check_against_oracle(*bbm, g, task, false);
    // sanity: a particle at (0,0) reaches (2,2) in one step
    const SearchResult r = search_conditional_prep(*bbm, g, task);
    REQUIRE(found(r));
    CHECK(certificate(r).t == 1);
}

TEST_CASE("unconditional prep: Example 1 construction for the shift") {
    Geometry g{{16}, 2};
    const auto shift = make_shift({1});
    PreparationTask task;
    task.region = reg1(g, {0, 1});
    task.c_f = make_configuration(task.region, {1, 0}, g);
    task.max_time = 5;
    task.window = reg1(g, {-5, -4, -3, -2, -1});
    const SearchResult r = search_unconditional_prep(*shift, g, task);
    REQUIRE(found(r));
    const Certificate& cert = certificate(r);
    CHECK(cert.t == 2);  // first t with (R - t) disjoint from R
    CHECK(cert.program_region == translate(task.region, {-2}, g));
    CHECK(cert.program == task.c_f.symbols);  // the translated copy of c_f
    check_against_oracle(*shift, g, task, true);

    // any unconditional certificate also certifies every conditional task
    for (uint64_t ir = 0; ir < 4; ++ir) {
        PreparationTask cond = task;
        cond.c_i = make_configuration(task.region, config_from_rank(ir, 2, 2), g);
        CHECK(verify_certificate(*shift, g, cond, cert, false));
    }
}

TEST_CASE("unconditional prep: identity rule never succeeds, shift always does") {
    Geometry g{{16}, 2};
    PreparationTask task;
    task.region = reg1(g, {0, 1, 2});
    task.max_time = 6;
    task.window = reg1(g, {-6, -5, -4, -3, -2, -1});
    for (uint64_t rank = 0; rank < 8; ++rank) {
        task.c_f = make_configuration(task.region, config_from_rank(rank, 3, 2), g);
        const SearchResult r = search_unconditional_prep(*make_shift({1}), g, task);
        REQUIRE(found(r));
        CHECK(certificate(r).t == 3);  // Example 1: t = |R| clears the region
        CHECK(certificate(r).program_region == translate(task.region, {-3}, g));
        CHECK(certificate(r).program == task.c_f.symbols);
    }
    task.c_f = make_configuration(task.region, {1, 1, 1}, g);
    CHECK(!found(search_unconditional_prep(*make_identity_1d(), g, task)));
}

TEST_CASE("search_map: identity target costs nothing") {
    Geometry g{{16}, 2};
    BijectionTask task;
    task.region = reg1(g, {0, 1});
    task.map = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    task.max_time = 2;
    task.window = reg1(g, {-2, -1});
    for (const RulePtr& rule : {make_shift({1}), make_identity_1d()}) {
        const SearchResult r = search_map(*rule, g, task);
        REQUIRE(found(r));
        CHECK(certificate(r).t == 0);
        CHECK(certificate(r).program.empty());
        CHECK(verify_certificate(*rule, g, task, certificate(r)));
    }
}

TEST_CASE("search_map: the shift cannot transpose two cells") {
    Geometry g{{16}, 2};
    BijectionTask task;
    task.region = reg1(g, {0, 1});
    task.map = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};  // swap the two cells
    task.max_time = 3;
    task.window = reg1(g, {-3, -2, -1});
    CHECK(!found(search_map(*make_shift({1}), g, task)));
}

TEST_CASE("search_map on the billiard ball agrees with brute force for NOT") {
    Geometry g{{10, 10}, 2};
    const auto bbm = make_billiard_ball();
    BijectionTask task;
    task.region = Region::of({{2, 2}}, g);
    task.map = {{1}, {0}};  // NOT
    task.max_time = 2;
    task.window = Region::of({{0, 0}, {0, 1}, {1, 0}, {1, 1}}, g);
    const SearchResult r = search_map(*bbm, g, task);

    // independent oracle over all (t, env)
    std::optional<int> oracle_t;
    std::vector<Sym> oracle_env;
    for (int t = 0; t <= task.max_time && !oracle_t; ++t)
        for (uint64_t er = 0; er < 16 && !oracle_t; ++er) {
            const auto env = config_from_rank(er, 4, 2);
            bool ok = true;
            for (uint64_t ir = 0; ir < 2 && ok; ++ir) {
                FullState s = FullState::zeros(g);
                s.set(make_configuration(task.window, env, g));
                s.set(make_configuration(task.region, {static_cast<Sym>(ir)}, g));
                ok = restrict_to(evolve(s, *bbm, t), task.region).symbols == task.map[ir];
            }
            if (ok) {
                oracle_t = t;
                oracle_env = env;
            }
        }
    REQUIRE(found(r) == oracle_t.has_value());
    if (oracle_t) {
        CHECK(certificate(r).t == *oracle_t);
        CHECK(verify_certificate(*bbm, g, task, certificate(r)));
    }
}

TEST_CASE("tampered certificates fail re-verification") {
    Geometry g{{16}, 2};
    const auto shift = make_shift({1});
    PreparationTask task;
    task.region = reg1(g, {0});
    task.c_f = make_configuration(task.region, {1}, g);
    task.max_time = 3;
    task.window = reg1(g, {-3, -2, -1});
    const SearchResult r = search_unconditional_prep(*shift, g, task);
    REQUIRE(found(r));
    Certificate bad = certificate(r);
    bad.program.assign(bad.program.size(), 0);
    CHECK(!verify_certificate(*shift, g, task, bad, true));
    Certificate late = certificate(r);
    late.t += 1;
    CHECK(!verify_certificate(*shift, g, task, late, true));
}

TEST_CASE("monotonicity: enlarging the window or horizon keeps certificates findable") {
    Geometry g{{24}, 2};
    const auto shift = make_shift({1});
    PreparationTask task;
    task.region = reg1(g, {0, 1});
    task.c_f = make_configuration(task.region, {1, 1}, g);
    task.max_time = 2;
    task.window = reg1(g, {-2, -1});
    REQUIRE(found(search_unconditional_prep(*shift, g, task)));
    task.max_time = 6;
    CHECK(found(search_unconditional_prep(*shift, g, task)));
    task.window = reg1(g, {-6, -5, -4, -3, -2, -1});
    CHECK(found(search_unconditional_prep(*shift, g, task)));
}

TEST_CASE("instability_witness: shift has one, identity has none") {
    Geometry g{{16}, 2};
    const auto shift = make_shift({1});
    const Region r = reg1(g, {-1, 0, 1});
    const auto w = instability_witness(*shift, g, r, {0});
    REQUIRE(w.has_value());
    // the witness flips cell 0 regardless of the environment
    SplitMix64 rng(2);
    for (int it = 0; it < 20; ++it) {
        FullState s = FullState::zeros(g);
        for (auto& c : s.cells) c = static_cast<Sym>(rng.bounded(2));
        s.set(*w);
        CHECK(step(s, *shift, Direction::forward).at({0}) != w->symbols[w->region.index_of({0})]);
    }
    CHECK(!instability_witness(*make_identity_1d(), g, r, {0}).has_value());

    // region must cover the one-step dependency of x
    CHECK_THROWS_AS(instability_witness(*shift, g, reg1(g, {0, 1}), {0}), ConfigError);
}

TEST_CASE("instability_witness exists for the billiard ball") {
    Geometry g{{8, 8}, 2};
    const auto bbm = make_billiard_ball();
    const Coord x = {2, 2};
    const Region r = bbm->dependency(Region::single(x, g), 1, g);
    const auto w = instability_witness(*bbm, g, r, x);
    REQUIRE(w.has_value());
    SplitMix64 rng(6);
    for (int it = 0; it < 20; ++it) {
        FullState s = FullState::zeros(g);
        for (auto& c : s.cells) c = static_cast<Sym>(rng.bounded(2));
        s.set(*w);
        CHECK(step(s, *bbm, Direction::forward).at(x) != w->symbols[w->region.index_of(x)]);
    }
}

TEST_CASE("persistence_probe: worked shift example") {
    Geometry g{{16}, 2};
    const auto shift = make_shift({1});
    const Region r = reg1(g, {0});
    const Region rp = reg1(g, {-1});
    const Configuration cp = make_configuration(rp, {1}, g);
    const Configuration cf = make_configuration(r, {1}, g);
    const PersistenceReport rep = persistence_probe(*shift, g, r, rp, cp, cf, 5);
    CHECK(!rep.held);
    CHECK(rep.first_deviation_t == 2);
    REQUIRE(rep.witness_environment.has_value());
    // re-simulate the witness: it must deviate exactly at t=2
    FullState s = FullState::zeros(g);
    s.set(cf);
    s.set(cp);
    s.set(*rep.witness_environment);
    CHECK(restrict_to(evolve(s, *shift, 1), r).symbols == cf.symbols);
    CHECK(restrict_to(evolve(s, *shift, 2), r).symbols != cf.symbols);
}

TEST_CASE("persistence_probe: identity holds, a block of ones delays the shift") {
    Geometry g{{24}, 2};
    const Region r = reg1(g, {0});
    const Configuration cf = make_configuration(r, {1}, g);

    const PersistenceReport ident =
        persistence_probe(*make_identity_1d(), g, r, Region::empty(), Configuration{}, cf, 6);
    CHECK(ident.held);
    CHECK(ident.horizon == 6);

    // R_p = k ones immediately left of R: first deviation at t = k+1
    for (int k = 1; k <= 3; ++k) {
        std::vector<Coord> cells;
        for (int i = 1; i <= k; ++i) cells.push_back({-i});
        const Region rp = Region::of(cells, g);
        const Configuration cp = make_configuration(rp, std::vector<Sym>(rp.size(), 1), g);
        const PersistenceReport rep = persistence_probe(*make_shift({1}), g, r, rp, cp, cf, 8);
        CHECK(!rep.held);
        CHECK(rep.first_deviation_t == k + 1);
    }
}
