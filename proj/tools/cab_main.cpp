// cab: batch experiment runner for the reversible-CA workbench.
//
// Subcommands:
//   cab run <config>        execute the experiment stanzas of a JSON config
//   cab verify <records>    re-check every certificate in a record stream
//   cab rules list          list bundled rules
//   cab rules check <file>  validate a rule description file
//
// Records are JSONL, one self-describing object per line; the human table is
// rendered from the records, never from a second computation path.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "cab/serialize.hpp"

using nlohmann::json;
using namespace cab;

namespace {

void expect_keys(const json& j, const std::set<std::string>& allowed, const std::string& ctx) {
    if (!j.is_object()) throw ConfigError(ctx + ": expected a JSON object");
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key)) throw ConfigError(ctx + ": unknown field \"" + key + "\"");
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return j;
}

uint64_t default_cap() {
    if (const char* env = std::getenv("CAB_CAP")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        throw ConfigError("CAB_CAP must be a positive integer");
    }
    return kDefaultEnumerationCap;
}

struct RunContext {
    RulePtr rule;
    Geometry geom;
    uint64_t seed = 0;
    uint64_t cap = kDefaultEnumerationCap;
    int workers = 1;
};

SplitSpec split_of(const json& j, const Geometry& g, const std::string& ctx) {
    expect_keys(j, {"axis", "boundary"}, ctx + ".split");
    SplitSpec split{g, j.at("axis").get<int>(), j.at("boundary").get<int>()};
    split.validate();
    return split;
}

std::vector<std::vector<Sym>> map_table_of(const json& j, size_t region_size, int alphabet,
                                           const std::string& ctx) {
    std::vector<std::vector<Sym>> table;
    for (const auto& row : j) table.push_back(symbols_from_string(row.get<std::string>(), alphabet));
    const uint64_t want = [&] {
        uint64_t w = 1;
        for (size_t i = 0; i < region_size; ++i) w *= static_cast<uint64_t>(alphabet);
        return w;
    }();
    if (table.size() != want) throw ConfigError(ctx + ": map must list a^|region| outputs");
    for (const auto& row : table)
        if (row.size() != region_size) throw ConfigError(ctx + ": map row length mismatch");
    return table;
}

BackgroundPolicy policy_of(const json& stanza, const std::string& ctx) {
    const std::string p = stanza.value("policy", std::string("zero"));
    if (p == "zero") return BackgroundPolicy::zero;
    if (p == "enumerate") return BackgroundPolicy::enumerate_all;
    throw ConfigError(ctx + ": policy must be \"zero\" or \"enumerate\"");
}

json search_result_json(const SearchResult& r) {
    if (found(r)) return {{"found", true}, {"certificate", certificate_to_json(certificate(r))}};
    const auto& nf = std::get<NotFoundWithinBounds>(r);
    return {{"found", false},
            {"not_found", {{"max_time", nf.max_time},
                           {"window", nf.window},
                           {"candidates_tested", nf.candidates_tested}}}};
}

// ---- stanza handlers -------------------------------------------------------

json run_simulate(const RunContext& cx, const json& stanza, const std::string& ctx) {
    expect_keys(stanza, {"id", "type", "cells", "t"}, ctx);
    FullState s{cx.geom, symbols_from_string(stanza.at("cells").get<std::string>(), cx.geom.alphabet)};
    if (s.cells.size() != cx.geom.cells()) throw ConfigError(ctx + ": cell count mismatch");
    const long long t = stanza.at("t").get<long long>();
    const FullState out = evolve(s, *cx.rule, t);
    return {{"final_cells", symbols_to_string(out.cells)}, {"digest", state_digest(out)}};
}

json run_search_prep(const RunContext& cx, const json& stanza, const std::string& ctx) {
    expect_keys(stanza, {"id", "type", "mode", "region", "c_i", "c_f", "max_time", "window",
                         "policy"},
                ctx);
    const std::string mode = stanza.at("mode").get<std::string>();
    PreparationTask task;
    task.region = region_from_json(stanza.at("region"), cx.geom);
    task.c_f = configuration_from_json(stanza.at("c_f"), cx.geom);
    task.max_time = stanza.at("max_time").get<int>();
    task.window = region_from_json(stanza.at("window"), cx.geom);
    task.policy = policy_of(stanza, ctx);
    SearchResult r;
    bool unconditional = false;
    if (mode == "conditional") {
        task.c_i = configuration_from_json(stanza.at("c_i"), cx.geom);
        r = search_conditional_prep(*cx.rule, cx.geom, task, cx.cap);
    } else if (mode == "unconditional") {
        if (stanza.contains("c_i")) throw ConfigError(ctx + ": unconditional mode takes no c_i");
        unconditional = true;
        r = search_unconditional_prep(*cx.rule, cx.geom, task, cx.cap);
    } else {
        throw ConfigError(ctx + ": mode must be \"conditional\" or \"unconditional\"");
    }
    json out = search_result_json(r);
    if (found(r)) {
        if (!verify_certificate(*cx.rule, cx.geom, task, certificate(r), unconditional))
            throw InvariantViolation(ctx + ": certificate failed re-verification");
        out["verified"] = true;
    }
    return out;
}

json run_search_map(const RunContext& cx, const json& stanza, const std::string& ctx) {
    expect_keys(stanza, {"id", "type", "region", "map", "max_time", "window", "policy"}, ctx);
    BijectionTask task;
    task.region = region_from_json(stanza.at("region"), cx.geom);
    task.map = map_table_of(stanza.at("map"), task.region.size(), cx.geom.alphabet, ctx);
    task.max_time = stanza.at("max_time").get<int>();
    task.window = region_from_json(stanza.at("window"), cx.geom);
    task.policy = policy_of(stanza, ctx);
    const SearchResult r = search_map(*cx.rule, cx.geom, task, cx.cap);
    json out = search_result_json(r);
    if (found(r)) {
        if (!verify_certificate(*cx.rule, cx.geom, task, certificate(r)))
            throw InvariantViolation(ctx + ": certificate failed re-verification");
        out["verified"] = true;
    }
    return out;
}

json run_prior(const RunContext& cx, const json& stanza, const std::string& ctx) {
    expect_keys(stanza, {"id", "type", "split", "c", "t", "mode", "n"}, ctx);
    const SplitSpec split = split_of(stanza.at("split"), cx.geom, ctx);
    const Configuration c = configuration_from_json(stanza.at("c"), cx.geom);
    const int t = stanza.at("t").get<int>();
    const std::string mode = stanza.value("mode", std::string("exact"));
    if (mode == "exact")
        return {{"mode", "exact"}, {"value", physical_prior_exact(*cx.rule, split, c, t, cx.cap)}};
    if (mode != "mc") throw ConfigError(ctx + ": mode must be \"exact\" or \"mc\"");
    const uint64_t n = stanza.value("n", uint64_t{10000});
    const auto est = physical_prior_mc(*cx.rule, split, c, t, n, cx.seed, cx.workers);
    return {{"mode", "mc"}, {"estimate", estimate_to_json(est)}};
}

ComplexityTarget target_of(const json& j, const Geometry& g, const std::string& ctx) {
    expect_keys(j, {"c", "region", "map"}, ctx + ".target");
    if (j.contains("c")) return configuration_from_json(j.at("c"), g);
    MapTarget mt;
    mt.region = region_from_json(j.at("region"), g);
    mt.map = map_table_of(j.at("map"), mt.region.size(), g.alphabet, ctx);
    return mt;
}

ComplexityBounds bounds_of(const RunContext& cx, const json& stanza, const std::string& ctx) {
    ComplexityBounds b;
    b.max_time = stanza.at("max_time").get<int>();
    b.window = region_from_json(stanza.at("window"), cx.geom);
    b.max_program_cells = stanza.at("max_program_cells").get<int>();
    b.cap = cx.cap;
    return b;
}

json complexity_result_json(const ComplexityResult& r) {
    if (found_complexity(r)) {
        const auto& c = std::get<ComplexityCertificate>(r);
        return {{"found", true},
                {"certificate", {{"program_region", c.program_region},
                                 {"program", symbols_to_string(c.program)},
                                 {"t", c.t},
                                 {"value", c.value}}}};
    }
    const auto& nf = std::get<NotFoundWithinBounds>(r);
    return {{"found", false},
            {"not_found", {{"max_time", nf.max_time},
                           {"window", nf.window},
                           {"candidates_tested", nf.candidates_tested}}}};
}

json run_complexity(const RunContext& cx, const json& stanza, const std::string& ctx) {
    expect_keys(stanza, {"id", "type", "split", "target", "max_time", "window",
                         "max_program_cells"},
                ctx);
    const SplitSpec split = split_of(stanza.at("split"), cx.geom, ctx);
    const ComplexityTarget target = target_of(stanza.at("target"), cx.geom, ctx);
    const ComplexityResult r =
        physical_complexity(*cx.rule, split, target, bounds_of(cx, stanza, ctx));
    json out = complexity_result_json(r);
    if (found_complexity(r)) {
        const auto& cert = std::get<ComplexityCertificate>(r);
        if (!verify_complexity_certificate(*cx.rule, split, target, cert, cx.cap))
            throw InvariantViolation(ctx + ": complexity certificate failed re-verification");
        out["verified"] = true;
    }
    return out;
}

json run_kraft(const RunContext& cx, const json& stanza, const std::string& ctx) {
    expect_keys(stanza, {"id", "type", "split", "configs", "max_time", "window",
                         "max_program_cells"},
                ctx);
    const SplitSpec split = split_of(stanza.at("split"), cx.geom, ctx);
    std::vector<Configuration> configs;
    for (const auto& c : stanza.at("configs"))
        configs.push_back(configuration_from_json(c, cx.geom));
    const KraftReport rep = kraft_check(*cx.rule, split, configs, bounds_of(cx, stanza, ctx));
    if (!rep.holds)
        throw InvariantViolation(ctx + ": Kraft sum exceeds 1");
    return {{"sum", rep.sum}, {"found", rep.found}, {"total", rep.total}, {"holds", rep.holds}};
}

json run_cycle_cost(const RunContext& cx, const json& stanza, const std::string& ctx) {
    expect_keys(stanza, {"id", "type", "c", "tau", "k", "tau_window"}, ctx);
    const Configuration c = configuration_from_json(stanza.at("c"), cx.geom);
    std::optional<std::pair<int, int>> window;
    if (stanza.contains("tau_window")) {
        const auto& w = stanza.at("tau_window");
        window = std::make_pair(w.at(0).get<int>(), w.at(1).get<int>());
    }
    const CycleCostReport rep = cycle_cost(*cx.rule, cx.geom, c, stanza.at("tau").get<int>(),
                                           stanza.at("k").get<int>(), window, cx.cap);
    json out = {{"tau", rep.tau}, {"k", rep.k}};
    out["free_energy_bits"] = rep.free_energy_bits ? json(*rep.free_energy_bits) : json(nullptr);
    if (rep.averaged) out["averaged"] = *rep.averaged;
    return out;
}

json run_influx(const RunContext& cx, const json& stanza, const std::string& ctx) {
    expect_keys(stanza, {"id", "type", "region", "x", "program_region", "program", "t"}, ctx);
    const Region region = region_from_json(stanza.at("region"), cx.geom);
    const Coord x = stanza.at("x").get<Coord>();
    const Region rp = region_from_json(stanza.at("program_region"), cx.geom);
    const Configuration cp = make_configuration(
        rp, symbols_from_string(stanza.at("program").get<std::string>(), cx.geom.alphabet),
        cx.geom);
    const InfluxReport rep = entropy_influx_experiment(*cx.rule, cx.geom, region, x, rp, cp,
                                                       stanza.at("t").get<int>(), cx.cap);
    if (rep.transfer_verified && !rep.holds)
        throw InvariantViolation(ctx + ": entropy-influx bound violated");
    return {{"transfer_verified", rep.transfer_verified},
            {"measured_entropy_bits", rep.measured_entropy_bits},
            {"bound_bits", rep.bound_bits},
            {"holds", rep.holds}};
}

json run_mixing(const RunContext& cx, const json& stanza, const std::string& ctx) {
    expect_keys(stanza, {"id", "type", "sets", "horizon", "mode", "n"}, ctx);
    std::vector<CylinderSet> sets;
    for (const auto& s : stanza.at("sets")) sets.push_back(cylinder_from_json(s, cx.geom));
    const int horizon = stanza.at("horizon").get<int>();
    const std::string mode = stanza.value("mode", std::string("exact"));
    MixingReport rep;
    if (mode == "exact") {
        rep = weak_mixing_exact(*cx.rule, cx.geom, sets, horizon, cx.cap);
    } else if (mode == "mc") {
        rep = weak_mixing_mc(*cx.rule, cx.geom, sets, horizon,
                             stanza.value("n", uint64_t{10000}), cx.seed);
    } else {
        throw ConfigError(ctx + ": mode must be \"exact\" or \"mc\"");
    }
    return {{"mode", mode}, {"terms", rep.terms}, {"average", rep.average},
            {"product", rep.product}, {"gap", rep.gap}};
}

json run_persistence(const RunContext& cx, const json& stanza, const std::string& ctx) {
    expect_keys(stanza, {"id", "type", "region", "program_region", "program", "c_f", "horizon"},
                ctx);
    const Region region = region_from_json(stanza.at("region"), cx.geom);
    const Region rp = region_from_json(stanza.at("program_region"), cx.geom);
    const Configuration cp = make_configuration(
        rp, symbols_from_string(stanza.at("program").get<std::string>(), cx.geom.alphabet),
        cx.geom);
    const Configuration cf = configuration_from_json(stanza.at("c_f"), cx.geom);
    const PersistenceReport rep = persistence_probe(*cx.rule, cx.geom, region, rp, cp, cf,
                                                    stanza.at("horizon").get<int>(), cx.cap);
    json out = {{"held", rep.held}, {"horizon", rep.horizon}};
    if (!rep.held) {
        out["first_deviation_t"] = rep.first_deviation_t;
        if (rep.witness_environment)
            out["witness_environment"] = configuration_to_json(*rep.witness_environment);
    }
    return out;
}

json run_stanza(const RunContext& cx, const json& stanza) {
    const std::string id = stanza.value("id", std::string("?"));
    const std::string ctx = "stanza \"" + id + "\"";
    if (!stanza.contains("type")) throw ConfigError(ctx + ": missing type");
    const std::string type = stanza.at("type").get<std::string>();
    json result;
    if (type == "simulate") result = run_simulate(cx, stanza, ctx);
    else if (type == "search-prep") result = run_search_prep(cx, stanza, ctx);
    else if (type == "search-map") result = run_search_map(cx, stanza, ctx);
    else if (type == "prior") result = run_prior(cx, stanza, ctx);
    else if (type == "complexity") result = run_complexity(cx, stanza, ctx);
    else if (type == "kraft") result = run_kraft(cx, stanza, ctx);
    else if (type == "cycle-cost") result = run_cycle_cost(cx, stanza, ctx);
    else if (type == "influx") result = run_influx(cx, stanza, ctx);
    else if (type == "mixing") result = run_mixing(cx, stanza, ctx);
    else if (type == "persistence") result = run_persistence(cx, stanza, ctx);
    else throw ConfigError(ctx + ": unknown type \"" + type + "\"");

    json record = {{"id", id},
                   {"type", type},
                   {"rule", cx.rule->to_json()},
                   {"geometry", cx.geom},
                   {"inputs", stanza},
                   {"seed", cx.seed},
                   {"cap", cx.cap},
                   {"result", result}};
    return record;
}

std::string summarize(const json& record) {
    const json& r = record.at("result");
    const std::string type = record.at("type").get<std::string>();
    std::ostringstream out;
    if (type == "simulate") {
        out << "digest=" << r.at("digest").get<uint64_t>();
    } else if (type == "search-prep" || type == "search-map" || type == "complexity") {
        if (r.at("found").get<bool>()) {
            const json& c = r.at("certificate");
            out << "certificate t=" << c.at("t").get<int>()
                << " program=\"" << c.at("program").get<std::string>() << "\"";
            if (c.contains("value")) out << " C=" << c.at("value").get<double>() << " bits";
        } else {
            out << "not found within bounds ("
                << r.at("not_found").at("candidates_tested").get<uint64_t>() << " candidates)";
        }
    } else if (type == "prior") {
        if (r.at("mode") == "exact") out << "P=" << r.at("value").get<double>();
        else out << "P^=" << r.at("estimate").at("p_hat").get<double>();
    } else if (type == "kraft") {
        out << "sum=" << r.at("sum").get<double>() << " holds=" << r.at("holds").get<bool>();
    } else if (type == "cycle-cost") {
        if (r.at("free_energy_bits").is_null()) out << "F=impossible";
        else out << "F=" << r.at("free_energy_bits").get<double>() << " bits";
    } else if (type == "influx") {
        out << "S=" << r.at("measured_entropy_bits").get<double>() << " bits >= bound "
            << r.at("bound_bits").get<double>() << " holds=" << r.at("holds").get<bool>();
    } else if (type == "mixing") {
        out << "avg=" << r.at("average").get<double>() << " gap=" << r.at("gap").get<double>();
    } else if (type == "persistence") {
        if (r.at("held").get<bool>()) out << "held for full horizon";
        else out << "deviated at t=" << r.at("first_deviation_t").get<int>();
    }
    return out.str();
}

int cmd_run(const std::string& config_path, std::optional<uint64_t> seed,
            std::optional<uint64_t> cap, int workers, const std::string& out_path) {
    const json cfg = load_json_file(config_path);
    expect_keys(cfg, {"rule", "rule_file", "geometry", "seed", "cap", "experiments"}, "config");

    RunContext cx;
    cx.geom = cfg.at("geometry").get<Geometry>();
    if (cfg.contains("rule") == cfg.contains("rule_file"))
        throw ConfigError("config: exactly one of \"rule\" / \"rule_file\" required");
    cx.rule = rule_from_json(cfg.contains("rule") ? cfg.at("rule")
                                                  : load_json_file(cfg.at("rule_file")));
    std::string why;
    if (!cx.rule->compatible(cx.geom, &why))
        throw ConfigError("config: rule incompatible with geometry: " + why);
    cx.seed = seed ? *seed : cfg.value("seed", uint64_t{0});
    cx.cap = cap ? *cap : (cfg.contains("cap") ? cfg.at("cap").get<uint64_t>() : default_cap());
    cx.workers = workers;

    std::vector<json> records;
    for (const auto& stanza : cfg.at("experiments")) records.push_back(run_stanza(cx, stanza));

    std::ostream* rec_out = &std::cout;
    std::ofstream file_out;
    if (!out_path.empty()) {
        file_out.open(out_path);
        if (!file_out) throw ConfigError("cannot open output file " + out_path);
        rec_out = &file_out;
    }
    for (const auto& rec : records) *rec_out << rec.dump() << "\n";

    if (!out_path.empty()) {  // human table, derived from the records only
        for (const auto& rec : records)
            std::cout << rec.at("id").get<std::string>() << "  " << rec.at("type").get<std::string>()
                      << "  " << summarize(rec) << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& records_path) {
    std::ifstream in(records_path);
    if (!in) throw ConfigError("cannot open " + records_path);
    std::string line;
    size_t checked = 0, failed = 0, lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::exception& e) {
            throw ConfigError(records_path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        const std::string type = rec.at("type").get<std::string>();
        const json& result = rec.at("result");
        if (!result.contains("found") || !result.at("found").get<bool>()) continue;
        const Geometry g = rec.at("geometry").get<Geometry>();
        const RulePtr rule = rule_from_json(rec.at("rule"));
        const json& inputs = rec.at("inputs");
        bool ok = true;
        if (type == "search-prep") {
            PreparationTask task;
            task.region = region_from_json(inputs.at("region"), g);
            task.c_f = configuration_from_json(inputs.at("c_f"), g);
            task.max_time = inputs.at("max_time").get<int>();
            task.window = region_from_json(inputs.at("window"), g);
            task.policy = policy_of(inputs, "record");
            const bool uncond = inputs.at("mode").get<std::string>() == "unconditional";
            if (!uncond) task.c_i = configuration_from_json(inputs.at("c_i"), g);
            ok = verify_certificate(*rule, g, task,
                                    certificate_from_json(result.at("certificate"), g), uncond);
        } else if (type == "search-map") {
            BijectionTask task;
            task.region = region_from_json(inputs.at("region"), g);
            task.map = map_table_of(inputs.at("map"), task.region.size(), g.alphabet, "record");
            task.max_time = inputs.at("max_time").get<int>();
            task.window = region_from_json(inputs.at("window"), g);
            task.policy = policy_of(inputs, "record");
            ok = verify_certificate(*rule, g, task,
                                    certificate_from_json(result.at("certificate"), g));
        } else if (type == "complexity") {
            const SplitSpec split = split_of(inputs.at("split"), g, "record");
            const ComplexityTarget target = target_of(inputs.at("target"), g, "record");
            const json& c = result.at("certificate");
            ComplexityCertificate cert;
            cert.program_region = region_from_json(c.at("program_region"), g);
            cert.program = symbols_from_string(c.at("program").get<std::string>(), g.alphabet);
            cert.t = c.at("t").get<int>();
            cert.value = c.at("value").get<double>();
            ok = verify_complexity_certificate(*rule, split, target, cert);
        } else {
            continue;  // record carries no certificate
        }
        ++checked;
        if (!ok) ++failed;
        std::cout << rec.at("id").get<std::string>() << "  " << (ok ? "OK" : "FAIL") << "\n";
    }
    std::cout << checked << " certificate(s) checked, " << failed << " failed\n";
    if (failed) throw InvariantViolation("certificate re-verification failed");
    return 0;
}

int cmd_rules_list() {
    for (const auto& rule : bundled_rules())
        std::cout << rule->name() << "  family=" << rule->family() << "  radius=" << rule->radius()
                  << "  covariance_stride=" << rule->covariance_stride() << "\n";
    return 0;
}

int cmd_rules_check(const std::string& path) {
    const RulePtr rule = rule_from_json(load_json_file(path));
    // Find a small compatible torus and check reversibility there.
    std::vector<Geometry> candidates;
    for (int a : {2, 3, 4, 9, 16})
        for (int n : {4, 6}) {
            candidates.push_back(Geometry{{n}, a});
            candidates.push_back(Geometry{{n, n}, a});
        }
    for (const auto& g : candidates) {
        if (!rule->compatible(g, nullptr)) continue;
        double states = 1.0;
        for (uint64_t i = 0; i < g.cells(); ++i) states *= g.alphabet;
        const auto report =
            states <= double(kDefaultExhaustiveCap)
                ? verify_reversibility(*rule, g)
                : verify_reversibility(*rule, g, SampledMode{10000, 0});
        std::cout << rule->name() << ": loads OK; reversibility "
                  << (report.pass ? "pass" : "FAIL") << " ("
                  << (report.exhaustive ? "exhaustive, " : "sampled, ") << report.tested
                  << " states)\n";
        if (!report.pass) throw InvariantViolation("rule fails reversibility check");
        return 0;
    }
    throw ConfigError("no small test geometry is compatible with this rule");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reversible-CA workbench"};
    app.require_subcommand(1);

    std::string config_path, records_path, rule_path, out_path;
    std::optional<uint64_t> seed, cap;
    int workers = 1;

    auto* run = app.add_subcommand("run", "execute the experiments of a config file");
    run->add_option("config", config_path, "JSON experiment config")->required();
    run->add_option("--seed", seed, "root RNG seed (overrides config)");
    run->add_option("--workers", workers, "worker threads for sampling")->check(CLI::PositiveNumber);
    run->add_option("--cap", cap, "enumeration cap (overrides config and CAB_CAP)");
    run->add_option("--out", out_path, "record file (JSONL); table goes to stdout");

    auto* verify = app.add_subcommand("verify", "re-check certificates in a record stream");
    verify->add_option("records", records_path, "JSONL record file")->required();

    auto* rules = app.add_subcommand("rules", "rule utilities");
    rules->require_subcommand(1);
    rules->add_subcommand("list", "list bundled rules");
    auto* check = rules->add_subcommand("check", "validate a rule description file");
    check->add_option("rule-file", rule_path, "rule JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, seed, cap, workers, out_path);
        if (verify->parsed()) return cmd_verify(records_path);
        if (rules->get_subcommand("list")->parsed()) return cmd_rules_list();
        return cmd_rules_check(rule_path);
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const InvariantViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const LightConeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
