// Command-line front end: parses JSON problem descriptions, runs the exact
// pipelines, and emits machine-readable JSON reports.  All rationals travel
// as "p/q" strings; no floating point anywhere.
//
// Exit codes: 0 success, 2 precondition/genericity failure (with witness),
// 3 schema error, 4 internal invariant breach.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "limitwp/chains.hpp"
#include "limitwp/grassmann.hpp"
#include "limitwp/json_io.hpp"
#include "limitwp/modelgen.hpp"
#include "limitwp/ramification.hpp"

using namespace limitwp;
using json = nlohmann::json;
namespace cm = curvemodel;
namespace ng = nodalglue;
namespace gr = grassmann;
namespace rf = ramification;
namespace js = jsonio;

namespace {

struct Options {
    long g1 = -1, g2 = -1, delta = -1;
    std::string in_path, out_path;
    uint64_t seed = 1;
    long budget = -1;  // per-command default when negative
    bool inject_fault = false;  // selftest only: flip one check to prove failures surface
};

struct Outcome {
    json results;
    int exit_code = 0;
};

json load_input(const Options& opt) {
    if (opt.in_path.empty()) throw js::SchemaError("this command requires --in <file.json>");
    std::ifstream f(opt.in_path);
    if (!f) throw js::SchemaError("cannot open input file '" + opt.in_path + "'");
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw js::SchemaError(std::string("JSON parse error: ") + e.what());
    }
}

long take_long(const json& in, const char* key, long flag_value) {
    if (in.contains(key)) return js::parse_int(in.at(key), key);
    if (flag_value < 0) throw js::SchemaError(std::string("missing '") + key + "'");
    return flag_value;
}

invariants::ProfileData profile_from(const json& in, const Options& opt) {
    return invariants::compute_profile(take_long(in, "g1", opt.g1), take_long(in, "g2", opt.g2),
                                       take_long(in, "delta", opt.delta));
}

json lambda_json(const invariants::ProfileData& pd) {
    if (!pd.twist.lambda) return nullptr;
    return json::array({(*pd.twist.lambda)[0], (*pd.twist.lambda)[1]});
}

Outcome cmd_invariants(const Options& opt) {
    json in = opt.in_path.empty() ? json::object() : load_input(opt);
    auto pd = profile_from(in, opt);
    const auto& p = pd.profile;
    json r;
    r["g1"] = p.g1;
    r["g2"] = p.g2;
    r["delta"] = p.delta;
    r["g"] = p.genus();
    r["ell"] = {pd.twist.ell[0], pd.twist.ell[1]};
    r["m"] = {pd.twist.m[0], pd.twist.m[1]};
    r["lambda"] = lambda_json(pd);
    r["deg_l"] = pd.degrees.deg_l;
    r["h0_l"] = pd.degrees.h0_l;
    json coeff;
    coeff["restricted"] = invariants::restricted_delta_coefficient(pd);
    coeff["extended"] = invariants::extended_delta_coefficient(pd);
    try {
        coeff["complete"] = invariants::complete_delta_coefficient(pd);
    } catch (const std::invalid_argument&) {
        coeff["complete"] = nullptr;
    }
    r["delta_coefficients"] = coeff;
    r["total_limit_degree"] = invariants::total_limit_degree(pd);
    r["irreducible"] = chains::irreducible_family(p);
    if (p.delta == 2 && p.g1 >= 1 && p.g2 >= 1)
        r["component_count"] = chains::component_count_two_nodes(p);
    else
        r["component_count"] = nullptr;
    return {r, 0};
}

json condition_json(const cm::ConditionReport& c) {
    json j;
    j["ok"] = c.ok;
    j["failing_n"] = c.failing_n ? json(*c.failing_n) : json(nullptr);
    j["witness"] = c.witness ? json(*c.witness) : json(nullptr);
    j["expected"] = c.expected;
    j["found"] = c.found;
    return j;
}

Outcome cmd_conditions(const Options& opt) {
    json in = load_input(opt);
    auto pd = profile_from(in, opt);
    int i = static_cast<int>(take_long(in, "i", 1));
    auto m = js::parse_component(js::field(in, "component"));
    auto c1 = cm::check_condition_1(m, i, pd);
    auto c3 = cm::check_condition_3(m, i, pd);
    auto c5 = cm::check_condition_5(m, i, pd);
    json r;
    r["i"] = i;
    r["condition1"] = condition_json(c1);
    r["condition3"] = condition_json(c3);
    r["condition5"] = condition_json(c5);
    r["condition3_via_plucker"] = gr::condition3_via_plucker(m, i, pd);
    bool ok = c1.ok && c3.ok && c5.ok;
    r["generic"] = ok;
    return {r, ok ? 0 : 2};
}

Outcome cmd_h0(const Options& opt) {
    json in = load_input(opt);
    ng::NodalCurve c(js::parse_component(js::field(in, "comp1")),
                     js::parse_component(js::field(in, "comp2")));
    auto sheaf = js::parse_sheaf(js::field(in, "sheaf"), c);
    auto sections = ng::glued_h0(c, sheaf);
    json r;
    r["h0"] = sections.dim();
    r["rho1_rank"] = sections.rho1.rank();
    r["rho2_rank"] = sections.rho2.rank();
    r["side1_degree"] = 2 * c.comp(1).genus() - 2 + sheaf.side1.degree();
    r["side2_degree"] = 2 * c.comp(2).genus() - 2 + sheaf.side2.degree();
    return {r, 0};
}

Outcome cmd_ramification(const Options& opt) {
    json in = load_input(opt);
    auto m = js::parse_component(js::field(in, "component"));
    cm::PlaceDivisor twist;
    if (in.contains("twist")) twist = js::parse_twist(in.at("twist"), m);
    auto sys = rf::full_system(m, twist);
    if (sys.dim() == 0) throw rf::RamError("the twisted system has no sections");
    auto rd = rf::ram_divisor(sys);
    json r;
    r["dim"] = sys.dim();
    r["divisor"] = js::divisor_json(rd.divisor);
    r["total_degree"] = rd.total_degree;
    return {r, 0};
}

Outcome cmd_limit_divisor(const Options& opt) {
    json in = load_input(opt);
    auto pd = profile_from(in, opt);
    ng::NodalCurve c(js::parse_component(js::field(in, "comp1")),
                     js::parse_component(js::field(in, "comp2")));
    rf::LimitDivisor d;
    json r;
    if (in.value("complete", false)) {
        d = rf::special_limit(c, pd);
        r["delta_coefficient"] = invariants::complete_delta_coefficient(pd);
    } else {
        auto glue = js::parse_rat_vector(js::field(in, "glue"), "glue");
        d = rf::assemble_limit(c, pd, rf::extended_system(c, pd, 1, glue),
                               rf::extended_system(c, pd, 2, glue));
        r["delta_coefficient"] = invariants::extended_delta_coefficient(pd);
    }
    r["divisor"] = js::limit_divisor_json(d);
    r["expected_total_degree"] = invariants::total_limit_degree(pd);
    if (d.total_degree() != invariants::total_limit_degree(pd))
        throw std::logic_error("limit divisor degree mismatch");
    return {r, 0};
}

Outcome cmd_smoothable(const Options& opt) {
    json in = load_input(opt);
    auto pd = profile_from(in, opt);
    ng::NodalCurve c(js::parse_component(js::field(in, "comp1")),
                     js::parse_component(js::field(in, "comp2")));
    json r;
    if (in.contains("sheaf1") || in.contains("sheaf2")) {
        auto L1 = js::parse_sheaf(js::field(in, "sheaf1"), c);
        auto L2 = js::parse_sheaf(js::field(in, "sheaf2"), c);
        r["pair"] = true;
        r["smoothable"] = ng::smoothable_pair(c, pd, L1, L2);
    } else {
        int i = static_cast<int>(take_long(in, "i", 1));
        auto L = js::parse_sheaf(js::field(in, "sheaf"), c);
        r["pair"] = false;
        r["i"] = i;
        r["smoothable"] = ng::smoothable_single(c, pd, i, L);
    }
    return {r, 0};
}

Outcome cmd_orbit(const Options& opt) {
    json in = load_input(opt);
    auto pd = profile_from(in, opt);
    ng::NodalCurve c(js::parse_component(js::field(in, "comp1")),
                     js::parse_component(js::field(in, "comp2")));
    json r;
    for (int i = 1; i <= 2; ++i) {
        auto rep = gr::orbit_single(c, pd, i);
        r["side" + std::to_string(i)] = {{"orbit_dim", rep.orbit_dim},
                                         {"fixed_point", rep.fixed_point}};
    }
    if (pd.twist.lambda) {
        auto rep = gr::orbit_pair(c, pd);
        r["pair"] = {{"orbit_dim", rep.orbit_dim},
                     {"family_dim", rep.family_dim},
                     {"scalar_dim", rep.scalar_dim}};
    } else {
        r["pair"] = nullptr;
    }
    return {r, 0};
}

Outcome cmd_chain(const Options& opt) {
    json in = load_input(opt);
    auto pd = profile_from(in, opt);
    auto mu_rat = js::parse_rat_vector(js::field(in, "mu"), "mu");
    auto mu_norm = chains::normalize_mu(mu_rat);
    std::vector<long> mu;
    for (const Rat& x : mu_rat) {
        if (x.get_den() != 1) throw js::SchemaError("chain multiplicities must be integers");
        mu.push_back(to_long(x.get_num()));
    }
    auto c = chains::build_chain(pd.profile, mu);
    json r;
    r["components"] = c.size();
    json labels = json::array();
    for (const auto& comp : c.comps) labels.push_back(comp.label);
    r["labels"] = labels;
    r["edges"] = c.edges;
    r["genus"] = c.arithmetic_genus();
    r["mu_normalized"] = mu_norm;
    r["dualizing_degrees"] = chains::twist_degrees(c, chains::TwistTuple(c.size(), 0));
    int exit_code = 0;
    if (in.contains("lambda")) {
        chains::TwistTuple lambda(c.size(), 0);
        const json& lj = in.at("lambda");
        if (lj.is_array()) {
            if (static_cast<long>(lj.size()) != c.size())
                throw js::SchemaError("'lambda' array must cover every component");
            for (long k = 0; k < c.size(); ++k) lambda[k] = js::parse_int(lj.at(k), "lambda");
        } else if (lj.is_object()) {
            for (const auto& [key, val] : lj.items()) {
                long idx = -1;
                for (long k = 0; k < c.size(); ++k)
                    if (c.comps[k].label == key) idx = k;
                if (idx < 0) throw js::SchemaError("unknown component label '" + key + "'");
                lambda[idx] = js::parse_int(val, "lambda");
            }
        } else {
            throw js::SchemaError("'lambda' must be an array or an object keyed by label");
        }
        r["degrees"] = chains::twist_degrees(c, lambda);
        int i = static_cast<int>(take_long(in, "i", 1));
        auto rep = chains::validate_lambda_constraints(c, i, lambda);
        r["constraints"] = {{"ok", rep.ok}, {"violations", rep.violations}};
        if (!rep.ok) exit_code = 2;
    }
    if (in.contains("search_i")) {
        int i = static_cast<int>(js::parse_int(in.at("search_i"), "search_i"));
        auto res = chains::feasible_lambda_search(c, i, opt.budget < 0 ? 100000 : opt.budget);
        json tuples = json::array();
        for (size_t k = 0; k < res.tuples.size() && k < 50; ++k) tuples.push_back(res.tuples[k]);
        r["search"] = {{"count", res.tuples.size()},
                       {"complete", res.complete},
                       {"examined", res.examined},
                       {"tuples", tuples},
                       {"note", "necessary-condition filter only; an overapproximation"}};
    }
    return {r, exit_code};
}

Outcome cmd_selftest(const Options& opt) {
    std::vector<std::string> failures;
    auto require = [&](bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    };
    long scale = opt.budget < 0 ? 10 : opt.budget;  // number of randomized trials
    modelgen::Rng rng(opt.seed);

    // closed-form degree identity across a profile grid
    for (long g1 = 0; g1 <= 4 && scale > 0; ++g1)
        for (long g2 = 0; g2 <= 4; ++g2)
            for (long delta = 1; delta <= 4; ++delta) {
                if (delta <= 1 && g1 * g2 == 0) continue;
                auto d = invariants::compute_profile(g1, g2, delta);
                require(invariants::total_limit_degree_decomposed(d) ==
                            invariants::total_limit_degree(d),
                        "degree identity at profile " + std::to_string(g1) + "," +
                            std::to_string(g2) + "," + std::to_string(delta));
            }

    // exact Riemann-Roch identity on random twisted models
    for (long t = 0; t < scale; ++t) {
        long genus = rng.uniform(0, 2);
        long delta = rng.uniform(2, 3);
        auto m = modelgen::random_component(rng, genus, delta);
        cm::PlaceDivisor E;
        for (const auto& p : m.marked()) E.add_point(p, rng.uniform(-2, 2));
        E.at_infinity = rng.uniform(-2, 4);
        cm::PlaceDivisor dual = (-1) * E + (-1) * cm::reference_canonical(m);
        long lhs = cm::h0(m, E) - cm::h0(m, dual);
        long rhs = 2 * genus - 2 + E.degree() - genus + 1;
        if (opt.inject_fault && t == 0) lhs += 1;
        require(lhs == rhs, "riemann-roch identity, trial " + std::to_string(t));
    }

    // glued global sections of the reference sheaf have dimension g, and the
    // two genericity tests agree
    for (long t = 0; t < std::min(scale, 5L); ++t) {
        auto pd = invariants::compute_profile(1, 2, 2);
        auto m2 = modelgen::generic_component(rng, pd, 1);
        auto m1 = modelgen::generic_component(rng, pd, 2);
        ng::NodalCurve c(m1, m2);
        auto g = ng::glued_h0(c, ng::reference_sheaf(c, pd, 1, modelgen::random_glue(rng, 2)));
        require(g.dim() == pd.profile.genus(), "glued section count, trial " + std::to_string(t));
        require(gr::condition3_via_plucker(m2, 1, pd) == cm::check_condition_3(m2, 1, pd).ok,
                "genericity agreement, trial " + std::to_string(t));
    }

    // chain bookkeeping
    for (long a = 1; a <= 2 && scale > 0; ++a)
        for (long b = 1; b <= 2; ++b) {
            invariants::GenusProfile p{1, 2, 2};
            auto c = chains::build_chain(p, {a, b});
            require(c.arithmetic_genus() == p.genus(),
                    "chain genus at mu = " + std::to_string(a) + "," + std::to_string(b));
            auto deg = chains::twist_degrees(c, chains::TwistTuple(c.size(), 0));
            long total = 0;
            for (long d : deg) total += d;
            require(total == 2 * p.genus() - 2, "chain degree conservation");
        }

    json r;
    r["trials"] = scale;
    r["ok"] = failures.empty();
    r["failures"] = failures;
    return {r, failures.empty() ? 0 : 4};
}

int run(const std::string& name, const Options& opt) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    int exit_code = 0;
    try {
        if (name == "invariants") out = cmd_invariants(opt);
        else if (name == "conditions") out = cmd_conditions(opt);
        else if (name == "h0") out = cmd_h0(opt);
        else if (name == "ramification") out = cmd_ramification(opt);
        else if (name == "limit-divisor") out = cmd_limit_divisor(opt);
        else if (name == "smoothable") out = cmd_smoothable(opt);
        else if (name == "orbit") out = cmd_orbit(opt);
        else if (name == "chain") out = cmd_chain(opt);
        else if (name == "selftest") out = cmd_selftest(opt);
        exit_code = out.exit_code;
    } catch (const js::SchemaError& e) {
        out.results = {{"error", e.what()}, {"kind", "schema"}};
        exit_code = 3;
    } catch (const invariants::SemistabilityError& e) {
        out.results = {{"error", e.what()}, {"kind", "precondition"}};
        exit_code = 2;
    } catch (const cm::ModelError& e) {
        out.results = {{"error", e.what()}, {"kind", "precondition"}};
        exit_code = 2;
    } catch (const ng::GlueError& e) {
        out.results = {{"error", e.what()}, {"kind", "precondition"}};
        exit_code = 2;
    } catch (const rf::RamError& e) {
        out.results = {{"error", e.what()}, {"kind", "precondition"}};
        exit_code = 2;
    } catch (const gr::GrassmannError& e) {
        out.results = {{"error", e.what()}, {"kind", "precondition"}};
        exit_code = 2;
    } catch (const chains::ChainError& e) {
        out.results = {{"error", e.what()}, {"kind", "precondition"}};
        exit_code = 2;
    } catch (const std::invalid_argument& e) {
        out.results = {{"error", e.what()}, {"kind", "precondition"}};
        exit_code = 2;
    } catch (const std::exception& e) {
        out.results = {{"error", e.what()}, {"kind", "internal"}};
        exit_code = 4;
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    json report;
    report["schema"] = "limitwp-report/1";
    report["command"] = name;
    report["results"] = out.results;
    report["elapsed_ms"] = ms;
    std::string body = report.dump(2);
    if (!opt.out_path.empty()) {
        std::ofstream f(opt.out_path);
        if (!f) {
            std::cerr << "cannot open output file '" << opt.out_path << "'\n";
            return 3;
        }
        f << body << "\n";
    } else {
        std::cout << body << "\n";
    }
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact limit Weierstrass-point computations on two-component nodal curves"};
    app.require_subcommand(1);
    Options opt;
    std::string chosen;
    for (const char* name : {"invariants", "conditions", "h0", "ramification", "limit-divisor",
                             "smoothable", "orbit", "chain", "selftest"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--g1", opt.g1);
        sub->add_option("--g2", opt.g2);
        sub->add_option("--delta", opt.delta);
        sub->add_option("--in", opt.in_path);
        sub->add_option("--out", opt.out_path);
        sub->add_option("--seed", opt.seed);
        sub->add_option("--budget", opt.budget);
        if (std::string(name) == "selftest")
            sub->add_flag("--inject-fault", opt.inject_fault,
                          "deliberately fail one check (for testing the reporting path)");
        sub->callback([&chosen, name] { chosen = name; });
    }
    CLI11_PARSE(app, argc, argv);
    return run(chosen, opt);
}
