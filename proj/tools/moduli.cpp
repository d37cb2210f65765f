// moduli: command-line front end.
//
// Exit codes: 0 ok, 1 verification mismatch, 2 usage error, 3 numeric failure.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "moduli/moduli.hpp"

namespace {

using nlohmann::json;
using namespace moduli;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("MODULI_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ArgumentError(std::string("MODULI_SEED is not an integer: ") + env);
        }
    }
    return 1;
}

json read_json(const std::string& path) {
    if (path == "-") return json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ArgumentError(path + ": " + e.what());
    }
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

json poly_json(const GradedPoly& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back({{"coeff", c}, {"a", e.first}, {"b", e.second}});
    return json{{"terms", terms}, {"text", p.str()}, {"at_one", p.at_one()}};
}

json concrete_json(const ConcretePoly& p) {
    json terms = json::array();
    for (const auto& [e, c] : p) terms.push_back({{"exponent", e}, {"coeff", c}});
    return json{{"terms", terms}, {"at_one", concrete_at_one(p)}};
}

json member_json(const FamilyMember& m) {
    return json{{"points", m.points}, {"graph", m.graph}, {"lineage", m.lineage}};
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ArgumentError("not an integer list: " + s);
        }
    }
    if (out.empty()) throw ArgumentError("empty integer list");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chambers, counts and families of geometric graphs"};
    app.require_subcommand(1);
    int jobs = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
    app.add_option("--jobs", jobs, "worker cap")->check(CLI::PositiveNumber);

    // realize
    auto* realize_cmd = app.add_subcommand("realize", "points in R^d whose geometric graph is G");
    std::string graph_path;
    int realize_d = 0;
    double realize_eps = 0.1;
    realize_cmd->add_option("--graph", graph_path, "labeled graph JSON")->required();
    realize_cmd->add_option("--d,--dim", realize_d, "dimension (default n)");
    realize_cmd->add_option("--eps", realize_eps, "distance margin");

    // witness
    auto* witness_cmd = app.add_subcommand("witness", "explicit rigid isotopy between two realizations");
    std::string p0_path, p1_path, r_path;
    int steps = 1024;
    bool keep_path = false;
    witness_cmd->add_option("--p0", p0_path)->required();
    witness_cmd->add_option("--p1", p1_path)->required();
    witness_cmd->add_option("--r", r_path, "realization of the common graph (default: realize it)");
    witness_cmd->add_option("--steps", steps)->check(CLI::Range(2, 1 << 20));
    witness_cmd->add_flag("--path", keep_path, "include the sampled path");

    // graph-of
    auto* graph_cmd = app.add_subcommand("graph-of", "geometric graph of a point configuration");
    std::string points_path;
    double tol = kDefaultDegeneracyTol;
    graph_cmd->add_option("--points", points_path)->required();
    graph_cmd->add_option("--tol", tol);

    // line-enum
    auto* line_cmd = app.add_subcommand("line-enum", "chambers for n points on the line");
    int line_n = 0;
    bool count_only = false;
    bool with_graphs = false;
    std::string chambers_out;
    line_cmd->add_option("--n", line_n)->required()->check(CLI::Range(1, kMaxLineEnumeration));
    line_cmd->add_flag("--count-only", count_only);
    line_cmd->add_flag("--graphs", with_graphs, "realizable graphs with chamber multiplicities");
    line_cmd->add_option("--out", chambers_out, "JSONL, one chamber and witness point per line");

    // egf
    auto* egf_cmd = app.add_subcommand("egf", "counts from the exponential generating functions");
    std::string kind = "semiorder";
    int upto = 10;
    int order = kDefaultSeriesOrder;
    bool asymptotic = false;
    egf_cmd->add_option("--kind,--what", kind)->check(CLI::IsMember({"semiorder", "semiorders", "uig"}));
    egf_cmd->add_option("--upto,--n", upto)->check(CLI::Range(0, 400));
    egf_cmd->add_flag("--asymptotic", asymptotic, "CSV of n, exact, asymptotic, ratio");
    egf_cmd->add_option("--order", order, "series truncation order")->check(CLI::Range(0, 400));

    // euler
    auto* euler_cmd = app.add_subcommand("euler", "chamber count from the E1 page");
    int euler_n = 3;
    euler_cmd->add_option("--n", euler_n)->required()->check(CLI::Range(2, kMaxEulerN));

    // index-check
    auto* index_cmd = app.add_subcommand("index-check", "sample the index function of the quadric family");
    int index_n = 3, index_d = 2;
    std::string sigma_path;
    std::int64_t samples = 10000;
    std::uint64_t seed = 0;
    double quad_eps = kDefaultQuadricEps;
    index_cmd->add_option("--n", index_n)->required()->check(CLI::Range(1, 64));
    index_cmd->add_option("--d", index_d)->required()->check(CLI::Range(1, 64));
    index_cmd->add_option("--sigma", sigma_path, "sign condition JSON (default all +1)");
    index_cmd->add_option("--samples", samples)->check(CLI::PositiveNumber);
    auto* index_seed = index_cmd->add_option("--seed", seed);
    index_cmd->add_option("--eps", quad_eps);

    // poincare
    auto* poincare_cmd = app.add_subcommand("poincare", "Poincare polynomials");
    bool config_space = false, table4 = false, complement = false;
    int poincare_n = 4;
    int eval_d = 0;
    std::vector<std::string> drop_paths;
    poincare_cmd->add_flag("--config-space", config_space);
    poincare_cmd->add_flag("--table4", table4);
    poincare_cmd->add_flag("--complement", complement);
    poincare_cmd->add_option("--n", poincare_n);
    poincare_cmd->add_option("--graph", graph_path);
    poincare_cmd->add_option("--eval-d", eval_d, "substitute d and merge exponents");
    poincare_cmd->add_option("--drop", drop_paths, "graph types with no chamber in this dimension");

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "log bounds as CSV");
    int bounds_d = 2;
    std::string bounds_ns;
    bounds_cmd->add_option("--d", bounds_d)->required()->check(CLI::PositiveNumber);
    bounds_cmd->add_option("--n", bounds_ns, "comma separated")->required();

    // family
    auto* family_cmd = app.add_subcommand("family", "lower-bound family of point configurations");
    FamilyConfig fcfg;
    std::string out_path;
    family_cmd->add_option("--d", fcfg.d)->required()->check(CLI::Range(1, 8));
    family_cmd->add_option("--n", fcfg.n_target)->required()->check(CLI::Range(2, 64));
    auto* family_seed = family_cmd->add_option("--seed", fcfg.seed);
    family_cmd->add_option("--eps0", fcfg.eps0);
    family_cmd->add_option("--C", fcfg.C, "schedule constant (default: from Lipschitz probes)");
    family_cmd->add_option("--budget", fcfg.budget);
    family_cmd->add_option("--lineages", fcfg.lineages);
    family_cmd->add_option("--out", out_path, "JSONL output, one member per line");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "cross-check independent computations");
    std::string level = "quick";
    verify_cmd->add_option("--level", level)->check(CLI::IsMember({"quick", "full"}));
    auto* verify_seed = verify_cmd->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (realize_cmd->parsed()) {
            const LabeledGraph g = read_json(graph_path).get<LabeledGraph>();
            emit(json(realize(g, realize_d > 0 ? realize_d : g.n(), realize_eps)));
        } else if (witness_cmd->parsed()) {
            const PointConfig p0 = read_json(p0_path).get<PointConfig>();
            const PointConfig p1 = read_json(p1_path).get<PointConfig>();
            const PointConfig r = r_path.empty()
                                      ? realize(sign_condition(p0).graph(), p0.size(),
                                                std::min(0.1, 0.5 * realize_eps_bound(p0.size())))
                                      : read_json(r_path).get<PointConfig>();
            const auto w = isotopy_witness(p0, p1, r, steps, keep_path);
            json j{{"ok", w.ok},
                   {"steps", w.steps},
                   {"lifted_dim", w.lifted_dim},
                   {"min_margin", w.min_margin},
                   {"max_identity_residual", w.max_identity_residual}};
            if (keep_path) j["path"] = w.path;
            emit(j);
        } else if (graph_cmd->parsed()) {
            const PointConfig p = read_json(points_path).get<PointConfig>();
            const auto g = geometric_graph(p, tol);
            emit(json{{"graph", g.graph}, {"degenerate", g.degenerate}, {"margin", discriminant_margin(p)}});
        } else if (line_cmd->parsed()) {
            json j{{"n", line_n}};
            if (with_graphs) {
                const auto census = realizable_graphs_line(line_n, jobs);
                j["chambers"] = census.chambers;
                j["graph_count"] = census.graph_count;
                json per = json::array();
                for (const auto& [g, m] : census.per_graph) per.push_back({{"graph", g}, {"chambers", m}});
                j["graphs"] = per;
                json hist = json::array();
                for (const auto& [m, count] : census.histogram) hist.push_back({{"chambers", m}, {"graphs", count}});
                j["histogram"] = hist;
            } else {
                const auto chambers = enumerate_chambers(line_n, jobs);
                j["chambers"] = chambers.size();
                if (!chambers_out.empty()) {
                    std::ofstream out(chambers_out);
                    if (!out) throw ArgumentError("cannot write " + chambers_out);
                    for (const auto& c : chambers) {
                        out << json{{"chamber", chamber_code(c)}, {"witness", witness_point(c, line_n)}}.dump() << '\n';
                    }
                }
                if (!count_only) {
                    json labels = json::array();
                    for (const auto& c : chambers) labels.push_back(chamber_code(c));
                    j["labels"] = labels;
                }
            }
            emit(j);
        } else if (egf_cmd->parsed()) {
            if (kind == "semiorders") kind = "semiorder";
            const int ord = std::max(order, upto);
            if (asymptotic) {
                if (kind != "semiorder") throw ArgumentError("--asymptotic applies to semiorders only");
                const RationalSeries s = semiorder_egf(ord);
                std::cout << "n,exact,asymptotic,ratio\n" << std::setprecision(17);
                for (int n = 1; n <= upto; ++n) {
                    const BigInt exact = s.egf_count(n);
                    std::cout << n << ',' << exact.str() << ',' << semiorder_asymptotic(n) << ','
                              << semiorder_asymptotic_ratio(exact, n) << '\n';
                }
                return kExitOk;
            }
            const RationalSeries s = kind == "semiorder" ? semiorder_egf(ord) : unit_interval_egf(ord);
            json counts = json::array();
            for (int n = 0; n <= upto; ++n) counts.push_back(s.egf_count(n).str());
            json j{{"kind", kind}, {"order", ord}, {"counts", counts}};
            if (kind == "semiorder") {
                json ratios = json::array();
                for (int n = 1; n <= upto; ++n) ratios.push_back(semiorder_asymptotic_ratio(s.egf_count(n), n));
                j["asymptotic_ratio"] = ratios;
            }
            emit(j);
        } else if (euler_cmd->parsed()) {
            const auto r = chamber_count_via_euler(euler_n, jobs);
            emit(json{{"n", euler_n},
                      {"e1", r.table.dims},
                      {"chi", r.chi},
                      {"top_betti", r.top_betti},
                      {"chambers", r.chambers}});
        } else if (index_cmd->parsed()) {
            if (index_seed->count() == 0) seed = default_seed();
            SignCondition sigma = sigma_path.empty()
                                      ? SignCondition(index_n, std::vector<int>(pair_count(index_n), 1))
                                      : read_json(sigma_path).get<SignCondition>();
            if (sigma.n() != index_n) throw ArgumentError("--n does not match the sign condition");
            const QuadricFamily fam(index_d, std::move(sigma), quad_eps);
            const auto c = index_value_census(fam, samples, seed, jobs);
            emit(json{{"observed_values", c.observed},
                      {"violations", c.violations()},
                      {"ambiguous", c.ambiguous},
                      {"samples", c.samples},
                      {"top_value_samples", c.top_observed}});
            if (c.violations() != 0) return kExitMismatch;
        } else if (poincare_cmd->parsed()) {
            if (config_space + table4 + complement != 1) {
                throw ArgumentError("choose exactly one of --config-space, --table4, --complement");
            }
            GradedPoly p;
            if (config_space) p = poincare_config(poincare_n);
            else if (table4) {
                if (graph_path.empty()) throw ArgumentError("--table4 needs --graph");
                p = poincare_table4(read_json(graph_path).get<LabeledGraph>());
            } else p = complement_poincare(poincare_n);
            json j{{"poly", poly_json(p)}};
            if (eval_d > 0) {
                std::vector<LabeledGraph> drop;
                for (const auto& path : drop_paths) drop.push_back(read_json(path).get<LabeledGraph>());
                const auto e = evaluate_at_d(p, eval_d, drop);
                j["d"] = eval_d;
                j["evaluated"] = concrete_json(e);
                j["chambers"] = concrete_coeff(e, 0);
            }
            emit(j);
        } else if (bounds_cmd->parsed()) {
            write_csv(std::cout, log_equivalence_report(parse_int_list(bounds_ns), bounds_d));
        } else if (family_cmd->parsed()) {
            if (family_seed->count() == 0) fcfg.seed = default_seed();
            fcfg.jobs = jobs;
            const Family fam = generate_family(fcfg);
            std::size_t bad = 0;
            double p2_min = std::numeric_limits<double>::infinity();
            for (const auto& m : fam.members) {
                const auto c = check_member(m, fam.config, fam.C);
                if (!c.p1 || !c.p2) ++bad;
                p2_min = std::min(p2_min, c.p2_residual);
            }
            if (!out_path.empty()) {
                std::ofstream out(out_path);
                if (!out) throw ArgumentError("cannot write " + out_path);
                for (const auto& m : fam.members) out << member_json(m).dump() << '\n';
            }
            emit(json{{"d", fcfg.d},
                      {"n", fcfg.n_target},
                      {"members", fam.members.size()},
                      {"sampled", fam.sampled},
                      {"C", fam.C},
                      {"eps0", fam.config.eps0},
                      {"p1_p2_failures", bad},
                      {"min_p2_residual", p2_min}});
            if (bad != 0) return kExitMismatch;
        } else if (verify_cmd->parsed()) {
            if (verify_seed->count() == 0) seed = default_seed();
            const auto report = verify(level, jobs, seed);
            emit(report.json());
            return report.ok() ? kExitOk : kExitMismatch;
        }
    } catch (const InconsistencyError& e) {
        std::cerr << "inconsistency: " << e.what() << '\n';
        return kExitMismatch;
    } catch (const ArgumentError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kExitUsage;
    } catch (const json::exception& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericFailure& e) {
        std::cerr << "numeric: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitOk;
}
