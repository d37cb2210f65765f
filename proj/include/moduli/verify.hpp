#ifndef MODULI_VERIFY_HPP
#define MODULI_VERIFY_HPP

// Cross-checks between independent computations, used by `moduli verify`.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "moduli/family.hpp"
#include "moduli/line_chambers.hpp"
#include "moduli/mv_euler.hpp"
#include "moduli/poincare.hpp"
#include "moduli/quad_index.hpp"
#include "moduli/series.hpp"

namespace moduli {

struct VerifyCheck {
    std::string name;
    std::string expected;
    std::string got;
    bool ok = false;
};

struct VerifyReport {
    std::string level;
    std::vector<VerifyCheck> checks;

    bool ok() const {
        for (const auto& c : checks) {
            if (!c.ok) return false;
        }
        return true;
    }

    void add(std::string name, const std::string& expected, const std::string& got) {
        checks.push_back({std::move(name), expected, got, expected == got});
    }

    nlohmann::json json() const {
        nlohmann::json j{{"level", level}, {"ok", ok()}, {"checks", nlohmann::json::array()}};
        for (const auto& c : checks) {
            j["checks"].push_back({{"name", c.name}, {"expected", c.expected}, {"got", c.got}, {"ok", c.ok}});
        }
        return j;
    }
};

namespace detail {

/// line enumeration / semiorder series / Euler recount, all three must agree
inline void three_way(VerifyReport& r, int n, int jobs) {
    const std::string line = std::to_string(enumerate_chambers(n, jobs).size());
    const std::string series = semiorder_count(n).str();
    r.add("chambers n=" + std::to_string(n) + " line vs series", line, series);
    if (n >= 2) {
        const std::string euler = std::to_string(chamber_count_via_euler(n, jobs).chambers);
        r.add("chambers n=" + std::to_string(n) + " line vs euler", line, euler);
    }
}

inline std::string e1_string(const E1Table& t) {
    std::string s;
    for (std::size_t i = 0; i < t.dims.size(); ++i) {
        for (std::size_t j = 0; j < t.dims[i].size(); ++j) {
            if (t.dims[i][j] != 0) {
                s += "E(" + std::to_string(i) + "," + std::to_string(j) + ")=" + std::to_string(t.dims[i][j]) + " ";
            }
        }
    }
    return s;
}

} // namespace detail

/// quick: n <= 4 chambers three ways, the n=3 E1 page, the n=4 Poincare
/// aggregation and 10^3 index samples. full adds n=5 chambers, the n=6 Euler
/// recount and the d=2, n=8 family.
inline VerifyReport verify(const std::string& level, int jobs = 1, std::uint64_t seed = 1,
                           const GraphTypeTable& table4 = graph_type_table(4)) {
    if (level != "quick" && level != "full") throw ArgumentError("verify level must be quick or full");
    VerifyReport r;
    r.level = level;
    for (int n = 2; n <= 4; ++n) detail::three_way(r, n, jobs);

    r.add("E1 page n=3", "E(0,0)=3 E(0,2)=6 E(1,0)=3 E(1,1)=12 E(2,0)=1 ", detail::e1_string(e1_table(3, jobs)));

    const GradedPoly expected4 = complement_closed_form(4);
    GradedPoly aggregated;
    std::string aggregate_error;
    try {
        aggregated = aggregate_poincare(4, table4);
    } catch (const InconsistencyError& e) {
        aggregate_error = e.what();
    }
    r.add("poincare aggregation n=4", expected4.str(), aggregate_error.empty() ? aggregated.str() : aggregate_error);
    r.add("poincare aggregation n=3", complement_closed_form(3).str(),
          aggregate_poincare(3, graph_type_table(3)).str());
    if (aggregate_error.empty()) {
        const auto d1 = evaluate_at_d(aggregated, 1,
                                      {LabeledGraph::from_edges(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}}),
                                       LabeledGraph::from_edges(4, {{1, 2}, {1, 3}, {1, 4}})});
        r.add("poincare d=1 chambers n=4", "183", std::to_string(concrete_coeff(d1, 0)));
        r.add("poincare d=2 chambers n=4", "71", std::to_string(concrete_coeff(evaluate_at_d(aggregated, 2), 0)));
    }

    {
        std::int64_t violations = 0;
        for (int d = 1; d <= 3; ++d) {
            const QuadricFamily fam(d, SignCondition::of_graph(LabeledGraph::from_mask(3, 0b101)));
            violations += index_value_census(fam, 1000, seed + static_cast<std::uint64_t>(d), jobs).violations();
        }
        r.add("index decomposition violations", "0", std::to_string(violations));
    }

    if (level == "full") {
        detail::three_way(r, 5, jobs);
        r.add("chambers n=6 euler vs series", semiorder_count(6).str(),
              std::to_string(chamber_count_via_euler(6, jobs).chambers));
        FamilyConfig cfg;
        cfg.d = 2;
        cfg.n_target = 8;
        cfg.seed = seed;
        cfg.jobs = jobs;
        const Family fam = generate_family(cfg);
        std::size_t bad = 0;
        for (const auto& m : fam.members) {
            const auto c = check_member(m, fam.config, fam.C);
            if (!c.p1 || !c.p2) ++bad;
        }
        r.add("family d=2 n=8 at least 16 members", "true", fam.members.size() >= 16 ? "true" : "false");
        r.add("family d=2 n=8 P1/P2 failures", "0", std::to_string(bad));
    }
    return r;
}

} // namespace moduli

#endif // MODULI_VERIFY_HPP
