// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "generators.hpp"
#include "moduli/moduli.hpp"

using namespace moduli;

namespace {

// labeled unit interval graphs on 5 vertices, counted once by enumeration
constexpr std::size_t kUnitInterval5 = 637;

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.ok = false;
        out.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2d %s:%s (%.1fs)\n", out.ok ? "PASS" : "FAIL", id, title.c_str(), out.detail.str().c_str(), secs);
    std::fflush(stdout);
    if (!out.ok) ++failures;
}

} // namespace

int main() {
    criterion(1, "chamber counts on the line", [](Outcome& o) {
        const std::size_t expected[] = {0, 1, 3, 19, 183, 2371};
        for (int n = 3; n <= 5; ++n) {
            const auto t0 = std::chrono::steady_clock::now();
            const auto got = enumerate_chambers(n).size();
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            o.detail << " n=" << n << ":" << got;
            o.require(got == expected[n], "count n=" + std::to_string(n));
            if (n == 5) o.require(secs < 60.0, "n=5 under 60s");
        }
    });

    criterion(2, "three-way agreement n=2..5", [](Outcome& o) {
        for (int n = 2; n <= 5; ++n) {
            const auto line = enumerate_chambers(n).size();
            const BigInt series = semiorder_count(n);
            const auto euler = chamber_count_via_euler(n).chambers;
            o.detail << " " << line << "/" << series.str() << "/" << euler;
            o.require(BigInt(line) == series && series == BigInt(euler), "n=" + std::to_string(n));
        }
    });

    criterion(3, "E1 page for n=3", [](Outcome& o) {
        const auto t = e1_table(3);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 5; ++j) {
                std::int64_t expected = 0;
                if (i == 0 && j == 0) expected = 3;
                if (i == 0 && j == 2) expected = 6;
                if (i == 1 && j == 0) expected = 3;
                if (i == 1 && j == 1) expected = 12;
                if (i == 2 && j == 0) expected = 1;
                o.require(t.at(i, j) == expected, "E(" + std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
        o.detail << " chi=" << t.euler_characteristic();
        o.require(t.euler_characteristic() == 19, "chi");
    });

    criterion(4, "unit interval graph counts n=2..5", [](Outcome& o) {
        const std::size_t frozen[] = {0, 0, 2, 8, 57, kUnitInterval5};
        for (int n = 2; n <= 5; ++n) {
            const auto graphs = realizable_graphs_line(n).graph_count;
            const BigInt series = uig_count(n);
            o.detail << " " << graphs << "/" << series.str();
            o.require(BigInt(graphs) == series, "series vs enumeration n=" + std::to_string(n));
            o.require(graphs == frozen[n], "frozen value n=" + std::to_string(n));
        }
    });

    criterion(5, "Poincare aggregation over 64 graphs", [](Outcome& o) {
        const auto p = aggregate_poincare(4, graph_type_table(4));
        const auto expected = 64 * GradedPoly::one() + GradedPoly::term(7, 1, -2) + GradedPoly::term(92, 1, -1) +
                              GradedPoly::term(7, 2, -3) + GradedPoly::term(35, 2, -2) + GradedPoly::term(6, 3, -3);
        o.require(p == expected, "term-by-term");
        o.detail << " " << p.str();
        const auto square = LabeledGraph::from_edges(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
        const auto claw = LabeledGraph::from_edges(4, {{1, 2}, {1, 3}, {1, 4}});
        const auto line = evaluate_at_d(p, 1, {square, claw});
        const auto plane = evaluate_at_d(p, 2);
        o.detail << "; d=1 chambers " << concrete_coeff(line, 0) << "; d=2 chambers " << concrete_coeff(plane, 0);
        o.require(concrete_at_one(evaluate_at_d(p, 3)) == 211, "211 total");
        o.require(concrete_coeff(line, 0) == 183 && concrete_at_one(line) == 183, "211 - 28 = 183");
        o.require(concrete_coeff(plane, 0) == 71, "71 in the plane");
    });

    criterion(6, "configuration space totals n! for n<=8", [](Outcome& o) {
        std::int64_t f = 1;
        for (int n = 1; n <= 8; ++n) {
            f *= n;
            o.require(poincare_config(n).at_one() == f, "n=" + std::to_string(n));
        }
        o.detail << " 8!=" << poincare_config(8).at_one();
    });

    std::set<std::pair<int, int>> value_violation_cells;
    criterion(7, "index decomposition, 1e4 samples per cell", [&](Outcome& o) {
        gen::Rng rng(2024);
        std::int64_t total = 0, split = 0;
        double worst_ambiguous = 0.0;
        for (int n = 2; n <= 5; ++n) {
            for (int d = 1; d <= 4; ++d) {
                const QuadricFamily fam(d, SignCondition::of_graph(gen::random_graph(n, rng)));
                const auto c = index_value_census(fam, 10000, static_cast<std::uint64_t>(100 * n + d));
                total += c.samples - c.ambiguous;
                split += c.split_violations;
                if (c.value_violations != 0) value_violation_cells.insert({n, d});
                worst_ambiguous = std::max(worst_ambiguous, c.ambiguous_rate());
                o.require(c.samples >= 10000, "sample count");
                o.require(c.split_violations == 0, "split n=" + std::to_string(n) + " d=" + std::to_string(d));
                o.require(c.ambiguous_rate() < 0.01, "ambiguous rate n=" + std::to_string(n) + " d=" + std::to_string(d));
            }
        }
        o.detail << " checked=" << total << " violations=" << split << " worst ambiguous rate=" << worst_ambiguous;
    });

    criterion(8, "index value census", [&](Outcome& o) {
        o.require(value_violation_cells.empty(), "values outside {ld, ld+1} in the grid run");
        std::int64_t top = 0, outside = 0, cells = 0;
        for (int n = 2; n <= 4; ++n) {
            for (int d = n + 1; d <= n + 2; ++d) {
                const std::uint64_t graphs = std::uint64_t{1} << pair_count(n);
                for (std::uint64_t mask = 0; mask < graphs; mask += (n == 4 ? 7 : 1)) {
                    const QuadricFamily fam(d, SignCondition::of_graph(LabeledGraph::from_mask(n, mask)));
                    const auto c = index_value_census(fam, 2000, mask * 31 + static_cast<std::uint64_t>(d));
                    top += c.top_observed;
                    outside += c.value_violations;
                    ++cells;
                }
            }
        }
        o.detail << " sign conditions=" << cells << " top value seen=" << top << " outside=" << outside;
        o.require(top == 0, "nd+1 observed with d >= n+1");
        o.require(outside == 0, "value outside {ld, ld+1}");
    });

    criterion(9, "realization", [](Outcome& o) {
        std::size_t checked = 0;
        double worst = 1.0;
        auto check = [&](const LabeledGraph& g) {
            const auto p = realize(g, g.n(), 0.1);
            const double m = discriminant_margin(p);
            worst = std::min(worst, m);
            o.require(geometric_graph(p).graph == g && m >= 0.05, "graph on " + std::to_string(g.n()));
            ++checked;
        };
        for (int n = 1; n <= 4; ++n)
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pair_count(n)); ++mask)
                check(LabeledGraph::from_mask(n, mask));
        gen::Rng rng(99);
        for (int n = 5; n <= 7; ++n)
            for (int k = 0; k < 200; ++k) check(gen::random_graph(n, rng));
        o.detail << " graphs=" << checked << " min margin=" << worst;
    });

    criterion(10, "lower-bound families in the plane", [](Outcome& o) {
        for (auto [n, need] : {std::pair{8, 16}, {10, 1296}}) {
            FamilyConfig cfg;
            cfg.d = 2;
            cfg.n_target = n;
            const Family fam = generate_family(cfg);
            std::set<LabeledGraph> graphs;
            std::size_t bad = 0;
            for (const auto& m : fam.members) {
                graphs.insert(m.graph);
                const auto c = check_member(m, fam.config, fam.C);
                if (!c.p1 || !c.p2) ++bad;
            }
            o.detail << " n=" << n << ": " << fam.members.size() << " members, " << graphs.size() << " distinct, "
                     << bad << " P1/P2 failures;";
            o.require(!fam.sampled, "full expansion n=" + std::to_string(n));
            o.require(graphs.size() == fam.members.size(), "distinct n=" + std::to_string(n));
            o.require(graphs.size() >= static_cast<std::size_t>(need), "size n=" + std::to_string(n));
            o.require(bad == 0, "P1/P2 n=" + std::to_string(n));
        }
    });

    criterion(11, "bound ordering", [](Outcome& o) {
        std::int64_t points = 0;
        for (int d = 1; d <= 10; ++d) {
            for (int n = 1; n <= 10000; ++n) {
                if (!isomorphism_lower_valid(n, d)) continue;
                const double lower = isomorphism_lower_log(n, d);
                if (isotopy_upper_valid(n, d)) {
                    o.require(lower <= isotopy_upper_log(n, d), "lower <= upper");
                    ++points;
                }
                o.require(lower <= warren_bound_log(n, d), "lower <= warren");
            }
        }
        const double exact = std::log(static_cast<double>(enumerate_chambers(5).size()));
        o.detail << " grid points=" << points << " log(2371)=" << exact << " warren(5,1)=" << warren_bound_log(5, 1);
        o.require(exact < warren_bound_log(5, 1), "line count below Warren");
    });

    criterion(12, "asymptotics", [](Outcome& o) {
        const auto s = semiorder_egf(40);
        const double e10 = std::abs(semiorder_asymptotic_ratio(s.egf_count(10), 10) - 1.0);
        const double e40 = std::abs(semiorder_asymptotic_ratio(s.egf_count(40), 40) - 1.0);
        o.detail << " |r-1| n=10: " << e10 << " n=40: " << e40 << " constant=" << ratio_constant();
        o.require(e40 < e10, "improves from 10 to 40");
        o.require(std::abs(ratio_constant() - 8.0 * std::exp(-1.0 / 12.0)) == 0.0, "8 e^{-1/12}");
        o.require(std::floor(ratio_constant() * 1e4) == 73603.0, "7.3603...");
    });

    std::printf("%s: %d failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
