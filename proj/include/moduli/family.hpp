#ifndef MODULI_FAMILY_HPP
#define MODULI_FAMILY_HPP

// Families of point configurations in R^d with many pairwise distinct labeled
// graphs. Points are grouped in d+1 clusters around the vertices P_1..P_{d+1}
// of a unit regular simplex; point i sits in cluster ((i-1) mod (d+1)) + 1.
// Each new point is placed next to the intersection of the unit spheres around
// a transversal (one earlier point from each other cluster) and nudged inside
// all of them. Different transversals give different neighborhoods.
//
// Conditions checked on every member, with tolerance tol:
//   P1  |p_i - P_{c(i)}| < eps_i,  eps_i = eps0 / C^{n - i}
//   P2  no d+1 of the unit spheres S(p_i, 1) pass through a common point

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "moduli/errors.hpp"
#include "moduli/graph.hpp"

namespace moduli {

/// The nudge search could not place a point; names the transversal.
class ConstructionFailure : public NumericFailure {
public:
    ConstructionFailure(const std::string& what, std::vector<int> pi)
        : NumericFailure(what), pi_(std::move(pi)) {}
    const std::vector<int>& transversal() const noexcept { return pi_; }

private:
    std::vector<int> pi_;
};

/// The sphere centers are affinely dependent.
class DegenerateSpheres : public NumericFailure {
public:
    using NumericFailure::NumericFailure;
};

/// d+1 points in R^d, unit edges, centered at the origin. Built by stacking:
/// the d-simplex is the (d-1)-simplex plus an apex on the new axis.
inline PointConfig regular_simplex(int d) {
    if (d < 1) throw ArgumentError("regular_simplex needs d >= 1");
    Eigen::MatrixXd p(d + 1, d);
    p.setZero();
    p(0, 0) = -0.5;
    p(1, 0) = 0.5;
    double r2 = 0.25;  // squared circumradius
    for (int k = 2; k <= d; ++k) {
        const double h = std::sqrt(1.0 - r2);
        p(k, k - 1) = h;
        const double shift = h / (k + 1);
        for (int i = 0; i <= k; ++i) p(i, k - 1) -= shift;
        r2 = (h - shift) * (h - shift);
    }
    return PointConfig(std::move(p));
}

/// Both points of the intersection of the unit spheres around the d rows of
/// `centers` (in R^d), or nothing when the spheres miss each other.
inline std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>> sphere_intersection_points(
    const Eigen::MatrixXd& centers) {
    const auto d = centers.cols();
    if (centers.rows() != d) throw ArgumentError("sphere_intersection needs exactly d centers in R^d");
    const Eigen::VectorXd p1 = centers.row(0).transpose();
    Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
    Eigen::VectorXd u = Eigen::VectorXd::Zero(d);
    if (d == 1) {
        u(0) = 1.0;
    } else {
        // 2 (p_l - p_1) . y = |p_l - p_1|^2 with y = x - p_1
        Eigen::MatrixXd a(d - 1, d);
        Eigen::VectorXd b(d - 1);
        for (Eigen::Index l = 1; l < d; ++l) {
            const Eigen::VectorXd diff = centers.row(l).transpose() - p1;
            a.row(l - 1) = 2.0 * diff.transpose();
            b(l - 1) = diff.squaredNorm();
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        if (sv(sv.size() - 1) <= 1e-14 * std::max(sv(0), 1e-300)) {
            throw DegenerateSpheres("sphere centers are affinely dependent");
        }
        w = svd.solve(b);
        u = svd.matrixV().col(d - 1);
    }
    const double disc = 1.0 - w.squaredNorm();
    if (disc < 0) return std::nullopt;
    const double s = std::sqrt(disc);
    return std::make_pair(Eigen::VectorXd(p1 + w + s * u), Eigen::VectorXd(p1 + w - s * u));
}

/// The intersection point nearer to `anchor`; ties go to the
/// lexicographically smaller point.
inline std::optional<Eigen::VectorXd> sphere_intersection(const Eigen::MatrixXd& centers,
                                                          const Eigen::VectorXd& anchor) {
    const auto both = sphere_intersection_points(centers);
    if (!both) return std::nullopt;
    const auto& [a, b] = *both;
    const double da = (a - anchor).squaredNorm();
    const double db = (b - anchor).squaredNorm();
    if (da < db) return a;
    if (db < da) return b;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end()) ? b : a;
}

/// Largest observed |dq| / max_l |dp_l| for random perturbations of size h of
/// the face P_1..P_d, q anchored at P_{d+1}.
inline double estimate_lipschitz(int d, int probes = 200, double h = 1e-6, std::uint64_t seed = 1) {
    const PointConfig simplex = regular_simplex(d);
    const Eigen::MatrixXd face = simplex.coords().topRows(d);
    const Eigen::VectorXd anchor = simplex.point(d + 1);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    double best = 0.0;
    for (int k = 0; k < probes; ++k) {
        Eigen::MatrixXd moved = face;
        double biggest = 0.0;
        for (int l = 0; l < d; ++l) {
            Eigen::VectorXd v(d);
            for (int c = 0; c < d; ++c) v(c) = normal(rng);
            v *= h * std::uniform_real_distribution<double>(0.1, 1.0)(rng) / v.norm();
            moved.row(l) += v.transpose();
            biggest = std::max(biggest, v.norm());
        }
        const auto q = sphere_intersection(moved, anchor);
        if (!q) throw NumericFailure("Lipschitz probe left the domain of the sphere intersection");
        best = std::max(best, (*q - anchor).norm() / biggest);
    }
    return best;
}

struct FamilyConfig {
    int d = 2;
    int n_target = 8;
    double eps0 = 1e-3;
    double C = 0.0;  ///< 0: max(2, L) with L from Lipschitz probes
    std::uint64_t seed = 1;
    std::size_t budget = 100000;     ///< full expansion allowed up to this many members
    std::size_t lineages = 1000;     ///< sampled lineages past the budget
    double tol = kDefaultDegeneracyTol;
    int directions = 6;              ///< candidate nudge directions per point
    int jobs = 1;
};

inline int cluster_of(int i, int d) { return (i - 1) % (d + 1) + 1; }

/// eps_i = eps0 / C^{n - i}
inline double schedule_eps(const FamilyConfig& cfg, double c, int i) {
    return cfg.eps0 / std::pow(c, cfg.n_target - i);
}

struct FamilyMember {
    PointConfig points;
    LabeledGraph graph;
    std::vector<std::vector<int>> lineage;  ///< one transversal per added point
};

/// Transversals available to point k = existing + 1: one earlier index from
/// every cluster except k's own, clusters ascending, lexicographic order.
inline std::vector<std::vector<int>> transversals(int existing, int d) {
    const int c = cluster_of(existing + 1, d);
    std::vector<std::vector<int>> choices;
    for (int cl = 1; cl <= d + 1; ++cl) {
        if (cl == c) continue;
        std::vector<int> members;
        for (int i = cl; i <= existing; i += d + 1) members.push_back(i);
        if (members.empty()) return {};
        choices.push_back(std::move(members));
    }
    std::vector<std::vector<int>> out{{}};
    for (const auto& opts : choices) {
        std::vector<std::vector<int>> next;
        for (const auto& prefix : out) {
            for (int i : opts) {
                auto t = prefix;
                t.push_back(i);
                next.push_back(std::move(t));
            }
        }
        out = std::move(next);
    }
    return out;
}

/// Number of members a full expansion from the simplex to n points yields.
inline double full_expansion_size(int n, int d) {
    double total = 1.0;
    for (int k = d + 2; k <= n; ++k) total *= static_cast<double>(transversals(k - 1, d).size());
    return total;
}

namespace detail {

inline void for_each_subset(int m, int size, const std::function<void(const std::vector<int>&)>& fn) {
    if (size > m) return;
    std::vector<int> idx(static_cast<std::size_t>(size));
    for (int k = 0; k < size; ++k) idx[static_cast<std::size_t>(k)] = k + 1;
    for (;;) {
        fn(idx);
        int k = size - 1;
        while (k >= 0 && idx[static_cast<std::size_t>(k)] == m - size + k + 1) --k;
        if (k < 0) return;
        ++idx[static_cast<std::size_t>(k)];
        for (int r = k + 1; r < size; ++r) idx[static_cast<std::size_t>(r)] = idx[static_cast<std::size_t>(r - 1)] + 1;
    }
}

inline Eigen::MatrixXd rows_of(const PointConfig& p, const std::vector<int>& idx) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(idx.size()), p.dim());
    for (std::size_t r = 0; r < idx.size(); ++r) m.row(static_cast<Eigen::Index>(r)) = p.coords().row(idx[r] - 1);
    return m;
}

/// Every point where d of the unit spheres of p meet.
inline std::vector<Eigen::VectorXd> sphere_meeting_points(const PointConfig& p) {
    std::vector<Eigen::VectorXd> out;
    for_each_subset(p.size(), p.dim(), [&](const std::vector<int>& idx) {
        const auto both = sphere_intersection_points(rows_of(p, idx));
        if (both) {
            out.push_back(both->first);
            out.push_back(both->second);
        }
    });
    return out;
}

} // namespace detail

/// Adds point k = size + 1 for transversal pi. `meeting` must be
/// sphere_meeting_points(member.points).
inline FamilyMember extend(const FamilyMember& member, const std::vector<int>& pi, const FamilyConfig& cfg,
                           double c_const, const PointConfig& simplex,
                           const std::vector<Eigen::VectorXd>& meeting) {
    const PointConfig& p = member.points;
    const int d = p.dim();
    const int k = p.size() + 1;
    const int cl = cluster_of(k, d);
    if (static_cast<int>(pi.size()) != d) throw ArgumentError("transversal must have d entries");
    std::vector<char> in_pi(static_cast<std::size_t>(k), 0);
    for (int i : pi) {
        if (i < 1 || i >= k || cluster_of(i, d) == cl) throw ArgumentError("invalid transversal");
        in_pi[static_cast<std::size_t>(i)] = 1;
    }
    const Eigen::VectorXd anchor = simplex.point(cl);
    const Eigen::MatrixXd centers = detail::rows_of(p, pi);
    const auto q = sphere_intersection(centers, anchor);
    auto fail = [&](const std::string& why) {
        std::string s = "extend: " + why + " for point " + std::to_string(k) + ", transversal (";
        for (std::size_t l = 0; l < pi.size(); ++l) s += (l ? "," : "") + std::to_string(pi[l]);
        return ConstructionFailure(s + ")", pi);
    };
    if (!q) throw fail("spheres do not meet");

    // sides of the other spheres at q; these fix the new neighborhood
    std::vector<int> side(static_cast<std::size_t>(k), 0);
    for (int i = 1; i < k; ++i) {
        if (in_pi[static_cast<std::size_t>(i)]) continue;
        const double r = (*q - p.point(i)).squaredNorm() - 1.0;
        if (std::abs(r) <= cfg.tol) throw fail("intersection point lies on another sphere");
        side[static_cast<std::size_t>(i)] = r < 0 ? -1 : 1;
    }
    std::vector<Eigen::VectorXd> toward;
    for (int l = 0; l < d; ++l) {
        const Eigen::VectorXd to = centers.row(l).transpose() - *q;
        toward.push_back(to / to.norm());
    }
    const double eps_k = schedule_eps(cfg, c_const, k);

    // Smallest residual of x against every sphere and every d-fold meeting
    // point, or -1 when x breaks P1, leaves a ball of pi or changes a side.
    auto score = [&](const Eigen::VectorXd& x) {
        if (!((x - anchor).norm() < eps_k)) return -1.0;
        double worst = std::numeric_limits<double>::infinity();
        for (int i = 1; i < k; ++i) {
            const double r = (x - p.point(i)).squaredNorm() - 1.0;
            if (in_pi[static_cast<std::size_t>(i)] ? r >= 0 : (r < 0 ? -1 : 1) != side[static_cast<std::size_t>(i)]) {
                return -1.0;
            }
            worst = std::min(worst, std::abs(r));
        }
        for (const auto& y : meeting) worst = std::min(worst, std::abs((x - y).squaredNorm() - 1.0));
        return worst;
    };

    // Directions are positive combinations of the unit vectors towards pi, so
    // every step enters all d balls. Equal weights are avoided: by symmetry
    // that step slides along spheres through mirror images of the simplex.
    // Each candidate takes its largest admissible step; the best worst-case
    // residual wins.
    std::vector<std::uint32_t> key{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32)};
    for (const auto& t : member.lineage) key.insert(key.end(), t.begin(), t.end());
    key.insert(key.end(), pi.begin(), pi.end());
    std::seed_seq seq(key.begin(), key.end());
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> weight(0.25, 1.0);

    Eigen::VectorXd best;
    double best_score = cfg.tol;
    for (int cand = 0; cand < std::max(1, cfg.directions); ++cand) {
        Eigen::VectorXd dir = Eigen::VectorXd::Zero(d);
        for (int l = 0; l < d; ++l) dir += weight(rng) * toward[static_cast<std::size_t>(l)];
        dir /= dir.norm();
        for (int j = 1; j <= 60; ++j) {
            const Eigen::VectorXd x = *q + std::ldexp(eps_k, -j) * dir;
            const double sc = score(x);
            if (sc <= cfg.tol) continue;
            if (sc > best_score) {
                best_score = sc;
                best = x;
            }
            break;
        }
    }
    if (best.size() != 0) {
        Eigen::MatrixXd coords(k, d);
        coords.topRows(k - 1) = p.coords();
        coords.row(k - 1) = best.transpose();
        FamilyMember out{PointConfig(std::move(coords)), LabeledGraph(), member.lineage};
        out.graph = geometric_graph(out.points, cfg.tol).graph;
        out.lineage.push_back(pi);
        return out;
    }
    throw fail("no nudge satisfies P1/P2");
}

struct MemberCheck {
    bool p1 = false;
    bool p2 = false;
    double p1_slack = std::numeric_limits<double>::infinity();    ///< min eps_i - |p_i - P_c(i)|
    double p2_residual = std::numeric_limits<double>::infinity();  ///< min | |x - p|^2 - 1 |
    double margin = 0.0;                                           ///< discriminant margin
};

/// Post hoc P1/P2 check over all points and all (d+1)-subsets.
inline MemberCheck check_member(const FamilyMember& m, const FamilyConfig& cfg, double c_const) {
    const PointConfig& p = m.points;
    const int d = p.dim();
    const PointConfig simplex = regular_simplex(d);
    MemberCheck out;
    for (int i = 1; i <= p.size(); ++i) {
        const double dist = (p.point(i) - simplex.point(cluster_of(i, d))).norm();
        out.p1_slack = std::min(out.p1_slack, schedule_eps(cfg, c_const, i) - dist);
    }
    out.p1 = out.p1_slack > 0;
    bool degenerate = false;
    detail::for_each_subset(p.size(), d + 1, [&](const std::vector<int>& idx) {
        const std::vector<int> head(idx.begin(), idx.end() - 1);
        std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>> both;
        try {
            both = sphere_intersection_points(detail::rows_of(p, head));
        } catch (const DegenerateSpheres&) {
            degenerate = true;
            return;
        }
        if (!both) return;
        const Eigen::VectorXd last = p.point(idx.back());
        for (const auto* y : {&both->first, &both->second}) {
            out.p2_residual = std::min(out.p2_residual, std::abs((*y - last).squaredNorm() - 1.0));
        }
    });
    out.p2 = !degenerate && out.p2_residual > cfg.tol;
    out.margin = discriminant_margin(p);
    return out;
}

inline double family_constant(const FamilyConfig& cfg) {
    if (cfg.C > 0) {
        if (cfg.C < 1) throw ArgumentError("family constant C must be >= 1");
        return cfg.C;
    }
    return std::max(2.0, estimate_lipschitz(cfg.d, 200, 1e-6, cfg.seed));
}

struct Family {
    FamilyConfig config;
    double C = 0.0;
    bool sampled = false;
    std::vector<FamilyMember> members;
};

namespace detail {

inline std::vector<FamilyMember> expand_all(const FamilyMember& parent, const FamilyConfig& cfg, double c,
                                            const PointConfig& simplex) {
    const auto meeting = sphere_meeting_points(parent.points);
    std::vector<FamilyMember> out;
    for (const auto& pi : transversals(parent.points.size(), cfg.d)) {
        out.push_back(extend(parent, pi, cfg, c, simplex, meeting));
    }
    return out;
}

inline std::vector<FamilyMember> expand_level(const std::vector<FamilyMember>& level, const FamilyConfig& cfg,
                                              double c, const PointConfig& simplex) {
    const int jobs = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(level.size())));
    auto run = [&](std::size_t lo, std::size_t hi) {
        std::vector<FamilyMember> part;
        for (std::size_t m = lo; m < hi; ++m) {
            auto kids = expand_all(level[m], cfg, c, simplex);
            part.insert(part.end(), std::make_move_iterator(kids.begin()), std::make_move_iterator(kids.end()));
        }
        return part;
    };
    if (jobs == 1) return run(0, level.size());
    std::vector<std::future<std::vector<FamilyMember>>> tasks;
    const std::size_t chunk = (level.size() + static_cast<std::size_t>(jobs) - 1) / static_cast<std::size_t>(jobs);
    for (std::size_t lo = 0; lo < level.size(); lo += chunk) {
        tasks.push_back(std::async(std::launch::async, run, lo, std::min(level.size(), lo + chunk)));
    }
    std::vector<FamilyMember> out;
    for (auto& t : tasks) {
        auto part = t.get();
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
}

/// The first d+1 points: the simplex shrunk so that p_i sits eps_1/2 from P_i.
/// The exact simplex lies on the discriminant.
inline FamilyMember base_member(const FamilyConfig& cfg, double c, const PointConfig& simplex) {
    const double radius = simplex.point(1).norm();
    const PointConfig base = simplex.scaled(1.0 - 0.5 * schedule_eps(cfg, c, 1) / radius);
    const auto g = geometric_graph(base, cfg.tol);
    if (g.degenerate) throw ConstructionFailure("base simplex too close to the discriminant", {});
    return FamilyMember{base, g.graph, {}};
}

inline FamilyMember sample_lineage(const FamilyConfig& cfg, double c, const PointConfig& simplex,
                                   std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::mt19937_64 rng(seq);
    FamilyMember m = base_member(cfg, c, simplex);
    while (m.points.size() < cfg.n_target) {
        const auto options = transversals(m.points.size(), cfg.d);
        std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
        m = extend(m, options[pick(rng)], cfg, c, simplex, sphere_meeting_points(m.points));
    }
    return m;
}

inline Family generate_once(const FamilyConfig& cfg) {
    Family fam;
    fam.config = cfg;
    fam.C = family_constant(cfg);
    const PointConfig simplex = regular_simplex(cfg.d);
    const double size = full_expansion_size(cfg.n_target, cfg.d);
    if (size <= static_cast<double>(cfg.budget)) {
        std::vector<FamilyMember> level{base_member(cfg, fam.C, simplex)};
        for (int k = cfg.d + 2; k <= cfg.n_target; ++k) level = expand_level(level, cfg, fam.C, simplex);
        fam.members = std::move(level);
        return fam;
    }
    fam.sampled = true;
    std::map<std::vector<std::vector<int>>, FamilyMember> unique;
    for (std::uint64_t s = 0; s < cfg.lineages; ++s) {
        auto m = sample_lineage(cfg, fam.C, simplex, s);
        unique.emplace(m.lineage, std::move(m));
    }
    for (auto& [lineage, m] : unique) fam.members.push_back(std::move(m));
    return fam;
}

} // namespace detail

/// Breadth-first expansion over every transversal, or seeded random lineages
/// when the full family would exceed the budget. Retries with a smaller eps0
/// if a point cannot be placed. Throws InconsistencyError if two members share
/// a labeled graph.
inline Family generate_family(const FamilyConfig& cfg) {
    if (cfg.d < 1) throw ArgumentError("family needs d >= 1");
    if (cfg.n_target < cfg.d + 2) throw ArgumentError("family needs n >= d + 2");
    if (!(cfg.eps0 > 0 && cfg.eps0 < 0.25)) throw ArgumentError("family needs 0 < eps0 < 1/4");
    FamilyConfig attempt = cfg;
    for (int retry = 0;; ++retry) {
        try {
            Family fam = detail::generate_once(attempt);
            std::set<LabeledGraph> seen;
            for (const auto& m : fam.members) {
                if (!seen.insert(m.graph).second) {
                    throw InconsistencyError("two family members share a labeled graph");
                }
            }
            return fam;
        } catch (const ConstructionFailure&) {
            if (retry >= 3) throw;
            attempt.eps0 /= 10.0;
        }
    }
}

} // namespace moduli

#endif // MODULI_FAMILY_HPP
