#ifndef MODULI_REALIZE_HPP
#define MODULI_REALIZE_HPP

// Realizing labeled graphs as geometric graphs, pushing configurations off the
// discriminant, and explicit rigid isotopies in a lifted space.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "moduli/errors.hpp"
#include "moduli/graph.hpp"

namespace moduli {

/// Realizations need eps strictly below this bound. The centered Gram matrix is
/// (1/2)J - (eps/2) J S J with |S| <= n-1, positive semidefinite below 1/(n-1).
inline double realize_eps_bound(int n) {
    return n <= 1 ? std::numeric_limits<double>::infinity() : 1.0 / static_cast<double>(n - 1);
}

/// Classical-scaling realization of g in R^d (d >= n): squared distances are
/// 1-eps on edges and 1+eps on non-edges, so the margin is eps.
inline PointConfig realize(const LabeledGraph& g, int d, double eps) {
    const int n = g.n();
    if (d < n) {
        throw ArgumentError("realize needs d >= n (got d=" + std::to_string(d) + ", n=" + std::to_string(n) + ")");
    }
    if (!(eps > 0) || !(eps < realize_eps_bound(n))) {
        throw ArgumentError("realize: eps must lie in (0, " + std::to_string(realize_eps_bound(n)) + ")");
    }
    Eigen::MatrixXd coords = Eigen::MatrixXd::Zero(n, d);
    if (n == 1) return PointConfig(std::move(coords));

    Eigen::MatrixXd sq(n, n);
    for (int i = 0; i < n; ++i) {
        sq(i, i) = 0.0;
        for (int j = i + 1; j < n; ++j) {
            sq(i, j) = sq(j, i) = g.has_edge(i + 1, j + 1) ? 1.0 - eps : 1.0 + eps;
        }
    }
    const Eigen::MatrixXd centering =
        Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    const Eigen::MatrixXd gram = -0.5 * centering * sq * centering;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    if (solver.info() != Eigen::Success) throw NumericFailure("realize: eigendecomposition failed");
    Eigen::VectorXd lambda = solver.eigenvalues();
    const double top = lambda.maxCoeff();
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
        if (lambda(k) < -1e-9 * top) {
            throw NumericFailure("realize: Gram matrix not positive semidefinite (eps too large)");
        }
        lambda(k) = std::max(lambda(k), 0.0);
    }
    coords.leftCols(n) = solver.eigenvectors() * lambda.cwiseSqrt().asDiagonal();
    PointConfig p(std::move(coords));

    const auto check = geometric_graph(p);
    if (check.graph != g || discriminant_margin(p) < 0.5 * eps) {
        throw NumericFailure("realize: embedding lost accuracy");
    }
    return p;
}

/// (1+eps)P for the smallest eps = tol * 2^k that moves every pair at least
/// `tol` off the discriminant while keeping each strict relation of P.
inline PointConfig nondegenerate_perturbation(const PointConfig& p, double tol = kDefaultDegeneracyTol,
                                              int budget = 64) {
    const int n = p.size();
    std::vector<double> sq;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) sq.push_back(p.squared_distance(i, j));
    }
    double eps = std::max(tol, std::numeric_limits<double>::epsilon());
    for (int step = 0; step < budget; ++step, eps *= 2.0) {
        const double f = (1.0 + eps) * (1.0 + eps);
        bool good = true;
        for (double s : sq) {
            const double scaled = f * s;
            if (std::abs(scaled - 1.0) <= tol) {
                good = false;
                break;
            }
            // strict relations of P must survive the scaling
            if (std::abs(s - 1.0) > tol && (s < 1.0) != (scaled < 1.0)) {
                throw NumericFailure("nondegenerate_perturbation: no scaling preserves all strict relations");
            }
        }
        if (good) {
            PointConfig out = p.scaled(1.0 + eps);
            if (discriminant_margin(out) > tol) return out;
        }
    }
    throw NumericFailure("nondegenerate_perturbation: search budget exhausted");
}

struct IsotopyWitness {
    int steps = 0;             ///< samples per leg
    int lifted_dim = 0;        ///< d + m where R lives in R^m
    double min_margin = 0.0;   ///< minimum discriminant margin along the path
    double max_identity_residual = 0.0;
    bool ok = false;
    std::vector<PointConfig> path;  ///< filled only when requested
};

namespace detail {

inline PointConfig lift(const PointConfig& p, const PointConfig& r, double t) {
    Eigen::MatrixXd m(p.size(), p.dim() + r.dim());
    m.leftCols(p.dim()) = std::sqrt(1.0 - t) * p.coords();
    m.rightCols(r.dim()) = std::sqrt(t) * r.coords();
    return PointConfig(std::move(m));
}

} // namespace detail

/// Path from P0 to P1 through configurations (sqrt(1-t) P, sqrt(t) R): first
/// P0 lifted with t: 0 -> 1, then P1 lifted with t: 1 -> 0. Every sample must
/// keep the sign condition of P0; each squared distance must follow
/// (1-t)|p_i-p_j|^2 + t|r_i-r_j|^2.
inline IsotopyWitness isotopy_witness(const PointConfig& p0, const PointConfig& p1, const PointConfig& r,
                                      int steps = 1024, bool keep_path = false,
                                      double tol = kDefaultDegeneracyTol) {
    if (steps < 2) throw ArgumentError("isotopy_witness needs steps >= 2");
    if (p0.size() != p1.size() || p0.size() != r.size()) {
        throw ArgumentError("isotopy_witness: P0, P1 and R must have the same number of points");
    }
    if (p0.dim() != p1.dim()) throw ArgumentError("isotopy_witness: P0 and P1 must share a dimension");
    const SignCondition sigma = sign_condition(p0, tol);
    if (!(sign_condition(p1, tol) == sigma)) {
        throw ArgumentError("isotopy_witness: P0 and P1 realize different labeled graphs");
    }
    if (!(sign_condition(r, tol) == sigma)) {
        throw ArgumentError("isotopy_witness: R does not realize the graph of P0");
    }

    IsotopyWitness report;
    report.steps = steps;
    report.lifted_dim = p0.dim() + r.dim();
    report.min_margin = std::numeric_limits<double>::infinity();

    const int n = p0.size();
    auto visit = [&](const PointConfig& base, double t) {
        const PointConfig sample = detail::lift(base, r, t);
        for (int i = 1; i <= n; ++i) {
            for (int j = i + 1; j <= n; ++j) {
                const double sq = sample.squared_distance(i, j);
                const double expected = (1.0 - t) * base.squared_distance(i, j) + t * r.squared_distance(i, j);
                report.max_identity_residual = std::max(report.max_identity_residual, std::abs(sq - expected));
                const double gap = std::abs(sq - 1.0);
                report.min_margin = std::min(report.min_margin, gap);
                if (gap <= tol || (sq < 1.0 ? -1 : 1) != sigma.at(i, j)) {
                    throw NumericFailure("isotopy_witness: sign flip at t=" + std::to_string(t) + " for pair (" +
                                         std::to_string(i) + "," + std::to_string(j) + ")");
                }
            }
        }
        if (keep_path) report.path.push_back(sample);
    };
    for (int k = 0; k < steps; ++k) visit(p0, static_cast<double>(k) / (steps - 1));
    for (int k = steps - 1; k >= 0; --k) visit(p1, static_cast<double>(k) / (steps - 1));

    if (report.max_identity_residual > 1e-9) {
        throw NumericFailure("isotopy_witness: distance identity drifted by " +
                             std::to_string(report.max_identity_residual));
    }
    report.ok = true;
    return report;
}

} // namespace moduli

#endif // MODULI_REALIZE_HPP
