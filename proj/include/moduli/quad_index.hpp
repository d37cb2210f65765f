#ifndef MODULI_QUAD_INDEX_HPP
#define MODULI_QUAD_INDEX_HPP

// Positive inertia of the quadric family attached to a sign condition.
//
// Variables are (z, x_1, ..., x_n) with x_i in R^d, ordered z first and then
// x_{i,a} at position 1 + (i-1) d + a. The family is
//   h_ij(x, z) = s_ij |x_i - x_j|^2 - s_ij z^2 - eps z^2
//   q_0(x, z)  = |x|^2 - z^2 / eps
// and omega H = omega_0 q_0 + sum omega_ij h_ij for omega in the orthant patch
// omega_0 >= 0, omega_ij <= 0 of the unit sphere.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "moduli/errors.hpp"
#include "moduli/graph.hpp"

namespace moduli {

inline constexpr double kIndexTol = 1e-8;
inline constexpr double kDefaultQuadricEps = 1e-3;

/// Eigenvalue within tolerance of zero; the caller should perturb omega.
class AmbiguousIndex : public NumericFailure {
public:
    using NumericFailure::NumericFailure;
};

struct OmegaPoint {
    double omega0 = 0.0;
    std::vector<double> pairs;

    static OmegaPoint normalized(double omega0, std::vector<double> pairs) {
        if (omega0 < 0) throw ArgumentError("omega_0 must be nonnegative");
        double sq = omega0 * omega0;
        for (double w : pairs) {
            if (w > 0) throw ArgumentError("omega_ij must be nonpositive");
            sq += w * w;
        }
        if (!(sq > 0)) throw ArgumentError("omega must be nonzero");
        const double norm = std::sqrt(sq);
        for (double& w : pairs) w /= norm;
        return OmegaPoint{omega0 / norm, std::move(pairs)};
    }

    /// (1, 0, ..., 0)
    static OmegaPoint pole(int n) { return OmegaPoint{1.0, std::vector<double>(pair_count(n), 0.0)}; }
};

struct QuadricFamily {
    int n = 0;
    int d = 0;
    SignCondition sigma;
    double epsilon = kDefaultQuadricEps;

    QuadricFamily(int d_, SignCondition s, double eps = kDefaultQuadricEps)
        : n(s.n()), d(d_), sigma(std::move(s)), epsilon(eps) {
        if (d < 1) throw ArgumentError("quadric family needs d >= 1");
        if (!(epsilon > 0)) throw ArgumentError("quadric family needs eps > 0");
    }

    /// U_ij: the n x n matrix of s_ij (t_i - t_j)^2.
    Eigen::MatrixXd u_matrix(int i, int j) const {
        const double s = sigma.at(i, j);
        Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
        u(i - 1, i - 1) = s;
        u(j - 1, j - 1) = s;
        u(i - 1, j - 1) = -s;
        u(j - 1, i - 1) = -s;
        return u;
    }

    /// omega_0 1_n + sum omega_ij U_ij
    Eigen::MatrixXd reduced_block(const OmegaPoint& w) const {
        check(w);
        Eigen::MatrixXd q = w.omega0 * Eigen::MatrixXd::Identity(n, n);
        std::size_t k = 0;
        for (int i = 1; i <= n; ++i) {
            for (int j = i + 1; j <= n; ++j, ++k) {
                if (w.pairs[k] != 0.0) q += w.pairs[k] * u_matrix(i, j);
            }
        }
        return q;
    }

    /// -omega_0/eps - sum omega_ij (s_ij + eps), the z-z entry.
    double scalar_entry(const OmegaPoint& w) const {
        check(w);
        double s = -w.omega0 / epsilon;
        for (std::size_t k = 0; k < w.pairs.size(); ++k) s -= w.pairs[k] * (sigma[k] + epsilon);
        return s;
    }

    /// The full (dn+1) x (dn+1) matrix of omega H, assembled coordinate by
    /// coordinate from the forms themselves.
    Eigen::MatrixXd full_matrix(const OmegaPoint& w) const {
        check(w);
        const int m = d * n + 1;
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
        h(0, 0) = -w.omega0 / epsilon;
        for (int c = 1; c < m; ++c) h(c, c) += w.omega0;
        std::size_t k = 0;
        for (int i = 1; i <= n; ++i) {
            for (int j = i + 1; j <= n; ++j, ++k) {
                const double c = w.pairs[k];
                if (c == 0.0) continue;
                const double s = sigma[k];
                h(0, 0) += c * (-s - epsilon);
                for (int a = 0; a < d; ++a) {
                    const int xi = 1 + (i - 1) * d + a;
                    const int xj = 1 + (j - 1) * d + a;
                    h(xi, xi) += c * s;
                    h(xj, xj) += c * s;
                    h(xi, xj) -= c * s;
                    h(xj, xi) -= c * s;
                }
            }
        }
        return h;
    }

private:
    void check(const OmegaPoint& w) const {
        if (w.pairs.size() != pair_count(n)) throw ArgumentError("omega has the wrong number of pair weights");
    }
};

namespace detail {

/// Orthonormal basis of the complement of the all-ones vector in R^n
/// (Helmert columns).
inline Eigen::MatrixXd ones_complement(int n) {
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, std::max(n - 1, 0));
    for (int c = 0; c + 1 < n; ++c) {
        const double k = c + 1;
        const double norm = std::sqrt(k * (k + 1));
        for (int r = 0; r <= c; ++r) v(r, c) = 1.0 / norm;
        v(c + 1, c) = -k / norm;
    }
    return v;
}

inline int count_positive(const Eigen::VectorXd& eig, double scale, const std::string& what) {
    int pos = 0;
    for (Eigen::Index k = 0; k < eig.size(); ++k) {
        if (std::abs(eig(k)) <= kIndexTol * scale) {
            throw AmbiguousIndex(what + ": eigenvalue " + std::to_string(eig(k)) + " within tolerance of 0");
        }
        if (eig(k) > 0) ++pos;
    }
    return pos;
}

inline Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return Eigen::VectorXd();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericFailure("eigenvalue solver failed");
    return solver.eigenvalues();
}

/// The all-ones direction of every coordinate is an exact eigenvector of
/// eigenvalue omega_0 (translations kill every h_ij), so it is counted
/// exactly rather than numerically.
inline int translation_count(const OmegaPoint& w) { return w.omega0 > 0 ? 1 : 0; }

inline double scale_of(const QuadricFamily& fam, const OmegaPoint& w) {
    const Eigen::MatrixXd q = fam.reduced_block(w);
    const double s = std::abs(fam.scalar_entry(w));
    return std::max({s, q.cwiseAbs().rowwise().sum().maxCoeff(), 1e-300});
}

} // namespace detail

/// ind+ of the full matrix omega H.
inline int index_full(const QuadricFamily& fam, const OmegaPoint& w) {
    const Eigen::MatrixXd h = fam.full_matrix(w);
    const int n = fam.n;
    const int d = fam.d;
    // basis: z, then (ones complement) x e_a, translations handled separately
    const Eigen::MatrixXd v = detail::ones_complement(n);
    const int m = 1 + (n - 1) * d;
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(d * n + 1, m);
    basis(0, 0) = 1.0;
    for (int c = 0; c + 1 < n; ++c) {
        for (int a = 0; a < d; ++a) {
            for (int r = 0; r < n; ++r) basis(1 + r * d + a, 1 + c * d + a) = v(r, c);
        }
    }
    const Eigen::MatrixXd restricted = basis.transpose() * h * basis;
    const double scale = std::max(h.cwiseAbs().rowwise().sum().maxCoeff(), 1e-300);
    return d * detail::translation_count(w) +
           detail::count_positive(detail::symmetric_eigenvalues(restricted), scale, "index_full");
}

struct IndexSplit {
    int ind1 = 0;
    int ind0 = 0;
};

/// (ind+ of the n x n block, [scalar entry > 0]).
inline IndexSplit index_split(const QuadricFamily& fam, const OmegaPoint& w) {
    const Eigen::MatrixXd q = fam.reduced_block(w);
    const double s = fam.scalar_entry(w);
    const double scale = detail::scale_of(fam, w);
    const Eigen::MatrixXd v = detail::ones_complement(fam.n);
    IndexSplit out;
    out.ind1 = detail::translation_count(w) +
               detail::count_positive(detail::symmetric_eigenvalues(v.transpose() * q * v), scale, "index_split");
    if (std::abs(s) <= kIndexTol * scale) throw AmbiguousIndex("index_split: scalar entry within tolerance of 0");
    out.ind0 = s > 0 ? 1 : 0;
    return out;
}

/// Uniform point of the orthant patch: a normalized Gaussian with the signs
/// folded to (+, -, ..., -).
template <class Rng>
OmegaPoint sample_omega(int n, Rng& rng) {
    std::normal_distribution<double> normal;
    double omega0 = 0.0;
    std::vector<double> pairs(pair_count(n));
    for (;;) {
        omega0 = std::abs(normal(rng));
        double sq = omega0 * omega0;
        for (double& w : pairs) {
            w = -std::abs(normal(rng));
            sq += w * w;
        }
        if (sq > 1e-300) break;
    }
    return OmegaPoint::normalized(omega0, std::move(pairs));
}

/// {l d, l d + 1 : 0 <= l <= n}
inline bool allowed_index(int value, int n, int d) {
    for (int l = 0; l <= n; ++l) {
        if (value == l * d || value == l * d + 1) return true;
    }
    return false;
}

struct IndexCensus {
    std::set<int> observed;
    std::int64_t samples = 0;
    std::int64_t ambiguous = 0;
    std::int64_t split_violations = 0;   ///< index_full != d ind1 + ind0
    std::int64_t value_violations = 0;   ///< value outside {l d, l d + 1}
    std::int64_t top_observed = 0;       ///< samples with value n d + 1

    std::int64_t violations() const { return split_violations + value_violations; }
    double ambiguous_rate() const { return samples == 0 ? 0.0 : static_cast<double>(ambiguous) / samples; }

    void merge(const IndexCensus& o) {
        observed.insert(o.observed.begin(), o.observed.end());
        samples += o.samples;
        ambiguous += o.ambiguous;
        split_violations += o.split_violations;
        value_violations += o.value_violations;
        top_observed += o.top_observed;
    }
};

namespace detail {

inline IndexCensus census_worker(const QuadricFamily& fam, std::int64_t samples, std::uint64_t seed,
                                 std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    std::mt19937_64 rng(seq);
    IndexCensus c;
    for (std::int64_t s = 0; s < samples; ++s) {
        const OmegaPoint w = sample_omega(fam.n, rng);
        ++c.samples;
        int full = 0;
        IndexSplit split;
        try {
            full = index_full(fam, w);
            split = index_split(fam, w);
        } catch (const AmbiguousIndex&) {
            ++c.ambiguous;
            continue;
        }
        c.observed.insert(full);
        if (full != fam.d * split.ind1 + split.ind0) ++c.split_violations;
        if (!allowed_index(full, fam.n, fam.d)) ++c.value_violations;
        if (full == fam.n * fam.d + 1) ++c.top_observed;
    }
    return c;
}

} // namespace detail

/// Samples omega, skips ambiguous points, and cross-checks the two index
/// computations on every sample.
inline IndexCensus index_value_census(const QuadricFamily& fam, std::int64_t samples, std::uint64_t seed,
                                      int jobs = 1) {
    if (samples < 1) throw ArgumentError("index census needs at least one sample");
    jobs = std::max(1, jobs);
    if (jobs == 1) return detail::census_worker(fam, samples, seed, 0);
    std::vector<std::future<IndexCensus>> tasks;
    for (int w = 0; w < jobs; ++w) {
        const std::int64_t share = samples / jobs + (w < samples % jobs ? 1 : 0);
        tasks.push_back(std::async(std::launch::async, detail::census_worker, std::cref(fam), share, seed,
                                   static_cast<std::uint64_t>(w)));
    }
    IndexCensus out;
    for (auto& t : tasks) out.merge(t.get());
    return out;
}

} // namespace moduli

#endif // MODULI_QUAD_INDEX_HPP
