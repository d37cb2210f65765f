#ifndef MODULI_GRAPH_HPP
#define MODULI_GRAPH_HPP

// Labeled graphs, point configurations and sign conditions.
//
// Vertices are labeled 1..n everywhere in the public API. The C(n,2) vertex
// pairs are indexed lexicographically: (1,2),(1,3),...,(1,n),(2,3),...,(n-1,n)
// map to 0,1,...,C(n,2)-1. Every module uses pair_index() for this.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/dynamic_bitset.hpp>

#include "moduli/errors.hpp"

namespace moduli {

/// Default band around squared distance 1 inside which a pair is degenerate.
inline constexpr double kDefaultDegeneracyTol = 1e-9;

inline std::size_t pair_count(int n) {
    if (n < 0) throw ArgumentError("vertex count must be nonnegative");
    return static_cast<std::size_t>(n) * static_cast<std::size_t>(n > 0 ? n - 1 : 0) / 2;
}

inline std::size_t pair_index(int i, int j, int n) {
    if (n < 2 || i < 1 || j > n || i >= j) {
        throw ArgumentError("pair_index: need 1 <= i < j <= n, got (" + std::to_string(i) + "," +
                            std::to_string(j) + ") with n=" + std::to_string(n));
    }
    const auto a = static_cast<std::size_t>(i - 1);
    return a * (2 * static_cast<std::size_t>(n) - a - 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

/// Inverse of pair_index.
inline std::pair<int, int> pair_at(std::size_t index, int n) {
    if (index >= pair_count(n)) throw ArgumentError("pair_at: index out of range");
    int i = 1;
    std::size_t row = static_cast<std::size_t>(n - 1);
    while (index >= row) {
        index -= row;
        --row;
        ++i;
    }
    return {i, i + 1 + static_cast<int>(index)};
}

class LabeledGraph {
public:
    using Bits = boost::dynamic_bitset<std::uint64_t>;

    LabeledGraph() = default;
    explicit LabeledGraph(int n) : n_(n), edges_(pair_count(n)) {
        if (n < 1) throw ArgumentError("LabeledGraph needs n >= 1");
    }

    /// Bit k of `mask` is the pair with index k.
    static LabeledGraph from_mask(int n, std::uint64_t mask) {
        LabeledGraph g(n);
        const std::size_t m = g.edges_.size();
        if (m < 64 && (mask >> m) != 0) throw ArgumentError("mask has bits beyond C(n,2)");
        for (std::size_t k = 0; k < m; ++k) g.edges_[k] = ((mask >> k) & 1U) != 0;
        return g;
    }

    static LabeledGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
        LabeledGraph g(n);
        for (auto [i, j] : edges) {
            if (i > j) std::swap(i, j);
            g.set_edge(i, j);
        }
        return g;
    }

    static LabeledGraph complete(int n) {
        LabeledGraph g(n);
        g.edges_.set();
        return g;
    }

    int n() const noexcept { return n_; }
    std::size_t pairs() const noexcept { return edges_.size(); }

    bool has_edge(int i, int j) const {
        if (i > j) std::swap(i, j);
        return edges_[pair_index(i, j, n_)];
    }
    bool bit(std::size_t index) const { return edges_.test(index); }

    void set_edge(int i, int j, bool present = true) {
        if (i > j) std::swap(i, j);
        edges_[pair_index(i, j, n_)] = present;
    }
    void set_bit(std::size_t index, bool present = true) {
        if (index >= edges_.size()) throw ArgumentError("pair index out of range");
        edges_[index] = present;
    }

    std::size_t edge_count() const noexcept { return edges_.count(); }

    int degree(int v) const {
        int deg = 0;
        for (int u = 1; u <= n_; ++u) {
            if (u != v && has_edge(u, v)) ++deg;
        }
        return deg;
    }

    std::vector<std::pair<int, int>> edge_list() const {
        std::vector<std::pair<int, int>> out;
        for (std::size_t k = edges_.find_first(); k != Bits::npos; k = edges_.find_next(k)) {
            out.push_back(pair_at(k, n_));
        }
        return out;
    }

    std::uint64_t mask() const {
        if (edges_.size() > 64) throw ArgumentError("graph has more than 64 pairs");
        std::uint64_t m = 0;
        for (std::size_t k = 0; k < edges_.size(); ++k) {
            if (edges_[k]) m |= std::uint64_t{1} << k;
        }
        return m;
    }

    const Bits& bits() const noexcept { return edges_; }

    /// Labeled-graph equality: same n and same edge bitset.
    friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }
    friend bool operator!=(const LabeledGraph& a, const LabeledGraph& b) { return !(a == b); }
    friend bool operator<(const LabeledGraph& a, const LabeledGraph& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        return a.edges_ < b.edges_;
    }

private:
    int n_ = 0;
    Bits edges_;
};

inline bool graphs_equal_labeled(const LabeledGraph& a, const LabeledGraph& b) { return a == b; }

/// n points in R^d, stored one point per row.
class PointConfig {
public:
    PointConfig() = default;
    explicit PointConfig(Eigen::MatrixXd coords) : coords_(std::move(coords)) {
        if (coords_.rows() < 1 || coords_.cols() < 1) {
            throw ArgumentError("PointConfig needs n >= 1 points in dimension d >= 1");
        }
        if (!coords_.allFinite()) throw ArgumentError("PointConfig coordinates must be finite");
    }

    /// Convenience for d = 1.
    static PointConfig on_line(const std::vector<double>& xs) {
        Eigen::MatrixXd m(static_cast<Eigen::Index>(xs.size()), 1);
        for (std::size_t k = 0; k < xs.size(); ++k) m(static_cast<Eigen::Index>(k), 0) = xs[k];
        return PointConfig(std::move(m));
    }

    int dim() const noexcept { return static_cast<int>(coords_.cols()); }
    int size() const noexcept { return static_cast<int>(coords_.rows()); }
    const Eigen::MatrixXd& coords() const noexcept { return coords_; }

    /// Point p_i, 1-based.
    Eigen::VectorXd point(int i) const { return coords_.row(i - 1).transpose(); }

    double squared_distance(int i, int j) const {
        return (coords_.row(i - 1) - coords_.row(j - 1)).squaredNorm();
    }

    PointConfig scaled(double factor) const { return PointConfig(coords_ * factor); }

private:
    Eigen::MatrixXd coords_;
};

/// sign(|p_i - p_j|^2 - 1) per pair; -1 means an edge.
class SignCondition {
public:
    SignCondition() = default;
    SignCondition(int n, std::vector<int> signs) : n_(n), signs_(std::move(signs)) {
        if (n < 1) throw ArgumentError("SignCondition needs n >= 1");
        if (signs_.size() != pair_count(n)) throw ArgumentError("SignCondition length must be C(n,2)");
        for (int s : signs_) {
            if (s != 1 && s != -1) throw ArgumentError("SignCondition entries must be +1 or -1");
        }
    }

    /// The sign condition whose -1 entries are exactly the edges of g.
    static SignCondition of_graph(const LabeledGraph& g) {
        std::vector<int> s(g.pairs());
        for (std::size_t k = 0; k < s.size(); ++k) s[k] = g.bit(k) ? -1 : 1;
        return SignCondition(g.n(), std::move(s));
    }

    int n() const noexcept { return n_; }
    std::size_t size() const noexcept { return signs_.size(); }
    int operator[](std::size_t index) const { return signs_.at(index); }
    int at(int i, int j) const { return signs_.at(pair_index(std::min(i, j), std::max(i, j), n_)); }
    const std::vector<int>& signs() const noexcept { return signs_; }

    LabeledGraph graph() const {
        LabeledGraph g(n_);
        for (std::size_t k = 0; k < signs_.size(); ++k) g.set_bit(k, signs_[k] < 0);
        return g;
    }

    friend bool operator==(const SignCondition& a, const SignCondition& b) {
        return a.n_ == b.n_ && a.signs_ == b.signs_;
    }

private:
    int n_ = 0;
    std::vector<int> signs_;
};

struct GeometricGraph {
    LabeledGraph graph;
    bool degenerate = false;
};

/// G(P): edge (i,j) iff |p_i - p_j|^2 < 1. Flags `degenerate` when some pair is
/// within `tol` of squared distance 1.
inline GeometricGraph geometric_graph(const PointConfig& p, double tol = kDefaultDegeneracyTol) {
    if (tol < 0) throw ArgumentError("tolerance must be nonnegative");
    GeometricGraph out{LabeledGraph(p.size()), false};
    std::size_t k = 0;
    for (int i = 1; i <= p.size(); ++i) {
        for (int j = i + 1; j <= p.size(); ++j, ++k) {
            const double sq = p.squared_distance(i, j);
            out.graph.set_bit(k, sq < 1.0);
            if (std::abs(sq - 1.0) <= tol) out.degenerate = true;
        }
    }
    return out;
}

/// Throws DegenerateConfiguration naming the first pair within `tol` of the
/// discriminant.
inline SignCondition sign_condition(const PointConfig& p, double tol = kDefaultDegeneracyTol) {
    std::vector<int> signs;
    signs.reserve(pair_count(p.size()));
    for (int i = 1; i <= p.size(); ++i) {
        for (int j = i + 1; j <= p.size(); ++j) {
            const double sq = p.squared_distance(i, j);
            if (std::abs(sq - 1.0) <= tol) throw DegenerateConfiguration(i, j, sq);
            signs.push_back(sq < 1.0 ? -1 : 1);
        }
    }
    return SignCondition(p.size(), std::move(signs));
}

/// min over pairs of | |p_i - p_j|^2 - 1 |; +infinity for a single point.
inline double discriminant_margin(const PointConfig& p) {
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= p.size(); ++i) {
        for (int j = i + 1; j <= p.size(); ++j) {
            margin = std::min(margin, std::abs(p.squared_distance(i, j) - 1.0));
        }
    }
    return margin;
}

} // namespace moduli

#endif // MODULI_GRAPH_HPP
