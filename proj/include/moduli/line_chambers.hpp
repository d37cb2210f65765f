#ifndef MODULI_LINE_CHAMBERS_HPP
#define MODULI_LINE_CHAMBERS_HPP

// Chambers of R^{1 x n} minus the arrangement {x_i - x_j = +-1}: rigid isotopy
// classes of geometric graphs on the line, i.e. labeled semiorders.
//
// A chamber is labeled by one relation per pair. Feasibility of the strict
// difference constraints is decided exactly with lexicographic weights
// (bound, strict count): x_u - x_v < c is the edge v -> u of weight (c, -1),
// and the system is infeasible iff some cycle has weight < (0, 0).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <future>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "moduli/errors.hpp"
#include "moduli/graph.hpp"

namespace moduli {

enum class PairRelation : std::uint8_t {
    FarLeft,   ///< x_i - x_j < -1
    Near,      ///< |x_i - x_j| < 1
    FarRight,  ///< x_i - x_j > 1
};

using ChamberLabel = std::vector<PairRelation>;

inline char relation_code(PairRelation r) {
    switch (r) {
        case PairRelation::FarLeft: return 'L';
        case PairRelation::Near: return 'N';
        case PairRelation::FarRight: return 'R';
    }
    return '?';
}

inline std::string chamber_code(const ChamberLabel& label) {
    std::string s;
    for (auto r : label) s.push_back(relation_code(r));
    return s;
}

struct LexWeight {
    long bound = 0;
    long strict = 0;

    friend LexWeight operator+(LexWeight a, LexWeight b) { return {a.bound + b.bound, a.strict + b.strict}; }
    friend bool operator<(LexWeight a, LexWeight b) {
        return a.bound != b.bound ? a.bound < b.bound : a.strict < b.strict;
    }
    friend bool operator==(LexWeight a, LexWeight b) { return a.bound == b.bound && a.strict == b.strict; }
};

/// x_to - x_from < bound, i.e. the constraint-graph edge from -> to.
struct DifferenceConstraint {
    int from;
    int to;
    LexWeight weight;
};

/// Constraints imposed by relation r on the pair (i, j), vertices 0-based.
inline void append_pair_constraints(int i, int j, PairRelation r, std::vector<DifferenceConstraint>& out) {
    switch (r) {
        case PairRelation::FarLeft: out.push_back({j, i, {-1, -1}}); break;
        case PairRelation::FarRight: out.push_back({i, j, {-1, -1}}); break;
        case PairRelation::Near:
            out.push_back({j, i, {1, -1}});
            out.push_back({i, j, {1, -1}});
            break;
    }
}

/// Constraints of the first `prefix` pairs of a labeling, vertices 0-based.
inline std::vector<DifferenceConstraint> chamber_constraints(const ChamberLabel& label, int n, std::size_t prefix) {
    std::vector<DifferenceConstraint> out;
    std::size_t k = 0;
    for (int i = 0; i < n && k < prefix; ++i) {
        for (int j = i + 1; j < n && k < prefix; ++j, ++k) append_pair_constraints(i, j, label[k], out);
    }
    return out;
}

namespace detail {

/// Bellman-Ford from a virtual source joined to every vertex by (0,0).
/// Returns false on a negative (lexicographic) cycle.
inline bool lex_shortest_paths(const std::vector<DifferenceConstraint>& cs, int n, std::vector<LexWeight>& dist) {
    dist.assign(static_cast<std::size_t>(n), LexWeight{0, 0});
    for (int round = 0; round <= n; ++round) {
        bool changed = false;
        for (const auto& c : cs) {
            const LexWeight cand = dist[static_cast<std::size_t>(c.from)] + c.weight;
            if (cand < dist[static_cast<std::size_t>(c.to)]) {
                dist[static_cast<std::size_t>(c.to)] = cand;
                changed = true;
            }
        }
        if (!changed) return true;
    }
    return false;
}

inline void check_label(const ChamberLabel& label, int n, bool partial) {
    if (n < 1) throw ArgumentError("chamber labels need n >= 1");
    if (partial ? label.size() > pair_count(n) : label.size() != pair_count(n)) {
        throw ArgumentError("chamber label length does not match C(n,2)");
    }
}

} // namespace detail

/// Exact feasibility of a (possibly partial) chamber labeling.
inline bool feasible(const ChamberLabel& label, int n, bool partial = false) {
    detail::check_label(label, n, partial);
    std::vector<LexWeight> dist;
    return detail::lex_shortest_paths(chamber_constraints(label, n, label.size()), n, dist);
}

/// A point of the chamber: shortest-path potentials (bound + strict/(2n)),
/// which satisfy every constraint with slack at least 1/(2n).
inline PointConfig witness_point(const ChamberLabel& label, int n) {
    detail::check_label(label, n, false);
    std::vector<LexWeight> dist;
    if (!detail::lex_shortest_paths(chamber_constraints(label, n, label.size()), n, dist)) {
        throw ArgumentError("witness_point: infeasible chamber label " + chamber_code(label));
    }
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        const auto& w = dist[static_cast<std::size_t>(v)];
        xs[static_cast<std::size_t>(v)] =
            static_cast<double>(w.bound) + static_cast<double>(w.strict) / (2.0 * n);
    }
    return PointConfig::on_line(xs);
}

/// The labeled graph of a chamber: edge iff the pair is Near.
inline LabeledGraph chamber_graph(const ChamberLabel& label, int n) {
    detail::check_label(label, n, false);
    LabeledGraph g(n);
    for (std::size_t k = 0; k < label.size(); ++k) g.set_bit(k, label[k] == PairRelation::Near);
    return g;
}

/// Chamber label of a point on the line (no pair may sit at distance exactly 1).
inline ChamberLabel chamber_of(const PointConfig& p, double tol = kDefaultDegeneracyTol) {
    if (p.dim() != 1) throw ArgumentError("chamber_of needs points on the line");
    ChamberLabel label;
    for (int i = 1; i <= p.size(); ++i) {
        for (int j = i + 1; j <= p.size(); ++j) {
            const double diff = p.coords()(i - 1, 0) - p.coords()(j - 1, 0);
            if (std::abs(std::abs(diff) - 1.0) <= tol) throw DegenerateConfiguration(i, j, diff * diff);
            label.push_back(diff < -1.0 ? PairRelation::FarLeft
                                        : (diff > 1.0 ? PairRelation::FarRight : PairRelation::Near));
        }
    }
    return label;
}

namespace detail {

/// All-pairs lexicographic shortest paths, grown one constraint at a time.
class DifferenceClosure {
public:
    explicit DifferenceClosure(int n)
        : n_(n), dist_(static_cast<std::size_t>(n * n), kInf) {
        for (int v = 0; v < n; ++v) at(v, v) = LexWeight{0, 0};
    }

    /// Adds x_to - x_from < bound. Returns false (and leaves the closure
    /// unusable) if this closes a cycle of weight < (0,0).
    bool add(const DifferenceConstraint& c) {
        const LexWeight back = at(c.to, c.from);
        if (!(back == kInf) && back + c.weight < LexWeight{0, 0}) return false;
        for (int a = 0; a < n_; ++a) {
            const LexWeight head = at(a, c.from);
            if (head == kInf) continue;
            const LexWeight via = head + c.weight;
            for (int b = 0; b < n_; ++b) {
                const LexWeight tail = at(c.to, b);
                if (tail == kInf) continue;
                const LexWeight cand = via + tail;
                if (cand < at(a, b)) at(a, b) = cand;
            }
        }
        return true;
    }

private:
    static constexpr LexWeight kInf{std::numeric_limits<long>::max() / 4, 0};
    LexWeight& at(int a, int b) { return dist_[static_cast<std::size_t>(a * n_ + b)]; }

    int n_;
    std::vector<LexWeight> dist_;
};

inline bool add_relation(DifferenceClosure& closure, int n, std::size_t k, PairRelation r) {
    const auto [i, j] = pair_at(k, n);
    std::vector<DifferenceConstraint> cs;
    append_pair_constraints(i - 1, j - 1, r, cs);
    for (const auto& c : cs) {
        if (!closure.add(c)) return false;
    }
    return true;
}

inline void enumerate_from(DifferenceClosure closure, int n, ChamberLabel& prefix, std::vector<ChamberLabel>& out) {
    const std::size_t k = prefix.size();
    if (k == pair_count(n)) {
        out.push_back(prefix);
        return;
    }
    for (auto r : {PairRelation::FarLeft, PairRelation::Near, PairRelation::FarRight}) {
        DifferenceClosure next = closure;
        if (!add_relation(next, n, k, r)) continue;
        prefix.push_back(r);
        enumerate_from(std::move(next), n, prefix, out);
        prefix.pop_back();
    }
}

} // namespace detail

inline constexpr int kMaxLineEnumeration = 7;

/// All chambers for n points on the line, sorted lexicographically by label
/// (FarLeft < Near < FarRight). `jobs > 1` explores top-level subtrees
/// concurrently.
inline std::vector<ChamberLabel> enumerate_chambers(int n, int jobs = 1, int max_n = kMaxLineEnumeration) {
    if (n < 1) throw ArgumentError("enumerate_chambers needs n >= 1");
    if (n > max_n) {
        throw BudgetExceeded("enumerate_chambers: n=" + std::to_string(n) + " exceeds budget n <= " +
                             std::to_string(max_n));
    }
    std::vector<ChamberLabel> out;
    if (pair_count(n) == 0) {
        out.emplace_back();
        return out;
    }
    if (jobs <= 1) {
        ChamberLabel prefix;
        detail::enumerate_from(detail::DifferenceClosure(n), n, prefix, out);
        return out;
    }
    std::vector<std::future<std::vector<ChamberLabel>>> tasks;
    for (auto r : {PairRelation::FarLeft, PairRelation::Near, PairRelation::FarRight}) {
        tasks.push_back(std::async(std::launch::async, [n, r] {
            std::vector<ChamberLabel> part;
            detail::DifferenceClosure closure(n);
            if (!detail::add_relation(closure, n, 0, r)) return part;
            ChamberLabel prefix{r};
            detail::enumerate_from(std::move(closure), n, prefix, part);
            return part;
        }));
    }
    for (auto& t : tasks) {
        auto part = t.get();
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct LineGraphCensus {
    std::size_t chambers = 0;
    std::size_t graph_count = 0;
    /// chambers per graph, for every realizable labeled graph (sorted by graph)
    std::vector<std::pair<LabeledGraph, std::size_t>> per_graph;
    /// multiplicity -> number of graphs with that many chambers
    std::map<std::size_t, std::size_t> histogram;
};

/// Distinct labeled graphs realized on the line, with chamber multiplicities.
inline LineGraphCensus realizable_graphs_line(int n, int jobs = 1) {
    const auto chambers = enumerate_chambers(n, jobs);
    std::map<LabeledGraph, std::size_t> counts;
    for (const auto& c : chambers) ++counts[chamber_graph(c, n)];
    LineGraphCensus census;
    census.chambers = chambers.size();
    census.graph_count = counts.size();
    for (auto& [g, m] : counts) {
        census.per_graph.emplace_back(g, m);
        ++census.histogram[m];
    }
    return census;
}

} // namespace moduli

#endif // MODULI_LINE_CHAMBERS_HPP
