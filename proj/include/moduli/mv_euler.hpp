#ifndef MODULI_MV_EULER_HPP
#define MODULI_MV_EULER_HPP

// Recount of the chambers on the line through the one-point compactified
// discriminant. For a graph G on [n] the set of configurations with
// |x_i - x_j| = 1 on every edge is X(G) x R^{beta0(G)}, X(G) finite (one
// translation fixed per component). Its compactification is a wedge of |X|
// spheres of dimension beta0, or the point at infinity when X is empty. The
// first page of the Mayer-Vietoris spectral sequence sums these over graphs by
// edge count, and its Euler characteristic gives the top Betti number of the
// compactified discriminant, hence the chamber count by duality.

#include <cstdint>
#include <future>
#include <numeric>
#include <string>
#include <vector>

#include "moduli/errors.hpp"
#include "moduli/graph.hpp"

namespace moduli {

struct HomStructure {
    LabeledGraph graph;
    int beta0 = 0;
    std::uint64_t x_size = 0;
};

namespace detail {

/// One component of a BFS spanning forest, vertices in discovery order.
struct SpanningTree {
    std::vector<int> order;
};

/// parent[v] receives the tree parent of v (-1 for roots).
inline std::vector<SpanningTree> spanning_forest(const LabeledGraph& g, std::vector<int>& parent) {
    const int n = g.n();
    std::vector<SpanningTree> forest;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    parent.assign(static_cast<std::size_t>(n), -1);
    for (int root = 0; root < n; ++root) {
        if (seen[static_cast<std::size_t>(root)]) continue;
        SpanningTree tree{{root}};
        seen[static_cast<std::size_t>(root)] = 1;
        for (std::size_t head = 0; head < tree.order.size(); ++head) {
            const int v = tree.order[head];
            for (int u = 0; u < n; ++u) {
                if (u != v && !seen[static_cast<std::size_t>(u)] && g.has_edge(u + 1, v + 1)) {
                    seen[static_cast<std::size_t>(u)] = 1;
                    parent[static_cast<std::size_t>(u)] = v;
                    tree.order.push_back(u);
                }
            }
        }
        forest.push_back(std::move(tree));
    }
    return forest;
}

} // namespace detail

/// Homomorphisms of G into the unit-distance graph on R, one root per
/// component pinned at 0: assign +-1 to spanning-tree edges and keep the
/// assignments where every other edge also has length 1.
inline HomStructure hom_count_line(const LabeledGraph& g) {
    std::vector<int> parent;
    const auto forest = detail::spanning_forest(g, parent);
    HomStructure out{g, static_cast<int>(forest.size()), 1};
    std::vector<long> pos(static_cast<std::size_t>(g.n()), 0);
    for (const auto& tree : forest) {
        const auto& order = tree.order;
        const std::size_t tree_edges = order.size() - 1;
        if (tree_edges == 0) continue;
        if (tree_edges >= 63) throw ArgumentError("hom_count_line: component too large");
        std::uint64_t accepted = 0;
        for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << tree_edges); ++signs) {
            for (std::size_t t = 1; t < order.size(); ++t) {
                const auto v = static_cast<std::size_t>(order[t]);
                const long step = ((signs >> (t - 1)) & 1U) ? 1 : -1;
                pos[v] = pos[static_cast<std::size_t>(parent[v])] + step;
            }
            bool ok = true;
            for (std::size_t a = 0; a < order.size() && ok; ++a) {
                for (std::size_t b = a + 1; b < order.size() && ok; ++b) {
                    if (!g.has_edge(order[a] + 1, order[b] + 1)) continue;
                    const long diff = pos[static_cast<std::size_t>(order[a])] - pos[static_cast<std::size_t>(order[b])];
                    ok = diff == 1 || diff == -1;
                }
            }
            if (ok) ++accepted;
        }
        out.x_size *= accepted;
        if (out.x_size == 0) break;
    }
    return out;
}

inline constexpr int kMaxEulerN = 6;

/// dim E1^{i,j}: i = edges - 1 in [0, C(n,2) - 1], j in [0, n].
struct E1Table {
    int n = 0;
    std::vector<std::vector<std::int64_t>> dims;

    std::int64_t at(int i, int j) const {
        if (i < 0 || j < 0 || i >= static_cast<int>(dims.size())) return 0;
        const auto& col = dims[static_cast<std::size_t>(i)];
        return j < static_cast<int>(col.size()) ? col[static_cast<std::size_t>(j)] : 0;
    }

    std::int64_t euler_characteristic() const {
        std::int64_t chi = 0;
        for (std::size_t i = 0; i < dims.size(); ++i) {
            for (std::size_t j = 0; j < dims[i].size(); ++j) chi += ((i + j) % 2 == 0 ? 1 : -1) * dims[i][j];
        }
        return chi;
    }
};

namespace detail {

/// Next integer with the same popcount (Gosper).
inline std::uint64_t next_same_popcount(std::uint64_t v) {
    const std::uint64_t t = v | (v - 1);
    return (t + 1) | (((~t & -~t) - 1) >> (__builtin_ctzll(v) + 1));
}

/// Column i = edges - 1 of the E1 page, streamed over all graphs with that
/// many edges.
inline std::vector<std::int64_t> e1_column(int n, int edges) {
    std::vector<std::int64_t> col(static_cast<std::size_t>(n) + 1, 0);
    const auto m = static_cast<int>(pair_count(n));
    const std::uint64_t limit = std::uint64_t{1} << m;
    for (std::uint64_t mask = (std::uint64_t{1} << edges) - 1; mask < limit; mask = next_same_popcount(mask)) {
        const auto h = hom_count_line(LabeledGraph::from_mask(n, mask));
        col[0] += 1;  // the point at infinity
        if (h.x_size > 0) col[static_cast<std::size_t>(h.beta0)] += static_cast<std::int64_t>(h.x_size);
    }
    return col;
}

} // namespace detail

inline E1Table e1_table(int n, int jobs = 1) {
    if (n < 2) throw ArgumentError("e1_table needs n >= 2");
    if (n > kMaxEulerN) {
        throw BudgetExceeded("e1_table: n=" + std::to_string(n) + " exceeds budget n <= " + std::to_string(kMaxEulerN));
    }
    const auto m = static_cast<int>(pair_count(n));
    E1Table table{n, std::vector<std::vector<std::int64_t>>(static_cast<std::size_t>(m))};
    if (jobs <= 1) {
        for (int e = 1; e <= m; ++e) table.dims[static_cast<std::size_t>(e - 1)] = detail::e1_column(n, e);
        return table;
    }
    std::vector<std::future<std::vector<std::int64_t>>> tasks;
    for (int e = 1; e <= m; ++e) tasks.push_back(std::async(std::launch::async, detail::e1_column, n, e));
    for (int e = 1; e <= m; ++e) table.dims[static_cast<std::size_t>(e - 1)] = tasks[static_cast<std::size_t>(e - 1)].get();
    return table;
}

struct EulerRecount {
    E1Table table;
    std::int64_t chi = 0;
    std::int64_t top_betti = 0;  ///< b_{n-1} of the compactified discriminant
    std::int64_t chambers = 0;
};

/// Chamber count 1 + b_{n-1}, where chi = 1 + (-1)^{n-1} b_{n-1} because the
/// reduced cohomology is concentrated in degree n-1.
inline EulerRecount chamber_count_via_euler(int n, int jobs = 1) {
    EulerRecount r;
    r.table = e1_table(n, jobs);
    r.chi = r.table.euler_characteristic();
    r.top_betti = ((n - 1) % 2 == 0 ? 1 : -1) * (r.chi - 1);
    if (r.top_betti < 0) {
        throw InconsistencyError("negative Betti number " + std::to_string(r.top_betti) + " from chi=" +
                                 std::to_string(r.chi));
    }
    r.chambers = 1 + r.top_betti;
    return r;
}

} // namespace moduli

#endif // MODULI_MV_EULER_HPP
