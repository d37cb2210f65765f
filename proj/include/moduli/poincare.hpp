#ifndef MODULI_POINCARE_HPP
#define MODULI_POINCARE_HPP

// Poincare polynomials whose exponents are affine in the ambient dimension d,
// the stable tables for graphs on at most 4 vertices, and their aggregation
// into the Poincare polynomial of the whole complement of the discriminant.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "moduli/errors.hpp"
#include "moduli/graph.hpp"

namespace moduli {

/// sum coeff * t^{a d + b}, kept symbolic in d. Zero coefficients are dropped.
class GradedPoly {
public:
    using Exponent = std::pair<int, int>;  ///< (a, b)

    GradedPoly() = default;

    static GradedPoly term(std::int64_t coeff, int a, int b) {
        GradedPoly p;
        p.add(coeff, a, b);
        return p;
    }
    static GradedPoly one() { return term(1, 0, 0); }

    void add(std::int64_t coeff, int a, int b) {
        if (coeff == 0) return;
        auto& c = terms_[{a, b}];
        c += coeff;
        if (c == 0) terms_.erase({a, b});
    }

    std::int64_t coeff(int a, int b) const {
        const auto it = terms_.find({a, b});
        return it == terms_.end() ? 0 : it->second;
    }

    const std::map<Exponent, std::int64_t>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }

    /// Sum of coefficients (the total Betti number).
    std::int64_t at_one() const {
        std::int64_t s = 0;
        for (const auto& [e, c] : terms_) s += c;
        return s;
    }

    friend GradedPoly operator+(GradedPoly p, const GradedPoly& q) {
        for (const auto& [e, c] : q.terms_) p.add(c, e.first, e.second);
        return p;
    }
    friend GradedPoly operator-(GradedPoly p, const GradedPoly& q) {
        for (const auto& [e, c] : q.terms_) p.add(-c, e.first, e.second);
        return p;
    }
    friend GradedPoly operator*(std::int64_t s, const GradedPoly& p) {
        GradedPoly out;
        for (const auto& [e, c] : p.terms_) out.add(s * c, e.first, e.second);
        return out;
    }
    friend GradedPoly operator*(const GradedPoly& p, const GradedPoly& q) {
        GradedPoly out;
        for (const auto& [e, c] : p.terms_) {
            for (const auto& [f, k] : q.terms_) out.add(c * k, e.first + f.first, e.second + f.second);
        }
        return out;
    }
    friend bool operator==(const GradedPoly& p, const GradedPoly& q) { return p.terms_ == q.terms_; }
    friend bool operator!=(const GradedPoly& p, const GradedPoly& q) { return !(p == q); }

    /// e.g. "1 + 3t^{d-1} + 2t^{2d-2}"
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) os << (c < 0 ? " - " : " + ");
            else if (c < 0) os << "-";
            first = false;
            const std::int64_t mag = c < 0 ? -c : c;
            if (e.first == 0 && e.second == 0) {
                os << mag;
                continue;
            }
            if (mag != 1) os << mag;
            os << "t^{" << exponent_str(e.first, e.second) << "}";
        }
        return os.str();
    }

private:
    static std::string exponent_str(int a, int b) {
        std::string s;
        if (a != 0) s = (a == 1 ? "" : (a == -1 ? "-" : std::to_string(a))) + "d";
        if (b != 0) {
            if (!s.empty() && b > 0) s += "+";
            s += std::to_string(b);
        }
        return s.empty() ? "0" : s;
    }

    std::map<Exponent, std::int64_t> terms_;
};

/// Integer Laurent polynomial in t: exponent -> coefficient, zeros dropped.
using ConcretePoly = std::map<int, std::int64_t>;

inline std::int64_t concrete_at_one(const ConcretePoly& p) {
    std::int64_t s = 0;
    for (const auto& [e, c] : p) s += c;
    return s;
}

inline std::int64_t concrete_coeff(const ConcretePoly& p, int exponent) {
    const auto it = p.find(exponent);
    return it == p.end() ? 0 : it->second;
}

/// prod_{j=1}^{n-1} (1 + j t^{d-1})
inline GradedPoly poincare_config(int n) {
    if (n < 1) throw ArgumentError("poincare_config needs n >= 1");
    GradedPoly p = GradedPoly::one();
    for (int j = 1; j < n; ++j) p = p * (GradedPoly::one() + GradedPoly::term(j, 1, -1));
    return p;
}

/// Key that separates every isomorphism type on at most 4 vertices.
struct GraphTypeKey {
    int edges = 0;
    std::vector<int> degrees;  ///< sorted ascending
    int triangles = 0;

    friend bool operator==(const GraphTypeKey& a, const GraphTypeKey& b) {
        return std::tie(a.edges, a.degrees, a.triangles) == std::tie(b.edges, b.degrees, b.triangles);
    }
    friend bool operator<(const GraphTypeKey& a, const GraphTypeKey& b) {
        return std::tie(a.edges, a.degrees, a.triangles) < std::tie(b.edges, b.degrees, b.triangles);
    }
};

inline GraphTypeKey type_key(const LabeledGraph& g) {
    GraphTypeKey k;
    k.edges = static_cast<int>(g.edge_count());
    for (int v = 1; v <= g.n(); ++v) k.degrees.push_back(g.degree(v));
    std::sort(k.degrees.begin(), k.degrees.end());
    for (int a = 1; a <= g.n(); ++a) {
        for (int b = a + 1; b <= g.n(); ++b) {
            for (int c = b + 1; c <= g.n(); ++c) {
                if (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) ++k.triangles;
            }
        }
    }
    return k;
}

struct GraphTypeRow {
    std::string name;
    GraphTypeKey key;
    GradedPoly poly;
    std::int64_t beta = 0;    ///< stable total Betti number
    std::int64_t copies = 0;  ///< labeled graphs of this type
};

using GraphTypeTable = std::vector<GraphTypeRow>;

namespace detail {

inline GradedPoly poly(std::initializer_list<std::tuple<std::int64_t, int, int>> terms) {
    GradedPoly p;
    for (const auto& [c, a, b] : terms) p.add(c, a, b);
    return p;
}

inline GraphTypeRow row(std::string name, int edges, std::vector<int> degrees, int triangles, GradedPoly p,
                        std::int64_t beta, std::int64_t copies) {
    return GraphTypeRow{std::move(name), GraphTypeKey{edges, std::move(degrees), triangles}, std::move(p), beta,
                        copies};
}

} // namespace detail

/// Stable Poincare polynomials of the chamber of each graph type on n <= 4
/// vertices.
inline GraphTypeTable graph_type_table(int n) {
    using detail::poly;
    using detail::row;
    switch (n) {
        case 1: return {row("point", 0, {0}, 0, poly({{1, 0, 0}}), 1, 1)};
        case 2:
            return {row("empty", 0, {0, 0}, 0, poly({{1, 0, 0}, {1, 1, -1}}), 2, 1),
                    row("edge", 1, {1, 1}, 0, poly({{1, 0, 0}}), 1, 1)};
        case 3:
            return {row("empty", 0, {0, 0, 0}, 0, poly({{1, 0, 0}, {3, 1, -1}, {2, 2, -2}}), 6, 1),
                    row("edge", 1, {0, 1, 1}, 0, poly({{1, 0, 0}, {1, 1, -1}}), 2, 3),
                    row("path", 2, {1, 1, 2}, 0, poly({{1, 0, 0}, {1, 1, -1}}), 2, 3),
                    row("triangle", 3, {2, 2, 2}, 1, poly({{1, 0, 0}}), 1, 1)};
        case 4:
            return {
                row("empty", 0, {0, 0, 0, 0}, 0, poly({{1, 0, 0}, {6, 1, -1}, {11, 2, -2}, {6, 3, -3}}), 24, 1),
                row("edge", 1, {0, 0, 1, 1}, 0, poly({{1, 0, 0}, {3, 1, -1}, {2, 2, -2}}), 6, 6),
                row("two-edges", 2, {1, 1, 1, 1}, 0, poly({{1, 0, 0}, {1, 1, -1}}), 2, 3),
                row("path3", 2, {0, 1, 1, 2}, 0, poly({{1, 0, 0}, {2, 1, -1}, {1, 2, -2}}), 4, 12),
                row("path4", 3, {1, 1, 2, 2}, 0, poly({{1, 0, 0}, {1, 1, -1}}), 2, 12),
                row("star", 3, {1, 1, 1, 3}, 0, poly({{1, 0, 0}, {1, 1, -2}, {1, 1, -1}, {1, 2, -3}}), 4, 4),
                row("triangle", 3, {0, 2, 2, 2}, 1, poly({{1, 0, 0}, {1, 1, -1}}), 2, 4),
                row("paw", 4, {1, 2, 2, 3}, 1, poly({{1, 0, 0}, {1, 1, -1}}), 2, 12),
                row("square", 4, {2, 2, 2, 2}, 0, poly({{1, 0, 0}, {1, 1, -2}, {1, 1, -1}, {1, 2, -3}}), 4, 3),
                row("diamond", 5, {2, 2, 3, 3}, 2, poly({{1, 0, 0}, {1, 1, -1}}), 2, 6),
                row("complete", 6, {3, 3, 3, 3}, 4, poly({{1, 0, 0}}), 1, 1),
            };
        default: throw ArgumentError("graph type tables exist only for n <= 4, got n=" + std::to_string(n));
    }
}

inline const GraphTypeRow& classify(const LabeledGraph& g, const GraphTypeTable& table) {
    const GraphTypeKey key = type_key(g);
    for (const auto& r : table) {
        if (r.key == key) return r;
    }
    throw InconsistencyError("graph type not found in table");
}

/// Stable Poincare polynomial of the chamber of g, n <= 4.
inline GradedPoly poincare_graph(const LabeledGraph& g) { return classify(g, graph_type_table(g.n())).poly; }

inline GradedPoly poincare_table4(const LabeledGraph& g) {
    if (g.n() != 4) throw ArgumentError("poincare_table4 needs a graph on 4 vertices");
    return poincare_graph(g);
}

/// Stable total Betti number of the chamber of g, n <= 4.
inline std::int64_t floer_number(const LabeledGraph& g) { return poincare_graph(g).at_one(); }

/// Closed forms for the complement: n=3 and n=4.
inline GradedPoly complement_closed_form(int n) {
    using detail::poly;
    if (n == 3) return poly({{8, 0, 0}, {9, 1, -1}, {2, 2, -2}});
    if (n == 4) return poly({{64, 0, 0}, {7, 1, -2}, {92, 1, -1}, {7, 2, -3}, {35, 2, -2}, {6, 3, -3}});
    throw ArgumentError("complement closed form is known for n in {3, 4}");
}

/// Sum over every labeled graph on [n] of its table polynomial. Also checks
/// the table's labeled-copy column against the count seen.
inline GradedPoly aggregate_poincare(int n, const GraphTypeTable& table) {
    if (n < 1 || n > 4) throw ArgumentError("aggregation needs n in 1..4");
    const auto m = pair_count(n);
    std::map<std::string, std::int64_t> seen;
    GradedPoly total;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        const auto& r = classify(LabeledGraph::from_mask(n, mask), table);
        total = total + r.poly;
        ++seen[r.name];
    }
    for (const auto& r : table) {
        if (seen[r.name] != r.copies) {
            throw InconsistencyError("type " + r.name + ": table lists " + std::to_string(r.copies) +
                                     " labeled copies, enumeration found " + std::to_string(seen[r.name]));
        }
    }
    return total;
}

/// Poincare polynomial of the complement for n in {3,4}, by aggregation, and
/// checked against the closed form.
inline GradedPoly complement_poincare(int n, const GraphTypeTable& table) {
    if (n != 3 && n != 4) throw ArgumentError("complement_poincare needs n in {3, 4}");
    GradedPoly total = aggregate_poincare(n, table);
    const GradedPoly expected = complement_closed_form(n);
    if (total != expected) {
        throw InconsistencyError("aggregated " + total.str() + " but closed form is " + expected.str());
    }
    return total;
}

inline GradedPoly complement_poincare(int n) { return complement_poincare(n, graph_type_table(n)); }

/// Substitute d and merge colliding exponents.
inline ConcretePoly evaluate_at_d(const GradedPoly& p, int d) {
    if (d < 1) throw ArgumentError("evaluate_at_d needs d >= 1");
    ConcretePoly out;
    for (const auto& [e, c] : p.terms()) {
        auto& slot = out[e.first * d + e.second];
        slot += c;
        if (slot == 0) out.erase(e.first * d + e.second);
    }
    return out;
}

/// As above, after removing every labeled copy of the types of `drop` (graph
/// types that have no chamber in dimension d). Each type is removed once.
inline ConcretePoly evaluate_at_d(const GradedPoly& p, int d, const std::vector<LabeledGraph>& drop) {
    GradedPoly q = p;
    std::set<std::string> removed;
    for (const auto& g : drop) {
        const auto table = graph_type_table(g.n());
        const auto& r = classify(g, table);
        if (!removed.insert(r.name).second) continue;
        q = q - r.copies * r.poly;
    }
    return evaluate_at_d(q, d);
}

} // namespace moduli

#endif // MODULI_POINCARE_HPP
