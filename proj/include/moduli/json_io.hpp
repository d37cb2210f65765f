#ifndef MODULI_JSON_IO_HPP
#define MODULI_JSON_IO_HPP

// JSON encodings of the core types:
//   LabeledGraph   {"n": int, "edges": [[i,j], ...]}   (1-based, i < j)
//   PointConfig    {"d": int, "points": [[...], ...]}
//   SignCondition  {"n": int, "signs": [+1|-1, ...]}   (canonical pair order)

#include <vector>

#include <json.hpp>

#include "moduli/graph.hpp"

namespace moduli {

inline void to_json(nlohmann::json& j, const LabeledGraph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (auto [a, b] : g.edge_list()) edges.push_back({a, b});
    j = nlohmann::json{{"n", g.n()}, {"edges", std::move(edges)}};
}

inline void from_json(const nlohmann::json& j, LabeledGraph& g) {
    const int n = j.at("n").get<int>();
    LabeledGraph out(n);
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw ArgumentError("edge must be a pair [i,j]");
        const int a = e[0].get<int>();
        const int b = e[1].get<int>();
        if (a == b) throw ArgumentError("self-loops are not allowed");
        out.set_edge(a, b);
    }
    g = std::move(out);
}

inline void to_json(nlohmann::json& j, const PointConfig& p) {
    nlohmann::json points = nlohmann::json::array();
    for (int i = 0; i < p.size(); ++i) {
        std::vector<double> row(static_cast<std::size_t>(p.dim()));
        for (int c = 0; c < p.dim(); ++c) row[static_cast<std::size_t>(c)] = p.coords()(i, c);
        points.push_back(std::move(row));
    }
    j = nlohmann::json{{"d", p.dim()}, {"points", std::move(points)}};
}

inline void from_json(const nlohmann::json& j, PointConfig& p) {
    const int d = j.at("d").get<int>();
    const auto& points = j.at("points");
    if (d < 1 || points.empty()) throw ArgumentError("PointConfig JSON needs d >= 1 and at least one point");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(points.size()), d);
    Eigen::Index r = 0;
    for (const auto& row : points) {
        if (!row.is_array() || static_cast<int>(row.size()) != d) {
            throw ArgumentError("every point must have exactly d coordinates");
        }
        for (int c = 0; c < d; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
        ++r;
    }
    p = PointConfig(std::move(m));
}

inline void to_json(nlohmann::json& j, const SignCondition& s) {
    j = nlohmann::json{{"n", s.n()}, {"signs", s.signs()}};
}

inline void from_json(const nlohmann::json& j, SignCondition& s) {
    s = SignCondition(j.at("n").get<int>(), j.at("signs").get<std::vector<int>>());
}

} // namespace moduli

#endif // MODULI_JSON_IO_HPP
