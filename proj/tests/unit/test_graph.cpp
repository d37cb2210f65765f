#include <gtest/gtest.h>

#include <set>

#include "generators.hpp"
#include "moduli/graph.hpp"
#include "moduli/json_io.hpp"

using namespace moduli;

TEST(PairIndex, Examples) {
    EXPECT_EQ(pair_index(1, 2, 4), 0u);
    EXPECT_EQ(pair_index(3, 4, 4), 5u);
    EXPECT_EQ(pair_index(1, 4, 4), 2u);
}

TEST(PairIndex, BadArguments) {
    EXPECT_THROW(pair_index(2, 2, 4), ArgumentError);
    EXPECT_THROW(pair_index(3, 2, 4), ArgumentError);
    EXPECT_THROW(pair_index(0, 2, 4), ArgumentError);
    EXPECT_THROW(pair_index(1, 5, 4), ArgumentError);
}

// independent oracle: count pairs in lexicographic order by hand
TEST(PairIndex, BijectiveLexicographic) {
    for (int n = 2; n <= 12; ++n) {
        std::size_t expected = 0;
        for (int i = 1; i <= n; ++i) {
            for (int j = i + 1; j <= n; ++j, ++expected) {
                ASSERT_EQ(pair_index(i, j, n), expected);
                ASSERT_EQ(pair_at(expected, n), std::make_pair(i, j));
            }
        }
        EXPECT_EQ(expected, pair_count(n));
    }
}

TEST(LabeledGraph, BitsetLength) {
    for (int n = 1; n <= 9; ++n) EXPECT_EQ(LabeledGraph(n).pairs(), static_cast<std::size_t>(n * (n - 1) / 2));
}

TEST(LabeledGraph, EqualityIsLabeled) {
    const auto k3 = LabeledGraph::complete(3);
    EXPECT_TRUE(graphs_equal_labeled(k3, LabeledGraph::complete(3)));
    const auto p123 = LabeledGraph::from_edges(3, {{1, 2}, {2, 3}});
    const auto p213 = LabeledGraph::from_edges(3, {{2, 1}, {1, 3}});
    EXPECT_FALSE(graphs_equal_labeled(p123, p213));
    EXPECT_FALSE(graphs_equal_labeled(LabeledGraph(3), LabeledGraph(4)));
}

TEST(LabeledGraph, SetBitOutOfRange) {
    LabeledGraph g(3);
    EXPECT_THROW(g.set_bit(3), ArgumentError);
}

TEST(GeometricGraph, Examples) {
    const auto g = geometric_graph(PointConfig::on_line({-2, 0}));
    EXPECT_EQ(g.graph, LabeledGraph(2));
    EXPECT_FALSE(g.degenerate);

    const auto origin = geometric_graph(PointConfig(Eigen::MatrixXd::Zero(4, 2)));
    EXPECT_EQ(origin.graph, LabeledGraph::complete(4));

    EXPECT_TRUE(geometric_graph(PointConfig::on_line({0, 1}), 1e-12).degenerate);
    EXPECT_THROW(geometric_graph(PointConfig::on_line({0, 1}), -1.0), ArgumentError);
}

TEST(SignCondition, Examples) {
    EXPECT_EQ(sign_condition(PointConfig::on_line({0, 0.5})).signs(), std::vector<int>{-1});
    EXPECT_EQ(sign_condition(PointConfig::on_line({0, 3})).signs(), std::vector<int>{1});

    Eigen::MatrixXd tri(3, 2);
    tri << 0, 0, 1, 0, 0.5, std::sqrt(3.0) / 2;
    EXPECT_EQ(sign_condition(PointConfig(tri * 1.01)).signs(), (std::vector<int>{1, 1, 1}));
}

TEST(SignCondition, DegenerateNamesPair) {
    try {
        sign_condition(PointConfig::on_line({5, 0, 1}));
        FAIL() << "expected DegenerateConfiguration";
    } catch (const DegenerateConfiguration& e) {
        EXPECT_EQ(e.first(), 2);
        EXPECT_EQ(e.second(), 3);
    }
}

TEST(SignCondition, RejectsBadEntries) {
    EXPECT_THROW(SignCondition(3, {1, 0, -1}), ArgumentError);
    EXPECT_THROW(SignCondition(3, {1, -1}), ArgumentError);
}

TEST(DiscriminantMargin, Examples) {
    EXPECT_DOUBLE_EQ(discriminant_margin(PointConfig::on_line({0, 1})), 0.0);
    EXPECT_DOUBLE_EQ(discriminant_margin(PointConfig::on_line({0, 2})), 3.0);
    // pairs: 0.25, 9, 6.25 -> |.-1| = 0.75, 8, 5.25
    EXPECT_DOUBLE_EQ(discriminant_margin(PointConfig::on_line({0, 0.5, 3})), 0.75);
}

TEST(GeometricGraphProperty, AgreesWithSignCondition) {
    gen::Rng rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const int d = 1 + static_cast<int>(rng() % 4);
        const auto p = gen::random_points(n, d, rng);
        if (discriminant_margin(p) <= kDefaultDegeneracyTol) continue;
        const auto g = geometric_graph(p).graph;
        const auto s = sign_condition(p);
        for (std::size_t k = 0; k < pair_count(n); ++k) ASSERT_EQ(g.bit(k), s.signs()[k] == -1);
        ASSERT_EQ(s.graph(), g);
    }
}

TEST(GeometricGraphProperty, InvariantUnderRigidMotion) {
    gen::Rng rng(12);
    std::normal_distribution<double> z;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 6);
        const int d = 1 + static_cast<int>(rng() % 4);
        const auto p = gen::random_points(n, d, rng);
        if (discriminant_margin(p) < 1e-6) continue;
        const Eigen::MatrixXd q = gen::random_orthogonal(d, rng);
        Eigen::RowVectorXd shift(d);
        for (int c = 0; c < d; ++c) shift(c) = 10 * z(rng);
        Eigen::MatrixXd moved = p.coords() * q;
        moved.rowwise() += shift;
        ASSERT_EQ(geometric_graph(PointConfig(moved)).graph, geometric_graph(p).graph);
    }
}

TEST(GeometricGraphProperty, SmallScalingLeavesDiscriminant) {
    gen::Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        // put one pair exactly on the discriminant
        auto p = gen::random_points(n, 1, rng);
        Eigen::MatrixXd m = p.coords();
        m(1, 0) = m(0, 0) + 1.0;
        const PointConfig on(m);
        const PointConfig scaled = on.scaled(1.0 + 1e-4);
        EXPECT_GT(discriminant_margin(scaled), 0.0);
    }
}

TEST(Json, RoundTrip) {
    gen::Rng rng(14);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 8);
        const auto g = gen::random_graph(n, rng);
        EXPECT_EQ(nlohmann::json(g).get<LabeledGraph>(), g);
        const auto p = gen::random_points(n, 3, rng);
        EXPECT_EQ(nlohmann::json(p).get<PointConfig>().coords(), p.coords());
    }
    const SignCondition s(3, {1, -1, 1});
    EXPECT_EQ(nlohmann::json(s).get<SignCondition>(), s);
}

TEST(Json, Encoding) {
    const auto j = nlohmann::json(LabeledGraph::from_edges(3, {{2, 3}, {1, 2}}));
    EXPECT_EQ(j, nlohmann::json::parse(R"({"n":3,"edges":[[1,2],[2,3]]})"));
    EXPECT_THROW(nlohmann::json::parse(R"({"n":3,"edges":[[1,1]]})").get<LabeledGraph>(), ArgumentError);
    EXPECT_THROW(nlohmann::json::parse(R"({"d":2,"points":[[1]]})").get<PointConfig>(), ArgumentError);
}
