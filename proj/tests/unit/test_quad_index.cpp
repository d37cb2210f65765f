#include <gtest/gtest.h>

#include <algorithm>

#include <unsupported/Eigen/KroneckerProduct>

#include "generators.hpp"
#include "moduli/quad_index.hpp"

using namespace moduli;

namespace {

SignCondition random_sigma(int n, gen::Rng& rng) { return SignCondition::of_graph(gen::random_graph(n, rng)); }

std::vector<double> sorted_eigs(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

TEST(QuadIndex, PoleValues) {
    gen::Rng rng(51);
    for (int n = 2; n <= 5; ++n) {
        for (int d = 1; d <= 4; ++d) {
            const QuadricFamily fam(d, random_sigma(n, rng));
            const auto w = OmegaPoint::pole(n);
            EXPECT_EQ(index_full(fam, w), n * d);
            const auto s = index_split(fam, w);
            EXPECT_EQ(s.ind1, n);
            EXPECT_EQ(s.ind0, 0);
        }
    }
}

TEST(QuadIndex, TwoPointExample) {
    const QuadricFamily fam(1, SignCondition(2, {1}));
    const auto w = OmegaPoint::normalized(0.0, {-1.0});
    EXPECT_NEAR(fam.scalar_entry(w), 1.0 + fam.epsilon, 1e-15);
    const auto s = index_split(fam, w);
    EXPECT_EQ(s.ind1, 0);
    EXPECT_EQ(s.ind0, 1);
    EXPECT_EQ(index_full(fam, w), 1);
}

TEST(QuadIndex, MatrixBlocks) {
    gen::Rng rng(52);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const int d = 1 + static_cast<int>(rng() % 4);
        const QuadricFamily fam(d, random_sigma(n, rng));
        const auto w = sample_omega(n, rng);
        const Eigen::MatrixXd h = fam.full_matrix(w);
        const Eigen::MatrixXd q = fam.reduced_block(w);
        EXPECT_NEAR(h(0, 0), fam.scalar_entry(w), 1e-12);
        EXPECT_EQ(h.row(0).tail(n * d).cwiseAbs().maxCoeff(), 0.0);
        // x block is Q (x) 1_d in the ordering x_{i,a} -> 1 + (i-1)d + a
        const Eigen::MatrixXd kron = Eigen::kroneckerProduct(q, Eigen::MatrixXd::Identity(d, d));
        EXPECT_LT((h.bottomRightCorner(n * d, n * d) - kron).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(QuadIndex, KroneckerSpectrumMultiplicity) {
    gen::Rng rng(53);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const int d = 1 + static_cast<int>(rng() % 4);
        const QuadricFamily fam(d, random_sigma(n, rng));
        const auto w = sample_omega(n, rng);
        const auto big = sorted_eigs(fam.full_matrix(w).bottomRightCorner(n * d, n * d));
        std::vector<double> expected;
        for (double l : sorted_eigs(fam.reduced_block(w)))
            for (int a = 0; a < d; ++a) expected.push_back(l);
        std::sort(expected.begin(), expected.end());
        ASSERT_EQ(big.size(), expected.size());
        for (std::size_t k = 0; k < big.size(); ++k) EXPECT_NEAR(big[k], expected[k], 1e-10);
    }
}

// Oracle: count positive eigenvalues of the undeflated full matrix directly.
TEST(QuadIndex, FullMatchesDirectInertia) {
    gen::Rng rng(54);
    int checked = 0;
    for (int trial = 0; trial < 4000; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const int d = 1 + static_cast<int>(rng() % 4);
        const QuadricFamily fam(d, random_sigma(n, rng));
        const auto w = sample_omega(n, rng);
        const auto eig = sorted_eigs(fam.full_matrix(w));
        const double scale = std::max(std::abs(eig.front()), std::abs(eig.back()));
        if (std::any_of(eig.begin(), eig.end(), [&](double l) { return std::abs(l) < 1e-6 * scale; })) continue;
        const int direct = static_cast<int>(std::count_if(eig.begin(), eig.end(), [](double l) { return l > 0; }));
        ASSERT_EQ(index_full(fam, w), direct);
        ++checked;
    }
    EXPECT_GT(checked, 3000);
}

TEST(QuadIndex, SplitMatchesFull) {
    gen::Rng rng(55);
    for (int n = 2; n <= 5; ++n) {
        for (int d = 1; d <= 4; ++d) {
            const QuadricFamily fam(d, random_sigma(n, rng));
            for (int s = 0; s < 500; ++s) {
                const auto w = sample_omega(n, rng);
                try {
                    const auto split = index_split(fam, w);
                    ASSERT_EQ(index_full(fam, w), d * split.ind1 + split.ind0);
                } catch (const AmbiguousIndex&) {
                }
            }
        }
    }
}

TEST(QuadIndex, AmbiguousScalarEntryThrows) {
    const double eps = 1e-3;
    const QuadricFamily fam(1, SignCondition(2, {1}), eps);
    // scalar entry -w0/eps - w (1 + eps) vanishes here
    const double w0 = 0.3;
    const auto w = OmegaPoint::normalized(w0, {-w0 / (eps * (1 + eps))});
    EXPECT_THROW(index_split(fam, w), AmbiguousIndex);
    EXPECT_THROW(index_full(fam, w), AmbiguousIndex);
}

TEST(QuadIndex, OmegaValidation) {
    EXPECT_THROW(OmegaPoint::normalized(-0.1, {-1}), ArgumentError);
    EXPECT_THROW(OmegaPoint::normalized(0.1, {0.5}), ArgumentError);
    EXPECT_THROW(OmegaPoint::normalized(0.0, {0.0}), ArgumentError);
    const QuadricFamily fam(2, SignCondition(3, {1, 1, 1}));
    EXPECT_THROW(index_full(fam, OmegaPoint::pole(2)), ArgumentError);
    EXPECT_THROW(QuadricFamily(0, SignCondition(2, {1})), ArgumentError);
    EXPECT_THROW(QuadricFamily(1, SignCondition(2, {1}), 0.0), ArgumentError);
}

TEST(QuadIndex, SamplesLieInOmega) {
    gen::Rng rng(56);
    for (int s = 0; s < 1000; ++s) {
        const auto w = sample_omega(4, rng);
        double sq = w.omega0 * w.omega0;
        EXPECT_GE(w.omega0, 0.0);
        for (double p : w.pairs) {
            EXPECT_LE(p, 0.0);
            sq += p * p;
        }
        EXPECT_NEAR(sq, 1.0, 1e-12);
    }
}

TEST(QuadIndex, AllowedValues) {
    std::vector<int> got;
    for (int v = 0; v <= 10; ++v)
        if (allowed_index(v, 2, 3)) got.push_back(v);
    EXPECT_EQ(got, (std::vector<int>{0, 1, 3, 4, 6, 7}));
    for (int v = 0; v <= 4; ++v) EXPECT_TRUE(allowed_index(v, 3, 1));
    EXPECT_FALSE(allowed_index(5, 3, 1));
}

TEST(QuadIndex, CensusValueSet) {
    gen::Rng rng(57);
    for (int n = 2; n <= 4; ++n) {
        for (int d = 1; d <= 4; ++d) {
            const QuadricFamily fam(d, random_sigma(n, rng));
            const auto c = index_value_census(fam, 2000, 100 + n * 10 + d, 2);
            EXPECT_EQ(c.samples, 2000);
            EXPECT_EQ(c.violations(), 0);
            EXPECT_LT(c.ambiguous_rate(), 0.01);
            for (int v : c.observed) EXPECT_TRUE(allowed_index(v, n, d)) << v;
        }
    }
}

TEST(QuadIndex, TopValueAbsentInHighDimension) {
    for (int n = 2; n <= 3; ++n) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pair_count(n)); ++mask) {
            const QuadricFamily fam(n + 1, SignCondition::of_graph(LabeledGraph::from_mask(n, mask)));
            const auto c = index_value_census(fam, 1000, mask + 1);
            EXPECT_EQ(c.top_observed, 0);
            EXPECT_EQ(c.observed.count(n * (n + 1) + 1), 0u);
        }
    }
}

TEST(QuadIndex, CensusDeterministic) {
    const QuadricFamily fam(2, SignCondition(3, {-1, 1, -1}));
    const auto a = index_value_census(fam, 500, 9, 3);
    const auto b = index_value_census(fam, 500, 9, 3);
    EXPECT_EQ(a.observed, b.observed);
    EXPECT_EQ(a.ambiguous, b.ambiguous);
    EXPECT_THROW(index_value_census(fam, 0, 1), ArgumentError);
}
