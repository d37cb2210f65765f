#ifndef MODULI_TESTS_GENERATORS_HPP
#define MODULI_TESTS_GENERATORS_HPP

// Seeded generators for property tests.

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "moduli/graph.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline moduli::LabeledGraph random_graph(int n, Rng& rng, double p = 0.5) {
    std::bernoulli_distribution coin(p);
    moduli::LabeledGraph g(n);
    for (std::size_t k = 0; k < moduli::pair_count(n); ++k) g.set_bit(k, coin(rng));
    return g;
}

/// points uniform in [-scale, scale]^d
inline moduli::PointConfig random_points(int n, int d, Rng& rng, double scale = 1.5) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Eigen::MatrixXd m(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = u(rng);
    return moduli::PointConfig(std::move(m));
}

/// random orthogonal matrix via QR of a Gaussian matrix
inline Eigen::MatrixXd random_orthogonal(int d, Rng& rng) {
    std::normal_distribution<double> z;
    Eigen::MatrixXd a(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = z(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    return qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
}

} // namespace gen

#endif // MODULI_TESTS_GENERATORS_HPP
