#ifndef MODULI_BOUNDS_HPP
#define MODULI_BOUNDS_HPP

// Natural logs of the closed-form bounds on the number of labeled graphs
// realizable in R^d and on the number of chambers of R^{d x n}.

#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "moduli/errors.hpp"

namespace moduli {

namespace detail {
inline void check_nd(int n, int d) {
    if (n < 1 || d < 1) throw ArgumentError("bounds need n >= 1 and d >= 1");
}
} // namespace detail

/// log of (4e/d)^{nd} n^{nd}: sign patterns of the C(n,2) distance polynomials.
inline double warren_bound_log(int n, int d) {
    detail::check_nd(n, d);
    const double nd = static_cast<double>(n) * d;
    return nd * (std::log(4.0 / d) + 1.0 + std::log(static_cast<double>(n)));
}

inline bool isotopy_upper_valid(int n, int d) { return n >= 4 * d + 1; }
inline bool isomorphism_lower_valid(int n, int d) { return n > d + 1; }

/// log of 2dn (3e/2d)^{dn} n^{dn}; needs n >= 4d + 1.
inline double isotopy_upper_log(int n, int d) {
    detail::check_nd(n, d);
    if (!isotopy_upper_valid(n, d)) {
        throw ArgumentError("isotopy upper bound needs n >= 4d+1 (n=" + std::to_string(n) +
                            ", d=" + std::to_string(d) + ")");
    }
    const double nd = static_cast<double>(n) * d;
    return std::log(2.0 * nd) + nd * (std::log(3.0 / (2.0 * d)) + 1.0 + std::log(static_cast<double>(n)));
}

/// log of (n / ((d+1) e^2))^{dn}; needs n > d + 1.
inline double isomorphism_lower_log(int n, int d) {
    detail::check_nd(n, d);
    if (!isomorphism_lower_valid(n, d)) {
        throw ArgumentError("isomorphism lower bound needs n > d+1 (n=" + std::to_string(n) +
                            ", d=" + std::to_string(d) + ")");
    }
    const double nd = static_cast<double>(n) * d;
    return nd * (std::log(static_cast<double>(n)) - std::log(d + 1.0) - 2.0);
}

struct BoundsRow {
    int n = 0;
    double lower = 0.0;
    double upper = 0.0;
    /// upper/lower, NaN while the lower bound is not yet positive
    double ratio = std::numeric_limits<double>::quiet_NaN();
};

inline std::vector<BoundsRow> log_equivalence_report(const std::vector<int>& ns, int d) {
    std::vector<BoundsRow> rows;
    for (int n : ns) {
        BoundsRow r;
        r.n = n;
        r.lower = isomorphism_lower_log(n, d);
        r.upper = isotopy_upper_log(n, d);
        if (r.lower > 0) r.ratio = r.upper / r.lower;
        rows.push_back(r);
    }
    return rows;
}

inline void write_csv(std::ostream& os, const std::vector<BoundsRow>& rows) {
    os << "n,lower_log,upper_log,ratio\n";
    const auto old = os.precision(17);
    for (const auto& r : rows) {
        os << r.n << ',' << r.lower << ',' << r.upper << ',';
        if (std::isnan(r.ratio)) os << "nan";
        else os << r.ratio;
        os << '\n';
    }
    os.precision(old);
}

} // namespace moduli

#endif // MODULI_BOUNDS_HPP
