#ifndef MODULI_SERIES_HPP
#define MODULI_SERIES_HPP

// Truncated power series with exact rational coefficients, and the
// exponential generating functions for labeled semiorders and labeled unit
// interval graphs built from them.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "moduli/errors.hpp"

namespace moduli {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr int kDefaultSeriesOrder = 40;

/// sum_{k<=order} c_k x^k. Arithmetic is exact in every coefficient up to the
/// truncation order; raising the order never changes lower coefficients.
class RationalSeries {
public:
    explicit RationalSeries(int order) : c_(static_cast<std::size_t>(check_order(order)) + 1) {}

    RationalSeries(int order, std::vector<Rational> coeffs) : RationalSeries(order) {
        for (std::size_t k = 0; k < std::min(coeffs.size(), c_.size()); ++k) c_[k] = std::move(coeffs[k]);
    }

    static RationalSeries constant(int order, const Rational& value) {
        RationalSeries s(order);
        s.c_[0] = value;
        return s;
    }

    /// The series x.
    static RationalSeries identity(int order) {
        RationalSeries s(order);
        if (order >= 1) s.c_[1] = 1;
        return s;
    }

    /// e^{a x}
    static RationalSeries exp_linear(int order, const Rational& a) {
        RationalSeries s(order);
        s.c_[0] = 1;
        for (int k = 1; k <= order; ++k) s.c_[k] = s.c_[k - 1] * a / k;
        return s;
    }

    int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const Rational& operator[](int k) const { return c_.at(static_cast<std::size_t>(k)); }
    Rational& operator[](int k) { return c_.at(static_cast<std::size_t>(k)); }
    const std::vector<Rational>& coeffs() const noexcept { return c_; }

    /// k! [x^k]; must be an integer for the counting series here.
    BigInt egf_count(int k) const {
        Rational v = (*this)[k] * factorial(k);
        if (boost::multiprecision::denominator(v) != 1) {
            throw InconsistencyError("egf coefficient " + std::to_string(k) + " is not an integer");
        }
        return boost::multiprecision::numerator(v);
    }

    friend RationalSeries operator+(RationalSeries a, const RationalSeries& b) {
        same_order(a, b);
        for (std::size_t k = 0; k < a.c_.size(); ++k) a.c_[k] += b.c_[k];
        return a;
    }
    friend RationalSeries operator-(RationalSeries a, const RationalSeries& b) {
        same_order(a, b);
        for (std::size_t k = 0; k < a.c_.size(); ++k) a.c_[k] -= b.c_[k];
        return a;
    }
    friend RationalSeries operator*(RationalSeries a, const Rational& s) {
        for (auto& c : a.c_) c *= s;
        return a;
    }
    friend RationalSeries operator*(const Rational& s, RationalSeries a) { return std::move(a) * s; }
    friend RationalSeries operator+(RationalSeries a, const Rational& s) {
        a.c_[0] += s;
        return a;
    }
    friend RationalSeries operator-(const Rational& s, const RationalSeries& a) {
        return constant(a.order(), s) - a;
    }

    friend RationalSeries operator*(const RationalSeries& a, const RationalSeries& b) {
        same_order(a, b);
        RationalSeries out(a.order());
        const int n = a.order();
        for (int i = 0; i <= n; ++i) {
            if (a.c_[i] == 0) continue;
            for (int j = 0; i + j <= n; ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return out;
    }

    /// 1/a; needs a nonzero constant term.
    RationalSeries inverse() const {
        if (c_[0] == 0) throw ArgumentError("series inverse needs a nonzero constant term");
        RationalSeries out(order());
        out.c_[0] = 1 / c_[0];
        for (int k = 1; k <= order(); ++k) {
            Rational acc = 0;
            for (int j = 1; j <= k; ++j) acc += c_[j] * out.c_[k - j];
            out.c_[k] = -acc / c_[0];
        }
        return out;
    }

    friend RationalSeries operator/(const RationalSeries& a, const RationalSeries& b) { return a * b.inverse(); }

    /// f(inner); inner must have zero constant term.
    RationalSeries compose(const RationalSeries& inner) const {
        same_order(*this, inner);
        if (inner.c_[0] != 0) throw ArgumentError("composition needs an inner series with zero constant term");
        RationalSeries out = constant(order(), c_.back());
        for (int k = order() - 1; k >= 0; --k) out = out * inner + c_[k];
        return out;
    }

    /// exp(f); f must have zero constant term.
    RationalSeries exp() const {
        if (c_[0] != 0) throw ArgumentError("series exp needs a zero constant term");
        RationalSeries out(order());
        out.c_[0] = 1;
        for (int k = 1; k <= order(); ++k) {
            Rational acc = 0;
            for (int j = 1; j <= k; ++j) acc += j * c_[j] * out.c_[k - j];
            out.c_[k] = acc / k;
        }
        return out;
    }

    /// Square root by Newton iteration y <- (y + s/y)/2 from the exact root of
    /// the constant term, which must be a positive rational square.
    RationalSeries sqrt() const {
        const Rational& c0 = c_[0];
        if (c0 <= 0) throw ArgumentError("series sqrt needs a positive constant term");
        const BigInt num = boost::multiprecision::numerator(c0);
        const BigInt den = boost::multiprecision::denominator(c0);
        const BigInt rn = boost::multiprecision::sqrt(num);
        const BigInt rd = boost::multiprecision::sqrt(den);
        if (rn * rn != num || rd * rd != den) {
            throw ArgumentError("series sqrt: constant term is not a rational square");
        }
        RationalSeries y = constant(order(), Rational(rn, rd));
        const Rational half(1, 2);
        for (int iter = 0; iter < 64; ++iter) {
            RationalSeries next = (y + *this / y) * half;
            if (next.c_ == y.c_) return y;
            y = std::move(next);
        }
        throw NumericFailure("series sqrt: Newton iteration did not reach a fixed point");
    }

    /// Change the truncation order (pads with zeros or drops high terms).
    RationalSeries with_order(int order) const {
        RationalSeries out(order);
        for (int k = 0; k <= std::min(order, this->order()); ++k) out.c_[k] = c_[k];
        return out;
    }

    static BigInt factorial(int k) {
        BigInt f = 1;
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    }

private:
    static int check_order(int order) {
        if (order < 0) throw ArgumentError("series order must be nonnegative");
        return order;
    }
    static void same_order(const RationalSeries& a, const RationalSeries& b) {
        if (a.order() != b.order()) throw ArgumentError("series orders differ");
    }

    std::vector<Rational> c_;
};

/// C(x) = (1 - sqrt(1 - 4x)) / (2x), the Catalan numbers.
inline RationalSeries catalan_series(int order) {
    const auto x = RationalSeries::identity(order + 1);
    const auto root = (Rational(1) - Rational(4) * x).sqrt();
    RationalSeries out(order);
    for (int k = 0; k <= order; ++k) out[k] = -root[k + 1] / 2;
    return out;
}

/// sum f(n) x^n / n! = C(1 - e^{-x}), f(n) the labeled semiorders on [n].
inline RationalSeries semiorder_egf(int order) {
    const auto inner = Rational(1) - RationalSeries::exp_linear(order, -1);
    return catalan_series(order).compose(inner);
}

/// Labeled unit interval graphs: Lambda = exp(Gamma) - 1 with
/// Gamma = (1 + 2z)/4 - sqrt((1 - 3z)/(1 + z))/4, z = e^x - 1.
inline RationalSeries unit_interval_egf(int order) {
    const auto z = RationalSeries::exp_linear(order, 1) + Rational(-1);
    const auto ratio = (Rational(1) - Rational(3) * z) / (z + Rational(1));
    const auto gamma = (z * Rational(2) + Rational(1)) * Rational(1, 4) - ratio.sqrt() * Rational(1, 4);
    if (gamma[0] != 0) throw InconsistencyError("connected unit interval EGF has nonzero constant term");
    return gamma.exp() + Rational(-1);
}

namespace detail {
inline int order_for(int n, int order) {
    if (n < 0) throw ArgumentError("count index must be nonnegative");
    if (order < n) throw ArgumentError("series order must be at least n");
    return order;
}
} // namespace detail

inline BigInt semiorder_count(int n, int order = kDefaultSeriesOrder) {
    return semiorder_egf(detail::order_for(n, std::max(order, n))).egf_count(n);
}

inline BigInt uig_count(int n, int order = kDefaultSeriesOrder) {
    return unit_interval_egf(detail::order_for(n, std::max(order, n))).egf_count(n);
}

/// log of (1/n) sqrt(6 log(4/3)) (n / (e log(4/3)))^n.
inline double semiorder_asymptotic_log(int n) {
    if (n < 1) throw ArgumentError("asymptotic formula needs n >= 1");
    const double l = std::log(4.0 / 3.0);
    const double nn = n;
    return -std::log(nn) + 0.5 * std::log(6.0 * l) + nn * (std::log(nn) - 1.0 - std::log(l));
}

inline double semiorder_asymptotic(int n) { return std::exp(semiorder_asymptotic_log(n)); }

/// exact / asymptotic, formed in log space so large counts do not overflow.
inline double semiorder_asymptotic_ratio(const BigInt& exact, int n) {
    using Float = boost::multiprecision::cpp_bin_float_50;
    const Float log_exact = boost::multiprecision::log(Float(exact));
    return std::exp(static_cast<double>(log_exact) - semiorder_asymptotic_log(n));
}

/// 8 e^{-1/12}: limiting ratio of semiorders to unit interval graphs.
inline double ratio_constant() { return 8.0 * std::exp(-1.0 / 12.0); }

} // namespace moduli

#endif // MODULI_SERIES_HPP
