#ifndef MODULI_ERRORS_HPP
#define MODULI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace moduli {

/// Bad arguments or violated preconditions. The CLI maps these to exit code 2.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Enumeration or expansion would exceed its work budget.
class BudgetExceeded : public ArgumentError {
public:
    using ArgumentError::ArgumentError;
};

/// Floating-point trouble: infeasible perturbation sizes, ambiguous signs,
/// failed searches. The CLI maps these to exit code 3.
class NumericFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configuration lies (within tolerance) on the discriminant.
class DegenerateConfiguration : public NumericFailure {
public:
    DegenerateConfiguration(int i, int j, double squared_distance)
        : NumericFailure("pair (" + std::to_string(i) + "," + std::to_string(j) +
                         ") is at squared distance " + std::to_string(squared_distance) +
                         ", too close to 1"),
          i_(i), j_(j), squared_distance_(squared_distance) {}

    int first() const noexcept { return i_; }
    int second() const noexcept { return j_; }
    double squared_distance() const noexcept { return squared_distance_; }

private:
    int i_;
    int j_;
    double squared_distance_;
};

/// Two independent computations that must agree did not. Always a bug.
class InconsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace moduli

#endif // MODULI_ERRORS_HPP
