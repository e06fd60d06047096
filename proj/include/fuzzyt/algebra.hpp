#pragma once

// Value spaces that interpretations and evaluators are parameterized over.
// FuzzyAlgebra works on doubles in [0,1] with a comparison tolerance;
// GradedAlgebra works on integer numerators of C_n and is exact.

#include <algorithm>
#include <cmath>
#include <compare>
#include <string>

#include "fuzzyt/error.hpp"
#include "fuzzyt/logic.hpp"

namespace fuzzyt {

inline constexpr double kDefaultEpsilon = 1e-9;

class FuzzyAlgebra {
public:
    using value_type = double;

    explicit FuzzyAlgebra(CombinationFamily family = CombinationFamily::make(FamilyName::GoedelInvolutive),
                          double epsilon = kDefaultEpsilon)
        : family_(family), epsilon_(epsilon) {
        if (!(epsilon >= 0.0)) throw InputError("tolerance must be non-negative");
    }

    const CombinationFamily& family() const noexcept { return family_; }
    double epsilon() const noexcept { return epsilon_; }
    static constexpr bool is_graded() noexcept { return false; }

    static constexpr double top() noexcept { return 1.0; }
    static constexpr double bottom() noexcept { return 0.0; }

    double tnorm(double a, double b) const noexcept { return clamp(family_.tnorm(a, b)); }
    double snorm(double a, double b) const noexcept { return clamp(family_.snorm(a, b)); }
    double implies(double a, double b) const noexcept { return clamp(family_.implies(a, b)); }
    double negate(double a) const noexcept { return clamp(family_.negate(a)); }

    /// Three-way comparison; values within epsilon are equivalent.
    std::weak_ordering compare(double a, double b) const noexcept {
        if (a > b + epsilon_) return std::weak_ordering::greater;
        if (b > a + epsilon_) return std::weak_ordering::less;
        return std::weak_ordering::equivalent;
    }

    static constexpr bool positive(double a) noexcept { return a > 0.0; }
    static constexpr double to_double(double a) noexcept { return a; }

    double from_double(double v) const {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw InputError("degree " + std::to_string(v) + " outside [0,1]");
        }
        return v;
    }

    /// `value theta threshold`, with values within epsilon of the threshold
    /// counted as equal to it.
    bool satisfies(double value, Comparator cmp, const Threshold& t) const noexcept {
        const double th = t.value();
        switch (cmp) {
            case Comparator::Geq: return value >= th - epsilon_;
            case Comparator::Leq: return value <= th + epsilon_;
            case Comparator::Gt: return value > th + epsilon_;
            case Comparator::Lt: return value < th - epsilon_;
        }
        return false;
    }

private:
    static double clamp(double v) noexcept { return std::clamp(v, 0.0, 1.0); }

    CombinationFamily family_;
    double epsilon_;
};

/// Exact arithmetic on C_n numerators. Product logic is not closed on C_n and
/// is rejected.
class GradedAlgebra {
public:
    using value_type = int;

    GradedAlgebra(CombinationFamily family, GradedScale scale) : family_(family), scale_(scale) {
        if (family.name == FamilyName::Product) {
            throw InputError("product logic is not closed on C_n; use a fuzzy interpretation");
        }
    }

    const CombinationFamily& family() const noexcept { return family_; }
    GradedScale scale() const noexcept { return scale_; }
    int n() const noexcept { return scale_.n(); }
    static constexpr bool is_graded() noexcept { return true; }

    static constexpr int bottom() noexcept { return 0; }
    int top() const noexcept { return scale_.n(); }

    int tnorm(int a, int b) const noexcept {
        if (family_.name == FamilyName::Lukasiewicz) return std::max(a + b - n(), 0);
        return std::min(a, b);
    }
    int snorm(int a, int b) const noexcept {
        if (family_.name == FamilyName::Lukasiewicz) return std::min(a + b, n());
        return std::max(a, b);
    }
    int implies(int a, int b) const noexcept {
        if (family_.name == FamilyName::Lukasiewicz) return std::min(n() - a + b, n());
        return a <= b ? n() : b;
    }
    int negate(int a) const noexcept {
        if (family_.negation == NegationKind::Involutive) return n() - a;
        return a == 0 ? n() : 0;
    }

    static std::weak_ordering compare(int a, int b) noexcept { return a <=> b; }
    static constexpr bool positive(int a) noexcept { return a > 0; }
    double to_double(int a) const noexcept { return scale_.value(a); }

    /// Accepts doubles within 1e-9 of a grade.
    int from_double(double v) const {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw InputError("degree " + std::to_string(v) + " outside [0,1]");
        }
        const long long i = std::llround(v * n());
        if (std::abs(v - scale_.value(static_cast<int>(i))) > 1e-9) {
            throw InputError("degree " + std::to_string(v) + " is not on C_" + std::to_string(n()));
        }
        return static_cast<int>(i);
    }

    /// Exact: compares value/n against num/den by cross-multiplication.
    bool satisfies(int value, Comparator cmp, const Threshold& t) const noexcept {
        const long long lhs = static_cast<long long>(value) * t.denominator();
        const long long rhs = t.numerator() * static_cast<long long>(n());
        switch (cmp) {
            case Comparator::Geq: return lhs >= rhs;
            case Comparator::Leq: return lhs <= rhs;
            case Comparator::Gt: return lhs > rhs;
            case Comparator::Lt: return lhs < rhs;
        }
        return false;
    }

private:
    CombinationFamily family_;
    GradedScale scale_;
};

}  // namespace fuzzyt
