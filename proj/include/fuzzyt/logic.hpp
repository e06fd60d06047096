#pragma once

// Truth degrees, the finite scales C_n, nearest-value quantization, and the
// four built-in families of combination functions.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzyt/error.hpp"

namespace fuzzyt {

/// A truth degree in [0,1].
class Degree {
public:
    constexpr Degree() = default;
    explicit Degree(double value) : value_(value) {
        if (!(value >= 0.0 && value <= 1.0)) {
            throw InputError("degree " + std::to_string(value) + " outside [0,1]");
        }
    }

    constexpr double value() const noexcept { return value_; }
    friend constexpr auto operator<=>(const Degree&, const Degree&) = default;

private:
    double value_ = 0.0;
};

/// The truth space C_n = {0, 1/n, ..., 1}. Graded values are integer numerators 0..n.
class GradedScale {
public:
    explicit GradedScale(int n) : n_(n) {
        if (n < 1) throw InputError("graded scale needs n >= 1, got " + std::to_string(n));
    }

    constexpr int n() const noexcept { return n_; }
    constexpr bool contains(long long numerator) const noexcept {
        return numerator >= 0 && numerator <= n_;
    }
    double value(int numerator) const noexcept { return static_cast<double>(numerator) / n_; }

    friend constexpr bool operator==(const GradedScale&, const GradedScale&) = default;

private:
    int n_ = 1;
};

/// Numerator of the nearest C_n value to `v`, with ties resolved towards the
/// lower grade: 0 for v <= 1/(2n), i for (2i-1)/(2n) < v <= (2i+1)/(2n), n above
/// (2n-1)/(2n). Boundary tests are exact on the binary value of `v`.
inline int quantize_index(double v, GradedScale scale) {
    if (std::isnan(v)) throw InputError("cannot quantize NaN");
    const int n = scale.n();
    const double twice_n = 2.0 * n;
    // sign(v*2n - k) computed with a single rounding, so it is exact.
    auto above = [&](int k) { return std::fma(v, twice_n, -static_cast<double>(k)) > 0.0; };
    long long i = static_cast<long long>(std::ceil(v * n - 0.5));
    if (i < 0) i = 0;
    if (i > n) i = n;
    while (i > 0 && !above(static_cast<int>(2 * i - 1))) --i;
    while (i < n && above(static_cast<int>(2 * i + 1))) ++i;
    return static_cast<int>(i);
}

/// A degree on C_n.
struct GradedDegree {
    int numerator = 0;
    GradedScale scale{1};

    double value() const noexcept { return scale.value(numerator); }
    friend bool operator==(const GradedDegree&, const GradedDegree&) = default;
};

inline GradedDegree quantize(Degree v, GradedScale scale) {
    return GradedDegree{quantize_index(v.value(), scale), scale};
}

/// [v]^n as a double.
inline double quantize_value(double v, GradedScale scale) {
    return scale.value(quantize_index(v, scale));
}

enum class FamilyName { Goedel, GoedelInvolutive, Lukasiewicz, Product };
enum class NegationKind { Goedel, Involutive };
enum class CombinationOp { TNorm, SNorm, Implication, Negation };

inline std::string_view to_string(FamilyName name) {
    switch (name) {
        case FamilyName::Goedel: return "goedel";
        case FamilyName::GoedelInvolutive: return "goedel-involutive";
        case FamilyName::Lukasiewicz: return "lukasiewicz";
        case FamilyName::Product: return "product";
    }
    return "?";
}

inline FamilyName parse_family_name(std::string_view text) {
    if (text == "goedel" || text == "godel" || text == "G") return FamilyName::Goedel;
    if (text == "goedel-involutive" || text == "godel-involutive" || text == "GZ")
        return FamilyName::GoedelInvolutive;
    if (text == "lukasiewicz" || text == "L") return FamilyName::Lukasiewicz;
    if (text == "product" || text == "P") return FamilyName::Product;
    throw InputError("unknown combination family '" + std::string(text) + "'");
}

/// t-norm, s-norm, implication and negation of one fuzzy logic.
///
/// Goedel: min / max / residuum / strict negation. GoedelInvolutive: the same
/// with 1-a. Lukasiewicz: bounded sum family with 1-a. Product: a*b,
/// a+b-ab, Goguen implication (0 > b = 1) and strict negation. The negation
/// can be overridden independently of the family.
struct CombinationFamily {
    FamilyName name = FamilyName::GoedelInvolutive;
    NegationKind negation = NegationKind::Involutive;

    static CombinationFamily make(FamilyName name, std::optional<NegationKind> negation = {}) {
        NegationKind dflt = NegationKind::Goedel;
        if (name == FamilyName::GoedelInvolutive || name == FamilyName::Lukasiewicz) {
            dflt = NegationKind::Involutive;
        }
        return CombinationFamily{name, negation.value_or(dflt)};
    }

    bool is_goedel() const noexcept {
        return name == FamilyName::Goedel || name == FamilyName::GoedelInvolutive;
    }

    static constexpr double top() noexcept { return 1.0; }
    static constexpr double bottom() noexcept { return 0.0; }

    double tnorm(double a, double b) const noexcept {
        switch (name) {
            case FamilyName::Lukasiewicz: return std::max(a + b - 1.0, 0.0);
            case FamilyName::Product: return a * b;
            default: return std::min(a, b);
        }
    }

    double snorm(double a, double b) const noexcept {
        switch (name) {
            case FamilyName::Lukasiewicz: return std::min(a + b, 1.0);
            case FamilyName::Product: {
                // a+b-ab, arranged so the result never rounds below max(a,b).
                const double hi = std::max(a, b), lo = std::min(a, b);
                return hi + lo * (1.0 - hi);
            }
            default: return std::max(a, b);
        }
    }

    double implies(double a, double b) const noexcept {
        switch (name) {
            case FamilyName::Lukasiewicz: return std::min(1.0 - a + b, 1.0);
            case FamilyName::Product:
                if (a <= b) return 1.0;
                return std::min(1.0, b / a);
            default: return a <= b ? 1.0 : b;
        }
    }

    double negate(double a) const noexcept {
        if (negation == NegationKind::Involutive) return 1.0 - a;
        return a == 0.0 ? 1.0 : 0.0;
    }

    friend bool operator==(const CombinationFamily&, const CombinationFamily&) = default;
};

inline Degree combine(const CombinationFamily& family, CombinationOp op, Degree a,
                      std::optional<Degree> b = {}) {
    if (op != CombinationOp::Negation && !b) {
        throw InputError("binary combination function needs two arguments");
    }
    double r = 0.0;
    switch (op) {
        case CombinationOp::TNorm: r = family.tnorm(a.value(), b->value()); break;
        case CombinationOp::SNorm: r = family.snorm(a.value(), b->value()); break;
        case CombinationOp::Implication: r = family.implies(a.value(), b->value()); break;
        case CombinationOp::Negation: r = family.negate(a.value()); break;
    }
    // Rounding in 1-a+b can leave the unit interval by an ulp.
    return Degree(std::clamp(r, 0.0, 1.0));
}

struct AxiomViolation {
    std::string axiom;
    double a = 0, b = 0, c = 0;
};

struct FamilyReport {
    std::size_t checks = 0;
    std::vector<AxiomViolation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

/// Checks every t-norm/s-norm, implication and negation axiom on all pairs and
/// triples drawn from `samples`. `Ops` is any type exposing tnorm, snorm,
/// implies, negate, top and bottom over `T`.
template <class Ops, class T>
FamilyReport validate_family(const Ops& ops, std::span<const T> samples, double tol = 0.0) {
    FamilyReport report;
    auto d = [](T x) { return static_cast<double>(x); };
    auto eq = [&](T x, T y) { return std::abs(d(x) - d(y)) <= tol; };
    auto le = [&](T x, T y) { return d(x) <= d(y) + tol; };
    auto check = [&](bool ok, const char* axiom, T a, T b = T{}, T c = T{}) {
        ++report.checks;
        if (!ok) report.violations.push_back({axiom, d(a), d(b), d(c)});
    };
    const T zero = ops.bottom();
    const T one = ops.top();

    check(eq(ops.implies(one, zero), zero), "implication 1>0=0", one, zero);
    check(eq(ops.negate(zero), one), "negation(0)=1", zero);
    check(eq(ops.negate(one), zero), "negation(1)=0", one);

    for (T a : samples) {
        check(eq(ops.tnorm(a, zero), zero), "tnorm tautology a*0=0", a);
        check(eq(ops.tnorm(a, one), a), "tnorm identity a*1=a", a);
        check(eq(ops.snorm(a, one), one), "snorm tautology a+1=1", a);
        check(eq(ops.snorm(a, zero), a), "snorm identity a+0=a", a);
        check(eq(ops.implies(zero, a), one), "implication 0>b=1", a);
        check(eq(ops.implies(a, one), one), "implication a>1=1", a);
        for (T b : samples) {
            check(eq(ops.tnorm(a, b), ops.tnorm(b, a)), "tnorm commutativity", a, b);
            check(eq(ops.snorm(a, b), ops.snorm(b, a)), "snorm commutativity", a, b);
            if (d(a) <= d(b)) {
                check(le(ops.negate(b), ops.negate(a)), "negation antitonicity", a, b);
            }
            for (T c : samples) {
                check(eq(ops.tnorm(ops.tnorm(a, b), c), ops.tnorm(a, ops.tnorm(b, c))),
                      "tnorm associativity", a, b, c);
                check(eq(ops.snorm(ops.snorm(a, b), c), ops.snorm(a, ops.snorm(b, c))),
                      "snorm associativity", a, b, c);
                if (d(b) <= d(c)) {
                    check(le(ops.tnorm(a, b), ops.tnorm(a, c)), "tnorm monotonicity", a, b, c);
                    check(le(ops.snorm(a, b), ops.snorm(a, c)), "snorm monotonicity", a, b, c);
                    check(le(ops.implies(a, b), ops.implies(a, c)), "implication monotonicity", a,
                          b, c);
                }
                if (d(a) <= d(b)) {
                    check(le(ops.implies(b, c), ops.implies(a, c)), "implication antitonicity", a,
                          b, c);
                }
            }
        }
    }
    return report;
}

/// {0, step, 2*step, ..., 1} computed as i/m so that the grid hits 1 exactly.
inline std::vector<double> degree_grid(double step) {
    const int m = static_cast<int>(std::lround(1.0 / step));
    if (m < 1) throw InputError("grid step must be in (0,1]");
    std::vector<double> grid;
    for (int i = 0; i <= m; ++i) grid.push_back(static_cast<double>(i) / m);
    return grid;
}

enum class Comparator { Geq, Leq, Gt, Lt };

inline std::string_view to_string(Comparator c) {
    switch (c) {
        case Comparator::Geq: return ">=";
        case Comparator::Leq: return "<=";
        case Comparator::Gt: return ">";
        case Comparator::Lt: return "<";
    }
    return "?";
}

/// An axiom threshold kept as an exact non-negative fraction so that graded
/// comparisons (`>= 3/5`) never go through floating point.
class Threshold {
public:
    Threshold() = default;

    static Threshold fraction(long long num, long long den) {
        if (den <= 0 || num < 0 || num > den) {
            throw InputError("threshold " + std::to_string(num) + "/" + std::to_string(den) +
                             " outside [0,1]");
        }
        const long long g = std::gcd(num, den);
        Threshold t;
        t.num_ = num / g;
        t.den_ = den / g;
        return t;
    }

    /// Parses "0.7", "1", "3/5", ".25".
    static Threshold parse(std::string_view text) {
        const auto slash = text.find('/');
        if (slash != std::string_view::npos) {
            return fraction(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
        }
        long long num = 0;
        long long den = 1;
        bool seen_digit = false;
        bool after_point = false;
        for (char ch : text) {
            if (ch == '.') {
                if (after_point) throw InputError("malformed threshold '" + std::string(text) + "'");
                after_point = true;
                continue;
            }
            if (ch < '0' || ch > '9') {
                throw InputError("malformed threshold '" + std::string(text) + "'");
            }
            seen_digit = true;
            if (num > 100000000000000LL || den > 100000000000000LL) {
                throw InputError("threshold '" + std::string(text) + "' has too many digits");
            }
            num = num * 10 + (ch - '0');
            if (after_point) den *= 10;
        }
        if (!seen_digit) throw InputError("malformed threshold '" + std::string(text) + "'");
        Threshold t = fraction(num, den);
        t.decimal_ = true;
        return t;
    }

    /// Shortest decimal that round-trips `v`.
    static Threshold from_double(double v) {
        if (!(v >= 0.0 && v <= 1.0)) throw InputError("threshold outside [0,1]");
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
        return parse(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
    }

    long long numerator() const noexcept { return num_; }
    long long denominator() const noexcept { return den_; }
    double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    bool on_scale(GradedScale scale) const noexcept { return (num_ * scale.n()) % den_ == 0; }

    /// Decimal when written as one, `num/den` otherwise.
    std::string to_string() const {
        if (den_ == 1) return std::to_string(num_);
        if (!decimal_) return std::to_string(num_) + "/" + std::to_string(den_);
        long long pow10 = 1;
        int digits = 0;
        while (pow10 % den_ != 0) {
            pow10 *= 10;
            ++digits;
        }
        const long long num = num_ * (pow10 / den_);
        std::string s = std::to_string(num);
        if (s.size() <= static_cast<std::size_t>(digits)) {
            s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        }
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
        return s;
    }

    friend bool operator==(const Threshold& a, const Threshold& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    static long long parse_int(std::string_view s) {
        long long v = 0;
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
            throw InputError("malformed integer '" + std::string(s) + "' in threshold");
        }
        return v;
    }

    long long num_ = 0;
    long long den_ = 1;
    bool decimal_ = false;
};

}  // namespace fuzzyt
