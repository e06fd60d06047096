#pragma once

// Weighted conditional knowledge bases, element weights and the
// faithful / coherent / phi-coherent checks.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fuzzyt/activation.hpp"
#include "fuzzyt/interpretation.hpp"
#include "fuzzyt/syntax.hpp"

namespace fuzzyt {

/// Weight of a non-member: below every real, equal to itself.
inline constexpr double kNotMember = -std::numeric_limits<double>::infinity();

class WeightedKb {
public:
    WeightedKb() = default;

    explicit WeightedKb(KbDocument doc) : doc_(std::move(doc)) {
        for (const auto& b : doc_.blocks) {
            if (b.inclusions.empty()) throw InputError("weighted block '" + b.concept_name + "' is empty");
            for (const auto& wi : b.inclusions) {
                if (!std::isfinite(wi.weight)) {
                    throw InputError("non-finite weight in block '" + b.concept_name + "'");
                }
                if (wi.rhs.contains_typicality()) {
                    throw InputError("typicality on the right of a weighted inclusion for '" + b.concept_name + "'");
                }
            }
            distinguished_.push_back(b.concept_name);
        }
    }

    const KbDocument& document() const noexcept { return doc_; }
    /// Distinguished concepts in block order.
    const std::vector<std::string>& distinguished() const noexcept { return distinguished_; }

    const WeightedBlock& block(const std::string& concept_name) const {
        if (const auto* b = doc_.find_block(concept_name)) return *b;
        throw InputError("'" + concept_name + "' is not a distinguished concept");
    }

private:
    KbDocument doc_;
    std::vector<std::string> distinguished_;
};

/// Sum of w_h * D_h(x) for every element, in inclusion order, with no membership test.
template <class Algebra>
std::vector<double> weighted_sums(const WeightedKb& K, const BasicInterpretation<Algebra>& I,
                                  const std::string& concept_name) {
    const auto& blk = K.block(concept_name);
    std::vector<double> sums(I.size(), 0.0);
    for (const auto& wi : blk.inclusions) {
        const auto d = evaluate(I, wi.rhs);
        for (std::size_t x = 0; x < I.size(); ++x) sums[x] += wi.weight * I.algebra().to_double(d[x]);
    }
    return sums;
}

/// W_i for every element: the weighted sum for members, kNotMember otherwise.
template <class Algebra>
std::vector<double> element_weights(const WeightedKb& K, const BasicInterpretation<Algebra>& I,
                                    const std::string& concept_name) {
    auto w = weighted_sums(K, I, concept_name);
    const auto& c = I.concept_values(concept_name);
    for (std::size_t x = 0; x < I.size(); ++x) {
        if (!Algebra::positive(c[x])) w[x] = kNotMember;
    }
    return w;
}

template <class Algebra>
double element_weight(const WeightedKb& K, const BasicInterpretation<Algebra>& I, const std::string& concept_name,
                      std::size_t x) {
    return element_weights(K, I, concept_name).at(x);
}

struct PairViolation {
    std::string concept_name;
    /// x is strictly preferred to y for the concept, or has strictly larger weight.
    std::size_t x = 0;
    std::size_t y = 0;
    double weight_x = 0.0;
    double weight_y = 0.0;
    double degree_x = 0.0;
    double degree_y = 0.0;
};

struct AxiomFailure {
    std::string axiom;
    double value = 0.0;
};

struct PreferenceReport {
    bool holds = true;
    std::vector<AxiomFailure> axiom_failures;
    /// Total number of violating pairs; `violations` keeps the first `max_violations`.
    std::size_t violation_count = 0;
    std::vector<PairViolation> violations;
};

struct PreferenceOptions {
    /// Weights closer than this are treated as equal when testing "W(x) > W(y) implies x <_C y".
    /// Negative means: the interpretation's own epsilon (0 in graded mode).
    double weight_tolerance = -1.0;
    std::size_t max_violations = 1000;
};

namespace detail {

template <class Algebra>
void check_kb_axioms(const WeightedKb& K, const BasicInterpretation<Algebra>& I, PreferenceReport& report) {
    auto run = [&](const std::vector<Axiom>& axioms) {
        for (const auto& ax : axioms) {
            const auto r = check_axiom(I, ax);
            if (!r.holds) {
                report.holds = false;
                report.axiom_failures.push_back({to_string(ax), I.algebra().to_double(r.value)});
            }
        }
    };
    run(K.document().strict_axioms);
    run(K.document().assertions);
}

template <class Algebra>
PreferenceReport check_preferences(const WeightedKb& K, const BasicInterpretation<Algebra>& I, bool biconditional,
                                   const PreferenceOptions& opts) {
    PreferenceReport report;
    check_kb_axioms(K, I, report);
    double tol = opts.weight_tolerance;
    if (tol < 0) {
        if constexpr (Algebra::is_graded()) {
            tol = 0.0;
        } else {
            tol = I.algebra().epsilon();
        }
    }
    const std::size_t n = I.size();
    for (const auto& name : K.distinguished()) {
        const auto& c = I.concept_values(name);
        const auto w = element_weights(K, I, name);
        std::vector<std::vector<PairViolation>> per_x(n);
        parallel_for(n, [&](std::size_t x) {
            for (std::size_t y = 0; y < n; ++y) {
                const bool pref = I.algebra().compare(c[x], c[y]) > 0;
                bool bad = pref && !(w[x] > w[y]);
                if (biconditional && !pref) {
                    const bool heavier = w[y] == kNotMember ? w[x] != kNotMember : w[x] > w[y] + tol;
                    bad = heavier;
                }
                if (bad) {
                    per_x[x].push_back({name, x, y, w[x], w[y], I.algebra().to_double(c[x]),
                                        I.algebra().to_double(c[y])});
                }
            }
        }, default_jobs(), 16);
        for (auto& v : per_x) {
            report.violation_count += v.size();
            for (auto& pv : v) {
                if (report.violations.size() < opts.max_violations) report.violations.push_back(std::move(pv));
            }
        }
    }
    if (report.violation_count > 0) report.holds = false;
    return report;
}

}  // namespace detail

/// Strict axioms and assertions hold, and x <_C y implies W(x) > W(y) for every distinguished C.
template <class Algebra>
PreferenceReport check_faithful(const WeightedKb& K, const BasicInterpretation<Algebra>& I,
                                const PreferenceOptions& opts = {}) {
    return detail::check_preferences(K, I, false, opts);
}

/// As check_faithful, with the converse W(x) > W(y) implies x <_C y as well.
template <class Algebra>
PreferenceReport check_coherent(const WeightedKb& K, const BasicInterpretation<Algebra>& I,
                                const PreferenceOptions& opts = {}) {
    return detail::check_preferences(K, I, true, opts);
}

struct Residual {
    std::string concept_name;
    std::size_t element = 0;
    double degree = 0.0;
    double expected = 0.0;
    double residual = 0.0;
};

struct PhiReport {
    bool holds = true;
    double max_residual = 0.0;
    std::vector<Residual> residuals;
};

namespace detail {

inline const ActivationSpec& activation_for(const ActivationMap& phis, const std::string& name) {
    auto it = phis.find(name);
    if (it == phis.end()) throw InputError("no activation function for distinguished concept '" + name + "'");
    return it->second;
}

}  // namespace detail

/// C(x) = phi(sum_h w_h D_h(x)) for every distinguished C and every element,
/// members or not. In graded mode phi is composed with quantization and the
/// comparison is exact; `tol` applies in fuzzy mode.
template <class Algebra>
PhiReport check_phi_coherent(const WeightedKb& K, const BasicInterpretation<Algebra>& I, const ActivationMap& phis,
                             double tol = kDefaultEpsilon) {
    PhiReport report;
    for (const auto& name : K.distinguished()) {
        const auto& phi = detail::activation_for(phis, name);
        const auto sums = weighted_sums(K, I, name);
        const auto& c = I.concept_values(name);
        for (std::size_t x = 0; x < I.size(); ++x) {
            Residual r{name, x, I.algebra().to_double(c[x]), 0.0, 0.0};
            bool ok = true;
            if constexpr (Algebra::is_graded()) {
                const int expected = phi.quantized_index(sums[x], I.algebra().scale());
                r.expected = I.algebra().to_double(expected);
                ok = expected == c[x];
            } else {
                r.expected = phi(sums[x]);
            }
            r.residual = std::abs(r.degree - r.expected);
            if constexpr (!Algebra::is_graded()) ok = r.residual <= tol;
            report.holds = report.holds && ok;
            report.max_residual = std::max(report.max_residual, r.residual);
            report.residuals.push_back(r);
        }
    }
    return report;
}

struct ResidualProfileRow {
    int n = 0;
    double max_residual = 0.0;
};

/// For each n: quantize I onto C_n and report max |C^n(x) - phi_n(sum over the quantized degrees)|.
inline std::vector<ResidualProfileRow> coherence_residual_profile(const WeightedKb& K, const Interpretation& I,
                                                                  const ActivationMap& phis,
                                                                  const std::vector<int>& scales) {
    std::vector<ResidualProfileRow> rows;
    for (int n : scales) {
        const auto In = quantize_model(I, GradedScale(n));
        rows.push_back({n, check_phi_coherent(K, In, phis).max_residual});
    }
    return rows;
}

}  // namespace fuzzyt
