#pragma once

// Finite many-valued interpretations and the model checker.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fuzzyt/algebra.hpp"
#include "fuzzyt/concept.hpp"
#include "fuzzyt/error.hpp"
#include "fuzzyt/parallel.hpp"

namespace fuzzyt {

/// Interpretation over a finite domain with values in `Algebra::value_type`.
/// Roles are stored row-major: role(r)[x * size() + y] = r(x, y).
template <class Algebra>
class BasicInterpretation {
public:
    using algebra_type = Algebra;
    using value_type = typename Algebra::value_type;

    BasicInterpretation(Algebra algebra, std::vector<std::string> domain)
        : algebra_(std::move(algebra)), domain_(std::move(domain)) {
        if (domain_.empty()) throw InputError("interpretation domain is empty");
        for (std::size_t i = 0; i < domain_.size(); ++i) {
            if (!index_.emplace(domain_[i], i).second) {
                throw InputError("duplicate domain element '" + domain_[i] + "'");
            }
        }
    }

    /// Domain elements named "0", "1", ... or with the given prefix.
    static BasicInterpretation anonymous(Algebra algebra, std::size_t size, const std::string& prefix = "") {
        std::vector<std::string> ids;
        ids.reserve(size);
        for (std::size_t i = 0; i < size; ++i) ids.push_back(prefix + std::to_string(i));
        return BasicInterpretation(std::move(algebra), std::move(ids));
    }

    const Algebra& algebra() const noexcept { return algebra_; }
    std::size_t size() const noexcept { return domain_.size(); }
    const std::vector<std::string>& domain() const noexcept { return domain_; }
    const std::string& element_id(std::size_t x) const { return domain_.at(x); }

    std::size_t element_index(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw UnknownNameError("unknown domain element '" + id + "'");
        return it->second;
    }

    void set_concept(const std::string& name, std::vector<value_type> values) {
        if (values.size() != size()) {
            throw InputError("concept '" + name + "' has " + std::to_string(values.size()) +
                             " values for a domain of " + std::to_string(size()));
        }
        for (auto v : values) check_value(v, name);
        concepts_[name] = std::move(values);
    }

    /// Parses doubles through the algebra (graded mode requires grid values).
    void set_concept_degrees(const std::string& name, const std::vector<double>& degrees) {
        std::vector<value_type> values;
        values.reserve(degrees.size());
        for (double d : degrees) values.push_back(algebra_.from_double(d));
        set_concept(name, std::move(values));
    }

    void set_role(const std::string& name, std::vector<value_type> matrix) {
        if (matrix.size() != size() * size()) {
            throw InputError("role '" + name + "' is not a " + std::to_string(size()) + "x" +
                             std::to_string(size()) + " matrix");
        }
        for (auto v : matrix) check_value(v, name);
        roles_[name] = std::move(matrix);
    }

    void set_role_degree(const std::string& name, std::size_t x, std::size_t y, value_type v) {
        check_value(v, name);
        auto& m = roles_[name];
        if (m.empty()) m.assign(size() * size(), Algebra::bottom());
        m.at(x * size() + y) = v;
    }

    void set_individual(const std::string& name, std::size_t element) {
        if (element >= size()) throw InputError("individual '" + name + "' maps outside the domain");
        individuals_[name] = element;
    }

    bool has_concept(const std::string& name) const { return concepts_.count(name) != 0; }
    bool has_role(const std::string& name) const { return roles_.count(name) != 0; }

    const std::vector<value_type>& concept_values(const std::string& name) const {
        auto it = concepts_.find(name);
        if (it == concepts_.end()) throw UnknownNameError("unknown concept name '" + name + "'");
        return it->second;
    }
    const std::vector<value_type>& role_values(const std::string& name) const {
        auto it = roles_.find(name);
        if (it == roles_.end()) throw UnknownNameError("unknown role name '" + name + "'");
        return it->second;
    }
    std::size_t individual(const std::string& name) const {
        auto it = individuals_.find(name);
        if (it == individuals_.end()) throw UnknownNameError("unknown individual '" + name + "'");
        return it->second;
    }

    const std::map<std::string, std::vector<value_type>>& concepts() const noexcept { return concepts_; }
    const std::map<std::string, std::vector<value_type>>& roles() const noexcept { return roles_; }
    const std::map<std::string, std::size_t>& individuals() const noexcept { return individuals_; }

    double degree(const std::string& concept_name, std::size_t x) const {
        return algebra_.to_double(concept_values(concept_name).at(x));
    }

private:
    void check_value(value_type v, const std::string& name) const {
        const double d = algebra_.to_double(v);
        if (!(d >= 0.0 && d <= 1.0)) {
            throw InputError("value of '" + name + "' outside [0,1]");
        }
    }

    Algebra algebra_;
    std::vector<std::string> domain_;
    std::unordered_map<std::string, std::size_t> index_;
    std::map<std::string, std::vector<value_type>> concepts_;
    std::map<std::string, std::vector<value_type>> roles_;
    std::map<std::string, std::size_t> individuals_;
};

using Interpretation = BasicInterpretation<FuzzyAlgebra>;
using GradedInterpretation = BasicInterpretation<GradedAlgebra>;

namespace detail {

/// Typicality over a membership vector: keep the maximal positive values.
template <class Algebra, class V>
void apply_typicality(const Algebra& alg, std::vector<V>& values) {
    std::optional<V> best;
    for (V v : values) {
        if (Algebra::positive(v) && (!best || v > *best)) best = v;
    }
    for (V& v : values) {
        if (!best || !Algebra::positive(v) || alg.compare(v, *best) < 0) v = Algebra::bottom();
    }
}

}  // namespace detail

/// Membership vector of `c` over the whole domain.
template <class Algebra>
std::vector<typename Algebra::value_type> evaluate(const BasicInterpretation<Algebra>& I,
                                                   const ConceptExpr& c) {
    using V = typename Algebra::value_type;
    const Algebra& alg = I.algebra();
    const std::size_t n = I.size();
    switch (c.kind()) {
        case ConceptKind::Top: return std::vector<V>(n, alg.top());
        case ConceptKind::Bot: return std::vector<V>(n, Algebra::bottom());
        case ConceptKind::Name: return I.concept_values(c.symbol());
        case ConceptKind::Not: {
            auto v = evaluate(I, c.child());
            for (auto& a : v) a = alg.negate(a);
            return v;
        }
        case ConceptKind::And:
        case ConceptKind::Or: {
            auto a = evaluate(I, c.child(0));
            const auto b = evaluate(I, c.child(1));
            const bool conj = c.kind() == ConceptKind::And;
            for (std::size_t x = 0; x < n; ++x) a[x] = conj ? alg.tnorm(a[x], b[x]) : alg.snorm(a[x], b[x]);
            return a;
        }
        case ConceptKind::Exists:
        case ConceptKind::Forall: {
            const auto& r = I.role_values(c.symbol());
            const auto body = evaluate(I, c.child());
            const bool ex = c.kind() == ConceptKind::Exists;
            std::vector<V> out(n);
            parallel_for(n, [&](std::size_t x) {
                V acc = ex ? Algebra::bottom() : alg.top();
                for (std::size_t y = 0; y < n; ++y) {
                    const V rxy = r[x * n + y];
                    acc = ex ? std::max(acc, alg.tnorm(rxy, body[y])) : std::min(acc, alg.implies(rxy, body[y]));
                }
                out[x] = acc;
            }, default_jobs(), 64);
            return out;
        }
        case ConceptKind::Typ: {
            auto v = evaluate(I, c.child());
            detail::apply_typicality(alg, v);
            return v;
        }
    }
    throw InputError("unhandled concept kind");
}

template <class Algebra>
typename Algebra::value_type eval_concept(const BasicInterpretation<Algebra>& I, const ConceptExpr& c,
                                          std::size_t x) {
    if (x >= I.size()) throw InputError("element index outside the domain");
    return evaluate(I, c)[x];
}

/// Elements x with C(x) > 0 and C(x) maximal (up to the algebra's tolerance).
template <class Algebra>
std::vector<std::size_t> typical_set(const BasicInterpretation<Algebra>& I, const ConceptExpr& c) {
    auto v = evaluate(I, c);
    detail::apply_typicality(I.algebra(), v);
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < v.size(); ++x) {
        if (Algebra::positive(v[x])) out.push_back(x);
    }
    return out;
}

/// Less: x is preferred to y (x <_C y). Greater: y <_C x.
enum class Preference { Less, Greater, Equal };

template <class Algebra>
Preference preference(const BasicInterpretation<Algebra>& I, const ConceptExpr& c, std::size_t x,
                      std::size_t y) {
    const auto v = evaluate(I, c);
    const auto ord = I.algebra().compare(v.at(x), v.at(y));
    if (ord > 0) return Preference::Less;
    if (ord < 0) return Preference::Greater;
    return Preference::Equal;
}

/// Quantizes every stored degree onto C_n; individuals are kept.
inline GradedInterpretation quantize_model(const Interpretation& I, GradedScale scale) {
    GradedInterpretation out(GradedAlgebra(I.algebra().family(), scale), I.domain());
    auto q = [&](const std::vector<double>& vals) {
        std::vector<int> g;
        g.reserve(vals.size());
        for (double v : vals) g.push_back(quantize_index(v, scale));
        return g;
    };
    for (const auto& [name, vals] : I.concepts()) out.set_concept(name, q(vals));
    for (const auto& [name, vals] : I.roles()) out.set_role(name, q(vals));
    for (const auto& [name, idx] : I.individuals()) out.set_individual(name, idx);
    return out;
}

/// Re-grades a graded interpretation (identity when the scale is unchanged).
inline GradedInterpretation quantize_model(const GradedInterpretation& I, GradedScale scale) {
    GradedInterpretation out(GradedAlgebra(I.algebra().family(), scale), I.domain());
    auto q = [&](const std::vector<int>& vals) {
        std::vector<int> g;
        g.reserve(vals.size());
        for (int v : vals) g.push_back(v * scale.n() % I.algebra().n() == 0 ? v * scale.n() / I.algebra().n()
                                                                             : quantize_index(I.algebra().to_double(v), scale));
        return g;
    };
    for (const auto& [name, vals] : I.concepts()) out.set_concept(name, q(vals));
    for (const auto& [name, vals] : I.roles()) out.set_role(name, q(vals));
    for (const auto& [name, idx] : I.individuals()) out.set_individual(name, idx);
    return out;
}

template <class V>
struct Counterexample {
    std::size_t element = 0;
    V lhs{};
    V rhs{};
    /// lhs > rhs for inclusions, the asserted degree for assertions.
    V value{};
};

template <class V>
struct AxiomCheck {
    bool holds = false;
    /// Inclusion: min over the domain of lhs > rhs. Assertion: the asserted degree.
    V value{};
    /// Elements violating a >= or > bound, most severe first, ties by element index.
    std::vector<Counterexample<V>> counterexamples;
    /// For <= and < bounds: the element attaining the minimum.
    std::optional<Counterexample<V>> witness;
};

template <class Algebra>
AxiomCheck<typename Algebra::value_type> check_axiom(const BasicInterpretation<Algebra>& I, const Axiom& ax) {
    using V = typename Algebra::value_type;
    const Algebra& alg = I.algebra();
    AxiomCheck<V> out;
    const bool lower_bound = ax.comparator == Comparator::Geq || ax.comparator == Comparator::Gt;

    if (const auto* inc = std::get_if<Inclusion>(&ax.body)) {
        const auto lhs = evaluate(I, inc->lhs);
        const auto rhs = evaluate(I, inc->rhs);
        const std::size_t n = I.size();
        std::vector<V> point(n);
        parallel_for(n, [&](std::size_t x) { point[x] = alg.implies(lhs[x], rhs[x]); });
        std::size_t argmin = 0;
        for (std::size_t x = 1; x < n; ++x) {
            if (point[x] < point[argmin]) argmin = x;
        }
        out.value = point[argmin];
        out.holds = alg.satisfies(out.value, ax.comparator, ax.threshold);
        if (lower_bound) {
            for (std::size_t x = 0; x < n; ++x) {
                if (!alg.satisfies(point[x], ax.comparator, ax.threshold)) {
                    out.counterexamples.push_back({x, lhs[x], rhs[x], point[x]});
                }
            }
            std::stable_sort(out.counterexamples.begin(), out.counterexamples.end(),
                             [](const auto& a, const auto& b) { return a.value < b.value; });
        } else {
            out.witness = Counterexample<V>{argmin, lhs[argmin], rhs[argmin], point[argmin]};
        }
        return out;
    }

    std::size_t element = 0;
    if (const auto* ca = std::get_if<ConceptAssertion>(&ax.body)) {
        element = I.individual(ca->individual);
        out.value = evaluate(I, ca->expr)[element];
    } else {
        const auto& ra = std::get<RoleAssertion>(ax.body);
        element = I.individual(ra.subject);
        out.value = I.role_values(ra.role)[element * I.size() + I.individual(ra.object)];
    }
    out.holds = alg.satisfies(out.value, ax.comparator, ax.threshold);
    Counterexample<V> ce{element, out.value, out.value, out.value};
    if (!lower_bound) {
        out.witness = ce;
    } else if (!out.holds) {
        out.counterexamples.push_back(ce);
    }
    return out;
}

}  // namespace fuzzyt
