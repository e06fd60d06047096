#pragma once

// Brute-force reference implementations shared by the unit and acceptance tests.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fuzzyt/fuzzyt.hpp"

namespace fuzzyt::testing {

/// Value of `c` under a single valuation of concept names (numerators on C_n).
/// `typ_max` gives the maximum of each typicality target over the model.
inline int valuation_value(const GradedAlgebra& alg, const ConceptExpr& c, const std::map<std::string, int>& v,
                           const std::map<std::string, int>& typ_max = {}) {
    switch (c.kind()) {
        case ConceptKind::Top: return alg.top();
        case ConceptKind::Bot: return 0;
        case ConceptKind::Name: return v.at(c.symbol());
        case ConceptKind::Not: return alg.negate(valuation_value(alg, c.child(), v, typ_max));
        case ConceptKind::And:
            return alg.tnorm(valuation_value(alg, c.child(0), v, typ_max), valuation_value(alg, c.child(1), v, typ_max));
        case ConceptKind::Or:
            return alg.snorm(valuation_value(alg, c.child(0), v, typ_max), valuation_value(alg, c.child(1), v, typ_max));
        case ConceptKind::Typ: {
            const int x = valuation_value(alg, c.child(), v, typ_max);
            return x > 0 && x == typ_max.at(to_string(c.child())) ? x : 0;
        }
        default: throw InputError("role restrictions are not valuation concepts");
    }
}

struct NaiveEntailment {
    std::vector<std::string> names;
    std::vector<std::vector<int>> coherent;
    bool entailed = true;
    bool vacuous = false;
    int value = 0;
    std::optional<int> max_value;
    std::vector<std::vector<int>> counterexamples;  // sorted
};

/// Enumerates all of C_n^names, keeps the valuations meeting every neuron
/// equation and strict axiom, then evaluates the query over that set.
inline NaiveEntailment naive_entails(const WeightedKb& K, const ActivationMap& phis, const Axiom& query,
                                     GradedScale scale, const CombinationFamily& family,
                                     const std::vector<std::string>& extra_names = {}) {
    const GradedAlgebra alg(family, scale);
    const int n = scale.n();
    std::set<std::string> name_set(extra_names.begin(), extra_names.end());
    for (const auto& b : K.document().blocks) {
        name_set.insert(b.concept_name);
        for (const auto& wi : b.inclusions) {
            const auto s = wi.rhs.concept_names();
            name_set.insert(s.begin(), s.end());
        }
    }
    for (const auto& ax : K.document().strict_axioms) {
        const auto s = ax.concept_names();
        name_set.insert(s.begin(), s.end());
    }
    const auto qs = query.concept_names();
    name_set.insert(qs.begin(), qs.end());

    NaiveEntailment out;
    out.names.assign(name_set.begin(), name_set.end());
    const std::size_t m = out.names.size();
    std::vector<int> val(m, 0);
    std::map<std::string, int> v;
    for (;;) {
        for (std::size_t i = 0; i < m; ++i) v[out.names[i]] = val[i];
        bool ok = true;
        for (const auto& b : K.document().blocks) {
            double u = 0.0;
            for (const auto& wi : b.inclusions) u += wi.weight * scale.value(valuation_value(alg, wi.rhs, v));
            if (phis.at(b.concept_name).quantized_index(u, scale) != v.at(b.concept_name)) {
                ok = false;
                break;
            }
        }
        for (const auto& ax : K.document().strict_axioms) {
            if (!ok) break;
            const auto& inc = ax.as_inclusion();
            const int p = alg.implies(valuation_value(alg, inc.lhs, v), valuation_value(alg, inc.rhs, v));
            ok = alg.satisfies(p, ax.comparator, ax.threshold);
        }
        if (ok) out.coherent.push_back(val);
        std::size_t i = m;
        while (i > 0 && val[i - 1] == n) val[--i] = 0;
        if (i == 0) break;
        ++val[i - 1];
    }

    const auto& inc = query.as_inclusion();
    std::map<std::string, int> typ_max;
    if (inc.lhs.kind() == ConceptKind::Typ) {
        int best = 0;
        for (const auto& row : out.coherent) {
            for (std::size_t i = 0; i < m; ++i) v[out.names[i]] = row[i];
            best = std::max(best, valuation_value(alg, inc.lhs.child(), v));
        }
        typ_max[to_string(inc.lhs.child())] = best;
        out.vacuous = best == 0;
        if (best > 0) out.max_value = best;
    }
    out.value = alg.top();
    for (const auto& row : out.coherent) {
        for (std::size_t i = 0; i < m; ++i) v[out.names[i]] = row[i];
        const int p = alg.implies(valuation_value(alg, inc.lhs, v, typ_max), valuation_value(alg, inc.rhs, v, typ_max));
        out.value = std::min(out.value, p);
        if (!alg.satisfies(p, query.comparator, query.threshold)) out.counterexamples.push_back(row);
    }
    out.entailed = out.counterexamples.empty();
    return out;
}

/// Number of valuations the naive oracle would enumerate.
inline double naive_space(std::size_t names, GradedScale scale) {
    double s = 1.0;
    for (std::size_t i = 0; i < names; ++i) s *= scale.n() + 1;
    return s;
}

/// Random query T(C) <: D >= k/n over a network's concept names.
inline Axiom random_query(Rng& rng, const Network& net, int k, int n) {
    std::vector<std::string> outputs, all;
    for (std::size_t i = 0; i < net.size(); ++i) {
        all.push_back(net.concept_name(i));
        if (!net.incoming(i).empty()) outputs.push_back(net.concept_name(i));
    }
    const std::string target = outputs[std::uniform_int_distribution<std::size_t>(0, outputs.size() - 1)(rng)];
    const ConceptExpr rhs = random_concept(rng, all, 2);
    return Axiom::inclusion(typ(atom(target)), rhs, Comparator::Geq, Threshold::fraction(k, n));
}

}  // namespace fuzzyt::testing
