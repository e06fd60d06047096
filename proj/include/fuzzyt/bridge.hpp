#pragma once

// Translations between networks and the logic: the interpretation a network
// induces on a set of stimuli, and the weighted knowledge base it encodes.

#include <set>
#include <string>
#include <vector>

#include "fuzzyt/interpretation.hpp"
#include "fuzzyt/network.hpp"
#include "fuzzyt/weighted_kb.hpp"

namespace fuzzyt {

struct ModelOptions {
    /// Store only these concepts (all units when empty).
    std::vector<std::string> concepts;
    CombinationFamily family = CombinationFamily::make(FamilyName::GoedelInvolutive);
    double epsilon = kDefaultEpsilon;
};

namespace detail {

inline std::vector<std::size_t> selected_units(const Network& net, const std::vector<std::string>& filter) {
    std::vector<std::size_t> out;
    if (filter.empty()) {
        for (std::size_t i = 0; i < net.size(); ++i) out.push_back(i);
        return out;
    }
    std::map<std::string, std::size_t> by_name;
    for (std::size_t i = 0; i < net.size(); ++i) by_name[net.concept_name(i)] = i;
    for (const auto& c : filter) {
        auto it = by_name.find(c);
        if (it == by_name.end()) {
            std::string avail;
            for (std::size_t i = 0; i < net.size(); ++i) avail += (avail.empty() ? "" : ", ") + net.concept_name(i);
            throw UnknownNameError("unknown concept '" + c + "'; available: " + avail);
        }
        out.push_back(it->second);
    }
    return out;
}

}  // namespace detail

/// One domain element per stimulus; C_k(x) is the activation of unit k on x.
inline Interpretation build_model(const Network& net, const Stimuli& delta, const ModelOptions& opts = {}) {
    if (delta.size() == 0) throw InputError("no stimuli");
    const auto units = detail::selected_units(net, opts.concepts);
    std::vector<std::vector<double>> acts(delta.size());
    parallel_for(delta.size(), [&](std::size_t s) { acts[s] = net.forward(delta.rows[s]); }, default_jobs(), 256);
    Interpretation I(FuzzyAlgebra(opts.family, opts.epsilon), delta.ids);
    for (auto u : units) {
        std::vector<double> col(delta.size());
        for (std::size_t s = 0; s < delta.size(); ++s) col[s] = acts[s][u];
        I.set_concept(net.concept_name(u), std::move(col));
    }
    return I;
}

/// As build_model with quantized activations; stimuli must lie on C_n.
inline GradedInterpretation build_graded_model(const Network& net, const Stimuli& delta, GradedScale scale,
                                               const ModelOptions& opts = {}) {
    if (delta.size() == 0) throw InputError("no stimuli");
    const auto units = detail::selected_units(net, opts.concepts);
    std::vector<std::vector<int>> acts(delta.size());
    parallel_for(delta.size(), [&](std::size_t s) { acts[s] = net.forward_quantized(delta.rows[s], scale); },
                 default_jobs(), 256);
    GradedInterpretation I(GradedAlgebra(opts.family, scale), delta.ids);
    for (auto u : units) {
        std::vector<int> col(delta.size());
        for (std::size_t s = 0; s < delta.size(); ++s) col[s] = acts[s][u];
        I.set_concept(net.concept_name(u), std::move(col));
    }
    return I;
}

struct ExtractedKb {
    WeightedKb kb;
    ActivationMap activations;
    std::vector<std::string> warnings;
};

/// One block per non-input unit k: T(C_k) <: C_j @ w for each incoming edge in
/// edge order, then T(C_k) <: top @ bias. No strict axioms or assertions.
inline ExtractedKb extract_kb(const Network& net) {
    KbDocument doc;
    ActivationMap phis;
    for (std::size_t i : net.topological()) {
        if (net.incoming(i).empty()) continue;
        WeightedBlock blk{net.concept_name(i), {}};
        for (const auto& e : net.incoming(i)) {
            blk.inclusions.push_back({ConceptExpr::name(net.concept_name(e.from)), e.weight});
        }
        blk.inclusions.push_back({ConceptExpr::top(), net.unit(i).bias});
        phis[blk.concept_name] = *net.unit(i).activation;
        doc.blocks.push_back(std::move(blk));
    }
    ExtractedKb out{WeightedKb(std::move(doc)), std::move(phis), {}};
    if (out.kb.distinguished().empty()) out.warnings.push_back("network has no units with incoming edges; the knowledge base is empty");
    return out;
}

}  // namespace fuzzyt
