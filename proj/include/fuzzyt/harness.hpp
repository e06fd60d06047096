#pragma once

// Seeded property suites: KLM-style postulates for typicality inclusions, the
// typicality properties fT-1..fT-5, the rational monotonicity counterexample
// and the coherence hierarchy on random networks.

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <string>
#include <vector>

#include "fuzzyt/bridge.hpp"
#include "fuzzyt/interpretation_io.hpp"
#include "fuzzyt/syntax.hpp"

namespace fuzzyt {

using Rng = std::mt19937_64;

/// Independent generator for one trial of a seeded suite.
inline Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    return Rng(seq);
}

/// FNV-1a, 64 bit.
inline std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 0xF];
    return s;
}

struct GeneratorConfig {
    std::uint64_t seed = 1;
    std::size_t iterations = 10000;
    std::size_t min_domain = 1;
    std::size_t max_domain = 8;
    /// Number of concept names (A, B, C, ...), at most 26.
    std::size_t names = 4;
    /// Grade count n of C_n; 0 draws uniform doubles.
    int grades = 10;
    CombinationFamily family = CombinationFamily::make(FamilyName::Goedel);
    int max_depth = 3;
    /// Include role restrictions over roles r and s.
    bool roles = false;
    /// Threshold of the k-entailment variant.
    Threshold threshold = Threshold::fraction(1, 1);
    unsigned jobs = 1;
};

inline std::vector<std::string> generator_names(std::size_t count) {
    if (count == 0 || count > 26) throw InputError("name count must be in 1..26");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(std::string(1, static_cast<char>('A' + i)));
    return out;
}

/// Random typicality-free concept; roles r and s appear when `roles` is set.
inline ConceptExpr random_concept(Rng& rng, const std::vector<std::string>& names, int depth, bool roles = false) {
    std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
    std::uniform_int_distribution<int> kind(0, roles ? 6 : 4);
    if (depth <= 0) return ConceptExpr::name(names[pick(rng)]);
    switch (kind(rng)) {
        case 0:
        case 1: return ConceptExpr::name(names[pick(rng)]);
        case 2: return ConceptExpr::negation(random_concept(rng, names, depth - 1, roles));
        case 3: return ConceptExpr::conjunction(random_concept(rng, names, depth - 1, roles),
                                                random_concept(rng, names, depth - 1, roles));
        case 4: return ConceptExpr::disjunction(random_concept(rng, names, depth - 1, roles),
                                                random_concept(rng, names, depth - 1, roles));
        case 5: return ConceptExpr::exists(rng() % 2 ? "r" : "s", random_concept(rng, names, depth - 1, roles));
        default: return ConceptExpr::forall(rng() % 2 ? "r" : "s", random_concept(rng, names, depth - 1, roles));
    }
}

namespace detail {

template <class Algebra>
typename Algebra::value_type random_value(Rng& rng, const Algebra& alg, int grades) {
    if constexpr (Algebra::is_graded()) {
        return static_cast<int>(std::uniform_int_distribution<int>(0, alg.n())(rng));
    } else {
        if (grades > 0) return static_cast<double>(std::uniform_int_distribution<int>(0, grades)(rng)) / grades;
        return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    }
}

}  // namespace detail

/// Random interpretation with names A.. (and roles r, s when requested).
/// A third of the values are zero so that empty and sparse extensions occur.
template <class Algebra>
BasicInterpretation<Algebra> random_interpretation(Rng& rng, const Algebra& alg, const GeneratorConfig& cfg) {
    const std::size_t size =
        std::uniform_int_distribution<std::size_t>(std::max<std::size_t>(1, cfg.min_domain), cfg.max_domain)(rng);
    auto I = BasicInterpretation<Algebra>::anonymous(alg, size, "x");
    auto draw = [&] {
        return std::uniform_int_distribution<int>(0, 2)(rng) == 0 ? Algebra::bottom()
                                                                  : detail::random_value(rng, alg, cfg.grades);
    };
    for (const auto& name : generator_names(cfg.names)) {
        std::vector<typename Algebra::value_type> v(size);
        for (auto& a : v) a = draw();
        I.set_concept(name, std::move(v));
    }
    if (cfg.roles) {
        for (const char* r : {"r", "s"}) {
            std::vector<typename Algebra::value_type> m(size * size);
            for (auto& a : m) a = draw();
            I.set_role(r, std::move(m));
        }
    }
    return I;
}

enum class TrialStatus { Vacuous, Pass, Fail };

inline std::string_view to_string(TrialStatus s) {
    switch (s) {
        case TrialStatus::Vacuous: return "vacuous";
        case TrialStatus::Pass: return "pass";
        case TrialStatus::Fail: return "fail";
    }
    return "?";
}

inline constexpr std::array<const char*, 6> kKlmPostulates = {"REFL'", "LLE'", "RW'", "AND'", "OR'", "CM'"};
inline constexpr std::array<const char*, 5> kTypicalityProperties = {"fT-1", "fT-2", "fT-3", "fT-4", "fT-5"};

/// Concepts instantiating the postulate variables. `same_as_a` has the same
/// extension as `a` by construction; `e` widens the consequent for RW'.
struct KlmTrial {
    ConceptExpr a, b, c, d, e;
    ConceptExpr same_as_a;
};

inline KlmTrial random_klm_trial(Rng& rng, const GeneratorConfig& cfg) {
    const auto names = generator_names(cfg.names);
    auto concept_of = [&] {
        const int depth = std::uniform_int_distribution<int>(0, cfg.max_depth)(rng);
        return random_concept(rng, names, depth, cfg.roles);
    };
    KlmTrial t{concept_of(), concept_of(), concept_of(), concept_of(), concept_of(), {}};
    // Bias consequents towards satisfying the premises so that implications are exercised.
    std::uniform_int_distribution<int> coin(0, 3);
    if (coin(rng) == 0) t.c = t.c | t.a;
    if (coin(rng) == 0) t.d = t.d | t.a;
    switch (coin(rng)) {
        case 0: t.same_as_a = t.a & t.a; break;
        case 1: t.same_as_a = t.a | t.a; break;
        case 2: t.same_as_a = t.a & ConceptExpr::top(); break;
        default: t.same_as_a = t.a | ConceptExpr::bot(); break;
    }
    return t;
}

namespace detail {

template <class Algebra>
bool holds(const BasicInterpretation<Algebra>& I, const ConceptExpr& lhs, const ConceptExpr& rhs, const Threshold& k) {
    return check_axiom(I, Axiom::inclusion(lhs, rhs, Comparator::Geq, k)).holds;
}

inline TrialStatus implication(bool premise, bool conclusion) {
    if (!premise) return TrialStatus::Vacuous;
    return conclusion ? TrialStatus::Pass : TrialStatus::Fail;
}

}  // namespace detail

/// Postulates REFL', LLE', RW', AND', OR', CM' on one interpretation with threshold k.
template <class Algebra>
std::array<TrialStatus, 6> check_klm(const BasicInterpretation<Algebra>& I, const KlmTrial& t,
                                     const Threshold& k = Threshold::fraction(1, 1)) {
    using detail::holds;
    using detail::implication;
    std::array<TrialStatus, 6> out{};
    out[0] = holds(I, typ(t.a), t.a, k) ? TrialStatus::Pass : TrialStatus::Fail;
    const bool same = evaluate(I, t.a) == evaluate(I, t.same_as_a);
    const bool a_c = holds(I, typ(t.a), t.c, k);
    out[1] = implication(same && a_c, holds(I, typ(t.same_as_a), t.c, k));
    out[2] = implication(a_c, holds(I, typ(t.a), t.c | t.e, k));
    const bool a_d = holds(I, typ(t.a), t.d, k);
    out[3] = implication(a_c && a_d, holds(I, typ(t.a), t.c & t.d, k));
    out[4] = implication(a_c && holds(I, typ(t.b), t.c, k), holds(I, typ(t.a | t.b), t.c, k));
    out[5] = implication(a_d && a_c, holds(I, typ(t.a & t.d), t.c, k));
    return out;
}

/// Properties fT-1..fT-5 on one interpretation (a, b, c and d of the trial).
template <class Algebra>
std::array<TrialStatus, 5> check_ft(const BasicInterpretation<Algebra>& I, const KlmTrial& t) {
    using detail::holds;
    using detail::implication;
    const Threshold one = Threshold::fraction(1, 1);
    std::array<TrialStatus, 5> out{};
    out[0] = holds(I, typ(t.c), t.c, one) ? TrialStatus::Pass : TrialStatus::Fail;
    const auto tc = evaluate(I, typ(t.c));
    const auto c = evaluate(I, t.c);
    auto all_zero = [](const auto& v) {
        return std::all_of(v.begin(), v.end(), [](auto x) { return x == decltype(x){}; });
    };
    out[1] = implication(all_zero(tc), all_zero(c));
    const bool premise3 = holds(I, typ(t.a), t.d, one);
    const bool equiv3 = holds(I, typ(t.a), typ(t.a & t.d), one) && holds(I, typ(t.a & t.d), typ(t.a), one);
    out[2] = implication(premise3, equiv3);
    out[3] = holds(I, typ(t.a | t.b), typ(t.a) | typ(t.b), one) ? TrialStatus::Pass : TrialStatus::Fail;
    out[4] = holds(I, typ(t.a) & typ(t.b), typ(t.a | t.b), one) ? TrialStatus::Pass : TrialStatus::Fail;
    return out;
}

struct PropertyTally {
    std::string name;
    std::size_t applicable = 0;
    std::size_t violations = 0;
    std::size_t vacuous = 0;
};

struct FailureRecord {
    std::size_t trial = 0;
    std::string property;
    nlohmann::json fixture;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::vector<PropertyTally> tallies;
    /// The first failing trials with replayable fixtures (at most 20).
    std::vector<FailureRecord> failures;
    std::string digest;

    std::size_t violations() const {
        std::size_t v = 0;
        for (const auto& t : tallies) v += t.violations;
        return v;
    }
    const PropertyTally& tally(std::string_view name) const {
        for (const auto& t : tallies) {
            if (t.name == name) return t;
        }
        throw InputError("no property '" + std::string(name) + "' in suite " + suite);
    }
};

inline nlohmann::json to_json(const SuiteReport& r) {
    nlohmann::json tallies = nlohmann::json::array();
    for (const auto& t : r.tallies) {
        tallies.push_back({{"property", t.name}, {"applicable", t.applicable}, {"violations", t.violations},
                           {"vacuous", t.vacuous}});
    }
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : r.failures) failures.push_back({{"trial", f.trial}, {"property", f.property}, {"fixture", f.fixture}});
    return {{"suite", r.suite},       {"seed", r.seed},        {"trials", r.trials},
            {"violations", r.violations()}, {"properties", tallies}, {"failures", failures},
            {"digest", r.digest}};
}

namespace detail {

template <class Algebra>
nlohmann::json trial_fixture(const std::string& suite, std::uint64_t seed, std::size_t trial,
                             const BasicInterpretation<Algebra>& I, const KlmTrial& t, const std::string& property,
                             const Threshold& k, const CombinationFamily& family) {
    return {{"suite", suite},
            {"seed", seed},
            {"trial", trial},
            {"property", property},
            {"family", std::string(to_string(family.name))},
            {"threshold", k.to_string()},
            {"concepts",
             {{"A", to_string(t.a)},
              {"B", to_string(t.b)},
              {"C", to_string(t.c)},
              {"D", to_string(t.d)},
              {"E", to_string(t.e)},
              {"A'", to_string(t.same_as_a)}}},
            {"interpretation", to_json(I)}};
}

template <std::size_t N, class Check>
SuiteReport run_property_suite(const std::string& suite, const GeneratorConfig& cfg,
                               const std::array<const char*, N>& names, Check&& check) {
    std::vector<std::array<TrialStatus, N>> results(cfg.iterations);
    std::vector<nlohmann::json> fixtures(cfg.iterations);
    const auto ranges = partition(cfg.iterations, std::max<std::size_t>(1, cfg.iterations / 64));
    for_each_block(ranges, cfg.jobs, [&](std::size_t, BlockRange r) {
        for (std::size_t i = r.begin; i < r.end; ++i) results[i] = check(i, fixtures[i]);
    });
    SuiteReport rep;
    rep.suite = suite;
    rep.seed = cfg.seed;
    rep.trials = cfg.iterations;
    for (const char* n : names) rep.tallies.push_back({n});
    std::uint64_t h = fnv1a(suite);
    for (std::size_t i = 0; i < cfg.iterations; ++i) {
        std::string bits;
        for (std::size_t p = 0; p < N; ++p) {
            auto& t = rep.tallies[p];
            switch (results[i][p]) {
                case TrialStatus::Vacuous: ++t.vacuous; bits += 'v'; break;
                case TrialStatus::Pass: ++t.applicable; bits += 'p'; break;
                case TrialStatus::Fail:
                    ++t.applicable;
                    ++t.violations;
                    bits += 'f';
                    if (rep.failures.size() < 20) {
                        nlohmann::json fx = fixtures[i];
                        fx["property"] = names[p];
                        rep.failures.push_back({i, names[p], std::move(fx)});
                    }
                    break;
            }
        }
        h = fnv1a(bits, h);
    }
    rep.digest = hex64(h);
    return rep;
}

template <class Algebra>
Algebra make_algebra(const GeneratorConfig& cfg) {
    if constexpr (Algebra::is_graded()) {
        return Algebra(cfg.family, GradedScale(cfg.grades));
    } else {
        return Algebra(cfg.family, 0.0);
    }
}

}  // namespace detail

/// KLM postulates over random interpretations. Graded values on C_n when
/// cfg.grades > 0 and the family is closed on C_n, exact doubles otherwise.
inline SuiteReport klm_suite(const GeneratorConfig& cfg) {
    auto run = [&](auto algebra_tag) {
        using Algebra = decltype(algebra_tag);
        const Algebra alg = detail::make_algebra<Algebra>(cfg);
        return detail::run_property_suite<6>("klm", cfg, kKlmPostulates, [&](std::size_t i, nlohmann::json& fx) {
            Rng rng = trial_rng(cfg.seed, i);
            const auto I = random_interpretation(rng, alg, cfg);
            const auto t = random_klm_trial(rng, cfg);
            auto r = check_klm(I, t, cfg.threshold);
            if (std::find(r.begin(), r.end(), TrialStatus::Fail) != r.end()) {
                fx = detail::trial_fixture("klm", cfg.seed, i, I, t, "", cfg.threshold, cfg.family);
            }
            return r;
        });
    };
    if (cfg.grades > 0 && cfg.family.name != FamilyName::Product) {
        return run(GradedAlgebra(cfg.family, GradedScale(cfg.grades)));
    }
    return run(FuzzyAlgebra(cfg.family, 0.0));
}

/// Properties fT-1..fT-5 over random interpretations.
inline SuiteReport ft_suite(const GeneratorConfig& cfg) {
    auto run = [&](auto algebra_tag) {
        using Algebra = decltype(algebra_tag);
        const Algebra alg = detail::make_algebra<Algebra>(cfg);
        return detail::run_property_suite<5>("ft", cfg, kTypicalityProperties, [&](std::size_t i, nlohmann::json& fx) {
            Rng rng = trial_rng(cfg.seed, i);
            const auto I = random_interpretation(rng, alg, cfg);
            const auto t = random_klm_trial(rng, cfg);
            auto r = check_ft(I, t);
            if (std::find(r.begin(), r.end(), TrialStatus::Fail) != r.end()) {
                fx = detail::trial_fixture("ft", cfg.seed, i, I, t, "", Threshold::fraction(1, 1), cfg.family);
            }
            return r;
        });
    };
    if (cfg.grades > 0 && cfg.family.name != FamilyName::Product) {
        return run(GradedAlgebra(cfg.family, GradedScale(cfg.grades)));
    }
    return run(FuzzyAlgebra(cfg.family, 0.0));
}

/// The two-element interpretation refuting rational monotonicity.
struct RmFixture {
    GradedInterpretation interpretation;
    bool premise_holds = false;          // T(A) <: C >= 1
    bool negated_premise_holds = false;  // T(A) <: not B >= 1 (must fail)
    bool conclusion_holds = false;       // T(A and B) <: C >= 1
    int conclusion_value = 0;            // numerator on C_10
    int not_b_at_x = 0;
    std::vector<std::size_t> typical_a_and_b;
};

inline RmFixture rm_fixture(NegationKind negation = NegationKind::Goedel) {
    const GradedScale scale(10);
    const FamilyName name = negation == NegationKind::Goedel ? FamilyName::Goedel : FamilyName::GoedelInvolutive;
    GradedInterpretation I(GradedAlgebra(CombinationFamily::make(name, negation), scale), {"x", "z"});
    I.set_concept("A", {8, 5});
    I.set_concept("B", {3, 6});
    I.set_concept("C", {9, 4});
    const auto a = atom("A"), b = atom("B"), c = atom("C");
    const Threshold one = Threshold::fraction(1, 1);
    RmFixture f{I, false, false, false, 0, 0, {}};
    f.premise_holds = check_axiom(I, Axiom::inclusion(typ(a), c, Comparator::Geq, one)).holds;
    f.negated_premise_holds = check_axiom(I, Axiom::inclusion(typ(a), ~b, Comparator::Geq, one)).holds;
    const auto concl = check_axiom(I, Axiom::inclusion(typ(a & b), c, Comparator::Geq, one));
    f.conclusion_holds = concl.holds;
    f.conclusion_value = concl.value;
    f.not_b_at_x = evaluate(I, ~b)[0];
    f.typical_a_and_b = typical_set(I, a & b);
    return f;
}

struct NetworkConfig {
    std::size_t min_inputs = 1;
    std::size_t max_inputs = 4;
    std::size_t max_layers = 3;
    std::size_t max_units = 6;
    double weight_range = 1.0;
    double bias_range = 1.0;
    ActivationSpec activation = ActivationSpec::logistic();
};

/// Random layered network; every unit of a layer feeds from every unit of the
/// previous one. Units are named I0.., H<layer>_<k>, and the last layer O0...
inline Network random_network(Rng& rng, const NetworkConfig& cfg) {
    std::uniform_real_distribution<double> w(-cfg.weight_range, cfg.weight_range);
    std::uniform_real_distribution<double> b(-cfg.bias_range, cfg.bias_range);
    const std::size_t inputs = std::uniform_int_distribution<std::size_t>(cfg.min_inputs, cfg.max_inputs)(rng);
    const std::size_t layers = std::uniform_int_distribution<std::size_t>(1, cfg.max_layers)(rng);
    std::vector<Unit> units;
    std::vector<Edge> edges;
    std::vector<std::string> prev, input_ids;
    for (std::size_t i = 0; i < inputs; ++i) {
        units.push_back({"I" + std::to_string(i), std::nullopt, 0.0, std::nullopt});
        prev.push_back(units.back().id);
        input_ids.push_back(units.back().id);
    }
    for (std::size_t l = 0; l < layers; ++l) {
        const std::size_t count = std::uniform_int_distribution<std::size_t>(1, cfg.max_units)(rng);
        std::vector<std::string> cur;
        for (std::size_t k = 0; k < count; ++k) {
            const std::string id = l + 1 == layers ? "O" + std::to_string(k) : "H" + std::to_string(l) + "_" + std::to_string(k);
            units.push_back({id, cfg.activation, b(rng), std::nullopt});
            for (const auto& p : prev) edges.push_back({p, id, w(rng)});
            cur.push_back(id);
        }
        prev = std::move(cur);
    }
    return Network(std::move(units), std::move(edges), std::move(input_ids));
}

/// `count` stimuli with values uniform in [0,1], or on C_n when grades > 0.
inline Stimuli random_stimuli(Rng& rng, const Network& net, std::size_t count, int grades = 0) {
    Stimuli s;
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<double> x(net.inputs().size());
        for (auto& v : x) {
            v = grades > 0 ? static_cast<double>(std::uniform_int_distribution<int>(0, grades)(rng)) / grades
                           : std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        }
        s.ids.push_back("s" + std::to_string(i));
        s.rows.push_back(std::move(x));
    }
    return s;
}

struct HierarchyTrial {
    bool phi_coherent = false;
    bool coherent = false;
    bool faithful = false;
    double max_residual = 0.0;
};

struct HierarchyReport {
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::size_t phi_coherent = 0;
    std::size_t coherent = 0;
    std::size_t faithful = 0;
    /// Trials breaking phi-coherent => coherent (increasing activations) or coherent => faithful.
    std::size_t implication_failures = 0;
    std::vector<HierarchyTrial> results;
    /// Replayable fixtures for trials where coherence failed.
    std::vector<nlohmann::json> coherence_gaps;
    std::string digest;
};

inline nlohmann::json to_json(const HierarchyReport& r) {
    return {{"suite", "hierarchy"},          {"seed", r.seed},         {"trials", r.trials},
            {"phi_coherent", r.phi_coherent}, {"coherent", r.coherent}, {"faithful", r.faithful},
            {"implication_failures", r.implication_failures}, {"coherence_gaps", r.coherence_gaps.size()},
            {"digest", r.digest}};
}

/// Builds model and knowledge base from random networks and runs the three checks.
inline HierarchyReport hierarchy_trials(const GeneratorConfig& cfg, const NetworkConfig& ncfg = {},
                                        std::size_t max_stimuli = 50) {
    HierarchyReport rep;
    rep.seed = cfg.seed;
    rep.trials = cfg.iterations;
    rep.results.resize(cfg.iterations);
    std::vector<nlohmann::json> gaps(cfg.iterations);
    const auto ranges = partition(cfg.iterations, std::max<std::size_t>(1, cfg.iterations / 16));
    for_each_block(ranges, cfg.jobs, [&](std::size_t, BlockRange r) {
        for (std::size_t i = r.begin; i < r.end; ++i) {
            Rng rng = trial_rng(cfg.seed, i);
            const Network net = random_network(rng, ncfg);
            const std::size_t m = std::uniform_int_distribution<std::size_t>(1, max_stimuli)(rng);
            const Stimuli delta = random_stimuli(rng, net, m, cfg.grades);
            ModelOptions mo;
            mo.family = cfg.family;
            const auto I = build_model(net, delta, mo);
            const auto ex = extract_kb(net);
            const auto phi = check_phi_coherent(ex.kb, I, ex.activations, kDefaultEpsilon);
            HierarchyTrial t{phi.holds, check_coherent(ex.kb, I).holds, check_faithful(ex.kb, I).holds, phi.max_residual};
            rep.results[i] = t;
            if (!t.coherent) {
                gaps[i] = {{"seed", cfg.seed},
                           {"trial", i},
                           {"network", to_json(net)},
                           {"kb", serialize(ex.kb.document())},
                           {"activations", to_json(ex.activations)},
                           {"interpretation", to_json(I)}};
            }
        }
    });
    std::uint64_t h = fnv1a("hierarchy");
    const bool increasing = ncfg.activation.monotonicity() == Monotonicity::Increasing;
    const bool nondecreasing = ncfg.activation.monotonicity() != Monotonicity::None;
    for (std::size_t i = 0; i < cfg.iterations; ++i) {
        const auto& t = rep.results[i];
        rep.phi_coherent += t.phi_coherent;
        rep.coherent += t.coherent;
        rep.faithful += t.faithful;
        if ((t.coherent && !t.faithful) || (increasing && t.phi_coherent && !t.coherent) ||
            (nondecreasing && t.phi_coherent && !t.faithful)) {
            ++rep.implication_failures;
        }
        if (!gaps[i].is_null()) rep.coherence_gaps.push_back(std::move(gaps[i]));
        h = fnv1a(std::string{t.phi_coherent ? 'p' : '-', t.coherent ? 'c' : '-', t.faithful ? 'f' : '-'}, h);
    }
    rep.digest = hex64(h);
    return rep;
}

/// Writes each failure fixture to `<dir>/<suite>-<seed>-<trial>.json`; returns the paths.
inline std::vector<std::string> write_fixtures(const SuiteReport& rep, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::string> paths;
    for (const auto& f : rep.failures) {
        const auto path = dir / (rep.suite + "-" + std::to_string(rep.seed) + "-" + std::to_string(f.trial) + "-" +
                                 f.property + ".json");
        std::ofstream out(path);
        out << f.fixture.dump(2) << '\n';
        paths.push_back(path.string());
    }
    return paths;
}

}  // namespace fuzzyt
