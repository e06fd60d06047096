#include <gtest/gtest.h>

#include <algorithm>

#include "fuzzyt/fuzzyt.hpp"
#include "oracles.hpp"

using namespace fuzzyt;
using fuzzyt::testing::naive_entails;
using fuzzyt::testing::random_query;

namespace {

const CombinationFamily kGz = CombinationFamily::make(FamilyName::GoedelInvolutive);

Network demo() {
    return Network({{"a", std::nullopt, 0.0, std::nullopt},
                    {"b", std::nullopt, 0.0, std::nullopt},
                    {"Ck", ActivationSpec::logistic(), 0.0, std::nullopt}},
                   {{"a", "Ck", 1.0}, {"b", "Ck", -1.0}}, {"a", "b"});
}

EntailmentOptions serial() {
    EntailmentOptions o;
    o.jobs = 1;
    o.collect_counterexamples = true;
    return o;
}

std::vector<std::vector<int>> sorted(std::vector<std::vector<int>> v) {
    std::sort(v.begin(), v.end());
    return v;
}

void expect_matches_oracle(const WeightedKb& K, const ActivationMap& phis, const Axiom& q, GradedScale scale,
                           const EntailmentOptions& opts, const std::string& label) {
    const auto r = entails(K, phis, q, scale, opts);
    const auto o = naive_entails(K, phis, q, scale, opts.family, opts.extra_names);
    ASSERT_EQ(r.names, o.names) << label;
    EXPECT_EQ(r.entailed, o.entailed) << label;
    EXPECT_EQ(r.vacuous, o.vacuous) << label;
    EXPECT_EQ(r.value, o.value) << label;
    EXPECT_EQ(r.max_value, o.max_value) << label;
    EXPECT_EQ(r.counterexample_count, o.counterexamples.size()) << label;
    EXPECT_EQ(sorted(r.counterexamples), o.counterexamples) << label;
}

}  // namespace

TEST(Entails, DemoHoldsForA) {
    const auto ex = extract_kb(demo());
    const auto r = entails(ex.kb, ex.activations, parse_axiom("T(Ck) <: a >= 1"), GradedScale(5), serial());
    EXPECT_TRUE(r.entailed);
    EXPECT_FALSE(r.vacuous);
    EXPECT_FALSE(r.inconsistent);
    EXPECT_EQ(r.max_value, 4);
    EXPECT_EQ(r.value, 5);
    EXPECT_EQ(r.names, (std::vector<std::string>{"Ck", "a", "b"}));
    EXPECT_EQ(r.mode, "acyclic");
    EXPECT_EQ(r.stats.coherent, 36u);
}

TEST(Entails, DemoFailsForB) {
    const auto ex = extract_kb(demo());
    const auto r = entails(ex.kb, ex.activations, parse_axiom("T(Ck) <: b >= 1/5"), GradedScale(5), serial());
    EXPECT_FALSE(r.entailed);
    ASSERT_TRUE(r.counterexample);
    EXPECT_EQ(*r.counterexample, (std::vector<int>{4, 5, 0}));
    EXPECT_EQ(r.value, 0);
    EXPECT_EQ(r.counterexample_count, 1u);
}

TEST(Entails, DemoAgreesWithOracle) {
    const auto ex = extract_kb(demo());
    for (int n : {1, 2, 3, 5}) {
        for (int k = 1; k <= n; ++k) {
            for (const char* rhs : {"a", "b", "not b", "a and not b", "a or b", "Ck"}) {
                const auto q = Axiom::inclusion(typ(atom("Ck")), parse_concept(rhs), Comparator::Geq,
                                                Threshold::fraction(k, n));
                expect_matches_oracle(ex.kb, ex.activations, q, GradedScale(n), serial(),
                                      std::string(rhs) + " n=" + std::to_string(n) + " k=" + std::to_string(k));
            }
        }
    }
}

TEST(Entails, ThresholdOffScaleRejected) {
    const auto ex = extract_kb(demo());
    EXPECT_THROW(entails(ex.kb, ex.activations, parse_axiom("T(Ck) <: a >= 1/3"), GradedScale(5)), InputError);
}

TEST(Entails, ModesAgree) {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        Rng rng = trial_rng(seed, 7);
        NetworkConfig cfg;
        cfg.max_inputs = 2;
        cfg.max_units = 2;
        cfg.max_layers = 2;
        cfg.weight_range = 3.0;
        const auto net = random_network(rng, cfg);
        const auto ex = extract_kb(net);
        const GradedScale scale(2);
        const auto q = random_query(rng, net, 1, 2);
        auto a = serial();
        a.mode = SearchMode::Acyclic;
        auto g = serial();
        g.mode = SearchMode::General;
        const auto ra = entails(ex.kb, ex.activations, q, scale, a);
        const auto rg = entails(ex.kb, ex.activations, q, scale, g);
        EXPECT_EQ(ra.mode, "acyclic");
        EXPECT_EQ(rg.mode, "general");
        EXPECT_EQ(ra.entailed, rg.entailed) << seed;
        EXPECT_EQ(ra.value, rg.value) << seed;
        EXPECT_EQ(enumerate_coherent(ex.kb, ex.activations, scale, a).rows.size(),
                  enumerate_coherent(ex.kb, ex.activations, scale, g).rows.size())
            << seed;
        EXPECT_EQ(sorted(ra.counterexamples), sorted(rg.counterexamples)) << seed;
    }
}

TEST(Entails, JobsDoNotChangeResults) {
    Rng rng = trial_rng(11, 0);
    NetworkConfig cfg;
    cfg.max_inputs = 3;
    cfg.min_inputs = 3;
    const auto net = random_network(rng, cfg);
    const auto ex = extract_kb(net);
    const auto q = random_query(rng, net, 3, 4);
    auto one = serial();
    auto four = serial();
    four.jobs = 4;
    const auto r1 = entails(ex.kb, ex.activations, q, GradedScale(4), one);
    const auto r4 = entails(ex.kb, ex.activations, q, GradedScale(4), four);
    EXPECT_EQ(r1.entailed, r4.entailed);
    EXPECT_EQ(r1.value, r4.value);
    EXPECT_EQ(r1.counterexample, r4.counterexample);
    EXPECT_EQ(r1.counterexamples, r4.counterexamples);
    EXPECT_EQ(r1.stats.coherent, r4.stats.coherent);
    EXPECT_EQ(r1.stats.explored, r4.stats.explored);
}

TEST(Entails, BudgetExceededThrows) {
    const auto ex = extract_kb(demo());
    auto o = serial();
    o.budget = 10;
    EXPECT_THROW(entails(ex.kb, ex.activations, parse_axiom("T(Ck) <: a >= 1"), GradedScale(5), o), BudgetExceeded);
}

TEST(Entails, VacuousWhenTargetNeverPositive) {
    // A unit that is always 0 on C_2: binary step with an unreachable threshold.
    const Network net({{"a", std::nullopt, 0.0, std::nullopt}, {"D", ActivationSpec::binary_step(5.0), 0.0, std::nullopt}},
                      {{"a", "D", 1.0}}, {"a"});
    const auto ex = extract_kb(net);
    const auto r = entails(ex.kb, ex.activations, parse_axiom("T(D) <: bot >= 1"), GradedScale(2), serial());
    EXPECT_TRUE(r.vacuous);
    EXPECT_TRUE(r.entailed);
    EXPECT_FALSE(r.max_value);
}

TEST(Entails, InconsistentStrictAxioms) {
    auto doc = parse_kb("a <: bot >= 1\nnot a <: bot >= 1\n");
    const auto ex = extract_kb(demo());
    for (const auto& b : ex.kb.document().blocks) doc.blocks.push_back(b);
    const WeightedKb K(doc);
    const auto r = entails(K, ex.activations, parse_axiom("T(Ck) <: bot >= 1"), GradedScale(3), serial());
    EXPECT_TRUE(r.inconsistent);
    EXPECT_TRUE(r.entailed);
}

TEST(Entails, StrictAxiomsRestrictValuations) {
    auto doc = parse_kb("b <: bot >= 1\n");
    const auto ex = extract_kb(demo());
    for (const auto& b : ex.kb.document().blocks) doc.blocks.push_back(b);
    const WeightedKb K(doc);
    const auto q = parse_axiom("T(Ck) <: not b >= 1");
    expect_matches_oracle(K, ex.activations, q, GradedScale(3), serial(), "strict");
    EXPECT_TRUE(entails(K, ex.activations, q, GradedScale(3), serial()).entailed);
}

TEST(Entails, UpperBoundQueriesUseWitness) {
    const auto ex = extract_kb(demo());
    const auto r = entails(ex.kb, ex.activations, parse_axiom("T(Ck) <: b <= 0"), GradedScale(5), serial());
    EXPECT_TRUE(r.entailed);
    ASSERT_TRUE(r.witness);
    const auto o = naive_entails(ex.kb, ex.activations, parse_axiom("T(Ck) <: b <= 0"), GradedScale(5), kGz);
    EXPECT_EQ(r.value, o.value);
}

TEST(Entails, PlainInclusionQuery) {
    const auto ex = extract_kb(demo());
    for (int k = 1; k <= 4; ++k) {
        const auto q = Axiom::inclusion(atom("Ck"), atom("a") | ~atom("b"), Comparator::Geq, Threshold::fraction(k, 4));
        expect_matches_oracle(ex.kb, ex.activations, q, GradedScale(4), serial(), "k=" + std::to_string(k));
    }
}

TEST(Entails, RandomNetworksAgreeWithOracle) {
    std::size_t instances = 0;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Rng rng = trial_rng(seed, 42);
        NetworkConfig cfg;
        cfg.max_inputs = 2;
        cfg.max_units = 2;
        cfg.max_layers = 2;
        cfg.weight_range = 4.0;
        cfg.bias_range = 2.0;
        const auto net = random_network(rng, cfg);
        const auto ex = extract_kb(net);
        const int n = std::uniform_int_distribution<int>(1, 3)(rng);
        if (fuzzyt::testing::naive_space(net.size(), GradedScale(n)) > 1e5) continue;
        for (int k = 1; k <= n; ++k) {
            const auto q = random_query(rng, net, k, n);
            auto o = serial();
            o.extra_names = net.input_names();
            expect_matches_oracle(ex.kb, ex.activations, q, GradedScale(n), o,
                                  "seed " + std::to_string(seed) + " " + to_string(q));
            ++instances;
        }
    }
    EXPECT_GT(instances, 20u);
}

TEST(Entails, PruningDoesNotChangeResults) {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        Rng rng = trial_rng(seed, 9);
        const auto net = random_network(rng, {});
        if (net.inputs().size() > 3) continue;
        const auto ex = extract_kb(net);
        const auto q = random_query(rng, net, 2, 3);
        auto p = serial();
        auto u = serial();
        u.prune = false;
        const auto rp = entails(ex.kb, ex.activations, q, GradedScale(3), p);
        const auto ru = entails(ex.kb, ex.activations, q, GradedScale(3), u);
        EXPECT_EQ(rp.entailed, ru.entailed);
        EXPECT_EQ(rp.value, ru.value);
        EXPECT_EQ(rp.max_value, ru.max_value);
        EXPECT_EQ(rp.counterexamples, ru.counterexamples);
        EXPECT_LE(rp.stats.explored, ru.stats.explored);
    }
}

TEST(EnumerateCoherent, ValuationsSatisfyNeuronEquations) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng = trial_rng(seed, 5);
        NetworkConfig cfg;
        cfg.max_inputs = 3;
        const auto net = random_network(rng, cfg);
        const GradedScale scale(3);
        EntailmentOptions o;
        o.extra_names = net.input_names();
        const auto vs = enumerate_coherent(extract_kb(net).kb, extract_kb(net).activations, scale, o);
        std::size_t expected = 1;
        for (std::size_t i = 0; i < net.inputs().size(); ++i) expected *= 4;
        ASSERT_EQ(vs.rows.size(), expected);
        for (const auto& row : vs.rows) {
            std::vector<double> x;
            for (auto i : net.inputs()) {
                const auto col = std::find(vs.names.begin(), vs.names.end(), net.concept_name(i)) - vs.names.begin();
                x.push_back(scale.value(row[col]));
            }
            const auto g = net.forward_quantized(x, scale);
            for (std::size_t u = 0; u < net.size(); ++u) {
                const auto col = std::find(vs.names.begin(), vs.names.end(), net.concept_name(u)) - vs.names.begin();
                EXPECT_EQ(row[col], g[u]);
            }
        }
    }
}

TEST(CrossCheck, DemoAgrees) {
    for (int k = 1; k <= 5; ++k) {
        for (const char* rhs : {"a", "b", "not b", "a and not b"}) {
            const auto q =
                Axiom::inclusion(typ(atom("Ck")), parse_concept(rhs), Comparator::Geq, Threshold::fraction(k, 5));
            const auto rep = cross_check(demo(), GradedScale(5), q, serial());
            EXPECT_TRUE(rep.agree) << rhs << " k=" << k;
            EXPECT_TRUE(rep.full_grid);
        }
    }
}

TEST(CrossCheck, SubsetGridIsFlagged) {
    Stimuli delta{{"x"}, {{1.0, 0.0}}};
    const auto rep = cross_check(demo(), GradedScale(5), parse_axiom("T(Ck) <: a >= 1"), serial(), delta);
    EXPECT_FALSE(rep.full_grid);
    EXPECT_FALSE(rep.note.empty());
}
