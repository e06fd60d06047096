#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "fuzzyt/harness.hpp"
#include "fuzzyt/weighted_kb.hpp"

using namespace fuzzyt;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

WeightedKb penguin_kb() { return WeightedKb(parse_kb(slurp(FUZZYT_SOURCE_DIR "/data/penguin/penguin.kb"))); }

Interpretation penguin_model() {
    return interpretation_from_json(nlohmann::json::parse(slurp(FUZZYT_SOURCE_DIR "/data/penguin/model.json")),
                                    FuzzyAlgebra(CombinationFamily::make(FamilyName::Goedel)));
}

}  // namespace

TEST(WeightedKb, PenguinWeights) {
    const auto K = penguin_kb();
    const auto I = penguin_model();
    EXPECT_EQ(K.distinguished(), (std::vector<std::string>{"Bird", "Penguin", "Canary"}));
    const auto reddy = I.element_index("reddy"), opus = I.element_index("opus");
    EXPECT_EQ(element_weight(K, I, "Bird", reddy), 120.0);
    EXPECT_EQ(element_weight(K, I, "Bird", opus), 100.0);
    EXPECT_EQ(element_weight(K, I, "Penguin", reddy), 30.0);
    EXPECT_EQ(element_weight(K, I, "Penguin", opus), 120.0);
    EXPECT_EQ(element_weight(K, I, "Canary", opus), kNotMember);
    EXPECT_EQ(element_weight(K, I, "Bird", I.element_index("feather")), kNotMember);
}

TEST(WeightedKb, PenguinFaithfulness) {
    const auto K = penguin_kb();
    auto I = penguin_model();
    const auto ok = check_faithful(K, I);
    EXPECT_TRUE(ok.holds);
    EXPECT_TRUE(ok.axiom_failures.empty());
    EXPECT_TRUE(check_coherent(K, I).holds);

    auto penguin = I.concept_values("Penguin");
    penguin[I.element_index("reddy")] = 0.9;
    I.set_concept("Penguin", penguin);
    const auto bad = check_faithful(K, I);
    EXPECT_FALSE(bad.holds);
    ASSERT_EQ(bad.violation_count, 1u);
    EXPECT_EQ(bad.violations[0].concept_name, "Penguin");
    EXPECT_EQ(bad.violations[0].x, I.element_index("reddy"));
    EXPECT_EQ(bad.violations[0].y, I.element_index("opus"));
    EXPECT_EQ(bad.violations[0].weight_x, 30.0);
    EXPECT_EQ(bad.violations[0].weight_y, 120.0);
}

TEST(WeightedKb, StrictPartIsChecked) {
    const auto K = penguin_kb();
    auto I = penguin_model();
    auto black = I.concept_values("Black");
    black[I.element_index("reddy")] = 0.3;
    I.set_concept("Black", black);
    const auto r = check_faithful(K, I);
    EXPECT_FALSE(r.holds);
    ASSERT_EQ(r.axiom_failures.size(), 1u);
    EXPECT_EQ(r.axiom_failures[0].axiom, "Black and Red <: bot >= 1");
}

TEST(WeightedKb, Validation) {
    KbDocument doc;
    doc.blocks.push_back({"C", {}});
    EXPECT_THROW(WeightedKb{doc}, InputError);
    doc.blocks[0].inclusions.push_back({atom("D"), std::nan("")});
    EXPECT_THROW(WeightedKb{doc}, InputError);
    doc.blocks[0].inclusions[0] = {typ(atom("D")), 1.0};
    EXPECT_THROW(WeightedKb{doc}, InputError);
    EXPECT_THROW(penguin_kb().block("Fly"), InputError);
}

namespace {

// Faithful/coherent straight from the definitions.
template <class Algebra>
std::pair<bool, bool> oracle(const WeightedKb& K, const BasicInterpretation<Algebra>& I) {
    bool faithful = true, coherent = true;
    for (const auto& name : K.distinguished()) {
        std::vector<double> w(I.size());
        for (std::size_t x = 0; x < I.size(); ++x) {
            const double c = I.degree(name, x);
            if (c <= 0.0) {
                w[x] = -std::numeric_limits<double>::infinity();
                continue;
            }
            double s = 0.0;
            for (const auto& wi : K.block(name).inclusions) s += wi.weight * I.algebra().to_double(evaluate(I, wi.rhs)[x]);
            w[x] = s;
        }
        for (std::size_t x = 0; x < I.size(); ++x) {
            for (std::size_t y = 0; y < I.size(); ++y) {
                const bool pref = I.degree(name, x) > I.degree(name, y);
                if (pref && !(w[x] > w[y])) faithful = coherent = false;
                if (!pref && w[x] > w[y]) coherent = false;
            }
        }
    }
    return {faithful, coherent};
}

}  // namespace

// Graded checks agree with the definitional oracle; coherent implies faithful.
TEST(WeightedKb, ChecksMatchOracle) {
    GeneratorConfig cfg;
    cfg.grades = 4;
    const GradedAlgebra alg(cfg.family, GradedScale(4));
    std::size_t faithful = 0, coherent = 0;
    for (std::uint64_t i = 0; i < 3000; ++i) {
        Rng rng = trial_rng(31, i);
        const auto I = random_interpretation(rng, alg, cfg);
        KbDocument doc;
        for (const char* c : {"A", "B"}) {
            WeightedBlock b{c, {}};
            const int m = std::uniform_int_distribution<int>(1, 3)(rng);
            for (int h = 0; h < m; ++h) {
                b.inclusions.push_back({random_concept(rng, generator_names(4), 1),
                                        static_cast<double>(std::uniform_int_distribution<int>(-3, 3)(rng))});
            }
            doc.blocks.push_back(b);
        }
        const WeightedKb K(doc);
        const auto [f, c] = oracle(K, I);
        const bool cf = check_faithful(K, I).holds, cc = check_coherent(K, I).holds;
        EXPECT_EQ(cf, f);
        EXPECT_EQ(cc, c);
        EXPECT_TRUE(!cc || cf);
        faithful += cf;
        coherent += cc;
    }
    EXPECT_GT(faithful, coherent);
    EXPECT_GT(coherent, 0u);
}

TEST(WeightedKb, PhiCoherence) {
    KbDocument doc;
    doc.blocks.push_back({"C", {{atom("A"), 2.0}, {ConceptExpr::top(), -1.0}}});
    const WeightedKb K(doc);
    const ActivationMap phis{{"C", ActivationSpec::logistic()}};
    Interpretation I(FuzzyAlgebra(CombinationFamily::make(FamilyName::GoedelInvolutive)), {"x", "y"});
    I.set_concept("A", {1.0, 0.0});
    const double cx = ActivationSpec::logistic()(1.0), cy = ActivationSpec::logistic()(-1.0);
    I.set_concept("C", {cx, cy});
    const auto ok = check_phi_coherent(K, I, phis);
    EXPECT_TRUE(ok.holds);
    EXPECT_EQ(ok.max_residual, 0.0);
    I.set_concept("C", {cx, cy + 1e-6});
    const auto bad = check_phi_coherent(K, I, phis);
    EXPECT_FALSE(bad.holds);
    EXPECT_NEAR(bad.max_residual, 1e-6, 1e-12);
    EXPECT_TRUE(check_phi_coherent(K, I, phis, 1e-5).holds);
    EXPECT_THROW(check_phi_coherent(K, I, ActivationMap{}), InputError);

    const auto G = quantize_model(I, GradedScale(5));
    EXPECT_TRUE(check_phi_coherent(K, G, phis).holds);
    const auto profile = coherence_residual_profile(K, I, phis, {5, 500});
    ASSERT_EQ(profile.size(), 2u);
    EXPECT_LE(profile[0].max_residual, 0.1);
}

TEST(WeightedKb, NonMemberWeightsAreEqual) {
    KbDocument doc;
    doc.blocks.push_back({"C", {{atom("A"), 5.0}}});
    const WeightedKb K(doc);
    Interpretation I(FuzzyAlgebra(CombinationFamily::make(FamilyName::Goedel)), {"x", "y", "z"});
    I.set_concept("A", {1.0, 0.0, 0.5});
    I.set_concept("C", {0.0, 0.0, 0.4});
    EXPECT_EQ(element_weights(K, I, "C"), (std::vector<double>{kNotMember, kNotMember, 2.5}));
    EXPECT_TRUE(check_coherent(K, I).holds);
    EXPECT_TRUE(check_faithful(K, I).holds);
}
