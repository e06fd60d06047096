#include <gtest/gtest.h>

#include "fuzzyt/fuzzyt.hpp"

using namespace fuzzyt;

namespace {

Network demo() {
    return Network({{"a", std::nullopt, 0.0, std::nullopt},
                    {"b", std::nullopt, 0.0, std::nullopt},
                    {"Ck", ActivationSpec::logistic(), 0.0, std::nullopt}},
                   {{"a", "Ck", 1.0}, {"b", "Ck", -1.0}}, {"a", "b"});
}

Stimuli three_rows() { return {{"x", "y", "z"}, {{1.0, 0.0}, {0.5, 0.5}, {0.0, 1.0}}}; }

}  // namespace

TEST(BuildModel, OneElementPerStimulus) {
    const auto I = build_model(demo(), three_rows());
    ASSERT_EQ(I.size(), 3u);
    EXPECT_EQ(I.domain(), (std::vector<std::string>{"x", "y", "z"}));
    EXPECT_EQ(I.concept_values("a"), (std::vector<double>{1.0, 0.5, 0.0}));
    EXPECT_DOUBLE_EQ(I.concept_values("Ck")[1], 0.5);
    EXPECT_DOUBLE_EQ(I.concept_values("Ck")[0], 1.0 / (1.0 + std::exp(-1.0)));
}

TEST(BuildModel, ConceptFilter) {
    ModelOptions opts;
    opts.concepts = {"Ck"};
    const auto I = build_model(demo(), three_rows(), opts);
    EXPECT_EQ(I.concepts().size(), 1u);
    EXPECT_NO_THROW(I.concept_values("Ck"));
    opts.concepts = {"Missing"};
    try {
        build_model(demo(), three_rows(), opts);
        FAIL() << "expected an error";
    } catch (const UnknownNameError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("Missing"), std::string::npos);
        EXPECT_NE(msg.find("a, b, Ck"), std::string::npos);
    }
}

TEST(BuildModel, EmptyStimuliRejected) {
    EXPECT_THROW(build_model(demo(), Stimuli{}), InputError);
}

TEST(BuildModel, GradedMatchesQuantizedForward) {
    const GradedScale scale(5);
    const auto grid = input_grid(demo(), scale);
    const auto G = build_graded_model(demo(), grid, scale);
    ASSERT_EQ(G.size(), 36u);
    for (std::size_t s = 0; s < grid.size(); ++s) {
        const auto q = demo().forward_quantized(grid.rows[s], scale);
        EXPECT_EQ(G.concept_values("Ck")[s], q[2]);
        EXPECT_EQ(G.concept_values("a")[s], q[0]);
    }
}

TEST(ExtractKb, BlocksFollowIncomingEdges) {
    const auto ex = extract_kb(demo());
    ASSERT_EQ(ex.kb.distinguished(), (std::vector<std::string>{"Ck"}));
    const auto& blk = ex.kb.block("Ck");
    ASSERT_EQ(blk.inclusions.size(), 3u);
    EXPECT_EQ(blk.inclusions[0].rhs, atom("a"));
    EXPECT_EQ(blk.inclusions[0].weight, 1.0);
    EXPECT_EQ(blk.inclusions[1].rhs, atom("b"));
    EXPECT_EQ(blk.inclusions[1].weight, -1.0);
    EXPECT_EQ(blk.inclusions[2].rhs.kind(), ConceptKind::Top);
    EXPECT_EQ(blk.inclusions[2].weight, 0.0);
    EXPECT_EQ(ex.activations.at("Ck"), ActivationSpec::logistic());
    EXPECT_TRUE(ex.warnings.empty());
    EXPECT_TRUE(ex.kb.document().strict_axioms.empty());
}

TEST(ExtractKb, SerializesAndParsesBack) {
    Rng rng = trial_rng(3, 0);
    const auto net = random_network(rng, {});
    const auto ex = extract_kb(net);
    const auto doc = parse_kb(serialize(ex.kb.document()));
    EXPECT_EQ(doc, ex.kb.document());
}

TEST(ExtractKb, InputsOnlyWarns) {
    const Network net({{"a", std::nullopt, 0.0, std::nullopt}}, {}, {"a"});
    const auto ex = extract_kb(net);
    EXPECT_TRUE(ex.kb.distinguished().empty());
    EXPECT_EQ(ex.warnings.size(), 1u);
}

TEST(ExtractKb, BuildModelIsPhiCoherentWithZeroResidual) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Rng rng = trial_rng(seed, 1);
        const auto net = random_network(rng, {});
        const auto delta = random_stimuli(rng, net, 20);
        const auto I = build_model(net, delta);
        const auto ex = extract_kb(net);
        const auto rep = check_phi_coherent(ex.kb, I, ex.activations, 0.0);
        EXPECT_TRUE(rep.holds) << "seed " << seed;
        EXPECT_EQ(rep.max_residual, 0.0) << "seed " << seed;
        EXPECT_TRUE(check_coherent(ex.kb, I).holds);
        EXPECT_TRUE(check_faithful(ex.kb, I).holds);
    }
}

TEST(ExtractKb, GradedModelIsPhiCoherent) {
    const GradedScale scale(4);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng = trial_rng(seed, 2);
        NetworkConfig cfg;
        cfg.max_inputs = 2;
        const auto net = random_network(rng, cfg);
        const auto G = build_graded_model(net, input_grid(net, scale), scale);
        const auto ex = extract_kb(net);
        EXPECT_TRUE(check_phi_coherent(ex.kb, G, ex.activations).holds) << "seed " << seed;
    }
}
