#include <gtest/gtest.h>

#include <cmath>

#include "fuzzyt/harness.hpp"
#include "fuzzyt/network.hpp"

using namespace fuzzyt;
using nlohmann::json;

namespace {

Network demo() {
    return Network({{"a", std::nullopt, 0.0, std::nullopt},
                    {"b", std::nullopt, 0.0, std::nullopt},
                    {"Ck", ActivationSpec::logistic(), 0.0, std::nullopt}},
                   {{"a", "Ck", 1.0}, {"b", "Ck", -1.0}}, {"a", "b"});
}

double sigmoid(double u) { return 1.0 / (1.0 + std::exp(-u)); }

}  // namespace

TEST(Activation, Values) {
    EXPECT_DOUBLE_EQ(ActivationSpec::logistic()(0.0), 0.5);
    EXPECT_DOUBLE_EQ(ActivationSpec::logistic(2.0, 1.0)(1.0), 0.5);
    EXPECT_EQ(ActivationSpec::clamped_relu()(1.7), 1.0);
    EXPECT_EQ(ActivationSpec::clamped_relu()(-0.2), 0.0);
    EXPECT_DOUBLE_EQ(ActivationSpec::shifted_tanh()(0.0), 0.5);
    EXPECT_EQ(ActivationSpec::binary_step()(0.0), 0.0);
    EXPECT_EQ(ActivationSpec::binary_step()(1e-300), 1.0);
    EXPECT_EQ(ActivationSpec::identity_clamped()(0.25), 0.25);
    EXPECT_EQ(ActivationSpec::logistic().monotonicity(), Monotonicity::Increasing);
    EXPECT_EQ(ActivationSpec::binary_step().monotonicity(), Monotonicity::NonDecreasing);
    EXPECT_EQ(ActivationSpec::logistic(-1.0).monotonicity(), Monotonicity::None);
}

TEST(Activation, Json) {
    for (const auto& phi : {ActivationSpec::logistic(3.0, -1.0), ActivationSpec::binary_step(0.25),
                            ActivationSpec::clamped_relu(), ActivationSpec::shifted_tanh(0.5),
                            ActivationSpec::identity_clamped()}) {
        EXPECT_EQ(activation_from_json(to_json(phi)), phi);
        EXPECT_TRUE(verify_activation(phi).empty());
    }
    EXPECT_EQ(activation_from_json(json{{"kind", "sigmoid"}}), ActivationSpec::logistic());
    EXPECT_THROW(activation_from_json(json{{"kind", "softmax"}}), InputError);
    EXPECT_THROW(activation_from_json(json{{"kind", "relu"}}), InputError);
    EXPECT_THROW(activation_from_json(json{{"kind", "swish"}}), InputError);
    EXPECT_THROW(activation_from_json(json{{"kind", "logistic"}, {"k", "x"}}), InputError);
    EXPECT_THROW(activation_from_json(json{{"kind", "binary-step"}, {"monotonicity", "increasing"}}), InputError);
    EXPECT_NO_THROW(activation_from_json(json{{"kind", "logistic"}, {"monotonicity", "increasing"}}));
}

// |phi_n(z) - phi(z)| <= 1/(2n).
TEST(Activation, QuantizationBound) {
    const auto phi = ActivationSpec::logistic();
    Rng rng(17);
    std::normal_distribution<double> z(0.0, 4.0);
    for (int n : {5, 10, 100}) {
        const GradedScale s(n);
        for (int i = 0; i < 10000; ++i) {
            const double u = z(rng);
            EXPECT_LE(std::abs(phi.quantized(u, s) - phi(u)), 1.0 / (2.0 * n));
        }
    }
}

TEST(Network, ForwardDemo) {
    const Network net = demo();
    const auto y = net.forward({1.0, 0.0});
    EXPECT_DOUBLE_EQ(y[2], sigmoid(1.0));
    EXPECT_EQ(net.forward_quantized({1.0, 0.0}, GradedScale(5))[2], 4);
    EXPECT_EQ(net.forward_quantized({0.0, 1.0}, GradedScale(5))[2], 1);
    EXPECT_EQ(net.forward_quantized({0.4, 0.4}, GradedScale(5))[2], 2);
    EXPECT_THROW(net.forward_quantized({0.5, 0.0}, GradedScale(5)), InputError);
    EXPECT_THROW(net.forward({0.5}), InputError);
    EXPECT_THROW(net.forward({1.5, 0.0}), InputError);
    EXPECT_EQ(net.input_names(), (std::vector<std::string>{"a", "b"}));
}

// forward() equals a straightforward layer-by-layer recomputation.
TEST(Network, ForwardMatchesOracle) {
    for (std::uint64_t i = 0; i < 200; ++i) {
        Rng rng = trial_rng(21, i);
        const Network net = random_network(rng, NetworkConfig{});
        const auto delta = random_stimuli(rng, net, 5);
        for (const auto& x : delta.rows) {
            const auto y = net.forward(x);
            std::map<std::string, double> value;
            for (std::size_t k = 0; k < net.inputs().size(); ++k) value[net.unit(net.inputs()[k]).id] = x[k];
            bool progress = true;
            while (progress) {
                progress = false;
                for (const auto& u : net.units()) {
                    if (value.count(u.id)) continue;
                    double field = 0.0;
                    bool ready = true;
                    for (const auto& e : net.edges()) {
                        if (e.to != u.id) continue;
                        if (!value.count(e.from)) {
                            ready = false;
                            break;
                        }
                        field += e.weight * value[e.from];
                    }
                    if (!ready) continue;
                    value[u.id] = sigmoid(field + u.bias);
                    progress = true;
                }
            }
            for (std::size_t k = 0; k < net.size(); ++k) EXPECT_EQ(y[k], value[net.unit(k).id]);
        }
    }
}

TEST(Network, Validation) {
    using U = std::vector<Unit>;
    const auto phi = ActivationSpec::logistic();
    EXPECT_THROW(Network(U{{"a", std::nullopt, 0, {}}, {"a", phi, 0, {}}}, {{"a", "a", 1}}, {"a"}), InputError);
    EXPECT_THROW(Network(U{{"a", std::nullopt, 0, {}}, {"b", phi, 0, {}}, {"c", phi, 0, {}}},
                         {{"a", "b", 1}, {"b", "c", 1}, {"c", "b", 1}}, {"a"}),
                 InputError);
    EXPECT_THROW(Network(U{{"a", std::nullopt, 0, {}}, {"b", phi, 0, {}}}, {{"a", "x", 1}}, {"a"}), InputError);
    EXPECT_THROW(Network(U{{"a", std::nullopt, 0, {}}, {"b", std::nullopt, 0, {}}}, {{"a", "b", 1}}, {"a"}),
                 InputError);
    EXPECT_THROW(Network(U{{"a", std::nullopt, 0, {}}, {"b", phi, 0, {}}}, {}, {"a"}), InputError);
    EXPECT_THROW(Network(U{{"a", std::nullopt, 0, {}}, {"b", phi, NAN, {}}}, {{"a", "b", 1}}, {"a"}), InputError);
    EXPECT_THROW(Network(U{{"a", std::nullopt, 0, {}}, {"b", phi, 0, {}}}, {{"a", "b", INFINITY}}, {"a"}),
                 InputError);
    EXPECT_THROW(Network(U{{"a", std::nullopt, 0, {"X"}}, {"b", phi, 0, {"X"}}}, {{"a", "b", 1}}, {"a"}),
                 InputError);
}

TEST(Network, ConceptNames) {
    const auto phi = ActivationSpec::logistic();
    const Network net({{"0", std::nullopt, 0, {}}, {"hidden-1", phi, 0, {}}, {"o", phi, 0, {"Out"}}},
                      {{"0", "hidden-1", 1}, {"hidden-1", "o", 1}}, {"0"});
    EXPECT_EQ(net.concept_name(0), "u0");
    EXPECT_EQ(net.concept_name(1), "uhidden_1");
    EXPECT_EQ(net.concept_name(2), "Out");
}

TEST(Network, TopologicalOrderIsDeterministic) {
    const auto phi = ActivationSpec::logistic();
    const Network net({{"c", phi, 0, {}}, {"x", std::nullopt, 0, {}}, {"b", phi, 0, {}}, {"a", phi, 0, {}}},
                      {{"x", "b", 1}, {"b", "a", 1}, {"x", "c", 1}, {"a", "c", 1}}, {"x"});
    EXPECT_EQ(net.topological(), (std::vector<std::size_t>{1, 2, 3, 0}));
}

TEST(Network, JsonRoundTrip) {
    Rng rng = trial_rng(3, 3);
    const Network net = random_network(rng, NetworkConfig{});
    const Network back = network_from_json(to_json(net));
    EXPECT_EQ(to_json(back), to_json(net));
    const auto j = json::parse(R"({"units": [{"id": 0}, {"id": 1, "activation": {"kind": "sigmoid"}, "bias": 0.5}],
                                   "edges": [{"from": 0, "to": 1, "weight": 2}]})");
    const Network n2 = network_from_json(j);
    EXPECT_EQ(n2.inputs(), (std::vector<std::size_t>{0}));
    EXPECT_DOUBLE_EQ(n2.forward({1.0})[1], sigmoid(2.5));
    EXPECT_THROW(network_from_json(json::parse(R"({"units": [{"id": 0}, {"id": 1, "activation": {"kind": "softmax"}}],
                                                   "edges": [{"from": 0, "to": 1, "weight": 2}]})")),
                 InputError);
    EXPECT_THROW(network_from_json(json::parse(R"({"edges": []})")), InputError);
}

TEST(Stimuli, CsvMapping) {
    const Network net = demo();
    const auto s = stimuli_from_csv(net, read_csv_string("id,b,a\np,0.2,1\nq,0,0\n"));
    EXPECT_EQ(s.ids, (std::vector<std::string>{"p", "q"}));
    EXPECT_EQ(s.rows[0], (std::vector<double>{1.0, 0.2}));
    EXPECT_THROW(stimuli_from_csv(net, read_csv_string("a\n1\n")), InputError);
    EXPECT_THROW(stimuli_from_csv(net, read_csv_string("a,b,c\n1,0,0\n")), InputError);
    EXPECT_THROW(stimuli_from_csv(net, read_csv_string("a,b\n1,2\n")), InputError);
}

TEST(Stimuli, Grid) {
    const auto g = input_grid(demo(), GradedScale(5));
    ASSERT_EQ(g.size(), 36u);
    EXPECT_EQ(g.rows[1], (std::vector<double>{0.0, 0.2}));
    EXPECT_EQ(g.rows[6], (std::vector<double>{0.2, 0.0}));
    EXPECT_EQ(g.ids[35], "g35");
    EXPECT_THROW(input_grid(demo(), GradedScale(5), 10), InputError);
}
