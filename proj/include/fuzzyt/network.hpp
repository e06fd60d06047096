#pragma once

// Feedforward networks with pointwise [0,1]-valued activations.

#include <cctype>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "fuzzyt/activation.hpp"
#include "fuzzyt/error.hpp"
#include "fuzzyt/interpretation_io.hpp"
#include "fuzzyt/logic.hpp"
#include "fuzzyt/parallel.hpp"

namespace fuzzyt {

struct Unit {
    std::string id;
    /// Empty for input units.
    std::optional<ActivationSpec> activation;
    double bias = 0.0;
    /// Concept name; defaults to the id.
    std::optional<std::string> name;
};

struct Edge {
    std::string from;
    std::string to;
    double weight = 0.0;
};

/// True for strings usable as a concept name in the `.kb` language.
inline bool is_concept_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
    }
    static const char* reserved[] = {"top", "bot", "not", "and", "or", "some", "all", "T"};
    for (const char* r : reserved) {
        if (s == r) return false;
    }
    return true;
}

class Network {
public:
    struct Incoming {
        std::size_t from;
        double weight;
    };

    Network(std::vector<Unit> units, std::vector<Edge> edges, std::vector<std::string> inputs)
        : units_(std::move(units)), edges_(std::move(edges)), input_ids_(std::move(inputs)) {
        for (std::size_t i = 0; i < units_.size(); ++i) {
            if (!index_.emplace(units_[i].id, i).second) throw InputError("duplicate unit id '" + units_[i].id + "'");
        }
        incoming_.resize(units_.size());
        for (const auto& e : edges_) {
            if (!std::isfinite(e.weight)) throw InputError("edge " + e.from + " -> " + e.to + " has a non-finite weight");
            incoming_[unit_index(e.to)].push_back({unit_index(e.from), e.weight});
        }
        std::vector<bool> is_input(units_.size(), false);
        for (const auto& id : input_ids_) {
            const std::size_t i = unit_index(id);
            if (is_input[i]) throw InputError("unit '" + id + "' listed twice as input");
            is_input[i] = true;
            inputs_.push_back(i);
        }
        for (std::size_t i = 0; i < units_.size(); ++i) {
            const auto& u = units_[i];
            if (!std::isfinite(u.bias)) throw InputError("unit '" + u.id + "' has a non-finite bias");
            if (is_input[i]) {
                if (!incoming_[i].empty()) throw InputError("input unit '" + u.id + "' has incoming edges");
                if (u.activation) throw InputError("input unit '" + u.id + "' has an activation");
            } else {
                if (incoming_[i].empty()) throw InputError("unit '" + u.id + "' has no incoming edges and is not an input");
                if (!u.activation) throw InputError("unit '" + u.id + "' has no activation");
            }
        }
        order_ = topological_order();
        std::map<std::string, std::size_t> seen;
        for (std::size_t i = 0; i < units_.size(); ++i) {
            const std::string c = concept_name(i);
            if (!seen.emplace(c, i).second) throw InputError("two units share the concept name '" + c + "'");
        }
    }

    std::size_t size() const noexcept { return units_.size(); }
    const std::vector<Unit>& units() const noexcept { return units_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Unit& unit(std::size_t i) const { return units_.at(i); }
    /// Input unit indices in declaration order.
    const std::vector<std::size_t>& inputs() const noexcept { return inputs_; }
    /// Incoming edges of unit i in edge-list order.
    const std::vector<Incoming>& incoming(std::size_t i) const { return incoming_.at(i); }
    const std::vector<std::size_t>& topological() const noexcept { return order_; }

    std::size_t unit_index(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw InputError("unknown unit '" + id + "'");
        return it->second;
    }

    /// The unit's name, else its id, else `u<id>` with invalid characters replaced.
    std::string concept_name(std::size_t i) const {
        const auto& u = units_.at(i);
        if (u.name) {
            if (!is_concept_identifier(*u.name)) throw InputError("unit name '" + *u.name + "' is not a valid concept name");
            return *u.name;
        }
        if (is_concept_identifier(u.id)) return u.id;
        std::string out = "u";
        for (char c : u.id) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
        return out;
    }

    std::vector<std::string> input_names() const {
        std::vector<std::string> out;
        for (auto i : inputs_) out.push_back(concept_name(i));
        return out;
    }

    /// Local field u = sum of w * y over incoming edges in order, plus the bias.
    double local_field(std::size_t i, const std::vector<double>& y) const {
        double u = 0.0;
        for (const auto& e : incoming_[i]) u += e.weight * y[e.from];
        u += units_[i].bias;
        return u;
    }

    /// Activations of every unit, indexed like units(). `x` follows inputs().
    std::vector<double> forward(const std::vector<double>& x) const {
        check_stimulus(x);
        std::vector<double> y(units_.size(), 0.0);
        for (std::size_t k = 0; k < inputs_.size(); ++k) y[inputs_[k]] = x[k];
        for (std::size_t i : order_) {
            if (incoming_[i].empty()) continue;
            y[i] = (*units_[i].activation)(local_field(i, y));
            if (!(y[i] >= 0.0 && y[i] <= 1.0)) throw InputError("activation of '" + units_[i].id + "' left [0,1]");
        }
        return y;
    }

    /// As forward with every activation followed by quantization onto C_n.
    /// Inputs must lie on C_n; the result holds numerators.
    std::vector<int> forward_quantized(const std::vector<double>& x, GradedScale scale) const {
        check_stimulus(x);
        std::vector<double> y(units_.size(), 0.0);
        std::vector<int> g(units_.size(), 0);
        for (std::size_t k = 0; k < inputs_.size(); ++k) {
            const long long i = std::llround(x[k] * scale.n());
            if (std::abs(x[k] - scale.value(static_cast<int>(i))) > 1e-9) {
                throw InputError("stimulus value " + std::to_string(x[k]) + " is not on C_" + std::to_string(scale.n()));
            }
            g[inputs_[k]] = static_cast<int>(i);
            y[inputs_[k]] = scale.value(static_cast<int>(i));
        }
        for (std::size_t i : order_) {
            if (incoming_[i].empty()) continue;
            g[i] = units_[i].activation->quantized_index(local_field(i, y), scale);
            y[i] = scale.value(g[i]);
        }
        return g;
    }

private:
    void check_stimulus(const std::vector<double>& x) const {
        if (x.size() != inputs_.size()) {
            throw InputError("stimulus has " + std::to_string(x.size()) + " values, network has " +
                             std::to_string(inputs_.size()) + " inputs");
        }
        for (double v : x) {
            if (!(v >= 0.0 && v <= 1.0)) throw InputError("stimulus value " + std::to_string(v) + " outside [0,1]");
        }
    }

    std::vector<std::size_t> topological_order() const {
        std::vector<std::size_t> indeg(units_.size(), 0);
        std::vector<std::vector<std::size_t>> out(units_.size());
        for (std::size_t i = 0; i < units_.size(); ++i) {
            for (const auto& e : incoming_[i]) {
                out[e.from].push_back(i);
                ++indeg[i];
            }
        }
        std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
        for (std::size_t i = 0; i < units_.size(); ++i) {
            if (indeg[i] == 0) ready.push(i);
        }
        std::vector<std::size_t> order;
        while (!ready.empty()) {
            const std::size_t i = ready.top();
            ready.pop();
            order.push_back(i);
            for (auto k : out[i]) {
                if (--indeg[k] == 0) ready.push(k);
            }
        }
        if (order.size() != units_.size()) throw InputError("network graph has a cycle");
        return order;
    }

    std::vector<Unit> units_;
    std::vector<Edge> edges_;
    std::vector<std::string> input_ids_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::vector<Incoming>> incoming_;
    std::vector<std::size_t> inputs_;
    std::vector<std::size_t> order_;
};

namespace detail {
inline std::string json_id(const nlohmann::json& j, const char* what) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw InputError(std::string(what) + " must be a string or integer id");
}
}  // namespace detail

inline Network network_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("units") || !j["units"].is_array()) {
        throw InputError("network JSON needs a \"units\" array");
    }
    std::vector<Unit> units;
    for (const auto& u : j["units"]) {
        if (!u.is_object() || !u.contains("id")) throw InputError("every unit needs an \"id\"");
        Unit unit;
        unit.id = detail::json_id(u["id"], "unit id");
        if (u.contains("activation") && !u["activation"].is_null()) {
            try {
                unit.activation = activation_from_json(u["activation"]);
            } catch (const InputError& e) {
                throw InputError("unit '" + unit.id + "': " + e.what());
            }
        }
        if (u.contains("bias")) {
            if (!u["bias"].is_number()) throw InputError("unit '" + unit.id + "': bias must be a number");
            unit.bias = u["bias"].get<double>();
        }
        if (u.contains("name") && !u["name"].is_null()) unit.name = u["name"].get<std::string>();
        units.push_back(std::move(unit));
    }
    std::vector<Edge> edges;
    if (j.contains("edges")) {
        for (const auto& e : j["edges"]) {
            if (!e.contains("from") || !e.contains("to") || !e.contains("weight") || !e["weight"].is_number()) {
                throw InputError("every edge needs \"from\", \"to\" and a numeric \"weight\"");
            }
            edges.push_back({detail::json_id(e["from"], "edge source"), detail::json_id(e["to"], "edge target"),
                             e["weight"].get<double>()});
        }
    }
    std::vector<std::string> inputs;
    if (j.contains("inputs")) {
        for (const auto& i : j["inputs"]) inputs.push_back(detail::json_id(i, "input"));
    } else {
        std::map<std::string, bool> has_in;
        for (const auto& e : edges) has_in[e.to] = true;
        for (const auto& u : units) {
            if (!has_in[u.id]) inputs.push_back(u.id);
        }
    }
    return Network(std::move(units), std::move(edges), std::move(inputs));
}

inline nlohmann::json to_json(const Network& net) {
    nlohmann::json units = nlohmann::json::array();
    for (const auto& u : net.units()) {
        nlohmann::json ju{{"id", u.id}, {"bias", u.bias}};
        ju["activation"] = u.activation ? to_json(*u.activation) : nlohmann::json(nullptr);
        if (u.name) ju["name"] = *u.name;
        units.push_back(std::move(ju));
    }
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : net.edges()) edges.push_back({{"from", e.from}, {"to", e.to}, {"weight", e.weight}});
    nlohmann::json inputs = nlohmann::json::array();
    for (auto i : net.inputs()) inputs.push_back(net.unit(i).id);
    return {{"units", units}, {"edges", edges}, {"inputs", inputs}};
}

/// Input patterns in the network's input order, with element ids.
struct Stimuli {
    std::vector<std::string> ids;
    std::vector<std::vector<double>> rows;
    std::size_t size() const noexcept { return rows.size(); }
};

/// Maps CSV columns (input concept names or unit ids, any order) onto the input order.
inline Stimuli stimuli_from_csv(const Network& net, const CsvTable& table) {
    const auto& inputs = net.inputs();
    std::vector<std::size_t> column_of(inputs.size(), static_cast<std::size_t>(-1));
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        const std::string name = net.concept_name(inputs[k]);
        const std::string& id = net.unit(inputs[k]).id;
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (table.columns[c] == name || table.columns[c] == id) column_of[k] = c;
        }
        if (column_of[k] == static_cast<std::size_t>(-1)) throw InputError("stimulus CSV lacks input column '" + name + "'");
    }
    if (table.columns.size() != inputs.size()) {
        throw InputError("stimulus CSV has " + std::to_string(table.columns.size()) + " columns for " +
                         std::to_string(inputs.size()) + " inputs");
    }
    Stimuli s;
    s.ids = table.ids;
    for (const auto& r : table.rows) {
        std::vector<double> x(inputs.size());
        for (std::size_t k = 0; k < inputs.size(); ++k) {
            x[k] = r[column_of[k]];
            if (!(x[k] >= 0.0 && x[k] <= 1.0)) throw InputError("stimulus value " + std::to_string(x[k]) + " outside [0,1]");
        }
        s.rows.push_back(std::move(x));
    }
    return s;
}

/// Every point of C_n^inputs, first input most significant, ids g0, g1, ...
inline Stimuli input_grid(const Network& net, GradedScale scale, unsigned long long limit = 10'000'000ULL) {
    const std::size_t d = net.inputs().size();
    unsigned long long total = 1;
    for (std::size_t i = 0; i < d; ++i) {
        total *= static_cast<unsigned long long>(scale.n() + 1);
        if (total > limit) throw InputError("input grid exceeds " + std::to_string(limit) + " points");
    }
    Stimuli s;
    std::vector<int> idx(d, 0);
    for (unsigned long long g = 0; g < total; ++g) {
        std::vector<double> x(d);
        for (std::size_t i = 0; i < d; ++i) x[i] = scale.value(idx[i]);
        s.ids.push_back("g" + std::to_string(g));
        s.rows.push_back(std::move(x));
        for (std::size_t i = d; i-- > 0;) {
            if (++idx[i] <= scale.n()) break;
            idx[i] = 0;
        }
    }
    return s;
}

}  // namespace fuzzyt
