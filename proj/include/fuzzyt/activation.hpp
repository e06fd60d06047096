#pragma once

// Pointwise activation functions with range [0,1].

#include <algorithm>
#include <cmath>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>

#include "fuzzyt/error.hpp"
#include "fuzzyt/logic.hpp"

namespace fuzzyt {

enum class ActivationKind { Logistic, ClampedRelu, ShiftedTanh, BinaryStep, IdentityClamped };
enum class Monotonicity { Increasing, NonDecreasing, None };

inline std::string_view to_string(ActivationKind k) {
    switch (k) {
        case ActivationKind::Logistic: return "logistic";
        case ActivationKind::ClampedRelu: return "clamped-relu";
        case ActivationKind::ShiftedTanh: return "shifted-tanh";
        case ActivationKind::BinaryStep: return "binary-step";
        case ActivationKind::IdentityClamped: return "identity-clamped";
    }
    return "?";
}

inline std::string_view to_string(Monotonicity m) {
    switch (m) {
        case Monotonicity::Increasing: return "increasing";
        case Monotonicity::NonDecreasing: return "non-decreasing";
        case Monotonicity::None: return "none";
    }
    return "?";
}

struct ActivationSpec {
    ActivationKind kind = ActivationKind::Logistic;
    /// Steepness (logistic, shifted-tanh).
    double k = 1.0;
    /// Midpoint (logistic, shifted-tanh).
    double x0 = 0.0;
    /// Threshold (binary-step): 1 if u > t.
    double t = 0.0;

    static ActivationSpec logistic(double k = 1.0, double x0 = 0.0) { return {ActivationKind::Logistic, k, x0, 0.0}; }
    static ActivationSpec clamped_relu() { return {ActivationKind::ClampedRelu}; }
    static ActivationSpec shifted_tanh(double k = 1.0, double x0 = 0.0) {
        return {ActivationKind::ShiftedTanh, k, x0, 0.0};
    }
    static ActivationSpec binary_step(double t = 0.0) { return {ActivationKind::BinaryStep, 1.0, 0.0, t}; }
    static ActivationSpec identity_clamped() { return {ActivationKind::IdentityClamped}; }

    double operator()(double u) const noexcept {
        switch (kind) {
            case ActivationKind::Logistic: return 1.0 / (1.0 + std::exp(-k * (u - x0)));
            case ActivationKind::ClampedRelu:
            case ActivationKind::IdentityClamped: return std::clamp(u, 0.0, 1.0);
            case ActivationKind::ShiftedTanh: return (1.0 + std::tanh(k * (u - x0))) / 2.0;
            case ActivationKind::BinaryStep: return u > t ? 1.0 : 0.0;
        }
        return 0.0;
    }

    /// The quantized activation [phi(u)]^n.
    double quantized(double u, GradedScale scale) const { return quantize_value((*this)(u), scale); }
    int quantized_index(double u, GradedScale scale) const { return quantize_index((*this)(u), scale); }

    Monotonicity monotonicity() const noexcept {
        switch (kind) {
            case ActivationKind::Logistic:
            case ActivationKind::ShiftedTanh: return k > 0 ? Monotonicity::Increasing : Monotonicity::None;
            default: return Monotonicity::NonDecreasing;
        }
    }

    friend bool operator==(const ActivationSpec&, const ActivationSpec&) = default;
};

/// Samples `count` points around the interesting part of the function and
/// checks the range and the declared monotonicity class. Returns an empty
/// string on success, else a description of the first failure.
inline std::string verify_activation(const ActivationSpec& phi, int count = 1000) {
    double lo = -10.0, hi = 10.0;
    if (phi.kind == ActivationKind::Logistic || phi.kind == ActivationKind::ShiftedTanh) {
        const double span = 10.0 / std::max(std::abs(phi.k), 1e-6);
        lo = phi.x0 - std::min(span, 30.0);
        hi = phi.x0 + std::min(span, 30.0);
    } else if (phi.kind == ActivationKind::BinaryStep) {
        lo = phi.t - 5.0;
        hi = phi.t + 5.0;
    } else {
        lo = -0.5;
        hi = 1.5;
    }
    const Monotonicity m = phi.monotonicity();
    double prev = 0.0;
    for (int i = 0; i < count; ++i) {
        const double u = lo + (hi - lo) * i / (count - 1);
        const double y = phi(u);
        if (!(y >= 0.0 && y <= 1.0)) return "value " + std::to_string(y) + " outside [0,1] at " + std::to_string(u);
        if (i > 0) {
            if (m == Monotonicity::Increasing && !(y > prev)) {
                return "not increasing near " + std::to_string(u);
            }
            if (m == Monotonicity::NonDecreasing && y < prev) {
                return "decreasing near " + std::to_string(u);
            }
        }
        prev = y;
    }
    return {};
}

inline nlohmann::json to_json(const ActivationSpec& phi) {
    nlohmann::json j{{"kind", std::string(to_string(phi.kind))}};
    if (phi.kind == ActivationKind::Logistic || phi.kind == ActivationKind::ShiftedTanh) {
        j["k"] = phi.k;
        j["x0"] = phi.x0;
    } else if (phi.kind == ActivationKind::BinaryStep) {
        j["t"] = phi.t;
    }
    return j;
}

inline ActivationSpec activation_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        throw InputError("activation needs a \"kind\" string");
    }
    const std::string kind = j["kind"].get<std::string>();
    auto num = [&](const char* key, double def) {
        if (!j.contains(key)) return def;
        if (!j[key].is_number()) throw InputError(std::string("activation parameter '") + key + "' must be a number");
        const double v = j[key].get<double>();
        if (!std::isfinite(v)) throw InputError(std::string("activation parameter '") + key + "' is not finite");
        return v;
    };
    ActivationSpec phi;
    if (kind == "logistic" || kind == "sigmoid") {
        phi = ActivationSpec::logistic(num("k", 1.0), num("x0", 0.0));
    } else if (kind == "shifted-tanh") {
        phi = ActivationSpec::shifted_tanh(num("k", 1.0), num("x0", 0.0));
    } else if (kind == "clamped-relu") {
        phi = ActivationSpec::clamped_relu();
    } else if (kind == "identity-clamped") {
        phi = ActivationSpec::identity_clamped();
    } else if (kind == "binary-step") {
        phi = ActivationSpec::binary_step(num("t", 0.0));
    } else if (kind == "softmax") {
        throw InputError("softmax is not a pointwise activation and cannot be represented");
    } else if (kind == "relu") {
        throw InputError("raw relu is unbounded; use clamped-relu");
    } else {
        throw InputError("unknown activation kind '" + kind + "'");
    }
    if (j.contains("monotonicity")) {
        const std::string declared = j["monotonicity"].get<std::string>();
        if (declared != to_string(phi.monotonicity())) {
            throw InputError("activation " + kind + " is " + std::string(to_string(phi.monotonicity())) +
                             ", not " + declared);
        }
    }
    if (auto err = verify_activation(phi); !err.empty()) throw InputError("activation " + kind + ": " + err);
    return phi;
}

using ActivationMap = std::map<std::string, ActivationSpec>;

inline nlohmann::json to_json(const ActivationMap& phis) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [name, phi] : phis) j[name] = to_json(phi);
    return j;
}

inline ActivationMap activation_map_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("activation map must be a JSON object");
    ActivationMap out;
    for (const auto& [name, spec] : j.items()) out[name] = activation_from_json(spec);
    return out;
}

}  // namespace fuzzyt
