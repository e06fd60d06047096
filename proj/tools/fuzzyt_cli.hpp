#pragma once

// The fuzzyt command line: argument handling and the report printers.
// Exit codes: 0 all checks pass, 1 a check fails, 2 usage or input error,
// 3 search budget exceeded.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "fuzzyt/fuzzyt.hpp"

namespace fuzzyt::cli {

using nlohmann::json;

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json read_json(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

inline void write_text(const std::string& path, const std::string& text) {
    if (const auto dir = std::filesystem::path(path).parent_path(); !dir.empty()) {
        std::filesystem::create_directories(dir);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

/// Sidecar holding the activation map of a knowledge base.
inline std::string activation_sidecar(const std::string& kb_path) { return kb_path + ".phi.json"; }

inline CombinationFamily family_from(const std::string& name) { return CombinationFamily::make(parse_family_name(name)); }

using AnyModel = std::variant<Interpretation, GradedInterpretation>;

/// Loads a model; graded when the file carries "grade" or `grade` > 0 (which re-quantizes).
inline AnyModel load_model(const std::string& path, const CombinationFamily& family, int grade) {
    const json j = read_json(path);
    if (j.contains("grade") && j["grade"].is_number_integer()) {
        auto I = interpretation_from_json(j, GradedAlgebra(family, GradedScale(j["grade"].get<int>())));
        if (grade > 0 && grade != I.algebra().n()) return quantize_model(I, GradedScale(grade));
        return I;
    }
    auto I = interpretation_from_json(j, FuzzyAlgebra(family));
    if (grade > 0) return quantize_model(I, GradedScale(grade));
    return I;
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = detail::trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

/// "k" or "k1..k2".
inline std::pair<int, int> parse_range(const std::string& s) {
    const auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            const int k = std::stoi(s);
            return {k, k};
        }
        const int a = std::stoi(s.substr(0, dots));
        const int b = std::stoi(s.substr(dots + 2));
        if (a > b) throw InputError("empty threshold range '" + s + "'");
        return {a, b};
    } catch (const std::logic_error&) {
        throw InputError("threshold range must look like 1..4, got '" + s + "'");
    }
}

/// One row of a threshold sweep: counterexample counts per k and |T(E)|.
struct CheckRow {
    std::string typical;  // E of T(E) <: F, empty for other axioms
    std::string consequent;
    std::string axiom;
    std::vector<std::size_t> counts;
    std::vector<bool> holds;
    std::optional<std::size_t> typical_count;
};

struct CheckReport {
    std::vector<int> ks;
    int denominator = 0;
    std::vector<CheckRow> rows;
    bool all_hold = true;
};

inline json to_json(const CheckReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        json counts = json::object();
        json holds = json::object();
        for (std::size_t i = 0; i < r.ks.size(); ++i) {
            const std::string key = r.denominator ? "k=" + std::to_string(r.ks[i]) : "k";
            counts[key] = row.counts[i];
            holds[key] = static_cast<bool>(row.holds[i]);
        }
        rows.push_back({{"E", row.typical},
                        {"F", row.consequent},
                        {"axiom", row.axiom},
                        {"counterexamples", counts},
                        {"holds", holds},
                        {"#T(E)", row.typical_count ? json(*row.typical_count) : json(nullptr)}});
    }
    json ks = json::array();
    for (int k : r.ks) ks.push_back(k);
    return {{"thresholds", ks}, {"n", r.denominator}, {"rows", rows}, {"all_hold", r.all_hold}};
}

template <class Algebra>
CheckReport run_checks(const BasicInterpretation<Algebra>& I, const std::vector<Axiom>& axioms,
                       std::optional<std::pair<int, int>> sweep, int denominator) {
    CheckReport rep;
    rep.denominator = sweep ? denominator : 0;
    if (sweep) {
        for (int k = sweep->first; k <= sweep->second; ++k) rep.ks.push_back(k);
    } else {
        rep.ks.push_back(0);
    }
    for (const auto& ax : axioms) {
        CheckRow row;
        row.axiom = to_string(ax);
        if (ax.is_inclusion()) {
            const auto& inc = ax.as_inclusion();
            if (ax.is_typicality_inclusion()) {
                row.typical = to_string(inc.lhs.child());
                row.typical_count = typical_set(I, inc.lhs.child()).size();
            } else {
                row.typical = to_string(inc.lhs);
            }
            row.consequent = to_string(inc.rhs);
        }
        for (int k : rep.ks) {
            Axiom a = ax;
            if (sweep) a.threshold = Threshold::fraction(k, denominator);
            const auto r = check_axiom(I, a);
            row.counts.push_back(r.counterexamples.size());
            row.holds.push_back(r.holds);
            rep.all_hold = rep.all_hold && r.holds;
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

inline void print_table(std::ostream& out, const CheckReport& r) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> head{"E", "F"};
    for (int k : r.ks) head.push_back(r.denominator ? "k=" + std::to_string(k) : "counterexamples");
    head.push_back("#T(E)");
    if (!r.denominator) head.insert(head.begin() + 2, "holds");
    cells.push_back(head);
    for (const auto& row : r.rows) {
        std::vector<std::string> line{row.typical.empty() ? row.axiom : row.typical, row.consequent};
        if (!r.denominator) line.push_back(row.holds[0] ? "yes" : "no");
        for (auto c : row.counts) line.push_back(std::to_string(c));
        line.push_back(row.typical_count ? std::to_string(*row.typical_count) : "-");
        cells.push_back(std::move(line));
    }
    std::vector<std::size_t> width(head.size(), 0);
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    }
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (i + 1 == line.size()) {
                out << line[i];
            } else {
                out << std::left << std::setw(static_cast<int>(width[i])) << line[i] << "  ";
            }
        }
        out << '\n';
    }
    if (r.denominator) out << "thresholds k/" << r.denominator << '\n';
}

/// The emotion network: 17 action-unit inputs feeding four logistic outputs.
struct EmotionData {
    Network network;
    std::string stimuli_csv;
    std::string formulas;
};

inline const std::vector<std::string>& emotion_inputs() {
    static const std::vector<std::string> aus{"au1",  "au2",  "au4",  "au5",  "au6",  "au7",  "au9",  "au10", "au12",
                                              "au14", "au15", "au17", "au20", "au23", "au25", "au26", "au45"};
    return aus;
}

inline EmotionData synth_emotion(std::uint64_t seed, std::size_t stimuli, int grade = 5) {
    const std::vector<std::pair<std::string, std::vector<std::string>>> prototypes{
        {"surprise", {"au1", "au2", "au5", "au26"}},
        {"fear", {"au1", "au2", "au4", "au5", "au20", "au26"}},
        {"happiness", {"au6", "au12", "au14"}},
        {"anger", {"au4", "au5", "au7", "au23"}},
    };
    Rng rng = trial_rng(seed, 0);
    std::vector<Unit> units;
    std::vector<Edge> edges;
    for (const auto& au : emotion_inputs()) units.push_back({au, std::nullopt, 0.0, std::nullopt});
    std::uniform_real_distribution<double> strong(1.5, 2.5), weak(-1.0, 0.2), bias(-3.5, -2.5);
    for (const auto& [emotion, aus] : prototypes) {
        units.push_back({emotion, ActivationSpec::logistic(), bias(rng), std::nullopt});
        for (const auto& au : emotion_inputs()) {
            const bool proto = std::find(aus.begin(), aus.end(), au) != aus.end();
            edges.push_back({au, emotion, proto ? strong(rng) : weak(rng)});
        }
    }
    Network net(std::move(units), std::move(edges), emotion_inputs());

    std::ostringstream csv;
    csv << "id";
    for (const auto& au : emotion_inputs()) csv << ',' << au;
    csv << '\n';
    std::uniform_int_distribution<int> pick(0, 4), hi(2, grade), lo(1, std::max(1, grade / 2));
    std::bernoulli_distribution on(0.85), noise(0.15);
    for (std::size_t s = 0; s < stimuli; ++s) {
        const int e = pick(rng);  // 4 = neutral
        csv << "img" << s;
        for (const auto& au : emotion_inputs()) {
            int v = 0;
            const bool proto = e < 4 && std::find(prototypes[static_cast<std::size_t>(e)].second.begin(),
                                                   prototypes[static_cast<std::size_t>(e)].second.end(),
                                                   au) != prototypes[static_cast<std::size_t>(e)].second.end();
            if (proto) {
                if (on(rng)) v = hi(rng);
            } else if (noise(rng)) {
                v = lo(rng);
            }
            csv << ',' << format_weight(static_cast<double>(v) / grade);
        }
        csv << '\n';
    }
    const std::string formulas =
        "# Typicality inclusions checked on the emotion model; the threshold is swept with --thresholds.\n"
        "T(surprise) <: au1 or au2 or au5 >= 1\n"
        "T(surprise) <: au1 or au5 or au15 or au20 or au26 >= 1\n"
        "T(fear) <: au1 or au2 or au4 or au5 >= 1\n"
        "T(fear) <: au1 or au2 or au4 or au5 or au20 or au26 >= 1\n"
        "T(happiness) <: au1 or au6 or au12 or au14 >= 1\n"
        "T(happiness) <: au6 or au12 >= 1\n"
        "T(happiness) <: au6 and au12 >= 1\n"
        "T(happiness) <: au12 >= 1\n"
        "T(anger) <: au4 or au5 or au7 or au23 >= 1\n";
    return {std::move(net), csv.str(), formulas};
}

/// The logistic unit Ck = phi(a - b) over inputs a and b.
inline Network synth_demo() {
    return Network({{"a", std::nullopt, 0.0, std::nullopt},
                    {"b", std::nullopt, 0.0, std::nullopt},
                    {"Ck", ActivationSpec::logistic(), 0.0, std::nullopt}},
                   {{"a", "Ck", 1.0}, {"b", "Ck", -1.0}}, {"a", "b"});
}

struct Io {
    std::ostream& out;
    std::ostream& err;
};

inline void emit(Io io, const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        io.out << text;
    } else {
        write_text(out_path, text);
    }
}

struct BuildModelArgs {
    std::string network, stimuli, concepts, family = "goedel-involutive", out;
    int grade = 0;
};

inline int cmd_build_model(const BuildModelArgs& a, Io io) {
    const Network net = network_from_json(read_json(a.network));
    std::ifstream in(a.stimuli);
    if (!in) throw InputError("cannot open '" + a.stimuli + "'");
    const Stimuli delta = stimuli_from_csv(net, read_csv(in));
    ModelOptions mo;
    mo.concepts = split_list(a.concepts);
    mo.family = family_from(a.family);
    const json j = a.grade > 0 ? to_json(build_graded_model(net, delta, GradedScale(a.grade), mo))
                               : to_json(build_model(net, delta, mo));
    emit(io, a.out, j.dump(1) + "\n");
    if (!a.out.empty() && a.out != "-") io.err << "wrote " << delta.size() << " elements to " << a.out << '\n';
    return kExitPass;
}

struct CheckArgs {
    std::string model, family = "goedel-involutive", thresholds;
    std::vector<std::string> axioms;
    std::string axioms_file;
    int grade = 0;
    bool json_out = false;
};

inline int cmd_check(const CheckArgs& a, Io io) {
    if (a.axioms.empty() && a.axioms_file.empty()) throw InputError("give --axiom or --axioms");
    const AnyModel model = load_model(a.model, family_from(a.family), a.grade);
    int n = a.grade;
    if (n == 0 && std::holds_alternative<GradedInterpretation>(model)) n = std::get<GradedInterpretation>(model).algebra().n();
    std::optional<std::pair<int, int>> sweep;
    if (!a.thresholds.empty()) {
        if (n == 0) throw InputError("--thresholds needs --grade or a graded model");
        sweep = parse_range(a.thresholds);
        if (sweep->first < 0 || sweep->second > n) throw InputError("thresholds must lie in 0.." + std::to_string(n));
    }
    std::vector<Axiom> axioms;
    for (const auto& s : a.axioms) axioms.push_back(parse_axiom(s));
    if (!a.axioms_file.empty()) {
        std::vector<Diagnostic> warnings;
        const auto doc = parse_kb(read_file(a.axioms_file), {}, &warnings);
        for (const auto& w : warnings) io.err << a.axioms_file << ":" << w.line << ": warning: " << w.message << '\n';
        axioms.insert(axioms.end(), doc.strict_axioms.begin(), doc.strict_axioms.end());
        axioms.insert(axioms.end(), doc.assertions.begin(), doc.assertions.end());
    }
    const CheckReport rep = std::visit([&](const auto& I) { return run_checks(I, axioms, sweep, n); }, model);
    if (a.json_out) {
        io.out << to_json(rep).dump(1) << '\n';
    } else {
        print_table(io.out, rep);
    }
    return rep.all_hold ? kExitPass : kExitFail;
}

struct ExtractArgs {
    std::string network, out;
};

inline int cmd_extract(const ExtractArgs& a, Io io) {
    const auto ex = extract_kb(network_from_json(read_json(a.network)));
    for (const auto& w : ex.warnings) io.err << "warning: " << w << '\n';
    const std::string kb = serialize(ex.kb.document());
    if (a.out.empty() || a.out == "-") {
        io.out << kb;
        io.out << "# activations: " << to_json(ex.activations).dump() << '\n';
    } else {
        write_text(a.out, kb);
        write_text(activation_sidecar(a.out), to_json(ex.activations).dump(1) + "\n");
        io.err << "wrote " << a.out << " and " << activation_sidecar(a.out) << '\n';
    }
    return kExitPass;
}

struct KbInput {
    WeightedKb kb;
    ActivationMap phis;
};

inline KbInput load_kb(const std::string& path, const std::string& activations, Io io,
                       std::optional<GradedScale> scale = {}) {
    std::vector<Diagnostic> warnings;
    ParseOptions po;
    po.scale = scale;
    auto doc = parse_kb(read_file(path), po, &warnings);
    for (const auto& w : warnings) io.err << path << ":" << w.line << ": warning: " << w.message << '\n';
    const std::string sidecar = activations.empty() ? activation_sidecar(path) : activations;
    ActivationMap phis;
    if (std::filesystem::exists(sidecar)) {
        phis = activation_map_from_json(read_json(sidecar));
    } else if (!activations.empty()) {
        throw InputError("cannot open '" + sidecar + "'");
    }
    return {WeightedKb(std::move(doc)), std::move(phis)};
}

struct EntailArgs {
    std::string kb, activations, axiom, mode = "auto", family = "goedel-involutive";
    int grade = 0;
    unsigned long long budget = 100'000'000ULL;
    unsigned jobs = 0;
    bool all_counterexamples = false;
    bool json_out = false;
};

inline json valuation_json(const EntailmentResult& r, const std::vector<int>& v) {
    json j = json::object();
    for (const auto& [name, d] : r.as_degrees(v)) j[name] = d;
    return j;
}

inline int cmd_entail(const EntailArgs& a, Io io) {
    if (a.grade < 1) throw InputError("entail needs --grade n (n >= 1)");
    const GradedScale scale(a.grade);
    const KbInput in = load_kb(a.kb, a.activations, io, scale);
    const Axiom query = parse_axiom(a.axiom, ParseOptions{scale});
    EntailmentOptions opts;
    opts.mode = parse_search_mode(a.mode);
    opts.family = family_from(a.family);
    opts.budget = a.budget;
    if (a.jobs > 0) opts.jobs = a.jobs;
    opts.collect_counterexamples = a.all_counterexamples;
    const auto r = entails(in.kb, in.phis, query, scale, opts);
    json j{{"query", to_string(query)},
           {"entailed", r.entailed},
           {"vacuous", r.vacuous},
           {"inconsistent", r.inconsistent},
           {"mode", r.mode},
           {"grade", a.grade},
           {"value", scale.value(r.value)},
           {"maxValue", r.max_value ? json(scale.value(*r.max_value)) : json(nullptr)},
           {"counterexample", r.counterexample ? valuation_json(r, *r.counterexample) : json(nullptr)},
           {"witness", r.witness ? valuation_json(r, *r.witness) : json(nullptr)},
           {"explored", r.stats.explored},
           {"pruned", r.stats.pruned},
           {"coherent", r.stats.coherent},
           {"elapsedMs", r.elapsed_ms}};
    if (a.all_counterexamples) {
        json all = json::array();
        for (const auto& v : r.counterexamples) all.push_back(valuation_json(r, v));
        j["counterexamples"] = all;
        j["counterexampleCount"] = r.counterexample_count;
    }
    if (a.json_out) {
        io.out << j.dump(1) << '\n';
    } else {
        io.out << to_string(query) << ": " << (r.entailed ? "entailed" : "not entailed")
               << (r.vacuous ? " (vacuous: no positive typical valuation)" : "")
               << (r.inconsistent ? " (inconsistent knowledge base)" : "") << '\n';
        io.out << "mode " << r.mode << ", value " << scale.value(r.value);
        if (r.max_value) io.out << ", max " << scale.value(*r.max_value);
        io.out << '\n';
        if (r.counterexample) io.out << "counterexample " << valuation_json(r, *r.counterexample).dump() << '\n';
        if (r.witness) io.out << "witness " << valuation_json(r, *r.witness).dump() << '\n';
        io.out << "explored " << r.stats.explored << ", pruned " << r.stats.pruned << ", coherent "
               << r.stats.coherent << ", " << std::fixed << std::setprecision(1) << r.elapsed_ms << " ms\n";
    }
    return r.entailed ? kExitPass : kExitFail;
}

struct CoherenceArgs {
    std::string kb, activations, model, kind = "coherent", family = "goedel-involutive";
    double tol = -1.0;
    int grade = 0;
    bool json_out = false;
};

inline int cmd_coherence(const CoherenceArgs& a, Io io) {
    const KbInput in = load_kb(a.kb, a.activations, io);
    const AnyModel model = load_model(a.model, family_from(a.family), a.grade);
    json j;
    bool holds = false;
    if (a.kind == "phi") {
        const double tol = a.tol < 0 ? kDefaultEpsilon : a.tol;
        const PhiReport r = std::visit([&](const auto& I) { return check_phi_coherent(in.kb, I, in.phis, tol); }, model);
        holds = r.holds;
        json worst = json::array();
        for (const auto& res : r.residuals) {
            if (res.residual > tol && worst.size() < 20) {
                worst.push_back({{"concept", res.concept_name}, {"element", res.element},
                                 {"degree", res.degree}, {"expected", res.expected}, {"residual", res.residual}});
            }
        }
        j = {{"kind", "phi"}, {"holds", holds}, {"max_residual", r.max_residual}, {"tolerance", tol}, {"failures", worst}};
    } else if (a.kind == "faithful" || a.kind == "coherent") {
        PreferenceOptions po;
        po.weight_tolerance = a.tol;
        const PreferenceReport r = std::visit(
            [&](const auto& I) { return a.kind == "faithful" ? check_faithful(in.kb, I, po) : check_coherent(in.kb, I, po); },
            model);
        holds = r.holds;
        const auto& domain = std::visit([](const auto& I) -> const std::vector<std::string>& { return I.domain(); }, model);
        json viol = json::array();
        for (const auto& v : r.violations) {
            viol.push_back({{"concept", v.concept_name}, {"x", domain[v.x]}, {"y", domain[v.y]},
                            {"weight_x", v.weight_x == kNotMember ? json("-inf") : json(v.weight_x)},
                            {"weight_y", v.weight_y == kNotMember ? json("-inf") : json(v.weight_y)},
                            {"degree_x", v.degree_x}, {"degree_y", v.degree_y}});
        }
        json axf = json::array();
        for (const auto& f : r.axiom_failures) axf.push_back({{"axiom", f.axiom}, {"value", f.value}});
        j = {{"kind", a.kind}, {"holds", holds}, {"violation_count", r.violation_count},
             {"violations", viol}, {"axiom_failures", axf}};
    } else {
        throw InputError("--kind must be faithful, coherent or phi");
    }
    if (a.json_out) {
        io.out << j.dump(1) << '\n';
    } else {
        io.out << a.kind << ": " << (holds ? "holds" : "fails") << '\n';
        if (a.kind == "phi") {
            io.out << "max residual " << j["max_residual"].get<double>() << '\n';
        } else {
            io.out << j["violation_count"].get<std::size_t>() << " violating pairs\n";
            for (const auto& v : j["violations"]) {
                io.out << "  " << v["concept"].get<std::string>() << ": " << v["x"].get<std::string>() << " vs "
                       << v["y"].get<std::string>() << " W " << v["weight_x"].dump() << " / " << v["weight_y"].dump()
                       << '\n';
            }
            for (const auto& f : j["axiom_failures"]) io.out << "  axiom fails: " << f["axiom"].get<std::string>() << '\n';
        }
    }
    return holds ? kExitPass : kExitFail;
}

struct FuzzArgs {
    std::string suite = "klm", family = "goedel", threshold = "1", fixtures, activation = "logistic";
    std::size_t iterations = 10000;
    std::uint64_t seed = 1;
    int grades = 10;
    std::size_t max_domain = 0;
    bool roles = false;
    unsigned jobs = 0;
    bool json_out = false;
};

inline int cmd_fuzz(const FuzzArgs& a, Io io) {
    GeneratorConfig cfg;
    cfg.seed = a.seed;
    cfg.iterations = a.iterations;
    cfg.family = family_from(a.family);
    cfg.grades = a.grades;
    cfg.roles = a.roles;
    cfg.jobs = a.jobs > 0 ? a.jobs : default_jobs();
    if (a.roles) {
        cfg.max_depth = 2;
        cfg.max_domain = 6;
    }
    if (a.max_domain > 0) cfg.max_domain = a.max_domain;
    cfg.threshold = Threshold::parse(a.threshold);
    if (a.suite == "hierarchy") {
        NetworkConfig nc;
        nc.activation = activation_from_json(json{{"kind", a.activation}});
        cfg.grades = 0;
        const auto rep = hierarchy_trials(cfg, nc);
        if (!a.fixtures.empty()) {
            std::filesystem::create_directories(a.fixtures);
            for (const auto& g : rep.coherence_gaps) {
                write_text((std::filesystem::path(a.fixtures) /
                            ("hierarchy-" + std::to_string(a.seed) + "-" + std::to_string(g["trial"].get<std::size_t>()) + ".json"))
                               .string(),
                           g.dump(1) + "\n");
            }
        }
        if (a.json_out) {
            io.out << to_json(rep).dump(1) << '\n';
        } else {
            io.out << "hierarchy: " << rep.trials << " networks, phi-coherent " << rep.phi_coherent << ", coherent "
                   << rep.coherent << ", faithful " << rep.faithful << ", implication failures "
                   << rep.implication_failures << "\ndigest " << rep.digest << '\n';
        }
        return rep.implication_failures == 0 ? kExitPass : kExitFail;
    }
    SuiteReport rep;
    if (a.suite == "klm") {
        rep = klm_suite(cfg);
    } else if (a.suite == "ft") {
        rep = ft_suite(cfg);
    } else {
        throw InputError("--suite must be klm, ft or hierarchy");
    }
    if (!a.fixtures.empty()) {
        for (const auto& p : write_fixtures(rep, a.fixtures)) io.err << "fixture " << p << '\n';
    }
    if (a.json_out) {
        io.out << to_json(rep).dump(1) << '\n';
    } else {
        io.out << rep.suite << ": " << rep.trials << " trials, seed " << rep.seed << ", family "
               << to_string(cfg.family.name) << '\n';
        for (const auto& t : rep.tallies) {
            io.out << "  " << std::left << std::setw(6) << t.name << " applicable " << t.applicable << ", violations "
                   << t.violations << ", vacuous " << t.vacuous << '\n';
        }
        io.out << "digest " << rep.digest << '\n';
    }
    return rep.violations() == 0 ? kExitPass : kExitFail;
}

struct SynthArgs {
    std::string kind = "emotion", out_dir = "data/emotion";
    std::uint64_t seed = 42;
    std::size_t stimuli = 1000;
    int grade = 5;
};

inline int cmd_synth(const SynthArgs& a, Io io) {
    const std::filesystem::path dir(a.out_dir);
    if (a.kind == "emotion") {
        const auto d = synth_emotion(a.seed, a.stimuli, a.grade);
        write_text((dir / "net.json").string(), to_json(d.network).dump(1) + "\n");
        write_text((dir / "stimuli.csv").string(), d.stimuli_csv);
        write_text((dir / "formulas.kb").string(), d.formulas);
    } else if (a.kind == "demo") {
        write_text((dir / "net.json").string(), to_json(synth_demo()).dump(1) + "\n");
    } else {
        throw InputError("synth kind must be emotion or demo");
    }
    io.err << "wrote " << a.kind << " data to " << dir.string() << '\n';
    return kExitPass;
}

/// Parses and runs one command line.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Fuzzy description logic with typicality: model checking and entailment for networks", "fuzzyt"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "fuzzyt 1.0.0");
    const Io io{out, err};
    std::function<int()> action;
    const std::string families = "goedel, goedel-involutive, lukasiewicz or product";

    BuildModelArgs bm;
    auto* c_bm = app.add_subcommand("build-model", "Interpretation induced by a network on a stimulus set");
    c_bm->add_option("--network", bm.network, "network JSON")->required();
    c_bm->add_option("--stimuli", bm.stimuli, "stimulus CSV")->required();
    c_bm->add_option("--grade", bm.grade, "quantize activations onto C_n");
    c_bm->add_option("--concepts", bm.concepts, "comma-separated concepts to keep");
    c_bm->add_option("--family", bm.family, families);
    c_bm->add_option("--out", bm.out, "output file (default stdout)");
    c_bm->callback([&] { action = [&] { return cmd_build_model(bm, io); }; });

    CheckArgs ck;
    auto* c_ck = app.add_subcommand("check", "Model checking of axioms on an interpretation");
    c_ck->add_option("--model", ck.model, "interpretation JSON")->required();
    c_ck->add_option("--axiom", ck.axioms, "axiom text (repeatable)");
    c_ck->add_option("--axioms", ck.axioms_file, "file of axioms");
    c_ck->add_option("--family", ck.family, families);
    c_ck->add_option("--grade", ck.grade, "quantize the model onto C_n");
    c_ck->add_option("--thresholds", ck.thresholds, "sweep thresholds k/n, e.g. 1..4");
    c_ck->add_flag("--json", ck.json_out, "JSON report");
    c_ck->callback([&] { action = [&] { return cmd_check(ck, io); }; });

    ExtractArgs ex;
    auto* c_ex = app.add_subcommand("extract", "Weighted knowledge base of a network");
    c_ex->add_option("--network", ex.network, "network JSON")->required();
    c_ex->add_option("--out", ex.out, "output .kb; activations go to <out>.phi.json");
    c_ex->callback([&] { action = [&] { return cmd_extract(ex, io); }; });

    EntailArgs en;
    auto* c_en = app.add_subcommand("entail", "Canonical phi_n-coherent entailment");
    c_en->add_option("--kb", en.kb, "knowledge base")->required();
    c_en->add_option("--activations", en.activations, "activation map (default <kb>.phi.json)");
    c_en->add_option("--axiom", en.axiom, "query")->required();
    c_en->add_option("--grade", en.grade, "truth space C_n")->required();
    c_en->add_option("--mode", en.mode, "auto, acyclic or general");
    c_en->add_option("--family", en.family, families);
    c_en->add_option("--budget", en.budget, "maximum valuations explored");
    c_en->add_option("--jobs", en.jobs, "worker threads");
    c_en->add_flag("--all-counterexamples", en.all_counterexamples, "list every violating valuation");
    c_en->add_flag("--json", en.json_out, "JSON report");
    c_en->callback([&] { action = [&] { return cmd_entail(en, io); }; });

    CoherenceArgs co;
    auto* c_co = app.add_subcommand("coherence", "Faithful, coherent or phi-coherent check of a model");
    c_co->add_option("--kb", co.kb, "knowledge base")->required();
    c_co->add_option("--activations", co.activations, "activation map (default <kb>.phi.json)");
    c_co->add_option("--model", co.model, "interpretation JSON")->required();
    c_co->add_option("--kind", co.kind, "faithful, coherent or phi");
    c_co->add_option("--tol", co.tol, "residual or weight tolerance");
    c_co->add_option("--grade", co.grade, "quantize the model onto C_n");
    c_co->add_option("--family", co.family, families);
    c_co->add_flag("--json", co.json_out, "JSON report");
    c_co->callback([&] { action = [&] { return cmd_coherence(co, io); }; });

    FuzzArgs fz;
    auto* c_fz = app.add_subcommand("fuzz", "Seeded property suites");
    c_fz->add_option("--suite", fz.suite, "klm, ft or hierarchy");
    c_fz->add_option("--iterations", fz.iterations, "trials");
    c_fz->add_option("--seed", fz.seed, "seed");
    c_fz->add_option("--family", fz.family, families);
    c_fz->add_option("--grades", fz.grades, "degrees on C_n, 0 for uniform doubles");
    c_fz->add_option("--threshold", fz.threshold, "threshold of the postulates, e.g. 4/5");
    c_fz->add_option("--max-domain", fz.max_domain, "largest domain");
    c_fz->add_flag("--roles", fz.roles, "include role restrictions");
    c_fz->add_option("--activation", fz.activation, "activation of hierarchy networks");
    c_fz->add_option("--fixtures", fz.fixtures, "directory for failure fixtures");
    c_fz->add_option("--jobs", fz.jobs, "worker threads");
    c_fz->add_flag("--json", fz.json_out, "JSON report");
    c_fz->callback([&] { action = [&] { return cmd_fuzz(fz, io); }; });

    SynthArgs sy;
    auto* c_sy = app.add_subcommand("synth", "Write bundled synthetic data");
    c_sy->add_option("kind", sy.kind, "emotion or demo");
    c_sy->add_option("--out-dir", sy.out_dir, "output directory");
    c_sy->add_option("--seed", sy.seed, "seed");
    c_sy->add_option("--stimuli", sy.stimuli, "stimulus count");
    c_sy->add_option("--grade", sy.grade, "input grades");
    c_sy->callback([&] { action = [&] { return cmd_synth(sy, io); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::CallForVersion&) {
        out << app.version() << '\n';
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "fuzzyt: " << e.what() << '\n';
        if (auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front()) {
            err << "see: fuzzyt " << (sub == &app ? "" : sub->get_name() + " ") << "--help\n";
        }
        return kExitUsage;
    }
    try {
        return action ? action() : kExitUsage;
    } catch (const BudgetExceeded& e) {
        err << "fuzzyt: " << e.what() << " after " << e.explored() << " valuations\n";
        return kExitBudget;
    } catch (const Error& e) {
        err << "fuzzyt: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "fuzzyt: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace fuzzyt::cli
