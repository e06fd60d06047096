#pragma once

// Entailment for role-free weighted knowledge bases over C_n.
//
// The canonical model has one element per coherent valuation: an assignment
// of a grade to every concept name such that each distinguished concept C
// equals phi_n(sum_h w_h D_h) and every strict inclusion holds locally. A
// query is entailed when it holds in that model.
//
// In acyclic mode the non-distinguished ("free") names are enumerated and the
// distinguished ones are computed in dependency order. In general mode every
// name is enumerated and the equations are used as a filter. The grid is cut
// into a fixed set of cells (independent of the thread count); each cell is
// searched depth first with interval bounds, so verdicts, counterexamples and
// statistics do not depend on scheduling.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fuzzyt/bridge.hpp"
#include "fuzzyt/parallel.hpp"
#include "fuzzyt/weighted_kb.hpp"

namespace fuzzyt {

enum class SearchMode { Auto, Acyclic, General };

inline std::string_view to_string(SearchMode m) {
    switch (m) {
        case SearchMode::Auto: return "auto";
        case SearchMode::Acyclic: return "acyclic";
        case SearchMode::General: return "general";
    }
    return "?";
}

inline SearchMode parse_search_mode(std::string_view s) {
    if (s == "auto") return SearchMode::Auto;
    if (s == "acyclic" || s == "acyclic-grid") return SearchMode::Acyclic;
    if (s == "general" || s == "general-search") return SearchMode::General;
    throw InputError("unknown search mode '" + std::string(s) + "'");
}

struct EntailmentOptions {
    SearchMode mode = SearchMode::Auto;
    CombinationFamily family = CombinationFamily::make(FamilyName::GoedelInvolutive);
    /// Maximum number of complete valuations examined before aborting.
    unsigned long long budget = 100'000'000ULL;
    unsigned jobs = default_jobs();
    /// Keep every violating valuation, not just the first.
    bool collect_counterexamples = false;
    bool prune = true;
    /// Names added to the valuation even if neither the KB nor the query mentions them.
    std::vector<std::string> extra_names;
};

struct EntailmentStats {
    /// Complete valuations examined, valid or not.
    unsigned long long explored = 0;
    /// Complete valuations skipped by bounds.
    unsigned long long pruned = 0;
    /// Coherent valuations visited while evaluating the query.
    unsigned long long coherent = 0;
};

struct EntailmentResult {
    bool entailed = false;
    /// The query's typicality concept has no positive coherent valuation.
    bool vacuous = false;
    /// There is no coherent valuation at all, or an assertion cannot be satisfied.
    bool inconsistent = false;
    GradedScale scale{1};
    std::string mode;
    /// Concept names, sorted; valuations are numerator vectors in this order.
    std::vector<std::string> names;
    /// Minimum over coherent valuations of the pointwise query value (numerator).
    int value = 0;
    /// Maximum positive grade of C for a query T(C) <: D (numerator), if any.
    std::optional<int> max_value;
    /// Least violating valuation in enumeration order (>= and > queries).
    std::optional<std::vector<int>> counterexample;
    /// First valuation meeting the bound (<= and < queries).
    std::optional<std::vector<int>> witness;
    std::size_t counterexample_count = 0;
    /// All violating valuations in enumeration order, when requested.
    std::vector<std::vector<int>> counterexamples;
    EntailmentStats stats;
    double elapsed_ms = 0.0;

    std::map<std::string, double> as_degrees(const std::vector<int>& v) const {
        std::map<std::string, double> out;
        for (std::size_t i = 0; i < names.size(); ++i) out[names[i]] = scale.value(v[i]);
        return out;
    }
};

struct ValuationSet {
    std::vector<std::string> names;
    GradedScale scale{1};
    std::vector<std::vector<int>> rows;
};

namespace detail {

/// A concept compiled to postfix form over valuation slots.
struct Program {
    struct Op {
        ConceptKind kind;
        int arg = -1;
    };
    std::vector<Op> ops;
};

struct Interval {
    int lo = 0;
    int hi = 0;
};

class Search {
public:
    Search(const WeightedKb& K, const ActivationMap& phis, GradedScale scale, const std::optional<Axiom>& query,
           const EntailmentOptions& opts)
        : alg_(opts.family, scale), opts_(opts), n_(scale.n()) {
        validate(K, query);
        std::set<std::string> names;
        auto add_names = [&](const std::set<std::string>& s) { names.insert(s.begin(), s.end()); };
        for (const auto& ax : K.document().strict_axioms) add_names(ax.concept_names());
        for (const auto& ax : K.document().assertions) add_names(ax.concept_names());
        for (const auto& b : K.document().blocks) {
            names.insert(b.concept_name);
            for (const auto& wi : b.inclusions) add_names(wi.rhs.concept_names());
        }
        if (query) add_names(query->concept_names());
        names.insert(opts.extra_names.begin(), opts.extra_names.end());
        names_.assign(names.begin(), names.end());
        for (std::size_t i = 0; i < names_.size(); ++i) slot_[names_[i]] = static_cast<int>(i);

        is_dist_.assign(names_.size(), false);
        for (const auto& b : K.document().blocks) {
            Dist d;
            d.slot = slot_.at(b.concept_name);
            auto it = phis.find(b.concept_name);
            if (it == phis.end()) throw InputError("no activation function for '" + b.concept_name + "'");
            d.phi = it->second;
            d.monotone = d.phi.monotonicity() != Monotonicity::None;
            for (const auto& wi : b.inclusions) {
                d.terms.push_back({compile(wi.rhs), wi.weight});
                wi.rhs.collect_concept_names(d.deps);
            }
            is_dist_[d.slot] = true;
            dists_.push_back(std::move(d));
        }
        for (const auto& ax : K.document().strict_axioms) {
            const auto& inc = ax.as_inclusion();
            strict_.push_back({compile(inc.lhs), compile(inc.rhs), ax.comparator, ax.threshold});
        }
        for (const auto& ax : K.document().assertions) {
            const auto& ca = std::get<ConceptAssertion>(ax.body);
            assertions_[ca.individual].push_back({compile(ca.expr), {}, ax.comparator, ax.threshold});
        }

        const bool acyclic = order_distinguished();
        if (opts.mode == SearchMode::Acyclic && !acyclic) {
            throw InputError("the knowledge base has a cyclic dependency between distinguished concepts");
        }
        acyclic_ = opts.mode == SearchMode::Acyclic || (opts.mode == SearchMode::Auto && acyclic);
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (!acyclic_ || !is_dist_[i]) order_.push_back(static_cast<int>(i));
        }
        if (query) {
            const auto& inc = query->as_inclusion();
            query_lhs_ = compile(inc.lhs);
            query_rhs_ = compile(inc.rhs);
        }
        // Cells: enough prefix variables to give at least 64 independent units of work.
        std::size_t cells = 1;
        prefix_ = 0;
        while (prefix_ < order_.size() && cells < 64) {
            cells *= static_cast<std::size_t>(n_ + 1);
            ++prefix_;
        }
        cells_ = cells;
    }

    const std::vector<std::string>& names() const noexcept { return names_; }
    bool acyclic() const noexcept { return acyclic_; }
    const GradedAlgebra& algebra() const noexcept { return alg_; }
    const std::vector<ConceptExpr>& targets() const noexcept { return targets_; }
    std::size_t cells() const noexcept { return cells_; }

    /// (n+1)^k, saturating.
    unsigned long long space(std::size_t k) const {
        unsigned long long s = 1;
        for (std::size_t i = 0; i < k; ++i) {
            if (s > (~0ULL) / static_cast<unsigned long long>(n_ + 1)) return ~0ULL;
            s *= static_cast<unsigned long long>(n_ + 1);
        }
        return s;
    }
    unsigned long long total_space() const { return space(order_.size()); }

    /// Per-cell search state.
    struct Ctx {
        std::vector<int> val;
        std::vector<Interval> box;
        std::vector<int> stack;
        std::vector<Interval> istack;
        unsigned long long explored = 0;
        unsigned long long pruned = 0;
        unsigned long long flushed = 0;
    };

    /// make(cell) returns the Visitor for one cell: prune(ctx) is asked at inner
    /// nodes when `bounds` is set, leaf(ctx) runs on every coherent valuation.
    template <class MakeVisitor>
    void run(MakeVisitor&& make, bool bounds, EntailmentStats& stats) {
        if (!bounds && total_space() > opts_.budget) {
            throw BudgetExceeded(opts_.budget, 0, partial_bound_);
        }
        std::vector<BlockRange> ranges;
        for (std::size_t c = 0; c < cells_; ++c) ranges.push_back({c, c + 1});
        std::vector<unsigned long long> explored(cells_, 0), pruned(cells_, 0);
        for_each_block(ranges, opts_.jobs, [&](std::size_t c, BlockRange) {
            Ctx ctx;
            ctx.val.assign(names_.size(), 0);
            ctx.box.assign(names_.size(), {0, n_});
            auto visitor = make(c);
            std::size_t rest = c;
            for (std::size_t d = prefix_; d-- > 0;) {
                ctx.val[order_[d]] = static_cast<int>(rest % static_cast<std::size_t>(n_ + 1));
                rest /= static_cast<std::size_t>(n_ + 1);
            }
            dfs(ctx, prefix_, visitor, bounds);
            flush(ctx);
            explored[c] = ctx.explored;
            pruned[c] = ctx.pruned;
        });
        for (std::size_t c = 0; c < cells_; ++c) {
            stats.explored += explored[c];
            stats.pruned += pruned[c];
        }
    }

    int eval(const Program& p, Ctx& ctx, const std::vector<int>* typ_max = nullptr) const {
        auto& st = ctx.stack;
        st.clear();
        for (const auto& op : p.ops) {
            switch (op.kind) {
                case ConceptKind::Top: st.push_back(alg_.top()); break;
                case ConceptKind::Bot: st.push_back(0); break;
                case ConceptKind::Name: st.push_back(ctx.val[op.arg]); break;
                case ConceptKind::Not: st.back() = alg_.negate(st.back()); break;
                case ConceptKind::And:
                case ConceptKind::Or: {
                    const int b = st.back();
                    st.pop_back();
                    st.back() = op.kind == ConceptKind::And ? alg_.tnorm(st.back(), b) : alg_.snorm(st.back(), b);
                    break;
                }
                case ConceptKind::Typ: {
                    if (!typ_max) throw InputError("typicality evaluated before its maximum is known");
                    const int m = (*typ_max)[op.arg];
                    if (!(st.back() > 0 && st.back() == m)) st.back() = 0;
                    break;
                }
                default: throw InputError("role restriction in a role-free evaluation");
            }
        }
        return st.back();
    }

    Interval bound(const Program& p, Ctx& ctx) const {
        auto& st = ctx.istack;
        st.clear();
        for (const auto& op : p.ops) {
            switch (op.kind) {
                case ConceptKind::Top: st.push_back({alg_.top(), alg_.top()}); break;
                case ConceptKind::Bot: st.push_back({0, 0}); break;
                case ConceptKind::Name: st.push_back(ctx.box[op.arg]); break;
                case ConceptKind::Not: {
                    const Interval a = st.back();
                    st.back() = {alg_.negate(a.hi), alg_.negate(a.lo)};
                    break;
                }
                case ConceptKind::And:
                case ConceptKind::Or: {
                    const Interval b = st.back();
                    st.pop_back();
                    const Interval a = st.back();
                    st.back() = op.kind == ConceptKind::And ? Interval{alg_.tnorm(a.lo, b.lo), alg_.tnorm(a.hi, b.hi)}
                                                            : Interval{alg_.snorm(a.lo, b.lo), alg_.snorm(a.hi, b.hi)};
                    break;
                }
                case ConceptKind::Typ: st.back() = {0, st.back().hi}; break;
                default: throw InputError("role restriction in a role-free evaluation");
            }
        }
        return st.back();
    }

    Program compile(const ConceptExpr& c) {
        Program p;
        compile_into(c, p);
        return p;
    }

    const Program& query_lhs() const { return query_lhs_; }
    const Program& query_rhs() const { return query_rhs_; }

    /// Whether some coherent valuation satisfies every assertion about each individual.
    bool assertions_satisfiable(EntailmentStats& stats) {
        for (const auto& [individual, checks] : assertions_) {
            std::vector<char> found(cells_, 0);
            run([&](std::size_t c) {
                    return Visitor{[&, c](Ctx& ctx) {
                                       if (found[c]) return;
                                       for (const auto& a : checks) {
                                           if (!alg_.satisfies(eval(a.lhs, ctx), a.cmp, a.threshold)) return;
                                       }
                                       found[c] = 1;
                                   },
                                   nullptr};
                },
                false, stats);
            if (std::none_of(found.begin(), found.end(), [](char f) { return f != 0; })) return false;
        }
        return true;
    }

    struct Visitor {
        std::function<void(Ctx&)> leaf;
        std::function<bool(Ctx&)> prune;
    };

    void set_partial_bound(double b) { partial_bound_ = b; }

private:
    struct Dist {
        int slot = 0;
        ActivationSpec phi;
        bool monotone = true;
        std::vector<std::pair<Program, double>> terms;
        std::set<std::string> deps;
    };
    struct Check {
        Program lhs;
        Program rhs;
        Comparator cmp;
        Threshold threshold;
    };

    static void validate(const WeightedKb& K, const std::optional<Axiom>& query) {
        for (const auto& ax : K.document().strict_axioms) {
            if (ax.contains_roles()) throw InputError("entailment supports role-free axioms only: " + to_string(ax));
            if (ax.as_inclusion().lhs.contains_typicality() || ax.as_inclusion().rhs.contains_typicality()) {
                throw InputError("entailment does not support typicality in strict axioms: " + to_string(ax));
            }
            if (ax.comparator != Comparator::Geq && ax.comparator != Comparator::Gt) {
                throw InputError("entailment supports strict axioms with >= or > only: " + to_string(ax));
            }
        }
        for (const auto& ax : K.document().assertions) {
            if (!std::holds_alternative<ConceptAssertion>(ax.body)) {
                throw InputError("entailment does not support role assertions: " + to_string(ax));
            }
            const auto& ca = std::get<ConceptAssertion>(ax.body);
            if (ca.expr.contains_roles() || ca.expr.contains_typicality()) {
                throw InputError("entailment supports role-free, typicality-free assertions only: " + to_string(ax));
            }
        }
        for (const auto& b : K.document().blocks) {
            for (const auto& wi : b.inclusions) {
                if (wi.rhs.contains_roles()) {
                    throw InputError("entailment supports role-free knowledge bases only (block '" + b.concept_name + "')");
                }
            }
        }
        if (query) {
            if (!query->is_inclusion()) throw InputError("entailment queries must be inclusions");
            if (query->contains_roles()) throw InputError("entailment queries must be role-free");
        }
    }

    void compile_into(const ConceptExpr& c, Program& p) {
        for (std::size_t i = 0; i < c.arity(); ++i) compile_into(c.child(i), p);
        Program::Op op{c.kind(), -1};
        if (c.kind() == ConceptKind::Name) {
            op.arg = slot_.at(c.symbol());
        } else if (c.kind() == ConceptKind::Typ) {
            auto it = std::find(targets_.begin(), targets_.end(), c.child());
            if (it == targets_.end()) {
                targets_.push_back(c.child());
                it = targets_.end() - 1;
            }
            op.arg = static_cast<int>(it - targets_.begin());
        } else if (c.kind() == ConceptKind::Exists || c.kind() == ConceptKind::Forall) {
            throw InputError("role restrictions are not supported by entailment");
        }
        p.ops.push_back(op);
    }

    /// Orders distinguished concepts so each comes after those it depends on.
    bool order_distinguished() {
        std::vector<Dist> sorted;
        std::vector<bool> placed(dists_.size(), false);
        bool progress = true;
        while (sorted.size() < dists_.size() && progress) {
            progress = false;
            for (std::size_t i = 0; i < dists_.size(); ++i) {
                if (placed[i]) continue;
                bool ready = true;
                for (std::size_t j = 0; j < dists_.size(); ++j) {
                    if (!placed[j] && dists_[i].deps.count(names_[dists_[j].slot])) ready = false;
                }
                if (ready) {
                    placed[i] = true;
                    sorted.push_back(dists_[i]);
                    progress = true;
                }
            }
        }
        if (sorted.size() < dists_.size()) return false;
        dists_ = std::move(sorted);
        return true;
    }

    double field(const Dist& d, Ctx& ctx) const {
        double u = 0.0;
        for (const auto& [prog, w] : d.terms) u += w * alg_.to_double(eval(prog, ctx));
        return u;
    }

    /// Completes (acyclic) or checks (general) the distinguished values, then the strict axioms.
    bool complete(Ctx& ctx) const {
        for (const auto& d : dists_) {
            const int g = d.phi.quantized_index(field(d, ctx), alg_.scale());
            if (acyclic_) {
                ctx.val[d.slot] = g;
            } else if (ctx.val[d.slot] != g) {
                return false;
            }
        }
        for (const auto& s : strict_) {
            if (!alg_.satisfies(alg_.implies(eval(s.lhs, ctx), eval(s.rhs, ctx)), s.cmp, s.threshold)) return false;
        }
        return true;
    }

    /// Bounds every name given the assigned prefix of the enumeration order.
    void fill_box(Ctx& ctx, std::size_t depth) const {
        for (std::size_t i = 0; i < order_.size(); ++i) {
            ctx.box[order_[i]] = i < depth ? Interval{ctx.val[order_[i]], ctx.val[order_[i]]} : Interval{0, n_};
        }
        if (!acyclic_) return;
        for (const auto& d : dists_) {
            if (!d.monotone) {
                ctx.box[d.slot] = {0, n_};
                continue;
            }
            double lo = 0.0, hi = 0.0;
            for (const auto& [prog, w] : d.terms) {
                const Interval b = bound(prog, ctx);
                const double a = w * alg_.to_double(b.lo), c = w * alg_.to_double(b.hi);
                lo += std::min(a, c);
                hi += std::max(a, c);
            }
            ctx.box[d.slot] = {d.phi.quantized_index(lo, alg_.scale()), d.phi.quantized_index(hi, alg_.scale())};
        }
    }

    void flush(Ctx& ctx) {
        const unsigned long long delta = ctx.explored - ctx.flushed;
        ctx.flushed = ctx.explored;
        const unsigned long long total = global_explored_.fetch_add(delta) + delta;
        if (total > opts_.budget) throw BudgetExceeded(opts_.budget, total, partial_bound_);
    }

    void dfs(Ctx& ctx, std::size_t depth, Visitor& v, bool bounds) {
        if (bounds && v.prune && depth < order_.size()) {
            fill_box(ctx, depth);
            if (v.prune(ctx)) {
                ctx.pruned += space(order_.size() - depth);
                return;
            }
        }
        if (depth == order_.size()) {
            ++ctx.explored;
            if ((ctx.explored & 0xFFF) == 0) flush(ctx);
            if (complete(ctx)) v.leaf(ctx);
            return;
        }
        const int slot = order_[depth];
        for (int g = 0; g <= n_; ++g) {
            ctx.val[slot] = g;
            dfs(ctx, depth + 1, v, bounds);
        }
    }

    GradedAlgebra alg_;
    EntailmentOptions opts_;
    int n_;
    std::vector<std::string> names_;
    std::map<std::string, int> slot_;
    std::vector<bool> is_dist_;
    std::vector<Dist> dists_;
    std::vector<Check> strict_;
    std::map<std::string, std::vector<Check>> assertions_;
    bool acyclic_ = true;
    std::vector<int> order_;
    std::size_t prefix_ = 0;
    std::size_t cells_ = 1;
    Program query_lhs_, query_rhs_;
    std::vector<ConceptExpr> targets_;
    std::atomic<unsigned long long> global_explored_{0};
    double partial_bound_ = -1.0;
};

}  // namespace detail

/// Every coherent valuation, in enumeration order.
inline ValuationSet enumerate_coherent(const WeightedKb& K, const ActivationMap& phis, GradedScale scale,
                                       const EntailmentOptions& opts = {}) {
    detail::Search search(K, phis, scale, std::nullopt, opts);
    using Ctx = detail::Search::Ctx;
    std::vector<std::vector<std::vector<int>>> cells(search.cells());
    EntailmentStats stats;
    search.run([&](std::size_t c) {
                   return detail::Search::Visitor{[&, c](Ctx& ctx) { cells[c].push_back(ctx.val); }, nullptr};
               },
               false, stats);
    ValuationSet out{search.names(), scale, {}};
    for (auto& rows : cells) {
        for (auto& r : rows) out.rows.push_back(std::move(r));
    }
    return out;
}

/// Decides whether every canonical phi_n-coherent model of K satisfies `query`.
inline EntailmentResult entails(const WeightedKb& K, const ActivationMap& phis, const Axiom& query, GradedScale scale,
                                const EntailmentOptions& opts = {}) {
    const auto start = std::chrono::steady_clock::now();
    if (!query.threshold.on_scale(scale)) {
        throw InputError("threshold " + query.threshold.to_string() + " is not on C_" + std::to_string(scale.n()));
    }
    detail::Search search(K, phis, scale, query, opts);
    using Ctx = detail::Search::Ctx;
    using Visitor = detail::Search::Visitor;
    const GradedAlgebra& alg = search.algebra();

    EntailmentResult res;
    res.scale = scale;
    res.names = search.names();
    res.mode = search.acyclic() ? "acyclic" : "general";

    // Existence of at least one coherent valuation.
    {
        std::vector<char> found_in(search.cells(), 0);
        search.run(
            [&](std::size_t c) {
                return Visitor{[&, c](Ctx&) { found_in[c] = 1; }, [&, c](Ctx&) { return found_in[c] != 0; }};
            },
            opts.prune, res.stats);
        const bool found = std::any_of(found_in.begin(), found_in.end(), [](char f) { return f != 0; });
        if (!found) {
            res.inconsistent = true;
            res.entailed = true;
            res.value = alg.top();
            res.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            return res;
        }
        if (!search.assertions_satisfiable(res.stats)) {
            res.inconsistent = true;
            res.entailed = true;
            res.value = alg.top();
            res.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            return res;
        }
    }

    // Pass 1: the maximum positive grade of every typicality target.
    const std::size_t nt = search.targets().size();
    std::vector<detail::Program> target_progs;
    for (const auto& t : search.targets()) target_progs.push_back(search.compile(t));
    std::vector<int> maxima(nt, 0);
    if (nt > 0) {
        std::vector<std::vector<int>> best(search.cells(), std::vector<int>(nt, 0));
        search.run(
            [&](std::size_t c) {
                return Visitor{[&, c](Ctx& ctx) {
                                   for (std::size_t t = 0; t < nt; ++t) {
                                       best[c][t] = std::max(best[c][t], search.eval(target_progs[t], ctx));
                                   }
                               },
                               [&, c](Ctx& ctx) {
                                   for (std::size_t t = 0; t < nt; ++t) {
                                       if (search.bound(target_progs[t], ctx).hi > best[c][t]) return false;
                                   }
                                   return true;
                               }};
            },
            opts.prune, res.stats);
        for (const auto& b : best) {
            for (std::size_t t = 0; t < nt; ++t) maxima[t] = std::max(maxima[t], b[t]);
        }
        search.set_partial_bound(nt ? scale.value(maxima[0]) : -1.0);
    }

    const auto& inc = query.as_inclusion();
    const bool typ_lhs = inc.lhs.kind() == ConceptKind::Typ;
    std::optional<std::size_t> lhs_target;
    if (typ_lhs) {
        lhs_target = static_cast<std::size_t>(
            std::find(search.targets().begin(), search.targets().end(), inc.lhs.child()) - search.targets().begin());
        if (maxima[*lhs_target] > 0) res.max_value = maxima[*lhs_target];
        res.vacuous = maxima[*lhs_target] == 0;
    }
    const bool lower = query.comparator == Comparator::Geq || query.comparator == Comparator::Gt;
    // Non-maximizers of the typicality target score top, so skipping them is safe
    // whenever top itself meets the bound.
    const bool prune2 = opts.prune && typ_lhs && lower && alg.satisfies(alg.top(), query.comparator, query.threshold);

    // Pass 2: pointwise query values.
    struct CellOut {
        int min_value;
        std::vector<std::vector<int>> violators;
        std::size_t violations = 0;
        std::optional<std::vector<int>> witness;
        unsigned long long coherent = 0;
    };
    std::vector<CellOut> outs(search.cells(), CellOut{alg.top(), {}, 0, {}, 0});
    search.run(
        [&](std::size_t c) {
            CellOut* out = &outs[c];
            return Visitor{[&, out](Ctx& ctx) {
                               ++out->coherent;
                               const int p = alg.implies(search.eval(search.query_lhs(), ctx, &maxima),
                                                         search.eval(search.query_rhs(), ctx, &maxima));
                               out->min_value = std::min(out->min_value, p);
                               const bool ok = alg.satisfies(p, query.comparator, query.threshold);
                               if (lower && !ok) {
                                   ++out->violations;
                                   if (opts.collect_counterexamples || out->violators.empty()) {
                                       out->violators.push_back(ctx.val);
                                   }
                               } else if (!lower && ok && !out->witness) {
                                   out->witness = ctx.val;
                               }
                           },
                           [&](Ctx& ctx) {
                               return search.bound(target_progs[*lhs_target], ctx).hi < maxima[*lhs_target];
                           }};
        },
        prune2, res.stats);

    res.value = alg.top();
    for (auto& out : outs) {
        res.value = std::min(res.value, out.min_value);
        res.stats.coherent += out.coherent;
        res.counterexample_count += out.violations;
        for (auto& v : out.violators) {
            if (!res.counterexample) res.counterexample = v;
            if (opts.collect_counterexamples) res.counterexamples.push_back(std::move(v));
        }
        if (!res.witness && out.witness) res.witness = out.witness;
    }
    res.entailed = lower ? res.counterexample_count == 0 : res.witness.has_value();
    res.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return res;
}

struct CrossCheckReport {
    bool agree = false;
    /// False when the model was built on a strict subset of the input grid.
    bool full_grid = true;
    bool model_holds = false;
    bool entailed = false;
    int model_value = 0;
    int entailment_value = 0;
    /// Input numerators (network input order) of each counterexample, sorted.
    std::vector<std::vector<int>> model_counterexamples;
    std::vector<std::vector<int>> entailment_counterexamples;
    std::string note;
};

/// Model checking on the full quantized input grid against entailment over extract_kb(net).
inline CrossCheckReport cross_check(const Network& net, GradedScale scale, const Axiom& query,
                                    const EntailmentOptions& base = {}, const std::optional<Stimuli>& delta = {}) {
    CrossCheckReport rep;
    const Stimuli grid = input_grid(net, scale);
    const Stimuli& used = delta ? *delta : grid;
    rep.full_grid = used.size() == grid.size();
    if (rep.full_grid && delta) {
        std::set<std::vector<double>> a(grid.rows.begin(), grid.rows.end()), b(used.rows.begin(), used.rows.end());
        rep.full_grid = a == b;
    }
    ModelOptions mopts;
    mopts.family = base.family;
    const auto I = build_graded_model(net, used, scale, mopts);
    const auto mc = check_axiom(I, query);
    rep.model_holds = mc.holds;
    rep.model_value = mc.value;
    auto to_grades = [&](const std::vector<double>& x) {
        std::vector<int> g;
        for (double v : x) g.push_back(quantize_index(v, scale));
        return g;
    };
    for (const auto& ce : mc.counterexamples) rep.model_counterexamples.push_back(to_grades(used.rows[ce.element]));

    const auto ex = extract_kb(net);
    EntailmentOptions opts = base;
    opts.collect_counterexamples = true;
    opts.extra_names = net.input_names();
    const auto er = entails(ex.kb, ex.activations, query, scale, opts);
    rep.entailed = er.entailed;
    rep.entailment_value = er.value;
    std::vector<std::size_t> cols;
    for (const auto& name : net.input_names()) {
        cols.push_back(static_cast<std::size_t>(std::find(er.names.begin(), er.names.end(), name) - er.names.begin()));
    }
    for (const auto& v : er.counterexamples) {
        std::vector<int> g;
        for (auto c : cols) g.push_back(v[c]);
        rep.entailment_counterexamples.push_back(std::move(g));
    }
    std::sort(rep.model_counterexamples.begin(), rep.model_counterexamples.end());
    std::sort(rep.entailment_counterexamples.begin(), rep.entailment_counterexamples.end());
    rep.agree = rep.model_holds == rep.entailed && rep.model_counterexamples == rep.entailment_counterexamples &&
                rep.model_value == rep.entailment_value;
    if (!rep.full_grid) {
        rep.note = "model checking on a subset of the input grid may miss counterexamples";
    }
    return rep;
}

}  // namespace fuzzyt
