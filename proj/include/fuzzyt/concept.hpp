#pragma once

// Abstract syntax of ALC concepts with a (non-nested) typicality operator,
// and of fuzzy axioms over them.

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fuzzyt/error.hpp"
#include "fuzzyt/logic.hpp"

namespace fuzzyt {

enum class ConceptKind { Top, Bot, Name, Not, And, Or, Exists, Forall, Typ };

/// Immutable, cheaply copyable concept expression. Subtrees are shared.
class ConceptExpr {
public:
    /// Defaults to top.
    ConceptExpr() : ConceptExpr(make(ConceptKind::Top, {}, {})) {}

    static ConceptExpr top() { return make(ConceptKind::Top, {}, {}); }
    static ConceptExpr bot() { return make(ConceptKind::Bot, {}, {}); }
    static ConceptExpr name(std::string concept_name) {
        if (concept_name.empty()) throw InputError("empty concept name");
        return make(ConceptKind::Name, std::move(concept_name), {});
    }
    static ConceptExpr negation(ConceptExpr c) { return make(ConceptKind::Not, {}, {std::move(c)}); }
    static ConceptExpr conjunction(ConceptExpr a, ConceptExpr b) {
        return make(ConceptKind::And, {}, {std::move(a), std::move(b)});
    }
    static ConceptExpr disjunction(ConceptExpr a, ConceptExpr b) {
        return make(ConceptKind::Or, {}, {std::move(a), std::move(b)});
    }
    static ConceptExpr exists(std::string role, ConceptExpr c) {
        if (role.empty()) throw InputError("empty role name");
        return make(ConceptKind::Exists, std::move(role), {std::move(c)});
    }
    static ConceptExpr forall(std::string role, ConceptExpr c) {
        if (role.empty()) throw InputError("empty role name");
        return make(ConceptKind::Forall, std::move(role), {std::move(c)});
    }
    /// Throws NestedTypicalityError if `c` already contains T(...).
    static ConceptExpr typical(ConceptExpr c) {
        if (c.contains_typicality()) throw NestedTypicalityError();
        return make(ConceptKind::Typ, {}, {std::move(c)});
    }

    ConceptKind kind() const noexcept { return node_->kind; }
    /// Concept name for Name, role name for Exists/Forall, empty otherwise.
    const std::string& symbol() const noexcept { return node_->symbol; }
    std::size_t arity() const noexcept { return node_->children.size(); }
    const ConceptExpr& child(std::size_t i = 0) const { return node_->children.at(i); }

    bool contains_typicality() const noexcept { return node_->has_typ; }
    bool contains_roles() const noexcept { return node_->has_roles; }
    /// Number of AST nodes.
    std::size_t size() const noexcept { return node_->size; }

    void collect_concept_names(std::set<std::string>& out) const {
        if (kind() == ConceptKind::Name) out.insert(symbol());
        for (const auto& c : node_->children) c.collect_concept_names(out);
    }
    void collect_role_names(std::set<std::string>& out) const {
        if (kind() == ConceptKind::Exists || kind() == ConceptKind::Forall) out.insert(symbol());
        for (const auto& c : node_->children) c.collect_role_names(out);
    }
    std::set<std::string> concept_names() const {
        std::set<std::string> out;
        collect_concept_names(out);
        return out;
    }

    friend bool operator==(const ConceptExpr& a, const ConceptExpr& b) {
        if (a.node_ == b.node_) return true;
        if (a.kind() != b.kind() || a.symbol() != b.symbol() || a.arity() != b.arity()) return false;
        for (std::size_t i = 0; i < a.arity(); ++i) {
            if (!(a.child(i) == b.child(i))) return false;
        }
        return true;
    }

    friend ConceptExpr operator~(ConceptExpr c) { return negation(std::move(c)); }
    friend ConceptExpr operator&(ConceptExpr a, ConceptExpr b) {
        return conjunction(std::move(a), std::move(b));
    }
    friend ConceptExpr operator|(ConceptExpr a, ConceptExpr b) {
        return disjunction(std::move(a), std::move(b));
    }

private:
    struct Node {
        ConceptKind kind;
        std::string symbol;
        std::vector<ConceptExpr> children;
        bool has_typ = false;
        bool has_roles = false;
        std::size_t size = 1;
    };

    explicit ConceptExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    static ConceptExpr make(ConceptKind kind, std::string symbol, std::vector<ConceptExpr> children) {
        auto node = std::make_shared<Node>();
        node->kind = kind;
        node->symbol = std::move(symbol);
        node->has_typ = kind == ConceptKind::Typ;
        node->has_roles = kind == ConceptKind::Exists || kind == ConceptKind::Forall;
        for (const auto& c : children) {
            node->has_typ = node->has_typ || c.contains_typicality();
            node->has_roles = node->has_roles || c.contains_roles();
            node->size += c.size();
        }
        node->children = std::move(children);
        return ConceptExpr(std::move(node));
    }

    std::shared_ptr<const Node> node_;
};

inline ConceptExpr typ(ConceptExpr c) { return ConceptExpr::typical(std::move(c)); }
inline ConceptExpr atom(std::string n) { return ConceptExpr::name(std::move(n)); }

/// C <: D
struct Inclusion {
    ConceptExpr lhs;
    ConceptExpr rhs;
    friend bool operator==(const Inclusion&, const Inclusion&) = default;
};

/// C(a)
struct ConceptAssertion {
    ConceptExpr expr;
    std::string individual;
    friend bool operator==(const ConceptAssertion&, const ConceptAssertion&) = default;
};

/// r(a, b)
struct RoleAssertion {
    std::string role;
    std::string subject;
    std::string object;
    friend bool operator==(const RoleAssertion&, const RoleAssertion&) = default;
};

/// A fuzzy axiom `body theta threshold`.
struct Axiom {
    std::variant<Inclusion, ConceptAssertion, RoleAssertion> body;
    Comparator comparator = Comparator::Geq;
    Threshold threshold = Threshold::fraction(1, 1);

    static Axiom inclusion(ConceptExpr lhs, ConceptExpr rhs, Comparator cmp, Threshold t) {
        return Axiom{Inclusion{std::move(lhs), std::move(rhs)}, cmp, t};
    }

    bool is_inclusion() const noexcept { return std::holds_alternative<Inclusion>(body); }
    bool is_assertion() const noexcept { return !is_inclusion(); }
    const Inclusion& as_inclusion() const { return std::get<Inclusion>(body); }

    /// T(C) <: D with no other typicality occurrence.
    bool is_typicality_inclusion() const {
        if (!is_inclusion()) return false;
        const auto& inc = as_inclusion();
        return inc.lhs.kind() == ConceptKind::Typ && !inc.rhs.contains_typicality();
    }

    bool contains_roles() const {
        if (const auto* inc = std::get_if<Inclusion>(&body)) {
            return inc->lhs.contains_roles() || inc->rhs.contains_roles();
        }
        if (const auto* ca = std::get_if<ConceptAssertion>(&body)) return ca->expr.contains_roles();
        return true;
    }

    std::set<std::string> concept_names() const {
        std::set<std::string> out;
        if (const auto* inc = std::get_if<Inclusion>(&body)) {
            inc->lhs.collect_concept_names(out);
            inc->rhs.collect_concept_names(out);
        } else if (const auto* ca = std::get_if<ConceptAssertion>(&body)) {
            ca->expr.collect_concept_names(out);
        }
        return out;
    }

    friend bool operator==(const Axiom&, const Axiom&) = default;
};

}  // namespace fuzzyt
