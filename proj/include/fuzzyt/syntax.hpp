#pragma once

// The `.kb` text language.
//
//   # comment
//   Yellow and Black <: bot >= 1          strict inclusion
//   Red(reddy) >= 1                       concept assertion
//   hasParent(bob, mary) >= 0.5           role assertion
//   Bird {                                weighted block for distinguished concept Bird
//     T(Bird) <: Fly @ 20
//     T(Bird) <: some hasWings.top @ 50
//   }
//
// Concepts: top, bot, names, `not C`, `C and D`, `C or D`, `some r . C`,
// `all r . C`, `T(C)`, parentheses. Precedence: not/some/all > and > or; and/or
// associate to the left. Thresholds are decimals or fractions `k/n`. The
// Unicode symbols of the usual notation are accepted as synonyms.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzyt/concept.hpp"
#include "fuzzyt/error.hpp"
#include "fuzzyt/logic.hpp"

namespace fuzzyt {

struct WeightedInclusion {
    ConceptExpr rhs;
    double weight = 0.0;
    friend bool operator==(const WeightedInclusion&, const WeightedInclusion&) = default;
};

/// All weighted typicality inclusions T(concept) <: D @ w for one distinguished concept.
struct WeightedBlock {
    std::string concept_name;
    std::vector<WeightedInclusion> inclusions;
    friend bool operator==(const WeightedBlock&, const WeightedBlock&) = default;
};

struct KbDocument {
    std::vector<Axiom> strict_axioms;
    std::vector<Axiom> assertions;
    std::vector<WeightedBlock> blocks;

    const WeightedBlock* find_block(std::string_view concept_name) const {
        for (const auto& b : blocks) {
            if (b.concept_name == concept_name) return &b;
        }
        return nullptr;
    }

    bool empty() const noexcept {
        return strict_axioms.empty() && assertions.empty() && blocks.empty();
    }

    friend bool operator==(const KbDocument&, const KbDocument&) = default;
};

struct ParseOptions {
    /// When set, every threshold must lie on this scale.
    std::optional<GradedScale> scale;
};

struct Diagnostic {
    std::size_t line = 0;
    std::size_t column = 0;
    std::string message;
};

namespace detail {

enum class Tok {
    Ident, Number, Top, Bot, Not, And, Or, Some, All, Typ,
    LParen, RParen, LBrace, RBrace, Comma, Dot, Slash, Minus, Plus, At, Semicolon,
    Sub, Geq, Leq, Gt, Lt, End
};

inline const char* describe(Tok t) {
    switch (t) {
        case Tok::Ident: return "identifier";
        case Tok::Number: return "number";
        case Tok::Top: return "'top'";
        case Tok::Bot: return "'bot'";
        case Tok::Not: return "'not'";
        case Tok::And: return "'and'";
        case Tok::Or: return "'or'";
        case Tok::Some: return "'some'";
        case Tok::All: return "'all'";
        case Tok::Typ: return "'T'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::Comma: return "','";
        case Tok::Dot: return "'.'";
        case Tok::Slash: return "'/'";
        case Tok::Minus: return "'-'";
        case Tok::Plus: return "'+'";
        case Tok::At: return "'@'";
        case Tok::Semicolon: return "';'";
        case Tok::Sub: return "'<:'";
        case Tok::Geq: return "'>='";
        case Tok::Leq: return "'<='";
        case Tok::Gt: return "'>'";
        case Tok::Lt: return "'<'";
        case Tok::End: return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t;
            t.line = line_;
            t.column = col_;
            if (pos_ >= src_.size()) {
                t.kind = Tok::End;
                out.push_back(t);
                return out;
            }
            const char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t start = pos_;
                while (pos_ < src_.size() && is_ident_char(src_[pos_])) advance();
                t.text = std::string(src_.substr(start, pos_ - start));
                t.kind = keyword(t.text);
            } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                       (c == '.' && pos_ + 1 < src_.size() &&
                        std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
                t.kind = Tok::Number;
                t.text = number();
            } else if (!symbol(t)) {
                throw SyntaxError(line_, col_, std::string("unexpected character '") + c + "'");
            }
            out.push_back(std::move(t));
        }
    }

private:
    static bool is_ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    }

    static Tok keyword(const std::string& s) {
        if (s == "top") return Tok::Top;
        if (s == "bot") return Tok::Bot;
        if (s == "not") return Tok::Not;
        if (s == "and") return Tok::And;
        if (s == "or") return Tok::Or;
        if (s == "some") return Tok::Some;
        if (s == "all") return Tok::All;
        if (s == "T") return Tok::Typ;
        return Tok::Ident;
    }

    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
            // UTF-8 continuation bytes do not start a new column.
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else if ((static_cast<unsigned char>(src_[pos_]) & 0xC0) != 0x80) {
                ++col_;
            }
            ++pos_;
        }
    }

    void skip_space() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string number() {
        std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        };
        digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            advance();
            digits();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t save = pos_;
            std::size_t save_col = col_;
            advance();
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                digits();
            } else {
                pos_ = save;
                col_ = save_col;
            }
        }
        return std::string(src_.substr(start, pos_ - start));
    }

    bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

    bool symbol(Token& t) {
        struct Entry {
            std::string_view text;
            Tok kind;
        };
        static constexpr Entry table[] = {
            {"<:", Tok::Sub},  {">=", Tok::Geq},   {"<=", Tok::Leq},   {">", Tok::Gt},
            {"<", Tok::Lt},    {"(", Tok::LParen}, {")", Tok::RParen}, {"{", Tok::LBrace},
            {"}", Tok::RBrace}, {",", Tok::Comma}, {".", Tok::Dot},    {"/", Tok::Slash},
            {"-", Tok::Minus}, {"+", Tok::Plus},   {"@", Tok::At},     {";", Tok::Semicolon},
            {"⊑", Tok::Sub}, {"≥", Tok::Geq}, {"≤", Tok::Leq},
            {"⊓", Tok::And}, {"⊔", Tok::Or},  {"¬", Tok::Not},
            {"⊤", Tok::Top}, {"⊥", Tok::Bot}, {"∃", Tok::Some},
            {"∀", Tok::All},
        };
        for (const auto& e : table) {
            if (starts_with(e.text)) {
                t.kind = e.kind;
                t.text = std::string(e.text);
                advance(e.text.size());
                return true;
            }
        }
        return false;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

class Parser {
public:
    Parser(std::string_view text, ParseOptions options, std::vector<Diagnostic>* warnings)
        : tokens_(Lexer(text).run()), options_(options), warnings_(warnings) {}

    KbDocument document() {
        KbDocument doc;
        while (peek().kind != Tok::End) {
            if (peek().kind == Tok::Semicolon) {
                next();
                continue;
            }
            if (peek().kind == Tok::Ident && peek(1).kind == Tok::LBrace) {
                block(doc);
                continue;
            }
            Axiom ax = axiom();
            if (ax.is_inclusion()) {
                doc.strict_axioms.push_back(std::move(ax));
            } else {
                doc.assertions.push_back(std::move(ax));
            }
        }
        return doc;
    }

    ConceptExpr single_concept() {
        ConceptExpr c = disjunction_expr();
        expect(Tok::End);
        return c;
    }

    Axiom single_axiom() {
        Axiom a = axiom();
        if (peek().kind == Tok::Semicolon) next();
        expect(Tok::End);
        return a;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }
    const Token& next() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }

    [[noreturn]] void fail(const Token& at, const std::string& expected) const {
        std::string found = at.kind == Tok::End ? "end of input" : "'" + at.text + "'";
        throw SyntaxError(at.line, at.column, "expected " + expected + ", found " + found);
    }

    const Token& expect(Tok kind) {
        if (peek().kind != kind) fail(peek(), describe(kind));
        return next();
    }

    void warn(const Token& at, std::string message) {
        if (warnings_) warnings_->push_back({at.line, at.column, std::move(message)});
    }

    void block(KbDocument& doc) {
        const Token& name_tok = next();
        const std::string name = name_tok.text;
        expect(Tok::LBrace);
        WeightedBlock blk{name, {}};
        while (peek().kind != Tok::RBrace) {
            if (peek().kind == Tok::Semicolon || peek().kind == Tok::Comma) {
                next();
                continue;
            }
            const Token& start = peek();
            expect(Tok::Typ);
            expect(Tok::LParen);
            const Token& inner = expect(Tok::Ident);
            if (inner.text != name) {
                throw SyntaxError(inner.line, inner.column,
                                  "weighted inclusion T(" + inner.text + ") inside block '" +
                                      name + "'");
            }
            expect(Tok::RParen);
            expect(Tok::Sub);
            ConceptExpr rhs = disjunction_expr();
            if (rhs.contains_typicality()) {
                throw SyntaxError(start.line, start.column,
                                  "typicality may only occur on the left of a weighted inclusion");
            }
            expect(Tok::At);
            blk.inclusions.push_back({std::move(rhs), weight()});
        }
        const Token& close = next();
        if (blk.inclusions.empty()) {
            throw SyntaxError(close.line, close.column, "weighted block '" + name + "' is empty");
        }
        for (auto& existing : doc.blocks) {
            if (existing.concept_name == name) {
                warn(name_tok, "duplicate block for '" + name + "' merged into the first one");
                existing.inclusions.insert(existing.inclusions.end(), blk.inclusions.begin(),
                                           blk.inclusions.end());
                return;
            }
        }
        doc.blocks.push_back(std::move(blk));
    }

    double weight() {
        bool negative = false;
        if (peek().kind == Tok::Minus || peek().kind == Tok::Plus) negative = next().kind == Tok::Minus;
        const Token& t = peek();
        if (t.kind != Tok::Number) fail(t, "weight");
        next();
        double v = 0.0;
        auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (res.ec != std::errc{} || res.ptr != t.text.data() + t.text.size() || !std::isfinite(v)) {
            throw SyntaxError(t.line, t.column, "weight '" + t.text + "' is not a finite real");
        }
        return negative ? -v : v;
    }

    Axiom axiom() {
        const Token& start = peek();
        ConceptExpr c = disjunction_expr();
        if (peek().kind == Tok::Sub) {
            next();
            ConceptExpr rhs = disjunction_expr();
            if (peek().kind == Tok::At) {
                fail(peek(), "comparator (weighted inclusions belong inside a concept block)");
            }
            auto [cmp, th] = bound();
            return Axiom{Inclusion{std::move(c), std::move(rhs)}, cmp, th};
        }
        if (peek().kind == Tok::LParen) {
            next();
            const std::string a = expect(Tok::Ident).text;
            if (peek().kind == Tok::Comma) {
                next();
                const std::string b = expect(Tok::Ident).text;
                expect(Tok::RParen);
                if (c.kind() != ConceptKind::Name) {
                    throw SyntaxError(start.line, start.column, "role assertion needs a role name");
                }
                auto [cmp, th] = bound();
                return Axiom{RoleAssertion{c.symbol(), a, b}, cmp, th};
            }
            expect(Tok::RParen);
            auto [cmp, th] = bound();
            return Axiom{ConceptAssertion{std::move(c), a}, cmp, th};
        }
        fail(peek(), "'<:' or '(' after concept");
    }

    std::pair<Comparator, Threshold> bound() {
        Comparator cmp;
        switch (peek().kind) {
            case Tok::Geq: cmp = Comparator::Geq; break;
            case Tok::Leq: cmp = Comparator::Leq; break;
            case Tok::Gt: cmp = Comparator::Gt; break;
            case Tok::Lt: cmp = Comparator::Lt; break;
            default: fail(peek(), "comparator (>=, <=, >, <)");
        }
        next();
        const Token& t = peek();
        if (t.kind == Tok::Minus) {
            throw SyntaxError(t.line, t.column, "threshold must lie in [0,1]");
        }
        if (t.kind != Tok::Number) fail(t, "threshold");
        next();
        std::string text = t.text;
        if (peek().kind == Tok::Slash) {
            next();
            text += "/" + expect(Tok::Number).text;
        }
        Threshold th;
        try {
            th = Threshold::parse(text);
        } catch (const InputError& e) {
            throw SyntaxError(t.line, t.column, e.what());
        }
        if (options_.scale && !th.on_scale(*options_.scale)) {
            throw SyntaxError(t.line, t.column,
                              "threshold " + text + " is not on C_" + std::to_string(options_.scale->n()));
        }
        return {cmp, th};
    }

    ConceptExpr disjunction_expr() {
        ConceptExpr c = conjunction();
        while (peek().kind == Tok::Or) {
            next();
            c = ConceptExpr::disjunction(std::move(c), conjunction());
        }
        return c;
    }

    ConceptExpr conjunction() {
        ConceptExpr c = unary();
        while (peek().kind == Tok::And) {
            next();
            c = ConceptExpr::conjunction(std::move(c), unary());
        }
        return c;
    }

    ConceptExpr unary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Not: next(); return ConceptExpr::negation(unary());
            case Tok::Some:
            case Tok::All: {
                next();
                std::string role = expect(Tok::Ident).text;
                expect(Tok::Dot);
                ConceptExpr body = unary();
                return t.kind == Tok::Some ? ConceptExpr::exists(std::move(role), std::move(body))
                                           : ConceptExpr::forall(std::move(role), std::move(body));
            }
            default: return primary();
        }
    }

    ConceptExpr primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Top: next(); return ConceptExpr::top();
            case Tok::Bot: next(); return ConceptExpr::bot();
            case Tok::Ident: next(); return ConceptExpr::name(t.text);
            case Tok::LParen: {
                next();
                ConceptExpr c = disjunction_expr();
                expect(Tok::RParen);
                return c;
            }
            case Tok::Typ: {
                next();
                expect(Tok::LParen);
                ConceptExpr inner = disjunction_expr();
                expect(Tok::RParen);
                if (inner.contains_typicality()) {
                    throw SyntaxError(t.line, t.column, "nested typicality operator is not allowed");
                }
                return ConceptExpr::typical(std::move(inner));
            }
            default: fail(t, "concept");
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    ParseOptions options_;
    std::vector<Diagnostic>* warnings_;
};

inline int precedence(ConceptKind k) {
    switch (k) {
        case ConceptKind::Or: return 1;
        case ConceptKind::And: return 2;
        default: return 3;
    }
}

inline void print(const ConceptExpr& c, int context, std::string& out) {
    const bool paren = precedence(c.kind()) < context;
    if (paren) out += '(';
    switch (c.kind()) {
        case ConceptKind::Top: out += "top"; break;
        case ConceptKind::Bot: out += "bot"; break;
        case ConceptKind::Name: out += c.symbol(); break;
        case ConceptKind::Not:
            out += "not ";
            print(c.child(), 3, out);
            break;
        case ConceptKind::And:
        case ConceptKind::Or:
            print(c.child(0), precedence(c.kind()), out);
            out += c.kind() == ConceptKind::And ? " and " : " or ";
            print(c.child(1), precedence(c.kind()) + 1, out);
            break;
        case ConceptKind::Exists:
        case ConceptKind::Forall:
            out += c.kind() == ConceptKind::Exists ? "some " : "all ";
            out += c.symbol();
            out += ".";
            print(c.child(), 3, out);
            break;
        case ConceptKind::Typ:
            out += "T(";
            print(c.child(), 1, out);
            out += ')';
            break;
    }
    if (paren) out += ')';
}

}  // namespace detail

/// Parses a single concept; errors carry line and column.
inline ConceptExpr parse_concept(std::string_view text) {
    return detail::Parser(text, {}, nullptr).single_concept();
}

/// Parses a single fuzzy axiom, e.g. "T(E) <: F >= 3/5".
inline Axiom parse_axiom(std::string_view text, ParseOptions options = {}) {
    return detail::Parser(text, options, nullptr).single_axiom();
}

/// Parses a whole document. Duplicate blocks are merged and reported through `warnings`.
inline KbDocument parse_kb(std::string_view text, ParseOptions options = {},
                           std::vector<Diagnostic>* warnings = nullptr) {
    return detail::Parser(text, options, warnings).document();
}

inline std::string to_string(const ConceptExpr& c) {
    std::string out;
    detail::print(c, 1, out);
    return out;
}

/// Shortest decimal that parses back to the same double.
inline std::string format_weight(double w) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, w);
    return std::string(buf, res.ptr);
}

inline std::string to_string(const Axiom& ax) {
    std::string out;
    if (const auto* inc = std::get_if<Inclusion>(&ax.body)) {
        out = to_string(inc->lhs) + " <: " + to_string(inc->rhs);
    } else if (const auto* ca = std::get_if<ConceptAssertion>(&ax.body)) {
        std::string c = to_string(ca->expr);
        if (ca->expr.kind() != ConceptKind::Name && ca->expr.kind() != ConceptKind::Top &&
            ca->expr.kind() != ConceptKind::Bot && ca->expr.kind() != ConceptKind::Typ) {
            c = "(" + c + ")";
        }
        out = c + "(" + ca->individual + ")";
    } else {
        const auto& ra = std::get<RoleAssertion>(ax.body);
        out = ra.role + "(" + ra.subject + ", " + ra.object + ")";
    }
    out += " ";
    out += to_string(ax.comparator);
    out += " ";
    out += ax.threshold.to_string();
    return out;
}

inline std::string serialize(const KbDocument& doc) {
    std::string out;
    for (const auto& ax : doc.strict_axioms) out += to_string(ax) + "\n";
    for (const auto& ax : doc.assertions) out += to_string(ax) + "\n";
    for (const auto& blk : doc.blocks) {
        if (!out.empty()) out += "\n";
        out += blk.concept_name + " {\n";
        for (const auto& wi : blk.inclusions) {
            out += "  T(" + blk.concept_name + ") <: " + to_string(wi.rhs) + " @ " +
                   format_weight(wi.weight) + "\n";
        }
        out += "}\n";
    }
    return out;
}

}  // namespace fuzzyt
