#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "bvm/logic.hpp"
#include "bvm/scott.hpp"

/** @file textio.hpp
 *  Parser and serializer for every external format: algebras, elements,
 *  boolean-valued sets, hereditarily finite literals, formulas, probability
 *  spaces, and .bvw workspace files. The normative grammar lives in
 *  docs/grammar.ebnf; this file is its only implementation. Parsing aborts at
 *  the first error with a 1-based line:column position; serialization is
 *  deterministic (canonical entry order, sorted names), and
 *  parse(serialize(x)) reproduces x.
 */

namespace bvm {

/// Named collections declared by one workspace file.
struct Workspace {
    std::map<std::string, BoolAlgebra> algebras;

    struct EnvEntry {
        std::string algebra_name;
        Environment env;
    };
    std::map<std::string, EnvEntry> environments;

    struct SpaceEntry {
        ProbSpace space;
        std::map<std::string, RandomReal> reals;
    };
    std::map<std::string, SpaceEntry> spaces;

    struct FamilyEntry {
        std::vector<std::string> member_names;
        AlgebraFamily family;
    };
    std::map<std::string, FamilyEntry> families;
};

namespace detail {

struct Token {
    enum class Type { Ident, Number, Punct, End };
    Type type;
    std::string text;
    int line;
    int col;
};

inline std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') { ++line; col = 1; } else { ++col; }
        }
    };
    auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
    auto is_ident_head = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    auto is_ident_tail = [&](char c) { return is_ident_head(c) || is_digit(c); };

    while (i < src.size()) {
        const char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') { advance(1); continue; }
        if (c == '#') { // line comment
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        const int tl = line, tc = col;
        if (is_ident_head(c)) {
            std::size_t j = i;
            while (j < src.size() && is_ident_tail(src[j])) ++j;
            out.push_back({Token::Type::Ident, std::string(src.substr(i, j - i)), tl, tc});
            advance(j - i);
            continue;
        }
        if (is_digit(c) || (c == '-' && i + 1 < src.size() && is_digit(src[i + 1]))) {
            std::size_t j = i + (c == '-' ? 1 : 0);
            while (j < src.size() && is_digit(src[j])) ++j;
            if (j < src.size() && src[j] == '/' && j + 1 < src.size() && is_digit(src[j + 1])) {
                ++j;
                while (j < src.size() && is_digit(src[j])) ++j;
            }
            out.push_back({Token::Type::Number, std::string(src.substr(i, j - i)), tl, tc});
            advance(j - i);
            continue;
        }
        if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
            out.push_back({Token::Type::Punct, "->", tl, tc});
            advance(2);
            continue;
        }
        static constexpr std::string_view singles = "{}(),;:=|&~";
        if (singles.find(c) != std::string_view::npos) {
            out.push_back({Token::Type::Punct, std::string(1, c), tl, tc});
            advance(1);
            continue;
        }
        throw ParseError(tl, tc, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Token::Type::End, "", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view src) : tokens_(lex(src)) {}

    const Token& peek(std::size_t ahead = 0) const {
        const std::size_t k = pos_ + ahead;
        return k < tokens_.size() ? tokens_[k] : tokens_.back();
    }
    const Token& next() {
        const Token& t = peek();
        if (t.type != Token::Type::End) ++pos_;
        return t;
    }
    bool at_punct(std::string_view p) const { return peek().type == Token::Type::Punct && peek().text == p; }
    bool at_keyword(std::string_view k) const { return peek().type == Token::Type::Ident && peek().text == k; }
    bool at_end() const { return peek().type == Token::Type::End; }

    void expect_punct(std::string_view p) {
        if (!at_punct(p)) fail("expected '" + std::string(p) + "'");
        next();
    }
    void expect_keyword(std::string_view k) {
        if (!at_keyword(k)) fail("expected '" + std::string(k) + "'");
        next();
    }
    std::string expect_ident() {
        if (peek().type != Token::Type::Ident) fail("expected an identifier");
        if (!is_identifier(peek().text)) fail("'" + peek().text + "' is a reserved word");
        return next().text;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        const std::string saw = t.type == Token::Type::End ? "end of input" : "'" + t.text + "'";
        throw ParseError(t.line, t.col, msg + ", found " + saw);
    }

    // ---- shared fragments -------------------------------------------------

    Rational parse_rational() {
        if (peek().type != Token::Type::Number) fail("expected a rational number");
        const std::string text = next().text;
        const auto slash = text.find('/');
        try {
            if (slash == std::string::npos) return Rational(std::stoll(text));
            return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
        } catch (const std::exception&) {
            fail("number out of range");
        }
    }

    int parse_nonneg_int() {
        if (peek().type != Token::Type::Number) fail("expected a number");
        const std::string text = peek().text;
        if (text.find('/') != std::string::npos || text[0] == '-') fail("expected a non-negative integer");
        next();
        try {
            return std::stoi(text);
        } catch (const std::exception&) {
            fail("number out of range");
        }
    }

    HFSet parse_hf() {
        expect_punct("{");
        std::vector<HFSet> elems;
        if (!at_punct("}")) {
            elems.push_back(parse_hf());
            while (at_punct(",")) {
                next();
                elems.push_back(parse_hf());
            }
        }
        expect_punct("}");
        return HFSet::of(std::move(elems));
    }

    ElementExpr parse_element_expr() {
        if (peek().type == Token::Type::Number) {
            if (peek().text == "0") { next(); return ElementExpr::zero(); }
            if (peek().text == "1") { next(); return ElementExpr::one(); }
            fail("an element is 0, 1, or an atom set {a,b}");
        }
        expect_punct("{");
        std::vector<std::string> atoms;
        if (!at_punct("}")) {
            atoms.push_back(expect_ident());
            while (at_punct(",")) {
                next();
                atoms.push_back(expect_ident());
            }
        }
        expect_punct("}");
        return ElementExpr::of_atoms(std::move(atoms));
    }

    /// bvterm := name(hf) | IDENT | bv { bvterm: element, ... }
    Term parse_bvterm(const std::map<std::string, std::string>& scope) {
        if (at_keyword("name")) {
            next();
            expect_punct("(");
            HFSet hf = parse_hf();
            expect_punct(")");
            return Term::hf_name(std::move(hf));
        }
        if (at_keyword("bv")) {
            next();
            expect_punct("{");
            std::vector<std::pair<Term, ElementExpr>> entries;
            if (!at_punct("}")) {
                while (true) {
                    Term key = parse_bvterm(scope);
                    expect_punct(":");
                    entries.emplace_back(std::move(key), parse_element_expr());
                    if (!at_punct(",")) break;
                    next();
                }
            }
            expect_punct("}");
            return Term::literal(std::move(entries));
        }
        const std::string name = expect_ident_or([&] { fail("expected a term: name(...), bv{...}, or an identifier"); });
        auto it = scope.find(name);
        return Term::ident(it != scope.end() ? it->second : name);
    }

    // ---- formulas ----------------------------------------------------------
    // Precedence: ~  binds tightest, then &, |, -> (right associative).
    // Quantifier bodies extend maximally to the right.

    Formula parse_formula(std::map<std::string, std::string> scope) { return parse_implies(scope); }

private:
    std::string expect_ident_or(auto&& on_error) {
        if (peek().type != Token::Type::Ident || !is_identifier(peek().text)) on_error();
        return next().text;
    }

    Formula parse_implies(std::map<std::string, std::string>& scope) {
        Formula lhs = parse_or(scope);
        if (at_punct("->")) {
            next();
            return Formula::logic_implies(std::move(lhs), parse_implies(scope));
        }
        return lhs;
    }
    Formula parse_or(std::map<std::string, std::string>& scope) {
        Formula lhs = parse_and(scope);
        while (at_punct("|")) {
            next();
            lhs = Formula::logic_or(std::move(lhs), parse_and(scope));
        }
        return lhs;
    }
    Formula parse_and(std::map<std::string, std::string>& scope) {
        Formula lhs = parse_not(scope);
        while (at_punct("&")) {
            next();
            lhs = Formula::logic_and(std::move(lhs), parse_not(scope));
        }
        return lhs;
    }
    Formula parse_not(std::map<std::string, std::string>& scope) {
        if (at_punct("~")) {
            next();
            return Formula::logic_not(parse_not(scope));
        }
        return parse_primary(scope);
    }
    Formula parse_primary(std::map<std::string, std::string>& scope) {
        if (at_punct("(")) {
            next();
            Formula inner = parse_formula(scope);
            expect_punct(")");
            return inner;
        }
        if (at_keyword("forall") || at_keyword("exists")) return parse_quantifier(scope);
        Term lhs = parse_bvterm(scope);
        if (at_punct("=")) {
            next();
            return Formula::eq(std::move(lhs), parse_bvterm(scope));
        }
        if (at_keyword("in")) {
            next();
            return Formula::mem(std::move(lhs), parse_bvterm(scope));
        }
        fail("expected '=' or 'in' in an atomic formula");
    }
    Formula parse_quantifier(std::map<std::string, std::string>& scope) {
        const bool universal = peek().text == "forall";
        next();
        const std::string user_var = expect_ident();
        // Bound variables are renamed to fresh internal names at parse time,
        // so substitution during evaluation can never capture.
        const std::string fresh = "#" + std::to_string(++quantifier_counter_);
        if (at_keyword("in")) {
            next();
            Term bound = parse_bvterm(scope);
            expect_punct(":");
            auto inner_scope = scope;
            inner_scope.insert_or_assign(user_var, fresh);
            Formula body = parse_formula(std::move(inner_scope));
            return universal ? Formula::forall_in(fresh, std::move(bound), std::move(body))
                             : Formula::exists_in(fresh, std::move(bound), std::move(body));
        }
        if (at_punct(":")) {
            next();
            if (!at_keyword("rank"))
                fail("unbounded quantifiers are not supported; write 'forall x in t:' or 'forall x : rank N :'");
            next();
            const int bound = parse_nonneg_int();
            expect_punct(":");
            auto inner_scope = scope;
            inner_scope.insert_or_assign(user_var, fresh);
            Formula body = parse_formula(std::move(inner_scope));
            return universal ? Formula::forall_rank(fresh, bound, std::move(body))
                             : Formula::exists_rank(fresh, bound, std::move(body));
        }
        fail("expected 'in t:' or ': rank N :' after the quantified variable");
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    int quantifier_counter_ = 0;
};

/// Evaluates a parsed bvterm against an environment (for workspace bindings
/// and the CLI, where terms denote concrete sets).
inline BVSet resolve_term(const Environment& env, const Term& term) {
    const EvalOptions options{};
    EvalCtx ctx{env, options, {}};
    return eval_term(ctx, term);
}

} // namespace detail

// ---- parse entry points -----------------------------------------------------

inline HFSet parse_hf(std::string_view text) {
    detail::Parser p(text);
    HFSet out = p.parse_hf();
    if (!p.at_end()) p.fail("trailing input after HF literal");
    return out;
}

inline BoolElement parse_element(std::string_view text, const BoolAlgebra& algebra) {
    detail::Parser p(text);
    ElementExpr e = p.parse_element_expr();
    if (!p.at_end()) p.fail("trailing input after element");
    return e.resolve(algebra);
}

inline Formula parse_formula(std::string_view text) {
    detail::Parser p(text);
    Formula f = p.parse_formula({});
    if (!p.at_end()) p.fail("trailing input after formula");
    return f;
}

/// Parses a bvterm (`bv {...}`, `name({...})`, or a bound identifier) and
/// resolves it to a concrete set in the environment.
inline BVSet parse_bvset(std::string_view text, const Environment& env) {
    detail::Parser p(text);
    Term t = p.parse_bvterm({});
    if (!p.at_end()) p.fail("trailing input after set");
    return detail::resolve_term(env, t);
}

inline BVSet parse_bvset(std::string_view text, const BoolAlgebra& algebra) {
    return parse_bvset(text, Environment(algebra));
}

inline Workspace parse_workspace(std::string_view text) {
    detail::Parser p(text);
    Workspace ws;
    while (!p.at_end()) {
        if (p.at_keyword("algebra")) {
            p.next();
            const std::string name = p.expect_ident();
            if (ws.algebras.count(name)) p.fail("duplicate algebra '" + name + "'");
            p.expect_punct("{");
            p.expect_keyword("atoms");
            p.expect_punct(":");
            std::vector<std::string> atoms;
            while (p.peek().type == detail::Token::Type::Ident && !p.at_keyword("let")) atoms.push_back(p.expect_ident());
            p.expect_punct(";");
            std::vector<std::pair<std::string, std::vector<std::string>>> named;
            while (p.at_keyword("let")) {
                p.next();
                const std::string ename = p.expect_ident();
                p.expect_punct("=");
                ElementExpr e = p.parse_element_expr();
                std::vector<std::string> as;
                if (e.kind == ElementExpr::Kind::Atoms) as = e.atoms;
                else if (e.kind == ElementExpr::Kind::One) as = atoms;
                named.emplace_back(ename, std::move(as));
                p.expect_punct(";");
            }
            p.expect_punct("}");
            try {
                ws.algebras.emplace(name, make_algebra(std::move(atoms), std::move(named)));
            } catch (const Error& e) {
                p.fail(e.what());
            }
        } else if (p.at_keyword("env")) {
            p.next();
            const std::string name = p.expect_ident();
            if (ws.environments.count(name)) p.fail("duplicate env '" + name + "'");
            p.expect_keyword("over");
            const std::string alg_name = p.expect_ident();
            auto alg = ws.algebras.find(alg_name);
            if (alg == ws.algebras.end()) p.fail("unknown algebra '" + alg_name + "'");
            Environment env(alg->second);
            p.expect_punct("{");
            while (p.at_keyword("let")) {
                p.next();
                const std::string bname = p.expect_ident();
                if (env.bindings.count(bname)) p.fail("duplicate binding '" + bname + "'");
                p.expect_punct("=");
                Term term = p.parse_bvterm({});
                p.expect_punct(";");
                try {
                    env.bind(bname, detail::resolve_term(env, term));
                } catch (const Error& e) {
                    p.fail(e.what());
                }
            }
            p.expect_punct("}");
            ws.environments.emplace(name, Workspace::EnvEntry{alg_name, std::move(env)});
        } else if (p.at_keyword("space")) {
            p.next();
            const std::string name = p.expect_ident();
            if (ws.spaces.count(name)) p.fail("duplicate space '" + name + "'");
            p.expect_punct("{");
            std::vector<std::pair<std::string, Rational>> weights;
            std::vector<std::pair<std::string, std::vector<Rational>>> reals;
            bool first = true;
            while (!p.at_punct("}")) {
                if (!first) p.expect_punct(";");
                first = false;
                if (p.at_punct("}")) break; // trailing ';'
                if (p.at_keyword("rr")) {
                    p.next();
                    const std::string rname = p.expect_ident();
                    p.expect_punct("=");
                    p.expect_punct("(");
                    std::vector<Rational> values;
                    values.push_back(p.parse_rational());
                    while (p.at_punct(",")) {
                        p.next();
                        values.push_back(p.parse_rational());
                    }
                    p.expect_punct(")");
                    reals.emplace_back(rname, std::move(values));
                } else {
                    const std::string wname = p.expect_ident();
                    p.expect_punct(":");
                    weights.emplace_back(wname, p.parse_rational());
                }
            }
            p.expect_punct("}");
            try {
                ProbSpace space = ProbSpace::make(std::move(weights));
                Workspace::SpaceEntry entry{space, {}};
                for (auto& [rname, values] : reals) {
                    if (entry.reals.count(rname)) throw Error("duplicate random real '" + rname + "'");
                    entry.reals.emplace(rname, RandomReal::make(space, std::move(values)));
                }
                ws.spaces.emplace(name, std::move(entry));
            } catch (const Error& e) {
                p.fail(e.what());
            }
        } else if (p.at_keyword("family")) {
            p.next();
            const std::string name = p.expect_ident();
            if (ws.families.count(name)) p.fail("duplicate family '" + name + "'");
            p.expect_punct("{");
            std::vector<std::string> member_names;
            member_names.push_back(p.expect_ident());
            while (p.at_punct(",")) {
                p.next();
                member_names.push_back(p.expect_ident());
            }
            p.expect_punct("}");
            std::vector<AlgebraFamily::Member> members;
            for (const auto& m : member_names) {
                if (auto env = ws.environments.find(m); env != ws.environments.end())
                    members.push_back({m, env->second.env});
                else if (auto alg = ws.algebras.find(m); alg != ws.algebras.end())
                    members.push_back({m, Environment(alg->second)});
                else
                    p.fail("family member '" + m + "' names no env or algebra");
            }
            ws.families.emplace(name,
                                Workspace::FamilyEntry{std::move(member_names), AlgebraFamily(std::move(members))});
        } else {
            p.fail("expected a declaration: algebra, env, space, or family");
        }
    }
    return ws;
}

// ---- serializers --------------------------------------------------------------

inline std::string serialize(const Rational& r) { return r.to_string(); }

inline std::string serialize(const BoolElement& x) {
    if (x.is_zero()) return "0";
    if (x.is_one()) return "1";
    std::string out = "{";
    bool first = true;
    for (const auto& name : x.atom_names()) {
        if (!first) out += ",";
        out += name;
        first = false;
    }
    return out + "}";
}

inline std::string serialize(const HFSet& x) {
    std::string out = "{";
    bool first = true;
    for (const auto& e : x.elements()) {
        if (!first) out += ",";
        out += serialize(e);
        first = false;
    }
    return out + "}";
}

inline std::string serialize(const BVSet& u) {
    if (u.domain_empty()) return "bv {}";
    std::string out = "bv { ";
    bool first = true;
    for (const auto& [key, value] : u.entries()) {
        if (!first) out += ", ";
        out += serialize(key) + ": " + serialize(value);
        first = false;
    }
    return out + " }";
}

namespace detail {

inline void collect_idents(const Term& t, std::vector<std::string>& out) {
    switch (t.kind()) {
        case Term::Kind::Ident: out.push_back(t.name()); break;
        case Term::Kind::HFName: break;
        case Term::Kind::Literal:
            for (const auto& [key, value] : t.literal_entries()) collect_idents(key, out);
            break;
    }
}
inline void collect_idents(const Formula& f, std::vector<std::string>& out) {
    switch (f.kind()) {
        case Formula::Kind::Eq:
        case Formula::Kind::Mem:
            collect_idents(f.lhs(), out);
            collect_idents(f.rhs(), out);
            break;
        case Formula::Kind::Not: collect_idents(f.child(), out); break;
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
            collect_idents(f.left(), out);
            collect_idents(f.right(), out);
            break;
        case Formula::Kind::ForallIn:
        case Formula::Kind::ExistsIn:
            collect_idents(f.bound_term(), out);
            collect_idents(f.child(), out);
            break;
        case Formula::Kind::ForallRank:
        case Formula::Kind::ExistsRank:
            collect_idents(f.child(), out);
            break;
    }
}

struct FormulaPrinter {
    std::map<std::string, std::string> rename; // internal quantifier names -> printable
    std::vector<std::string> used;
    int counter = 0;

    std::string fresh() {
        while (true) {
            std::string candidate = "x" + std::to_string(++counter);
            if (std::find(used.begin(), used.end(), candidate) == used.end()) return candidate;
        }
    }

    std::string term(const Term& t) {
        switch (t.kind()) {
            case Term::Kind::Ident: {
                auto it = rename.find(t.name());
                return it != rename.end() ? it->second : t.name();
            }
            case Term::Kind::HFName: return "name(" + serialize(t.hf()) + ")";
            case Term::Kind::Literal: {
                if (t.literal_entries().empty()) return "bv {}";
                std::string out = "bv { ";
                bool first = true;
                for (const auto& [key, value] : t.literal_entries()) {
                    if (!first) out += ", ";
                    out += term(key) + ": " + element(value);
                    first = false;
                }
                return out + " }";
            }
        }
        throw Error("corrupt term");
    }

    static std::string element(const ElementExpr& e) {
        switch (e.kind) {
            case ElementExpr::Kind::Zero: return "0";
            case ElementExpr::Kind::One: return "1";
            case ElementExpr::Kind::Atoms: {
                std::string out = "{";
                bool first = true;
                for (const auto& a : e.atoms) {
                    if (!first) out += ",";
                    out += a;
                    first = false;
                }
                return out + "}";
            }
        }
        throw Error("corrupt element expression");
    }

    // parent_prec: 0 top, 1 ->, 2 |, 3 &, 4 ~
    std::string print(const Formula& f, int parent_prec) {
        switch (f.kind()) {
            case Formula::Kind::Eq: return term(f.lhs()) + " = " + term(f.rhs());
            case Formula::Kind::Mem: return term(f.lhs()) + " in " + term(f.rhs());
            case Formula::Kind::Not: return "~" + print(f.child(), 4);
            case Formula::Kind::And: {
                std::string s = print(f.left(), 3) + " & " + print(f.right(), 4);
                return parent_prec > 3 ? "(" + s + ")" : s;
            }
            case Formula::Kind::Or: {
                std::string s = print(f.left(), 2) + " | " + print(f.right(), 3);
                return parent_prec > 2 ? "(" + s + ")" : s;
            }
            case Formula::Kind::Implies: {
                std::string s = print(f.left(), 2) + " -> " + print(f.right(), 1);
                return parent_prec > 1 ? "(" + s + ")" : s;
            }
            case Formula::Kind::ForallIn:
            case Formula::Kind::ExistsIn:
            case Formula::Kind::ForallRank:
            case Formula::Kind::ExistsRank: {
                const bool universal =
                    f.kind() == Formula::Kind::ForallIn || f.kind() == Formula::Kind::ForallRank;
                const bool ranked =
                    f.kind() == Formula::Kind::ForallRank || f.kind() == Formula::Kind::ExistsRank;
                // The bound term is outside the binder's scope: render it
                // before installing the new name.
                const std::string bound_text = ranked ? "" : term(f.bound_term());
                const std::string printable = fresh();
                const std::string saved = rename.count(f.var()) ? rename[f.var()] : "";
                rename.insert_or_assign(f.var(), printable);
                std::string s = universal ? "forall " : "exists ";
                s += printable;
                s += ranked ? " : rank " + std::to_string(f.rank_bound()) + " : " : " in " + bound_text + ": ";
                s += print(f.child(), 0);
                if (saved.empty()) rename.erase(f.var()); else rename.insert_or_assign(f.var(), saved);
                return parent_prec > 0 ? "(" + s + ")" : s;
            }
        }
        throw Error("corrupt formula");
    }
};

} // namespace detail

inline std::string serialize(const Formula& f) {
    detail::FormulaPrinter printer;
    detail::collect_idents(f, printer.used);
    return printer.print(f, 0);
}

inline std::string serialize_algebra(const std::string& name, const BoolAlgebra& algebra) {
    std::string out = "algebra " + name + " { atoms:";
    for (const auto& a : algebra.atom_names()) out += " " + a;
    out += ";";
    for (const auto& [ename, mask] : algebra.named_element_masks())
        out += " let " + ename + " = " + serialize(algebra.element(mask)) + ";";
    return out + " }";
}

inline std::string serialize_env(const std::string& name, const std::string& algebra_name, const Environment& env) {
    std::string out = "env " + name + " over " + algebra_name + " {";
    for (const auto& [bname, value] : env.bindings) out += " let " + bname + " = " + serialize(value) + ";";
    return out + " }";
}

inline std::string serialize_space(const std::string& name, const Workspace::SpaceEntry& entry) {
    std::string out = "space " + name + " { ";
    bool first = true;
    for (std::size_t i = 0; i < entry.space.world_count(); ++i) {
        if (!first) out += "; ";
        out += entry.space.worlds()[i] + ": " + serialize(entry.space.weights()[i]);
        first = false;
    }
    for (const auto& [rname, rr] : entry.reals) {
        out += "; rr " + rname + " = (";
        for (std::size_t i = 0; i < rr.values().size(); ++i) {
            if (i) out += ", ";
            out += serialize(rr.values()[i]);
        }
        out += ")";
    }
    return out + " }";
}

inline std::string serialize_family(const std::string& name, const Workspace::FamilyEntry& entry) {
    std::string out = "family " + name + " { ";
    for (std::size_t i = 0; i < entry.member_names.size(); ++i) {
        if (i) out += ", ";
        out += entry.member_names[i];
    }
    return out + " }";
}

/// Full workspace, one declaration per line, names sorted per kind.
inline std::string serialize(const Workspace& ws) {
    std::string out;
    for (const auto& [name, algebra] : ws.algebras) out += serialize_algebra(name, algebra) + "\n";
    for (const auto& [name, entry] : ws.environments) out += serialize_env(name, entry.algebra_name, entry.env) + "\n";
    for (const auto& [name, entry] : ws.spaces) out += serialize_space(name, entry) + "\n";
    for (const auto& [name, entry] : ws.families) out += serialize_family(name, entry) + "\n";
    return out;
}

} // namespace bvm
