#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bvm/universe.hpp"

/** @file logic.hpp
 *  The first-order set-theoretic language and its boolean-valued evaluation.
 *
 *  Atomic formulas t = s and t ∈ s evaluate by the recursive clauses of
 *  universe.hpp; connectives evaluate by the algebra operations. Quantifiers
 *  are always bounded: either over the domain of a term,
 *      [[∀x∈t φ]] = ⋀_{y ∈ dom(t)} ( t(y) ⇒ [[φ[x:=y]]] ),
 *  or over the enumerated universe up to an explicit rank. There is no
 *  unbounded quantifier — a finite tool must not pretend to quantify over a
 *  proper class, so the rank bound is part of the syntax.
 */

namespace bvm {

/// Element description that is resolved against an algebra at evaluation time.
struct ElementExpr {
    enum class Kind { Zero, One, Atoms };
    Kind kind = Kind::Zero;
    std::vector<std::string> atoms; // for Kind::Atoms

    static ElementExpr zero() { return {Kind::Zero, {}}; }
    static ElementExpr one() { return {Kind::One, {}}; }
    static ElementExpr of_atoms(std::vector<std::string> names) { return {Kind::Atoms, std::move(names)}; }

    BoolElement resolve(const BoolAlgebra& algebra) const {
        switch (kind) {
            case Kind::Zero: return algebra.zero();
            case Kind::One: return algebra.one();
            case Kind::Atoms: return algebra.element_from_atom_names(atoms);
        }
        throw Error("corrupt element expression");
    }

    bool operator==(const ElementExpr& other) const { return kind == other.kind && atoms == other.atoms; }
};

/// A term of the language: an identifier (quantified variable or environment
/// binding), the canonical name of a hereditarily finite set literal, or an
/// inline boolean-valued set literal.
class Term {
public:
    enum class Kind { Ident, HFName, Literal };

    static Term ident(std::string name) {
        auto b = std::make_shared<Body>();
        b->kind = Kind::Ident;
        b->name = std::move(name);
        return Term(std::move(b));
    }
    static Term hf_name(HFSet value) {
        auto b = std::make_shared<Body>();
        b->kind = Kind::HFName;
        b->hf = std::move(value);
        return Term(std::move(b));
    }
    static Term literal(std::vector<std::pair<Term, ElementExpr>> entries) {
        auto b = std::make_shared<Body>();
        b->kind = Kind::Literal;
        b->entries = std::move(entries);
        return Term(std::move(b));
    }

    Kind kind() const { return body_->kind; }
    const std::string& name() const { return body_->name; }
    const HFSet& hf() const { return body_->hf; }
    const std::vector<std::pair<Term, ElementExpr>>& literal_entries() const { return body_->entries; }

private:
    struct Body {
        Kind kind;
        std::string name;
        HFSet hf;
        std::vector<std::pair<Term, ElementExpr>> entries;
    };
    explicit Term(std::shared_ptr<const Body> b) : body_(std::move(b)) {}
    std::shared_ptr<const Body> body_;
};

class Formula {
public:
    enum class Kind { Eq, Mem, Not, And, Or, Implies, ForallIn, ExistsIn, ForallRank, ExistsRank };

    static Formula eq(Term lhs, Term rhs) { return atomic(Kind::Eq, std::move(lhs), std::move(rhs)); }
    static Formula mem(Term lhs, Term rhs) { return atomic(Kind::Mem, std::move(lhs), std::move(rhs)); }
    static Formula logic_not(Formula f) {
        auto b = std::make_shared<Body>();
        b->kind = Kind::Not;
        b->child_a = std::make_shared<Formula>(std::move(f));
        return Formula(std::move(b));
    }
    static Formula logic_and(Formula f, Formula g) { return binary(Kind::And, std::move(f), std::move(g)); }
    static Formula logic_or(Formula f, Formula g) { return binary(Kind::Or, std::move(f), std::move(g)); }
    static Formula logic_implies(Formula f, Formula g) { return binary(Kind::Implies, std::move(f), std::move(g)); }
    static Formula forall_in(std::string var, Term bound, Formula body) {
        return quantifier(Kind::ForallIn, std::move(var), std::move(bound), 0, std::move(body));
    }
    static Formula exists_in(std::string var, Term bound, Formula body) {
        return quantifier(Kind::ExistsIn, std::move(var), std::move(bound), 0, std::move(body));
    }
    static Formula forall_rank(std::string var, int rank_bound, Formula body) {
        detail::require(rank_bound >= 0, "quantifier rank bound must be non-negative");
        return quantifier(Kind::ForallRank, std::move(var), Term::ident("_"), rank_bound, std::move(body));
    }
    static Formula exists_rank(std::string var, int rank_bound, Formula body) {
        detail::require(rank_bound >= 0, "quantifier rank bound must be non-negative");
        return quantifier(Kind::ExistsRank, std::move(var), Term::ident("_"), rank_bound, std::move(body));
    }

    Kind kind() const { return body_->kind; }
    const Term& lhs() const { return *body_->lhs; }
    const Term& rhs() const { return *body_->rhs; }
    const Formula& child() const { return *body_->child_a; }
    const Formula& left() const { return *body_->child_a; }
    const Formula& right() const { return *body_->child_b; }
    const std::string& var() const { return body_->var; }
    const Term& bound_term() const { return *body_->lhs; }
    int rank_bound() const { return body_->rank_bound; }

    bool is_quantifier() const {
        return body_->kind == Kind::ForallIn || body_->kind == Kind::ExistsIn ||
               body_->kind == Kind::ForallRank || body_->kind == Kind::ExistsRank;
    }

private:
    struct Body {
        Kind kind;
        std::shared_ptr<const Term> lhs, rhs; // atomic operands, or quantifier bound term in lhs
        std::shared_ptr<const Formula> child_a, child_b;
        std::string var;
        int rank_bound = 0;
    };
    explicit Formula(std::shared_ptr<const Body> b) : body_(std::move(b)) {}

    static Formula atomic(Kind k, Term lhs, Term rhs) {
        auto b = std::make_shared<Body>();
        b->kind = k;
        b->lhs = std::make_shared<Term>(std::move(lhs));
        b->rhs = std::make_shared<Term>(std::move(rhs));
        return Formula(std::move(b));
    }
    static Formula binary(Kind k, Formula f, Formula g) {
        auto b = std::make_shared<Body>();
        b->kind = k;
        b->child_a = std::make_shared<Formula>(std::move(f));
        b->child_b = std::make_shared<Formula>(std::move(g));
        return Formula(std::move(b));
    }
    static Formula quantifier(Kind k, std::string var, Term bound, int rank_bound, Formula body) {
        auto b = std::make_shared<Body>();
        b->kind = k;
        b->var = std::move(var);
        b->lhs = std::make_shared<Term>(std::move(bound));
        b->rank_bound = rank_bound;
        b->child_a = std::make_shared<Formula>(std::move(body));
        return Formula(std::move(b));
    }

    std::shared_ptr<const Body> body_;
};

/// Names available to formulas: an algebra plus identifier bindings.
struct Environment {
    BoolAlgebra algebra;
    std::map<std::string, BVSet> bindings;

    Environment(BoolAlgebra a, std::map<std::string, BVSet> b = {}) : algebra(std::move(a)), bindings(std::move(b)) {
        for (const auto& [name, set] : bindings)
            detail::require_same_algebra(set.algebra(), algebra, "environment binding");
    }

    Environment& bind(const std::string& name, BVSet value) {
        detail::require(detail::is_identifier(name), "binding name '" + name + "' is not a valid identifier");
        detail::require_same_algebra(value.algebra(), algebra, "environment binding");
        bindings.insert_or_assign(name, std::move(value));
        return *this;
    }
};

struct EvalOptions {
    std::size_t universe_budget = 100000; // for rank-bounded quantifiers
    bool use_cache = true;                // memoized =/∈ evaluation
};

namespace detail {

inline BoolElement atomic_value(const BVSet& a, const BVSet& b, bool eq, const EvalOptions& opt) {
    const std::uint64_t mask = eval_pair(a, b, eq, opt.use_cache, eq ? "eval =" : "eval ∈");
    return a.algebra().element(mask);
}

struct EvalCtx {
    const Environment& env;
    const EvalOptions& opt;
    std::map<std::string, BVSet> valuation; // quantifier variables
};

inline BVSet eval_term(EvalCtx& ctx, const Term& t);

inline BVSet eval_ident(EvalCtx& ctx, const std::string& name) {
    auto it = ctx.valuation.find(name);
    if (it != ctx.valuation.end()) return it->second;
    auto bound = ctx.env.bindings.find(name);
    if (bound != ctx.env.bindings.end()) return bound->second;
    throw Error("unbound identifier '" + name + "'");
}

inline BVSet eval_term(EvalCtx& ctx, const Term& t) {
    switch (t.kind()) {
        case Term::Kind::Ident: return eval_ident(ctx, t.name());
        case Term::Kind::HFName: return canonical_name(ctx.env.algebra, t.hf());
        case Term::Kind::Literal: {
            std::vector<std::pair<BVSet, BoolElement>> entries;
            entries.reserve(t.literal_entries().size());
            for (const auto& [key, value] : t.literal_entries())
                entries.emplace_back(eval_term(ctx, key), value.resolve(ctx.env.algebra));
            return BVSet::make(ctx.env.algebra, std::move(entries));
        }
    }
    throw Error("corrupt term");
}

inline BoolElement eval_formula(EvalCtx& ctx, const Formula& f) {
    const BoolAlgebra& algebra = ctx.env.algebra;
    switch (f.kind()) {
        case Formula::Kind::Eq:
            return atomic_value(eval_term(ctx, f.lhs()), eval_term(ctx, f.rhs()), true, ctx.opt);
        case Formula::Kind::Mem:
            return atomic_value(eval_term(ctx, f.lhs()), eval_term(ctx, f.rhs()), false, ctx.opt);
        case Formula::Kind::Not:
            return complement(eval_formula(ctx, f.child()));
        case Formula::Kind::And:
            return meet(eval_formula(ctx, f.left()), eval_formula(ctx, f.right()));
        case Formula::Kind::Or:
            return join(eval_formula(ctx, f.left()), eval_formula(ctx, f.right()));
        case Formula::Kind::Implies:
            return implies(eval_formula(ctx, f.left()), eval_formula(ctx, f.right()));
        case Formula::Kind::ForallIn:
        case Formula::Kind::ExistsIn: {
            const bool universal = f.kind() == Formula::Kind::ForallIn;
            const BVSet range = eval_term(ctx, f.bound_term()); // evaluated once
            BoolElement acc = universal ? algebra.one() : algebra.zero();
            for (const auto& [y, ty] : range.entries()) {
                auto saved = ctx.valuation.find(f.var());
                const bool had = saved != ctx.valuation.end();
                BVSet old = had ? saved->second : y;
                ctx.valuation.insert_or_assign(f.var(), y);
                const BoolElement inner = eval_formula(ctx, f.child());
                if (had)
                    ctx.valuation.insert_or_assign(f.var(), old);
                else
                    ctx.valuation.erase(f.var());
                acc = universal ? meet(acc, implies(ty, inner)) : join(acc, meet(ty, inner));
            }
            return acc;
        }
        case Formula::Kind::ForallRank:
        case Formula::Kind::ExistsRank: {
            const bool universal = f.kind() == Formula::Kind::ForallRank;
            const auto universe = enumerate_universe(algebra, f.rank_bound(), ctx.opt.universe_budget);
            BoolElement acc = universal ? algebra.one() : algebra.zero();
            for (const auto& y : universe) {
                auto saved = ctx.valuation.find(f.var());
                const bool had = saved != ctx.valuation.end();
                BVSet old = had ? saved->second : y;
                ctx.valuation.insert_or_assign(f.var(), y);
                const BoolElement inner = eval_formula(ctx, f.child());
                if (had)
                    ctx.valuation.insert_or_assign(f.var(), old);
                else
                    ctx.valuation.erase(f.var());
                acc = universal ? meet(acc, inner) : join(acc, inner);
            }
            return acc;
        }
    }
    throw Error("corrupt formula");
}

} // namespace detail

/// Exact boolean value of a closed formula in the environment.
inline BoolElement eval(const Environment& env, const Formula& formula, const EvalOptions& options = {}) {
    detail::EvalCtx ctx{env, options, {}};
    return detail::eval_formula(ctx, formula);
}

/// Boolean-valued satisfaction: the value is the top element.
inline bool models(const Environment& env, const Formula& formula, const EvalOptions& options = {}) {
    return eval(env, formula, options).is_one();
}

/// A named family of boolean-valued universes (algebra + bindings per member).
struct AlgebraFamily {
    struct Member {
        std::string name;
        Environment env;
    };
    std::vector<Member> members;

    AlgebraFamily(std::vector<Member> m) : members(std::move(m)) {
        detail::require(!members.empty(), "an algebra family must be nonempty");
    }
};

/// Per-member truth values plus the family verdict.
struct KaleidoReport {
    struct Entry {
        std::string name;
        BoolElement value;
        bool holds; // value == 1 in that member
    };
    std::vector<Entry> per_member;
    bool overall; // true in every member of the family
};

/// Truth over the whole family: φ holds iff it holds in every member universe.
/// A member evaluation error aborts with the member named.
inline KaleidoReport kaleidoscopic_eval(const AlgebraFamily& family, const Formula& formula,
                                        const EvalOptions& options = {}) {
    KaleidoReport report;
    report.overall = true;
    for (const auto& member : family.members) {
        try {
            BoolElement value = eval(member.env, formula, options);
            const bool holds = value.is_one();
            report.per_member.push_back({member.name, value, holds});
            report.overall = report.overall && holds;
        } catch (const Error& e) {
            throw Error("in family member '" + member.name + "': " + e.what());
        }
    }
    return report;
}

/// Structural equality up to consistent renaming of quantifier variables.
inline bool alpha_equal(const Formula& f, const Formula& g);

namespace detail {

inline bool term_equal(const Term& a, const Term& b, const std::map<std::string, std::string>& rename) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case Term::Kind::Ident: {
            auto it = rename.find(a.name());
            return it != rename.end() ? it->second == b.name() : a.name() == b.name();
        }
        case Term::Kind::HFName: return a.hf() == b.hf();
        case Term::Kind::Literal: {
            if (a.literal_entries().size() != b.literal_entries().size()) return false;
            for (std::size_t i = 0; i < a.literal_entries().size(); ++i) {
                if (!(a.literal_entries()[i].second == b.literal_entries()[i].second)) return false;
                if (!term_equal(a.literal_entries()[i].first, b.literal_entries()[i].first, rename)) return false;
            }
            return true;
        }
    }
    return false;
}

inline bool alpha_equal_impl(const Formula& f, const Formula& g, std::map<std::string, std::string> rename) {
    if (f.kind() != g.kind()) return false;
    switch (f.kind()) {
        case Formula::Kind::Eq:
        case Formula::Kind::Mem:
            return term_equal(f.lhs(), g.lhs(), rename) && term_equal(f.rhs(), g.rhs(), rename);
        case Formula::Kind::Not:
            return alpha_equal_impl(f.child(), g.child(), rename);
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
            return alpha_equal_impl(f.left(), g.left(), rename) && alpha_equal_impl(f.right(), g.right(), rename);
        case Formula::Kind::ForallIn:
        case Formula::Kind::ExistsIn:
            if (!term_equal(f.bound_term(), g.bound_term(), rename)) return false;
            rename.insert_or_assign(f.var(), g.var());
            return alpha_equal_impl(f.child(), g.child(), std::move(rename));
        case Formula::Kind::ForallRank:
        case Formula::Kind::ExistsRank:
            if (f.rank_bound() != g.rank_bound()) return false;
            rename.insert_or_assign(f.var(), g.var());
            return alpha_equal_impl(f.child(), g.child(), std::move(rename));
    }
    return false;
}

} // namespace detail

inline bool alpha_equal(const Formula& f, const Formula& g) { return detail::alpha_equal_impl(f, g, {}); }

} // namespace bvm
