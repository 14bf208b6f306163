#include "proofkit/typing.hpp"

#include <algorithm>

#include "proofkit/syntax.hpp"

namespace proofkit {

using K = Term::Kind;
using FK = Formula::Kind;

Environment::Environment(std::initializer_list<Entry> entries) {
    for (const auto& [x, a] : entries) insert(x, a);
}

void Environment::insert(const std::string& x, FormulaPtr a) {
    if (contains(x)) throw Error(ErrorKind::DuplicateBinding, "variable " + x + " declared twice");
    entries_.emplace_back(x, std::move(a));
}

Environment Environment::extended(const std::string& x, FormulaPtr a) const {
    Environment out;
    out.entries_.reserve(entries_.size() + 1);
    for (const auto& e : entries_)
        if (e.first != x) out.entries_.push_back(e);
    out.entries_.emplace_back(x, std::move(a));
    return out;
}

const FormulaPtr* Environment::lookup(const std::string& x) const {
    for (const auto& e : entries_)
        if (e.first == x) return &e.second;
    return nullptr;
}

NameSet Environment::ftv() const {
    NameSet out;
    for (const auto& e : entries_) collect_ftv(e.second, out);
    return out;
}

NameSet Environment::names() const {
    NameSet out;
    for (const auto& e : entries_) out.insert(e.first);
    return out;
}

Environment Environment::map(const std::function<FormulaPtr(const FormulaPtr&)>& f) const {
    Environment out;
    for (const auto& e : entries_) out.entries_.emplace_back(e.first, f(e.second));
    return out;
}

bool operator==(const Environment& a, const Environment& b) {
    if (a.entries_.size() != b.entries_.size()) return false;
    for (std::size_t i = 0; i < a.entries_.size(); ++i)
        if (a.entries_[i].first != b.entries_[i].first || !alpha_eq(a.entries_[i].second, b.entries_[i].second))
            return false;
    return true;
}

namespace {

struct Checker {
    SystemId sys;
    const TypecheckOptions& opts;
    Position pos;

    [[noreturn]] void fail(ErrorKind k, const std::string& msg) const {
        throw Error(k, msg + " at " + position_string(pos), pos);
    }

    void mismatch(const std::string& what, const FormulaPtr& expected, const FormulaPtr& found) const {
        fail(ErrorKind::TypeMismatch, what + ": expected " + print(expected) + ", found " + print(found));
    }

    void annotation(const FormulaPtr& a) const {
        if (!formula_in_system(a, sys))
            fail(ErrorKind::NotInSystem, "annotation " + print(a) + " is not a " + system_name(sys) + " formula");
    }

    FormulaPtr child(const Environment& env, const TermPtr& m, int i) {
        pos.push_back(i);
        FormulaPtr t = run(env, m->child(static_cast<std::size_t>(i)));
        pos.pop_back();
        return t;
    }

    FormulaPtr run(const Environment& env, const TermPtr& m) {
        FormulaPtr t = infer(env, m);
        if (opts.hook) opts.hook(pos, env, m, t);
        return t;
    }

    FormulaPtr infer(const Environment& env, const TermPtr& m) {
        switch (m->kind) {
        case K::Var: {
            const FormulaPtr* a = env.lookup(m->x);
            if (!a) fail(ErrorKind::UnboundVariable, "variable " + m->x + " is not declared");
            return *a;
        }
        case K::Lam: {
            annotation(m->ty);
            pos.push_back(0);
            FormulaPtr b = run(env.extended(m->x, m->ty), m->a);
            pos.pop_back();
            return fimp(m->ty, b);
        }
        case K::App: {
            FormulaPtr f = child(env, m, 0);
            if (f->kind != FK::Imp)
                fail(ErrorKind::TypeMismatch, "applied term has type " + print(f) + ", not an implication");
            FormulaPtr a = child(env, m, 1);
            if (!alpha_eq(a, f->left)) mismatch("argument", f->left, a);
            return f->right;
        }
        case K::Pair: {
            FormulaPtr a = child(env, m, 0);
            return fand(a, child(env, m, 1));
        }
        case K::Proj: {
            FormulaPtr a = child(env, m, 0);
            if (a->kind != FK::And)
                fail(ErrorKind::TypeMismatch, "projected term has type " + print(a) + ", not a conjunction");
            return m->index == 1 ? a->left : a->right;
        }
        case K::Inj: {
            if (sys != SystemId::IPC) fail(ErrorKind::NotInSystem, "injection outside IPC");
            annotation(m->ty);
            annotation(m->ty2);
            FormulaPtr a = child(env, m, 0);
            const FormulaPtr& want = m->index == 1 ? m->ty : m->ty2;
            if (!alpha_eq(a, want)) mismatch("injected term", want, a);
            return f_or(m->ty, m->ty2);
        }
        case K::Case: {
            if (sys != SystemId::IPC) fail(ErrorKind::NotInSystem, "case outside IPC");
            annotation(m->ty);
            annotation(m->ty2);
            annotation(m->ty3);
            FormulaPtr s = child(env, m, 0);
            FormulaPtr want = f_or(m->ty, m->ty2);
            if (!alpha_eq(s, want)) mismatch("case scrutinee", want, s);
            pos.push_back(1);
            FormulaPtr p = run(env.extended(m->x, m->ty), m->b);
            if (!alpha_eq(p, m->ty3)) mismatch("first branch", m->ty3, p);
            pos.back() = 2;
            FormulaPtr q = run(env.extended(m->y, m->ty2), m->c);
            if (!alpha_eq(q, m->ty3)) mismatch("second branch", m->ty3, q);
            pos.pop_back();
            return m->ty3;
        }
        case K::Abort: {
            if (sys != SystemId::IPC) fail(ErrorKind::NotInSystem, "abort outside IPC");
            annotation(m->ty);
            FormulaPtr a = child(env, m, 0);
            if (a->kind != FK::Bot) mismatch("aborted term", fbot(), a);
            return m->ty;
        }
        case K::TyLam: {
            if (sys == SystemId::IPC) fail(ErrorKind::NotInSystem, "type abstraction in IPC");
            TermPtr body = m->a;
            std::string x = m->x;
            bool clash = false;
            for (const auto& e : env.entries()) clash = clash || occurs_free(x, e.second);
            if (clash) {
                NameSet envFtv = env.ftv();
                if (opts.strictProviso)
                    fail(ErrorKind::ForallProvisoViolated, "type variable " + x + " is free in the environment");
                NameSet avoid = std::move(envFtv);
                collect_ftv(body, avoid);
                std::string x2 = fresh_name(x, avoid);
                body = subst_type_in_term(fvar(x2), x, body);
                x = x2;
            }
            pos.push_back(0);
            FormulaPtr a = run(env, body);
            pos.pop_back();
            return fall(x, a);
        }
        case K::TyApp: {
            if (sys == SystemId::IPC) fail(ErrorKind::NotInSystem, "type application in IPC");
            annotation(m->ty);
            if (sys == SystemId::FAT && !m->ty->is_atomic())
                fail(ErrorKind::NonAtomicInstantiation, "instantiation with non-atomic " + print(m->ty));
            FormulaPtr a = child(env, m, 0);
            if (a->kind != FK::Forall)
                fail(ErrorKind::TypeMismatch, "instantiated term has type " + print(a) + ", not a universal");
            return subst_type_in_formula(m->ty, a->name, a->left);
        }
        }
        fail(ErrorKind::InvariantViolation, "unknown term kind");
    }
};

void check_env(SystemId sys, const Environment& env) {
    for (const auto& [x, a] : env.entries())
        if (!formula_in_system(a, sys))
            throw Error(ErrorKind::NotInSystem,
                        "declaration " + x + ":" + print(a) + " is not a " + system_name(sys) + " formula");
}

}  // namespace

FormulaPtr typecheck(SystemId sys, const Environment& env, const TermPtr& m, const TypecheckOptions& opts) {
    check_env(sys, env);
    Checker c{sys, opts, {}};
    return c.run(env, m);
}

FormulaPtr typecheck_elim_context(SystemId sys, const Environment& env, const ElimContext& e,
                                  const FormulaPtr& holeType) {
    check_env(sys, env);
    TypecheckOptions opts;
    auto hole = [&](const std::string& msg) {
        throw Error(ErrorKind::HoleTypeMismatch, "hole of type " + print(holeType) + " " + msg);
    };
    using EK = ElimContext::Kind;
    switch (e.kind) {
    case EK::AppHole: {
        if (holeType->kind != FK::Imp) hole("is not an implication");
        FormulaPtr a = typecheck(sys, env, e.arg, opts);
        if (!alpha_eq(a, holeType->left))
            throw Error(ErrorKind::TypeMismatch,
                        "argument: expected " + print(holeType->left) + ", found " + print(a));
        return holeType->right;
    }
    case EK::ProjHole:
        if (holeType->kind != FK::And) hole("is not a conjunction");
        return e.index == 1 ? holeType->left : holeType->right;
    case EK::CaseHole: {
        if (sys != SystemId::IPC) throw Error(ErrorKind::NotInSystem, "case context outside IPC");
        if (holeType->kind != FK::Or || !alpha_eq(holeType->left, e.a) || !alpha_eq(holeType->right, e.b))
            hole("does not match " + print(f_or(e.a, e.b)));
        FormulaPtr p = typecheck(sys, env.extended(e.x, e.a), e.p, opts);
        if (!alpha_eq(p, e.ty))
            throw Error(ErrorKind::TypeMismatch, "first branch: expected " + print(e.ty) + ", found " + print(p));
        FormulaPtr q = typecheck(sys, env.extended(e.y, e.b), e.q, opts);
        if (!alpha_eq(q, e.ty))
            throw Error(ErrorKind::TypeMismatch, "second branch: expected " + print(e.ty) + ", found " + print(q));
        return e.ty;
    }
    case EK::AbortHole:
        if (sys != SystemId::IPC) throw Error(ErrorKind::NotInSystem, "abort context outside IPC");
        if (holeType->kind != FK::Bot) hole("is not bot");
        return e.ty;
    case EK::TyAppHole:
        if (sys == SystemId::IPC) throw Error(ErrorKind::NotInSystem, "type application context in IPC");
        if (sys == SystemId::FAT && !e.ty->is_atomic())
            throw Error(ErrorKind::NonAtomicInstantiation, "instantiation with non-atomic " + print(e.ty));
        if (holeType->kind != FK::Forall) hole("is not a universal");
        return subst_type_in_formula(e.ty, holeType->name, holeType->left);
    }
    throw Error(ErrorKind::InvariantViolation, "unknown context kind");
}

bool is_fine_redex(const Environment& env, const TermPtr& m, RuleId rule) {
    ShapeResult s = match_shape(rule, m);
    if (s != ShapeResult::Match)
        throw Error(ErrorKind::NotARedex, std::string("term is not a ") + rule_name(rule) + " redex");
    if (!is_fine_sensitive(rule)) return true;
    FineObligation o = fine_obligation(rule, m);
    FormulaPtr t;
    try {
        // The environment is the caller's; only the head is checked here.
        Checker c{SystemId::F, {}, {}};
        t = c.run(env, o.head);
    } catch (const Error&) {
        return false;
    }
    if (o.kind == FineObligation::Kind::Bot) return is_encoded_bot(t);
    auto parts = match_encoded_or(t);
    return parts && alpha_eq(parts->first, o.a) && alpha_eq(parts->second, o.b);
}

Environment env_at(const Environment& env, const TermPtr& m, const Position& p) {
    Environment cur = env;
    TermPtr t = m;
    for (int i : p) {
        if (i < 0 || static_cast<std::size_t>(i) >= t->arity())
            throw Error(ErrorKind::InvalidPath, "no subterm at " + position_string(p), p);
        if (t->kind == K::Lam) cur = cur.extended(t->x, t->ty);
        if (t->kind == K::Case && i == 1) cur = cur.extended(t->x, t->ty);
        if (t->kind == K::Case && i == 2) cur = cur.extended(t->y, t->ty2);
        t = t->child(static_cast<std::size_t>(i));
    }
    return cur;
}

}  // namespace proofkit
