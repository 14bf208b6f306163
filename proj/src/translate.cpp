#include "proofkit/translate.hpp"

#include "proofkit/errors.hpp"
#include "proofkit/syntax.hpp"

namespace proofkit {

using K = Term::Kind;
using FK = Formula::Kind;

FormulaPtr rp_formula(const FormulaPtr& a) {
    switch (a->kind) {
    case FK::Var: return a;
    case FK::Bot: return encode_bot();
    case FK::Imp: return fimp(rp_formula(a->left), rp_formula(a->right));
    case FK::And: return fand(rp_formula(a->left), rp_formula(a->right));
    case FK::Or: return encode_or(rp_formula(a->left), rp_formula(a->right));
    case FK::Forall: break;
    }
    throw Error(ErrorKind::NotIPCFormula, print(a) + " is not an IPC formula");
}

Environment rp_env(const Environment& env) { return env.map(rp_formula); }

TermPtr mk_IN(int i, const TermPtr& m, const FormulaPtr& a, const FormulaPtr& b) {
    NameSet avoid = ftv(m);
    collect_ftv(a, avoid);
    collect_ftv(b, avoid);
    std::string x = fresh_name("X", avoid);
    std::string w = fresh_name("w", fv(m));
    FormulaPtr X = fvar(x);
    return tylam(x, lam(w, fand(fimp(a, X), fimp(b, X)), app(proj(i, var(w)), m)));
}

TermPtr mk_CASE(const TermPtr& m, const std::string& x, const FormulaPtr& a, const TermPtr& p, const std::string& y,
                const FormulaPtr& b, const TermPtr& q, const FormulaPtr& c) {
    return app(tyapp(m, c), pair(lam(x, a, p), lam(y, b, q)));
}

TermPtr mk_ABORT(const TermPtr& m, const FormulaPtr& a) { return tyapp(m, a); }

TermPtr mk_case_at(const TermPtr& m, const std::string& x, const FormulaPtr& a, const TermPtr& p,
                   const std::string& y, const FormulaPtr& b, const TermPtr& q, const FormulaPtr& c) {
    switch (c->kind) {
    case FK::Imp: {
        NameSet avoid = fv(m);
        collect_fv(p, avoid);
        collect_fv(q, avoid);
        avoid.insert(x);
        avoid.insert(y);
        std::string z = fresh_name("z", avoid);
        return lam(z, c->left, mk_case_at(m, x, a, app(p, var(z)), y, b, app(q, var(z)), c->right));
    }
    case FK::And:
        return pair(mk_case_at(m, x, a, proj(1, p), y, b, proj(1, q), c->left),
                    mk_case_at(m, x, a, proj(2, p), y, b, proj(2, q), c->right));
    case FK::Forall: {
        NameSet avoid = ftv(m);
        collect_ftv(p, avoid);
        collect_ftv(q, avoid);
        collect_ftv(a, avoid);
        collect_ftv(b, avoid);
        collect_ftv(c, avoid);
        std::string v = fresh_name(c->name, avoid);
        FormulaPtr body = v == c->name ? c->left : subst_type_in_formula(fvar(v), c->name, c->left);
        return tylam(v, mk_case_at(m, x, a, tyapp(p, fvar(v)), y, b, tyapp(q, fvar(v)), body));
    }
    default: return mk_CASE(m, x, a, p, y, b, q, c);
    }
}

TermPtr mk_abort_at(const TermPtr& m, const FormulaPtr& a) {
    switch (a->kind) {
    case FK::Imp: return lam(fresh_name("z", fv(m)), a->left, mk_abort_at(m, a->right));
    case FK::And: return pair(mk_abort_at(m, a->left), mk_abort_at(m, a->right));
    case FK::Forall: {
        NameSet avoid = ftv(m);
        collect_ftv(a, avoid);
        std::string v = fresh_name(a->name, avoid);
        FormulaPtr body = v == a->name ? a->left : subst_type_in_formula(fvar(v), a->name, a->left);
        return tylam(v, mk_abort_at(m, body));
    }
    default: return mk_ABORT(m, a);
    }
}

const TranslationScheme& rp_scheme() {
    static const TranslationScheme s{mk_IN, mk_CASE, mk_ABORT};
    return s;
}

const TranslationScheme& at_scheme() {
    static const TranslationScheme s{mk_IN, mk_case_at, mk_abort_at};
    return s;
}

namespace {

TermPtr tr(const TermPtr& m, const TranslationScheme& s) {
    switch (m->kind) {
    case K::Var: return m;
    case K::Lam: return lam(m->x, rp_formula(m->ty), tr(m->a, s));
    case K::App: return app(tr(m->a, s), tr(m->b, s));
    case K::Pair: return pair(tr(m->a, s), tr(m->b, s));
    case K::Proj: return proj(m->index, tr(m->a, s));
    case K::Inj: return s.in(m->index, tr(m->a, s), rp_formula(m->ty), rp_formula(m->ty2));
    case K::Case:
        return s.kase(tr(m->a, s), m->x, rp_formula(m->ty), tr(m->b, s), m->y, rp_formula(m->ty2), tr(m->c, s),
                      rp_formula(m->ty3));
    case K::Abort: return s.abort(tr(m->a, s), rp_formula(m->ty));
    default: break;
    }
    throw Error(ErrorKind::NotIPCTerm, "type abstraction or instantiation in an IPC term");
}

}  // namespace

TermPtr translate_term(const TermPtr& m, const TranslationScheme& s) {
    if (!term_in_system(m, SystemId::IPC)) throw Error(ErrorKind::NotIPCTerm, print(m) + " is not an IPC term");
    return tr(m, s);
}

TermPtr rp_term(const TermPtr& m) { return translate_term(m, rp_scheme()); }
TermPtr at_term(const TermPtr& m) { return translate_term(m, at_scheme()); }

namespace {

std::vector<Position> prefixed(int i, const std::vector<Position>& ps, bool wrapped) {
    std::vector<Position> out;
    for (const auto& p : ps) {
        Position q{i};
        q.insert(q.end(), p.begin(), p.end());
        if (wrapped) q.push_back(0);
        out.push_back(std::move(q));
    }
    return out;
}

void add(std::vector<Position>& dst, const std::vector<Position>& src) { dst.insert(dst.end(), src.begin(), src.end()); }

}  // namespace

CaseAtLayout case_at_layout(const FormulaPtr& c) {
    CaseAtLayout out;
    auto layer = [&](int i, const CaseAtLayout& inner) {
        add(out.leaves, prefixed(i, inner.leaves, false));
        add(out.scrutinee, prefixed(i, inner.scrutinee, false));
        add(out.left, prefixed(i, inner.left, true));
        add(out.right, prefixed(i, inner.right, true));
    };
    switch (c->kind) {
    case FK::Imp: layer(0, case_at_layout(c->right)); break;
    case FK::And:
        layer(0, case_at_layout(c->left));
        layer(1, case_at_layout(c->right));
        break;
    case FK::Forall: layer(0, case_at_layout(c->left)); break;
    default:
        out.leaves = {{}};
        out.scrutinee = {{0, 0}};
        out.left = {{1, 0, 0}};
        out.right = {{1, 1, 0}};
    }
    return out;
}

AbortAtLayout abort_at_layout(const FormulaPtr& c) {
    AbortAtLayout out;
    auto layer = [&](int i, const AbortAtLayout& inner) {
        add(out.leaves, prefixed(i, inner.leaves, false));
        add(out.scrutinee, prefixed(i, inner.scrutinee, false));
    };
    switch (c->kind) {
    case FK::Imp: layer(0, abort_at_layout(c->right)); break;
    case FK::And:
        layer(0, abort_at_layout(c->left));
        layer(1, abort_at_layout(c->right));
        break;
    case FK::Forall: layer(0, abort_at_layout(c->left)); break;
    default:
        out.leaves = {{}};
        out.scrutinee = {{0}};
    }
    return out;
}

namespace {

[[noreturn]] void bad_path(const Position& p) {
    throw Error(ErrorKind::InvalidPath, "no subterm at " + position_string(p), p);
}

}  // namespace

Position rp_path(const TermPtr& m, const Position& p) {
    Position out;
    TermPtr t = m;
    for (int i : p) {
        if (i < 0 || static_cast<std::size_t>(i) >= t->arity()) bad_path(p);
        switch (t->kind) {
        case K::Inj: out.insert(out.end(), {0, 0, 1}); break;
        case K::Case:
            if (i == 0) out.insert(out.end(), {0, 0});
            if (i == 1) out.insert(out.end(), {1, 0, 0});
            if (i == 2) out.insert(out.end(), {1, 1, 0});
            break;
        case K::Abort: out.push_back(0); break;
        default: out.push_back(i);
        }
        t = t->child(static_cast<std::size_t>(i));
    }
    return out;
}

std::vector<Position> at_paths(const TermPtr& m, const Position& p) {
    std::vector<Position> cur{{}};
    TermPtr t = m;
    for (int i : p) {
        if (i < 0 || static_cast<std::size_t>(i) >= t->arity()) bad_path(p);
        std::vector<Position> steps;
        switch (t->kind) {
        case K::Inj: steps = {{0, 0, 1}}; break;
        case K::Case: {
            CaseAtLayout l = case_at_layout(rp_formula(t->ty3));
            steps = i == 0 ? l.scrutinee : i == 1 ? l.left : l.right;
            break;
        }
        case K::Abort: steps = abort_at_layout(rp_formula(t->ty)).scrutinee; break;
        default: steps = {{i}};
        }
        std::vector<Position> next;
        for (const auto& c : cur)
            for (const auto& s : steps) next.push_back(concat(c, s));
        cur = std::move(next);
        t = t->child(static_cast<std::size_t>(i));
    }
    return cur;
}

}  // namespace proofkit
