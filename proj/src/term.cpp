#include "proofkit/term.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace proofkit {

namespace {

using K = Term::Kind;

TermPtr make(Term t) { return std::make_shared<const Term>(std::move(t)); }

Term blank(K k) {
    Term t;
    t.kind = k;
    return t;
}

int bound_index(const std::vector<std::string>& stack, const std::string& x) {
    for (int i = static_cast<int>(stack.size()) - 1; i >= 0; --i)
        if (stack[i] == x) return static_cast<int>(stack.size()) - 1 - i;
    return -1;
}

// Formula comparison under the type binders introduced by enclosing tfun.
bool formula_eq_under(const FormulaPtr& a, const FormulaPtr& b, const std::vector<std::string>& ta,
                      const std::vector<std::string>& tb) {
    if (ta == tb) return alpha_eq(a, b);
    // Close both formulas over the enclosing binders, innermost last.
    FormulaPtr ca = a, cb = b;
    for (auto it = ta.rbegin(); it != ta.rend(); ++it) ca = fall(*it, ca);
    for (auto it = tb.rbegin(); it != tb.rend(); ++it) cb = fall(*it, cb);
    return alpha_eq(ca, cb);
}

struct AlphaCtx {
    std::vector<std::string> va, vb, ta, tb;
};

bool alpha_rec(const TermPtr& a, const TermPtr& b, AlphaCtx& c);

bool bind_and_compare(const std::string& xa, const std::string& xb, const TermPtr& a, const TermPtr& b,
                      AlphaCtx& c) {
    c.va.push_back(xa);
    c.vb.push_back(xb);
    bool r = alpha_rec(a, b, c);
    c.va.pop_back();
    c.vb.pop_back();
    return r;
}

bool alpha_rec(const TermPtr& a, const TermPtr& b, AlphaCtx& c) {
    if (a == b && c.va == c.vb && c.ta == c.tb) return true;
    if (a->kind != b->kind) return false;
    auto feq = [&](const FormulaPtr& f, const FormulaPtr& g) { return formula_eq_under(f, g, c.ta, c.tb); };
    switch (a->kind) {
    case K::Var: {
        int ia = bound_index(c.va, a->x);
        int ib = bound_index(c.vb, b->x);
        if (ia != ib) return false;
        return ia >= 0 || a->x == b->x;
    }
    case K::Lam:
        return feq(a->ty, b->ty) && bind_and_compare(a->x, b->x, a->a, b->a, c);
    case K::App:
    case K::Pair:
        return alpha_rec(a->a, b->a, c) && alpha_rec(a->b, b->b, c);
    case K::Proj:
        return a->index == b->index && alpha_rec(a->a, b->a, c);
    case K::Inj:
        return a->index == b->index && feq(a->ty, b->ty) && feq(a->ty2, b->ty2) && alpha_rec(a->a, b->a, c);
    case K::Case:
        return feq(a->ty, b->ty) && feq(a->ty2, b->ty2) && feq(a->ty3, b->ty3) && alpha_rec(a->a, b->a, c) &&
               bind_and_compare(a->x, b->x, a->b, b->b, c) && bind_and_compare(a->y, b->y, a->c, b->c, c);
    case K::Abort:
        return feq(a->ty, b->ty) && alpha_rec(a->a, b->a, c);
    case K::TyLam: {
        c.ta.push_back(a->x);
        c.tb.push_back(b->x);
        bool r = alpha_rec(a->a, b->a, c);
        c.ta.pop_back();
        c.tb.pop_back();
        return r;
    }
    case K::TyApp:
        return feq(a->ty, b->ty) && alpha_rec(a->a, b->a, c);
    }
    return false;
}

void collect_fv_rec(const TermPtr& m, std::vector<std::string>& bound, NameSet& out) {
    switch (m->kind) {
    case K::Var:
        if (std::find(bound.begin(), bound.end(), m->x) == bound.end()) out.insert(m->x);
        return;
    case K::Lam:
    case K::TyLam:
        if (m->kind == K::Lam) {
            bound.push_back(m->x);
            collect_fv_rec(m->a, bound, out);
            bound.pop_back();
        } else {
            collect_fv_rec(m->a, bound, out);
        }
        return;
    case K::Case:
        collect_fv_rec(m->a, bound, out);
        bound.push_back(m->x);
        collect_fv_rec(m->b, bound, out);
        bound.pop_back();
        bound.push_back(m->y);
        collect_fv_rec(m->c, bound, out);
        bound.pop_back();
        return;
    default:
        for (std::size_t i = 0; i < m->arity(); ++i) collect_fv_rec(m->child(i), bound, out);
        return;
    }
}

void add_formula_ftv(const FormulaPtr& f, const std::vector<std::string>& bound, NameSet& out) {
    if (!f) return;
    for (const auto& v : ftv(f))
        if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.insert(v);
}

void collect_ftv_rec(const TermPtr& m, std::vector<std::string>& bound, NameSet& out) {
    add_formula_ftv(m->ty, bound, out);
    add_formula_ftv(m->ty2, bound, out);
    add_formula_ftv(m->ty3, bound, out);
    if (m->kind == K::TyLam) {
        bound.push_back(m->x);
        collect_ftv_rec(m->a, bound, out);
        bound.pop_back();
        return;
    }
    for (std::size_t i = 0; i < m->arity(); ++i) collect_ftv_rec(m->child(i), bound, out);
}

// Renames a term binder so that it avoids `avoid`; returns the new name and body.
std::pair<std::string, TermPtr> freshen_binder(const std::string& y, const TermPtr& body, NameSet avoid) {
    collect_fv(body, avoid);
    std::string y2 = fresh_name(y, avoid);
    return {y2, subst_term(var(y2), y, body)};
}

struct TermSubst {
    const TermPtr& n;
    const std::string& x;
    NameSet fvn;
    NameSet ftvn;

    TermPtr run(const TermPtr& m) {
        switch (m->kind) {
        case K::Var:
            return m->x == x ? n : m;
        case K::Lam: {
            if (m->x == x || !occurs_free(x, m->a)) return m;
            std::string y = m->x;
            TermPtr body = m->a;
            if (fvn.count(y)) {
                NameSet avoid = fvn;
                avoid.insert(x);
                std::tie(y, body) = freshen_binder(y, body, avoid);
            }
            return lam(y, m->ty, run(body));
        }
        case K::Case: {
            TermPtr scrut = run(m->a);
            auto branch = [&](const std::string& b, const TermPtr& body) -> std::pair<std::string, TermPtr> {
                if (b == x || !occurs_free(x, body)) return {b, body};
                std::string b2 = b;
                TermPtr body2 = body;
                if (fvn.count(b)) {
                    NameSet avoid = fvn;
                    avoid.insert(x);
                    std::tie(b2, body2) = freshen_binder(b, body, avoid);
                }
                return {b2, run(body2)};
            };
            auto [x1, p] = branch(m->x, m->b);
            auto [y1, q] = branch(m->y, m->c);
            return case_of(scrut, x1, m->ty, p, y1, m->ty2, q, m->ty3);
        }
        case K::TyLam: {
            if (!occurs_free(x, m->a)) return m;
            std::string tv = m->x;
            TermPtr body = m->a;
            if (ftvn.count(tv)) {
                NameSet avoid = ftvn;
                collect_ftv(body, avoid);
                std::string tv2 = fresh_name(tv, avoid);
                body = subst_type_in_term(fvar(tv2), tv, body);
                tv = tv2;
            }
            return tylam(tv, run(body));
        }
        default: {
            TermPtr out = m;
            for (std::size_t i = 0; i < m->arity(); ++i) {
                TermPtr c = run(m->child(i));
                if (c != m->child(i)) out = with_child(out, i, c);
            }
            return out;
        }
        }
    }
};

struct TypeSubst {
    const FormulaPtr& b;
    const std::string& x;
    NameSet ftvb;

    FormulaPtr f(const FormulaPtr& a) const { return a ? subst_type_in_formula(b, x, a) : a; }

    TermPtr run(const TermPtr& m) {
        if (m->kind == K::TyLam) {
            if (m->x == x) return m;
            NameSet body_ftv = ftv(m->a);
            if (!body_ftv.count(x)) return m;
            std::string tv = m->x;
            TermPtr body = m->a;
            if (ftvb.count(tv)) {
                NameSet avoid = ftvb;
                avoid.insert(body_ftv.begin(), body_ftv.end());
                avoid.insert(x);
                std::string tv2 = fresh_name(tv, avoid);
                body = subst_type_in_term(fvar(tv2), tv, body);
                tv = tv2;
            }
            return tylam(tv, run(body));
        }
        Term t = *m;
        t.ty = f(m->ty);
        t.ty2 = f(m->ty2);
        t.ty3 = f(m->ty3);
        if (m->a) t.a = run(m->a);
        if (m->b) t.b = run(m->b);
        if (m->c) t.c = run(m->c);
        return make(std::move(t));
    }
};

}  // namespace

std::size_t Term::arity() const {
    switch (kind) {
    case K::Var: return 0;
    case K::App:
    case K::Pair: return 2;
    case K::Case: return 3;
    default: return 1;
    }
}

const TermPtr& Term::child(std::size_t i) const {
    if (i >= arity()) throw std::out_of_range("term child index");
    return i == 0 ? a : (i == 1 ? b : c);
}

TermPtr var(const std::string& x) {
    Term t = blank(K::Var);
    t.x = x;
    return make(std::move(t));
}

TermPtr lam(const std::string& x, FormulaPtr ty, TermPtr body) {
    Term t = blank(K::Lam);
    t.x = x;
    t.ty = std::move(ty);
    t.a = std::move(body);
    return make(std::move(t));
}

TermPtr app(TermPtr f, TermPtr arg) {
    Term t = blank(K::App);
    t.a = std::move(f);
    t.b = std::move(arg);
    return make(std::move(t));
}

TermPtr pair(TermPtr l, TermPtr r) {
    Term t = blank(K::Pair);
    t.a = std::move(l);
    t.b = std::move(r);
    return make(std::move(t));
}

TermPtr proj(int i, TermPtr m) {
    Term t = blank(K::Proj);
    t.index = i;
    t.a = std::move(m);
    return make(std::move(t));
}

TermPtr inj(int i, TermPtr m, FormulaPtr a, FormulaPtr b) {
    Term t = blank(K::Inj);
    t.index = i;
    t.a = std::move(m);
    t.ty = std::move(a);
    t.ty2 = std::move(b);
    return make(std::move(t));
}

TermPtr case_of(TermPtr m, const std::string& x, FormulaPtr a, TermPtr p, const std::string& y, FormulaPtr b,
                TermPtr q, FormulaPtr c) {
    Term t = blank(K::Case);
    t.a = std::move(m);
    t.x = x;
    t.ty = std::move(a);
    t.b = std::move(p);
    t.y = y;
    t.ty2 = std::move(b);
    t.c = std::move(q);
    t.ty3 = std::move(c);
    return make(std::move(t));
}

TermPtr abort_to(TermPtr m, FormulaPtr c) {
    Term t = blank(K::Abort);
    t.a = std::move(m);
    t.ty = std::move(c);
    return make(std::move(t));
}

TermPtr tylam(const std::string& x, TermPtr body) {
    Term t = blank(K::TyLam);
    t.x = x;
    t.a = std::move(body);
    return make(std::move(t));
}

TermPtr tyapp(TermPtr m, FormulaPtr b) {
    Term t = blank(K::TyApp);
    t.a = std::move(m);
    t.ty = std::move(b);
    return make(std::move(t));
}

TermPtr with_child(const TermPtr& t, std::size_t i, TermPtr child) {
    if (i >= t->arity()) throw std::out_of_range("term child index");
    Term c = *t;
    (i == 0 ? c.a : (i == 1 ? c.b : c.c)) = std::move(child);
    return make(std::move(c));
}

void collect_fv(const TermPtr& m, NameSet& out) {
    std::vector<std::string> bound;
    collect_fv_rec(m, bound, out);
}

NameSet fv(const TermPtr& m) {
    NameSet s;
    collect_fv(m, s);
    return s;
}

void collect_ftv(const TermPtr& m, NameSet& out) {
    std::vector<std::string> bound;
    collect_ftv_rec(m, bound, out);
}

NameSet ftv(const TermPtr& m) {
    NameSet s;
    collect_ftv(m, s);
    return s;
}

bool occurs_free(const std::string& x, const TermPtr& m) {
    switch (m->kind) {
    case K::Var: return m->x == x;
    case K::Lam: return m->x != x && occurs_free(x, m->a);
    case K::Case:
        return occurs_free(x, m->a) || (m->x != x && occurs_free(x, m->b)) || (m->y != x && occurs_free(x, m->c));
    default:
        for (std::size_t i = 0; i < m->arity(); ++i)
            if (occurs_free(x, m->child(i))) return true;
        return false;
    }
}

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
    AlphaCtx c;
    return alpha_rec(a, b, c);
}

bool identical(const TermPtr& a, const TermPtr& b) {
    if (a == b) return true;
    if (a->kind != b->kind || a->x != b->x || a->y != b->y || a->index != b->index) return false;
    auto same = [](const FormulaPtr& f, const FormulaPtr& g) { return (!f && !g) || (f && g && identical(f, g)); };
    if (!same(a->ty, b->ty) || !same(a->ty2, b->ty2) || !same(a->ty3, b->ty3)) return false;
    if (a->arity() != b->arity()) return false;
    for (std::size_t i = 0; i < a->arity(); ++i)
        if (!identical(a->child(i), b->child(i))) return false;
    return true;
}

TermPtr subst_term(const TermPtr& n, const std::string& x, const TermPtr& m) {
    TermSubst s{n, x, fv(n), ftv(n)};
    return s.run(m);
}

TermPtr subst_type_in_term(const FormulaPtr& b, const std::string& x, const TermPtr& m) {
    TypeSubst s{b, x, ftv(b)};
    return s.run(m);
}

namespace {

bool annotations_in(const TermPtr& m, SystemId sys) {
    for (const FormulaPtr* f : {&m->ty, &m->ty2, &m->ty3})
        if (*f && !formula_in_system(*f, sys)) return false;
    return true;
}

}  // namespace

bool term_in_system(const TermPtr& m, SystemId sys) {
    switch (m->kind) {
    case K::TyLam:
    case K::TyApp:
        if (sys == SystemId::IPC) return false;
        if (sys == SystemId::FAT && m->kind == K::TyApp && !m->ty->is_atomic()) return false;
        break;
    case K::Inj:
    case K::Case:
    case K::Abort:
        if (sys != SystemId::IPC) return false;
        break;
    default:
        break;
    }
    if (!annotations_in(m, sys)) return false;
    for (std::size_t i = 0; i < m->arity(); ++i)
        if (!term_in_system(m->child(i), sys)) return false;
    return true;
}

std::size_t term_size(const TermPtr& m) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < m->arity(); ++i) n += term_size(m->child(i));
    return n;
}

std::size_t term_depth(const TermPtr& m) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < m->arity(); ++i) d = std::max(d, term_depth(m->child(i)));
    return d + 1;
}

std::optional<TermPtr> subterm_at(const TermPtr& m, const Position& p) {
    TermPtr cur = m;
    for (int i : p) {
        if (i < 0 || static_cast<std::size_t>(i) >= cur->arity()) return std::nullopt;
        cur = cur->child(static_cast<std::size_t>(i));
    }
    return cur;
}

namespace {

std::optional<TermPtr> replace_rec(const TermPtr& m, const Position& p, std::size_t k, const TermPtr& r) {
    if (k == p.size()) return r;
    int i = p[k];
    if (i < 0 || static_cast<std::size_t>(i) >= m->arity()) return std::nullopt;
    auto sub = replace_rec(m->child(static_cast<std::size_t>(i)), p, k + 1, r);
    if (!sub) return std::nullopt;
    return with_child(m, static_cast<std::size_t>(i), *sub);
}

}  // namespace

std::optional<TermPtr> replace_at(const TermPtr& m, const Position& p, TermPtr replacement) {
    return replace_rec(m, p, 0, replacement);
}

bool is_prefix(const Position& p, const Position& q) {
    return p.size() <= q.size() && std::equal(p.begin(), p.end(), q.begin());
}

Position concat(const Position& p, const Position& q) {
    Position r = p;
    r.insert(r.end(), q.begin(), q.end());
    return r;
}

std::string position_string(const Position& p) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << ']';
    return os.str();
}

ElimContext ElimContext::app_hole(TermPtr n) {
    ElimContext e;
    e.kind = Kind::AppHole;
    e.arg = std::move(n);
    return e;
}

ElimContext ElimContext::proj_hole(int i) {
    ElimContext e;
    e.kind = Kind::ProjHole;
    e.index = i;
    return e;
}

ElimContext ElimContext::case_hole(const std::string& x, FormulaPtr a, TermPtr p, const std::string& y, FormulaPtr b,
                                   TermPtr q, FormulaPtr c) {
    ElimContext e;
    e.kind = Kind::CaseHole;
    e.x = x;
    e.a = std::move(a);
    e.p = std::move(p);
    e.y = y;
    e.b = std::move(b);
    e.q = std::move(q);
    e.ty = std::move(c);
    return e;
}

ElimContext ElimContext::abort_hole(FormulaPtr c) {
    ElimContext e;
    e.kind = Kind::AbortHole;
    e.ty = std::move(c);
    return e;
}

ElimContext ElimContext::tyapp_hole(FormulaPtr b) {
    ElimContext e;
    e.kind = Kind::TyAppHole;
    e.ty = std::move(b);
    return e;
}

TermPtr fill(const ElimContext& e, const TermPtr& m) {
    switch (e.kind) {
    case ElimContext::Kind::AppHole: return app(m, e.arg);
    case ElimContext::Kind::ProjHole: return proj(e.index, m);
    case ElimContext::Kind::CaseHole: return case_of(m, e.x, e.a, e.p, e.y, e.b, e.q, e.ty);
    case ElimContext::Kind::AbortHole: return abort_to(m, e.ty);
    case ElimContext::Kind::TyAppHole: return tyapp(m, e.ty);
    }
    return m;
}

}  // namespace proofkit
