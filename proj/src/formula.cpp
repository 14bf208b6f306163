#include "proofkit/formula.hpp"

#include <algorithm>
#include <vector>

namespace proofkit {

namespace {

FormulaPtr make(Formula::Kind k, std::string name, FormulaPtr l, FormulaPtr r) {
    return std::make_shared<const Formula>(Formula{k, std::move(name), std::move(l), std::move(r)});
}

using Binders = std::vector<std::pair<std::string, std::string>>;

// Looks up a variable under a binder stack; returns the depth from the
// innermost binder, or -1 when free.
int bound_index(const std::vector<std::string>& stack, const std::string& x) {
    for (int i = static_cast<int>(stack.size()) - 1; i >= 0; --i)
        if (stack[i] == x) return static_cast<int>(stack.size()) - 1 - i;
    return -1;
}

bool alpha_eq_rec(const FormulaPtr& a, const FormulaPtr& b,
                  std::vector<std::string>& sa, std::vector<std::string>& sb) {
    if (a.get() == b.get() && sa == sb) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case Formula::Kind::Var: {
        int ia = bound_index(sa, a->name);
        int ib = bound_index(sb, b->name);
        if (ia != ib) return false;
        return ia >= 0 || a->name == b->name;
    }
    case Formula::Kind::Bot:
        return true;
    case Formula::Kind::Imp:
    case Formula::Kind::And:
    case Formula::Kind::Or:
        return alpha_eq_rec(a->left, b->left, sa, sb) && alpha_eq_rec(a->right, b->right, sa, sb);
    case Formula::Kind::Forall: {
        sa.push_back(a->name);
        sb.push_back(b->name);
        bool r = alpha_eq_rec(a->left, b->left, sa, sb);
        sa.pop_back();
        sb.pop_back();
        return r;
    }
    }
    return false;
}

void collect_ftv_rec(const FormulaPtr& a, std::vector<std::string>& bound, NameSet& out) {
    switch (a->kind) {
    case Formula::Kind::Var:
        if (std::find(bound.begin(), bound.end(), a->name) == bound.end()) out.insert(a->name);
        return;
    case Formula::Kind::Bot:
        return;
    case Formula::Kind::Imp:
    case Formula::Kind::And:
    case Formula::Kind::Or:
        collect_ftv_rec(a->left, bound, out);
        collect_ftv_rec(a->right, bound, out);
        return;
    case Formula::Kind::Forall:
        bound.push_back(a->name);
        collect_ftv_rec(a->left, bound, out);
        bound.pop_back();
        return;
    }
}

}  // namespace

FormulaPtr fvar(const std::string& name) { return make(Formula::Kind::Var, name, nullptr, nullptr); }
FormulaPtr fbot() { return make(Formula::Kind::Bot, "", nullptr, nullptr); }
FormulaPtr fimp(FormulaPtr a, FormulaPtr b) { return make(Formula::Kind::Imp, "", std::move(a), std::move(b)); }
FormulaPtr fand(FormulaPtr a, FormulaPtr b) { return make(Formula::Kind::And, "", std::move(a), std::move(b)); }
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) { return make(Formula::Kind::Or, "", std::move(a), std::move(b)); }
FormulaPtr fall(const std::string& x, FormulaPtr body) { return make(Formula::Kind::Forall, x, std::move(body), nullptr); }

const char* system_name(SystemId sys) {
    switch (sys) {
    case SystemId::IPC: return "ipc";
    case SystemId::F: return "f";
    case SystemId::FAT: return "fat";
    }
    return "?";
}

FormulaClass system_of_formula(const FormulaPtr& a) {
    FormulaClass c;
    switch (a->kind) {
    case Formula::Kind::Var:
        return c;
    case Formula::Kind::Bot:
        c.f = false;
        return c;
    case Formula::Kind::Forall: {
        FormulaClass b = system_of_formula(a->left);
        b.ipc = false;
        return b;
    }
    case Formula::Kind::Imp:
    case Formula::Kind::And:
    case Formula::Kind::Or: {
        FormulaClass l = system_of_formula(a->left);
        FormulaClass r = system_of_formula(a->right);
        c.ipc = l.ipc && r.ipc;
        c.f = l.f && r.f && a->kind != Formula::Kind::Or;
        return c;
    }
    }
    return c;
}

bool formula_in_system(const FormulaPtr& a, SystemId sys) {
    FormulaClass c = system_of_formula(a);
    return sys == SystemId::IPC ? c.ipc : c.f;
}

void collect_ftv(const FormulaPtr& a, NameSet& out) {
    std::vector<std::string> bound;
    collect_ftv_rec(a, bound, out);
}

NameSet ftv(const FormulaPtr& a) {
    NameSet s;
    collect_ftv(a, s);
    return s;
}

bool occurs_free(const std::string& x, const FormulaPtr& a) {
    switch (a->kind) {
    case Formula::Kind::Var: return a->name == x;
    case Formula::Kind::Bot: return false;
    case Formula::Kind::Forall: return a->name != x && occurs_free(x, a->left);
    default: return occurs_free(x, a->left) || occurs_free(x, a->right);
    }
}

bool alpha_eq(const FormulaPtr& a, const FormulaPtr& b) {
    std::vector<std::string> sa, sb;
    return alpha_eq_rec(a, b, sa, sb);
}

bool identical(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (a->kind != b->kind || a->name != b->name) return false;
    if (a->left && !identical(a->left, b->left)) return false;
    return !a->right || identical(a->right, b->right);
}

FormulaPtr subst_type_in_formula(const FormulaPtr& b, const std::string& x, const FormulaPtr& a) {
    switch (a->kind) {
    case Formula::Kind::Var:
        return a->name == x ? b : a;
    case Formula::Kind::Bot:
        return a;
    case Formula::Kind::Imp:
    case Formula::Kind::And:
    case Formula::Kind::Or: {
        FormulaPtr l = subst_type_in_formula(b, x, a->left);
        FormulaPtr r = subst_type_in_formula(b, x, a->right);
        if (l == a->left && r == a->right) return a;
        return make(a->kind, "", l, r);
    }
    case Formula::Kind::Forall: {
        if (a->name == x) return a;
        NameSet body_free = ftv(a->left);
        if (!body_free.count(x)) return a;
        NameSet b_free = ftv(b);
        if (!b_free.count(a->name)) return fall(a->name, subst_type_in_formula(b, x, a->left));
        NameSet avoid = body_free;
        avoid.insert(b_free.begin(), b_free.end());
        avoid.insert(x);
        std::string y = fresh_name(a->name, avoid);
        FormulaPtr renamed = subst_type_in_formula(fvar(y), a->name, a->left);
        return fall(y, subst_type_in_formula(b, x, renamed));
    }
    }
    return a;
}

FormulaPtr encode_or(const FormulaPtr& a, const FormulaPtr& b) {
    NameSet avoid = ftv(a);
    collect_ftv(b, avoid);
    std::string x = fresh_name("X", avoid);
    FormulaPtr X = fvar(x);
    return fall(x, fimp(fand(fimp(a, X), fimp(b, X)), X));
}

FormulaPtr encode_bot() { return fall("X", fvar("X")); }

std::optional<std::pair<FormulaPtr, FormulaPtr>> match_encoded_or(const FormulaPtr& f) {
    using K = Formula::Kind;
    if (f->kind != K::Forall) return std::nullopt;
    const std::string& x = f->name;
    const FormulaPtr& body = f->left;
    if (body->kind != K::Imp) return std::nullopt;
    const FormulaPtr& tgt = body->right;
    if (tgt->kind != K::Var || tgt->name != x) return std::nullopt;
    const FormulaPtr& conj = body->left;
    if (conj->kind != K::And) return std::nullopt;
    const FormulaPtr& l = conj->left;
    const FormulaPtr& r = conj->right;
    if (l->kind != K::Imp || r->kind != K::Imp) return std::nullopt;
    if (l->right->kind != K::Var || l->right->name != x) return std::nullopt;
    if (r->right->kind != K::Var || r->right->name != x) return std::nullopt;
    if (occurs_free(x, l->left) || occurs_free(x, r->left)) return std::nullopt;
    return std::make_pair(l->left, r->left);
}

bool is_encoded_bot(const FormulaPtr& f) {
    return f->kind == Formula::Kind::Forall && f->left->kind == Formula::Kind::Var &&
           f->left->name == f->name;
}

std::string fresh_name(const std::string& base, const NameSet& avoid) {
    std::string candidate = base;
    while (avoid.count(candidate)) candidate += '\'';
    return candidate;
}

std::size_t formula_depth(const FormulaPtr& a) {
    switch (a->kind) {
    case Formula::Kind::Var:
    case Formula::Kind::Bot:
        return 0;
    case Formula::Kind::Forall:
        return 1 + formula_depth(a->left);
    default:
        return 1 + std::max(formula_depth(a->left), formula_depth(a->right));
    }
}

}  // namespace proofkit
