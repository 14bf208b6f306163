#include "proofkit/rules.hpp"

namespace proofkit {

using K = Term::Kind;
using FK = Formula::Kind;

namespace {

struct RuleInfo {
    RuleId id;
    const char* name;
    bool ipc, f, fat;
};

const RuleInfo kRules[] = {
    {RuleId::beta_imp, "beta_imp", true, true, true},
    {RuleId::beta_and, "beta_and", true, true, true},
    {RuleId::beta_or, "beta_or", true, false, false},
    {RuleId::beta_all, "beta_all", false, true, true},
    {RuleId::eta_imp, "eta_imp", true, true, true},
    {RuleId::eta_and, "eta_and", true, true, true},
    {RuleId::eta_or, "eta_or", true, false, false},
    {RuleId::eta_all, "eta_all", false, true, true},
    {RuleId::pi_imp, "pi_imp", true, false, false},
    {RuleId::pi_and, "pi_and", true, false, false},
    {RuleId::pi_or, "pi_or", true, false, false},
    {RuleId::pi_bot, "pi_bot", true, false, false},
    {RuleId::varpi_imp, "varpi_imp", true, false, false},
    {RuleId::varpi_and, "varpi_and", true, false, false},
    {RuleId::varpi_or, "varpi_or", true, false, false},
    {RuleId::varpi_bot, "varpi_bot", true, false, false},
    {RuleId::rho_case, "rho_case", false, true, false},
    {RuleId::rho_abort, "rho_abort", false, true, false},
    {RuleId::delta, "delta", false, true, false},
    {RuleId::eps_case, "eps_case", false, true, false},
    {RuleId::eps_abort, "eps_abort", false, true, false},
};

const RuleInfo& info(RuleId r) { return kRules[static_cast<int>(r)]; }

// M C <fun x:A => P, fun y:B => Q>
bool case_spine(const TermPtr& t) {
    return t->kind == K::App && t->a->kind == K::TyApp && t->b->kind == K::Pair && t->b->a->kind == K::Lam &&
           t->b->b->kind == K::Lam;
}

FK spine_formula_kind(const TermPtr& spine) { return spine->a->ty->kind; }

bool is_var(const TermPtr& t, const std::string& x) { return t->kind == K::Var && t->x == x; }

}  // namespace

const std::vector<RuleId>& all_rules() {
    static const std::vector<RuleId> v = [] {
        std::vector<RuleId> out;
        for (const auto& r : kRules) out.push_back(r.id);
        return out;
    }();
    return v;
}

const char* rule_name(RuleId r) { return info(r).name; }

std::optional<RuleId> rule_from_name(const std::string& name) {
    for (const auto& r : kRules)
        if (name == r.name) return r.id;
    return std::nullopt;
}

bool rule_valid_in(RuleId r, SystemId sys) {
    const RuleInfo& i = info(r);
    switch (sys) {
    case SystemId::IPC: return i.ipc;
    case SystemId::F: return i.f;
    case SystemId::FAT: return i.fat;
    }
    return false;
}

std::vector<RuleId> rules_of(SystemId sys) {
    std::vector<RuleId> out;
    for (RuleId r : all_rules())
        if (rule_valid_in(r, sys)) out.push_back(r);
    return out;
}

bool is_fine_sensitive(RuleId r) {
    switch (r) {
    case RuleId::rho_case:
    case RuleId::rho_abort:
    case RuleId::delta:
    case RuleId::eps_case:
    case RuleId::eps_abort: return true;
    default: return false;
    }
}

ShapeResult match_shape(RuleId r, const TermPtr& m) {
    auto yes = [](bool b) { return b ? ShapeResult::Match : ShapeResult::NoMatch; };
    switch (r) {
    case RuleId::beta_imp: return yes(m->kind == K::App && m->a->kind == K::Lam);
    case RuleId::beta_and: return yes(m->kind == K::Proj && m->a->kind == K::Pair);
    case RuleId::beta_or: return yes(m->kind == K::Case && m->a->kind == K::Inj);
    case RuleId::beta_all: return yes(m->kind == K::TyApp && m->a->kind == K::TyLam);
    case RuleId::eta_imp:
        return yes(m->kind == K::Lam && m->a->kind == K::App && is_var(m->a->b, m->x) && !occurs_free(m->x, m->a->a));
    case RuleId::eta_and:
        return yes(m->kind == K::Pair && m->a->kind == K::Proj && m->a->index == 1 && m->b->kind == K::Proj &&
                   m->b->index == 2 && alpha_eq(m->a->a, m->b->a));
    case RuleId::eta_or:
        return yes(m->kind == K::Case && m->b->kind == K::Inj && m->b->index == 1 && is_var(m->b->a, m->x) &&
                   m->c->kind == K::Inj && m->c->index == 2 && is_var(m->c->a, m->y));
    case RuleId::eta_all:
        return yes(m->kind == K::TyLam && m->a->kind == K::TyApp && m->a->ty->kind == FK::Var &&
                   m->a->ty->name == m->x && !ftv(m->a->a).count(m->x));
    case RuleId::pi_imp:
        return yes(m->kind == K::App && m->a->kind == K::Case && m->a->ty3->kind == FK::Imp);
    case RuleId::pi_and:
        return yes(m->kind == K::Proj && m->a->kind == K::Case && m->a->ty3->kind == FK::And);
    case RuleId::pi_or: return yes(m->kind == K::Case && m->a->kind == K::Case && m->a->ty3->kind == FK::Or);
    case RuleId::pi_bot: return yes(m->kind == K::Abort && m->a->kind == K::Case && m->a->ty3->kind == FK::Bot);
    case RuleId::varpi_imp:
        return yes(m->kind == K::App && m->a->kind == K::Abort && m->a->ty->kind == FK::Imp);
    case RuleId::varpi_and:
        return yes(m->kind == K::Proj && m->a->kind == K::Abort && m->a->ty->kind == FK::And);
    case RuleId::varpi_or: return yes(m->kind == K::Case && m->a->kind == K::Abort && m->a->ty->kind == FK::Or);
    case RuleId::varpi_bot:
        return yes(m->kind == K::Abort && m->a->kind == K::Abort && m->a->ty->kind == FK::Bot);
    case RuleId::rho_case:
        if (!case_spine(m)) return ShapeResult::NoMatch;
        return m->a->ty->is_atomic() ? ShapeResult::AtomicInstantiation : ShapeResult::Match;
    case RuleId::rho_abort:
        if (m->kind != K::TyApp) return ShapeResult::NoMatch;
        return m->ty->is_atomic() ? ShapeResult::AtomicInstantiation : ShapeResult::Match;
    case RuleId::delta: {
        if (!case_spine(m)) return ShapeResult::NoMatch;
        const TermPtr& p = m->b->a->a;
        const TermPtr& q = m->b->b->a;
        const FormulaPtr& c = m->a->ty;
        switch (c->kind) {
        case FK::Imp:
            return yes(p->kind == K::Lam && q->kind == K::Lam && alpha_eq(p->ty, c->left) &&
                       alpha_eq(q->ty, c->left));
        case FK::And: return yes(p->kind == K::Pair && q->kind == K::Pair);
        case FK::Forall: return yes(p->kind == K::TyLam && q->kind == K::TyLam);
        default: return ShapeResult::NoMatch;
        }
    }
    case RuleId::eps_case:
        switch (m->kind) {
        case K::App: return yes(case_spine(m->a) && spine_formula_kind(m->a) == FK::Imp);
        case K::Proj: return yes(case_spine(m->a) && spine_formula_kind(m->a) == FK::And);
        case K::TyApp: return yes(case_spine(m->a) && spine_formula_kind(m->a) == FK::Forall);
        default: return ShapeResult::NoMatch;
        }
    case RuleId::eps_abort:
        if (!m->a || m->a->kind != K::TyApp) return ShapeResult::NoMatch;
        switch (m->kind) {
        case K::App: return yes(m->a->ty->kind == FK::Imp);
        case K::Proj: return yes(m->a->ty->kind == FK::And);
        case K::TyApp: return yes(m->a->ty->kind == FK::Forall);
        default: return ShapeResult::NoMatch;
        }
    }
    return ShapeResult::NoMatch;
}

FineObligation fine_obligation(RuleId r, const TermPtr& m) {
    FineObligation o;
    switch (r) {
    case RuleId::rho_case:
    case RuleId::delta:
        o.kind = FineObligation::Kind::Or;
        o.headPath = {0, 0};
        o.head = m->a->a;
        o.a = m->b->a->ty;
        o.b = m->b->b->ty;
        break;
    case RuleId::eps_case:
        o.kind = FineObligation::Kind::Or;
        o.headPath = {0, 0, 0};
        o.head = m->a->a->a;
        o.a = m->a->b->a->ty;
        o.b = m->a->b->b->ty;
        break;
    case RuleId::rho_abort:
        o.kind = FineObligation::Kind::Bot;
        o.headPath = {0};
        o.head = m->a;
        break;
    case RuleId::eps_abort:
        o.kind = FineObligation::Kind::Bot;
        o.headPath = {0, 0};
        o.head = m->a->a;
        break;
    default: break;
    }
    return o;
}

}  // namespace proofkit
