#include "analysis_util.hpp"
#include "proofkit/analysis.hpp"
#include "proofkit/syntax.hpp"

namespace proofkit {

using K = Term::Kind;
using FK = Formula::Kind;
using detail::Plan;

namespace {

void expect_endpoint(const ReductionTrace& t, const TermPtr& want, const char* what) {
    if (!alpha_eq(t.final_term(), want))
        throw Error(ErrorKind::InvariantViolation, std::string(what) + " ended at " + print(t.final_term()) +
                                                       " instead of " + print(want));
}

TermPtr contract(const TermPtr& m, const Redex& r, const TermPtr& sub) {
    return *replace_at(m, r.position, apply_rule(r.rule, sub));
}

RuleId beta_for(K elim) {
    switch (elim) {
    case K::App: return RuleId::beta_imp;
    case K::Proj: return RuleId::beta_and;
    default: return RuleId::beta_all;
    }
}

}  // namespace

ReductionTrace decompose_delta(const Environment& env, const TermPtr& m, const Redex& r) {
    TermPtr sub = detail::redex_subterm(m, r, {RuleId::delta});
    ReductionTrace t;
    t.initial = m;
    Plan plan{{RuleId::rho_case, {}}};
    switch (sub->a->ty->kind) {
    case FK::Imp:
        plan.push_back({RuleId::beta_imp, {0, 1, 0, 0}});
        plan.push_back({RuleId::beta_imp, {0, 1, 1, 0}});
        break;
    case FK::Forall:
        plan.push_back({RuleId::beta_all, {0, 1, 0, 0}});
        plan.push_back({RuleId::beta_all, {0, 1, 1, 0}});
        break;
    default:
        for (int i : {0, 1})
            for (int j : {0, 1}) plan.push_back({RuleId::beta_and, {i, 1, j, 0}});
    }
    detail::run_plan(t, SystemId::F, env, r.position, plan);
    expect_endpoint(t, contract(m, r, sub), "delta decomposition");
    return t;
}

ReductionTrace decompose_eps(const Environment& env, const TermPtr& m, const Redex& r) {
    TermPtr sub = detail::redex_subterm(m, r, {RuleId::eps_case, RuleId::eps_abort});
    ReductionTrace t;
    t.initial = m;
    RuleId inner = r.rule == RuleId::eps_case ? RuleId::rho_case : RuleId::rho_abort;
    detail::run_plan(t, SystemId::F, env, r.position, {{inner, {0}}, {beta_for(sub->kind), {}}});
    expect_endpoint(t, contract(m, r, sub), "commuting decomposition");
    return t;
}

RhoExpansion expand_rho(const Environment& env, const TermPtr& m, const Redex& r, ExpandMode mode) {
    TermPtr sub = detail::redex_subterm(m, r, {RuleId::rho_case, RuleId::rho_abort});
    if (r.rule == RuleId::rho_abort && mode == ExpandMode::Delta)
        throw Error(ErrorKind::RuleNotApplicable, "rho_abort has no delta expansion", r.position);
    Environment local = env_at(env, m, r.position);
    const FormulaPtr& c = r.rule == RuleId::rho_case ? sub->a->ty : sub->ty;

    // Names fresh for everything in sight, including the local environment
    // so that a new type abstraction stays well formed.
    NameSet vars = fv(sub);
    NameSet tvars = ftv(sub);
    collect_ftv(c, tvars);
    for (const auto& n : local.ftv()) tvars.insert(n);
    if (r.rule == RuleId::rho_case) {
        vars.insert(sub->b->a->x);
        vars.insert(sub->b->b->x);
    }
    std::string z = fresh_name("w", vars);
    std::string y = c->kind == FK::Forall ? fresh_name(c->name, tvars) : "";

    RhoExpansion out;
    const Position& p = r.position;
    Plan plan;
    TermPtr expanded;

    if (mode == ExpandMode::Delta) {
        auto grow = [&](const TermPtr& body) -> TermPtr {
            switch (c->kind) {
            case FK::Imp: return lam(z, c->left, app(body, var(z)));
            case FK::And: return pair(proj(1, body), proj(2, body));
            default: return tylam(y, tyapp(body, fvar(y)));
            }
        };
        const TermPtr& lp = sub->b->a;
        const TermPtr& lq = sub->b->b;
        expanded = app(sub->a, pair(lam(lp->x, lp->ty, grow(lp->a)), lam(lq->x, lq->ty, grow(lq->a))));
        RuleId eta = c->kind == FK::Imp ? RuleId::eta_imp : c->kind == FK::And ? RuleId::eta_and : RuleId::eta_all;
        out.etaSteps = {{eta, concat(p, {1, 0, 0})}, {eta, concat(p, {1, 1, 0})}};
        plan.push_back({RuleId::delta, {}});
    } else {
        RuleId eps = r.rule == RuleId::rho_case ? RuleId::eps_case : RuleId::eps_abort;
        switch (c->kind) {
        case FK::Imp:
            expanded = lam(z, c->left, app(sub, var(z)));
            out.etaSteps = {{RuleId::eta_imp, p}};
            plan.push_back({eps, {0}});
            break;
        case FK::And:
            expanded = pair(proj(1, sub), proj(2, sub));
            out.etaSteps = {{RuleId::eta_and, p}};
            plan.push_back({eps, {0}});
            plan.push_back({eps, {1}});
            break;
        default:
            expanded = tylam(y, tyapp(sub, fvar(y)));
            out.etaSteps = {{RuleId::eta_all, p}};
            plan.push_back({eps, {0}});
        }
    }
    out.expansion = *replace_at(m, p, expanded);
    out.trace.initial = out.expansion;
    detail::run_plan(out.trace, SystemId::F, env, p, plan);
    expect_endpoint(out.trace, contract(m, r, sub), "expansion");
    return out;
}

}  // namespace proofkit
