#include "analysis_util.hpp"
#include "proofkit/analysis.hpp"
#include "proofkit/syntax.hpp"

namespace proofkit {

using K = Term::Kind;
using FK = Formula::Kind;
using R = RuleId;
using detail::Plan;

namespace {

// F-side steps for a root IPC redex, relative to its rp image.
Plan simulation_plan(R rule) {
    switch (rule) {
    case R::beta_imp:
    case R::beta_and:
    case R::eta_imp:
    case R::eta_and: return {{rule, {}}};
    case R::beta_or: return {{R::beta_all, {0}}, {R::beta_imp, {}}, {R::beta_and, {0}}, {R::beta_imp, {}}};
    case R::eta_or:
        return {{R::delta, {}},          {R::delta, {0}},         {R::eta_imp, {0, 0, 1, 0}}, {R::eta_imp, {0, 0, 1, 1}},
                {R::eta_and, {0, 0, 1}}, {R::eta_imp, {0}},        {R::eta_all, {}}};
    case R::pi_imp:
    case R::pi_and:
    case R::pi_bot: return {{R::eps_case, {}}};
    case R::pi_or: return {{R::eps_case, {0}}, {R::eps_case, {}}};
    case R::varpi_imp:
    case R::varpi_and:
    case R::varpi_bot: return {{R::eps_abort, {}}};
    case R::varpi_or: return {{R::eps_abort, {0}}, {R::eps_abort, {}}};
    default: break;
    }
    throw Error(ErrorKind::RuleNotApplicable, std::string(rule_name(rule)) + " is not an IPC rule");
}

struct Step {
    TermPtr sub;
    TermPtr target;
};

Step ipc_step(const Environment& env, const TermPtr& m, const Redex& r) {
    if (!rule_valid_in(r.rule, SystemId::IPC))
        throw Error(ErrorKind::RuleNotApplicable, std::string(rule_name(r.rule)) + " is not an IPC rule");
    detail::typable(SystemId::IPC, env, m);
    auto sub = subterm_at(m, r.position);
    if (!sub) throw Error(ErrorKind::InvalidPath, "no subterm at " + position_string(r.position), r.position);
    if (!matches_shape(r.rule, *sub))
        throw Error(ErrorKind::NotARedex,
                    std::string("no ") + rule_name(r.rule) + " redex at " + position_string(r.position), r.position);
    return {*sub, *replace_at(m, r.position, apply_rule(r.rule, *sub))};
}

void expect(const TermPtr& got, const TermPtr& want, const std::string& what) {
    if (!alpha_eq(got, want))
        throw Error(ErrorKind::InvariantViolation, what + ": reached " + print(got) + ", expected " + print(want));
}

ReductionTrace simulate(const Environment& renv, const TermPtr& m, const Redex& r, const TermPtr& n) {
    ReductionTrace t;
    t.initial = rp_term(m);
    detail::run_plan(t, SystemId::F, renv, rp_path(m, r.position), simulation_plan(r.rule));
    expect(t.final_term(), rp_term(n), "simulation");
    return t;
}

}  // namespace

ReductionTrace simulate_step(const Environment& env, const TermPtr& m, const Redex& r) {
    Step s = ipc_step(env, m, r);
    return simulate(rp_env(env), m, r, s.target);
}

namespace {

void close_eta(Plan& plan, const FormulaPtr& c, const Position& at) {
    switch (c->kind) {
    case FK::Imp:
        close_eta(plan, c->right, concat(at, {0}));
        plan.push_back({R::eta_imp, at});
        break;
    case FK::And:
        close_eta(plan, c->left, concat(at, {0}));
        close_eta(plan, c->right, concat(at, {1}));
        plan.push_back({R::eta_and, at});
        break;
    case FK::Forall:
        close_eta(plan, c->left, concat(at, {0}));
        plan.push_back({R::eta_all, at});
        break;
    default: break;
    }
}

// Beta steps that fold the translated inner case/abort, sitting in both
// branches of an unfolded case on c, into the next layer.
void fold_branches(Plan& plan, const FormulaPtr& c, const Position& at) {
    auto layer = [&](R beta, int i, const FormulaPtr& inner) {
        Position base = concat(at, {i});
        CaseAtLayout l = case_at_layout(inner);
        for (std::size_t k = 0; k < l.left.size(); ++k) {
            plan.push_back({beta, concat(base, l.left[k])});
            plan.push_back({beta, concat(base, l.right[k])});
        }
        fold_branches(plan, inner, base);
    };
    switch (c->kind) {
    case FK::Imp: layer(R::beta_imp, 0, c->right); break;
    case FK::And:
        layer(R::beta_and, 0, c->left);
        layer(R::beta_and, 1, c->right);
        break;
    case FK::Forall: layer(R::beta_all, 0, c->left); break;
    default: break;
    }
}

// Atomization of an encoded case on c whose branches are themselves
// encoded cases (eps_case) or aborts (eps_abort), one layer at a time.
void atomize_layers(Plan& plan, const FormulaPtr& c, const Position& at, R eps) {
    if (c->is_atomic()) return;
    plan.push_back({R::rho_case, at});
    switch (c->kind) {
    case FK::And:
        for (int i : {0, 1})
            for (int j : {0, 1}) plan.push_back({eps, concat(at, {i, 1, j, 0})});
        atomize_layers(plan, c->left, concat(at, {0}), eps);
        atomize_layers(plan, c->right, concat(at, {1}), eps);
        break;
    default:
        plan.push_back({eps, concat(at, {0, 1, 0, 0})});
        plan.push_back({eps, concat(at, {0, 1, 1, 0})});
        atomize_layers(plan, c->kind == FK::Imp ? c->right : c->left, concat(at, {0}), eps);
    }
}

// Runs `plan` at every copy of the redex inside the at-translation.
void at_copies(ReductionTrace& t, const Environment& renv, const std::vector<Position>& copies, const Plan& plan,
               bool administrative) {
    for (const auto& base : copies) detail::run_plan(t, SystemId::FAT, renv, base, plan, true, administrative);
}

ReductionTrace start(const TermPtr& t) {
    ReductionTrace r;
    r.initial = t;
    return r;
}

// The rest of the rp term brought to atomic normal form.
void finish_atomic(ReductionTrace& t, const Environment& renv) {
    detail::embed(t, SystemId::F, renv, {}, detail::atomize(renv, t.final_term()));
}

}  // namespace

Diagram build_diagram(const Environment& env, const TermPtr& m, const Redex& r) {
    switch (r.rule) {
    case R::beta_or:
    case R::eta_or:
    case R::pi_imp:
    case R::pi_and:
    case R::pi_or:
    case R::pi_bot:
    case R::varpi_imp:
    case R::varpi_and:
    case R::varpi_or:
    case R::varpi_bot: break;
    default:
        throw Error(ErrorKind::RuleNotApplicable,
                    std::string(rule_name(r.rule)) + " is translated alike by both maps; no diagram");
    }
    Step s = ipc_step(env, m, r);
    const TermPtr& sub = s.sub;

    Diagram d;
    d.source = m;
    d.target = s.target;
    d.rule = r.rule;
    d.position = r.position;
    d.env = env;
    d.rpEnv = rp_env(env);
    const Environment& renv = d.rpEnv;
    d.mRp = rp_term(m);
    d.nRp = rp_term(s.target);
    d.mAt = at_term(m);
    d.nAt = at_term(s.target);

    d.mRpToNRp = simulate(renv, m, r, s.target);
    d.mRpToMAt = detail::atomize(renv, d.mRp);
    d.nRpToNAt = detail::atomize(renv, d.nRp);
    expect(d.mRpToMAt.final_term(), d.mAt, "atomic normal form of the source");
    expect(d.nRpToNAt.final_term(), d.nAt, "atomic normal form of the target");

    const Position rpPos = rp_path(m, r.position);
    const std::vector<Position> atPos = at_paths(m, r.position);

    d.mRpToQ1 = start(d.mRp);
    d.nRpToQ2 = start(d.nRp);
    d.mAtToQ1 = start(d.mAt);
    d.nAtToQ2 = start(d.nAt);
    d.q1ToQ2 = start(d.mAt);
    Plan q1q2;

    switch (r.rule) {
    case R::eta_or: {
        d.simple = false;
        Plan admin{{R::beta_all, {0, 0, 1, 0, 0, 0}},
                   {R::beta_all, {0, 0, 1, 1, 0, 0}},
                   {R::beta_imp, {0, 0, 1, 0, 0}},
                   {R::beta_imp, {0, 0, 1, 1, 0}}};
        at_copies(d.mAtToQ1, renv, atPos, admin, true);
        Position head = concat(rpPos, {0, 0});
        detail::embed(d.mRpToQ1, SystemId::F, renv, head,
                      detail::atomize(env_at(renv, d.mRp, head), *subterm_at(d.mRp, head)));
        detail::run_plan(d.mRpToQ1, SystemId::F, renv, rpPos, {{R::delta, {}}, {R::delta, {0}}});
        finish_atomic(d.mRpToQ1, renv);
        d.nRpToQ2 = d.nRpToNAt;
        d.q1ToQ2 = start(d.mAtToQ1.final_term());
        q1q2 = {{R::eta_imp, {0, 0, 1, 0}},
                {R::eta_imp, {0, 0, 1, 1}},
                {R::eta_and, {0, 0, 1}},
                {R::eta_imp, {0}},
                {R::eta_all, {}}};
        break;
    }
    case R::pi_or:
    case R::pi_bot: {
        d.simple = false;
        FormulaPtr c = rp_formula(r.rule == R::pi_or ? sub->ty3 : sub->ty);
        Plan admin;
        fold_branches(admin, c, {});
        at_copies(d.nAtToQ2, renv, atPos, admin, true);
        Plan rpPlan;
        atomize_layers(rpPlan, c, {}, r.rule == R::pi_or ? R::eps_case : R::eps_abort);
        detail::run_plan(d.nRpToQ2, SystemId::F, renv, rpPos, rpPlan);
        finish_atomic(d.nRpToQ2, renv);
        d.mRpToQ1 = d.mRpToMAt;
        if (r.rule == R::pi_or) {
            for (const auto& leaf : case_at_layout(c).leaves) {
                q1q2.push_back({R::beta_all, concat(leaf, {0})});
                q1q2.push_back({R::beta_imp, leaf});
            }
        } else {
            for (const auto& leaf : abort_at_layout(c).leaves) q1q2.push_back({R::beta_all, leaf});
        }
        break;
    }
    default: {
        d.mRpToQ1 = d.mRpToMAt;
        d.nRpToQ2 = d.nRpToNAt;
        switch (r.rule) {
        case R::beta_or: {
            FormulaPtr c = rp_formula(sub->ty3);
            for (const auto& leaf : case_at_layout(c).leaves) {
                q1q2.push_back({R::beta_all, concat(leaf, {0})});
                q1q2.push_back({R::beta_imp, leaf});
                q1q2.push_back({R::beta_and, concat(leaf, {0})});
                q1q2.push_back({R::beta_imp, leaf});
            }
            close_eta(q1q2, c, {});
            break;
        }
        case R::pi_imp:
        case R::varpi_imp: q1q2 = {{R::beta_imp, {}}}; break;
        case R::pi_and:
        case R::varpi_and: q1q2 = {{R::beta_and, {}}}; break;
        case R::varpi_bot:
            for (const auto& leaf : abort_at_layout(rp_formula(sub->ty)).leaves) q1q2.push_back({R::beta_all, leaf});
            break;
        default: {
            // varpi_or
            for (const auto& leaf : case_at_layout(rp_formula(sub->ty3)).leaves) {
                q1q2.push_back({R::beta_all, concat(leaf, {0})});
                q1q2.push_back({R::beta_imp, leaf});
            }
        }
        }
    }
    }

    at_copies(d.q1ToQ2, renv, atPos, q1q2, false);
    d.q1 = d.mAtToQ1.final_term();
    d.q2 = d.nAtToQ2.final_term();
    verify_diagram(d);
    return d;
}

void verify_diagram(const Diagram& d) {
    auto leg = [&](const ReductionTrace& t, SystemId sys, const TermPtr& from, const TermPtr& to, const char* name,
                   bool admin) {
        std::string what = std::string("leg ") + name;
        expect(t.initial, from, what + " start");
        expect(t.final_term(), to, what + " end");
        try {
            verify_trace(sys, d.rpEnv, t);
        } catch (const Error& e) {
            throw Error(ErrorKind::InvariantViolation, what + ": " + e.what());
        }
        for (const auto& s : t.steps) {
            bool beta = s.rule == R::beta_imp || s.rule == R::beta_and || s.rule == R::beta_all;
            if (s.administrative && !(admin && beta))
                throw Error(ErrorKind::InvariantViolation, what + ": unexpected administrative step");
            if (admin && !s.administrative)
                throw Error(ErrorKind::InvariantViolation, what + ": untagged administrative step");
            if (!s.fine) throw Error(ErrorKind::InvariantViolation, what + ": step is not fine");
        }
    };
    expect(d.mRp, rp_term(d.source), "source rp corner");
    expect(d.nRp, rp_term(d.target), "target rp corner");
    expect(d.mAt, at_term(d.source), "source at corner");
    expect(d.nAt, at_term(d.target), "target at corner");
    leg(d.mRpToQ1, SystemId::F, d.mRp, d.q1, "mRp->q1", false);
    leg(d.mRpToNRp, SystemId::F, d.mRp, d.nRp, "mRp->nRp", false);
    leg(d.nRpToQ2, SystemId::F, d.nRp, d.q2, "nRp->q2", false);
    leg(d.mAtToQ1, SystemId::FAT, d.mAt, d.q1, "mAt->q1", true);
    leg(d.nAtToQ2, SystemId::FAT, d.nAt, d.q2, "nAt->q2", true);
    leg(d.q1ToQ2, SystemId::FAT, d.q1, d.q2, "q1->q2", false);
    leg(d.mRpToMAt, SystemId::F, d.mRp, d.mAt, "mRp->mAt", false);
    leg(d.nRpToNAt, SystemId::F, d.nRp, d.nAt, "nRp->nAt", false);
    if (d.simple && (!alpha_eq(d.q1, d.mAt) || !alpha_eq(d.q2, d.nAt)))
        throw Error(ErrorKind::InvariantViolation, "simple square with moved corners");
    if (alpha_eq(d.q1, d.mAt) && d.mRpToQ1.size() != d.mRpToMAt.size())
        throw Error(ErrorKind::InvariantViolation, "mRp->q1 differs from the bridge although q1 = mAt");
}

}  // namespace proofkit
