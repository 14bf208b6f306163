#include "proofkit/rewriting.hpp"

#include <algorithm>
#include <optional>
#include <random>

#include "proofkit/syntax.hpp"

namespace proofkit {

using K = Term::Kind;
using FK = Formula::Kind;

namespace {

[[noreturn]] void shape(RuleId r) {
    throw Error(ErrorKind::ShapeMismatch, std::string("term does not match the left-hand side of ") + rule_name(r));
}

// Renames binder x of body so that it avoids `avoid`.
std::pair<std::string, TermPtr> rebind(const std::string& x, const TermPtr& body, const NameSet& avoid) {
    if (!avoid.count(x)) return {x, body};
    NameSet all = avoid;
    collect_fv(body, all);
    std::string x2 = fresh_name(x, all);
    return {x2, subst_term(var(x2), x, body)};
}

NameSet fv_under(const std::string& x, const TermPtr& body) {
    NameSet s = fv(body);
    s.erase(x);
    return s;
}

// M C <fun x:A => P, fun y:B => Q>
TermPtr spine(const TermPtr& m, const FormulaPtr& c, const TermPtr& lp, const TermPtr& p, const TermPtr& lq,
              const TermPtr& q) {
    return app(tyapp(m, c), pair(lam(lp->x, lp->ty, p), lam(lq->x, lq->ty, q)));
}

// Elimination applied to both case branches, renaming binders that would
// capture free variables of the eliminator's argument.
TermPtr push_into(const TermPtr& sp, const FormulaPtr& c, const std::function<TermPtr(const TermPtr&)>& elim,
                  const NameSet& argFv) {
    const TermPtr& lp = sp->b->a;
    const TermPtr& lq = sp->b->b;
    auto [x, p] = rebind(lp->x, lp->a, argFv);
    auto [y, q] = rebind(lq->x, lq->a, argFv);
    return app(tyapp(sp->a->a, c), pair(lam(x, lp->ty, elim(p)), lam(y, lq->ty, elim(q))));
}

TermPtr rho_case(const TermPtr& m) {
    const TermPtr& head = m->a->a;
    const FormulaPtr& c = m->a->ty;
    const TermPtr& lp = m->b->a;
    const TermPtr& lq = m->b->b;
    switch (c->kind) {
    case FK::Imp: {
        NameSet avoid = fv(head);
        collect_fv(lp->a, avoid);
        collect_fv(lq->a, avoid);
        avoid.insert(lp->x);
        avoid.insert(lq->x);
        std::string z = fresh_name("w", avoid);
        return lam(z, c->left, spine(head, c->right, lp, app(lp->a, var(z)), lq, app(lq->a, var(z))));
    }
    case FK::And:
        return pair(spine(head, c->left, lp, proj(1, lp->a), lq, proj(1, lq->a)),
                    spine(head, c->right, lp, proj(2, lp->a), lq, proj(2, lq->a)));
    case FK::Forall: {
        NameSet avoid = ftv(head);
        collect_ftv(lp, avoid);
        collect_ftv(lq, avoid);
        collect_ftv(c, avoid);
        std::string y = fresh_name(c->name, avoid);
        FormulaPtr d = y == c->name ? c->left : subst_type_in_formula(fvar(y), c->name, c->left);
        return tylam(y, spine(head, d, lp, tyapp(lp->a, fvar(y)), lq, tyapp(lq->a, fvar(y))));
    }
    default: break;
    }
    throw Error(ErrorKind::AtomicInstantiation, "rho_case needs a non-atomic instantiation");
}

TermPtr rho_abort(const TermPtr& m) {
    const TermPtr& head = m->a;
    const FormulaPtr& c = m->ty;
    switch (c->kind) {
    case FK::Imp: return lam(fresh_name("w", fv(head)), c->left, tyapp(head, c->right));
    case FK::And: return pair(tyapp(head, c->left), tyapp(head, c->right));
    case FK::Forall: {
        NameSet avoid = ftv(head);
        collect_ftv(c, avoid);
        std::string y = fresh_name(c->name, avoid);
        FormulaPtr d = y == c->name ? c->left : subst_type_in_formula(fvar(y), c->name, c->left);
        return tylam(y, tyapp(head, d));
    }
    default: break;
    }
    throw Error(ErrorKind::AtomicInstantiation, "rho_abort needs a non-atomic instantiation");
}

TermPtr delta(const TermPtr& m) {
    const TermPtr& head = m->a->a;
    const FormulaPtr& c = m->a->ty;
    const TermPtr& lp = m->b->a;
    const TermPtr& lq = m->b->b;
    const TermPtr& p = lp->a;
    const TermPtr& q = lq->a;
    switch (c->kind) {
    case FK::Imp: {
        // Common binder for the two inner abstractions.
        NameSet avoid = fv(head);
        avoid.insert(lp->x);
        avoid.insert(lq->x);
        NameSet fp = fv_under(p->x, p->a);
        NameSet fq = fv_under(q->x, q->a);
        avoid.insert(fp.begin(), fp.end());
        avoid.insert(fq.begin(), fq.end());
        std::string z = avoid.count(p->x) ? fresh_name(p->x, avoid) : p->x;
        TermPtr p2 = z == p->x ? p->a : subst_term(var(z), p->x, p->a);
        TermPtr q2 = z == q->x ? q->a : subst_term(var(z), q->x, q->a);
        return lam(z, c->left, spine(head, c->right, lp, p2, lq, q2));
    }
    case FK::And:
        return pair(spine(head, c->left, lp, p->a, lq, q->a), spine(head, c->right, lp, p->b, lq, q->b));
    case FK::Forall: {
        NameSet avoid = ftv(head);
        collect_ftv(lp->ty, avoid);
        collect_ftv(lq->ty, avoid);
        collect_ftv(p, avoid);
        collect_ftv(q, avoid);
        collect_ftv(c, avoid);
        std::string y = fresh_name(c->name, avoid);
        FormulaPtr d = y == c->name ? c->left : subst_type_in_formula(fvar(y), c->name, c->left);
        TermPtr p2 = y == p->x ? p->a : subst_type_in_term(fvar(y), p->x, p->a);
        TermPtr q2 = y == q->x ? q->a : subst_type_in_term(fvar(y), q->x, q->a);
        return tylam(y, spine(head, d, lp, p2, lq, q2));
    }
    default: break;
    }
    shape(RuleId::delta);
}

TermPtr eps_case(const TermPtr& m) {
    const TermPtr& sp = m->a;
    const FormulaPtr& c = sp->a->ty;
    switch (m->kind) {
    case K::App: {
        TermPtr n = m->b;
        return push_into(sp, c->right, [&](const TermPtr& t) { return app(t, n); }, fv(n));
    }
    case K::Proj: {
        int i = m->index;
        return push_into(sp, i == 1 ? c->left : c->right, [&](const TermPtr& t) { return proj(i, t); }, {});
    }
    case K::TyApp: {
        FormulaPtr b = m->ty;
        return push_into(sp, subst_type_in_formula(b, c->name, c->left),
                         [&](const TermPtr& t) { return tyapp(t, b); }, {});
    }
    default: break;
    }
    shape(RuleId::eps_case);
}

TermPtr eps_abort(const TermPtr& m) {
    const TermPtr& head = m->a->a;
    const FormulaPtr& c = m->a->ty;
    switch (m->kind) {
    case K::App: return tyapp(head, c->right);
    case K::Proj: return tyapp(head, m->index == 1 ? c->left : c->right);
    case K::TyApp: return tyapp(head, subst_type_in_formula(m->ty, c->name, c->left));
    default: break;
    }
    shape(RuleId::eps_abort);
}

// case M of { x => E[P] ; y => E[Q] } : d, renaming case binders away from
// argFv.
TermPtr case_push(const TermPtr& cs, const FormulaPtr& d, const std::function<TermPtr(const TermPtr&)>& elim,
                  const NameSet& argFv) {
    auto [x, p] = rebind(cs->x, cs->b, argFv);
    auto [y, q] = rebind(cs->y, cs->c, argFv);
    return case_of(cs->a, x, cs->ty, elim(p), y, cs->ty2, elim(q), d);
}

}  // namespace

TermPtr apply_rule(RuleId rule, const TermPtr& m) {
    ShapeResult s = match_shape(rule, m);
    if (s == ShapeResult::AtomicInstantiation)
        throw Error(ErrorKind::AtomicInstantiation,
                    std::string(rule_name(rule)) + " does not apply to an atomic instantiation");
    if (s == ShapeResult::NoMatch) shape(rule);
    switch (rule) {
    case RuleId::beta_imp: return subst_term(m->b, m->a->x, m->a->a);
    case RuleId::beta_and: return m->index == 1 ? m->a->a : m->a->b;
    case RuleId::beta_or: {
        const TermPtr& in = m->a;
        return in->index == 1 ? subst_term(in->a, m->x, m->b) : subst_term(in->a, m->y, m->c);
    }
    case RuleId::beta_all: return subst_type_in_term(m->ty, m->a->x, m->a->a);
    case RuleId::eta_imp: return m->a->a;
    case RuleId::eta_and: return m->a->a;
    case RuleId::eta_or: return m->a;
    case RuleId::eta_all: return m->a->a;
    case RuleId::pi_imp: {
        TermPtr n = m->b;
        return case_push(m->a, m->a->ty3->right, [&](const TermPtr& t) { return app(t, n); }, fv(n));
    }
    case RuleId::pi_and: {
        int i = m->index;
        const FormulaPtr& c = m->a->ty3;
        return case_push(m->a, i == 1 ? c->left : c->right, [&](const TermPtr& t) { return proj(i, t); }, {});
    }
    case RuleId::pi_or: {
        const TermPtr& inner = m->a;
        auto outer = [&](const TermPtr& t) { return case_of(t, m->x, m->ty, m->b, m->y, m->ty2, m->c, m->ty3); };
        NameSet outerFv = fv_under(m->x, m->b);
        NameSet fq = fv_under(m->y, m->c);
        outerFv.insert(fq.begin(), fq.end());
        return case_push(inner, m->ty3, outer, outerFv);
    }
    case RuleId::pi_bot: {
        FormulaPtr c = m->ty;
        return case_push(m->a, c, [&](const TermPtr& t) { return abort_to(t, c); }, {});
    }
    case RuleId::varpi_imp: return abort_to(m->a->a, m->a->ty->right);
    case RuleId::varpi_and: return abort_to(m->a->a, m->index == 1 ? m->a->ty->left : m->a->ty->right);
    case RuleId::varpi_or: return abort_to(m->a->a, m->ty3);
    case RuleId::varpi_bot: return abort_to(m->a->a, m->ty);
    case RuleId::rho_case: return rho_case(m);
    case RuleId::rho_abort: return rho_abort(m);
    case RuleId::delta: return delta(m);
    case RuleId::eps_case: return eps_case(m);
    case RuleId::eps_abort: return eps_abort(m);
    }
    shape(rule);
}

namespace {

struct Finder {
    SystemId sys;
    const std::vector<RuleId>& rules;
    const Environment& base;
    std::vector<Redex> out;
    Position pos;
    // Binders between the root and the current node, outermost first, with
    // the environment under each one once it has been needed.
    std::vector<std::pair<std::string, FormulaPtr>> binders;
    std::vector<std::optional<Environment>> envs;

    const Environment& env_under(std::size_t depth) {
        if (depth == 0) return base;
        auto& slot = envs[depth - 1];
        if (!slot) slot = env_under(depth - 1).extended(binders[depth - 1].first, binders[depth - 1].second);
        return *slot;
    }

    void under(const std::string& x, const FormulaPtr& a, const TermPtr& m) {
        binders.emplace_back(x, a);
        envs.emplace_back();
        run(m);
        binders.pop_back();
        envs.pop_back();
    }

    void run(const TermPtr& m) {
        for (RuleId r : rules) {
            if (!rule_valid_in(r, sys) || !matches_shape(r, m)) continue;
            const Environment& env = env_under(binders.size());
            Redex rx{pos, r, env, true};
            if (is_fine_sensitive(r)) rx.fine = is_fine_redex(env, m, r);
            out.push_back(std::move(rx));
        }
        for (std::size_t i = 0; i < m->arity(); ++i) {
            pos.push_back(static_cast<int>(i));
            if (m->kind == K::Lam)
                under(m->x, m->ty, m->a);
            else if (m->kind == K::Case && i == 1)
                under(m->x, m->ty, m->b);
            else if (m->kind == K::Case && i == 2)
                under(m->y, m->ty2, m->c);
            else
                run(m->child(i));
            pos.pop_back();
        }
    }
};

}  // namespace

std::vector<Redex> find_redexes(SystemId sys, const Environment& env, const TermPtr& m,
                                const std::vector<RuleId>& rules) {
    Finder f{sys, rules, env, {}, {}, {}, {}};
    f.run(m);
    return f.out;
}

TermPtr step(SystemId sys, const Environment& env, const TermPtr& m, const Redex& r, bool requireFine) {
    (void)env;
    if (!rule_valid_in(r.rule, sys))
        throw Error(ErrorKind::RuleNotApplicable,
                    std::string(rule_name(r.rule)) + " is not a rule of " + system_name(sys));
    auto sub = subterm_at(m, r.position);
    if (!sub) throw Error(ErrorKind::StaleRedex, "position " + position_string(r.position) + " no longer exists");
    if (!matches_shape(r.rule, *sub))
        throw Error(ErrorKind::StaleRedex,
                    std::string(rule_name(r.rule)) + " no longer matches at " + position_string(r.position),
                    r.position);
    if (requireFine && is_fine_sensitive(r.rule) && !r.fine)
        throw Error(ErrorKind::NotFine,
                    std::string(rule_name(r.rule)) + " redex at " + position_string(r.position) + " is not fine",
                    r.position);
    return *replace_at(m, r.position, apply_rule(r.rule, *sub));
}

Redex redex_at(SystemId sys, const Environment& env, const TermPtr& m, RuleId rule, const Position& p) {
    (void)sys;
    auto sub = subterm_at(m, p);
    if (!sub) throw Error(ErrorKind::InvalidPath, "no subterm at " + position_string(p), p);
    ShapeResult s = match_shape(rule, *sub);
    if (s == ShapeResult::AtomicInstantiation)
        throw Error(ErrorKind::AtomicInstantiation,
                    std::string(rule_name(rule)) + " does not apply to an atomic instantiation", p);
    if (s != ShapeResult::Match)
        throw Error(ErrorKind::NotARedex, std::string("no ") + rule_name(rule) + " redex at " + position_string(p),
                    p);
    Redex r{p, rule, env_at(env, m, p), true};
    if (is_fine_sensitive(rule)) r.fine = is_fine_redex(r.localEnv, *sub, rule);
    return r;
}

bool ReductionTrace::all_fine() const {
    return std::all_of(steps.begin(), steps.end(), [](const TraceStep& s) { return s.fine; });
}

const TermPtr& ReductionTrace::push(SystemId sys, const Environment& env, RuleId rule, const Position& p,
                                    bool requireFine, bool administrative) {
    const TermPtr& cur = final_term();
    Redex r = redex_at(sys, env, cur, rule, p);
    TermPtr next = step(sys, env, cur, r, requireFine);
    steps.push_back({rule, p, std::move(r.localEnv), std::move(next), r.fine, administrative});
    return steps.back().result;
}

void ReductionTrace::append(const ReductionTrace& t) {
    if (!alpha_eq(t.initial, final_term()))
        throw Error(ErrorKind::InvariantViolation, "appended trace does not start at the current term");
    steps.insert(steps.end(), t.steps.begin(), t.steps.end());
}

namespace {

bool eligible(const Redex& r, bool requireFine) { return !requireFine || !is_fine_sensitive(r.rule) || r.fine; }

const Redex* choose(std::vector<Redex>& cands, const Strategy& s, std::mt19937_64& rng) {
    if (cands.empty()) return nullptr;
    switch (s.kind) {
    case Strategy::Kind::LeftmostOutermost: return &cands.front();
    case Strategy::Kind::LeftmostInnermost:
        // Candidates are in pre-order; the first one with no candidate below
        // it is the leftmost innermost.
        for (std::size_t i = 0; i < cands.size(); ++i) {
            bool inner = true;
            for (std::size_t j = i + 1; j < cands.size() && is_prefix(cands[i].position, cands[j].position); ++j)
                if (cands[j].position.size() > cands[i].position.size()) {
                    inner = false;
                    break;
                }
            if (inner) return &cands[i];
        }
        return &cands.front();
    case Strategy::Kind::Random: {
        std::uniform_int_distribution<std::size_t> d(0, cands.size() - 1);
        return &cands[d(rng)];
    }
    }
    return nullptr;
}

}  // namespace

ReductionTrace normalize(SystemId sys, const Environment& env, const TermPtr& m, const std::vector<RuleId>& rules,
                         const Strategy& strategy, std::size_t maxSteps, bool requireFine) {
    ReductionTrace t;
    t.initial = m;
    std::mt19937_64 rng(strategy.seed);
    while (true) {
        std::vector<Redex> all = find_redexes(sys, env, t.final_term(), rules);
        std::vector<Redex> cands;
        for (auto& r : all)
            if (eligible(r, requireFine)) cands.push_back(std::move(r));
        const Redex* pick = choose(cands, strategy, rng);
        if (!pick) return t;
        if (t.steps.size() >= maxSteps) {
            t.truncated = true;
            throw StepLimitExceeded(std::move(t), maxSteps);
        }
        TermPtr next = step(sys, env, t.final_term(), *pick, requireFine);
        t.steps.push_back({pick->rule, pick->position, pick->localEnv, std::move(next), pick->fine, false});
    }
}

void verify_trace(SystemId sys, const Environment& env, const ReductionTrace& t) {
    TermPtr cur = t.initial;
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const TraceStep& s = t.steps[i];
        auto bad = [&](const std::string& what) {
            throw Error(ErrorKind::InvariantViolation, "step " + std::to_string(i) + ": " + what, s.position);
        };
        Redex r;
        try {
            r = redex_at(sys, env, cur, s.rule, s.position);
        } catch (const Error& e) {
            bad(e.what());
        }
        TermPtr next = step(sys, env, cur, r, false);
        if (!identical(next, s.result)) bad("recorded term differs from replay: " + print(s.result) + " vs " + print(next));
        if (!(r.localEnv == s.localEnv)) bad("recorded environment differs from replay");
        if (r.fine != s.fine) bad("recorded fine flag differs from replay");
        cur = next;
    }
}

}  // namespace proofkit
