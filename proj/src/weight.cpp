#include <algorithm>
#include <map>

#include "analysis_util.hpp"
#include "proofkit/analysis.hpp"
#include "proofkit/syntax.hpp"

namespace proofkit {

using K = Term::Kind;
using FK = Formula::Kind;

namespace detail {

FormulaPtr typable(SystemId sys, const Environment& env, const TermPtr& m) {
    try {
        return typecheck(sys, env, m);
    } catch (const Error& e) {
        throw Error(ErrorKind::NotTypable, std::string("not typable in ") + system_name(sys) + ": " + e.what(),
                    e.position());
    }
}

TermPtr redex_subterm(const TermPtr& m, const Redex& r, std::initializer_list<RuleId> allowed) {
    if (std::find(allowed.begin(), allowed.end(), r.rule) == allowed.end())
        throw Error(ErrorKind::NotARedex, std::string(rule_name(r.rule)) + " is not handled here", r.position);
    auto sub = subterm_at(m, r.position);
    if (!sub) throw Error(ErrorKind::InvalidPath, "no subterm at " + position_string(r.position), r.position);
    if (!matches_shape(r.rule, *sub))
        throw Error(ErrorKind::NotARedex,
                    std::string("no ") + rule_name(r.rule) + " redex at " + position_string(r.position), r.position);
    return *sub;
}

void run_plan(ReductionTrace& t, SystemId sys, const Environment& env, const Position& base, const Plan& plan,
              bool requireFine, bool administrative) {
    for (const auto& [rule, rel] : plan) t.push(sys, env, rule, concat(base, rel), requireFine, administrative);
}

void embed(ReductionTrace& t, SystemId sys, const Environment& env, const Position& base, const ReductionTrace& sub) {
    for (const auto& s : sub.steps) t.push(sys, env, s.rule, concat(base, s.position), true, s.administrative);
}

ReductionTrace atomize(const Environment& env, const TermPtr& m) {
    try {
        return normalize(SystemId::F, env, m, {RuleId::rho_case, RuleId::rho_abort}, Strategy::lo(), 100000, true);
    } catch (const StepLimitExceeded&) {
        throw Error(ErrorKind::InvariantViolation, "atomization did not terminate");
    }
}

}  // namespace detail

Natural formula_size(const FormulaPtr& c) {
    switch (c->kind) {
    case FK::Imp: {
        Natural b = formula_size(c->right);
        return 2 * b * b + 3 * b + 1;
    }
    case FK::And: return 1 + formula_size(c->left) + formula_size(c->right);
    case FK::Forall: return 1 + formula_size(c->left);
    default: return 0;
    }
}

namespace {

struct WeightPass {
    // Keyed by the position of a type application with a non-atomic
    // instantiation: the type of its head.
    std::map<Position, FormulaPtr> headTypes;
    std::map<Position, Environment> envs;
    WeightReport report;
    Position pos;

    Natural child(const TermPtr& m, int i) {
        pos.push_back(i);
        Natural w = run(m->child(static_cast<std::size_t>(i)));
        pos.pop_back();
        return w;
    }

    Natural run(const TermPtr& m) {
        switch (m->kind) {
        case K::Var: return 0;
        case K::Lam:
        case K::TyLam:
        case K::Proj: return child(m, 0);
        case K::Pair: return child(m, 0) + child(m, 1);
        case K::App: {
            const TermPtr& f = m->a;
            bool pre = false;
            if (f->kind == K::TyApp && !f->ty->is_atomic()) {
                const FormulaPtr& head = headTypes.at(concat(pos, {0}));
                pre = match_encoded_or(head).has_value();
                if (pre && is_encoded_bot(head))
                    throw Error(ErrorKind::InvariantViolation, "head is both a disjunction and absurdity", pos);
            }
            std::size_t slot = report.perPreRedex.size();
            if (pre) report.perPreRedex.push_back({pos, envs.at(pos), 0});
            Natural wm = child(m, 0);
            Natural wn = child(m, 1);
            if (!pre) return wm + wn;
            Natural c = formula_size(f->ty);
            report.perPreRedex[slot].contribution = c * (1 + wm + wn);
            return (c + 1) * (wm + wn) + c;
        }
        case K::TyApp: {
            bool pre = !m->ty->is_atomic() && is_encoded_bot(headTypes.at(pos));
            std::size_t slot = report.perPreRedex.size();
            if (pre) report.perPreRedex.push_back({pos, envs.at(pos), 0});
            Natural wm = child(m, 0);
            if (!pre) return wm;
            Natural c = formula_size(m->ty);
            report.perPreRedex[slot].contribution = c * (1 + wm);
            return (c + 1) * wm + c;
        }
        default: break;
        }
        throw Error(ErrorKind::NotTypable, "disjunction or absurdity constructor in an F term", pos);
    }
};

}  // namespace

WeightReport weight(const Environment& env, const TermPtr& m) {
    WeightPass pass;
    TypecheckOptions opts;
    // The hook runs after the subterms, so for a unary node the previous
    // call reported its only child.
    FormulaPtr previous;
    opts.hook = [&](const Position& p, const Environment& e, const TermPtr& t, const FormulaPtr& a) {
        if (t->kind == K::TyApp && !t->ty->is_atomic()) {
            pass.headTypes.emplace(p, previous);
            pass.envs.insert_or_assign(p, e);
        } else if (t->kind == K::App && t->a->kind == K::TyApp && !t->a->ty->is_atomic()) {
            pass.envs.insert_or_assign(p, e);
        }
        previous = a;
    };
    try {
        typecheck(SystemId::F, env, m, opts);
    } catch (const Error& e) {
        throw Error(ErrorKind::NotTypable, std::string("not typable in F: ") + e.what(), e.position());
    }
    pass.report.total = pass.run(m);
    return std::move(pass.report);
}

AtomicNormalForm atomic_nf(const Environment& env, const TermPtr& m, const Strategy& strategy,
                           std::size_t maxSteps) {
    detail::typable(SystemId::F, env, m);
    AtomicNormalForm out;
    try {
        out.trace = normalize(SystemId::F, env, m, {RuleId::rho_case, RuleId::rho_abort}, strategy, maxSteps, true);
    } catch (const StepLimitExceeded& e) {
        throw Error(ErrorKind::InvariantViolation,
                    "atomization did not terminate within " + std::to_string(maxSteps) + " steps");
    }
    out.nf = out.trace.final_term();
    out.weights.push_back(weight(env, m).total);
    for (std::size_t i = 0; i < out.trace.steps.size(); ++i) {
        out.weights.push_back(weight(env, out.trace.steps[i].result).total);
        if (out.weights[i + 1] >= out.weights[i])
            throw Error(ErrorKind::InvariantViolation,
                        "measure did not decrease at step " + std::to_string(i) + " (" + out.weights[i].str() +
                            " -> " + out.weights[i + 1].str() + ")",
                        out.trace.steps[i].position);
    }
    return out;
}

bool ConfluenceReport::all_joined() const {
    return std::all_of(pairs.begin(), pairs.end(), [](const ConfluencePair& p) { return p.joined; });
}

namespace {

std::vector<Redex> fine_redexes(const Environment& env, const TermPtr& m, const std::vector<RuleId>& rules) {
    std::vector<Redex> out;
    for (auto& r : find_redexes(SystemId::F, env, m, rules))
        if (r.fine) out.push_back(std::move(r));
    return out;
}

// Terms reachable in at most `depth` fine steps, with their distance.
std::vector<std::pair<TermPtr, std::size_t>> reachable(const Environment& env, const TermPtr& start,
                                                        const std::vector<RuleId>& rules, std::size_t depth) {
    constexpr std::size_t cap = 4096;
    std::vector<std::pair<TermPtr, std::size_t>> seen{{start, 0}};
    std::map<std::string, bool> keys{{print(start), true}};
    std::vector<TermPtr> frontier{start};
    for (std::size_t d = 1; d <= depth && !frontier.empty() && seen.size() < cap; ++d) {
        std::vector<TermPtr> next;
        for (const auto& t : frontier)
            for (const auto& r : fine_redexes(env, t, rules)) {
                TermPtr u = step(SystemId::F, env, t, r);
                if (keys.emplace(print(u), true).second) {
                    seen.emplace_back(u, d);
                    next.push_back(u);
                }
            }
        frontier = std::move(next);
    }
    return seen;
}

}  // namespace

ConfluenceReport check_local_confluence(const Environment& env, const TermPtr& m, const std::vector<RuleId>& rules,
                                        std::size_t maxJoin) {
    for (RuleId r : rules)
        if (r != RuleId::rho_case && r != RuleId::rho_abort)
            throw Error(ErrorKind::RuleNotApplicable,
                        std::string(rule_name(r)) + " is not an atomization rule");
    detail::typable(SystemId::F, env, m);
    ConfluenceReport out;
    std::vector<Redex> rs = fine_redexes(env, m, rules);
    for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = i + 1; j < rs.size(); ++j) {
            ConfluencePair pr{rs[i], rs[j], false, 0, 0};
            auto left = reachable(env, step(SystemId::F, env, m, rs[i]), rules, maxJoin);
            auto right = reachable(env, step(SystemId::F, env, m, rs[j]), rules, maxJoin);
            std::size_t best = SIZE_MAX;
            for (const auto& [a, da] : left)
                for (const auto& [b, db] : right)
                    if (da + db < best && term_size(a) == term_size(b) && alpha_eq(a, b)) {
                        best = da + db;
                        pr.joined = true;
                        pr.stepsFirst = da;
                        pr.stepsSecond = db;
                    }
            out.pairs.push_back(std::move(pr));
        }
    return out;
}

}  // namespace proofkit
