#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "proofkit/rewriting.hpp"
#include "proofkit/typing.hpp"

namespace proofkit::detail {

// typecheck with every failure reported as NotTypable.
FormulaPtr typable(SystemId sys, const Environment& env, const TermPtr& m);

// Subterm of m at r.position, checked against r.rule and the allowed rules.
TermPtr redex_subterm(const TermPtr& m, const Redex& r, std::initializer_list<RuleId> allowed);

using Plan = std::vector<std::pair<RuleId, Position>>;

// Pushes each planned step, positions taken relative to `base`.
void run_plan(ReductionTrace& t, SystemId sys, const Environment& env, const Position& base, const Plan& plan,
              bool requireFine = true, bool administrative = false);

// Re-pushes the steps of `sub` (a trace of the subterm at `base`) inside t.
void embed(ReductionTrace& t, SystemId sys, const Environment& env, const Position& base, const ReductionTrace& sub);

// Fine atomization to normal form (leftmost outermost) without the measure
// bookkeeping of atomic_nf.
ReductionTrace atomize(const Environment& env, const TermPtr& m);

}  // namespace proofkit::detail
