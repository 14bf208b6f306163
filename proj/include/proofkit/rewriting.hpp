#pragma once

#include <cstdint>
#include <vector>

#include "proofkit/errors.hpp"
#include "proofkit/rules.hpp"
#include "proofkit/term.hpp"
#include "proofkit/typing.hpp"

namespace proofkit {

// Contracts a root redex. Throws ShapeMismatch or AtomicInstantiation.
TermPtr apply_rule(RuleId rule, const TermPtr& m);

struct Redex {
    Position position;
    RuleId rule;
    Environment localEnv;
    bool fine = true;
};

// Redexes in pre-order (outermost first, then left to right), rules in enum
// order at each position.
std::vector<Redex> find_redexes(SystemId sys, const Environment& env, const TermPtr& m,
                                const std::vector<RuleId>& rules);

// Throws NotFine, StaleRedex, RuleNotApplicable (rule not in sys).
TermPtr step(SystemId sys, const Environment& env, const TermPtr& m, const Redex& r, bool requireFine = true);

// Builds the Redex for (rule, position) in m, computing the local environment
// and the fine flag. Throws InvalidPath or NotARedex.
Redex redex_at(SystemId sys, const Environment& env, const TermPtr& m, RuleId rule, const Position& p);

struct TraceStep {
    RuleId rule;
    Position position;
    Environment localEnv;
    TermPtr result;
    bool fine = true;
    bool administrative = false;
};

struct ReductionTrace {
    TermPtr initial;
    std::vector<TraceStep> steps;
    bool truncated = false;

    const TermPtr& final_term() const { return steps.empty() ? initial : steps.back().result; }
    std::size_t size() const { return steps.size(); }
    bool all_fine() const;

    // Contracts (rule, p) in the current final term and appends the step.
    // Fine-sensitive rules must be fine when requireFine holds.
    const TermPtr& push(SystemId sys, const Environment& env, RuleId rule, const Position& p,
                        bool requireFine = true, bool administrative = false);
    // Appends the steps of t, whose initial term must be alpha-equal to the
    // current final term.
    void append(const ReductionTrace& t);
};

struct Strategy {
    enum class Kind { LeftmostOutermost, LeftmostInnermost, Random };
    Kind kind = Kind::LeftmostOutermost;
    std::uint64_t seed = 0;

    static Strategy lo() { return {Kind::LeftmostOutermost, 0}; }
    static Strategy li() { return {Kind::LeftmostInnermost, 0}; }
    static Strategy random(std::uint64_t seed) { return {Kind::Random, seed}; }
};

class StepLimitExceeded : public Error {
public:
    StepLimitExceeded(ReductionTrace partial, std::size_t cap)
        : Error(ErrorKind::StepLimitExceeded, "no normal form within " + std::to_string(cap) + " steps"),
          partial_(std::move(partial)) {}
    const ReductionTrace& partial() const { return partial_; }

private:
    ReductionTrace partial_;
};

// Reduces until no eligible redex is left. Eligible: among `rules`, and fine
// when requireFine and the rule is fine-sensitive.
ReductionTrace normalize(SystemId sys, const Environment& env, const TermPtr& m, const std::vector<RuleId>& rules,
                         const Strategy& strategy, std::size_t maxSteps, bool requireFine = true);

// Re-applies every recorded (rule, position) and checks each recorded term,
// local environment and fine flag. Throws InvariantViolation on the first
// discrepancy.
void verify_trace(SystemId sys, const Environment& env, const ReductionTrace& t);

}  // namespace proofkit
