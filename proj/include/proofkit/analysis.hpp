#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "proofkit/rewriting.hpp"
#include "proofkit/translate.hpp"

namespace proofkit {

using Natural = boost::multiprecision::cpp_int;

// |X| = 0, |A -> B| = 2|B|^2 + 3|B| + 1, |A & B| = 1 + |A| + |B|,
// |forall X. A| = 1 + |A|.
Natural formula_size(const FormulaPtr& c);

struct PreRedexWeight {
    Position position;
    Environment localEnv;
    Natural contribution;
};

struct WeightReport {
    Natural total;
    std::vector<PreRedexWeight> perPreRedex;
};

// Termination measure of a term typable in F. Throws NotTypable.
WeightReport weight(const Environment& env, const TermPtr& m);

struct AtomicNormalForm {
    TermPtr nf;
    ReductionTrace trace;
    // weights[i] is the measure of the i-th term of the trace.
    std::vector<Natural> weights;
};

// Fine rho_case/rho_abort normal form in F. Every step is checked to
// decrease the measure; a non-decrease or the step cap raise
// InvariantViolation. Throws NotTypable.
AtomicNormalForm atomic_nf(const Environment& env, const TermPtr& m, const Strategy& strategy = Strategy::lo(),
                           std::size_t maxSteps = 100000);

// rho_case followed by the beta steps that finish a delta step.
ReductionTrace decompose_delta(const Environment& env, const TermPtr& m, const Redex& r);
// rho_case or rho_abort inside, then one beta at the redex.
ReductionTrace decompose_eps(const Environment& env, const TermPtr& m, const Redex& r);

enum class ExpandMode { Delta, Eps };

struct RhoExpansion {
    // m with the redex eta-expanded.
    TermPtr expansion;
    // Eta redexes of `expansion`, contracted in order, give back m.
    std::vector<std::pair<RuleId, Position>> etaSteps;
    // delta or eps steps from `expansion` to the contractum of r.
    ReductionTrace trace;
};

// Delta mode is available for rho_case only.
RhoExpansion expand_rho(const Environment& env, const TermPtr& m, const Redex& r, ExpandMode mode);

// F-side image of one IPC step: a fine trace in rp_env(env) from rp_term(m)
// to rp_term of the contractum. Throws NotTypable, NotARedex.
ReductionTrace simulate_step(const Environment& env, const TermPtr& m, const Redex& r);

// Square of translations around one IPC step on a disjunction or absurdity
// rule.
struct Diagram {
    TermPtr source, target;
    RuleId rule;
    Position position;
    Environment env;    // IPC
    Environment rpEnv;  // F and Fat
    TermPtr mRp, nRp, mAt, nAt, q1, q2;
    // True when q1 = mAt and q2 = nAt.
    bool simple = true;

    ReductionTrace mRpToQ1;   // delta, rho (F)
    ReductionTrace mRpToNRp;  // simulation (F)
    ReductionTrace nRpToQ2;   // eps, rho (F)
    ReductionTrace mAtToQ1;   // administrative beta (Fat)
    ReductionTrace nAtToQ2;   // administrative beta (Fat)
    ReductionTrace q1ToQ2;    // beta, eta (Fat)
    ReductionTrace mRpToMAt;  // atomic normal form (F)
    ReductionTrace nRpToNAt;  // atomic normal form (F)
};

// Throws NotTypable, NotARedex, RuleNotApplicable (rule on implication or
// conjunction only).
Diagram build_diagram(const Environment& env, const TermPtr& m, const Redex& r);

// Replays every leg and checks the endpoints against the corners. Throws
// InvariantViolation.
void verify_diagram(const Diagram& d);

struct ConfluencePair {
    Redex first, second;
    bool joined = false;
    // Steps from each one-step reduct to the common reduct.
    std::size_t stepsFirst = 0, stepsSecond = 0;
};

struct ConfluenceReport {
    std::vector<ConfluencePair> pairs;
    bool all_joined() const;
};

// Every pair of distinct fine redexes among `rules` (a subset of rho_case,
// rho_abort) is contracted and a common fine reduct searched breadth-first
// within maxJoin steps on each side.
ConfluenceReport check_local_confluence(const Environment& env, const TermPtr& m, const std::vector<RuleId>& rules,
                                        std::size_t maxJoin = 16);

}  // namespace proofkit
