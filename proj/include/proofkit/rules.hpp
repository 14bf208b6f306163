#pragma once

#include <optional>
#include <string>
#include <vector>

#include "proofkit/formula.hpp"
#include "proofkit/term.hpp"

namespace proofkit {

// Enum order is the tie-break order used by strategies.
enum class RuleId {
    beta_imp,
    beta_and,
    beta_or,
    beta_all,
    eta_imp,
    eta_and,
    eta_or,
    eta_all,
    pi_imp,
    pi_and,
    pi_or,
    pi_bot,
    varpi_imp,
    varpi_and,
    varpi_or,
    varpi_bot,
    rho_case,
    rho_abort,
    delta,
    eps_case,
    eps_abort,
};

const std::vector<RuleId>& all_rules();
const char* rule_name(RuleId r);
std::optional<RuleId> rule_from_name(const std::string& name);
bool rule_valid_in(RuleId r, SystemId sys);
std::vector<RuleId> rules_of(SystemId sys);

// Atomization, delta and commuting rules of F; the ones with a fineness side
// condition.
bool is_fine_sensitive(RuleId r);

// What a redex needs in order to be fine: the head M (at `headPath` inside the
// redex) must have type A∨̇B (Or, with the branch annotations) or ⊥̇ (Bot).
struct FineObligation {
    enum class Kind { None, Or, Bot };
    Kind kind = Kind::None;
    Position headPath;
    TermPtr head;
    FormulaPtr a, b;
};

enum class ShapeResult { Match, NoMatch, AtomicInstantiation };

// Syntactic left-hand-side test at the root.
ShapeResult match_shape(RuleId r, const TermPtr& m);
inline bool matches_shape(RuleId r, const TermPtr& m) { return match_shape(r, m) == ShapeResult::Match; }

// Requires matches_shape(r, m).
FineObligation fine_obligation(RuleId r, const TermPtr& m);

}  // namespace proofkit
