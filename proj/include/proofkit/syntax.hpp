#pragma once

#include <string>
#include <utility>

#include "proofkit/errors.hpp"
#include "proofkit/formula.hpp"
#include "proofkit/term.hpp"

namespace proofkit {

// Concrete syntax.
//   formulas: X | bot | A -> B | A & B | A | B | forall X. A
//             precedence & > | > ->, all binary connectives right-associative
//   terms:    x | fun x:A => M | M N | <M, N> | M.1 | M.2 | in1[A|B] M
//             | in2[A|B] M | case M of { x:A => P ; y:B => Q } : C
//             | abort[C] M | tfun X => M | M [B]
// Unicode spellings (⊃ → ∧ ∨ ⊥ ∀ λ Λ) are accepted on input.

FormulaPtr parse_formula(const std::string& text);
TermPtr parse_term(const std::string& text);
// "x : A"
std::pair<std::string, FormulaPtr> parse_binding(const std::string& text);

std::string print(const FormulaPtr& a);
std::string print(const TermPtr& m);

}  // namespace proofkit
