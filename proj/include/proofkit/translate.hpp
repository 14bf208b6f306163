#pragma once

#include <functional>
#include <string>
#include <vector>

#include "proofkit/formula.hpp"
#include "proofkit/term.hpp"
#include "proofkit/typing.hpp"

namespace proofkit {

// Homomorphic formula translation; Or and Bot go to their encodings.
// Throws NotIPCFormula.
FormulaPtr rp_formula(const FormulaPtr& a);
Environment rp_env(const Environment& env);

// tfun X => fun w:(A -> X) & (B -> X) => (w.i) M, X fresh for M, A, B.
TermPtr mk_IN(int i, const TermPtr& m, const FormulaPtr& a, const FormulaPtr& b);
// M C <fun x:A => P, fun y:B => Q>
TermPtr mk_CASE(const TermPtr& m, const std::string& x, const FormulaPtr& a, const TermPtr& p, const std::string& y,
                const FormulaPtr& b, const TermPtr& q, const FormulaPtr& c);
// M A
TermPtr mk_ABORT(const TermPtr& m, const FormulaPtr& a);

// Case and abort unfolded by recursion on the result formula so that every
// instantiation is atomic.
TermPtr mk_case_at(const TermPtr& m, const std::string& x, const FormulaPtr& a, const TermPtr& p,
                   const std::string& y, const FormulaPtr& b, const TermPtr& q, const FormulaPtr& c);
TermPtr mk_abort_at(const TermPtr& m, const FormulaPtr& a);

struct TranslationScheme {
    std::function<TermPtr(int, const TermPtr&, const FormulaPtr&, const FormulaPtr&)> in;
    std::function<TermPtr(const TermPtr&, const std::string&, const FormulaPtr&, const TermPtr&, const std::string&,
                          const FormulaPtr&, const TermPtr&, const FormulaPtr&)>
        kase;
    std::function<TermPtr(const TermPtr&, const FormulaPtr&)> abort;
};

const TranslationScheme& rp_scheme();
const TranslationScheme& at_scheme();

// Throws NotIPCTerm.
TermPtr translate_term(const TermPtr& m, const TranslationScheme& s);
TermPtr rp_term(const TermPtr& m);
TermPtr at_term(const TermPtr& m);

// Positions inside mk_case_at(M, x, P, y, Q, C) where the atomic spines sit
// and where M, P and Q occur.
struct CaseAtLayout {
    std::vector<Position> leaves;
    std::vector<Position> scrutinee;
    std::vector<Position> left;
    std::vector<Position> right;
};
CaseAtLayout case_at_layout(const FormulaPtr& c);

// Positions inside mk_abort_at(M, C) of the atomic instantiations, and of M.
struct AbortAtLayout {
    std::vector<Position> leaves;
    std::vector<Position> scrutinee;
};
AbortAtLayout abort_at_layout(const FormulaPtr& c);

// Image of an IPC position under rp_term (a single position) and under
// at_term (one position per copy). Throws InvalidPath.
Position rp_path(const TermPtr& m, const Position& p);
std::vector<Position> at_paths(const TermPtr& m, const Position& p);

}  // namespace proofkit
