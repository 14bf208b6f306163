#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "proofkit/formula.hpp"

namespace proofkit {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Proof terms of IPC, F and Fat. Children are ordered as in the concrete
// grammar; that order defines positions.
//
//   Var    x
//   Lam    fun x:ty => a
//   App    a b
//   Pair   <a, b>
//   Proj   a.index
//   Inj    in<index>[ty|ty2] a
//   Case   case a of { x:ty => b ; y:ty2 => c } : ty3
//   Abort  abort[ty] a
//   TyLam  tfun x => a
//   TyApp  a [ty]
struct Term {
    enum class Kind { Var, Lam, App, Pair, Proj, Inj, Case, Abort, TyLam, TyApp };

    Kind kind;
    std::string x;  // variable, lambda binder, type binder, first case binder
    std::string y;  // second case binder
    int index = 0;  // Proj / Inj
    FormulaPtr ty, ty2, ty3;
    TermPtr a, b, c;

    std::size_t arity() const;
    const TermPtr& child(std::size_t i) const;
};

TermPtr var(const std::string& x);
TermPtr lam(const std::string& x, FormulaPtr ty, TermPtr body);
TermPtr app(TermPtr f, TermPtr arg);
TermPtr pair(TermPtr l, TermPtr r);
TermPtr proj(int i, TermPtr m);
TermPtr inj(int i, TermPtr m, FormulaPtr a, FormulaPtr b);
TermPtr case_of(TermPtr m, const std::string& x, FormulaPtr a, TermPtr p, const std::string& y,
                FormulaPtr b, TermPtr q, FormulaPtr c);
TermPtr abort_to(TermPtr m, FormulaPtr c);
TermPtr tylam(const std::string& x, TermPtr body);
TermPtr tyapp(TermPtr m, FormulaPtr b);

// Rebuilds t with the i-th child replaced.
TermPtr with_child(const TermPtr& t, std::size_t i, TermPtr child);

NameSet fv(const TermPtr& m);
void collect_fv(const TermPtr& m, NameSet& out);
// Free type variables of all annotations in m.
NameSet ftv(const TermPtr& m);
void collect_ftv(const TermPtr& m, NameSet& out);
bool occurs_free(const std::string& x, const TermPtr& m);

bool alpha_eq(const TermPtr& a, const TermPtr& b);
// Same syntax tree, binder names included.
bool identical(const TermPtr& a, const TermPtr& b);

// Capture-avoiding [n/x]m.
TermPtr subst_term(const TermPtr& n, const std::string& x, const TermPtr& m);
// Capture-avoiding [b/x]m over annotations and instantiations.
TermPtr subst_type_in_term(const FormulaPtr& b, const std::string& x, const TermPtr& m);

// Term language membership.
bool term_in_system(const TermPtr& m, SystemId sys);

std::size_t term_size(const TermPtr& m);
std::size_t term_depth(const TermPtr& m);

using Position = std::vector<int>;

std::optional<TermPtr> subterm_at(const TermPtr& m, const Position& p);
// Replaces the subterm at p; nullopt when the path is invalid.
std::optional<TermPtr> replace_at(const TermPtr& m, const Position& p, TermPtr replacement);
bool is_prefix(const Position& p, const Position& q);
Position concat(const Position& p, const Position& q);
std::string position_string(const Position& p);

// Elimination contexts with a hole at the main premiss.
struct ElimContext {
    enum class Kind { AppHole, ProjHole, CaseHole, AbortHole, TyAppHole };

    Kind kind = Kind::AppHole;
    TermPtr arg;       // AppHole
    int index = 0;     // ProjHole
    std::string x, y;  // CaseHole
    FormulaPtr a, b;   // CaseHole branch annotations
    TermPtr p, q;      // CaseHole branches
    FormulaPtr ty;     // CaseHole result, AbortHole result, TyAppHole argument

    static ElimContext app_hole(TermPtr n);
    static ElimContext proj_hole(int i);
    static ElimContext case_hole(const std::string& x, FormulaPtr a, TermPtr p, const std::string& y,
                                 FormulaPtr b, TermPtr q, FormulaPtr c);
    static ElimContext abort_hole(FormulaPtr c);
    static ElimContext tyapp_hole(FormulaPtr b);
};

TermPtr fill(const ElimContext& e, const TermPtr& m);

}  // namespace proofkit
