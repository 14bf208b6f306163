#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "proofkit/errors.hpp"
#include "proofkit/formula.hpp"
#include "proofkit/rules.hpp"
#include "proofkit/term.hpp"

namespace proofkit {

// Ordered declarations x:A, each name at most once.
class Environment {
public:
    using Entry = std::pair<std::string, FormulaPtr>;

    Environment() = default;
    Environment(std::initializer_list<Entry> entries);

    // Throws DuplicateBinding.
    void insert(const std::string& x, FormulaPtr a);
    // Copy with x:A appended; an existing declaration of x is dropped
    // (binder shadowing).
    Environment extended(const std::string& x, FormulaPtr a) const;

    const FormulaPtr* lookup(const std::string& x) const;
    bool contains(const std::string& x) const { return lookup(x) != nullptr; }
    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    NameSet ftv() const;
    NameSet names() const;

    // Pointwise image of the formulas.
    Environment map(const std::function<FormulaPtr(const FormulaPtr&)>& f) const;

    friend bool operator==(const Environment& a, const Environment& b);

private:
    std::vector<Entry> entries_;
};

// Called once per subterm, after its own subterms, with the environment in
// force there and its type.
using TypeHook = std::function<void(const Position&, const Environment&, const TermPtr&, const FormulaPtr&)>;

struct TypecheckOptions {
    // Reject a type abstraction whose binder is free in the environment
    // instead of renaming the binder.
    bool strictProviso = false;
    TypeHook hook;
};

// Errors: NotInSystem, UnboundVariable, TypeMismatch, ForallProvisoViolated,
// NonAtomicInstantiation.
FormulaPtr typecheck(SystemId sys, const Environment& env, const TermPtr& m, const TypecheckOptions& opts = {});

// Type of e[hole] when the hole has type holeType. Adds HoleTypeMismatch.
FormulaPtr typecheck_elim_context(SystemId sys, const Environment& env, const ElimContext& e,
                                  const FormulaPtr& holeType);

// Fineness of a root redex of `rule` in env. Throws NotARedex when the shape
// does not match.
bool is_fine_redex(const Environment& env, const TermPtr& m, RuleId rule);

// Environment in force at position p: env extended by every lambda and case
// binder crossed. Throws InvalidPath.
Environment env_at(const Environment& env, const TermPtr& m, const Position& p);

}  // namespace proofkit
