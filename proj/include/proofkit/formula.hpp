#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>

namespace proofkit {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;
using NameSet = std::set<std::string>;

// Shared formula language of IPC (Bot, Or) and F/Fat (Forall).
struct Formula {
    enum class Kind { Var, Bot, Imp, And, Or, Forall };

    Kind kind;
    std::string name;  // Var name or Forall binder
    FormulaPtr left;   // Imp/And/Or left, Forall body
    FormulaPtr right;  // Imp/And/Or right

    bool is_atomic() const { return kind == Kind::Var; }
};

FormulaPtr fvar(const std::string& name);
FormulaPtr fbot();
FormulaPtr fimp(FormulaPtr a, FormulaPtr b);
FormulaPtr fand(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr fall(const std::string& x, FormulaPtr body);

enum class SystemId { IPC, F, FAT };

const char* system_name(SystemId sys);

// Which formula languages a formula belongs to. Var/Imp/And-only formulas
// belong to both.
struct FormulaClass {
    bool ipc = true;
    bool f = true;
};
FormulaClass system_of_formula(const FormulaPtr& a);
bool formula_in_system(const FormulaPtr& a, SystemId sys);

NameSet ftv(const FormulaPtr& a);
void collect_ftv(const FormulaPtr& a, NameSet& out);
bool occurs_free(const std::string& x, const FormulaPtr& a);

bool alpha_eq(const FormulaPtr& a, const FormulaPtr& b);
// Same syntax tree, binder names included.
bool identical(const FormulaPtr& a, const FormulaPtr& b);

// Capture-avoiding [b/x]a.
FormulaPtr subst_type_in_formula(const FormulaPtr& b, const std::string& x, const FormulaPtr& a);

// forall X.((a -> X) & (b -> X)) -> X with X fresh for a and b.
FormulaPtr encode_or(const FormulaPtr& a, const FormulaPtr& b);
// forall X.X
FormulaPtr encode_bot();

// Recognizers for the encoded connectives, up to alpha-equivalence.
std::optional<std::pair<FormulaPtr, FormulaPtr>> match_encoded_or(const FormulaPtr& a);
bool is_encoded_bot(const FormulaPtr& a);

// Smallest primed variant of base (base, base', base'', ...) not in avoid.
std::string fresh_name(const std::string& base, const NameSet& avoid);

// Structural size used by the termination weight.
std::size_t formula_depth(const FormulaPtr& a);

}  // namespace proofkit
