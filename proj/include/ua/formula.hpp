#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ua/algebra.hpp"
#include "ua/term.hpp"

namespace ua {

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// First-order formula over term equality with the connectives
/// not/and/or/-> and named quantified variables.  An empty conjunction is
/// true, an empty disjunction is false.
class Formula {
public:
    enum class Kind { Eq, Not, And, Or, Implies, Forall, Exists };

    static FormulaPtr eq(TermPtr lhs, TermPtr rhs);
    static FormulaPtr negation(FormulaPtr f);
    static FormulaPtr conj(std::vector<FormulaPtr> fs);
    static FormulaPtr disj(std::vector<FormulaPtr> fs);
    static FormulaPtr implies(FormulaPtr a, FormulaPtr b);
    static FormulaPtr forall(std::string var, FormulaPtr body);
    static FormulaPtr exists(std::string var, FormulaPtr body);
    static FormulaPtr top() { return conj({}); }

    Kind kind() const { return kind_; }
    const TermPtr& lhs() const { return lhs_; }
    const TermPtr& rhs() const { return rhs_; }
    const std::vector<FormulaPtr>& parts() const { return parts_; }
    const std::string& var() const { return var_; }
    const FormulaPtr& body() const { return parts_.at(0); }

    std::string to_string() const;

private:
    Kind kind_ = Kind::Eq;
    TermPtr lhs_, rhs_;
    std::vector<FormulaPtr> parts_;
    std::string var_;
};

std::set<std::string> free_vars(const FormulaPtr& f, const Signature& sig);

/// Capture-avoiding substitution of free variables by terms; bound variables
/// are renamed when they would capture a substituted variable.
FormulaPtr substitute(const FormulaPtr& f, const Signature& sig,
                      const std::map<std::string, TermPtr>& subst);

struct EvalOptions {
    long long budget = 1'000'000'000;  // evaluated nodes
};

/// Tarskian truth by exhaustive quantification with short-circuiting.
/// Throws budget_error naming the offending subformula when the node budget
/// runs out.
bool eval_formula(const Algebra& a, const FormulaPtr& f, Env& env,
                  const EvalOptions& opt = {});
bool eval_sentence(const Algebra& a, const FormulaPtr& f, const EvalOptions& opt = {});

/// Syntactic fragment tags used in reports.
bool is_positive(const FormulaPtr& f);     // no negation / implication
bool is_existential(const FormulaPtr& f);  // prenex-existential over a
                                           // quantifier-free matrix

/// Prefix text syntax:
///   (= +(x,0) x) | (and f...) | (or f...) | (not f) | (-> f g)
///   | (forall v f) | (exists v f) | forall v f | exists v f
FormulaPtr parse_formula(const std::string& text);

}  // namespace ua
