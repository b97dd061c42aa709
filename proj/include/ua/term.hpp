#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ua/algebra.hpp"

namespace ua {

class Term;
using TermPtr = std::shared_ptr<const Term>;

/// Term tree over named variables and signature symbols.  A leaf is a bare
/// name; whether it denotes a variable or a 0-ary symbol is resolved against
/// the signature at evaluation time (symbols win, so variables must not
/// shadow constant names).
class Term {
public:
    static TermPtr leaf(std::string name);
    static TermPtr app(std::string op, std::vector<TermPtr> children);

    bool is_leaf() const { return children_ == nullptr; }
    const std::string& head() const { return head_; }
    const std::vector<TermPtr>& children() const;

    std::string to_string() const;

private:
    std::string head_;
    std::shared_ptr<const std::vector<TermPtr>> children_;  // null for leaves
};

bool term_equal(const TermPtr& a, const TermPtr& b);

/// Environment for term/formula evaluation.  Lookup scans bindings from the
/// innermost end, so pushing a quantified variable shadows an outer one.
class Env {
public:
    void push(const std::string& name, int value);
    void pop();
    const int* find(const std::string& name) const;
    void bind(const std::string& name, int value) { push(name, value); }

private:
    std::vector<std::pair<std::string, int>> vals_;
};

int eval_term(const Algebra& a, const TermPtr& t, const Env& env);

/// Free variables of t: every leaf name that is not a 0-ary symbol of sig.
std::set<std::string> free_vars(const TermPtr& t, const Signature& sig);
bool is_closed(const TermPtr& t, const Signature& sig);

/// Replaces free occurrences of variables by terms.  Constant leaves (0-ary
/// symbol names) are never substituted.
TermPtr substitute(const TermPtr& t, const Signature& sig,
                   const std::map<std::string, TermPtr>& subst);

/// Prefix syntax: `+(x,0)`, `v(x1,y)`, bare names for variables/constants.
TermPtr parse_term(const std::string& text);

/// Closed term tuples 0_1..0_l / 1_1..1_l interpreting "zero" and "one".
struct ZeroOneSpec {
    std::vector<TermPtr> zeros;
    std::vector<TermPtr> ones;

    int length() const { return static_cast<int>(zeros.size()); }
    void validate(const Signature& sig) const;

    std::vector<int> zero_values(const Algebra& a) const;
    std::vector<int> one_values(const Algebra& a) const;

    // The {+,*,0,1} gallery convention: zeros = [0], ones = [1].
    static ZeroOneSpec constants01();
};

/// Variable names used by the Mal'cev machinery for the slot tuple
/// (x, y, z..., x_1, y_1, ..., x_n, y_n); z is called "z" when l = 1 and
/// "z1".."zl" otherwise.
std::vector<std::string> z_var_names(int l);
std::vector<std::string> slot_var_names(int n, int l);

}  // namespace ua
