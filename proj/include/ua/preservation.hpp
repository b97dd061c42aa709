#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ua/formula.hpp"

namespace ua {

struct PreservationOptions {
    EvalOptions eval;
    size_t max_counterexamples = 10;
    // When set, only these assignments are tested instead of all tuples;
    // each entry gives values for the sorted free variables.
    std::optional<std::vector<std::vector<int>>> a_tuples;
    std::optional<std::vector<std::vector<int>>> b_tuples;
};

struct PreservationCounterexample {
    std::vector<int> a_args, b_args;
    std::string detail;
};

struct PreservationReport {
    std::vector<std::string> variables;  // sorted free variables of phi
    long long assignments_checked = 0;
    std::vector<PreservationCounterexample> counterexamples;

    bool ok() const { return counterexamples.empty(); }
};

/// Counterexamples to: A |= phi(a...) and B |= phi(b...) implies
/// AxB |= phi(paired args).
PreservationReport check_product_preservation(const FormulaPtr& phi, const Algebra& a,
                                              const Algebra& b,
                                              const PreservationOptions& opt = {});

/// Counterexamples to: AxB |= phi(paired args) implies A |= phi(a...) and
/// B |= phi(b...).
PreservationReport check_factor_preservation(const FormulaPtr& phi, const Algebra& a,
                                             const Algebra& b,
                                             const PreservationOptions& opt = {});

}  // namespace ua
