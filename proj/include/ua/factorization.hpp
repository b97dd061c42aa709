#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ua/congruence.hpp"
#include "ua/term.hpp"

namespace ua {

/// Complementary factor congruence pair: meet is trivial and the one-fold
/// relational product is total.
struct FactorPair {
    Congruence theta;
    Congruence theta_star;

    bool is_trivial() const { return theta.is_delta() || theta.is_nabla(); }
};

std::vector<FactorPair> factor_pairs(const Algebra& a, const CongruenceOptions& opt = {});

/// Quotient A/theta on least block representatives, plus the block map.
struct Quotient {
    Algebra algebra;
    std::vector<int> class_of;          // element of A -> quotient element
    std::vector<int> representative;    // quotient element -> least member
};
Quotient quotient(const Algebra& a, const Congruence& theta);

struct DecompositionReport {
    FactorPair pair;
    Quotient left;    // A/theta
    Quotient right;   // A/theta*
    ElementMap reconstruction;  // A -> (A/theta) x (A/theta*), row-major
    bool reconstruction_ok = false;
};

std::vector<DecompositionReport> decompose(const Algebra& a, const CongruenceOptions& opt = {});
bool is_directly_indecomposable(const Algebra& a, const CongruenceOptions& opt = {});

struct CentralElement {
    std::vector<int> value;  // e tuple, length l
    FactorPair witness;
};

struct CentralReport {
    std::vector<CentralElement> elements;        // every (pair, solution)
    std::vector<std::vector<int>> distinct;      // deduplicated values, sorted
    // Pairs for which some coordinate had no solution (cannot happen for
    // genuine factor pairs; kept as data, not an error).
    std::vector<FactorPair> unsolved;
};

CentralReport central_elements(const Algebra& a, const ZeroOneSpec& z,
                               const CongruenceOptions& opt = {});

struct ComplementaryPair {
    std::vector<int> e;
    std::vector<int> f;
    FactorPair witness;
};
std::vector<ComplementaryPair> complementary_pairs(const Algebra& a, const ZeroOneSpec& z,
                                                   const CongruenceOptions& opt = {});

struct BfcReport {
    bool holds = false;
    int factor_congruence_count = 0;
    std::string failure;  // description of the witness, empty when holds
};

/// Do the factor congruences form a distributive sublattice of Con(A)?
BfcReport check_bfc(const Algebra& a, const CongruenceOptions& opt = {});

struct DeterminingReport {
    bool unique_solutions = true;      // each pair determines exactly one e
    bool injective = true;             // pair -> e is injective
    bool surjective = true;            // every central element is hit
    bool weak_unique = true;           // same three for (e,f) pairs
    bool weak_injective = true;
    bool weak_surjective = true;
    std::string failure;               // first witness, empty if all pass
    int pair_count = 0;
    int central_count = 0;

    bool passes() const {
        return unique_solutions && injective && surjective && weak_unique &&
               weak_injective && weak_surjective;
    }
};

/// Instance-level check of the bijection between complementary factor
/// congruence pairs and central elements on this single algebra.
DeterminingReport check_determining_property(const Algebra& a, const ZeroOneSpec& z,
                                             const CongruenceOptions& opt = {});

}  // namespace ua
