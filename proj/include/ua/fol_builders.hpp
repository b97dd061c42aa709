#pragma once

#include <map>
#include <string>
#include <vector>

#include "ua/formula.hpp"
#include "ua/malcev.hpp"

namespace ua {

/// The semilattice kernel formula built from a validated u-chain:
///   forall u ( /\_i  u_i(x,y,0...) v u = u_i(x,y,z...) v u  ->  x v u = y v u )
/// Free variables: x, y and the z tuple.  Rejects chains that have not been
/// validated.
FormulaPtr build_semilattice_phi(const UChain& chain, const std::string& join_op);

/// The kernel formulas assembled from a Mal'cev family:
///   psi[m-1] = Psi_m for m = 1..N, each a conjunction over words of length m
///   of (antecedent over proper extensions -> L_a = R_a); the length-N layer
///   has an empty antecedent.
///   phi1 = Ey1 Ax1 ... Eyn Axn /\ Psi_{2m},  phi2 = Ex1 Ay1 ... /\ Psi_{2m-1},
///   phi = phi1 and phi2.  Free variables: x, y, z tuple.
struct Phi12 {
    FormulaPtr phi1, phi2, phi;
    std::vector<FormulaPtr> psi;
};
Phi12 build_phi12(const MalcevFamily& fam, const Signature& sig);

/// Layered preservation formulas over arbitrary per-word formulas tau_a:
///   E_m over even word lengths in [m, N], O_m over odd lengths, and the
///   combined (Ey1 Ax1...E_2) and (Ex1 Ay1...O_1) sentence-with-parameters.
FormulaPtr build_E(const std::map<Word, FormulaPtr>& taus, int N, int m);
FormulaPtr build_O(const std::map<Word, FormulaPtr>& taus, int N, int m);
FormulaPtr build_EO(const std::map<Word, FormulaPtr>& taus, int N, int n);

/// One axiom of the central-element characterization; the suite's free
/// variables are e1..el and f1..fl.
struct NamedFormula {
    std::string name;
    FormulaPtr formula;
};

/// The axiom suite parameterized by a kernel formula phi with free variables
/// x, y and the z tuple (and optionally a w tuple, which is then filled with
/// the complementary element): CAN, PROD, INT, REF, SYM, TRANS, their primed
/// variants (PROD and INT are symmetric), and PRES per function symbol.
std::vector<NamedFormula> sigma_suite(const Signature& sig, const FormulaPtr& phi,
                                      const ZeroOneSpec& z);

std::vector<std::string> e_var_names(int l);
std::vector<std::string> f_var_names(int l);
std::vector<std::string> w_var_names(int l);

}  // namespace ua
