#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ua/algebra.hpp"
#include "ua/congruence.hpp"
#include "ua/ef_game.hpp"
#include "ua/factorization.hpp"
#include "ua/malcev.hpp"

namespace ua {

/// Families of built-in algebras: the chain algebras over {+,*,0,1}
/// (optionally expanded by the total-order join v with 0 greatest), the
/// doubled chains D_n inside L2 x L_{n+1}, products, and the 8-element
/// subalgebra of L5v x L2v.
struct GallerySpec {
    enum class Family { L, D, Lvee, Product, SubalgebraL };
    Family family = Family::L;
    int n = 2;
    int m = 2;             // second factor size for products
    bool with_join = false;
};

/// Tables: x+0=x, 0+1=0, 1+1=1, x*0=0, 0*1=0, 1*1=1, everything else 2;
/// with_join adds a v b = min(a,b) (the order makes 0 greatest).
Algebra build_L(int n, bool with_join);

/// D_n: the induced subalgebra of L2 x L_{n+1} on (2 x n) u {(1,n)}, with
/// coordinate labels retained; |D_n| = 2n+1.
struct LabeledAlgebra {
    Algebra algebra;
    std::vector<std::pair<int, int>> labels;  // element -> (i,j) coordinates

    int index_of(std::pair<int, int> label) const;
};
LabeledAlgebra build_D(int n);

/// L_n x L_m with coordinate labels (i runs over the first factor).
struct LabeledProduct {
    Product product;
    std::vector<std::pair<int, int>> labels;

    int index_of(std::pair<int, int> label) const;
};
LabeledProduct build_L_product(int n, int m, bool with_join);

/// The subalgebra of L5v x L2v missing (3,1) and (4,0), together with its
/// parent product and the swap isomorphism from L4v x L2v.
struct SubalgebraL {
    LabeledProduct parent;       // L5v x L2v
    Subalgebra sub;              // the 8-element subalgebra
    LabeledProduct small;        // L4v x L2v
    ElementMap swap_map;         // small -> sub, identity except (3,1) -> (4,1)
};
SubalgebraL build_subalgebra_L();

Algebra gallery_build(const GallerySpec& spec);

std::vector<Algebra> gallery_L_family(int n_from, int n_to, bool with_join);

/// The fixed length-5 chain (x+z, x*z, y*z, y+z, y), validated against the
/// given algebras before it is returned.
UChain standard_u_chain(std::span<const Algebra> validate_on);

struct IndecomposabilityEvidence {
    bool prime_cardinality = false;
    std::optional<bool> by_factor_pairs;  // set when within the size guard
    bool indecomposable = false;
};

struct CounterexampleReport {
    int n = 0;
    int rounds = 0;
    Player game_winner = Player::Forall;
    bool fixed_strategy_wins = false;
    IndecomposabilityEvidence d_indecomposable;
    bool product_decomposable = false;
    long long solver_positions = 0;
    bool pass = false;
};

struct PipelineOptions {
    EfOptions ef;
    CongruenceOptions congruence;
};

/// Builds D_n and L2 x L_n, solves the (n-3)-round game by full search,
/// validates the mirror/fresh-element strategy, and checks that D_n is
/// directly indecomposable while the product is not.
CounterexampleReport counterexample_pipeline(int n, const PipelineOptions& opt = {});

/// The duplicator strategy played in the pipeline: answer with the equally
/// labelled element when the spoiler stays below the tail rows, otherwise
/// with the least unchosen tail element of the other structure.
DuplicatorStrategy mirror_tail_strategy(const LabeledAlgebra& d, const LabeledProduct& prod);

struct FigureChecksReport {
    bool subuniverse_closed = false;
    bool swap_is_isomorphism = false;
    bool theta_below_ker_pi1 = false;
    bool theta_strictly_below = false;
    std::vector<std::vector<int>> theta_blocks;
    // Kernel formula transported along the swap isomorphism: expected
    // (true, true, false) on L4vxL2v, the subalgebra, and L5vxL2v.
    bool transport_small = false;
    bool transport_sub = false;
    bool transport_big = true;
    bool phi_positive = false;     // syntactic tags of the kernel formula
    bool phi_existential = false;
    bool pass = false;
};

FigureChecksReport figure_checks();

}  // namespace ua
