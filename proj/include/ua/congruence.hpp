#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ua/algebra.hpp"
#include "ua/term.hpp"

namespace ua {

/// Congruence of a finite algebra, stored as a block-id array normalized so
/// that each block's id is its least member; structural equality therefore
/// coincides with equality of the partitions.  Holds a non-owning pointer to
/// the parent algebra, which must outlive the congruence.
class Congruence {
public:
    static Congruence delta(const Algebra& a);   // trivial (equality)
    static Congruence nabla(const Algebra& a);   // universal

    // Normalizes and verifies compatibility; throws on an incompatible
    // partition.  `rep` may use arbitrary block ids.
    static Congruence from_partition(const Algebra& a, const std::vector<int>& rep);
    static std::optional<Congruence> from_partition_checked(const Algebra& a,
                                                            const std::vector<int>& rep);

    const Algebra* parent() const { return parent_; }
    int size() const { return static_cast<int>(rep_.size()); }
    int rep(int a) const { return rep_.at(a); }
    bool related(int a, int b) const { return rep_.at(a) == rep_.at(b); }
    const std::vector<int>& rep_array() const { return rep_; }

    int block_count() const;
    std::vector<std::vector<int>> blocks() const;
    std::vector<int> block_of(int a) const;

    bool operator==(const Congruence& other) const { return rep_ == other.rep_; }
    bool operator<(const Congruence& other) const { return rep_ < other.rep_; }
    bool subset_of(const Congruence& other) const;

    bool is_delta() const;
    bool is_nabla() const;

private:
    Congruence(const Algebra* parent, std::vector<int> rep)
        : parent_(parent), rep_(std::move(rep)) {}

    const Algebra* parent_ = nullptr;
    std::vector<int> rep_;
};

/// Least congruence of A containing all given pairs.  Closure works one
/// coordinate at a time: whenever a pair (a,b) is identified, every value
/// f(...,a,...) is merged with f(...,b,...); unary polynomials generate the
/// full congruence closure.
Congruence generated_congruence(const Algebra& a,
                                std::span<const std::pair<int, int>> pairs);

Congruence join(const Congruence& t, const Congruence& u);
Congruence meet(const Congruence& t, const Congruence& u);

/// Plain binary relation on {0..n-1}; compositions of congruences need not
/// be transitive, so they are returned as relations.
class Relation {
public:
    explicit Relation(int n) : n_(n), bits_(static_cast<size_t>(n) * n, 0) {}
    static Relation of(const Congruence& c);
    static Relation universal(int n);

    int size() const { return n_; }
    bool at(int a, int b) const { return bits_[static_cast<size_t>(a) * n_ + b] != 0; }
    void set(int a, int b) { bits_[static_cast<size_t>(a) * n_ + b] = 1; }

    Relation compose(const Relation& other) const;  // {(a,c) : ab in this, bc in other}
    bool is_universal() const;
    bool subset_of(const Relation& other) const;
    bool operator==(const Relation& other) const { return n_ == other.n_ && bits_ == other.bits_; }

    // The relation as a congruence, when it happens to be one.
    std::optional<Congruence> as_congruence(const Algebra& a) const;

private:
    int n_;
    std::vector<char> bits_;
};

/// k alternating rounds of composition: fold=1 gives t o u, fold=2 gives
/// t o u o t o u, and so on.
Relation rel_product(const Congruence& t, const Congruence& u, int fold);

struct CongruenceOptions {
    int size_guard = 14;  // all_congruences refuses larger algebras
};

/// Complete congruence lattice, computed as the join closure of all
/// principal congruences.  Sorted for determinism.
std::vector<Congruence> all_congruences(const Algebra& a, const CongruenceOptions& opt = {});

/// Mal'cev chain witnessing (a,b) in Cg(generators): unary polynomials
/// p_1..p_k over generator-slot variables g1..gm and element parameters,
/// satisfying  a = p_1(left), p_i(right) = p_{i+1}(right) for odd i,
/// p_i(left) = p_{i+1}(left) for even i, p_k(right) = b,  where left/right
/// plug the generators' first/second components into the slots.  k is odd,
/// except for the degenerate empty chain when a = b.
struct MalcevChain {
    std::vector<std::pair<int, int>> generators;
    int from = 0;
    int to = 0;
    std::vector<TermPtr> steps;
    std::map<std::string, int> params;  // parameter variable -> element
};

MalcevChain malcev_chain(const Algebra& a, std::pair<int, int> target,
                         std::span<const std::pair<int, int>> generators);

/// Replays the chain's defining equations on the algebra.
bool replay_chain(const Algebra& a, const MalcevChain& chain);

}  // namespace ua
