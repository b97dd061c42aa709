#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ua/congruence.hpp"
#include "ua/term.hpp"

namespace ua {

/// Word over the alphabet {1..N}; the empty word is the empty vector.
using Word = std::vector<int>;
std::string word_str(const Word& w);
std::vector<Word> words_up_to(int alphabet, int max_len);

/// Term family for the determining-property Mal'cev condition: level terms
/// s_i, t_i over the slots (x, y, z..., x_1, y_1, ..., x_{i-1}, y_{i-1})
/// (arity 2 + l + 2(i-1)), and a pair of terms L_a, R_a over the full slot
/// tuple for every word a of length at most N.  L_eps must be the variable x
/// and R_eps the variable y.
struct MalcevFamily {
    int N = 2;  // even
    int n = 0;
    int l = 1;
    ZeroOneSpec zeroone;
    std::vector<TermPtr> s, t;   // s[i-1] is s_i
    std::map<Word, TermPtr> L, R;

    int k() const { return N / 2; }
    void validate(const Signature& sig) const;
};

MalcevFamily parse_malcev_family(const std::string& text);
std::string print_malcev_family(const MalcevFamily& fam);

enum class TransformKind { Sigma, SigmaStar, Rho, RhoStar };
const char* transform_name(TransformKind k);

/// Tuple of terms in slot order (x, y, z..., x_1, y_1, ..., x_n, y_n).
using TermTuple = std::vector<TermPtr>;
TermTuple slot_tuple(int n, int l);

/// The four slot-tuple transformers.  Each rewrites the tuple by the
/// recursion: sigma sets y to x's entry and z to the zero terms, filling x_j
/// with s_j applied to the already-built prefix and keeping y_j; sigma* uses
/// t_j with z set to one; rho/rho* keep x_j and fill y_j with s_j/t_j.
TermTuple transform(TransformKind kind, const MalcevFamily& fam, const TermTuple& tup);

struct IdentityCheck {
    std::string name;
    TermPtr lhs, rhs;
    bool pass = false;
    std::vector<std::pair<std::string, int>> counterexample;  // variable assignment
};

struct IdentityReport {
    std::vector<IdentityCheck> checks;
    bool all_pass = true;
    std::string note;
};

struct MalcevCheckOptions {
    long long budget = 200'000'000;  // term evaluations
};

/// Evaluates every identity of the Mal'cev condition on A, over all
/// assignments to the slot variables.  Per-algebra only: a pass certifies
/// the identities on A, nothing beyond it (the report's note says so).
IdentityReport check_malcev_identities(const Algebra& a, const MalcevFamily& fam,
                                       const MalcevCheckOptions& opt = {});

/// The four generated-congruence identities relating a transformed tuple to
/// the relational composition on the left-hand side.  Both readings of the
/// composition are computed: the literal relational product and the lattice
/// join.
struct GenerationIdentityLine {
    std::string name;
    bool composition_equal = false;
    bool join_equal = false;
};
struct GenerationIdentityReport {
    std::vector<GenerationIdentityLine> lines;
    bool all_join_equal = true;
    bool all_composition_equal = true;
};
GenerationIdentityReport check_generation_identities(const Algebra& a, const MalcevFamily& fam,
                            std::span<const int> tuple);

struct TransportOptions {
    int term_depth = 2;       // depth bound of the generated test set
    size_t max_terms = 200000;
    bool use_family_terms = true;
};

struct TransportReport {
    bool preconditions_ok = false;
    std::string precondition_failure;
    std::vector<int> a_elems, b_elems;  // the sandwich witnesses used
    size_t terms_tested = 0;
    std::vector<std::string> failures;  // term + which relation broke
    bool all_pass() const { return preconditions_ok && failures.empty(); }
};

/// Checks the sandwich-transport equations through sigma/sigma* (with the
/// a-witnesses) and rho/rho* (with the b-witnesses) for every term in the
/// test set.  The witnesses are solved here when not supplied and verified
/// when they are.
TransportReport check_sandwich_transport(const Algebra& a, const MalcevFamily& fam,
                                  const Congruence& theta, const Congruence& theta_star,
                                  int c, int d, std::span<const int> e,
                                  std::optional<std::vector<int>> a_elems = std::nullopt,
                                  std::optional<std::vector<int>> b_elems = std::nullopt,
                                  const TransportOptions& opt = {});

/// Terms u_1..u_k (k odd) over x, y, z... connecting x to y through the
/// zero/one endpoints:  x = u_1(x,y,0...), u_i(x,y,1...) = u_{i+1}(x,y,1...)
/// for odd i, u_i(x,y,0...) = u_{i+1}(x,y,0...) for even i, u_k(x,y,1...) = y.
struct UChain {
    int l = 1;
    ZeroOneSpec zeroone;
    std::vector<TermPtr> terms;
    bool validated = false;

    int k() const { return static_cast<int>(terms.size()); }
};

UChain parse_u_chain(const std::string& text);
std::string print_u_chain(const UChain& chain);

struct UChainReport {
    bool valid = false;
    std::vector<std::string> violations;  // identity, algebra, assignment
};

/// Replays all k+1 chain identities on every supplied algebra; on success
/// the returned chain carries the validated stamp.
UChainReport validate_u_chain(std::span<const Algebra> algebras, UChain& chain);

struct UChainSearchOptions {
    size_t max_terms = 50000;
};

/// Enumerates terms in x, y, z... up to max_depth (deduplicated by their
/// evaluation vectors across the supplied algebras) and searches for a chain
/// by alternating path search.  Chains found are validated before return.
std::optional<UChain> find_u_chain(std::span<const Algebra> algebras,
                                   const ZeroOneSpec& z, int max_depth,
                                   const UChainSearchOptions& opt = {});

/// Distinct terms over `vars` up to the given depth, deduplicated by their
/// evaluation vectors across the supplied algebras.
std::vector<TermPtr> enumerate_terms(std::span<const Algebra> algebras,
                                     const std::vector<std::string>& vars, int depth,
                                     size_t max_terms);

}  // namespace ua
