#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ua {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised by the file/term/formula readers; carries a human-readable position.
struct parse_error : error {
    using error::error;
};

/// Raised when an evaluation exceeds its configured work budget.
struct budget_error : error {
    using error::error;
};

struct OpSym {
    std::string name;
    int arity = 0;
};

// Constants are 0-ary operation symbols; there is no separate constant list.
class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<OpSym> ops);

    int op_count() const { return static_cast<int>(ops_.size()); }
    const OpSym& op(int i) const { return ops_.at(i); }
    const std::vector<OpSym>& ops() const { return ops_; }

    // -1 if the name is not a symbol of this signature.
    int index_of(std::string_view name) const;
    bool has(std::string_view name) const { return index_of(name) >= 0; }

    bool operator==(const Signature& other) const;

private:
    std::vector<OpSym> ops_;
    std::map<std::string, int, std::less<>> index_;
};

/// A finite algebra: universe {0,...,size-1} plus one fully materialized
/// table per operation symbol, stored row major.  Immutable after
/// construction; all operations on algebras in this library are pure.
class Algebra {
public:
    Algebra(Signature sig, int size, std::vector<std::vector<int>> tables,
            std::string name = "");

    const Signature& signature() const { return sig_; }
    int size() const { return size_; }
    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    int apply(int op, std::span<const int> args) const;
    int constant(int op) const;
    const std::vector<int>& table(int op) const { return tables_.at(op); }

    // Optional display names for elements (used by the gallery's labelled
    // algebras); defaults to the decimal index.
    const std::vector<std::string>& element_names() const { return elem_names_; }
    void set_element_names(std::vector<std::string> names);
    std::string element_name(int a) const;

private:
    Signature sig_;
    int size_ = 0;
    std::vector<std::vector<int>> tables_;
    std::string name_;
    std::vector<std::string> elem_names_;
};

/// Partial map between the universes of two algebras, stored as an image
/// array with -1 for "undefined".  Injectivity is not enforced on
/// construction; the isomorphism and game code checks it where required.
class ElementMap {
public:
    ElementMap() = default;
    ElementMap(int dom_size, int cod_size);

    static ElementMap identity(int n);

    int dom_size() const { return static_cast<int>(img_.size()); }
    int cod_size() const { return cod_size_; }

    void set(int a, int b);
    std::optional<int> image(int a) const;
    bool defined(int a) const { return img_.at(a) >= 0; }

    bool is_total() const;
    bool is_injective() const;
    bool is_bijective() const;

    std::vector<std::pair<int, int>> pairs() const;

private:
    std::vector<int> img_;
    int cod_size_ = 0;
};

/// Direct product with row-major element encoding and decode helpers:
/// the tuple (c_0,...,c_{r-1}) is the element ((c_0*n_1 + c_1)*n_2 + ...).
struct Product {
    Algebra algebra;
    std::vector<int> sizes;

    int factor_count() const { return static_cast<int>(sizes.size()); }
    int component(int elem, int factor) const;
    std::vector<int> decode(int elem) const;
    int encode(std::span<const int> components) const;

    // Total, generally non-injective map onto the given factor.
    ElementMap projection(int factor) const;
};

Product direct_product(std::span<const Algebra> factors);
Product direct_product(const Algebra& a, const Algebra& b);

/// Least subset of A containing `seed` and every constant, closed under all
/// operations.
std::vector<int> subuniverse_closure(const Algebra& a, std::span<const int> seed);

/// Subalgebra induced on `universe` (which must be closed); elements are
/// re-indexed in ascending order.  The returned map embeds the subalgebra
/// back into `a`, and element names are inherited.
struct Subalgebra {
    Algebra algebra;
    ElementMap embedding;            // subalgebra index -> parent index
    std::vector<int> parent_index;   // same data as a plain vector
};
Subalgebra subalgebra(const Algebra& a, std::span<const int> universe);

/// True iff m commutes with every operation wherever the check applies: for
/// every tuple from m's domain whose f-image is also in the domain,
/// m(f(a...)) == f(m(a)...).  With `total` set, m must be defined everywhere.
bool check_homomorphism(const Algebra& a, const Algebra& b, const ElementMap& m,
                        bool total);

/// Backtracking search with in-degree invariant pruning; intended for
/// |A| <= ~30.  nullopt when no isomorphism exists.
std::optional<ElementMap> find_isomorphism(const Algebra& a, const Algebra& b);

}  // namespace ua
