#include "ua/algebra.hpp"

#include <algorithm>
#include <numeric>

namespace ua {

Signature::Signature(std::vector<OpSym> ops) : ops_(std::move(ops)) {
    for (int i = 0; i < static_cast<int>(ops_.size()); ++i) {
        const auto& op = ops_[i];
        if (op.name.empty())
            throw error("signature: empty operation name");
        if (op.arity < 0)
            throw error("signature: negative arity for '" + op.name + "'");
        if (!index_.emplace(op.name, i).second)
            throw error("signature: duplicate operation name '" + op.name + "'");
    }
}

int Signature::index_of(std::string_view name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

bool Signature::operator==(const Signature& other) const {
    if (ops_.size() != other.ops_.size()) return false;
    for (size_t i = 0; i < ops_.size(); ++i)
        if (ops_[i].name != other.ops_[i].name || ops_[i].arity != other.ops_[i].arity)
            return false;
    return true;
}

namespace {

size_t table_size(int size, int arity) {
    size_t s = 1;
    for (int i = 0; i < arity; ++i) s *= static_cast<size_t>(size);
    return s;
}

}  // namespace

Algebra::Algebra(Signature sig, int size, std::vector<std::vector<int>> tables,
                 std::string name)
    : sig_(std::move(sig)), size_(size), tables_(std::move(tables)), name_(std::move(name)) {
    if (size_ <= 0) throw error("algebra: size must be positive");
    if (static_cast<int>(tables_.size()) != sig_.op_count())
        throw error("algebra: expected one table per operation symbol");
    for (int i = 0; i < sig_.op_count(); ++i) {
        const auto& op = sig_.op(i);
        if (tables_[i].size() != table_size(size_, op.arity))
            throw error("algebra: table for '" + op.name + "' has wrong length");
        for (int v : tables_[i])
            if (v < 0 || v >= size_)
                throw error("algebra: table entry out of range for '" + op.name + "'");
    }
}

int Algebra::apply(int op, std::span<const int> args) const {
    const auto& sym = sig_.op(op);
    if (static_cast<int>(args.size()) != sym.arity)
        throw error("apply: arity mismatch for '" + sym.name + "'");
    size_t idx = 0;
    for (int a : args) idx = idx * static_cast<size_t>(size_) + static_cast<size_t>(a);
    return tables_[op][idx];
}

int Algebra::constant(int op) const {
    if (sig_.op(op).arity != 0)
        throw error("constant: '" + sig_.op(op).name + "' is not 0-ary");
    return tables_[op][0];
}

void Algebra::set_element_names(std::vector<std::string> names) {
    if (static_cast<int>(names.size()) != size_)
        throw error("element names: wrong length");
    elem_names_ = std::move(names);
}

std::string Algebra::element_name(int a) const {
    if (!elem_names_.empty()) return elem_names_.at(a);
    return std::to_string(a);
}

ElementMap::ElementMap(int dom_size, int cod_size)
    : img_(dom_size, -1), cod_size_(cod_size) {}

ElementMap ElementMap::identity(int n) {
    ElementMap m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i);
    return m;
}

void ElementMap::set(int a, int b) {
    if (a < 0 || a >= dom_size() || b < 0 || b >= cod_size_)
        throw error("element map: index out of range");
    img_[a] = b;
}

std::optional<int> ElementMap::image(int a) const {
    int v = img_.at(a);
    if (v < 0) return std::nullopt;
    return v;
}

bool ElementMap::is_total() const {
    return std::all_of(img_.begin(), img_.end(), [](int v) { return v >= 0; });
}

bool ElementMap::is_injective() const {
    std::vector<char> seen(cod_size_, 0);
    for (int v : img_) {
        if (v < 0) continue;
        if (seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

bool ElementMap::is_bijective() const {
    return is_total() && is_injective() && dom_size() == cod_size_;
}

std::vector<std::pair<int, int>> ElementMap::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < dom_size(); ++a)
        if (img_[a] >= 0) out.emplace_back(a, img_[a]);
    return out;
}

int Product::component(int elem, int factor) const {
    int rest = elem;
    int value = 0;
    for (int i = 0; i < factor_count(); ++i) {
        value = rest % sizes[factor_count() - 1 - i];
        rest /= sizes[factor_count() - 1 - i];
        if (factor_count() - 1 - i == factor) return value;
    }
    return value;
}

std::vector<int> Product::decode(int elem) const {
    std::vector<int> comps(factor_count());
    for (int i = factor_count() - 1; i >= 0; --i) {
        comps[i] = elem % sizes[i];
        elem /= sizes[i];
    }
    return comps;
}

int Product::encode(std::span<const int> components) const {
    if (static_cast<int>(components.size()) != factor_count())
        throw error("product encode: wrong tuple length");
    int e = 0;
    for (int i = 0; i < factor_count(); ++i) {
        if (components[i] < 0 || components[i] >= sizes[i])
            throw error("product encode: component out of range");
        e = e * sizes[i] + components[i];
    }
    return e;
}

ElementMap Product::projection(int factor) const {
    ElementMap m(algebra.size(), sizes.at(factor));
    for (int e = 0; e < algebra.size(); ++e) m.set(e, component(e, factor));
    return m;
}

Product direct_product(std::span<const Algebra> factors) {
    if (factors.empty()) throw error("direct product: at least one factor required");
    const Signature& sig = factors[0].signature();
    for (const auto& f : factors)
        if (!(f.signature() == sig)) throw error("direct product: signature mismatch");

    std::vector<int> sizes;
    long long total = 1;
    for (const auto& f : factors) {
        sizes.push_back(f.size());
        total *= f.size();
    }
    int n = static_cast<int>(total);

    Product prod{Algebra(sig, 1, std::vector<std::vector<int>>(sig.op_count(), {0})), sizes};

    std::vector<std::vector<int>> tables(sig.op_count());
    int r = static_cast<int>(factors.size());
    for (int op = 0; op < sig.op_count(); ++op) {
        int arity = sig.op(op).arity;
        size_t rows = 1;
        for (int i = 0; i < arity; ++i) rows *= static_cast<size_t>(n);
        std::vector<int>& tab = tables[op];
        tab.resize(rows);

        std::vector<int> args(arity, 0);
        std::vector<std::vector<int>> comps(arity);
        std::vector<int> farg(arity);
        for (size_t row = 0; row < rows; ++row) {
            size_t rest = row;
            for (int i = arity - 1; i >= 0; --i) {
                args[i] = static_cast<int>(rest % n);
                rest /= n;
            }
            for (int i = 0; i < arity; ++i) comps[i] = prod.decode(args[i]);
            std::vector<int> result(r);
            for (int f = 0; f < r; ++f) {
                for (int i = 0; i < arity; ++i) farg[i] = comps[i][f];
                result[f] = factors[f].apply(op, farg);
            }
            tab[row] = prod.encode(result);
        }
    }

    std::string name;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) name += "x";
        name += factors[i].name().empty() ? ("A" + std::to_string(i)) : factors[i].name();
    }
    prod.algebra = Algebra(sig, n, std::move(tables), name);

    std::vector<std::string> enames(n);
    for (int e = 0; e < n; ++e) {
        auto comps = prod.decode(e);
        std::string s = "(";
        for (int i = 0; i < r; ++i) {
            if (i) s += ",";
            s += factors[i].element_name(comps[i]);
        }
        s += ")";
        enames[e] = s;
    }
    prod.algebra.set_element_names(std::move(enames));
    return prod;
}

Product direct_product(const Algebra& a, const Algebra& b) {
    std::vector<Algebra> fs{a, b};
    return direct_product(std::span<const Algebra>(fs));
}

std::vector<int> subuniverse_closure(const Algebra& a, std::span<const int> seed) {
    std::vector<char> in(a.size(), 0);
    std::vector<int> members;
    auto add = [&](int x) {
        if (x < 0 || x >= a.size()) throw error("closure: seed element out of range");
        if (!in[x]) {
            in[x] = 1;
            members.push_back(x);
        }
    };
    for (int s : seed) add(s);
    for (int op = 0; op < a.signature().op_count(); ++op)
        if (a.signature().op(op).arity == 0) add(a.constant(op));

    // Worklist over tuples of current members; re-scan whenever we grow.
    bool grew = true;
    while (grew) {
        grew = false;
        for (int op = 0; op < a.signature().op_count(); ++op) {
            int arity = a.signature().op(op).arity;
            if (arity == 0) continue;
            std::vector<size_t> pos(arity, 0);
            std::vector<int> args(arity);
            size_t m = members.size();
            bool done = m == 0;
            while (!done) {
                for (int i = 0; i < arity; ++i) args[i] = members[pos[i]];
                int v = a.apply(op, args);
                if (!in[v]) {
                    in[v] = 1;
                    members.push_back(v);
                    grew = true;
                }
                int i = arity - 1;
                while (i >= 0 && ++pos[i] == m) pos[i--] = 0;
                done = i < 0;
            }
            if (grew) break;
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

Subalgebra subalgebra(const Algebra& a, std::span<const int> universe) {
    std::vector<int> elems(universe.begin(), universe.end());
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    if (elems.empty()) throw error("subalgebra: empty universe");

    std::vector<int> to_sub(a.size(), -1);
    for (int i = 0; i < static_cast<int>(elems.size()); ++i) to_sub[elems[i]] = i;

    int n = static_cast<int>(elems.size());
    const Signature& sig = a.signature();
    std::vector<std::vector<int>> tables(sig.op_count());
    for (int op = 0; op < sig.op_count(); ++op) {
        int arity = sig.op(op).arity;
        size_t rows = 1;
        for (int i = 0; i < arity; ++i) rows *= static_cast<size_t>(n);
        tables[op].resize(rows);
        std::vector<int> args(arity);
        for (size_t row = 0; row < rows; ++row) {
            size_t rest = row;
            for (int i = arity - 1; i >= 0; --i) {
                args[i] = elems[rest % n];
                rest /= n;
            }
            int v = a.apply(op, args);
            if (to_sub[v] < 0)
                throw error("subalgebra: universe not closed under '" + sig.op(op).name + "'");
            tables[op][row] = to_sub[v];
        }
    }

    Subalgebra sub{Algebra(sig, n, std::move(tables), a.name().empty() ? "sub" : a.name() + "|sub"),
                   ElementMap(n, a.size()), elems};
    std::vector<std::string> names(n);
    for (int i = 0; i < n; ++i) {
        sub.embedding.set(i, elems[i]);
        names[i] = a.element_name(elems[i]);
    }
    sub.algebra.set_element_names(std::move(names));
    return sub;
}

bool check_homomorphism(const Algebra& a, const Algebra& b, const ElementMap& m, bool total) {
    if (!(a.signature() == b.signature())) return false;
    if (m.dom_size() != a.size() || m.cod_size() != b.size()) return false;
    if (total && !m.is_total()) return false;

    std::vector<int> dom;
    for (int x = 0; x < a.size(); ++x)
        if (m.defined(x)) dom.push_back(x);

    const Signature& sig = a.signature();
    for (int op = 0; op < sig.op_count(); ++op) {
        int arity = sig.op(op).arity;
        if (arity == 0) {
            int v = a.constant(op);
            if (m.defined(v) && *m.image(v) != b.constant(op)) return false;
            if (total && *m.image(v) != b.constant(op)) return false;
            continue;
        }
        size_t rows = 1;
        for (int i = 0; i < arity; ++i) rows *= dom.size();
        std::vector<int> args(arity), imgs(arity);
        for (size_t row = 0; row < rows; ++row) {
            size_t rest = row;
            for (int i = arity - 1; i >= 0; --i) {
                args[i] = dom[rest % dom.size()];
                rest /= dom.size();
            }
            int v = a.apply(op, args);
            if (!m.defined(v)) continue;  // commutation only checked on the domain
            for (int i = 0; i < arity; ++i) imgs[i] = *m.image(args[i]);
            if (*m.image(v) != b.apply(op, imgs)) return false;
        }
    }
    return true;
}

namespace {

// Per-element invariant used to prune the isomorphism search: for every
// operation, how many table rows produce the element, plus the constant
// values it equals.
std::vector<std::vector<int>> iso_invariants(const Algebra& a) {
    std::vector<std::vector<int>> inv(a.size());
    for (int x = 0; x < a.size(); ++x) inv[x].assign(a.signature().op_count() * 2, 0);
    for (int op = 0; op < a.signature().op_count(); ++op) {
        for (int v : a.table(op)) inv[v][2 * op]++;
        if (a.signature().op(op).arity == 0) inv[a.constant(op)][2 * op + 1]++;
    }
    return inv;
}

struct IsoSearch {
    const Algebra& a;
    const Algebra& b;
    std::vector<int> img;   // a -> b, -1 undefined
    std::vector<int> pre;   // b -> a, -1 undefined

    bool consistent(int x) const {
        // Check every fully-assigned tuple that involves x.
        const Signature& sig = a.signature();
        for (int op = 0; op < sig.op_count(); ++op) {
            int arity = sig.op(op).arity;
            if (arity == 0) {
                int v = a.constant(op);
                if (img[v] >= 0 && img[v] != b.constant(op)) return false;
                continue;
            }
            std::vector<int> args(arity), imgs(arity);
            std::vector<int> assigned;
            for (int e = 0; e < a.size(); ++e)
                if (img[e] >= 0) assigned.push_back(e);
            size_t rows = 1;
            for (int i = 0; i < arity; ++i) rows *= assigned.size();
            for (size_t row = 0; row < rows; ++row) {
                size_t rest = row;
                bool involves = false;
                for (int i = arity - 1; i >= 0; --i) {
                    args[i] = assigned[rest % assigned.size()];
                    rest /= assigned.size();
                    involves |= args[i] == x;
                }
                if (!involves) continue;
                int v = a.apply(op, args);
                if (img[v] < 0) continue;
                for (int i = 0; i < arity; ++i) imgs[i] = img[args[i]];
                if (img[v] != b.apply(op, imgs)) return false;
            }
        }
        return true;
    }
};

bool iso_backtrack(IsoSearch& s, int x, const std::vector<std::vector<int>>& ia,
                   const std::vector<std::vector<int>>& ib) {
    if (x == s.a.size()) return true;
    for (int y = 0; y < s.b.size(); ++y) {
        if (s.pre[y] >= 0 || ia[x] != ib[y]) continue;
        s.img[x] = y;
        s.pre[y] = x;
        if (s.consistent(x) && iso_backtrack(s, x + 1, ia, ib)) return true;
        s.img[x] = -1;
        s.pre[y] = -1;
    }
    return false;
}

}  // namespace

std::optional<ElementMap> find_isomorphism(const Algebra& a, const Algebra& b) {
    if (!(a.signature() == b.signature()) || a.size() != b.size()) return std::nullopt;

    auto ia = iso_invariants(a);
    auto ib = iso_invariants(b);
    {
        auto sa = ia;
        auto sb = ib;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return std::nullopt;
    }

    IsoSearch s{a, b, std::vector<int>(a.size(), -1), std::vector<int>(b.size(), -1)};
    if (!iso_backtrack(s, 0, ia, ib)) return std::nullopt;

    ElementMap m(a.size(), b.size());
    for (int x = 0; x < a.size(); ++x) m.set(x, s.img[x]);
    return m;
}

}  // namespace ua
