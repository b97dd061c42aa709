#include "ua/congruence.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace ua {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);  // keep the least element as root
        parent[b] = a;
        return true;
    }
};

std::vector<int> normalize_reps(std::vector<int> rep) {
    // Make each block's id its least member.
    int n = static_cast<int>(rep.size());
    std::vector<int> least(n, -1);
    for (int a = 0; a < n; ++a) {
        int r = rep[a];
        if (least[r] < 0) least[r] = a;
    }
    for (int a = 0; a < n; ++a) rep[a] = least[rep[a]];
    return rep;
}

std::vector<int> uf_to_reps(UnionFind& uf) {
    std::vector<int> rep(uf.parent.size());
    for (size_t i = 0; i < uf.parent.size(); ++i) rep[i] = uf.find(static_cast<int>(i));
    return normalize_reps(std::move(rep));
}

// One-coordinate compatibility: translations by unary polynomials preserve
// the partition iff it is a congruence.
bool compatible(const Algebra& alg, const std::vector<int>& rep) {
    int n = alg.size();
    const Signature& sig = alg.signature();
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (rep[a] != rep[b]) continue;
            for (int op = 0; op < sig.op_count(); ++op) {
                int arity = sig.op(op).arity;
                if (arity == 0) continue;
                std::vector<int> args(arity, 0);
                for (int pos = 0; pos < arity; ++pos) {
                    size_t rows = 1;
                    for (int i = 0; i < arity - 1; ++i) rows *= static_cast<size_t>(n);
                    for (size_t row = 0; row < rows; ++row) {
                        size_t rest = row;
                        for (int i = arity - 1; i >= 0; --i) {
                            if (i == pos) continue;
                            args[i] = static_cast<int>(rest % n);
                            rest /= n;
                        }
                        args[pos] = a;
                        int u = alg.apply(op, args);
                        args[pos] = b;
                        int v = alg.apply(op, args);
                        if (rep[u] != rep[v]) return false;
                    }
                }
            }
        }
    }
    return true;
}

}  // namespace

Congruence Congruence::delta(const Algebra& a) {
    std::vector<int> rep(a.size());
    for (int i = 0; i < a.size(); ++i) rep[i] = i;
    return Congruence(&a, std::move(rep));
}

Congruence Congruence::nabla(const Algebra& a) {
    return Congruence(&a, std::vector<int>(a.size(), 0));
}

Congruence Congruence::from_partition(const Algebra& a, const std::vector<int>& rep) {
    auto c = from_partition_checked(a, rep);
    if (!c) throw error("partition is not compatible with the operations");
    return *c;
}

std::optional<Congruence> Congruence::from_partition_checked(const Algebra& a,
                                                             const std::vector<int>& rep) {
    if (static_cast<int>(rep.size()) != a.size())
        throw error("partition has wrong length");
    // Interpret equal ids as equal blocks, whatever the ids are.
    std::map<int, int> first;
    std::vector<int> norm(rep.size());
    for (int i = 0; i < static_cast<int>(rep.size()); ++i) {
        auto [it, fresh] = first.emplace(rep[i], i);
        norm[i] = it->second;
    }
    if (!compatible(a, norm)) return std::nullopt;
    return Congruence(&a, std::move(norm));
}

int Congruence::block_count() const {
    int c = 0;
    for (int i = 0; i < size(); ++i)
        if (rep_[i] == i) ++c;
    return c;
}

std::vector<std::vector<int>> Congruence::blocks() const {
    std::map<int, std::vector<int>> by_rep;
    for (int i = 0; i < size(); ++i) by_rep[rep_[i]].push_back(i);
    std::vector<std::vector<int>> out;
    for (auto& [r, blk] : by_rep) out.push_back(std::move(blk));
    return out;
}

std::vector<int> Congruence::block_of(int a) const {
    std::vector<int> blk;
    for (int i = 0; i < size(); ++i)
        if (rep_[i] == rep_[a]) blk.push_back(i);
    return blk;
}

bool Congruence::subset_of(const Congruence& other) const {
    for (int a = 0; a < size(); ++a)
        if (other.rep_[a] != other.rep_[rep_[a]]) return false;
    return true;
}

bool Congruence::is_delta() const {
    for (int i = 0; i < size(); ++i)
        if (rep_[i] != i) return false;
    return true;
}

bool Congruence::is_nabla() const {
    for (int i = 0; i < size(); ++i)
        if (rep_[i] != 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Generated congruences, with optional provenance for chain extraction.

namespace {

struct TraceEdge {
    int u, v;
    bool is_generator;
    int gen_index = -1;                // generators[gen_index] == (u,v)
    int op = -1, pos = -1;             // one-step unary polynomial
    std::vector<int> fixed;            // remaining arguments, in position order
    int pa = -1, pb = -1;              // parent pair: u = p(pa), v = p(pb)
};

struct Closure {
    const Algebra& alg;
    UnionFind uf;
    std::vector<TraceEdge> edges;
    std::vector<std::vector<std::pair<int, int>>> adj;  // node -> (neighbor, edge)
    std::deque<int> work;
    bool traced;

    Closure(const Algebra& a, bool traced_)
        : alg(a), uf(a.size()), adj(a.size()), traced(traced_) {}

    void merge(TraceEdge e) {
        if (!uf.unite(e.u, e.v)) return;
        if (traced) {
            int id = static_cast<int>(edges.size());
            adj[e.u].emplace_back(e.v, id);
            adj[e.v].emplace_back(e.u, id);
            edges.push_back(std::move(e));
            work.push_back(id);
        } else {
            edges.push_back(TraceEdge{e.u, e.v, false, -1, -1, -1, {}, -1, -1});
            work.push_back(static_cast<int>(edges.size()) - 1);
        }
    }

    void run(std::span<const std::pair<int, int>> pairs) {
        for (int k = 0; k < static_cast<int>(pairs.size()); ++k) {
            auto [a, b] = pairs[k];
            if (a < 0 || a >= alg.size() || b < 0 || b >= alg.size())
                throw error("generated congruence: pair out of range");
            merge(TraceEdge{a, b, true, k});
        }
        const Signature& sig = alg.signature();
        int n = alg.size();
        while (!work.empty()) {
            int id = work.front();
            work.pop_front();
            int a = edges[id].u, b = edges[id].v;
            for (int op = 0; op < sig.op_count(); ++op) {
                int arity = sig.op(op).arity;
                if (arity == 0) continue;
                std::vector<int> args(arity);
                for (int pos = 0; pos < arity; ++pos) {
                    size_t rows = 1;
                    for (int i = 0; i < arity - 1; ++i) rows *= static_cast<size_t>(n);
                    for (size_t row = 0; row < rows; ++row) {
                        size_t rest = row;
                        std::vector<int> fixed;
                        if (traced) fixed.reserve(arity - 1);
                        for (int i = arity - 1; i >= 0; --i) {
                            if (i == pos) continue;
                            args[i] = static_cast<int>(rest % n);
                            rest /= n;
                        }
                        if (traced)
                            for (int i = 0; i < arity; ++i)
                                if (i != pos) fixed.push_back(args[i]);
                        args[pos] = a;
                        int u = alg.apply(op, args);
                        args[pos] = b;
                        int v = alg.apply(op, args);
                        if (uf.find(u) == uf.find(v)) continue;
                        merge(TraceEdge{u, v, false, -1, op, pos, std::move(fixed), a, b});
                    }
                }
            }
        }
    }
};

}  // namespace

Congruence generated_congruence(const Algebra& a,
                                std::span<const std::pair<int, int>> pairs) {
    Closure c(a, false);
    c.run(pairs);
    return Congruence::from_partition(a, uf_to_reps(c.uf));
}

Congruence join(const Congruence& t, const Congruence& u) {
    if (t.parent() != u.parent()) throw error("join: parent algebra mismatch");
    UnionFind uf(t.size());
    for (int a = 0; a < t.size(); ++a) {
        uf.unite(a, t.rep(a));
        uf.unite(a, u.rep(a));
    }
    // Transitive closure of the union of two congruences is a congruence.
    return Congruence::from_partition(*t.parent(), uf_to_reps(uf));
}

Congruence meet(const Congruence& t, const Congruence& u) {
    if (t.parent() != u.parent()) throw error("meet: parent algebra mismatch");
    std::map<std::pair<int, int>, int> first;
    std::vector<int> rep(t.size());
    for (int a = 0; a < t.size(); ++a) {
        auto [it, fresh] = first.emplace(std::make_pair(t.rep(a), u.rep(a)), a);
        rep[a] = it->second;
    }
    return Congruence::from_partition(*t.parent(), rep);
}

Relation Relation::of(const Congruence& c) {
    Relation r(c.size());
    for (int a = 0; a < c.size(); ++a)
        for (int b = 0; b < c.size(); ++b)
            if (c.related(a, b)) r.set(a, b);
    return r;
}

Relation Relation::universal(int n) {
    Relation r(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) r.set(a, b);
    return r;
}

Relation Relation::compose(const Relation& other) const {
    if (n_ != other.n_) throw error("compose: size mismatch");
    Relation r(n_);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) {
            if (!at(a, b)) continue;
            for (int c = 0; c < n_; ++c)
                if (other.at(b, c)) r.set(a, c);
        }
    return r;
}

bool Relation::is_universal() const {
    return std::all_of(bits_.begin(), bits_.end(), [](char c) { return c != 0; });
}

bool Relation::subset_of(const Relation& other) const {
    if (n_ != other.n_) return false;
    for (size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i] && !other.bits_[i]) return false;
    return true;
}

std::optional<Congruence> Relation::as_congruence(const Algebra& a) const {
    if (a.size() != n_) return std::nullopt;
    for (int x = 0; x < n_; ++x) {
        if (!at(x, x)) return std::nullopt;
        for (int y = 0; y < n_; ++y) {
            if (at(x, y) != at(y, x)) return std::nullopt;
            if (!at(x, y)) continue;
            for (int z = 0; z < n_; ++z)
                if (at(y, z) && !at(x, z)) return std::nullopt;
        }
    }
    UnionFind uf(n_);
    for (int x = 0; x < n_; ++x)
        for (int y = x + 1; y < n_; ++y)
            if (at(x, y)) uf.unite(x, y);
    std::vector<int> rep(n_);
    for (int x = 0; x < n_; ++x) rep[x] = uf.find(x);
    return Congruence::from_partition_checked(a, rep);
}

Relation rel_product(const Congruence& t, const Congruence& u, int fold) {
    if (t.parent() != u.parent()) throw error("rel_product: parent algebra mismatch");
    if (fold < 1) throw error("rel_product: fold must be >= 1");
    Relation once = Relation::of(t).compose(Relation::of(u));
    Relation acc = once;
    for (int i = 1; i < fold; ++i) acc = acc.compose(once);
    return acc;
}

std::vector<Congruence> all_congruences(const Algebra& a, const CongruenceOptions& opt) {
    if (a.size() > opt.size_guard)
        throw error("all_congruences: size " + std::to_string(a.size()) +
                    " exceeds the guard (" + std::to_string(opt.size_guard) + ")");

    std::vector<Congruence> principals;
    std::set<std::vector<int>> seen;
    for (int x = 0; x < a.size(); ++x)
        for (int y = x + 1; y < a.size(); ++y) {
            std::pair<int, int> p{x, y};
            Congruence c = generated_congruence(a, std::span(&p, 1));
            if (seen.insert(c.rep_array()).second) principals.push_back(c);
        }

    std::vector<Congruence> result{Congruence::delta(a)};
    seen.insert(result[0].rep_array());
    std::deque<Congruence> queue;
    for (const auto& p : principals) {
        result.push_back(p);
        queue.push_back(p);
    }
    while (!queue.empty()) {
        Congruence c = queue.front();
        queue.pop_front();
        for (const auto& p : principals) {
            Congruence j = join(c, p);
            if (seen.insert(j.rep_array()).second) {
                result.push_back(j);
                queue.push_back(j);
            }
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

// ---------------------------------------------------------------------------
// Chain extraction.

namespace {

std::string param_name(int value) { return "p" + std::to_string(value); }

struct WalkStep {
    TermPtr t;
    bool fwd;  // left->right when true
};

struct ChainBuilder {
    const Closure& cl;
    std::map<std::string, int> params;

    TermPtr param(int value) {
        std::string name = param_name(value);
        params[name] = value;
        return Term::leaf(name);
    }

    // Wraps a term into the one-step polynomial of a trace edge.
    TermPtr lift(const TraceEdge& e, const TermPtr& inner) {
        const Signature& sig = cl.alg.signature();
        int arity = sig.op(e.op).arity;
        std::vector<TermPtr> args(arity);
        int fi = 0;
        for (int i = 0; i < arity; ++i)
            args[i] = (i == e.pos) ? inner : param(e.fixed[fi++]);
        return Term::app(sig.op(e.op).name, std::move(args));
    }

    // Forest path between two related elements, as (edge id, traversed
    // forward) pairs.
    std::vector<std::pair<int, bool>> forest_path(int from, int to) const {
        if (from == to) return {};
        std::vector<int> prev_edge(cl.alg.size(), -1);
        std::vector<int> prev_node(cl.alg.size(), -1);
        std::deque<int> q{from};
        std::vector<char> seen(cl.alg.size(), 0);
        seen[from] = 1;
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            if (x == to) break;
            for (auto [y, e] : cl.adj[x]) {
                if (seen[y]) continue;
                seen[y] = 1;
                prev_edge[y] = e;
                prev_node[y] = x;
                q.push_back(y);
            }
        }
        if (!seen[to]) throw error("chain: elements are not connected");
        std::vector<std::pair<int, bool>> path;
        for (int x = to; x != from; x = prev_node[x]) {
            int e = prev_edge[x];
            path.emplace_back(e, cl.edges[e].v == x);  // forward if we arrived at v
        }
        std::reverse(path.begin(), path.end());
        return path;
    }

    // Walk from a to b through the proof forest, expanded down to generator
    // steps.  Each step is a term over g-slots and parameters.
    std::vector<WalkStep> walk(int from, int to) {
        std::vector<WalkStep> out;
        for (auto [eid, fwd] : forest_path(from, to)) {
            const TraceEdge& e = cl.edges[eid];
            std::vector<WalkStep> part;
            if (e.is_generator) {
                part.push_back({Term::leaf("g" + std::to_string(e.gen_index + 1)), true});
            } else {
                part = walk(e.pa, e.pb);
                for (auto& s : part) s.t = lift(e, s.t);
            }
            if (!fwd) {
                std::reverse(part.begin(), part.end());
                for (auto& s : part) s.fwd = !s.fwd;
            }
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
};

}  // namespace

MalcevChain malcev_chain(const Algebra& a, std::pair<int, int> target,
                         std::span<const std::pair<int, int>> generators) {
    Closure cl(a, true);
    cl.run(generators);
    if (cl.uf.find(target.first) != cl.uf.find(target.second))
        throw error("malcev_chain: target pair is not in the generated congruence");

    MalcevChain chain;
    chain.generators.assign(generators.begin(), generators.end());
    chain.from = target.first;
    chain.to = target.second;
    if (target.first == target.second) return chain;  // degenerate empty chain

    ChainBuilder builder{cl};
    auto raw = builder.walk(target.first, target.second);

    // Convert the walk into the odd/even alternation: step i moves left->right
    // when i is odd and right->left when i is even.  Constant stutter steps
    // are inserted wherever the walk's direction disagrees, and appended at
    // the end if needed to make the count odd.
    Env left, right;
    for (size_t i = 0; i < chain.generators.size(); ++i) {
        std::string g = "g" + std::to_string(i + 1);
        left.bind(g, chain.generators[i].first);
        right.bind(g, chain.generators[i].second);
    }
    auto value_at = [&](const TermPtr& t, bool at_right) {
        Env env = at_right ? right : left;
        for (const auto& [name, val] : builder.params) env.bind(name, val);
        return eval_term(a, t, env);
    };

    int here = target.first;
    for (const auto& s : raw) {
        bool odd_next = chain.steps.size() % 2 == 0;
        if (s.fwd != odd_next) {
            chain.steps.push_back(builder.param(here));  // stutter
            odd_next = !odd_next;
        }
        chain.steps.push_back(s.t);
        here = value_at(s.t, s.fwd);
    }
    if (chain.steps.size() % 2 == 0) chain.steps.push_back(builder.param(chain.to));
    chain.params = builder.params;
    return chain;
}

bool replay_chain(const Algebra& a, const MalcevChain& chain) {
    if (chain.steps.empty()) return chain.from == chain.to;
    if (chain.steps.size() % 2 == 0) return false;  // k must be odd

    Env left, right;
    for (size_t i = 0; i < chain.generators.size(); ++i) {
        std::string g = "g" + std::to_string(i + 1);
        left.bind(g, chain.generators[i].first);
        right.bind(g, chain.generators[i].second);
    }
    for (const auto& [name, val] : chain.params) {
        left.bind(name, val);
        right.bind(name, val);
    }

    auto at = [&](size_t i, bool r) { return eval_term(a, chain.steps[i], r ? right : left); };

    if (at(0, false) != chain.from) return false;
    for (size_t i = 0; i + 1 < chain.steps.size(); ++i) {
        bool odd = i % 2 == 0;  // 1-based index i+1 is odd
        if (odd) {
            if (at(i, true) != at(i + 1, true)) return false;
        } else {
            if (at(i, false) != at(i + 1, false)) return false;
        }
    }
    return at(chain.steps.size() - 1, true) == chain.to;
}

}  // namespace ua
