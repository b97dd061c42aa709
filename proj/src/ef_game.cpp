#include "ua/ef_game.hpp"

#include <algorithm>

namespace ua {

const char* player_name(Player p) { return p == Player::Exists ? "exists" : "forall"; }

bool is_partial_graph_iso(const Algebra& a, const Algebra& b,
                          std::span<const std::pair<int, int>> pairs) {
    if (!(a.signature() == b.signature())) return false;
    std::vector<int> img(a.size(), -1), pre(b.size(), -1);
    for (auto [x, y] : pairs) {
        if (x < 0 || x >= a.size() || y < 0 || y >= b.size()) return false;
        if (img[x] >= 0 && img[x] != y) return false;  // not a function
        if (pre[y] >= 0 && pre[y] != x) return false;  // not injective
        img[x] = y;
        pre[y] = x;
    }
    std::vector<int> dom;
    for (int x = 0; x < a.size(); ++x)
        if (img[x] >= 0) dom.push_back(x);

    const Signature& sig = a.signature();
    for (int op = 0; op < sig.op_count(); ++op) {
        int arity = sig.op(op).arity;
        if (arity == 0) {
            int v = a.constant(op), w = b.constant(op);
            if (img[v] >= 0 && img[v] != w) return false;
            if (pre[w] >= 0 && pre[w] != v) return false;
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
            for (int i = 0; i < arity; ++i) imgs[i] = img[args[i]];
            int v = a.apply(op, args);
            int w = b.apply(op, imgs);
            if (img[v] >= 0 && img[v] != w) return false;
            if (pre[w] >= 0 && pre[w] != v) return false;
        }
    }
    return true;
}

EfSolver::EfSolver(const Algebra& a, const Algebra& b, EfOptions opt)
    : a_(a), b_(b), opt_(opt) {
    if (!(a.signature() == b.signature())) throw error("ef game: signature mismatch");
}

GamePosition EfSolver::initial_position(int rounds) const {
    GamePosition pos{&a_, &b_, {}, rounds};
    for (int op = 0; op < a_.signature().op_count(); ++op)
        if (a_.signature().op(op).arity == 0)
            pos.chosen.emplace_back(a_.constant(op), b_.constant(op));
    std::sort(pos.chosen.begin(), pos.chosen.end());
    pos.chosen.erase(std::unique(pos.chosen.begin(), pos.chosen.end()), pos.chosen.end());
    return pos;
}

namespace {

std::string position_key(const std::vector<std::pair<int, int>>& chosen, int rounds, int bsize) {
    std::string key;
    key.reserve(chosen.size() * 4 + 4);
    for (auto [x, y] : chosen) {
        int code = x * bsize + y;
        key.push_back(static_cast<char>(code & 0xff));
        key.push_back(static_cast<char>((code >> 8) & 0xff));
    }
    key.push_back('#');
    key.push_back(static_cast<char>(rounds));
    return key;
}

std::vector<std::pair<int, int>> with_pair(const std::vector<std::pair<int, int>>& chosen,
                                           std::pair<int, int> p) {
    auto out = chosen;
    out.insert(std::upper_bound(out.begin(), out.end(), p), p);
    return out;
}

}  // namespace

bool EfSolver::wins(std::vector<std::pair<int, int>>& chosen, int rounds_left) {
    if (rounds_left == 0) return true;  // position is an iso by invariant
    if (++visited_ > opt_.budget) throw budget_error("ef game: node budget exceeded");

    std::string key = position_key(chosen, rounds_left, b_.size());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::vector<char> used_a(a_.size(), 0), used_b(b_.size(), 0);
    for (auto [x, y] : chosen) {
        used_a[x] = 1;
        used_b[y] = 1;
    }

    bool result = true;
    auto survive_move = [&](bool in_a, int u) {
        if (in_a ? used_a[u] : used_b[u]) {
            // The duplicator answers with the existing partner; the position
            // does not change.
            return wins(chosen, rounds_left - 1);
        }
        int other_size = in_a ? b_.size() : a_.size();
        for (int v = 0; v < other_size; ++v) {
            if (in_a ? used_b[v] : used_a[v]) continue;
            std::pair<int, int> p = in_a ? std::make_pair(u, v) : std::make_pair(v, u);
            auto next = with_pair(chosen, p);
            if (!is_partial_graph_iso(a_, b_, next)) continue;
            if (wins(next, rounds_left - 1)) return true;
        }
        return false;
    };

    for (int u = 0; u < a_.size() && result; ++u) result = survive_move(true, u);
    for (int u = 0; u < b_.size() && result; ++u) result = survive_move(false, u);

    memo_[key] = result;
    return result;
}

Player EfSolver::solve(int rounds) {
    GamePosition pos = initial_position(rounds);
    if (!is_partial_graph_iso(a_, b_, pos.chosen)) return Player::Forall;
    auto chosen = pos.chosen;
    return wins(chosen, rounds) ? Player::Exists : Player::Forall;
}

int EfSolver::respond(const std::vector<std::pair<int, int>>& chosen, int rounds_left,
                      bool spoiler_in_a, int spoiler_elem) {
    std::vector<char> used_a(a_.size(), 0), used_b(b_.size(), 0);
    for (auto [x, y] : chosen) {
        used_a[x] = 1;
        used_b[y] = 1;
        if (spoiler_in_a && x == spoiler_elem) return y;
        if (!spoiler_in_a && y == spoiler_elem) return x;
    }
    int other_size = spoiler_in_a ? b_.size() : a_.size();
    for (int v = 0; v < other_size; ++v) {
        if (spoiler_in_a ? used_b[v] : used_a[v]) continue;
        auto p = spoiler_in_a ? std::make_pair(spoiler_elem, v) : std::make_pair(v, spoiler_elem);
        auto next = with_pair(chosen, p);
        if (!is_partial_graph_iso(a_, b_, next)) continue;
        if (wins(next, rounds_left - 1)) return v;
    }
    return -1;
}

bool validate_strategy(const Algebra& a, const Algebra& b, int rounds,
                       const DuplicatorStrategy& strategy, long long budget) {
    EfSolver seed(a, b);  // reused only for the constant-seeded start position
    GamePosition start = seed.initial_position(rounds);
    if (!is_partial_graph_iso(a, b, start.chosen)) return false;

    long long visited = 0;
    std::function<bool(std::vector<std::pair<int, int>>&, int)> play =
        [&](std::vector<std::pair<int, int>>& chosen, int rounds_left) -> bool {
        if (rounds_left == 0) return true;
        if (++visited > budget) throw budget_error("strategy validation: budget exceeded");

        std::vector<char> used_a(a.size(), 0), used_b(b.size(), 0);
        for (auto [x, y] : chosen) {
            used_a[x] = 1;
            used_b[y] = 1;
        }
        auto try_move = [&](bool in_a, int u) {
            if (in_a ? used_a[u] : used_b[u]) return play(chosen, rounds_left - 1);
            int v = strategy(chosen, in_a, u);
            int other_size = in_a ? b.size() : a.size();
            if (v < 0 || v >= other_size) return false;
            if (in_a ? used_b[v] : used_a[v]) return false;
            auto next = with_pair(chosen, in_a ? std::make_pair(u, v) : std::make_pair(v, u));
            if (!is_partial_graph_iso(a, b, next)) return false;
            return play(next, rounds_left - 1);
        };
        for (int u = 0; u < a.size(); ++u)
            if (!try_move(true, u)) return false;
        for (int u = 0; u < b.size(); ++u)
            if (!try_move(false, u)) return false;
        return true;
    };
    auto chosen = start.chosen;
    return play(chosen, rounds);
}

}  // namespace ua
