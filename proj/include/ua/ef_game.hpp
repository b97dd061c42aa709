#pragma once

#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "ua/algebra.hpp"

namespace ua {

/// Operation-graph partial isomorphism: the pairs form an injective partial
/// function m, and for every operation f, all arguments and candidate result
/// drawn from the domain/range, f(a...) = b holds iff f(m(a)...) = m(b).
/// Constants participate through their 0-ary tables.
bool is_partial_graph_iso(const Algebra& a, const Algebra& b,
                          std::span<const std::pair<int, int>> pairs);

struct GamePosition {
    const Algebra* a = nullptr;
    const Algebra* b = nullptr;
    std::vector<std::pair<int, int>> chosen;  // kept sorted
    int rounds_left = 0;
};

enum class Player { Exists, Forall };
const char* player_name(Player p);

struct EfOptions {
    long long budget = 200'000'000;  // solver node visits
};

/// Back-and-forth game solver by full game-tree search with memoization on
/// (chosen pairs, rounds).  The initial position contains every constant
/// pair; the duplicator survives a round only if the extended pair set stays
/// a partial graph isomorphism.
class EfSolver {
public:
    EfSolver(const Algebra& a, const Algebra& b, EfOptions opt = {});

    Player solve(int rounds);
    long long positions_visited() const { return visited_; }

    /// Winning response for the duplicator in a winning position, or -1 when
    /// the position is lost; spoiler_in_a tells which algebra the spoiler
    /// chose from.  Used to extract a strategy certificate from the memo.
    int respond(const std::vector<std::pair<int, int>>& chosen, int rounds_left,
                bool spoiler_in_a, int spoiler_elem);

    GamePosition initial_position(int rounds) const;

private:
    bool wins(std::vector<std::pair<int, int>>& chosen, int rounds_left);

    const Algebra& a_;
    const Algebra& b_;
    EfOptions opt_;
    long long visited_ = 0;
    std::unordered_map<std::string, bool> memo_;
};

/// Deterministic duplicator strategy: given the chosen pairs and the
/// spoiler's move, produce the response element in the other algebra.
using DuplicatorStrategy =
    std::function<int(const std::vector<std::pair<int, int>>& chosen, bool spoiler_in_a,
                      int spoiler_elem)>;

/// Plays the strategy against every spoiler sequence of the given length;
/// true when the duplicator survives all of them.
bool validate_strategy(const Algebra& a, const Algebra& b, int rounds,
                       const DuplicatorStrategy& strategy, long long budget = 50'000'000);

}  // namespace ua
