#pragma once

// Test-only oracles, kept independent of the library's implementation paths:
// a partition-filter congruence oracle, a no-shortcut formula evaluator, and
// small generators shared across the suites.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "ua/algebra.hpp"
#include "ua/congruence.hpp"
#include "ua/formula.hpp"
#include "ua/gallery.hpp"
#include "ua/malcev.hpp"

namespace ua::testing {

/// All partitions of {0..n-1} as representative arrays (restricted growth
/// strings).  Bell(6) = 203, so this stays tiny.
inline std::vector<std::vector<int>> all_partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> block(n, 0);
    auto rec = [&](auto&& self, int i, int max_used) -> void {
        if (i == n) {
            // Convert block ids to least-member representatives.
            std::vector<int> rep(n);
            std::map<int, int> first;
            for (int j = 0; j < n; ++j) {
                auto [it, fresh] = first.emplace(block[j], j);
                rep[j] = it->second;
            }
            out.push_back(std::move(rep));
            return;
        }
        for (int b = 0; b <= max_used + 1; ++b) {
            block[i] = b;
            self(self, i + 1, std::max(max_used, b));
        }
    };
    rec(rec, 1, 0);  // element 0 always sits in block 0
    return out;
}

/// Every congruence of A, by filtering all partitions for compatibility.
inline std::vector<Congruence> oracle_all_congruences(const Algebra& a) {
    std::vector<Congruence> out;
    for (const auto& rep : all_partitions(a.size()))
        if (auto c = Congruence::from_partition_checked(a, rep)) out.push_back(*c);
    return out;
}

/// Least congruence containing the pairs: the meet of every congruence that
/// contains them.
inline Congruence oracle_generated_congruence(const Algebra& a,
                                              const std::vector<std::pair<int, int>>& pairs) {
    std::vector<Congruence> candidates;
    for (const auto& c : oracle_all_congruences(a)) {
        bool contains = true;
        for (auto [x, y] : pairs) contains &= c.related(x, y);
        if (contains) candidates.push_back(c);
    }
    Congruence least = Congruence::nabla(a);
    for (const auto& c : candidates) least = meet(least, c);
    return least;
}

/// Independent formula evaluator: no short-circuiting, no memoization, own
/// environment type.
inline int naive_eval_term(const Algebra& a, const TermPtr& t,
                           const std::map<std::string, int>& env) {
    const auto& sig = a.signature();
    if (t->is_leaf()) {
        int op = sig.index_of(t->head());
        if (op >= 0) return a.constant(op);
        return env.at(t->head());
    }
    std::vector<int> args;
    for (const auto& c : t->children()) args.push_back(naive_eval_term(a, c, env));
    return a.apply(sig.index_of(t->head()), args);
}

inline bool naive_eval_formula(const Algebra& a, const FormulaPtr& f,
                               std::map<std::string, int> env) {
    switch (f->kind()) {
        case Formula::Kind::Eq:
            return naive_eval_term(a, f->lhs(), env) == naive_eval_term(a, f->rhs(), env);
        case Formula::Kind::Not:
            return !naive_eval_formula(a, f->parts()[0], env);
        case Formula::Kind::And: {
            bool r = true;
            for (const auto& p : f->parts()) r &= naive_eval_formula(a, p, env);
            return r;
        }
        case Formula::Kind::Or: {
            bool r = false;
            for (const auto& p : f->parts()) r |= naive_eval_formula(a, p, env);
            return r;
        }
        case Formula::Kind::Implies: {
            bool l = naive_eval_formula(a, f->parts()[0], env);
            bool r = naive_eval_formula(a, f->parts()[1], env);
            return !l || r;
        }
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: {
            bool acc = f->kind() == Formula::Kind::Forall;
            for (int v = 0; v < a.size(); ++v) {
                env[f->var()] = v;
                bool r = naive_eval_formula(a, f->body(), env);
                acc = f->kind() == Formula::Kind::Forall ? (acc && r) : (acc || r);
            }
            return acc;
        }
    }
    return false;
}

/// Seeded random formula over the signature with variables from `vars`.
struct RandomFormulas {
    std::mt19937 rng;
    const Signature& sig;
    std::vector<std::string> vars;

    RandomFormulas(unsigned seed, const Signature& sig_, std::vector<std::string> vars_)
        : rng(seed), sig(sig_), vars(std::move(vars_)) {}

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

    TermPtr term(int depth) {
        if (depth == 0 || pick(3) == 0) {
            int choice = pick(static_cast<int>(vars.size()) + 1);
            if (choice < static_cast<int>(vars.size())) return Term::leaf(vars[choice]);
            for (int tries = 0; tries < 8; ++tries) {
                int op = pick(sig.op_count());
                if (sig.op(op).arity == 0) return Term::leaf(sig.op(op).name);
            }
            return Term::leaf(vars[pick(static_cast<int>(vars.size()))]);
        }
        int op = pick(sig.op_count());
        while (sig.op(op).arity == 0) op = pick(sig.op_count());
        std::vector<TermPtr> args;
        for (int i = 0; i < sig.op(op).arity; ++i) args.push_back(term(depth - 1));
        return Term::app(sig.op(op).name, std::move(args));
    }

    FormulaPtr formula(int depth) {
        if (depth == 0) return Formula::eq(term(1), term(1));
        switch (pick(7)) {
            case 0: return Formula::eq(term(2), term(2));
            case 1: return Formula::negation(formula(depth - 1));
            case 2: return Formula::conj({formula(depth - 1), formula(depth - 1)});
            case 3: return Formula::disj({formula(depth - 1), formula(depth - 1)});
            case 4: return Formula::implies(formula(depth - 1), formula(depth - 1));
            case 5: return Formula::forall(vars[pick(static_cast<int>(vars.size()))],
                                           formula(depth - 1));
            default: return Formula::exists(vars[pick(static_cast<int>(vars.size()))],
                                            formula(depth - 1));
        }
    }
};

/// One-element algebra over the given signature.
inline Algebra one_element(const Signature& sig) {
    std::vector<std::vector<int>> tables;
    for (int op = 0; op < sig.op_count(); ++op) {
        size_t rows = 1;
        for (int i = 0; i < sig.op(op).arity; ++i) rows *= 1;
        tables.push_back(std::vector<int>(rows, 0));
    }
    return Algebra(sig, 1, std::move(tables), "T1");
}

/// Family with every non-empty word mapped to x; satisfies the arity
/// discipline but fails the chain identities on any two-element algebra.
inline MalcevFamily constant_x_family() {
    MalcevFamily fam;
    fam.N = 2;
    fam.n = 1;
    fam.l = 1;
    fam.zeroone = ZeroOneSpec::constants01();
    fam.s = {Term::leaf("x")};
    fam.t = {Term::leaf("x")};
    for (const auto& w : words_up_to(fam.N, fam.N)) {
        fam.L[w] = Term::leaf("x");
        fam.R[w] = w.empty() ? Term::leaf("y") : Term::leaf("x");
    }
    return fam;
}

/// Structurally sensible family used where only well-formedness matters.
inline MalcevFamily sample_family() {
    MalcevFamily fam;
    fam.N = 2;
    fam.n = 1;
    fam.l = 1;
    fam.zeroone = ZeroOneSpec::constants01();
    fam.s = {parse_term("+(x,z)")};
    fam.t = {parse_term("*(y,z)")};
    for (const auto& w : words_up_to(fam.N, fam.N)) {
        if (w.empty()) {
            fam.L[w] = Term::leaf("x");
            fam.R[w] = Term::leaf("y");
        } else if (w.size() == 1) {
            fam.L[w] = parse_term("+(x,z)");
            fam.R[w] = parse_term("+(y,z)");
        } else {
            fam.L[w] = parse_term("*(x1,y1)");
            fam.R[w] = parse_term("*(x1,y1)");
        }
    }
    return fam;
}

/// Level-free variant (n = 0) over the slots x, y, z only.
inline MalcevFamily sample_family_n0() {
    MalcevFamily fam;
    fam.N = 2;
    fam.n = 0;
    fam.l = 1;
    fam.zeroone = ZeroOneSpec::constants01();
    for (const auto& w : words_up_to(fam.N, fam.N)) {
        if (w.empty()) {
            fam.L[w] = Term::leaf("x");
            fam.R[w] = Term::leaf("y");
        } else {
            fam.L[w] = parse_term("+(x,z)");
            fam.R[w] = parse_term("+(x,z)");
        }
    }
    return fam;
}

}  // namespace ua::testing
