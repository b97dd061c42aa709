#include "ua/factorization.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace ua {

std::vector<FactorPair> factor_pairs(const Algebra& a, const CongruenceOptions& opt) {
    auto con = all_congruences(a, opt);
    int n = a.size();

    // Row masks: bit b of rows[c][x] says x and b are related under con[c].
    // The lattice can run to thousands of congruences on the join-free
    // products, so the pair scan works on masks and only materializes the
    // survivors.
    std::vector<std::vector<uint64_t>> rows(con.size(), std::vector<uint64_t>(n, 0));
    for (size_t c = 0; c < con.size(); ++c)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (con[c].related(x, y)) rows[c][x] |= uint64_t{1} << y;

    const uint64_t full = n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
    std::vector<FactorPair> out;
    for (size_t i = 0; i < con.size(); ++i)
        for (size_t j = 0; j < con.size(); ++j) {
            bool ok = true;
            for (int x = 0; x < n && ok; ++x)
                ok = (rows[i][x] & rows[j][x]) == (uint64_t{1} << x);  // meet is trivial
            for (int x = 0; x < n && ok; ++x) {
                uint64_t reach = 0;
                uint64_t mid = rows[i][x];
                while (mid) {
                    int b = std::countr_zero(mid);
                    mid &= mid - 1;
                    reach |= rows[j][b];
                }
                ok = reach == full;  // one-fold composition is total
            }
            if (ok) out.push_back(FactorPair{con[i], con[j]});
        }
    return out;
}

Quotient quotient(const Algebra& a, const Congruence& theta) {
    std::vector<int> reps;
    for (int x = 0; x < a.size(); ++x)
        if (theta.rep(x) == x) reps.push_back(x);

    std::vector<int> cls(a.size());
    std::map<int, int> index;
    for (int i = 0; i < static_cast<int>(reps.size()); ++i) index[reps[i]] = i;
    for (int x = 0; x < a.size(); ++x) cls[x] = index[theta.rep(x)];

    int n = static_cast<int>(reps.size());
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
                args[i] = reps[rest % n];
                rest /= n;
            }
            tables[op][row] = cls[a.apply(op, args)];
        }
    }

    Quotient q{Algebra(sig, n, std::move(tables),
                       a.name().empty() ? "quot" : a.name() + "/~"),
               std::move(cls), std::move(reps)};
    std::vector<std::string> names(n);
    for (int i = 0; i < n; ++i) names[i] = "[" + a.element_name(q.representative[i]) + "]";
    q.algebra.set_element_names(std::move(names));
    return q;
}

std::vector<DecompositionReport> decompose(const Algebra& a, const CongruenceOptions& opt) {
    std::vector<DecompositionReport> out;
    std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
    for (auto& p : factor_pairs(a, opt)) {
        if (p.is_trivial()) continue;
        // Report each pair once, up to swapping theta and theta*.
        auto key = std::minmax(p.theta.rep_array(), p.theta_star.rep_array());
        if (!seen.insert(key).second) continue;

        DecompositionReport rep{p, quotient(a, p.theta), quotient(a, p.theta_star),
                                ElementMap(), false};
        Product prod = direct_product(rep.left.algebra, rep.right.algebra);
        ElementMap m(a.size(), prod.algebra.size());
        for (int x = 0; x < a.size(); ++x) {
            int comps[2] = {rep.left.class_of[x], rep.right.class_of[x]};
            m.set(x, prod.encode(comps));
        }
        rep.reconstruction_ok =
            m.is_bijective() && check_homomorphism(a, prod.algebra, m, true);
        rep.reconstruction = std::move(m);
        out.push_back(std::move(rep));
    }
    return out;
}

bool is_directly_indecomposable(const Algebra& a, const CongruenceOptions& opt) {
    if (a.size() < 2) return false;
    for (const auto& p : factor_pairs(a, opt))
        if (!p.is_trivial()) return false;
    return true;
}

namespace {

// Componentwise solutions of 0 theta e theta* 1 (or any two target tuples).
std::vector<std::vector<int>> solve_between(const FactorPair& p,
                                            const std::vector<int>& lo,
                                            const std::vector<int>& hi) {
    std::vector<std::vector<int>> per_coord;
    for (size_t i = 0; i < lo.size(); ++i) {
        std::vector<int> sols;
        for (int e = 0; e < p.theta.size(); ++e)
            if (p.theta.related(lo[i], e) && p.theta_star.related(e, hi[i]))
                sols.push_back(e);
        if (sols.empty()) return {};
        per_coord.push_back(std::move(sols));
    }
    // Cartesian product over coordinates.
    std::vector<std::vector<int>> tuples{{}};
    for (const auto& sols : per_coord) {
        std::vector<std::vector<int>> next;
        for (const auto& t : tuples)
            for (int e : sols) {
                auto t2 = t;
                t2.push_back(e);
                next.push_back(std::move(t2));
            }
        tuples = std::move(next);
    }
    return tuples;
}

}  // namespace

CentralReport central_elements(const Algebra& a, const ZeroOneSpec& z,
                               const CongruenceOptions& opt) {
    z.validate(a.signature());
    auto z0 = z.zero_values(a);
    auto z1 = z.one_values(a);

    CentralReport report;
    std::set<std::vector<int>> values;
    for (auto& p : factor_pairs(a, opt)) {
        auto sols = solve_between(p, z0, z1);
        if (sols.empty()) {
            report.unsolved.push_back(p);
            continue;
        }
        for (auto& e : sols) {
            values.insert(e);
            report.elements.push_back(CentralElement{std::move(e), p});
        }
    }
    report.distinct.assign(values.begin(), values.end());
    return report;
}

std::vector<ComplementaryPair> complementary_pairs(const Algebra& a, const ZeroOneSpec& z,
                                                   const CongruenceOptions& opt) {
    z.validate(a.signature());
    auto z0 = z.zero_values(a);
    auto z1 = z.one_values(a);

    std::vector<ComplementaryPair> out;
    for (auto& p : factor_pairs(a, opt)) {
        auto es = solve_between(p, z0, z1);
        auto fs = solve_between(p, z1, z0);
        for (const auto& e : es)
            for (const auto& f : fs) out.push_back(ComplementaryPair{e, f, p});
    }
    return out;
}

BfcReport check_bfc(const Algebra& a, const CongruenceOptions& opt) {
    std::set<std::vector<int>> fc_set;
    std::vector<Congruence> fc;
    for (const auto& p : factor_pairs(a, opt))
        if (fc_set.insert(p.theta.rep_array()).second) fc.push_back(p.theta);

    BfcReport report;
    report.factor_congruence_count = static_cast<int>(fc.size());

    auto member = [&](const Congruence& c) { return fc_set.count(c.rep_array()) > 0; };
    auto describe = [&](const char* what, size_t i, size_t j, size_t k = SIZE_MAX) {
        std::string s = what;
        s += " with factor congruences #" + std::to_string(i) + ",#" + std::to_string(j);
        if (k != SIZE_MAX) s += ",#" + std::to_string(k);
        return s;
    };

    for (size_t i = 0; i < fc.size(); ++i)
        for (size_t j = 0; j < fc.size(); ++j) {
            if (!member(meet(fc[i], fc[j]))) {
                report.failure = describe("meet escapes the set", i, j);
                return report;
            }
            if (!member(join(fc[i], fc[j]))) {
                report.failure = describe("join escapes the set", i, j);
                return report;
            }
        }
    for (size_t i = 0; i < fc.size(); ++i)
        for (size_t j = 0; j < fc.size(); ++j)
            for (size_t k = 0; k < fc.size(); ++k) {
                Congruence lhs = meet(fc[i], join(fc[j], fc[k]));
                Congruence rhs = join(meet(fc[i], fc[j]), meet(fc[i], fc[k]));
                if (!(lhs == rhs)) {
                    report.failure = describe("distributivity fails", i, j, k);
                    return report;
                }
            }
    report.holds = true;
    return report;
}

DeterminingReport check_determining_property(const Algebra& a, const ZeroOneSpec& z,
                                             const CongruenceOptions& opt) {
    z.validate(a.signature());
    auto z0 = z.zero_values(a);
    auto z1 = z.one_values(a);
    auto pairs = factor_pairs(a, opt);

    DeterminingReport report;
    report.pair_count = static_cast<int>(pairs.size());

    std::map<std::vector<int>, int> e_of_pair;          // e value -> #pairs producing it
    std::map<std::vector<std::vector<int>>, int> ef_of_pair;
    std::set<std::vector<int>> e_values;
    std::set<std::vector<std::vector<int>>> ef_values;

    for (const auto& p : pairs) {
        auto es = solve_between(p, z0, z1);
        if (es.size() != 1) {
            report.unique_solutions = false;
            if (report.failure.empty())
                report.failure = "pair with " + std::to_string(es.size()) + " solutions for e";
        }
        for (const auto& e : es) {
            e_values.insert(e);
            e_of_pair[e]++;
        }
        auto fs = solve_between(p, z1, z0);
        if (es.size() != 1 || fs.size() != 1) {
            report.weak_unique = false;
            if (report.failure.empty()) report.failure = "pair without a unique (e,f) solution";
        }
        for (const auto& e : es)
            for (const auto& f : fs) {
                ef_values.insert({e, f});
                ef_of_pair[{e, f}]++;
            }
    }

    for (const auto& [e, count] : e_of_pair)
        if (count > 1) {
            report.injective = false;
            if (report.failure.empty())
                report.failure = "e value shared by " + std::to_string(count) + " pairs";
        }
    for (const auto& [ef, count] : ef_of_pair)
        if (count > 1) {
            report.weak_injective = false;
            if (report.failure.empty())
                report.failure = "(e,f) value shared by " + std::to_string(count) + " pairs";
        }

    auto central = central_elements(a, z, opt);
    report.central_count = static_cast<int>(central.distinct.size());
    for (const auto& e : central.distinct)
        if (!e_values.count(e)) {
            report.surjective = false;
            if (report.failure.empty()) report.failure = "central element missed by the map";
        }
    for (const auto& cp : complementary_pairs(a, z, opt))
        if (!ef_values.count({cp.e, cp.f})) {
            report.weak_surjective = false;
            if (report.failure.empty())
                report.failure = "complementary central pair missed by the map";
        }
    return report;
}

}  // namespace ua
