#include "ua/gallery.hpp"

#include <algorithm>
#include <array>

#include "ua/fol_builders.hpp"
#include "ua/formula.hpp"

namespace ua {

namespace {

Signature vl_signature(bool with_join) {
    std::vector<OpSym> ops{{"+", 2}, {"*", 2}, {"0", 0}, {"1", 0}};
    if (with_join) ops.push_back({"v", 2});
    return Signature(ops);
}

}  // namespace

Algebra build_L(int n, bool with_join) {
    if (n < 2) throw error("build_L: n must be at least 2");
    Signature sig = vl_signature(with_join);

    std::vector<int> plus(n * n), times(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int p;
            if (b == 0) p = a;
            else if (a <= 1 && b == 1) p = a;  // 0+1=0, 1+1=1
            else p = 2;
            plus[a * n + b] = p;

            int q;
            if (b == 0) q = 0;
            else if (a <= 1 && b == 1) q = a;  // 0*1=0, 1*1=1
            else q = 2;
            times[a * n + b] = q;
        }

    std::vector<std::vector<int>> tables{plus, times, {0}, {1}};
    if (with_join) {
        // Total order with 0 greatest: the join of two elements is the one
        // with the smaller index.
        std::vector<int> vee(n * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) vee[a * n + b] = std::min(a, b);
        tables.push_back(std::move(vee));
    }
    std::string name = "L" + std::to_string(n) + (with_join ? "v" : "");
    return Algebra(std::move(sig), n, std::move(tables), name);
}

int LabeledAlgebra::index_of(std::pair<int, int> label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    return it == labels.end() ? -1 : static_cast<int>(it - labels.begin());
}

int LabeledProduct::index_of(std::pair<int, int> label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    return it == labels.end() ? -1 : static_cast<int>(it - labels.begin());
}

LabeledProduct build_L_product(int n, int m, bool with_join) {
    Algebra ln = build_L(n, with_join);
    Algebra lm = build_L(m, with_join);
    LabeledProduct lp{direct_product(ln, lm), {}};
    for (int e = 0; e < lp.product.algebra.size(); ++e) {
        auto comps = lp.product.decode(e);
        lp.labels.emplace_back(comps[0], comps[1]);
    }
    return lp;
}

LabeledAlgebra build_D(int n) {
    if (n < 3) throw error("build_D: n must be at least 3");
    LabeledProduct host = build_L_product(2, n + 1, false);

    std::vector<int> universe;
    auto enc = [&](int i, int j) {
        std::array<int, 2> comps{i, j};
        return host.product.encode(comps);
    };
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < n; ++j) universe.push_back(enc(i, j));
    universe.push_back(enc(1, n));

    // The table construction below would throw if the universe were not
    // closed; assert the closure explicitly as well.
    auto closed = subuniverse_closure(host.product.algebra, universe);
    auto sorted = universe;
    std::sort(sorted.begin(), sorted.end());
    if (closed != sorted) throw error("build_D: universe is not closed (table bug)");

    Subalgebra sub = subalgebra(host.product.algebra, universe);
    LabeledAlgebra out{std::move(sub.algebra), {}};
    out.algebra.set_name("D" + std::to_string(n));
    for (int e = 0; e < out.algebra.size(); ++e)
        out.labels.push_back(host.labels[sub.parent_index[e]]);
    return out;
}

SubalgebraL build_subalgebra_L() {
    LabeledProduct parent = build_L_product(5, 2, true);
    LabeledProduct small = build_L_product(4, 2, true);

    std::vector<int> universe;
    for (int e = 0; e < parent.product.algebra.size(); ++e) {
        auto [i, j] = parent.labels[e];
        if ((i == 3 && j == 1) || (i == 4 && j == 0)) continue;
        universe.push_back(e);
    }
    Subalgebra sub = subalgebra(parent.product.algebra, universe);
    sub.algebra.set_name("L");

    // Identity on labels except (3,1) -> (4,1).
    ElementMap swap_map(small.product.algebra.size(), sub.algebra.size());
    for (int e = 0; e < small.product.algebra.size(); ++e) {
        auto [i, j] = small.labels[e];
        std::pair<int, int> target = (i == 3 && j == 1) ? std::make_pair(4, 1)
                                                        : std::make_pair(i, j);
        int parent_idx = parent.index_of(target);
        int sub_idx = -1;
        for (int s = 0; s < sub.algebra.size(); ++s)
            if (sub.parent_index[s] == parent_idx) sub_idx = s;
        if (sub_idx < 0) throw error("build_subalgebra_L: label lookup failed");
        swap_map.set(e, sub_idx);
    }
    return SubalgebraL{std::move(parent), std::move(sub), std::move(small), std::move(swap_map)};
}

Algebra gallery_build(const GallerySpec& spec) {
    switch (spec.family) {
        case GallerySpec::Family::L: return build_L(spec.n, false);
        case GallerySpec::Family::Lvee: return build_L(spec.n, true);
        case GallerySpec::Family::D: return build_D(spec.n).algebra;
        case GallerySpec::Family::Product:
            return build_L_product(spec.n, spec.m, spec.with_join).product.algebra;
        case GallerySpec::Family::SubalgebraL: return build_subalgebra_L().sub.algebra;
    }
    throw error("gallery_build: unknown family");
}

std::vector<Algebra> gallery_L_family(int n_from, int n_to, bool with_join) {
    std::vector<Algebra> out;
    for (int n = n_from; n <= n_to; ++n) out.push_back(build_L(n, with_join));
    return out;
}

UChain standard_u_chain(std::span<const Algebra> validate_on) {
    UChain chain;
    chain.l = 1;
    chain.zeroone = ZeroOneSpec::constants01();
    for (const char* s : {"+(x,z)", "*(x,z)", "*(y,z)", "+(y,z)", "y"})
        chain.terms.push_back(parse_term(s));
    auto report = validate_u_chain(validate_on, chain);
    if (!report.valid)
        throw error("standard_u_chain: validation failed: " +
                    (report.violations.empty() ? "?" : report.violations.front()));
    return chain;
}

namespace {

bool is_tail(std::pair<int, int> label) { return label.first == 1 && label.second >= 3; }

}  // namespace

DuplicatorStrategy mirror_tail_strategy(const LabeledAlgebra& d, const LabeledProduct& prod) {
    auto d_labels = d.labels;
    auto p_labels = prod.labels;
    return [d_labels, p_labels](const std::vector<std::pair<int, int>>& chosen,
                                bool spoiler_in_a, int spoiler_elem) -> int {
        // a-side is D, b-side is the product.
        const auto& from = spoiler_in_a ? d_labels : p_labels;
        const auto& to = spoiler_in_a ? p_labels : d_labels;
        auto label = from[spoiler_elem];
        if (!is_tail(label)) {
            // Same element on the other side.
            for (int v = 0; v < static_cast<int>(to.size()); ++v)
                if (to[v] == label) return v;
            return -1;
        }
        std::vector<char> used(to.size(), 0);
        for (auto [x, y] : chosen) used[spoiler_in_a ? y : x] = 1;
        for (int v = 0; v < static_cast<int>(to.size()); ++v)
            if (is_tail(to[v]) && !used[v]) return v;
        return -1;
    };
}

CounterexampleReport counterexample_pipeline(int n, const PipelineOptions& opt) {
    CounterexampleReport report;
    report.n = n;
    report.rounds = n - 3;

    LabeledAlgebra d = build_D(n);
    LabeledProduct prod = build_L_product(2, n, false);

    EfSolver solver(d.algebra, prod.product.algebra, opt.ef);
    report.game_winner = solver.solve(report.rounds);
    report.solver_positions = solver.positions_visited();

    report.fixed_strategy_wins = validate_strategy(d.algebra, prod.product.algebra,
                                                   report.rounds, mirror_tail_strategy(d, prod),
                                                   opt.ef.budget);

    int size = d.algebra.size();
    bool prime = size >= 2;
    for (int q = 2; q * q <= size; ++q)
        if (size % q == 0) prime = false;
    report.d_indecomposable.prime_cardinality = prime;
    if (size <= opt.congruence.size_guard)
        report.d_indecomposable.by_factor_pairs =
            is_directly_indecomposable(d.algebra, opt.congruence);
    report.d_indecomposable.indecomposable =
        report.d_indecomposable.by_factor_pairs.value_or(prime);

    if (prod.product.algebra.size() <= opt.congruence.size_guard)
        report.product_decomposable = !decompose(prod.product.algebra, opt.congruence).empty();
    else
        report.product_decomposable = true;  // it is a product by construction

    report.pass = report.game_winner == Player::Exists && report.fixed_strategy_wins &&
                  report.d_indecomposable.indecomposable && report.product_decomposable;
    return report;
}

FigureChecksReport figure_checks() {
    FigureChecksReport report;
    SubalgebraL setup = build_subalgebra_L();
    const Algebra& big = setup.parent.product.algebra;

    // (a) the 8-element subset is closed, and the swap map is an isomorphism.
    {
        std::vector<int> universe = setup.sub.parent_index;
        auto closed = subuniverse_closure(big, universe);
        std::sort(universe.begin(), universe.end());
        report.subuniverse_closed = closed == universe;
        report.swap_is_isomorphism =
            setup.swap_map.is_bijective() &&
            check_homomorphism(setup.small.product.algebra, setup.sub.algebra, setup.swap_map,
                               true);
    }

    // (b) the congruence generated by the two pair identifications sits
    // strictly below the first projection kernel.
    {
        auto enc = [&](int i, int j) { return setup.parent.index_of({i, j}); };
        std::vector<std::pair<int, int>> gens{{enc(0, 0), enc(0, 1)}, {enc(1, 0), enc(1, 1)}};
        Congruence theta = generated_congruence(big, gens);
        Congruence ker_pi1 = [&] {
            std::vector<int> rep(big.size());
            for (int e = 0; e < big.size(); ++e) rep[e] = setup.parent.labels[e].first;
            return Congruence::from_partition(big, rep);
        }();
        report.theta_below_ker_pi1 = theta.subset_of(ker_pi1);
        report.theta_strictly_below = report.theta_below_ker_pi1 && !(theta == ker_pi1);
        report.theta_blocks = theta.blocks();
    }

    // (c) kernel formula transported along the isomorphism: satisfaction
    // moves from L4vxL2v to the subalgebra but fails in the full product.
    {
        std::vector<Algebra> chain_algs{setup.small.product.algebra, setup.sub.algebra, big};
        UChain chain = standard_u_chain(chain_algs);
        FormulaPtr phi = build_semilattice_phi(chain, "v");
        report.phi_positive = is_positive(phi);
        report.phi_existential = is_existential(phi);

        auto eval3 = [&](const Algebra& alg, int x, int y, int z) {
            Env env;
            env.push("x", x);
            env.push("y", y);
            env.push("z", z);
            return eval_formula(alg, phi, env);
        };
        int s30 = setup.small.index_of({3, 0});
        int s31 = setup.small.index_of({3, 1});
        int s01 = setup.small.index_of({0, 1});
        report.transport_small = eval3(setup.small.product.algebra, s30, s31, s01);

        auto sub_of = [&](std::pair<int, int> label) {
            int parent_idx = setup.parent.index_of(label);
            for (int s = 0; s < setup.sub.algebra.size(); ++s)
                if (setup.sub.parent_index[s] == parent_idx) return s;
            return -1;
        };
        report.transport_sub =
            eval3(setup.sub.algebra, sub_of({3, 0}), sub_of({4, 1}), sub_of({0, 1}));

        int b30 = setup.parent.index_of({3, 0});
        int b41 = setup.parent.index_of({4, 1});
        int b01 = setup.parent.index_of({0, 1});
        report.transport_big = eval3(big, b30, b41, b01);
    }

    report.pass = report.subuniverse_closed && report.swap_is_isomorphism &&
                  report.theta_below_ker_pi1 && report.theta_strictly_below &&
                  report.transport_small && report.transport_sub && !report.transport_big &&
                  !report.phi_positive && !report.phi_existential;
    return report;
}

}  // namespace ua
