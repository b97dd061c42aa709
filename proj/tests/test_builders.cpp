#include "doctest.h"

#include "oracles.hpp"
#include "ua/fol_builders.hpp"
#include "ua/preservation.hpp"

using namespace ua;

TEST_CASE("semilattice kernel formula structure") {
    std::vector<Algebra> algs = gallery_L_family(2, 5, true);
    UChain chain = standard_u_chain(algs);
    REQUIRE(chain.k() == 5);
    FormulaPtr phi = build_semilattice_phi(chain, "v");

    REQUIRE(phi->kind() == Formula::Kind::Forall);
    const auto& body = phi->body();
    REQUIRE(body->kind() == Formula::Kind::Implies);
    CHECK(body->parts()[0]->parts().size() == 5);  // one conjunct per chain term

    auto fv = free_vars(phi, algs[0].signature());
    CHECK(fv == std::set<std::string>{"x", "y", "z"});

    // With z at zero, the antecedent trivializes: the formula collapses to
    // forall u (x v u = y v u), which on a chain says x = y.
    const Algebra& l5 = algs[3];
    for (int x = 0; x < 5; ++x)
        for (int y = 0; y < 5; ++y) {
            Env env;
            env.bind("x", x);
            env.bind("y", y);
            env.bind("z", 0);
            CHECK(eval_formula(l5, phi, env) == (x == y));
        }
}

TEST_CASE("unvalidated chains are rejected by the builder") {
    UChain chain;
    chain.l = 1;
    chain.zeroone = ZeroOneSpec::constants01();
    chain.terms = {Term::leaf("y")};
    CHECK_THROWS_AS(build_semilattice_phi(chain, "v"), error);
}

TEST_CASE("word enumeration count") {
    auto words = words_up_to(2, 2);
    int between_1_and_2 = 0;
    for (const auto& w : words)
        if (w.size() >= 1 && w.size() <= 2) ++between_1_and_2;
    CHECK(between_1_and_2 == 6);  // 2 + 4
    CHECK(words.size() == 7);     // plus the empty word
}

TEST_CASE("kernel formula layers from a family") {
    MalcevFamily fam = testing::sample_family();
    Signature sig = build_L(2, false).signature();
    Phi12 out = build_phi12(fam, sig);

    REQUIRE(out.psi.size() == 2);
    // The top layer has an empty antecedent: a bare conjunction of equations.
    REQUIRE(out.psi[1]->kind() == Formula::Kind::And);
    CHECK(out.psi[1]->parts().size() == 4);  // words of length 2
    for (const auto& part : out.psi[1]->parts()) CHECK(part->kind() == Formula::Kind::Eq);

    // The length-1 layer keeps its antecedents.
    REQUIRE(out.psi[0]->kind() == Formula::Kind::And);
    CHECK(out.psi[0]->parts().size() == 2);
    for (const auto& part : out.psi[0]->parts()) {
        REQUIRE(part->kind() == Formula::Kind::Implies);
        CHECK(part->parts()[0]->parts().size() == 2);  // two one-letter extensions
    }

    // Quantifier prefixes: phi1 starts exists y1 forall x1; phi2 swaps them.
    REQUIRE(out.phi1->kind() == Formula::Kind::Exists);
    CHECK(out.phi1->var() == "y1");
    REQUIRE(out.phi1->body()->kind() == Formula::Kind::Forall);
    CHECK(out.phi1->body()->var() == "x1");
    REQUIRE(out.phi2->kind() == Formula::Kind::Exists);
    CHECK(out.phi2->var() == "x1");

    auto fv = free_vars(out.phi, sig);
    CHECK(fv == std::set<std::string>{"x", "y", "z"});
}

TEST_CASE("layered preservation formulas") {
    std::map<Word, FormulaPtr> taus;
    FormulaPtr triv = parse_formula("(= x x)");
    for (const auto& w : words_up_to(2, 2)) taus[w] = triv;

    // Beyond the top length the odd layer is the empty conjunction.
    FormulaPtr o3 = build_O(taus, 2, 3);
    REQUIRE(o3->kind() == Formula::Kind::And);
    CHECK(o3->parts().empty());

    // The top even layer is the plain conjunction over words of length N.
    FormulaPtr e2 = build_E(taus, 2, 2);
    REQUIRE(e2->kind() == Formula::Kind::And);
    CHECK(e2->parts().size() == 4);

    // All-trivial taus make the combined formula true everywhere.
    FormulaPtr eo = build_EO(taus, 2, 1);
    for (const Algebra& a : gallery_L_family(2, 4, false)) {
        Env env;
        env.bind("x", 0);
        env.bind("y", a.size() - 1);
        env.bind("z", 1);
        CHECK(eval_formula(a, eo, env));
    }

    std::map<Word, FormulaPtr> missing = taus;
    missing.erase(Word{1, 2});
    CHECK_THROWS_AS(build_EO(missing, 2, 1), error);
}

TEST_CASE("axiom suite: shape and counts") {
    Signature sig = build_L(2, true).signature();  // 5 symbols
    std::vector<Algebra> algs = gallery_L_family(2, 5, true);
    UChain chain = standard_u_chain(algs);
    FormulaPtr phi = build_semilattice_phi(chain, "v");

    auto suite = sigma_suite(sig, phi, ZeroOneSpec::constants01());
    CHECK(suite.size() == 20);  // 10 fixed + 2 per function symbol

    int pres = 0, primed = 0;
    for (const auto& nf : suite) {
        if (nf.name.rfind("PRES", 0) == 0) ++pres;
        if (nf.name.back() == '\'') ++primed;
        auto fv = free_vars(nf.formula, sig);
        for (const auto& v : fv) CHECK((v == "e1" || v == "f1"));
    }
    CHECK(pres == 10);
    CHECK(primed == 9);  // CAN', REF', SYM', TRANS' and five PRES'

    FormulaPtr wrong = parse_formula("(= x q)");
    CHECK_THROWS_AS(sigma_suite(sig, wrong, ZeroOneSpec::constants01()), error);
}

TEST_CASE("axiom suite on L2v x L5v: central pair passes, degenerate pair fails CAN") {
    LabeledProduct lp = build_L_product(2, 5, true);
    const Algebra& a = lp.product.algebra;
    std::vector<Algebra> algs{build_L(2, true), build_L(5, true), a};
    UChain chain = standard_u_chain(algs);
    FormulaPtr phi = build_semilattice_phi(chain, "v");
    auto suite = sigma_suite(a.signature(), phi, ZeroOneSpec::constants01());

    auto eval_with = [&](const NamedFormula& nf, int e, int f) {
        Env env;
        env.bind("e1", e);
        env.bind("f1", f);
        return eval_formula(a, nf.formula, env);
    };

    int e = lp.index_of({0, 1});
    int f = lp.index_of({1, 0});
    for (const auto& nf : suite) CHECK_MESSAGE(eval_with(nf, e, f), nf.name);

    int zero = lp.index_of({0, 0});
    bool can_failed = false;
    for (const auto& nf : suite)
        if (nf.name == "CAN") can_failed = !eval_with(nf, zero, zero);
    CHECK(can_failed);
}

TEST_CASE("axiom suite characterizes complementary central pairs exhaustively") {
    // On small join products, (e, f) satisfies the whole suite exactly when
    // it is listed as a complementary central pair.
    for (int m : {2, 3}) {
        LabeledProduct lp = build_L_product(2, m, true);
        const Algebra& a = lp.product.algebra;
        std::vector<Algebra> algs = gallery_L_family(2, 5, true);
        algs.push_back(a);
        UChain chain = standard_u_chain(algs);
        FormulaPtr phi = build_semilattice_phi(chain, "v");
        auto suite = sigma_suite(a.signature(), phi, ZeroOneSpec::constants01());

        std::set<std::pair<int, int>> listed;
        for (const auto& cp : complementary_pairs(a, ZeroOneSpec::constants01()))
            listed.insert({cp.e[0], cp.f[0]});

        for (int e = 0; e < a.size(); ++e)
            for (int f = 0; f < a.size(); ++f) {
                bool all = true;
                for (const auto& nf : suite) {
                    Env env;
                    env.bind("e1", e);
                    env.bind("f1", f);
                    if (!eval_formula(a, nf.formula, env)) {
                        all = false;
                        break;
                    }
                }
                CHECK_MESSAGE(all == listed.count({e, f}),
                              "L2vxL" << m << "v at e=" << e << " f=" << f);
            }
    }
}

TEST_CASE("preservation checks: atomic formulas and the cardinality formula") {
    Algebra l2 = build_L(2, false);
    Algebra l3 = build_L(3, false);

    FormulaPtr atomic = parse_formula("(= +(x,y) +(y,x))");
    CHECK(check_product_preservation(atomic, l2, l3).ok());
    CHECK(check_factor_preservation(atomic, l2, l3).ok());

    FormulaPtr two = parse_formula("(exists u (not (= u x)))");
    Algebra t1 = testing::one_element(l2.signature());
    auto rep = check_factor_preservation(two, t1, l2);
    CHECK(!rep.ok());
    REQUIRE(!rep.counterexamples.empty());
    CHECK(rep.counterexamples[0].detail.find("factor A") != std::string::npos);
    // Product preservation is fine for that formula and those factors.
    CHECK(check_product_preservation(two, t1, l2).ok());
}
