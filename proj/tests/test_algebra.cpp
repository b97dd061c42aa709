#include "doctest.h"

#include <array>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "ua/io.hpp"

using namespace ua;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("signature rejects duplicates and bad arities") {
    CHECK_THROWS_AS(Signature({{"+", 2}, {"+", 1}}), error);
    CHECK_THROWS_AS(Signature({{"f", -1}}), error);
    Signature sig({{"+", 2}, {"0", 0}});
    CHECK(sig.index_of("+") == 0);
    CHECK(sig.index_of("q") == -1);
}

TEST_CASE("term evaluation on the chain algebras") {
    Algebra l5 = build_L(5, false);
    Env env;
    env.bind("x", 3);
    env.bind("y", 1);
    CHECK(eval_term(l5, parse_term("+(x,y)"), env) == 2);

    Env env2;
    env2.bind("x", 4);
    env2.bind("y", 0);
    CHECK(eval_term(l5, parse_term("+(x,y)"), env2) == 4);

    Env env3;
    env3.bind("x", 3);
    CHECK(eval_term(l5, parse_term("x"), env3) == 3);

    CHECK(eval_term(l5, parse_term("0"), env3) == 0);
    CHECK(eval_term(l5, parse_term("1()"), env3) == 1);
}

TEST_CASE("term evaluation errors are reported distinctly") {
    Algebra l2 = build_L(2, false);
    Env env;
    CHECK_THROWS_WITH_AS(eval_term(l2, parse_term("w"), env), doctest::Contains("unbound"),
                         error);
    CHECK_THROWS_WITH_AS(eval_term(l2, parse_term("q(x)"), env), doctest::Contains("unknown"),
                         error);
    CHECK_THROWS_WITH_AS(eval_term(l2, parse_term("+(0)"), env), doctest::Contains("arity"),
                         error);
}

TEST_CASE("term evaluation is compositional at the root") {
    Algebra l5 = build_L(5, true);
    testing::RandomFormulas gen(7, l5.signature(), {"x", "y", "z"});
    Env env;
    env.bind("x", 3);
    env.bind("y", 1);
    env.bind("z", 4);
    for (int i = 0; i < 200; ++i) {
        TermPtr t = gen.term(3);
        if (t->is_leaf()) continue;
        std::vector<int> child_vals;
        for (const auto& c : t->children()) child_vals.push_back(eval_term(l5, c, env));
        int op = l5.signature().index_of(t->head());
        CHECK(eval_term(l5, t, env) == l5.apply(op, child_vals));
    }
}

TEST_CASE("direct product: sizes, componentwise tables, projections") {
    Algebra l5 = build_L(5, false);
    Algebra l2 = build_L(2, false);
    Product p = direct_product(l5, l2);
    CHECK(p.algebra.size() == 10);

    // (3,0)+(1,1) = (2,0) componentwise.
    std::array<int, 2> t30{3, 0}, t11{1, 1}, t20{2, 0};
    int a = p.encode(t30);
    int b = p.encode(t11);
    int plus = p.algebra.signature().index_of("+");
    CHECK(p.algebra.apply(plus, std::array{a, b}) == p.encode(t20));

    // Projections reproduce the factor tables exactly.
    for (int op = 0; op < p.algebra.signature().op_count(); ++op) {
        int arity = p.algebra.signature().op(op).arity;
        if (arity != 2) continue;
        for (int x = 0; x < p.algebra.size(); ++x)
            for (int y = 0; y < p.algebra.size(); ++y) {
                int r = p.algebra.apply(op, std::array{x, y});
                CHECK(p.component(r, 0) ==
                      l5.apply(op, std::array{p.component(x, 0), p.component(y, 0)}));
                CHECK(p.component(r, 1) ==
                      l2.apply(op, std::array{p.component(x, 1), p.component(y, 1)}));
            }
    }

    CHECK_THROWS_AS(direct_product(l5, build_L(2, true)), error);
}

TEST_CASE("product with a one-element factor is isomorphic to the factor") {
    Algebra l4 = build_L(4, false);
    Algebra t1 = testing::one_element(l4.signature());
    Product p = direct_product(l4, t1);
    auto iso = find_isomorphism(p.algebra, l4);
    REQUIRE(iso.has_value());
    CHECK(check_homomorphism(p.algebra, l4, *iso, true));
    CHECK(iso->is_bijective());
}

TEST_CASE("subuniverse closure basics") {
    Algebra l5 = build_L(5, false);
    auto cl = subuniverse_closure(l5, std::vector<int>{});
    CHECK(cl == std::vector<int>{0, 1});  // the constants

    // Contains its seed, monotone, idempotent.
    auto c1 = subuniverse_closure(l5, std::vector<int>{3});
    CHECK(std::find(c1.begin(), c1.end(), 3) != c1.end());
    auto c2 = subuniverse_closure(l5, c1);
    CHECK(c1 == c2);
    auto c3 = subuniverse_closure(l5, std::vector<int>{3, 4});
    for (int x : c1) CHECK(std::find(c3.begin(), c3.end(), x) != c3.end());
}

TEST_CASE("the doubled-chain subset is closed in L2 x L6") {
    LabeledProduct host = build_L_product(2, 6, false);
    std::vector<int> universe;
    for (int e = 0; e < host.product.algebra.size(); ++e) {
        auto [i, j] = host.labels[e];
        if (j < 5 || (i == 1 && j == 5)) universe.push_back(e);
    }
    auto closed = subuniverse_closure(host.product.algebra, universe);
    CHECK(closed == universe);  // universe is already sorted ascending
    CHECK(closed.size() == 11);
}

TEST_CASE("the 8-element subset of L5v x L2v is closed") {
    LabeledProduct host = build_L_product(5, 2, true);
    std::vector<int> universe;
    for (int e = 0; e < host.product.algebra.size(); ++e) {
        auto [i, j] = host.labels[e];
        if (!((i == 3 && j == 1) || (i == 4 && j == 0))) universe.push_back(e);
    }
    auto closed = subuniverse_closure(host.product.algebra, universe);
    CHECK(closed == universe);
}

TEST_CASE("homomorphism and isomorphism checks") {
    Algebra l4 = build_L(4, false);
    CHECK(check_homomorphism(l4, l4, ElementMap::identity(4), true));

    Algebra l5 = build_L(5, false);
    CHECK(!find_isomorphism(l4, l5).has_value());

    // The swap map between L4v x L2v and the 8-element subalgebra.
    SubalgebraL setup = build_subalgebra_L();
    CHECK(setup.swap_map.is_bijective());
    CHECK(check_homomorphism(setup.small.product.algebra, setup.sub.algebra, setup.swap_map,
                             true));

    // Any isomorphism found passes the total homomorphism check.
    auto iso = find_isomorphism(setup.small.product.algebra, setup.sub.algebra);
    REQUIRE(iso.has_value());
    CHECK(check_homomorphism(setup.small.product.algebra, setup.sub.algebra, *iso, true));
}

TEST_CASE("algebra file parsing: L2.json and error cases") {
    Algebra l2 = load_algebra(std::string(UA_DATA_DIR) + "/L2.json");
    CHECK(l2.size() == 2);
    int plus = l2.signature().index_of("+");
    int times = l2.signature().index_of("*");
    // + is the first projection, * is the meet.
    CHECK(l2.table(plus) == std::vector<int>{0, 0, 1, 1});
    CHECK(l2.table(times) == std::vector<int>{0, 0, 0, 1});

    CHECK_THROWS_WITH_AS(parse_algebra("{"), doctest::Contains("syntax"), parse_error);
    CHECK_THROWS_WITH_AS(
        parse_algebra(R"({"signature":[{"name":"0","arity":0}],"size":1,"tables":{"0":[1]}})"),
        doctest::Contains("out of range"), parse_error);
    CHECK_THROWS_WITH_AS(
        parse_algebra(R"({"signature":[{"name":"+","arity":2}],"size":2,"tables":{"+":[0,0]}})"),
        doctest::Contains("arity mismatch"), parse_error);
    CHECK_THROWS_WITH_AS(
        parse_algebra(R"({"signature":[{"name":"f","arity":9}],"size":1,"tables":{"f":[0]}})"),
        doctest::Contains("maximum"), parse_error);
}

TEST_CASE("parse/print round trip on the shipped gallery files") {
    for (const char* file : {"L2.json", "L3.json", "L5.json", "L2v.json", "L5v.json", "D5.json"}) {
        std::string text = slurp(std::string(UA_DATA_DIR) + "/" + file);
        Algebra a = parse_algebra(text);
        Algebra b = parse_algebra(print_algebra(a));
        CHECK(a.signature() == b.signature());
        CHECK(a.size() == b.size());
        for (int op = 0; op < a.signature().op_count(); ++op) CHECK(a.table(op) == b.table(op));
        CHECK(a.element_names() == b.element_names());
    }
}

TEST_CASE("term parser rejects malformed input") {
    CHECK_THROWS_AS(parse_term(""), parse_error);
    CHECK_THROWS_AS(parse_term("+(x,"), parse_error);
    CHECK_THROWS_AS(parse_term("f(x))"), parse_error);
    CHECK(parse_term("+(x,0)")->to_string() == "+(x,0)");
    CHECK(parse_term("v(x1,y)")->to_string() == "v(x1,y)");
}
