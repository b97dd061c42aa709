#include "doctest.h"

#include <fstream>
#include <sstream>

#include "oracles.hpp"

using namespace ua;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool tuples_equal(const TermTuple& a, const TermTuple& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!term_equal(a[i], b[i])) return false;
    return true;
}

}  // namespace

TEST_CASE("slot transformers: base case, unrolling, idempotence") {
    MalcevFamily fam = testing::sample_family();  // s1 = +(x,z), t1 = *(y,z)

    // n = 0 base case: sigma collapses y to x and z to zero.
    MalcevFamily base = testing::sample_family_n0();
    TermTuple xyz = slot_tuple(0, 1);
    TermTuple s = transform(TransformKind::Sigma, base, xyz);
    CHECK(term_equal(s[0], Term::leaf("x")));
    CHECK(term_equal(s[1], Term::leaf("x")));
    CHECK(term_equal(s[2], Term::leaf("0")));

    // n = 1 unrolled: the x1 slot of sigma holds s1 applied to the prefix.
    TermTuple tup = slot_tuple(1, 1);
    TermTuple sig = transform(TransformKind::Sigma, fam, tup);
    CHECK(term_equal(sig[3], parse_term("+(x,0)")));   // s1(x, x, 0)
    CHECK(term_equal(sig[4], Term::leaf("y1")));
    TermTuple sigstar = transform(TransformKind::SigmaStar, fam, tup);
    CHECK(term_equal(sigstar[2], Term::leaf("1")));
    CHECK(term_equal(sigstar[3], parse_term("*(y,1)")));  // t1(x, y, 1)

    TermTuple rho = transform(TransformKind::Rho, fam, tup);
    CHECK(term_equal(rho[3], Term::leaf("x1")));
    CHECK(term_equal(rho[4], parse_term("+(x,0)")));

    // All four transformers are idempotent as term-tuple maps.
    for (auto kind : {TransformKind::Sigma, TransformKind::SigmaStar, TransformKind::Rho,
                      TransformKind::RhoStar}) {
        TermTuple once = transform(kind, fam, tup);
        TermTuple twice = transform(kind, fam, once);
        CHECK_MESSAGE(tuples_equal(once, twice), transform_name(kind));
    }

    TermTuple bad(3, Term::leaf("x"));
    CHECK_THROWS_AS(transform(TransformKind::Sigma, fam, bad), error);
}

TEST_CASE("identity checker: vacuity on one element, failure with a counter-assignment") {
    Signature sig = build_L(2, false).signature();
    Algebra t1 = testing::one_element(sig);

    for (const MalcevFamily& fam : {testing::sample_family(), testing::constant_x_family()}) {
        auto rep = check_malcev_identities(t1, fam);
        CHECK(rep.all_pass);
    }

    Algebra l2 = build_L(2, false);
    auto rep = check_malcev_identities(l2, testing::constant_x_family());
    CHECK(!rep.all_pass);
    bool chain_blame = false;
    for (const auto& c : rep.checks) {
        if (c.pass) continue;
        CHECK(!c.counterexample.empty());
        if (c.name == "eps rho R_2=R_eps") chain_blame = true;
    }
    CHECK(chain_blame);  // R_N(rho X) = R_eps(rho X) forces x = y
}

TEST_CASE("identity checker budget guard") {
    Algebra l2 = build_L(2, false);
    MalcevCheckOptions tiny;
    tiny.budget = 3;
    CHECK_THROWS_AS(check_malcev_identities(l2, testing::sample_family(), tiny), budget_error);
}

TEST_CASE("generated-congruence identities: one element, join reading at n = 0") {
    Signature sig = build_L(2, false).signature();
    Algebra t1 = testing::one_element(sig);
    MalcevFamily base = testing::sample_family_n0();
    auto rep1 = check_generation_identities(t1, base, std::vector<int>{0, 0, 0});
    for (const auto& line : rep1.lines) {
        CHECK(line.join_equal);
        CHECK(line.composition_equal);
    }

    // Join reading at n = 0 over the small gallery, all element triples.
    std::vector<Algebra> gallery = gallery_L_family(2, 6, false);
    auto vj = gallery_L_family(2, 6, true);
    gallery.insert(gallery.end(), vj.begin(), vj.end());
    for (const Algebra& a : gallery) {
        for (int c = 0; c < a.size(); ++c)
            for (int d = 0; d < a.size(); ++d)
                for (int e = 0; e < a.size(); ++e) {
                    auto rep = check_generation_identities(a, base, std::vector<int>{c, d, e});
                    for (const auto& line : rep.lines)
                        CHECK_MESSAGE(line.join_equal,
                                      a.name() << " " << line.name << " c=" << c << " d=" << d
                                               << " e=" << e);
                }
    }

    // Reports are produced for arbitrary families regardless of truth.
    Algebra l2 = build_L(2, false);
    CHECK_NOTHROW(check_generation_identities(l2, testing::constant_x_family(),
                                std::vector<int>{0, 1, 0, 1, 0}));
}

TEST_CASE("sandwich transport on the product with the canonical pair") {
    LabeledProduct lp = build_L_product(2, 5, true);
    const Algebra& a = lp.product.algebra;
    MalcevFamily fam = testing::sample_family();

    std::vector<int> rep1(a.size()), rep2(a.size());
    for (int e = 0; e < a.size(); ++e) {
        rep1[e] = lp.labels[e].first;
        rep2[e] = lp.labels[e].second;
    }
    Congruence ker1 = Congruence::from_partition(a, rep1);
    Congruence ker2 = Congruence::from_partition(a, rep2);

    int c = lp.index_of({0, 0});
    int d = lp.index_of({0, 1});  // c and d share their first coordinate
    int e = lp.index_of({0, 1});

    TransportOptions opt;
    opt.term_depth = 2;
    opt.max_terms = 4000;
    auto rep = check_sandwich_transport(a, fam, ker1, ker2, c, d, std::vector<int>{e}, std::nullopt,
                                 std::nullopt, opt);
    CHECK(rep.preconditions_ok);
    CHECK(rep.failures.empty());
    CHECK(rep.terms_tested > 100);

    // Projection term x is in the test set by construction; nothing to add.

    // A non-complementary pair is rejected up front.
    auto bad = check_sandwich_transport(a, fam, Congruence::delta(a), Congruence::delta(a), c, d,
                                 std::vector<int>{e});
    CHECK(!bad.preconditions_ok);
    CHECK(bad.precondition_failure.find("complementary") != std::string::npos);

    // c theta d must hold.
    auto bad2 = check_sandwich_transport(a, fam, ker1, ker2, lp.index_of({0, 0}),
                                  lp.index_of({1, 0}), std::vector<int>{e});
    CHECK(!bad2.preconditions_ok);
}

TEST_CASE("u-chain validation and search") {
    std::vector<Algebra> vl = gallery_L_family(2, 6, false);
    std::vector<Algebra> vj = gallery_L_family(2, 6, true);

    UChain good = standard_u_chain(vl);
    CHECK(good.validated);
    auto rep = validate_u_chain(vj, good);
    CHECK(rep.valid);

    // A chain whose first term is y violates the first identity.
    UChain bad;
    bad.l = 1;
    bad.zeroone = ZeroOneSpec::constants01();
    bad.terms = {Term::leaf("y")};
    auto brep = validate_u_chain(vl, bad);
    CHECK(!brep.valid);
    REQUIRE(!brep.violations.empty());
    CHECK(brep.violations[0].find("u1(x,y,0)=x") != std::string::npos);

    // Even length is rejected outright.
    UChain even;
    even.l = 1;
    even.zeroone = ZeroOneSpec::constants01();
    even.terms = {Term::leaf("x"), Term::leaf("y")};
    CHECK(!validate_u_chain(vl, even).valid);

    // Depth-2 search rediscovers a valid odd chain.
    auto found = find_u_chain(vj, ZeroOneSpec::constants01(), 2);
    REQUIRE(found.has_value());
    CHECK(found->validated);
    CHECK(found->k() % 2 == 1);
    CHECK(found->k() <= 7);
}

TEST_CASE("a valid chain forces the zero/one pair to generate everything") {
    std::vector<Algebra> all = gallery_L_family(2, 6, false);
    auto vj = gallery_L_family(2, 6, true);
    all.insert(all.end(), vj.begin(), vj.end());
    UChain chain = standard_u_chain(all);
    REQUIRE(chain.validated);
    for (const Algebra& a : all) {
        int zero = a.constant(a.signature().index_of("0"));
        int one = a.constant(a.signature().index_of("1"));
        if (zero == one) continue;
        std::vector<std::pair<int, int>> gen{{zero, one}};
        CHECK_MESSAGE(generated_congruence(a, gen).is_nabla(), a.name());
    }
}

TEST_CASE("family and chain files round trip") {
    MalcevFamily fam = parse_malcev_family(slurp(std::string(UA_DATA_DIR) +
                                                 "/family_constant_x.json"));
    CHECK(fam.N == 2);
    CHECK(fam.n == 1);
    CHECK_NOTHROW(fam.validate(build_L(2, false).signature()));
    MalcevFamily fam2 = parse_malcev_family(print_malcev_family(fam));
    CHECK(fam2.L.size() == fam.L.size());
    CHECK(term_equal(fam2.R.at({}), Term::leaf("y")));

    UChain chain = parse_u_chain(slurp(std::string(UA_DATA_DIR) + "/uchain.json"));
    CHECK(chain.k() == 5);
    UChain chain2 = parse_u_chain(print_u_chain(chain));
    CHECK(chain2.k() == 5);
    CHECK(term_equal(chain2.terms[0], parse_term("+(x,z)")));
}

TEST_CASE("family validation rejects arity violations") {
    MalcevFamily fam = testing::sample_family();
    fam.s = {parse_term("+(x1,z)")};  // x1 is outside the s1 prefix
    CHECK_THROWS_AS(fam.validate(build_L(2, false).signature()), error);

    MalcevFamily fam2 = testing::sample_family();
    fam2.L[{}] = Term::leaf("y");
    CHECK_THROWS_AS(fam2.validate(build_L(2, false).signature()), error);
}
