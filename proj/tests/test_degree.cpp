#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"
#include "novik/degree.hpp"

using namespace novik;
using novik_tests::cyclic_form;
using novik_tests::deg;
using novik_tests::sqrt2_form;

TEST_CASE("degree_of is the exact period pairing") {
    FormPtr chi = cyclic_form();
    CHECK(chi->degree_of({3}) == deg(chi, 3));
    CHECK(chi->degree_of({0}) == deg(chi, 0));

    FormPtr chi2 = sqrt2_form();
    DegreeValue d = chi2->degree_of({1, 1});  // 1 + xi
    CHECK(d.coeffs() == std::vector<Rat>{Rat(1), Rat(1)});

    CHECK_THROWS_AS(chi->degree_of({1, 2}), DimensionMismatch);
}

TEST_CASE("compare resolves signs through interval refinement") {
    FormPtr chi2 = sqrt2_form();
    DegreeValue one_plus_xi = chi2->degree_of({1, 1});
    DegreeValue two = deg(chi2, 2);
    CHECK(compare(one_plus_xi, two) == Ordering::Greater);  // 1 + 1.414213 > 2

    CHECK(compare(deg(cyclic_form(), 5, 2), deg(cyclic_form(), 5, 2)) == Ordering::Equal);

    DegreeValue xi = chi2->degree_of({0, 1});
    CHECK(compare(deg(chi2, 0), xi) == Ordering::Less);
}

TEST_CASE("compare refuses when every enclosure straddles the difference") {
    FormalRealBasis::Element xi;
    xi.name = "xi";
    xi.enclosures = {{Rat(14, 10), Rat(15, 10)}};  // coarse only
    auto basis =
        std::make_shared<FormalRealBasis>(std::vector<FormalRealBasis::Element>{xi});
    DegreeValue v(basis, {Rat(0), Rat(1)});
    DegreeValue threshold(basis, {Rat(29, 20), Rat(0)});  // 1.45 inside [1.4, 1.5]
    CHECK_THROWS_AS(compare(v, threshold), OrderingUndecidable);
    // exact equality never needs the enclosures
    CHECK(compare(v, v) == Ordering::Equal);
}

TEST_CASE("degree form construction validates positivity and injectivity") {
    auto basis = rational_basis();
    // q = 2 over the rational basis alone: periods are necessarily dependent
    CHECK_THROWS_AS(DegreeForm(basis,
                               {DegreeValue::rational(Rat(1)), DegreeValue::rational(Rat(2))}),
                    InvalidArgument);
    CHECK_THROWS_AS(DegreeForm(basis, {DegreeValue::rational(Rat(-1))}), InvalidArgument);
    CHECK_THROWS_AS(DegreeForm(basis, {DegreeValue::rational(Rat(0))}), InvalidArgument);
    CHECK_NOTHROW(DegreeForm(basis, {}));  // q = 0 is the compact Morse case
}

TEST_CASE("degree_of is additive and injective on sampled points") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> box(-5, 5);
    for (FormPtr chi : {cyclic_form(), sqrt2_form()}) {
        for (int trial = 0; trial < 200; ++trial) {
            LatticePoint n(chi->q()), m(chi->q());
            for (auto& v : n) v = box(rng);
            for (auto& v : m) v = box(rng);
            CHECK(chi->degree_of(lattice_add(n, m)) ==
                  chi->degree_of(n) + chi->degree_of(m));
            if (n != m)
                CHECK(compare(chi->degree_of(n), chi->degree_of(m)) != Ordering::Equal);
        }
    }
}

TEST_CASE("compare is a strict total order on sampled degree triples") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> box(-5, 5);
    FormPtr chi = sqrt2_form();
    auto rand_degree = [&]() {
        LatticePoint n(chi->q());
        for (auto& v : n) v = box(rng);
        return chi->degree_of(n);
    };
    for (int trial = 0; trial < 200; ++trial) {
        DegreeValue a = rand_degree(), b = rand_degree(), c = rand_degree();
        // antisymmetry
        if (compare(a, b) == Ordering::Less) CHECK(compare(b, a) == Ordering::Greater);
        if (compare(a, b) == Ordering::Equal) CHECK(compare(b, a) == Ordering::Equal);
        // transitivity
        if (compare(a, b) == Ordering::Less && compare(b, c) == Ordering::Less)
            CHECK(compare(a, c) == Ordering::Less);
    }
}

TEST_CASE("support classification certifies what the window shows") {
    FormPtr chi = cyclic_form();

    SupportSet finite(chi, {{0}, {1}, {2}});
    SupportClass c1 = classify_support(finite);
    CHECK(c1.slab_compact);
    CHECK(c1.forward);
    CHECK(c1.compact_forward);
    REQUIRE(c1.min_degree.has_value());
    CHECK(*c1.min_degree == deg(chi, 0));
    CHECK_FALSE(c1.window_hi.has_value());

    SupportSet empty(chi, {});
    SupportClass c2 = classify_support(empty);
    CHECK(c2.slab_compact);
    CHECK(c2.forward);
    CHECK(c2.compact_forward);

    // Deepening truncations of { (-k) : k >= 0 }: no single lower bound
    // survives, and no truncation ever certifies forwardness.
    DegreeValue prev = deg(chi, 1);
    for (int depth = 1; depth <= 5; ++depth) {
        std::set<LatticePoint> pts;
        for (int k = 0; k <= depth; ++k) pts.insert({-k});
        SupportSet trunc(chi, pts, deg(chi, 1));
        SupportClass c = classify_support(trunc);
        CHECK(c.slab_compact);
        CHECK_FALSE(c.forward);
        CHECK_FALSE(c.compact_forward);
        REQUIRE(c.min_degree.has_value());
        CHECK(degree_less(*c.min_degree, prev));  // min degree decreases past any bound
        prev = *c.min_degree;
    }

    CHECK_THROWS_AS(SupportSet(chi, {{5}}, deg(chi, 2)), InvalidArgument);
}
