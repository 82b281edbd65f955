#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"
#include "novik/series.hpp"

using namespace novik;
using novik_tests::cyclic_form;
using novik_tests::deg;
using novik_tests::random_sparse;
using novik_tests::sqrt2_form;

namespace {

ZSeries zs(const FormPtr& form, std::initializer_list<std::pair<int, int>> terms,
           std::optional<int> cutoff = std::nullopt) {
    ZSeries::term_map m;
    for (auto [e, c] : terms) m[{e}] = Int(c);
    Cutoff cut;
    if (cutoff) cut = novik_tests::deg(form, *cutoff);
    return ZSeries(form, std::move(m), cut);
}

QSeries qs(const FormPtr& form, std::initializer_list<std::pair<int, Rat>> terms,
           std::optional<int> cutoff = std::nullopt) {
    QSeries::term_map m;
    for (auto& [e, c] : terms) m[{e}] = c;
    Cutoff cut;
    if (cutoff) cut = novik_tests::deg(form, *cutoff);
    return QSeries(form, std::move(m), cut);
}

}  // namespace

TEST_CASE("addition is termwise with the minimum cutoff") {
    FormPtr f = cyclic_form();
    CHECK(add(zs(f, {{0, 1}, {1, -1}}), zs(f, {{1, 1}})) == ZSeries::one(f));
    CHECK(add(zs(f, {{0, 1}, {1, 1}}, 3), zs(f, {{2, 1}}, 2)) == zs(f, {{0, 1}, {1, 1}}, 2));
    ZSeries a = zs(f, {{0, 2}, {2, 5}});
    CHECK(add(a, ZSeries::zero(f)) == a);
}

TEST_CASE("multiplication is the Cauchy product with certified cutoffs") {
    FormPtr f = cyclic_form();
    CHECK(mul(zs(f, {{0, 1}, {1, -1}}), zs(f, {{0, 1}, {1, 1}})) == zs(f, {{0, 1}, {2, -1}}));

    ZSeries geom = zs(f, {{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}}, 5);
    ZSeries telescoped = mul(geom, zs(f, {{0, 1}, {1, -1}}));
    CHECK(telescoped == zs(f, {{0, 1}}, 5));

    ZSeries a = zs(f, {{-1, 2}, {0, 3}, {1, 1}});
    CHECK(mul(a, ZSeries::one(f)) == a);

    ZSeries ambiguous(f, {}, deg(f, 4));
    CHECK_THROWS_AS(mul(a, ambiguous), ZeroAmbiguity);
    CHECK(mul(a, ZSeries::zero(f)).is_exact_zero());
}

TEST_CASE("degs lists stored degrees strictly increasing") {
    FormPtr f = cyclic_form();
    auto d = degs(zs(f, {{-1, 2}, {0, 3}, {1, 1}}));
    REQUIRE(d.size() == 3);
    CHECK(d[0] == deg(f, -1));
    CHECK(d[1] == deg(f, 0));
    CHECK(d[2] == deg(f, 1));
    CHECK(degs(ZSeries::zero(f)).empty());

    FormPtr f2 = sqrt2_form();
    ZSeries m = ZSeries::monomial(f2, {1, 1}, Int(1));
    auto d2 = degs(m);
    REQUIRE(d2.size() == 1);
    CHECK(d2[0] == f2->degree_of({1, 1}));
}

TEST_CASE("leading picks the minimal-degree term") {
    FormPtr f = cyclic_form();
    auto l = leading(zs(f, {{-1, 2}, {0, 3}, {1, 1}}));
    CHECK(l.exponent == LatticePoint{-1});
    CHECK(l.coefficient == 2);

    auto l2 = leading(zs(f, {{0, 1}, {1, -1}}));
    CHECK(l2.exponent == LatticePoint{0});
    CHECK(l2.coefficient == 1);

    // 5 t^(2,0) - t^(0,3): 2 < 3 xi by interval evaluation
    FormPtr f2 = sqrt2_form();
    ZSeries::term_map tm;
    tm[{2, 0}] = Int(5);
    tm[{0, 3}] = Int(-1);
    auto l3 = leading(ZSeries(f2, std::move(tm)));
    CHECK(l3.exponent == LatticePoint{2, 0});

    CHECK_THROWS_AS(leading(ZSeries::zero(f)), ExactZero);
    CHECK_THROWS_AS(leading(ZSeries(f, {}, deg(f, 3))), ZeroAmbiguity);
}

TEST_CASE("units are detected by the leading coefficient") {
    FormPtr f = cyclic_form();
    CHECK(is_unit(zs(f, {{0, 1}, {1, -1}})));
    CHECK_FALSE(is_unit(zs(f, {{0, 2}, {1, 1}})));
    CHECK(is_unit(qs(f, {{0, Rat(2)}, {1, Rat(1)}})));
    CHECK(is_unit(zs(f, {{-5, 1}})));
    CHECK_FALSE(is_unit(ZSeries::zero(f)));
}

TEST_CASE("invert sums the geometric series through the window") {
    FormPtr f = cyclic_form();

    ZSeries inv = invert(zs(f, {{0, 1}, {1, -1}}), deg(f, 5));
    CHECK(inv == zs(f, {{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}}, 5));
    CHECK(agree_below(mul(zs(f, {{0, 1}, {1, -1}}), inv), ZSeries::one(f), deg(f, 5)));

    QSeries invq = invert(qs(f, {{0, Rat(2)}, {1, Rat(1)}}), deg(f, 3));
    CHECK(invq == qs(f, {{0, Rat(1, 2)}, {1, Rat(-1, 4)}, {2, Rat(1, 8)}}, 3));
    CHECK(agree_below(mul(qs(f, {{0, Rat(2)}, {1, Rat(1)}}), invq), QSeries::one(f), deg(f, 3)));

    ZSeries mono = invert(zs(f, {{3, 1}}), deg(f, 2));
    CHECK(mono == zs(f, {{-3, 1}}));  // exact
    CHECK(mono.is_exact());

    CHECK_THROWS_AS(invert(zs(f, {{0, 2}, {1, 1}}), deg(f, 3)), NotAUnit);
    CHECK_THROWS_AS(invert(zs(f, {{0, 1}, {1, 1}}, 2), deg(f, 5)), PrecisionExhausted);
}

TEST_CASE("divide runs the leading-term cancellation exactly") {
    FormPtr f = cyclic_form();

    ZSeries q = divide(zs(f, {{0, 1}, {2, -1}}), zs(f, {{0, 1}, {1, -1}}), deg(f, 10));
    CHECK(q == zs(f, {{0, 1}, {1, 1}}));  // exact termination
    CHECK(q.is_exact());
    CHECK(mul(q, zs(f, {{0, 1}, {1, -1}})) == zs(f, {{0, 1}, {2, -1}}));

    ZSeries q2 = divide(ZSeries::one(f), zs(f, {{0, 1}, {1, -1}}), deg(f, 4));
    CHECK(q2 == zs(f, {{0, 1}, {1, 1}, {2, 1}, {3, 1}}, 4));

    try {
        divide(zs(f, {{0, 3}, {1, 1}}), zs(f, {{0, 2}}), deg(f, 10));
        FAIL("expected NotDivisible");
    } catch (const NotDivisible& e) {
        CHECK(e.step == 0);
    }

    CHECK(divide(ZSeries::zero(f), zs(f, {{0, 2}}), deg(f, 5)).is_exact_zero());
    CHECK_THROWS_AS(divide(zs(f, {{0, 1}}), ZSeries::zero(f), deg(f, 5)), InvalidArgument);
    CHECK_THROWS_AS(divide(zs(f, {{0, 1}}), ZSeries(f, {}, deg(f, 9)), deg(f, 5)),
                    ZeroAmbiguity);
    CHECK_THROWS_AS(divide(zs(f, {{0, 1}}, 3), zs(f, {{0, 1}, {1, -1}}), deg(f, 5)),
                    PrecisionExhausted);
}

TEST_CASE("euclid_step divides leading coefficients with small remainder") {
    FormPtr f = cyclic_form();

    auto [q1, r1] = euclid_step(zs(f, {{0, 3}, {1, 1}}), zs(f, {{0, 2}}));
    CHECK(q1 == ZSeries::one(f));
    CHECK(r1 == zs(f, {{0, 1}, {1, 1}}));

    auto [q2, r2] = euclid_step(zs(f, {{0, 4}}), zs(f, {{0, 2}}));
    CHECK(q2 == zs(f, {{0, 2}}));
    CHECK(r2.is_exact_zero());

    auto [q3, r3] = euclid_step(zs(f, {{1, 1}}), zs(f, {{0, 1}, {1, -1}}));
    CHECK(q3 == zs(f, {{1, 1}}));
    CHECK(r3 == zs(f, {{2, 1}}));
}

TEST_CASE("repeated euclid_step descends in norm within any window") {
    FormPtr f = cyclic_form();
    std::mt19937_64 rng(23);
    DegreeValue window = deg(f, 8);
    int informative = 0;
    for (int trial = 0; trial < 300; ++trial) {
        ZSeries gamma = random_sparse<Int>(rng, f);
        ZSeries alpha = random_sparse<Int>(rng, f);
        if (!gamma.has_terms() || !alpha.has_terms()) continue;
        ++informative;
        Int norm = abs(leading(alpha).coefficient);
        ZSeries rem = gamma.truncated(window);
        int guard = 0;
        while (rem.has_terms() && abs(leading(rem).coefficient) >= norm) {
            rem = euclid_step(rem, alpha).second.truncated(window);
            REQUIRE(++guard < 10000);
        }
        if (rem.has_terms()) CHECK(abs(leading(rem).coefficient) < norm);
    }
    CHECK(informative > 100);
}

TEST_CASE("gcd returns a canonical common divisor through the window") {
    FormPtr f = cyclic_form();
    DegreeValue m = deg(f, 10);

    ZSeries g = gcd(zs(f, {{0, 2}, {1, -2}}), zs(f, {{0, 4}}), m);
    CHECK(g == zs(f, {{0, 2}}));
    CHECK_NOTHROW(divide(zs(f, {{0, 2}, {1, -2}}), g, m));
    CHECK_NOTHROW(divide(zs(f, {{0, 4}}), g, m));

    CHECK(gcd(zs(f, {{0, 1}, {1, -1}}), zs(f, {{0, 7}, {2, 3}}), m) == ZSeries::one(f));

    ZSeries beta = zs(f, {{0, -2}, {1, 4}});
    ZSeries g2 = gcd(ZSeries::zero(f), beta, m);
    CHECK(agree_below(g2, zs(f, {{0, 2}}), m));  // -2 + 4t = -2(1 - 2t), associate of 2

    CHECK(gcd(zs(f, {{0, 2}}), zs(f, {{0, 3}}), m) == ZSeries::one(f));
    CHECK_THROWS_AS(gcd(ZSeries::zero(f), ZSeries::zero(f), m), InvalidArgument);
}

TEST_CASE("canonicalize maps associates to one representative") {
    FormPtr f = cyclic_form();
    DegreeValue m = deg(f, 10);

    Canonical c1 = canonicalize(zs(f, {{0, 2}, {1, -2}}), m);
    CHECK(c1.canonical == zs(f, {{0, 2}}));
    CHECK(agree_below(mul(c1.unit, zs(f, {{0, 2}, {1, -2}})), c1.canonical, m));

    Canonical c2 = canonicalize(zs(f, {{0, 1}, {1, -1}}), m);
    CHECK(c2.canonical == ZSeries::one(f));

    Canonical c3 = canonicalize(zs(f, {{0, 2}, {1, 1}}), m);
    CHECK(c3.canonical == zs(f, {{0, 2}, {1, 1}}));  // already canonical: 1 in [0, 2)

    // 2 - t normalizes by the reduction sweep; verify the unit relation and
    // that every non-leading coefficient lands in [0, 2).
    ZSeries a = zs(f, {{0, 2}, {1, -1}});
    Canonical c4 = canonicalize(a, m);
    CHECK(is_unit(c4.unit));
    CHECK(agree_below(detail::mul_certified(c4.unit, a), c4.canonical, m));
    for (const auto& [n, c] : c4.canonical.terms()) {
        if (n == LatticePoint{0}) {
            CHECK(c == 2);
        } else {
            CHECK(c >= 0);
            CHECK(c < 2);
        }
    }

    // associates produced by unit multiplication normalize identically
    ZSeries unit = zs(f, {{0, 1}, {1, 1}, {2, -1}});
    Canonical c5 = canonicalize(mul(a, unit).truncated(m), m);
    CHECK(agree_below(c5.canonical, c4.canonical, m));
}

TEST_CASE("leading data is multiplicative on random sparse series") {
    std::mt19937_64 rng(5);
    for (FormPtr f : {cyclic_form(), sqrt2_form()}) {
        int informative = 0;
        for (int trial = 0; trial < 250; ++trial) {
            ZSeries a = random_sparse<Int>(rng, f);
            ZSeries b = random_sparse<Int>(rng, f);
            if (!a.has_terms() || !b.has_terms()) continue;
            ++informative;
            auto la = leading(a), lb = leading(b), lab = leading(mul(a, b));
            CHECK(lab.coefficient == la.coefficient * lb.coefficient);
            CHECK(lab.valuation == la.valuation + lb.valuation);
        }
        CHECK(informative > 80);
    }
}

TEST_CASE("ring axioms hold through the propagated cutoff") {
    std::mt19937_64 rng(13);
    FormPtr f = sqrt2_form();
    for (int trial = 0; trial < 100; ++trial) {
        ZSeries a = random_sparse<Int>(rng, f);
        ZSeries b = random_sparse<Int>(rng, f);
        ZSeries c = random_sparse<Int>(rng, f);
        CHECK(add(a, b) == add(b, a));
        if (a.has_terms() && b.has_terms()) CHECK(mul(a, b) == mul(b, a));
        if (a.has_terms() && b.has_terms() && c.has_terms()) {
            CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
            ZSeries lhs = mul(a, add(b, c));
            ZSeries rhs = add(mul(a, b), mul(a, c));
            CHECK(lhs == rhs);  // all operands exact here
        }
    }
}

TEST_CASE("division round-trips products on random sparse series") {
    std::mt19937_64 rng(17);
    FormPtr f = cyclic_form();
    DegreeValue m = deg(f, 8);
    int informative = 0;
    for (int trial = 0; trial < 500; ++trial) {
        ZSeries beta = random_sparse<Int>(rng, f);
        ZSeries alpha = random_sparse<Int>(rng, f);
        if (!beta.has_terms() || !alpha.has_terms()) continue;
        if (!coeff_is_unit(leading(alpha).coefficient)) continue;
        ++informative;
        ZSeries q = divide(mul(beta, alpha), alpha, m);
        if (q.is_exact()) {
            CHECK(q == beta);
        } else {
            CHECK(agree_below(q, beta, *q.cutoff()));
        }
        CHECK(agree_below(mul(q, alpha), mul(beta, alpha), m));
    }
    CHECK(informative > 40);
}
