#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ringsum/ground.hpp"

using namespace ringsum;

namespace {

const std::vector<std::string> kNames = {"n", "m"};

ParamRational pr(long num, long den = 1) { return ParamRational(ParamPoly(Int(num)), ParamPoly(Int(den))); }

KPoly xpoly(std::vector<long> coeffs) {
    std::vector<Cyclotomic> c;
    for (long v : coeffs) c.push_back(Cyclotomic(v));
    return KPoly::from_coeffs(std::move(c));
}

std::mt19937_64 rng(20240811);

ParamRational rand_param_rational() {
    std::uniform_int_distribution<long> coin(0, 3);
    ParamPoly num(Int(0)), den(Int(1));
    for (int t = 0; t < 3; ++t) {
        Mono m;
        if (coin(rng) == 0) m = {1};
        std::uniform_int_distribution<long> c(-5, 5);
        num.add_term(m, Int(c(rng)));
    }
    if (num.is_zero()) num = ParamPoly(Int(1));
    if (coin(rng) == 0) {
        den = ParamPoly(Int(1)) + ParamPoly::variable(0);
    }
    return ParamRational(num, den);
}

Ground rand_ground() {
    std::uniform_int_distribution<long> deg(0, 2), c(-6, 6), dpick(0, 2);
    KPoly num, den(Cyclotomic(1L));
    std::vector<Cyclotomic> nc;
    for (long i = 0; i <= deg(rng); ++i) nc.push_back(Cyclotomic(Rat(c(rng))));
    num = KPoly::from_coeffs(nc);
    if (num.is_zero()) num = KPoly(Cyclotomic(1L));
    if (dpick(rng) == 0) den = xpoly({1, 1});  // x + 1
    if (dpick(rng) == 1) den = xpoly({0, 1});  // x
    return Ground(num, den);
}

}  // namespace

TEST_CASE("param polynomial gcd and canonical rational form") {
    ParamPoly n = ParamPoly::variable(0);
    ParamPoly a = (n + ParamPoly(1L)) * (n - ParamPoly(2L));
    ParamPoly b = (n + ParamPoly(1L)) * (n + ParamPoly(3L));
    ParamPoly g = ParamPoly::gcd(a, b);
    CHECK(g == n + ParamPoly(1L));

    // content + sign normalization
    ParamPoly c = ParamPoly(Int(-4)) * (n + ParamPoly(1L));
    ParamPoly d = ParamPoly(Int(6)) * (n + ParamPoly(1L));
    CHECK(ParamPoly::gcd(c, d) == ParamPoly(Int(2)) * (n + ParamPoly(1L)));

    ParamRational q(c, d);
    CHECK(q == ParamRational(ParamPoly(Int(-2)), ParamPoly(Int(3))));

    // two parameters
    ParamPoly mvar = ParamPoly::variable(1);
    ParamPoly p1 = (n * mvar + ParamPoly(1L)) * (n - mvar);
    ParamPoly p2 = (n * mvar + ParamPoly(1L)) * (n + mvar);
    CHECK(ParamPoly::gcd(p1, p2) == n * mvar + ParamPoly(1L));
}

TEST_CASE("field axioms on randomized parameter rationals") {
    for (int it = 0; it < 60; ++it) {
        ParamRational a = rand_param_rational(), b = rand_param_rational(), c = rand_param_rational();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) CHECK(a * a.inverse() == ParamRational(Int(1)));
    }
}

TEST_CASE("cyclotomic orders, lifting, inverses") {
    Cyclotomic z6 = Cyclotomic::zeta(6);
    CHECK(z6.pow(3) == Cyclotomic(-1L));
    CHECK(z6.pow(6).is_one());
    for (int j = 1; j < 6; ++j) CHECK_FALSE(z6.pow(j).is_one());

    Cyclotomic z3 = Cyclotomic::zeta(3);
    // zeta_3 = zeta_6^2
    CHECK(z3 == z6.pow(2));

    // inverse in Q(zeta_12)
    Cyclotomic z12 = Cyclotomic::zeta(12);
    Cyclotomic v = z12 + Cyclotomic(3L);
    CHECK((v * v.inverse()).is_one());
    CHECK_THROWS_AS(Cyclotomic().inverse(), Error);
}

TEST_CASE("primitive_root and root_of_unity_order per contract") {
    CHECK(Cyclotomic::zeta(2) == Cyclotomic(-1L));
    CHECK(Cyclotomic::zeta(1).is_one());
    CHECK_THROWS_AS(Cyclotomic::zeta(0), Error);

    CHECK(Cyclotomic(-1L).root_of_unity_order() == 2u);
    CHECK(Cyclotomic::zeta(3).root_of_unity_order() == 3u);
    CHECK(Cyclotomic(2L).root_of_unity_order() == std::nullopt);
    CHECK_THROWS_AS(Cyclotomic().root_of_unity_order(), Error);
    // c^m = 1 and c^j != 1 for 0 < j < m across the torsion group
    for (unsigned m : {2u, 3u, 4u, 6u, 12u}) {
        Cyclotomic z = Cyclotomic::zeta(m);
        auto ord = z.root_of_unity_order();
        REQUIRE(ord.has_value());
        CHECK(*ord == m);
        CHECK(z.pow(*ord).is_one());
        for (unsigned j = 1; j < *ord; ++j) CHECK_FALSE(z.pow(j).is_one());
    }
    // parameter-dependent values are never roots of unity
    Cyclotomic withn{ParamRational::variable(0)};
    CHECK(withn.root_of_unity_order() == std::nullopt);
}

TEST_CASE("ground field normalize examples") {
    // (x^2 - 1, x - 1) -> x + 1
    Ground a(xpoly({-1, 0, 1}), xpoly({-1, 1}));
    CHECK(a == Ground(xpoly({1, 1}), xpoly({1})));
    // (2x, 2) -> x
    Ground b(xpoly({0, 2}), xpoly({2}));
    CHECK(b == Ground::variable());
    // ((n - x)(x+1), (x+1)^2) -> (n - x)/(x + 1): verified by cross-products
    Cyclotomic n{ParamRational::variable(0)};
    KPoly nx = KPoly::from_coeffs({n, Cyclotomic(-1L)});  // n - x
    Ground c(nx * xpoly({1, 1}), xpoly({1, 1}) * xpoly({1, 1}));
    CHECK(c.num() * xpoly({1, 1}) == nx * c.den());
    CHECK(c.den() == xpoly({1, 1}));
    // scale invariance: normalize(a,b) == normalize(ca, cb)
    Ground c2(nx * xpoly({1, 1}) * xpoly({3, 7}), xpoly({1, 1}) * xpoly({1, 1}) * xpoly({3, 7}));
    CHECK(c == c2);
    CHECK_THROWS_WITH_AS(Ground(xpoly({1}), KPoly()), "division by zero", Error);
}

TEST_CASE("shift is a field automorphism and composes additively") {
    Ground x = Ground::variable();
    CHECK(x.shifted(1) == x + Ground(1L));
    Ground inv_x1 = (x + Ground(1L)).inverse();
    CHECK(inv_x1.shifted(-1) == x.inverse());
    Cyclotomic n{ParamRational::variable(0)};
    Ground f = (Ground(n) - x) / (x + Ground(1L));
    Ground expect = (Ground(n) - x - Ground(1L)) / (x + Ground(2L));
    CHECK(f.shifted(1) == expect);
    for (int it = 0; it < 40; ++it) {
        Ground g = rand_ground(), h = rand_ground();
        long j = (long)(rng() % 7) - 3;
        CHECK((g * h).shifted(j) == g.shifted(j) * h.shifted(j));
        CHECK((g + h).shifted(j) == g.shifted(j) + h.shifted(j));
        CHECK(g.shifted(j).shifted(-j) == g);
        long j2 = (long)(rng() % 5) - 2;
        CHECK(g.shifted(j).shifted(j2) == g.shifted(j + j2));
    }
}

TEST_CASE("integer roots identically in parameters") {
    KPoly x = KPoly::variable();
    // x(x+1) -> {0, -1}
    CHECK(integer_roots(x * xpoly({1, 1})) == std::set<long>{0, -1});
    // x^2 + 1 -> {}
    CHECK(integer_roots(xpoly({1, 0, 1})).empty());
    // (x - 3)(x^2 - n) -> {3}
    Cyclotomic n{ParamRational::variable(0)};
    KPoly p = xpoly({-3, 1}) * KPoly::from_coeffs({-n, Cyclotomic(0L), Cyclotomic(1L)});
    CHECK(integer_roots(p) == std::set<long>{3});
    CHECK_THROWS_AS(integer_roots(KPoly()), Error);
}

TEST_CASE("dispersion") {
    KPoly x = KPoly::variable();
    CHECK(dispersion(x, x) == std::set<long>{0});
    CHECK(dispersion(x, xpoly({3, 1})) == std::set<long>{3});
    CHECK(dispersion(xpoly({1, 0, 1}), x).empty());
    CHECK(dispersion(x * xpoly({5, 1}), x) == std::set<long>{0});
    CHECK(dispersion(x, x * xpoly({5, 1})) == std::set<long>{0, 5});
    CHECK_THROWS_AS(dispersion(KPoly(), x), Error);
}

TEST_CASE("normalize is idempotent and arithmetic congruence") {
    for (int it = 0; it < 40; ++it) {
        Ground g = rand_ground(), h = rand_ground();
        Ground sum = g + h;
        CHECK(Ground(sum.num(), sum.den()) == sum);
        if (!h.is_zero()) {
            Ground q = g / h;
            CHECK(q * h == g);
        }
    }
}

TEST_CASE("canonical rendering") {
    Cyclotomic n{ParamRational::variable(0)};
    Ground f = (Ground(n) - Ground::variable()) / (Ground::variable() + Ground(1L));
    CHECK(f.to_string(kNames) == "(-x+n)/(x+1)");
    Cyclotomic z6 = Cyclotomic::zeta(6);
    CHECK(z6.to_string(kNames) == "z");
    CHECK((z6 * Cyclotomic(2L) + Cyclotomic(1L)).to_string(kNames) == "1+2*z");
    CHECK(pr(-3, 2).to_string(kNames) == "-3/2");
}
