#include "doctest.h"
#include "lk3/poly.hpp"

#include <random>

using namespace lk3;

namespace {
HomogForm bin(std::initializer_list<long> c) {
    std::vector<Rat> v;
    for (auto x : c) v.push_back(Rat(x));
    return binary(v);
}
}  // namespace

TEST_CASE("monomial order is graded lex") {
    const auto& m = monomials(3, 2);
    REQUIRE(m.size() == 6);
    CHECK(m[0] == Exps{2, 0, 0, 0});
    CHECK(m[1] == Exps{1, 1, 0, 0});
    CHECK(m[2] == Exps{1, 0, 1, 0});
    CHECK(m[3] == Exps{0, 2, 0, 0});
    CHECK(m[5] == Exps{0, 0, 2, 0});
    CHECK(monomials(4, 3).size() == 20);
}

TEST_CASE("form arithmetic, derivative, division") {
    auto x = HomogForm::variable(3, 0), y = HomogForm::variable(3, 1), z = HomogForm::variable(3, 2);
    HomogForm f = z * y * y - x.pow(3) - z.pow(3);
    CHECK(f.str() == "-x^3 + y^2*z - z^3");
    CHECK(f.eval(std::vector<Int>{2, 3, 1}) == 0);
    CHECK(f.eval(std::vector<Int>{0, 0, 1}) == -1);
    CHECK(f.derivative(0) == x * x * Rat(-3));
    auto q = (f * (x + y)).divide_exact(x + y);
    REQUIRE(q.has_value());
    CHECK(*q == f);
    CHECK_FALSE(f.divide_exact(x).has_value());
    auto [qq, r] = f.divmod(z);
    CHECK(qq * z + r == f);
}

TEST_CASE("compose restricts to lines") {
    auto x = HomogForm::variable(3, 0), y = HomogForm::variable(3, 1), z = HomogForm::variable(3, 2);
    HomogForm f = z * y * y - x.pow(3) - z.pow(3);
    auto s = HomogForm::variable(2, 0), t = HomogForm::variable(2, 1);
    HomogForm zero(2, 1);
    CHECK(f.compose({s, t, zero}) == s.pow(3) * Rat(-1));
    HomogForm c = x * x + y * y - z * z;
    CHECK(c.compose({s, zero, t}) == s * s - t * t);
}

TEST_CASE("resultant examples") {
    CHECK(resultant(bin({1, 0}), bin({0, 1})) == 1);
    CHECK(resultant(bin({1, -1}), bin({1, 1})) == 2);
    CHECK(resultant(bin({1, 0, 0}), bin({0, 1, 0})) == 0);
}

TEST_CASE("rational roots examples") {
    auto r = binary_rational_roots(bin({-1, 0, 0, 0}));
    REQUIRE(r.size() == 1);
    CHECK(r[0].s == 0);
    CHECK(r[0].t == 1);
    CHECK(r[0].multiplicity == 3);
    CHECK(binary_rational_roots(bin({1, 0, -2})).empty());
    auto r3 = binary_rational_roots(bin({0, 1, -1, 0}));
    REQUIRE(r3.size() == 3);
    int total = 0;
    for (auto& root : r3) total += root.multiplicity;
    CHECK(total == 3);
    CHECK_THROWS(binary_rational_roots(bin({0, 0})));
}

TEST_CASE("rational roots of products of random linear factors") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-40, 40);
    for (int trial = 0; trial < 60; ++trial) {
        UPoly p(std::vector<Rat>{Rat(1 + (trial % 3))});
        std::vector<Rat> expect;
        int k = 1 + trial % 6;
        for (int i = 0; i < k; ++i) {
            Rat r = make_rat(d(rng), 1 + (d(rng) + 40) % 9);
            expect.push_back(r);
            p = p * UPoly(std::vector<Rat>{-r, Rat(1)});
        }
        // an irreducible quadratic factor should not add roots
        p = p * UPoly(std::vector<Rat>{Rat(-7), Rat(0), Rat(1)});
        auto roots = rational_roots(p);
        int total = 0;
        for (auto& [r, m] : roots) {
            CHECK(p.eval(r) == 0);
            total += m;
        }
        CHECK(total == k);
    }
}

TEST_CASE("resultant vanishes iff common factor") {
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> d(-5, 5);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Rat> a(3), b(3), c(2);
        for (auto& v : a) v = d(rng);
        for (auto& v : b) v = d(rng);
        for (auto& v : c) v = d(rng);
        HomogForm fa = binary(a), fb = binary(b), fc = binary(c);
        if (fa.is_zero() || fb.is_zero() || fc.is_zero()) continue;
        bool common = binary_gcd(fa, fb).degree() > 0;
        CHECK((resultant(fa, fb) == 0) == common);
        CHECK(resultant(fa * fc, fb * fc) == 0);
    }
}

TEST_CASE("squarefree decomposition of binary forms") {
    HomogForm q = bin({1, 0, -2});
    HomogForm f = q.pow(3) * bin({0, 1}).pow(2) * Rat(5);
    auto sq = binary_squarefree(f);
    int deg = 0;
    for (auto& [fac, m] : sq) deg += fac.degree() * m;
    CHECK(deg == 8);
    bool found = false;
    for (auto& [fac, m] : sq)
        if (m == 3) found = fac.proportional(q);
    CHECK(found);
}
