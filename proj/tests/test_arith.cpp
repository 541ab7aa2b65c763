#include "doctest.h"
#include "lk3/arith.hpp"
#include "lk3/intmat.hpp"

#include <random>

using namespace lk3;

namespace {
std::vector<Rat> rv(std::initializer_list<const char*> xs) {
    std::vector<Rat> v;
    for (auto x : xs) v.push_back(parse_rat(x));
    return v;
}
std::vector<Int> iv(std::initializer_list<long> xs) {
    std::vector<Int> v;
    for (auto x : xs) v.push_back(Int(x));
    return v;
}
}  // namespace

TEST_CASE("normalize_primitive examples") {
    CHECK(normalize_primitive(rv({"2/3", "1", "0"})) == iv({2, 3, 0}));
    CHECK(normalize_primitive(rv({"0", "0", "1"})) == iv({0, 0, 1}));
    CHECK(normalize_primitive(rv({"-4", "-6", "-10"})) == iv({2, 3, 5}));
    CHECK_THROWS_AS(normalize_primitive(rv({"0", "0", "0"})), std::invalid_argument);
}

TEST_CASE("normalize_primitive is idempotent and scale invariant") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-30, 30);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Rat> v;
        for (int i = 0; i < 3; ++i) v.push_back(make_rat(d(rng), 1 + (d(rng) + 30) % 7));
        if (v[0] == 0 && v[1] == 0 && v[2] == 0) continue;
        auto n = normalize_primitive(v);
        CHECK(normalize_primitive(n) == n);
        Rat c = make_rat(d(rng) == 0 ? 3 : d(rng) | 1, 1 + (d(rng) + 30) % 5);
        if (c == 0) continue;
        std::vector<Rat> w;
        for (auto& x : v) w.push_back(x * c);
        CHECK(normalize_primitive(w) == n);
    }
}

TEST_CASE("is_s_unit examples and multiplicativity") {
    CHECK(is_s_unit(Int(8), PrimeSet{2}));
    CHECK_FALSE(is_s_unit(Int(6), PrimeSet{2}));
    CHECK(is_s_unit(Int(-1), PrimeSet{}));
    CHECK_THROWS_AS(is_s_unit(Int(0), PrimeSet{}), std::invalid_argument);
    PrimeSet s{2, 5};
    for (long m = 1; m < 60; ++m)
        for (long n = -20; n < 20; ++n) {
            if (n == 0) continue;
            CHECK(is_s_unit(Int(m * n), s) == (is_s_unit(Int(m), s) && is_s_unit(Int(n), s)));
        }
}

TEST_CASE("PrimeSet validation") {
    CHECK_THROWS(PrimeSet{4});
    CHECK_THROWS(PrimeSet{5, 3});
    CHECK(PrimeSet{2, 3, 7}.contains(7L));
}

TEST_CASE("p_valuation examples") {
    CHECK(p_valuation(Int(12), Int(2)) == 2);
    CHECK(p_valuation(Int(7), Int(2)) == 0);
    CHECK(p_valuation(Int(-250), Int(5)) == 3);
    CHECK_THROWS_AS(p_valuation(Int(0), Int(3)), std::invalid_argument);
}

TEST_CASE("QuadElem norm is multiplicative") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-9, 9);
    for (long rad : {2L, 3L, -1L, -3L, 5L, 10L}) {
        for (int i = 0; i < 50; ++i) {
            QuadElem x(make_rat(d(rng), 1 + (d(rng) + 9) % 4), Rat(d(rng)), rad);
            QuadElem y(Rat(d(rng)), make_rat(d(rng), 1 + (d(rng) + 9) % 3), rad);
            CHECK((x * y).norm() == x.norm() * y.norm());
            if (!y.is_zero()) CHECK((x / y) * y == x);
        }
    }
    CHECK_THROWS(QuadElem(Rat(1), Rat(1), 8));
}

TEST_CASE("factor and divisors") {
    auto f = factor(Int(360));
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::make_pair(Int(2), 3u));
    CHECK(divisors(Int(12)).size() == 6);
    Int big = Int("1000000007") * Int("998244353") * 12;
    auto g = factor(big);
    CHECK(g.back().first == Int("1000000007"));
    CHECK(squarefree_part(Int(-72)) == -2);
}

TEST_CASE("smith normal form and kernels") {
    IntMat a{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
    auto s = smith_normal_form(a);
    CHECK(s.diag == iv({2, 6, 12}));
    IntMat d = int_mul(int_mul(s.u, a), s.v);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(d[i][j] == (i == j ? s.diag[i] : Int(0)));
    auto k = integer_kernel(IntMat{{1, 2, 3, 4}});
    CHECK(k.size() == 3);
    for (auto& v : k) CHECK(v[0] + 2 * v[1] + 3 * v[2] + 4 * v[3] == 0);
    auto u = unimodular_completion(iv({2, 3, 1}));
    CHECK(abs(det(u)) == 1);
    CHECK(u[0][0] == 2);
    CHECK(u[1][0] == 3);
    CHECK(u[2][0] == 1);
}
