#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <vector>

namespace lk3 {

using Int = mpz_class;
// mpq_class keeps numerator and denominator coprime with a positive denominator.
using Rat = mpq_class;

Rat make_rat(const Int& num, const Int& den);
Rat parse_rat(const std::string& text);
std::string to_string(const Int& v);
std::string to_string(const Rat& v);

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
Int abs(const Int& a);
int sign(const Int& a);
int sign(const Rat& a);
bool is_square(const Int& n);
Int isqrt(const Int& n);  // floor of the square root, n >= 0

/// Element a + b*sqrt(d) of Q(sqrt d), d squarefree and different from 0, 1.
class QuadElem {
public:
    QuadElem(Rat a, Rat b, long d);
    static QuadElem rational(const Rat& a, long d) { return QuadElem(a, Rat(0), d); }

    const Rat& a() const { return a_; }
    const Rat& b() const { return b_; }
    long d() const { return d_; }

    QuadElem operator+(const QuadElem& o) const;
    QuadElem operator-(const QuadElem& o) const;
    QuadElem operator-() const;
    QuadElem operator*(const QuadElem& o) const;
    QuadElem operator/(const QuadElem& o) const;
    QuadElem operator*(const Rat& r) const;
    QuadElem operator+(const Rat& r) const;

    QuadElem conjugate() const;
    Rat norm() const;  // a^2 - d b^2
    Rat trace() const;
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    bool operator==(const QuadElem& o) const;
    std::string str() const;

private:
    void check_same(const QuadElem& o) const;
    Rat a_, b_;
    long d_;
};

/// Squarefree part of n with sign; n != 0.
Int squarefree_part(const Int& n);

/// Finite part of S: strictly increasing primes.
class PrimeSet {
public:
    PrimeSet() = default;
    explicit PrimeSet(std::vector<long> primes);
    PrimeSet(std::initializer_list<long> primes) : PrimeSet(std::vector<long>(primes)) {}

    const std::vector<long>& primes() const { return primes_; }
    bool contains(long p) const;
    bool contains(const Int& p) const;
    bool empty() const { return primes_.empty(); }
    std::size_t size() const { return primes_.size(); }
    std::string str() const;

    // |n| with every prime of S removed.
    Int strip(const Int& n) const;

private:
    std::vector<long> primes_;
};

bool is_prime(const Int& n);

/// Clears denominators, divides by the gcd and makes the first nonzero entry positive.
std::vector<Int> normalize_primitive(const std::vector<Rat>& coords);
std::vector<Int> normalize_primitive(const std::vector<Int>& coords);

bool is_s_unit(const Int& n, const PrimeSet& s);
unsigned long p_valuation(const Int& n, const Int& p);

/// Prime factorization of |n| as (prime, exponent) pairs in increasing order.
/// Uses trial division then Pollard rho; throws std::runtime_error when the
/// rho iteration budget is exhausted.
std::vector<std::pair<Int, unsigned>> factor(const Int& n, unsigned long rho_budget = 2000000);

/// Positive divisors of |n| in increasing order, n != 0.
std::vector<Int> divisors(const Int& n);

/// Legendre symbol (a/p) for an odd prime p.
int legendre(const Int& a, const Int& p);

}  // namespace lk3
