#include "lk3/arith.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lk3 {

Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat parse_rat(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational");
    auto slash = text.find('/');
    auto parse_int = [](const std::string& s) {
        if (s.empty()) throw std::invalid_argument("bad integer");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw std::invalid_argument("bad integer '" + s + "'");
        for (std::size_t k = i; k < s.size(); ++k)
            if (s[k] < '0' || s[k] > '9') throw std::invalid_argument("bad integer '" + s + "'");
        return Int(s[0] == '+' ? s.substr(1) : s, 10);
    };
    if (slash == std::string::npos) return Rat(parse_int(text));
    return make_rat(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string to_string(const Int& v) { return v.get_str(); }
std::string to_string(const Rat& v) { return v.get_str(); }

Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }
int sign(const Int& a) { return sgn(a); }
int sign(const Rat& a) { return sgn(a); }

bool is_square(const Int& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

Int isqrt(const Int& n) {
    if (n < 0) throw std::invalid_argument("isqrt of negative");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// ---------------------------------------------------------------- QuadElem

QuadElem::QuadElem(Rat a, Rat b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (d == 0) throw std::invalid_argument("QuadElem: d must be nonzero");
    if (squarefree_part(Int(d)) != d) throw std::invalid_argument("QuadElem: d must be squarefree");
}

void QuadElem::check_same(const QuadElem& o) const {
    if (o.d_ != d_) throw std::invalid_argument("QuadElem: mismatched radicands");
}

QuadElem QuadElem::operator+(const QuadElem& o) const {
    check_same(o);
    return QuadElem(a_ + o.a_, b_ + o.b_, d_);
}
QuadElem QuadElem::operator-(const QuadElem& o) const {
    check_same(o);
    return QuadElem(a_ - o.a_, b_ - o.b_, d_);
}
QuadElem QuadElem::operator-() const { return QuadElem(-a_, -b_, d_); }
QuadElem QuadElem::operator*(const QuadElem& o) const {
    check_same(o);
    return QuadElem(a_ * o.a_ + Rat(d_) * b_ * o.b_, a_ * o.b_ + b_ * o.a_, d_);
}
QuadElem QuadElem::operator/(const QuadElem& o) const {
    check_same(o);
    Rat n = o.norm();
    if (n == 0) throw std::domain_error("QuadElem: division by a zero divisor");
    QuadElem num = *this * o.conjugate();
    return QuadElem(num.a_ / n, num.b_ / n, d_);
}
QuadElem QuadElem::operator*(const Rat& r) const { return QuadElem(a_ * r, b_ * r, d_); }
QuadElem QuadElem::operator+(const Rat& r) const { return QuadElem(a_ + r, b_, d_); }
QuadElem QuadElem::conjugate() const { return QuadElem(a_, -b_, d_); }
Rat QuadElem::norm() const { return a_ * a_ - Rat(d_) * b_ * b_; }
Rat QuadElem::trace() const { return 2 * a_; }
bool QuadElem::operator==(const QuadElem& o) const { return d_ == o.d_ && a_ == o.a_ && b_ == o.b_; }

std::string QuadElem::str() const {
    std::ostringstream os;
    if (b_ == 0) {
        os << a_.get_str();
    } else {
        if (a_ != 0) os << a_.get_str() << (b_ > 0 ? "+" : "-");
        else if (b_ < 0) os << "-";
        Rat ab = b_ < 0 ? Rat(-b_) : b_;
        if (ab != 1) os << ab.get_str() << "*";
        os << "sqrt(" << d_ << ")";
    }
    return os.str();
}

Int squarefree_part(const Int& n) {
    if (n == 0) throw std::invalid_argument("squarefree_part of 0");
    Int out = n < 0 ? Int(-1) : Int(1);
    for (const auto& [p, e] : factor(n))
        if (e % 2 == 1) out *= p;
    return out;
}

// ---------------------------------------------------------------- primes

bool is_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

PrimeSet::PrimeSet(std::vector<long> primes) : primes_(std::move(primes)) {
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        if (!is_prime(Int(primes_[i]))) throw std::invalid_argument("PrimeSet: " + std::to_string(primes_[i]) + " is not prime");
        if (i > 0 && primes_[i] <= primes_[i - 1]) throw std::invalid_argument("PrimeSet: entries must be strictly increasing");
    }
}

bool PrimeSet::contains(long p) const { return std::binary_search(primes_.begin(), primes_.end(), p); }

bool PrimeSet::contains(const Int& p) const { return p.fits_slong_p() && contains(p.get_si()); }

std::string PrimeSet::str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(primes_[i]);
    }
    return s + "}";
}

Int PrimeSet::strip(const Int& n) const {
    Int m = abs(n);
    if (m == 0) return m;
    for (long p : primes_) {
        Int pp(p);
        while (mpz_divisible_p(m.get_mpz_t(), pp.get_mpz_t())) m /= pp;
    }
    return m;
}

std::vector<Int> normalize_primitive(const std::vector<Rat>& coords) {
    Int den = 1;
    for (const auto& c : coords) den = lcm(den, c.get_den());
    std::vector<Int> out;
    out.reserve(coords.size());
    for (const auto& c : coords) out.push_back(Int(c.get_num() * (den / c.get_den())));
    return normalize_primitive(out);
}

std::vector<Int> normalize_primitive(const std::vector<Int>& coords) {
    Int g = 0;
    for (const auto& c : coords) g = gcd(g, c);
    if (g == 0) throw std::invalid_argument("normalize_primitive: all coordinates are zero");
    std::vector<Int> out(coords.size());
    int s = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        out[i] = coords[i] / g;
        if (s == 0 && out[i] != 0) s = sgn(out[i]);
    }
    if (s < 0)
        for (auto& c : out) c = -c;
    return out;
}

bool is_s_unit(const Int& n, const PrimeSet& s) {
    if (n == 0) throw std::invalid_argument("is_s_unit: n must be nonzero");
    return s.strip(n) == 1;
}

unsigned long p_valuation(const Int& n, const Int& p) {
    if (n == 0) throw std::invalid_argument("p_valuation: n must be nonzero");
    if (p < 2) throw std::invalid_argument("p_valuation: p must be prime");
    Int m = abs(n);
    unsigned long k = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        m /= p;
        ++k;
    }
    return k;
}

// ---------------------------------------------------------------- factoring

namespace {

Int pollard_rho(const Int& n, unsigned long& budget) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1;; ++c) {
        Int x = 2, y = 2, d = 1, q = 1, ys;
        const unsigned long m = 64;
        unsigned long r = 1;
        auto f = [&](const Int& v) {
            Int t = v * v + c;
            mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
            return t;
        };
        // Brent's cycle finding with batched gcds.
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = q * abs(Int(x - y));
                    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                }
                d = gcd(q, n);
                k += m;
                if (budget < m) throw std::runtime_error("factor: iteration budget exhausted");
                budget -= m;
            } while (k < r && d == 1);
            r *= 2;
        } while (d == 1);
        if (d == n) {
            do {
                ys = f(ys);
                d = gcd(abs(Int(x - ys)), n);
            } while (d == 1);
        }
        if (d != n) return d;
    }
}

void factor_rec(const Int& n, std::vector<Int>& out, unsigned long& budget) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    Int d = pollard_rho(n, budget);
    factor_rec(d, out, budget);
    factor_rec(Int(n / d), out, budget);
}

}  // namespace

std::vector<std::pair<Int, unsigned>> factor(const Int& n, unsigned long rho_budget) {
    if (n == 0) throw std::invalid_argument("factor: n must be nonzero");
    Int m = abs(n);
    std::vector<Int> primes;
    for (unsigned long p = 2; p < 10000 && Int(p) * p <= m; p += (p == 2 ? 1 : 2)) {
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            primes.push_back(Int(p));
            m /= p;
        }
    }
    factor_rec(m, primes, rho_budget);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<Int, unsigned>> out;
    for (const auto& p : primes) {
        if (!out.empty() && out.back().first == p) ++out.back().second;
        else out.emplace_back(p, 1u);
    }
    return out;
}

std::vector<Int> divisors(const Int& n) {
    std::vector<Int> ds{1};
    for (const auto& [p, e] : factor(n)) {
        std::size_t cur = ds.size();
        Int pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < cur; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

int legendre(const Int& a, const Int& p) { return mpz_legendre(a.get_mpz_t(), p.get_mpz_t()); }

}  // namespace lk3
