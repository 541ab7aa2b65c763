#include "lk3/poly.hpp"

#include "lk3/intmat.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace lk3 {

namespace {

struct MonoTable {
    std::vector<Exps> list;
    std::map<Exps, std::size_t> index;
};

void gen_monomials(int nvars, int var, int left, Exps& cur, std::vector<Exps>& out) {
    if (var == nvars - 1) {
        cur[var] = left;
        out.push_back(cur);
        cur[var] = 0;
        return;
    }
    for (int e = left; e >= 0; --e) {
        cur[var] = e;
        gen_monomials(nvars, var + 1, left - e, cur, out);
    }
    cur[var] = 0;
}

const MonoTable& table(int nvars, int degree) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<MonoTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(nvars, degree);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    auto t = std::make_unique<MonoTable>();
    Exps cur{0, 0, 0, 0};
    gen_monomials(nvars, 0, degree, cur, t->list);
    for (std::size_t i = 0; i < t->list.size(); ++i) t->index[t->list[i]] = i;
    auto& ref = *t;
    cache.emplace(key, std::move(t));
    return ref;
}

const char* var_name(int nvars, int i) {
    static const char* two[] = {"s", "t"};
    static const char* many[] = {"x", "y", "z", "w"};
    return nvars == 2 ? two[i] : many[i];
}

}  // namespace

const std::vector<Exps>& monomials(int nvars, int degree) { return table(nvars, degree).list; }

std::size_t monomial_index(int nvars, int degree, const Exps& e) {
    const auto& t = table(nvars, degree);
    auto it = t.index.find(e);
    if (it == t.index.end()) throw std::invalid_argument("monomial_index: exponent vector does not match");
    return it->second;
}

// ------------------------------------------------------------ HomogForm

HomogForm::HomogForm(int nvars, int degree) : nvars_(nvars), degree_(degree) {
    if (nvars < 2 || nvars > 4) throw std::invalid_argument("HomogForm: nvars must be 2, 3 or 4");
    if (degree < 0) throw std::invalid_argument("HomogForm: negative degree");
    c_.assign(monomials(nvars, degree).size(), Rat(0));
}

HomogForm::HomogForm(int nvars, int degree, std::vector<Rat> coeffs) : HomogForm(nvars, degree) {
    if (coeffs.size() != c_.size())
        throw std::invalid_argument("HomogForm: expected " + std::to_string(c_.size()) + " coefficients, got " +
                                    std::to_string(coeffs.size()));
    c_ = std::move(coeffs);
}

HomogForm HomogForm::variable(int nvars, int index) {
    HomogForm f(nvars, 1);
    f.c_.at(index) = 1;
    return f;
}

HomogForm HomogForm::constant(int nvars, const Rat& c) {
    HomogForm f(nvars, 0);
    f.c_[0] = c;
    return f;
}

HomogForm HomogForm::linear(const std::vector<Rat>& coeffs) {
    return HomogForm(static_cast<int>(coeffs.size()), 1, coeffs);
}

HomogForm HomogForm::linear(const std::vector<Int>& coeffs) {
    std::vector<Rat> r(coeffs.begin(), coeffs.end());
    return linear(r);
}

Rat HomogForm::coeff(const Exps& e) const { return c_[monomial_index(nvars_, degree_, e)]; }

void HomogForm::set_coeff(const Exps& e, const Rat& v) { c_[monomial_index(nvars_, degree_, e)] = v; }

bool HomogForm::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return r == 0; });
}

HomogForm HomogForm::operator+(const HomogForm& o) const {
    if (nvars_ != o.nvars_ || degree_ != o.degree_) throw std::invalid_argument("HomogForm: shape mismatch in +");
    HomogForm r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

HomogForm HomogForm::operator-(const HomogForm& o) const { return *this + (-o); }

HomogForm HomogForm::operator-() const {
    HomogForm r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

HomogForm HomogForm::operator*(const HomogForm& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("HomogForm: nvars mismatch in *");
    HomogForm r(nvars_, degree_ + o.degree_);
    const auto& ma = monomials(nvars_, degree_);
    const auto& mb = monomials(nvars_, o.degree_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            Exps e{ma[i][0] + mb[j][0], ma[i][1] + mb[j][1], ma[i][2] + mb[j][2], ma[i][3] + mb[j][3]};
            r.c_[monomial_index(nvars_, r.degree_, e)] += c_[i] * o.c_[j];
        }
    }
    return r;
}

HomogForm HomogForm::operator*(const Rat& s) const {
    HomogForm r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

HomogForm operator*(const Rat& r, const HomogForm& f) { return f * r; }

HomogForm HomogForm::pow(int k) const {
    HomogForm r = constant(nvars_, Rat(1));
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

Rat HomogForm::eval(const std::vector<Rat>& p) const {
    if (static_cast<int>(p.size()) != nvars_) throw std::invalid_argument("eval: dimension mismatch");
    const auto& ms = monomials(nvars_, degree_);
    Rat sum = 0;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        Rat term = c_[i];
        for (int v = 0; v < nvars_; ++v)
            for (int k = 0; k < ms[i][v]; ++k) term *= p[v];
        sum += term;
    }
    return sum;
}

Rat HomogForm::eval(const std::vector<Int>& p) const {
    std::vector<Rat> r(p.begin(), p.end());
    return eval(r);
}

QuadElem HomogForm::eval(const std::vector<QuadElem>& p) const {
    if (static_cast<int>(p.size()) != nvars_) throw std::invalid_argument("eval: dimension mismatch");
    long d = p[0].d();
    const auto& ms = monomials(nvars_, degree_);
    QuadElem sum = QuadElem::rational(Rat(0), d);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        QuadElem term = QuadElem::rational(c_[i], d);
        for (int v = 0; v < nvars_; ++v)
            for (int k = 0; k < ms[i][v]; ++k) term = term * p[v];
        sum = sum + term;
    }
    return sum;
}

HomogForm HomogForm::derivative(int var) const {
    if (degree_ == 0) return HomogForm(nvars_, 0);
    HomogForm r(nvars_, degree_ - 1);
    const auto& ms = monomials(nvars_, degree_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0 || ms[i][var] == 0) continue;
        Exps e = ms[i];
        Rat k = e[var];
        --e[var];
        r.c_[monomial_index(nvars_, r.degree_, e)] += c_[i] * k;
    }
    return r;
}

HomogForm HomogForm::compose(const std::vector<HomogForm>& subs) const {
    if (static_cast<int>(subs.size()) != nvars_) throw std::invalid_argument("compose: wrong number of substitutions");
    int nv = subs[0].nvars(), dg = subs[0].degree();
    for (const auto& s : subs)
        if (s.nvars() != nv || s.degree() != dg) throw std::invalid_argument("compose: substitutions must share shape");
    // powers[v][k] = subs[v]^k
    std::vector<std::vector<HomogForm>> powers(nvars_);
    for (int v = 0; v < nvars_; ++v) {
        powers[v].push_back(constant(nv, Rat(1)));
        for (int k = 1; k <= degree_; ++k) powers[v].push_back(powers[v].back() * subs[v]);
    }
    HomogForm r(nv, degree_ * dg);
    const auto& ms = monomials(nvars_, degree_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        HomogForm term = constant(nv, c_[i]);
        for (int v = 0; v < nvars_; ++v)
            if (ms[i][v] > 0) term = term * powers[v][ms[i][v]];
        r = r + term;
    }
    return r;
}

std::pair<HomogForm, HomogForm> HomogForm::divmod(const HomogForm& g) const {
    if (g.nvars_ != nvars_) throw std::invalid_argument("divmod: nvars mismatch");
    if (g.is_zero()) throw std::invalid_argument("divmod: division by zero form");
    if (degree_ < g.degree_) return {HomogForm(nvars_, 0), *this};
    HomogForm q(nvars_, degree_ - g.degree_), r = *this, rem(nvars_, degree_);
    const auto& ms = monomials(nvars_, degree_);
    const auto& mg = monomials(nvars_, g.degree_);
    std::size_t lg = 0;
    while (g.c_[lg] == 0) ++lg;
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
        if (r.c_[i] == 0) continue;
        bool divisible = true;
        Exps e{0, 0, 0, 0};
        for (int v = 0; v < nvars_; ++v) {
            e[v] = ms[i][v] - mg[lg][v];
            if (e[v] < 0) divisible = false;
        }
        if (!divisible) {
            rem.c_[i] = r.c_[i];
            r.c_[i] = 0;
            continue;
        }
        Rat f = r.c_[i] / g.c_[lg];
        q.c_[monomial_index(nvars_, q.degree_, e)] += f;
        for (std::size_t j = lg; j < g.c_.size(); ++j) {
            if (g.c_[j] == 0) continue;
            Exps m{e[0] + mg[j][0], e[1] + mg[j][1], e[2] + mg[j][2], e[3] + mg[j][3]};
            r.c_[monomial_index(nvars_, degree_, m)] -= f * g.c_[j];
        }
    }
    return {q, rem};
}

std::optional<HomogForm> HomogForm::divide_exact(const HomogForm& g) const {
    if (degree_ < g.degree_) {
        if (is_zero()) return HomogForm(nvars_, 0);
        return std::nullopt;
    }
    auto [q, r] = divmod(g);
    if (!r.is_zero()) return std::nullopt;
    return q;
}

Rat HomogForm::scale_to_primitive() const {
    if (is_zero()) throw std::invalid_argument("primitive: zero form");
    Int den = 1, g = 0;
    for (const auto& x : c_) den = lcm(den, x.get_den());
    for (const auto& x : c_) g = gcd(g, Int(x.get_num() * (den / x.get_den())));
    Rat s = make_rat(den, g);
    for (const auto& x : c_)
        if (x != 0) {
            if (x < 0) s = -s;
            break;
        }
    return s;
}

HomogForm HomogForm::primitive() const { return *this * scale_to_primitive(); }

bool HomogForm::proportional(const HomogForm& o) const {
    if (nvars_ != o.nvars_ || degree_ != o.degree_ || is_zero() || o.is_zero()) return false;
    return primitive() == o.primitive();
}

std::string HomogForm::str() const {
    std::ostringstream os;
    const auto& ms = monomials(nvars_, degree_);
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        Rat a = c_[i];
        bool neg = a < 0;
        if (neg) a = -a;
        if (first) os << (neg ? "-" : "");
        else os << (neg ? " - " : " + ");
        first = false;
        std::string mono;
        for (int v = 0; v < nvars_; ++v) {
            if (ms[i][v] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += var_name(nvars_, v);
            if (ms[i][v] > 1) mono += "^" + std::to_string(ms[i][v]);
        }
        if (mono.empty()) os << a.get_str();
        else if (a == 1) os << mono;
        else os << a.get_str() << "*" << mono;
    }
    if (first) os << "0";
    return os.str();
}

std::string HomogForm::coeff_list() const {
    std::ostringstream os;
    os << degree_ << " " << nvars_;
    for (const auto& x : c_) os << " " << x.get_str();
    return os.str();
}

// ------------------------------------------------------------ UPoly

UPoly::UPoly(std::vector<Rat> c) : c_(std::move(c)) { trim(); }

UPoly UPoly::monomial(const Rat& c, int k) {
    std::vector<Rat> v(k + 1, Rat(0));
    v[k] = c;
    return UPoly(v);
}

void UPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::operator+(const UPoly& o) const {
    std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return UPoly(r);
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + o * Rat(-1); }

UPoly UPoly::operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return UPoly();
    std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return UPoly(r);
}

UPoly UPoly::operator*(const Rat& s) const {
    std::vector<Rat> r = c_;
    for (auto& x : r) x *= s;
    return UPoly(r);
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& g) const {
    if (g.is_zero()) throw std::invalid_argument("UPoly::divmod: division by zero");
    if (deg() < g.deg()) return {UPoly(), *this};
    std::vector<Rat> q(deg() - g.deg() + 1, Rat(0)), r = c_;
    for (int i = deg(); i >= g.deg(); --i) {
        if (r[i] == 0) continue;
        Rat f = r[i] / g.lead();
        q[i - g.deg()] = f;
        for (int j = 0; j <= g.deg(); ++j) r[i - g.deg() + j] -= f * g.c_[j];
    }
    return {UPoly(q), UPoly(r)};
}

UPoly UPoly::derivative() const {
    if (c_.size() <= 1) return UPoly();
    std::vector<Rat> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return UPoly(r);
}

UPoly UPoly::monic() const {
    if (is_zero()) return *this;
    return *this * (1 / lead());
}

Rat UPoly::eval(const Rat& x) const {
    Rat r = 0;
    for (int i = deg(); i >= 0; --i) r = r * x + c_[i];
    return r;
}

UPoly upoly_gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("squarefree_decomposition: zero polynomial");
    std::vector<std::pair<UPoly, int>> out;
    UPoly a = f.monic();
    if (a.deg() == 0) return out;
    UPoly b = a.derivative();
    UPoly c = upoly_gcd(a, b);
    UPoly w = a.divmod(c).first;
    int i = 1;
    while (w.deg() > 0) {
        UPoly y = upoly_gcd(w, c);
        UPoly z = w.divmod(y).first;
        if (z.deg() > 0) out.emplace_back(z.monic(), i);
        w = y;
        c = c.divmod(y).first;
        ++i;
    }
    return out;
}

namespace {

int sign_variations(const std::vector<UPoly>& seq, const Rat& x) {
    int count = 0, last = 0;
    for (const auto& p : seq) {
        int s = sgn(p.eval(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

void integer_roots_rec(const UPoly& g, const std::vector<UPoly>& seq, const Int& a, const Int& b, int va, int vb,
                       std::vector<Int>& out) {
    if (va - vb <= 0) return;
    if (b - a == 1) {
        if (g.eval(Rat(b)) == 0) out.push_back(b);
        return;
    }
    Int mid;
    Int sum = a + b;
    mpz_fdiv_q_2exp(mid.get_mpz_t(), sum.get_mpz_t(), 1);
    int vm = sign_variations(seq, Rat(mid));
    integer_roots_rec(g, seq, a, mid, va, vm, out);
    integer_roots_rec(g, seq, mid, b, vm, vb, out);
}

// Integer roots of a monic squarefree polynomial with integer coefficients.
std::vector<Int> integer_roots(const UPoly& g) {
    std::vector<UPoly> seq{g, g.derivative()};
    while (!seq.back().is_zero() && seq.back().deg() > 0) {
        UPoly r = seq[seq.size() - 2].divmod(seq.back()).second;
        if (r.is_zero()) break;
        seq.push_back(r * Rat(-1));
    }
    Int bound = 1;
    for (const auto& c : g.coeffs()) bound = std::max(bound, Int(abs(c.get_num()) + 1));
    std::vector<Int> out;
    Int lo = -bound - 1, hi = bound;
    integer_roots_rec(g, seq, lo, hi, sign_variations(seq, Rat(lo)), sign_variations(seq, Rat(hi)), out);
    return out;
}

// Rational roots of a squarefree polynomial.
std::vector<Rat> simple_rational_roots(const UPoly& f) {
    std::vector<Rat> out;
    if (f.deg() <= 0) return out;
    if (f.deg() == 1) {
        out.push_back(-f.coeff(0) / f.coeff(1));
        return out;
    }
    if (f.deg() == 2) {
        Rat a = f.coeff(2), b = f.coeff(1), c = f.coeff(0);
        Rat disc = b * b - 4 * a * c;
        if (disc < 0) return out;
        Int num = disc.get_num(), den = disc.get_den();
        if (!is_square(num) || !is_square(den)) return out;
        Rat sq = make_rat(isqrt(num), isqrt(den));
        out.push_back((-b - sq) / (2 * a));
        out.push_back((-b + sq) / (2 * a));
        std::sort(out.begin(), out.end());
        return out;
    }
    // integer coefficients
    Int den = 1;
    for (const auto& c : f.coeffs()) den = lcm(den, c.get_den());
    std::vector<Int> a;
    for (const auto& c : f.coeffs()) a.push_back(c.get_num() * (den / c.get_den()));
    if (a[0] == 0) {
        out.push_back(Rat(0));
        std::vector<Rat> rest(f.coeffs().begin() + 1, f.coeffs().end());
        for (const auto& r : simple_rational_roots(UPoly(rest))) out.push_back(r);
        std::sort(out.begin(), out.end());
        return out;
    }
    // g(y) = an^(n-1) f(y / an) is monic with integer coefficients.
    int n = static_cast<int>(a.size()) - 1;
    Int an = a[n];
    std::vector<Rat> gc(n + 1);
    for (int i = 0; i < n; ++i) {
        Int p;
        mpz_pow_ui(p.get_mpz_t(), an.get_mpz_t(), static_cast<unsigned long>(n - 1 - i));
        gc[i] = Rat(a[i] * p);
    }
    gc[n] = 1;
    for (const auto& y : integer_roots(UPoly(gc))) out.push_back(make_rat(y, an));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<std::pair<Rat, int>> rational_roots(const UPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
    std::vector<std::pair<Rat, int>> out;
    for (const auto& [fac, mult] : squarefree_decomposition(f))
        for (const auto& r : simple_rational_roots(fac)) out.emplace_back(r, mult);
    std::sort(out.begin(), out.end());
    return out;
}

UPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    UPoly result;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        UPoly basis(std::vector<Rat>{Rat(1)});
        Rat denom = 1;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            basis = basis * UPoly(std::vector<Rat>{-xs[j], Rat(1)});
            denom *= xs[i] - xs[j];
        }
        result = result + basis * (ys[i] / denom);
    }
    return result;
}

// ------------------------------------------------------------ binary forms

HomogForm binary(std::vector<Rat> coeffs) {
    int d = static_cast<int>(coeffs.size()) - 1;
    return HomogForm(2, d, std::move(coeffs));
}

UPoly dehomogenize(const HomogForm& f) {
    int d = f.degree();
    std::vector<Rat> p(d + 1);
    for (int i = 0; i <= d; ++i) p[d - i] = f.coeff(i);
    return UPoly(p);
}

HomogForm homogenize(const UPoly& p, int degree) {
    if (p.deg() > degree) throw std::invalid_argument("homogenize: degree too small");
    std::vector<Rat> c(degree + 1, Rat(0));
    for (int j = 0; j <= p.deg(); ++j) c[degree - j] = p.coeff(j);
    return binary(c);
}

Rat resultant(const HomogForm& f, const HomogForm& g) {
    int m = f.degree(), n = g.degree();
    if (m == 0 && n == 0) return Rat(1);
    int size = m + n;
    RatMat mat(size, std::vector<Rat>(size, Rat(0)));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) mat[r][r + i] = f.coeff(i);
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) mat[n + r][r + i] = g.coeff(i);
    auto power = [](const Rat& c, int k) {
        Rat p = 1;
        for (int i = 0; i < k; ++i) p *= c;
        return p;
    };
    if (m == 0) return power(f.coeff(0), n);
    if (n == 0) return power(g.coeff(0), m);
    return det(mat);
}

namespace {

int leading_zero_count(const HomogForm& f) {
    int k = 0;
    while (k <= f.degree() && f.coeff(k) == 0) ++k;
    return k;
}

}  // namespace

HomogForm binary_gcd(const HomogForm& f, const HomogForm& g) {
    if (f.is_zero() && g.is_zero()) throw std::invalid_argument("binary_gcd: both forms zero");
    if (f.is_zero()) return g.primitive();
    if (g.is_zero()) return f.primitive();
    int k = std::min(leading_zero_count(f), leading_zero_count(g));
    UPoly h = upoly_gcd(dehomogenize(f), dehomogenize(g));
    HomogForm r = homogenize(h, h.deg());
    HomogForm t = HomogForm::variable(2, 1).pow(k);
    return (r * t).primitive();
}

HomogForm binary_root_factor(const Int& s0, const Int& t0) {
    return binary({Rat(t0), Rat(-s0)});
}

std::vector<BinaryRoot> binary_rational_roots(const HomogForm& f) {
    if (f.nvars() != 2) throw std::invalid_argument("binary_rational_roots: not a binary form");
    if (f.is_zero()) throw std::invalid_argument("binary_rational_roots: zero form");
    std::vector<BinaryRoot> out;
    int k = leading_zero_count(f);
    if (k > 0) out.push_back({Int(1), Int(0), k});
    UPoly p = dehomogenize(f);
    if (p.deg() > 0) {
        for (const auto& [r, m] : rational_roots(p)) {
            auto v = normalize_primitive(std::vector<Rat>{r, Rat(1)});
            out.push_back({v[0], v[1], m});
        }
    }
    return out;
}

std::vector<std::pair<HomogForm, int>> binary_squarefree(const HomogForm& f) {
    if (f.is_zero()) throw std::invalid_argument("binary_squarefree: zero form");
    std::vector<std::pair<HomogForm, int>> out;
    int k = leading_zero_count(f);
    if (k > 0) out.emplace_back(HomogForm::variable(2, 1), k);
    UPoly p = dehomogenize(f);
    if (p.deg() > 0)
        for (const auto& [fac, m] : squarefree_decomposition(p)) out.emplace_back(homogenize(fac, fac.deg()).primitive(), m);
    return out;
}

}  // namespace lk3
