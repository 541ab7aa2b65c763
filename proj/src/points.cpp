#include "lk3/points.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace lk3 {

namespace {

Int int_value(const HomogForm& f, const std::vector<Int>& p) {
    Rat v = f.eval(p);
    if (v.get_den() != 1) throw std::logic_error("int_value: form is not integral");
    return v.get_num();
}

Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<Int> grad_at(const HomogForm& f, const std::vector<Int>& p) {
    std::vector<Int> g;
    for (int i = 0; i < f.nvars(); ++i) g.push_back(int_value(f.derivative(i), p));
    return g;
}

std::pair<Int, Int> normalized_pair(const Int& a, const Int& b) {
    auto v = normalize_primitive(std::vector<Int>{a, b});
    return {v[0], v[1]};
}

bool rat_is_s_unit(const Rat& r, const PrimeSet& s) {
    return r != 0 && is_s_unit(r.get_num(), s) && is_s_unit(r.get_den(), s);
}

// Rational matrix scaled to a primitive integer matrix.
IntMat primitive_matrix(const RatMat& m) {
    Int den = 1, g = 0;
    for (const auto& row : m)
        for (const auto& x : row) den = lcm(den, x.get_den());
    IntMat out(m.size(), std::vector<Int>(m[0].size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) {
            out[i][j] = m[i][j].get_num() * (den / m[i][j].get_den());
            g = gcd(g, out[i][j]);
        }
    if (g != 0 && g != 1)
        for (auto& row : out)
            for (auto& x : row) x /= g;
    return out;
}

Int max_norm(const IntMat& m) {
    Int r = 0;
    for (const auto& row : m)
        for (const auto& x : row) r = std::max(r, abs(x));
    return r;
}

Int trace(const IntMat& m) {
    Int t = 0;
    for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
    return t;
}

IntMat negate(IntMat m) {
    for (auto& row : m)
        for (auto& x : row) x = -x;
    return m;
}

bool is_scalar(const IntMat& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            if ((i == j && m[i][j] != m[0][0]) || (i != j && m[i][j] != 0)) return false;
    return true;
}

// Inverse up to scaling, as a primitive integer matrix.
IntMat projective_inverse(const IntMat& m) { return primitive_matrix(inverse(to_rat(m))); }

std::vector<Int> apply_primitive(const IntMat& m, const std::vector<Int>& v) {
    return normalize_primitive(int_apply(m, v));
}

bool preserves(const HomogForm& c, const IntMat& t) {
    std::vector<HomogForm> subs;
    for (const auto& row : t) subs.push_back(HomogForm::linear(row));
    return c.compose(subs).proportional(c);
}

RatMat sym2(const RatMat& h) {
    const Rat &a = h[0][0], &b = h[0][1], &c = h[1][0], &d = h[1][1];
    return {{a * a, 2 * a * b, b * b}, {a * c, a * d + b * c, b * d}, {c * c, 2 * c * d, d * d}};
}

bool le_sqrt(const Int& x, const Int& d) { return x < 0 || x * x < d; }  // x <= sqrt(d), d nonsquare

// floor((p + sqrt(d)) / q), d > 0 nonsquare, q != 0
Int floor_quad(const Int& p, const Int& q, const Int& d, const Int& s) {
    Int k, num = p + s;
    mpz_fdiv_q(k.get_mpz_t(), num.get_mpz_t(), q.get_mpz_t());
    // k <= x  <=>  k q - p <= sqrt(d) when q > 0, reversed when q < 0
    auto le = [&](const Int& c) { return q > 0 ? le_sqrt(c * q - p, d) : !le_sqrt(c * q - p, d); };
    while (!le(k)) --k;
    while (le(k + 1)) ++k;
    return k;
}

// Small fundamental discriminant data: d squarefree part, f with disc = f^2 * disc0.
struct DiscSplit {
    Int disc0, f;
};
std::optional<DiscSplit> split_discriminant(const Int& disc) {
    if (mpz_sizeinbase(disc.get_mpz_t(), 2) > 160) return std::nullopt;
    Int d;
    try {
        d = squarefree_part(disc);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    Int r = d % 4;
    if (r < 0) r += 4;
    Int d0 = r == 1 ? d : Int(4 * d);
    Int q = disc / d0;
    if (q * d0 != disc || !is_square(q)) return std::nullopt;
    return DiscSplit{d0, isqrt(q)};
}

// Torus elements of PGL2(Q) fixing the roots of q, in increasing size, for the given family.
// Each call of next() yields one candidate 2x2 matrix or nullopt when exhausted.
class TorusCandidates {
public:
    TorusCandidates(const HomogForm& q, const PrimeSet& s, unsigned long cf_steps) : q_(q), s_(s) {
        Rat a = q.coeff(0), b = q.coeff(1), c = q.coeff(2);
        Rat dr = b * b - 4 * a * c;
        if (dr.get_den() != 1) throw std::invalid_argument("TorusCandidates: expected integral coefficients");
        disc_ = dr.get_num();
        if (disc_ > 0 && !is_square(disc_)) {
            mode_ = Mode::Unit;
            auto sp = split_discriminant(disc_);
            if (sp) {
                auto u0 = fundamental_unit(sp->disc0, cf_steps);
                if (u0) {
                    base_ = form_automorph(q, Rat(u0->u), make_rat(u0->v, sp->f));
                    ok_ = true;
                }
            }
            if (!ok_) {
                auto u = fundamental_unit(disc_, cf_steps);
                if (u) {
                    base_ = form_automorph(q, Rat(u->u), Rat(u->v));
                    ok_ = true;
                }
            }
        } else if (disc_ > 0) {
            mode_ = Mode::Split;
            root_ = isqrt(disc_);
            ok_ = !s.empty();
        } else if (disc_ < 0) {
            mode_ = Mode::Imaginary;
            for (long p : s.primes()) {
                bool split = p == 2 ? ((disc_ % 8) + 8) % 8 == 1 : legendre(disc_, Int(p)) == 1;
                if (split) split_primes_.push_back(p);
            }
            ok_ = !split_primes_.empty();
        }
    }

    bool usable() const { return ok_; }
    const Int& disc() const { return disc_; }

    // Candidates of one family (one prime for split/imaginary), in increasing size.
    std::optional<RatMat> next(std::size_t family, unsigned long index) {
        if (!ok_) return std::nullopt;
        switch (mode_) {
            case Mode::Unit:
                // family 1: twisted by the class of sqrt(disc)
                if (family > 1) return std::nullopt;
                while (powers_.size() <= index)
                    powers_.push_back(powers_.empty() ? base_ : rat_mul(powers_.back(), base_));
                if (family == 0) return powers_[index];
                return rat_mul(powers_[index], form_automorph(q_, Rat(0), Rat(1)));
            case Mode::Split: {
                if (family >= s_.size()) return std::nullopt;
                Int pk;
                mpz_pow_ui(pk.get_mpz_t(), Int(s_.primes()[family]).get_mpz_t(), index + 1);
                return form_automorph(q_, Rat(pk + 1), make_rat(pk - 1, root_));
            }
            case Mode::Imaginary: {
                if (family >= split_primes_.size()) return std::nullopt;
                // solutions of u^2 - disc v^2 = 4 p^k, enumerated by k then v
                auto& list = imag_cache(family);
                if (index < list.size()) return list[index];
                return std::nullopt;
            }
        }
        return std::nullopt;
    }
    std::size_t families() const {
        switch (mode_) {
            case Mode::Unit: return 2;
            case Mode::Split: return s_.size();
            case Mode::Imaginary: return split_primes_.size();
        }
        return 0;
    }

private:
    enum class Mode { Unit, Split, Imaginary };
    std::vector<RatMat>& imag_cache(std::size_t family) {
        while (imag_.size() <= family) imag_.emplace_back();
        auto& list = imag_[family];
        if (!list.empty()) return list;
        Int p = split_primes_[family];
        Int pk = 1, md = -disc_;
        for (int k = 1; k <= 24 && list.size() < 64; ++k) {
            pk *= p;
            Int four = 4 * pk;
            for (Int v = 1; md * v * v <= four && v <= 200000; ++v) {
                Int u2 = four - md * v * v;
                if (!is_square(u2)) continue;
                Int u = isqrt(u2);
                list.push_back(form_automorph(q_, Rat(u), Rat(v)));
                if (u != 0) list.push_back(form_automorph(q_, Rat(-u), Rat(v)));
            }
        }
        return list;
    }

    HomogForm q_;
    PrimeSet s_;
    Int disc_ = 0, root_ = 0;
    Mode mode_ = Mode::Unit;
    bool ok_ = false;
    RatMat base_;
    std::vector<RatMat> powers_;
    std::vector<long> split_primes_;
    std::vector<std::vector<RatMat>> imag_;
};

constexpr std::size_t kMaxAutomorphismBits = 1 << 14;

bool infinite_order(const IntMat& t) {
    IntMat p = t;
    for (int k = 2; k <= 12; ++k) {
        p = int_mul(p, t);
        if (12 % k == 0 && is_scalar(p)) return false;
    }
    return !is_scalar(t);
}

// positive trace, then lexicographically greatest rows
IntMat canonical_representative(const IntMat& t) {
    IntMat inv = projective_inverse(t);
    std::vector<IntMat> cands{t, negate(t), inv, negate(inv)};
    std::optional<IntMat> best;
    for (const auto& c : cands) {
        if (trace(c) <= 0) continue;
        if (!best || c > *best) best = c;
    }
    if (!best) {
        for (const auto& c : cands)
            if (!best || c > *best) best = c;
    }
    return *best;
}

}  // namespace

// ------------------------------------------------------------ integrality

std::string to_string(Ambient a) {
    switch (a) {
        case Ambient::PlaneModD: return "PlaneModD";
        case Ambient::SurfaceModH: return "SurfaceModH";
        case Ambient::BlowupModDhat: return "BlowupModDhat";
        case Ambient::BlowupModDhatE: return "BlowupModDhatE";
    }
    return "?";
}

IntegralityContext IntegralityContext::plane(const HomogForm& f, const PrimeSet& s) {
    IntegralityContext c;
    c.ambient = Ambient::PlaneModD;
    c.S = s;
    c.F = f.primitive();
    return c;
}

IntegralityContext IntegralityContext::surface(const PrimeSet& s) {
    IntegralityContext c;
    c.ambient = Ambient::SurfaceModH;
    c.S = s;
    return c;
}

IntegralityContext IntegralityContext::blowup(const HomogForm& f, const ProjPoint& p, const PrimeSet& s,
                                              bool with_E) {
    if (p.dim() != 2 || !on_curve(f, p)) throw std::invalid_argument("blowup context: P must be a point of D");
    IntegralityContext c;
    c.ambient = with_E ? Ambient::BlowupModDhatE : Ambient::BlowupModDhat;
    c.S = s;
    c.F = f.primitive();
    c.P = p;
    return c;
}

Int minors_gcd(const std::vector<Int>& a, const std::vector<Int>& b) {
    Int g = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) g = gcd(g, Int(a[i] * b[j] - a[j] * b[i]));
    return g;
}

bool is_integral(const ProjPoint& p, const IntegralityContext& ctx) {
    switch (ctx.ambient) {
        case Ambient::PlaneModD: {
            if (p.dim() != 2) throw std::invalid_argument("is_integral: expected a point of P^2");
            Int v = int_value(ctx.F.primitive(), p.coords());
            if (v == 0) throw std::invalid_argument("is_integral: point lies on D");
            return is_s_unit(v, ctx.S);
        }
        case Ambient::SurfaceModH: {
            if (p.dim() != 3) throw std::invalid_argument("is_integral: expected a point of P^3");
            if (p[3] == 0) throw std::invalid_argument("is_integral: point lies on H");
            return is_s_unit(p[3], ctx.S);
        }
        case Ambient::BlowupModDhat:
        case Ambient::BlowupModDhatE: return blowup_integrality(BlowupPoint{p, std::nullopt}, ctx);
    }
    return false;
}

bool blowup_integrality(const BlowupPoint& q, const IntegralityContext& ctx) {
    if (ctx.ambient != Ambient::BlowupModDhat && ctx.ambient != Ambient::BlowupModDhatE)
        throw std::invalid_argument("blowup_integrality: expected a blow-up context");
    if (!ctx.P) throw std::invalid_argument("blowup_integrality: context has no blown-up point");
    const bool with_E = ctx.ambient == Ambient::BlowupModDhatE;
    const HomogForm f = ctx.F.primitive();
    const auto& P = ctx.P->coords();
    const auto& s = q.image.coords();
    if (q.image.dim() != 2) throw std::invalid_argument("blowup_integrality: expected a point of P^2");
    auto grad = grad_at(f, P);

    if (q.image == *ctx.P) {
        if (!q.direction) throw std::invalid_argument("blowup_integrality: a point over P needs a direction");
        if (with_E) throw std::invalid_argument("blowup_integrality: point lies on E");
        // saturate span(P, d) and take the complement of P in it
        auto n = cross(P, *q.direction);
        if (std::all_of(n.begin(), n.end(), [](const Int& x) { return x == 0; }))
            throw std::invalid_argument("blowup_integrality: direction is proportional to P");
        auto ker = integer_kernel(IntMat{n});
        RatMat sys(3, std::vector<Rat>(3));
        for (int i = 0; i < 3; ++i) {
            sys[i][0] = ker[0][i];
            sys[i][1] = ker[1][i];
            sys[i][2] = P[i];
        }
        auto ns = nullspace(sys);
        Rat al = -ns[0][0] / ns[0][2], be = -ns[0][1] / ns[0][2];
        IntMat u = unimodular_completion({al.get_num(), be.get_num()});
        std::vector<Int> d(3);
        for (int i = 0; i < 3; ++i) d[i] = u[0][1] * ker[0][i] + u[1][1] * ker[1][i];
        Int v = dot(grad, d);
        if (v == 0) throw std::invalid_argument("blowup_integrality: point lies on the strict transform of D");
        return is_s_unit(v, ctx.S);
    }

    Int v = int_value(f, s);
    if (v == 0) throw std::invalid_argument("blowup_integrality: point lies on the strict transform of D");
    Int m = minors_gcd(s, P);
    // part of F(sigma) prime to m: reductions away from P
    Int r = abs(v);
    for (Int g = gcd(r, m); g > 1; g = gcd(r, m)) r /= g;
    if (!is_s_unit(r, ctx.S)) return false;
    if (m == 1) return true;
    if (with_E) return is_s_unit(m, ctx.S);  // l | m puts the reduction on E

    // valuation form of the same test when m is too large to factor cheaply
    if (mpz_sizeinbase(m.get_mpz_t(), 2) > 64) return is_s_unit(Int(v / m), ctx.S);
    std::vector<std::pair<Int, unsigned>> primes;
    try {
        primes = factor(m);
    } catch (const std::exception&) {
        return is_s_unit(Int(v / m), ctx.S);
    }
    for (const auto& [l, e] : primes) {
        (void)e;
        if (ctx.S.contains(l)) continue;
        int i = 0;
        while (P[i] % l == 0) ++i;
        unsigned long k = p_valuation(m, l);
        Int lk;
        mpz_pow_ui(lk.get_mpz_t(), l.get_mpz_t(), k);
        Int sum = 0;
        for (int j = 0; j < 3; ++j) {
            if (j == i) continue;
            Int minor = s[j] * P[i] - P[j] * s[i];
            sum += grad[j] * (minor / lk);
        }
        if (sum % l == 0) return false;  // approach direction is tangent to D mod l
    }
    return true;
}

// ------------------------------------------------------------ points at infinity

std::string to_string(InfinityTag t) {
    switch (t) {
        case InfinityTag::Empty: return "Empty";
        case InfinityTag::OneRational: return "OneRational";
        case InfinityTag::TwoRational: return "TwoRational";
        case InfinityTag::QuadraticRealPair: return "QuadraticRealPair";
        case InfinityTag::QuadraticImaginaryPair: return "QuadraticImaginaryPair";
        case InfinityTag::Tangency: return "Tangency";
        case InfinityTag::Many: return "Many";
    }
    return "?";
}

namespace {

struct Support {
    std::vector<BinaryRoot> rational;      // distinct, with multiplicity
    std::vector<HomogForm> irrational;     // squarefree irreducible-free parts of positive degree
};

Support support_of(const HomogForm& h) {
    Support out;
    for (const auto& [fac, m] : binary_squarefree(h)) {
        if (fac.degree() == 0) continue;
        HomogForm rest = fac;
        for (const auto& r : binary_rational_roots(fac)) {
            out.rational.push_back({r.s, r.t, m});
            rest = *rest.divide_exact(binary_root_factor(r.s, r.t));
        }
        if (rest.degree() > 0) out.irrational.push_back(rest.primitive());
    }
    return out;
}

}  // namespace

InfinityTag binary_infinity_tag(const HomogForm& h, Int* disc) {
    if (h.nvars() != 2 || h.is_zero()) throw std::invalid_argument("binary_infinity_tag: expected a nonzero binary form");
    Support sp = support_of(h);
    int irr = 0;
    for (const auto& f : sp.irrational) irr += f.degree();
    if (irr == 0) {
        switch (sp.rational.size()) {
            case 0: return InfinityTag::Empty;
            case 1: return sp.rational[0].multiplicity == 1 ? InfinityTag::OneRational : InfinityTag::Tangency;
            case 2: return InfinityTag::TwoRational;
            default: return InfinityTag::Many;
        }
    }
    if (irr == 2 && sp.rational.empty()) {
        const HomogForm& qf = sp.irrational[0];
        Rat dd = qf.coeff(1) * qf.coeff(1) - 4 * qf.coeff(0) * qf.coeff(2);
        if (disc) *disc = dd.get_num();
        return dd > 0 ? InfinityTag::QuadraticRealPair : InfinityTag::QuadraticImaginaryPair;
    }
    return InfinityTag::Many;
}

InfinityType infinity_type(const HomogForm& conic, const HomogForm& d, const std::optional<ProjPoint>& point) {
    if (conic.nvars() != 3 || conic.degree() != 2) throw std::invalid_argument("infinity_type: expected a plane conic");
    if (d.divide_exact(conic)) throw std::invalid_argument("infinity_type: the conic is a component of D");
    InfinityType out;
    if (point && conic_is_smooth(conic)) {
        RationalParam phi = parametrize_conic(conic, *point);
        HomogForm h = restrict_to(d, phi);
        if (h.is_zero()) throw std::invalid_argument("infinity_type: the conic is a component of D");
        out.tag = binary_infinity_tag(h, &out.discriminant);
        Support sp = support_of(h);
        for (const auto& r : sp.rational) out.rational_points.push_back({phi.point(r.s, r.t), r.multiplicity});
        if (out.tag == InfinityTag::QuadraticRealPair || out.tag == InfinityTag::QuadraticImaginaryPair) {
            const HomogForm& qf = sp.irrational[0];
            Int sq = squarefree_part(out.discriminant);
            if (sq.fits_slong_p()) {
                long dd = sq.get_si();
                Int f2 = out.discriminant / sq;
                Rat f(isqrt(f2));
                // roots s/t = (-b +- f sqrt(dd)) / (2a)
                Rat a = qf.coeff(0), b = qf.coeff(1);
                for (int sgn : {1, -1}) {
                    QuadElem r(-b / (2 * a), sgn * f / (2 * a), dd);
                    std::vector<QuadElem> st{r, QuadElem::rational(Rat(1), dd)};
                    std::vector<QuadElem> pt;
                    for (const auto& c : phi.comps) pt.push_back(c.eval(st));
                    out.conjugate_points.push_back(pt);
                }
            }
        }
        return out;
    }
    auto cz = common_zeros(conic, d);
    if (!cz) throw std::invalid_argument("infinity_type: the conic shares a component with D");
    for (long a = 0; a <= 4; ++a)
        for (long b = 0; b <= 4; ++b) {
            std::vector<Rat> probe{Rat(a), Rat(1), Rat(b)};
            if (conic.eval(probe) == 0 || d.eval(probe) == 0) continue;
            HomogForm r = resultant_y(conic, d, a, b);
            if (r.is_zero()) continue;
            Support sp = support_of(r);
            if (sp.rational.size() != cz->size()) continue;  // projection not injective on rational points
            out.tag = binary_infinity_tag(r, &out.discriminant);
            for (const auto& p : *cz) out.rational_points.push_back({p, intersection_multiplicity_resultant(conic, d, p)});
            return out;
        }
    throw std::runtime_error("infinity_type: no admissible projection");
}

// ------------------------------------------------------------ Pell engine

std::optional<QuadUnit> fundamental_unit(const Int& disc, unsigned long max_steps) {
    if (disc <= 0 || is_square(disc)) throw std::invalid_argument("fundamental_unit: discriminant must be positive nonsquare");
    Int r4 = disc % 4;
    if (r4 != 0 && r4 != 1) throw std::invalid_argument("fundamental_unit: not a discriminant");
    Int sigma = r4;
    Int sq = isqrt(disc);
    // continued fraction of omega = (sigma + sqrt(disc)) / 2; |N(A - B omega)| = Q_{k+1} / 2
    Int P = sigma, Q = 2;
    std::vector<Int> partial;
    for (unsigned long step = 0; step < max_steps; ++step) {
        Int a = floor_quad(P, Q, disc, sq);
        partial.push_back(a);
        P = a * Q - P;
        Q = (disc - P * P) / Q;
        if (Q == 2 || Q == -2) {
            Int A = 1, B = 0, A1 = 0, B1 = 1;  // (A_{k-1}, A_{k-2})
            for (const auto& x : partial) {
                Int A2 = x * A + A1, B2 = x * B + B1;
                A1 = A;
                B1 = B;
                A = A2;
                B = B2;
            }
            Int norm = A * A - sigma * A * B + ((sigma * sigma - disc) / 4) * B * B;
            if (norm == 1 || norm == -1) return QuadUnit{2 * A - B * sigma, B, static_cast<int>(norm.get_si())};
        }
    }
    // bounded search fallback
    for (Int v = 1; v <= 100000; ++v) {
        for (int n : {-1, 1}) {
            Int u2 = disc * v * v + 4 * n;
            if (u2 >= 0 && is_square(u2)) return QuadUnit{isqrt(u2), v, n};
        }
    }
    return std::nullopt;
}

RatMat form_automorph(const HomogForm& q, const Rat& u, const Rat& v) {
    if (q.nvars() != 2 || q.degree() != 2) throw std::invalid_argument("form_automorph: expected a binary quadratic");
    Rat a = q.coeff(0), b = q.coeff(1), c = q.coeff(2);
    return {{(u - b * v) / 2, -c * v}, {a * v, (u + b * v) / 2}};
}

std::string PellAutomorphism::str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < T.size(); ++i) {
        if (i) s += "; ";
        for (std::size_t j = 0; j < T[i].size(); ++j) {
            if (j) s += " ";
            s += to_string(T[i][j]);
        }
    }
    return s + "]";
}

std::optional<PellAutomorphism> fundamental_automorphism(const HomogForm& conic, const InfinityType& inf,
                                                         const IntegralityContext& ctx, const ProjPoint& point) {
    if (inf.tag != InfinityTag::TwoRational && inf.tag != InfinityTag::QuadraticRealPair &&
        inf.tag != InfinityTag::QuadraticImaginaryPair)
        throw std::invalid_argument("fundamental_automorphism: points at infinity do not form a pair");
    if (ctx.ambient != Ambient::PlaneModD) throw std::invalid_argument("fundamental_automorphism: expected PlaneModD");
    if (!conic_is_smooth(conic)) throw std::invalid_argument("fundamental_automorphism: conic is singular");
    if (!on_curve(conic, point)) throw std::invalid_argument("fundamental_automorphism: point is not on the conic");
    const HomogForm f = ctx.F.primitive();
    if (!is_integral(point, ctx)) throw std::invalid_argument("fundamental_automorphism: point is not integral");

    RationalParam phi = parametrize_conic(conic, point);
    HomogForm h = restrict_to(f, phi);
    Support sp = support_of(h);
    HomogForm q;
    if (sp.irrational.size() == 1 && sp.rational.empty() && sp.irrational[0].degree() == 2) {
        q = sp.irrational[0];
    } else if (sp.irrational.empty() && sp.rational.size() == 2) {
        q = (binary_root_factor(sp.rational[0].s, sp.rational[0].t) *
             binary_root_factor(sp.rational[1].s, sp.rational[1].t)).primitive();
    } else {
        throw std::invalid_argument("fundamental_automorphism: points at infinity do not form a pair");
    }

    RatMat phim(3, std::vector<Rat>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) phim[i][j] = phi.comps[i].coeff(j);
    RatMat phinv = inverse(phim);

    TorusCandidates tc(q, ctx.S, 2000000);
    if (!tc.usable()) return std::nullopt;
    std::optional<IntMat> best;
    for (std::size_t fam = 0; fam < tc.families(); ++fam) {
        for (unsigned long idx = 0; idx < 400; ++idx) {
            auto hm = tc.next(fam, idx);
            if (!hm) break;
            IntMat t = primitive_matrix(rat_mul(rat_mul(phim, sym2(*hm)), phinv));
            // candidates only grow within a family
            if (best && max_norm(t) > max_norm(*best)) break;
            if (mpz_sizeinbase(max_norm(t).get_mpz_t(), 2) > kMaxAutomorphismBits) break;
            Int dt = det(t);
            if (dt == 0 || !is_s_unit(dt, ctx.S)) continue;
            if (!preserves(conic, t)) continue;
            ProjPoint image(apply_primitive(t, point.coords()));
            ProjPoint back(apply_primitive(projective_inverse(t), point.coords()));
            if (!is_integral(image, ctx) || !is_integral(back, ctx)) continue;
            if (!infinite_order(t)) continue;
            t = canonical_representative(t);
            if (!best || max_norm(t) < max_norm(*best) || (max_norm(t) == max_norm(*best) && t > *best)) best = t;
            break;
        }
    }
    if (!best) return std::nullopt;
    return PellAutomorphism{*best};
}

std::vector<ProjPoint> orbit(const ProjPoint& p, const PellAutomorphism& T, int n, const HomogForm& conic) {
    if (!preserves(conic, T.T)) throw std::invalid_argument("orbit: the automorphism does not preserve the conic");
    if (!on_curve(conic, p)) throw std::invalid_argument("orbit: point is not on the conic");
    std::vector<ProjPoint> out;
    std::set<ProjPoint> seen;
    ProjPoint x = p;
    for (int k = 0; k < n; ++k) {
        if (!seen.insert(x).second) throw std::logic_error("orbit: the automorphism has finite order");
        out.push_back(x);
        x = ProjPoint(apply_primitive(T.T, x.coords()));
    }
    return out;
}

std::optional<IntMat> binary_automorphism(const HomogForm& q, const PrimeSet& s) {
    if (q.nvars() != 2 || q.degree() != 2) throw std::invalid_argument("binary_automorphism: expected a binary quadratic");
    HomogForm qp = q.primitive();
    TorusCandidates tc(qp, s, 20000);
    if (!tc.usable()) return std::nullopt;
    std::optional<IntMat> best;
    for (std::size_t fam = 0; fam < tc.families(); ++fam) {
        for (unsigned long idx = 0; idx < 64; ++idx) {
            auto hm = tc.next(fam, idx);
            if (!hm) break;
            IntMat g = primitive_matrix(*hm);
            Int dg = det(g);
            if (dg == 0 || !is_s_unit(dg, s) || !infinite_order(g)) continue;
            HomogForm img = qp.compose({HomogForm::linear(g[0]), HomogForm::linear(g[1])});
            if (!img.proportional(qp)) continue;
            Rat kappa = img.coeff(0) != 0 ? img.coeff(0) / qp.coeff(0) : img.coeff(2) / qp.coeff(2);
            if (!rat_is_s_unit(kappa, s)) continue;
            if (!best || max_norm(g) < max_norm(*best)) best = g;
            break;
        }
    }
    return best;
}

// ------------------------------------------------------------ search

namespace {

// floor and ceiling of a / b, b != 0
Int fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}
Int cdiv(const Int& a, const Int& b) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

bool keep_point(const ProjPoint& p, const IntegralityContext& ctx) {
    try {
        return is_integral(p, ctx);
    } catch (const std::invalid_argument&) {
        return false;  // on the divisor
    }
}

// S-units up to h in absolute value, positive.
std::vector<Int> s_units_up_to(const PrimeSet& s, const Int& h) {
    std::vector<Int> out{Int(1)};
    for (long p : s.primes()) {
        std::size_t n = out.size();
        for (std::size_t i = 0; i < n; ++i)
            for (Int v = out[i] * p; v <= h; v *= p) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<ProjPoint> search_integral_points(const RationalParam& line, const IntegralityContext& ctx,
                                              long height_bound) {
    if (height_bound < 1) throw std::invalid_argument("search_integral_points: height bound must be positive");
    if (line.degree() != 1) throw std::invalid_argument("search_integral_points: expected a line parametrization");
    const std::size_t n = line.comps.size();
    std::vector<Int> b1(n), b2(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rat c0 = line.comps[i].coeff(0), c1 = line.comps[i].coeff(1);
        if (c0.get_den() != 1 || c1.get_den() != 1) throw std::invalid_argument("search_integral_points: basis must be integral");
        b1[i] = c0.get_num();
        b2[i] = c1.get_num();
    }
    gauss_reduce(b1, b2);
    const Int H = height_bound;
    Int n1 = dot(b1, b1), area2 = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Int m = b1[i] * b2[j] - b1[j] * b2[i];
            area2 += m * m;
        }
    if (area2 == 0) throw std::invalid_argument("search_integral_points: degenerate basis");
    // |t| * area / |b1| <= |X| <= sqrt(n) H
    Int tmax = isqrt(Int(n) * H * H * n1 / area2) + 1;
    std::set<ProjPoint> found;
    const bool unit_w = ctx.ambient == Ambient::SurfaceModH && n == 4;
    std::vector<Int> units = unit_w ? s_units_up_to(ctx.S, H) : std::vector<Int>{};
    for (Int t = 0; t <= tmax; ++t) {
        // s range from |s b1_i + t b2_i| <= H
        Int lo = -(tmax * 4 + 4) * (H + 1), hi = -lo;
        bool empty = false;
        for (std::size_t i = 0; i < n; ++i) {
            Int c = t * b2[i];
            if (b1[i] == 0) {
                if (abs(c) > H) empty = true;
                continue;
            }
            Int l1 = (-H - c), l2 = (H - c);
            Int a = b1[i] > 0 ? cdiv(l1, b1[i]) : cdiv(l2, b1[i]);
            Int b = b1[i] > 0 ? fdiv(l2, b1[i]) : fdiv(l1, b1[i]);
            lo = std::max(lo, a);
            hi = std::min(hi, b);
        }
        if (empty || lo > hi) continue;
        auto consider = [&](const Int& s) {
            if (t == 0 && s <= 0) return;
            if (gcd(s, t) != 1) return;
            std::vector<Int> x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = s * b1[i] + t * b2[i];
            ProjPoint p(x);
            if (p.height() > H) return;
            if (keep_point(p, ctx)) found.insert(p);
        };
        if (unit_w && b1[3] != 0) {
            for (const auto& u : units)
                for (const auto& w : {u, Int(-u)}) {
                    Int num = w - t * b2[3];
                    if (num % b1[3] != 0) continue;
                    Int s = num / b1[3];
                    if (s >= lo && s <= hi) consider(s);
                }
            continue;
        }
        if (unit_w && (t * b2[3] == 0 || !is_s_unit(t * b2[3], ctx.S))) continue;
        for (Int s = lo; s <= hi; ++s) consider(s);
    }
    return {found.begin(), found.end()};
}

std::vector<ProjPoint> search_integral_points(const HomogForm& conic, const IntegralityContext& ctx,
                                              long height_bound) {
    if (height_bound < 1) throw std::invalid_argument("search_integral_points: height bound must be positive");
    if (conic.nvars() != 3 || conic.degree() != 2) throw std::invalid_argument("search_integral_points: expected a plane conic");
    HomogForm c = conic.primitive();
    // solve for a variable with a square term when possible
    int k = -1;
    for (int i = 0; i < 3 && k < 0; ++i) {
        Exps e{0, 0, 0, 0};
        e[i] = 2;
        if (c.coeff(e) != 0) k = i;
    }
    if (k < 0) k = 2;
    int i0 = k == 0 ? 1 : 0, i1 = k == 2 ? 1 : 2;
    auto co = [&](int a, int b) {
        Exps e{0, 0, 0, 0};
        e[a] += 1;
        e[b] += 1;
        return c.coeff(e).get_num();
    };
    Int a = co(k, k);
    std::set<ProjPoint> found;
    const long H = height_bound;
    for (long u = -H; u <= H; ++u)
        for (long v = -H; v <= H; ++v) {
            Int U = u, V = v;
            Int B = co(k, i0) * U + co(k, i1) * V;
            Int C = co(i0, i0) * U * U + co(i0, i1) * U * V + co(i1, i1) * V * V;
            std::vector<Int> roots;
            if (a != 0) {
                Int disc = B * B - 4 * a * C;
                if (disc < 0 || !is_square(disc)) continue;
                Int r = isqrt(disc);
                for (const auto& num : {Int(-B + r), Int(-B - r)})
                    if (num % (2 * a) == 0) roots.push_back(num / (2 * a));
            } else if (B != 0) {
                if (C % B == 0) roots.push_back(-C / B);
            } else if (C == 0) {
                for (long w = -H; w <= H; ++w) roots.push_back(Int(w));
            }
            for (const auto& w : roots) {
                if (abs(w) > H) continue;
                std::vector<Int> x(3);
                x[k] = w;
                x[i0] = U;
                x[i1] = V;
                if (x[0] == 0 && x[1] == 0 && x[2] == 0) continue;
                if (gcd(gcd(x[0], x[1]), x[2]) != 1) continue;
                ProjPoint p(x);
                if (keep_point(p, ctx)) found.insert(p);
            }
        }
    return {found.begin(), found.end()};
}

// ------------------------------------------------------------ generation

std::size_t GenerationReport::lambda_fibers_with_at_least(int k) const {
    std::size_t n = 0;
    for (const auto& [u, c] : lambda_counts)
        if (c >= k) ++n;
    return n;
}

std::size_t GenerationReport::mu_fibers_with_at_least(int k) const {
    std::size_t n = 0;
    for (const auto& [u, c] : mu_counts)
        if (c >= k) ++n;
    return n;
}

GenerationReport single_fibration_generate(const CurvePencil& pencil, const ProjPoint& Q,
                                           const IntegralityContext& ctx, const std::vector<ProjPoint>& seeds,
                                           const GenerationBudget& budget) {
    auto start = std::chrono::steady_clock::now();
    GenerationReport rep;
    rep.budget = budget;
    if (ctx.ambient != Ambient::PlaneModD) throw std::invalid_argument("single_fibration_generate: expected PlaneModD");
    if (pencil.degree() != 2) throw std::invalid_argument("single_fibration_generate: expected a pencil of conics");
    const HomogForm f = ctx.F.primitive();
    std::set<std::pair<Int, Int>> visited;
    std::size_t good = 0, violating = 0;
    for (const auto& seed : seeds) {
        if (rep.points.size() >= budget.max_points || rep.fibers_processed >= budget.max_fibers) break;
        if (!is_integral(seed, ctx)) throw std::invalid_argument("single_fibration_generate: seed is not integral");
        Rat g0 = pencil.g.eval(seed.coords()), h0 = pencil.h.eval(seed.coords());
        if (g0 == 0 && h0 == 0) continue;  // base point
        auto uv = normalize_primitive(std::vector<Rat>{h0, -g0});
        std::pair<Int, Int> u{uv[0], uv[1]};
        if (!visited.insert(u).second) continue;
        ++rep.fibers_processed;
        HomogForm member = pencil.member(Rat(u.first), Rat(u.second));
        if (!conic_is_smooth(member)) {
            ++rep.degenerate_skipped;
            continue;
        }
        RationalParam phi = parametrize_conic(member, Q);
        auto roots = rational_roots(restrict_to(f, phi));
        if (roots.size() != 1) {
            ++violating;
            continue;
        }
        ++good;
        IntMat m = unimodular_completion({roots[0].s, roots[0].t});
        RationalParam psi;
        HomogForm S = HomogForm::variable(2, 0), T = HomogForm::variable(2, 1);
        HomogForm ns = S * Rat(m[0][0]) + T * Rat(m[0][1]), nt = S * Rat(m[1][0]) + T * Rat(m[1][1]);
        for (const auto& c : phi.comps) psi.comps.push_back(c.compose({ns, nt}));
        int count = 0;
        auto add = [&](const ProjPoint& p) {
            if (rep.points.size() >= budget.max_points) return;
            bool ok = false;
            try {
                ok = is_integral(p, ctx);
            } catch (const std::invalid_argument&) {
                ok = false;
            }
            if (!ok) return;
            if (rep.points.insert(p).second) {
                ++rep.lambda_counts[u];
                ++count;
            }
        };
        add(seed);
        for (long k = 0; k <= budget.height && count < budget.orbit_len; ++k) {
            add(psi.point(Int(k), Int(1)));
            if (k) add(psi.point(Int(-k), Int(1)));
        }
    }
    if (good == 0 && violating > 0)
        throw std::invalid_argument("single_fibration_generate: fibers meet D in more than one point");
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

namespace {

std::optional<Int> exact_cube_root(const Int& v) {
    Int r;
    if (!mpz_root(r.get_mpz_t(), v.get_mpz_t(), 3)) return std::nullopt;
    return r;
}

}  // namespace

GenerationReport double_fibration_generate(const BlowupSurface& lambda, const ConicFibration& mu,
                                           const std::vector<ProjPoint>& seeds, const PrimeSet& s,
                                           const GenerationBudget& budget) {
    auto start = std::chrono::steady_clock::now();
    GenerationReport rep;
    rep.budget = budget;
    const HomogForm& F = lambda.D.form();
    if (!mu.surface.F().proportional(F)) throw std::invalid_argument("double_fibration_generate: ambient mismatch");
    const auto ctx_hat = IntegralityContext::blowup(F, lambda.P, s, false);
    const auto ctx_plane = IntegralityContext::plane(F, s);
    const auto ctx_surf = IntegralityContext::surface(s);
    if (budget.max_points == 0 || budget.max_fibers == 0) return rep;

    // tasks ordered by height so that small points are propagated first
    using Task = std::tuple<Int, int, ProjPoint>;  // (height, kind 0 = lambda / 1 = mu, point)
    std::priority_queue<Task, std::vector<Task>, std::greater<Task>> queue;
    std::set<std::pair<Int, Int>> lambda_done, mu_done;
    std::set<ProjPoint> queued_lambda, queued_mu;

    auto lift = [&](const ProjPoint& p) -> std::optional<ProjPoint> {
        auto w = exact_cube_root(int_value(F, p.coords()));
        if (!w) return std::nullopt;
        std::vector<Int> c = p.coords();
        c.push_back(*w);
        return ProjPoint(c);
    };
    auto enqueue = [&](int kind, const ProjPoint& p) {
        auto& q = kind == 0 ? queued_lambda : queued_mu;
        if (q.insert(p).second) queue.emplace(p.height(), kind, p);
    };
    auto add_point = [&](const ProjPoint& p) {
        if (p == lambda.P) return;
        if (rep.points.size() >= budget.max_points) return;
        bool ok = false;
        try {
            ok = is_integral(p, ctx_hat);
        } catch (const std::invalid_argument&) {
            ok = false;
        }
        if (!ok) {
            rep.all_verified = false;
            return;
        }
        if (!rep.points.insert(p).second) return;
        enqueue(0, p);
        if (auto l = lift(p)) {
            if (is_integral(*l, ctx_surf)) {
                rep.surface_points.insert(*l);
                enqueue(1, *l);
            }
        }
    };

    // seeds are validated up front but only reported once their task is reached
    for (const auto& seed : seeds) {
        if (seed.dim() == 3) {
            if (!mu.surface.contains(seed)) throw std::invalid_argument("double_fibration_generate: seed is not on S");
            if (!is_integral(seed, ctx_surf)) throw std::invalid_argument("double_fibration_generate: seed is not integral");
            enqueue(1, seed);
        } else {
            if (!is_integral(seed, ctx_hat)) throw std::invalid_argument("double_fibration_generate: seed is not integral");
            enqueue(0, seed);
        }
    }

    while (!queue.empty() && rep.fibers_processed < budget.max_fibers && rep.points.size() < budget.max_points) {
        auto [ht, kind, pt] = queue.top();
        queue.pop();
        if (kind == 1) {
            rep.surface_points.insert(pt);
            ProjPoint x = project_rho(pt);
            if (!on_curve(F, x)) add_point(x);
            auto u = mu.parameter_of(pt);
            if (!mu_done.insert(u).second) continue;
            ++rep.fibers_processed;
            BeukersConic bc = fiber(mu, u.first, u.second);
            if (bc.degenerate) {
                ++rep.degenerate_skipped;
                continue;
            }
            std::optional<PellAutomorphism> T;
            try {
                InfinityType inf = infinity_type(bc.plane_conic, F, x);
                T = fundamental_automorphism(bc.plane_conic, inf, ctx_plane, x);
            } catch (const std::invalid_argument&) {
                T.reset();
            }
            if (!T) {
                ++rep.no_automorphism_skipped;
                continue;
            }
            for (const auto& p : orbit(x, *T, budget.orbit_len, bc.plane_conic)) add_point(p);
        } else {
            if (pt == lambda.P) continue;
            add_point(pt);
            auto u = lambda.lambda_of(pt);
            if (!lambda_done.insert(u).second) continue;
            ++rep.fibers_processed;
            LambdaFiber lf = lambda_fiber(lambda, u.first, u.second);
            if (lf.degenerate) {
                ++rep.degenerate_skipped;
                continue;
            }
            // pt = s P + t R
            RatMat sys(3, std::vector<Rat>(2));
            for (int i = 0; i < 3; ++i) {
                sys[i][0] = lf.P[i];
                sys[i][1] = lf.R[i];
            }
            RatMat aug = sys;
            for (int i = 0; i < 3; ++i) aug[i].push_back(-Rat(pt[i]));
            auto ns = nullspace(aug);
            if (ns.size() != 1) throw std::logic_error("double_fibration_generate: point not on its lambda line");
            auto st = normalize_primitive(std::vector<Rat>{ns[0][0] / ns[0][2], ns[0][1] / ns[0][2]});
            std::optional<IntMat> g;
            if (mpz_sizeinbase(Int(lf.residual.coeff(0).get_num()).get_mpz_t(), 2) < 400)
                g = binary_automorphism(lf.residual, s);
            if (!g || max_norm(*g) > Int(1) << 1500) {
                ++rep.no_automorphism_skipped;
                continue;
            }
            std::vector<Int> v = st;
            for (int k = 1; k < budget.orbit_len; ++k) {
                v = normalize_primitive(int_apply(*g, v));
                if (v[1] == 0) continue;
                std::vector<Int> x(3);
                for (int i = 0; i < 3; ++i) x[i] = v[0] * lf.P[i] + v[1] * lf.R[i];
                add_point(ProjPoint(x));
            }
        }
    }

    for (const auto& p : rep.points) ++rep.lambda_counts[lambda.lambda_of(p)];
    for (const auto& p : rep.surface_points) ++rep.mu_counts[mu.parameter_of(p)];
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

// ------------------------------------------------------------ hypotheses

HomogForm ramification_curve(const CurvePencil& lambda, const CurvePencil& mu) {
    // fiber gradients h grad g - g grad h are orthogonal to x; their cross product is phi * x
    auto fiber_grad = [](const CurvePencil& p) {
        std::vector<HomogForm> out;
        for (int i = 0; i < 3; ++i) out.push_back(p.h * p.g.derivative(i) - p.g * p.h.derivative(i));
        return out;
    };
    auto u = fiber_grad(lambda), v = fiber_grad(mu);
    HomogForm c0 = u[1] * v[2] - u[2] * v[1];
    HomogForm c1 = u[2] * v[0] - u[0] * v[2];
    HomogForm c2 = u[0] * v[1] - u[1] * v[0];
    if (c0.is_zero() && c1.is_zero() && c2.is_zero()) return HomogForm(3, 0);
    auto q = c0.divide_exact(HomogForm::variable(3, 0));
    if (!q) throw std::logic_error("ramification_curve: cross product is not a multiple of x");
    if (q->is_zero()) {
        auto q1 = c1.divide_exact(HomogForm::variable(3, 1));
        if (!q1) throw std::logic_error("ramification_curve: cross product is not a multiple of y");
        q = q1;
    }
    return q->primitive();
}

std::optional<std::pair<Int, Int>> member_divisible_by(const CurvePencil& pencil, const HomogForm& k) {
    if (k.degree() > pencil.degree()) return std::nullopt;
    HomogForm rg = pencil.g.divmod(k).second, rh = pencil.h.divmod(k).second;
    if (rg.is_zero() && rh.is_zero()) return std::make_pair(Int(0), Int(0));
    if (rg.is_zero()) return std::make_pair(Int(1), Int(0));
    if (rh.is_zero()) return std::make_pair(Int(0), Int(1));
    if (!rg.proportional(rh)) return std::nullopt;
    // a rg + b rh = 0
    std::size_t i = 0;
    while (rg.coeff(i) == 0) ++i;
    auto v = normalize_primitive(std::vector<Rat>{rh.coeff(i), -rg.coeff(i)});
    return std::make_pair(v[0], v[1]);
}

namespace {

HomogForm radical(const HomogForm& f) {
    LinearSplit sp = split_linear_factors(f);
    HomogForm r = HomogForm::constant(3, Rat(1));
    std::vector<HomogForm> lines;
    for (const auto& l : sp.lines)
        if (std::find(lines.begin(), lines.end(), l) == lines.end()) lines.push_back(l);
    for (const auto& l : lines) r = r * l;
    if (sp.rest.degree() > 0) r = r * sp.rest.primitive();
    return r;
}

// Rational roots of a binary form given by its values at interpolation nodes.
std::vector<std::pair<Int, Int>> members_vanishing(const std::function<Rat(const Rat&, const Rat&)>& value, int degree) {
    std::vector<Rat> xs, ys;
    for (int k = 0; k <= degree; ++k) {
        xs.push_back(Rat(k));
        ys.push_back(value(Rat(k), Rat(1)));
    }
    UPoly p = interpolate(xs, ys);
    std::vector<std::pair<Int, Int>> out;
    if (p.is_zero()) return out;
    HomogForm h = homogenize(p, degree);
    for (const auto& r : rational_roots(h)) out.push_back(normalized_pair(r.s, r.t));
    return out;
}

}  // namespace

std::vector<std::pair<Int, Int>> members_dividing(const CurvePencil& pencil, const HomogForm& b) {
    std::vector<std::pair<Int, Int>> out;
    if (b.is_zero()) return out;
    // restrict to a generic line: the member's roots must be roots of b there
    RationalParam line{{binary({Rat(1), Rat(2)}), binary({Rat(3), Rat(-1)}), binary({Rat(-2), Rat(5)})}};
    HomogForm bl = restrict_to(b, line), gl = restrict_to(pencil.g, line), hl = restrict_to(pencil.h, line);
    auto value = [&](const Rat& a, const Rat& c) { return resultant(gl * a + hl * c, bl); };
    std::vector<std::pair<Int, Int>> cands =
        members_vanishing(value, b.degree());
    if (value(Rat(1), Rat(0)) == 0) cands.push_back({Int(1), Int(0)});
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (const auto& [a, c] : cands) {
        HomogForm m = pencil.member(Rat(a), Rat(c));
        if (m.is_zero()) continue;
        if (b.divide_exact(radical(m))) out.push_back({a, c});
    }
    return out;
}

std::vector<DComponent> constancy_flags(const std::vector<HomogForm>& components, const CurvePencil& lambda,
                                        const CurvePencil& mu) {
    std::vector<DComponent> out;
    for (const auto& c : components)
        out.push_back({c, member_divisible_by(lambda, c).has_value(), member_divisible_by(mu, c).has_value()});
    return out;
}

H1Result check_H1(const HomogForm& branch, const CurvePencil& lambda, const CurvePencil& mu,
                  const std::vector<DComponent>& d) {
    for (const auto& c : d)
        if (!c.lambda_constant || !c.mu_constant) throw std::invalid_argument("check_H1: missing constancy flags");
    H1Result r;
    r.branch_fibers = branch.is_zero() || branch.degree() == 0 ? std::vector<std::pair<Int, Int>>{}
                                                               : members_dividing(lambda, branch);
    // lambda(D_mu): D_mu = components not constant under mu
    std::set<std::pair<Int, Int>> image;
    bool horizontal = false;
    bool any = false;
    for (const auto& c : d) {
        if (*c.mu_constant) continue;
        any = true;
        if (!*c.lambda_constant) {
            horizontal = true;
            continue;
        }
        auto u = member_divisible_by(lambda, c.form);
        if (u) image.insert(*u);
    }
    r.lambda_of_Dmu_is_point = !any || (!horizontal && image.size() <= 1);
    r.holds = r.branch_fibers.empty() || (r.branch_fibers.size() == 1 && !r.lambda_of_Dmu_is_point);
    (void)mu;
    return r;
}

namespace {

std::vector<HomogForm> degenerate_components(const CurvePencil& p) {
    std::vector<HomogForm> out;
    if (p.degree() == 1) return out;
    if (p.degree() != 2) throw std::invalid_argument("check_H3: only pencils of lines and conics are supported");
    auto add_components = [&](const HomogForm& m) {
        LinearSplit sp = split_linear_factors(m);
        for (const auto& l : sp.lines)
            if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    };
    RatMat A = symmetric_matrix(p.g), B = symmetric_matrix(p.h);
    auto value = [&](const Rat& a, const Rat& b) {
        RatMat m(3, std::vector<Rat>(3));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m[i][j] = A[i][j] * a + B[i][j] * b;
        return det(m);
    };
    bool all_singular = true;
    for (int k = 0; k <= 3 && all_singular; ++k) all_singular = value(Rat(k), Rat(1)) == 0;
    if (all_singular && value(Rat(1), Rat(0)) == 0) {
        // fixed components
        LinearSplit sg = split_linear_factors(p.g);
        for (const auto& l : sg.lines)
            if (p.h.divide_exact(l) && std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
        return out;
    }
    auto roots = members_vanishing(value, 3);
    if (value(Rat(1), Rat(0)) == 0) roots.push_back({Int(1), Int(0)});
    for (const auto& [a, b] : roots) add_components(p.member(Rat(a), Rat(b)));
    return out;
}

}  // namespace

H3Result check_H3(const CurvePencil& lambda, const CurvePencil& mu, const std::optional<HomogForm>& d) {
    if (lambda.degree() < 1 || lambda.degree() > 2 || mu.degree() < 1 || mu.degree() > 2)
        throw std::invalid_argument("check_H3: only pencils of lines and conics are supported");
    H3Result r;
    auto excluded = [&](const HomogForm& k) { return d && d->divide_exact(k).has_value(); };
    auto push = [&](const HomogForm& k) {
        HomogForm kp = k.primitive();
        if (excluded(kp)) return;
        if (std::find(r.curves.begin(), r.curves.end(), kp) == r.curves.end()) r.curves.push_back(kp);
    };
    // shared members
    if (lambda.degree() == mu.degree()) {
        RatMat m;
        for (std::size_t i = 0; i < lambda.g.coeffs().size(); ++i)
            m.push_back({lambda.g.coeff(i), lambda.h.coeff(i), -mu.g.coeff(i), -mu.h.coeff(i)});
        auto ns = nullspace(m);
        if (ns.size() >= 2) {
            r.same_pencil = true;
            for (const auto& k : degenerate_components(lambda)) push(k);
            std::sort(r.curves.begin(), r.curves.end(), [](const HomogForm& a, const HomogForm& b) { return a.str() < b.str(); });
            return r;
        }
        if (ns.size() == 1) {
            HomogForm shared = lambda.member(ns[0][0], ns[0][1]);
            LinearSplit sp = split_linear_factors(shared);
            for (const auto& l : sp.lines) push(l);
            if (sp.rest.degree() > 0) push(sp.rest);
        }
    }
    for (const auto& k : degenerate_components(lambda))
        if (member_divisible_by(mu, k)) push(k);
    for (const auto& k : degenerate_components(mu))
        if (member_divisible_by(lambda, k)) push(k);
    std::sort(r.curves.begin(), r.curves.end(), [](const HomogForm& a, const HomogForm& b) { return a.str() < b.str(); });
    return r;
}

}  // namespace lk3
