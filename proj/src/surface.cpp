#include "lk3/surface.hpp"

#include <algorithm>
#include <stdexcept>

namespace lk3 {

namespace {

HomogForm var4(int i) { return HomogForm::variable(4, i); }

std::vector<Int> int_coeffs(const HomogForm& l) {
    std::vector<Int> v;
    for (const auto& c : l.coeffs()) {
        if (c.get_den() != 1) throw std::logic_error("int_coeffs: non-integral coefficient");
        v.push_back(c.get_num());
    }
    return v;
}

std::optional<Rat> rational_cube_root(const Rat& c) {
    Int n = c.get_num(), d = c.get_den();
    Int rn, rd;
    bool neg = n < 0;
    if (neg) n = -n;
    if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), 3)) return std::nullopt;
    if (!mpz_root(rd.get_mpz_t(), d.get_mpz_t(), 3)) return std::nullopt;
    Rat r = make_rat(rn, rd);
    return neg ? Rat(-r) : r;
}

std::pair<Int, Int> normalized_pair(const Int& a, const Int& b) {
    auto v = normalize_primitive(std::vector<Int>{a, b});
    return {v[0], v[1]};
}

bool all_zero(const std::vector<Int>& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

}  // namespace

HomogForm lift_to_p3(const HomogForm& f) {
    if (f.nvars() != 3) throw std::invalid_argument("lift_to_p3: expected a ternary form");
    return f.compose({var4(0), var4(1), var4(2)});
}

CubicSurface::CubicSurface(const PlaneCubic& d) : d_(d), g_(var4(3).pow(3) - lift_to_p3(d.form())) {}

bool CubicSurface::contains(const ProjPoint& p) const {
    if (p.dim() != 3) throw std::invalid_argument("CubicSurface::contains: expected a point of P^3");
    return g_.eval(p.coords()) == 0;
}

// ------------------------------------------------------------ lines

RationalParam SurfaceLine::param() const { return line_param(std::vector<HomogForm>{L4, E4}); }

std::string SurfaceLine::str() const { return L4.str() + " = " + E4.str() + " = 0"; }

std::optional<SurfaceLine> surface_line_over(const CubicSurface& s, const HomogForm& l) {
    FlexDecomposition dec = flex_decomposition(s.base(), l);
    auto gamma = rational_cube_root(dec.c);
    if (!gamma) return std::nullopt;
    SurfaceLine out;
    out.flexline = l.primitive();
    out.mform = dec.M * (1 / *gamma);
    out.qform = dec.Q * (1 / dec.c);
    // F = l*Q' + M'^3 with l as given; rescale Q' for the primitive L
    Rat k = l.scale_to_primitive();
    out.qform = out.qform * (1 / k);
    out.flex = line_meet(out.flexline, dec.M);
    out.L4 = lift_to_p3(out.flexline);
    out.E4 = (var4(3) - lift_to_p3(out.mform)).primitive();
    return out;
}

RationalLines rational_lines(const CubicSurface& s) {
    CubicClass c = classify(s.base());
    if (c != CubicClass::Smooth && c != CubicClass::Nodal && c != CubicClass::Cuspidal)
        throw std::invalid_argument("rational_lines: base cubic is reducible");
    RationalLines out;
    std::vector<HomogForm> seen;
    for (const auto& fl : rational_flexes(s.base()))
        for (const auto& l : fl.lines) {
            if (std::find(seen.begin(), seen.end(), l.primitive()) != seen.end()) continue;
            seen.push_back(l.primitive());
            auto sl = surface_line_over(s, l);
            if (sl) out.lines.push_back(*sl);
            else ++out.flex_lines_without_rational_line;
        }
    if (out.lines.size() >= 2) {
        IntMat pts;
        for (const auto& sl : out.lines) {
            auto p = sl.param();
            pts.push_back(p.point(Int(1), Int(0)).coords());
            pts.push_back(p.point(Int(0), Int(1)).coords());
        }
        auto k = integer_kernel(pts);
        if (k.size() == 1) out.common_plane = HomogForm::linear(normalize_primitive(k[0]));
    }
    return out;
}

ConcurrencyCheck check_concurrency(const CubicSurface& s, const HomogForm& l) {
    auto sl = surface_line_over(s, l);
    if (!sl) throw std::invalid_argument("check_concurrency: the lines over L are not defined over Q(zeta_3)");
    const long d = -3;
    QuadElem zeta(Rat(-1, 2), Rat(1, 2), d);
    QuadElem one = QuadElem::rational(Rat(1), d);
    std::vector<QuadElem> roots{one, zeta, zeta * zeta};
    RationalParam lp = line_param(sl->flexline);
    bool on = true;
    for (const auto& z : roots)
        for (long k = 0; k < 5; ++k) {
            auto xyz = lp.at(Int(1), Int(k));
            std::vector<QuadElem> pt;
            for (const auto& c : xyz) pt.push_back(QuadElem::rational(c, d));
            pt.push_back(z * sl->mform.eval(xyz));
            if (!s.equation().eval(pt).is_zero()) on = false;
        }
    std::vector<Int> common = sl->flex.coords();
    common.push_back(Int(0));
    std::vector<Rat> fx = sl->flex.rat();
    bool conc = sl->flexline.eval(fx) == 0 && sl->mform.eval(fx) == 0;
    return {on, conc, ProjPoint(common)};
}

// ------------------------------------------------------------ conic fibration

HomogForm ConicFibration::plane(const Int& a, const Int& b) const { return axis.L4 * Rat(a) + axis.E4 * Rat(b); }

std::pair<Int, Int> ConicFibration::parameter_of(const ProjPoint& p) const {
    if (!surface.contains(p)) throw std::invalid_argument("parameter_of: point is not on the surface");
    auto pr = p.rat();
    Rat lv = axis.L4.eval(pr), ev = axis.E4.eval(pr);
    if (lv != 0 || ev != 0) {
        auto v = normalize_primitive(std::vector<Rat>{ev, -lv});
        return {v[0], v[1]};
    }
    // p on the axis: the tangent plane contains it
    std::vector<Rat> g;
    for (int i = 0; i < 4; ++i) g.push_back(surface.equation().derivative(i).eval(pr));
    if (std::all_of(g.begin(), g.end(), [](const Rat& r) { return r == 0; }))
        throw std::invalid_argument("parameter_of: singular point of the surface");
    RatMat m(4, std::vector<Rat>(3));
    for (int i = 0; i < 4; ++i) {
        m[i][0] = axis.L4.coeffs()[i];
        m[i][1] = axis.E4.coeffs()[i];
        m[i][2] = g[i];
    }
    auto ns = nullspace(m);
    if (ns.size() != 1 || ns[0][2] == 0) throw std::logic_error("parameter_of: tangent plane does not contain the axis");
    auto v = normalize_primitive(std::vector<Rat>{ns[0][0], ns[0][1]});
    return {v[0], v[1]};
}

ProjPoint BeukersConic::lift(const std::vector<Int>& v) const {
    std::vector<Int> p(4, Int(0));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j) p[i] += basis[i][j] * v[j];
    return ProjPoint(p);
}

BeukersConic fiber(const ConicFibration& mu, const Int& a, const Int& b) {
    if (a == 0 && b == 0) throw std::invalid_argument("fiber: parameter [0:0]");
    auto [na, nb] = normalized_pair(a, b);
    BeukersConic out;
    out.a = na;
    out.b = nb;
    out.plane = mu.plane(na, nb);
    auto ker = integer_kernel(IntMat{int_coeffs(out.plane)});
    out.basis.assign(4, std::vector<Int>(3));
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 4; ++i) out.basis[i][j] = ker[j][i];
    std::vector<HomogForm> subs;
    for (int i = 0; i < 4; ++i) subs.push_back(HomogForm::linear(out.basis[i]));
    HomogForm gp = mu.surface.equation().compose(subs);
    HomogForm axis_in_plane = (nb != 0 ? mu.axis.L4 : mu.axis.E4).compose(subs);
    auto q = gp.divide_exact(axis_in_plane);
    if (!q) throw std::logic_error("fiber: axis does not divide the plane section");
    out.surface_conic = *q;
    out.degenerate = nb == 0 || det(symmetric_matrix(out.surface_conic)) == 0;

    const HomogForm &L = mu.axis.flexline, &M = mu.axis.mform, &Q = mu.axis.qform;
    Rat e = mu.axis.E4.coeffs()[monomial_index(4, 1, Exps{0, 0, 0, 1})];
    if (nb == 0) {
        out.plane_conic = (L * L).primitive();
    } else {
        // on the plane, w = M + tau*L
        Rat tau = -Rat(na) / (Rat(nb) * e);
        out.plane_conic = (M * M * (3 * tau) + M * L * (3 * tau * tau) + L * L * (tau * tau * tau) - Q).primitive();
    }
    // line at infinity: a*L + b*E restricted to w = 0
    HomogForm e0 = (mu.axis.E4 - var4(3) * e).compose({HomogForm::variable(3, 0), HomogForm::variable(3, 1),
                                                        HomogForm::variable(3, 2), HomogForm(3, 1)});
    out.infinity.line = (L * Rat(na) + e0 * Rat(nb)).primitive();
    out.infinity.param = line_param(out.infinity.line);
    out.infinity.form = restrict_to_line(out.plane_conic, out.infinity.param);
    if (!out.degenerate && !out.infinity.form.is_zero()) {
        for (const auto& r : binary_rational_roots(out.infinity.form)) {
            ProjPoint p = out.infinity.param.point(r.s, r.t);
            RationalParam cp = parametrize_conic(out.plane_conic, p);
            out.infinity.rational_points.emplace_back(p, intersection_multiplicity(mu.surface.F(), cp, p));
        }
    }
    return out;
}

SectionResult section_check(const ConicFibration& mu, const SurfaceLine& other) {
    RationalParam op = other.param();
    if (!restrict_to(mu.surface.equation(), op).is_zero())
        throw std::invalid_argument("section_check: line is not on the fibration's surface");
    IntMat m{int_coeffs(mu.axis.L4), int_coeffs(mu.axis.E4), int_coeffs(other.L4), int_coeffs(other.E4)};
    if (det(m) != 0) return {LineRelation::Section, std::nullopt};
    auto k = integer_kernel(m);
    if (k.size() != 1) throw std::invalid_argument("section_check: the two lines coincide");
    return {LineRelation::Coplanar, ProjPoint(k[0])};
}

// ------------------------------------------------------------ blow-up and lambda

BlowupSurface::BlowupSurface(const PlaneCubic& d, const ProjPoint& p) : D(d), P(p) {
    if (p.dim() != 2) throw std::invalid_argument("BlowupSurface: P must lie in P^2");
    if (!on_curve(d.form(), p)) throw std::invalid_argument("BlowupSurface: P is not on D");
    auto g = gradient(d.form(), p.rat());
    if (std::all_of(g.begin(), g.end(), [](const Rat& r) { return r == 0; }))
        throw std::invalid_argument("BlowupSurface: P is a singular point of D");
    auto k = integer_kernel(IntMat{p.coords()});
    gauss_reduce(k[0], k[1]);
    l1 = HomogForm::linear(normalize_primitive(k[0]));
    l2 = HomogForm::linear(normalize_primitive(k[1]));
}

std::pair<Int, Int> BlowupSurface::lambda_of(const ProjPoint& q) const {
    if (q == P) throw std::invalid_argument("lambda_of: lambda is undefined at P");
    Rat u = l1.eval(q.coords()), v = l2.eval(q.coords());
    auto r = normalize_primitive(std::vector<Rat>{v, -u});
    return {r[0], r[1]};
}

namespace {

RationalParam param_from(const ProjPoint& p, const ProjPoint& r) {
    RationalParam out;
    for (int i = 0; i < 3; ++i) out.comps.push_back(binary({Rat(p[i]), Rat(r[i])}));
    return out;
}

}  // namespace

RationalParam LambdaFiber::param() const { return param_from(P, R); }

LambdaFiber lambda_fiber(const BlowupSurface& x, const Int& a, const Int& b) {
    if (a == 0 && b == 0) throw std::invalid_argument("lambda_fiber: parameter [0:0]");
    auto [na, nb] = normalized_pair(a, b);
    LambdaFiber out;
    out.a = na;
    out.b = nb;
    out.line = x.line(na, nb).primitive();
    auto ker = integer_kernel(IntMat{int_coeffs(out.line)});
    // coordinates of P in the kernel basis
    RatMat sys(3, std::vector<Rat>(3));
    for (int i = 0; i < 3; ++i) {
        sys[i][0] = ker[0][i];
        sys[i][1] = ker[1][i];
        sys[i][2] = x.P[i];
    }
    auto ns = nullspace(sys);
    Rat al = -ns[0][0] / ns[0][2], be = -ns[0][1] / ns[0][2];
    IntMat u = unimodular_completion({al.get_num(), be.get_num()});
    std::vector<Int> r(3);
    for (int i = 0; i < 3; ++i) r[i] = u[0][1] * ker[0][i] + u[1][1] * ker[1][i];
    // shorten R modulo P
    Int pp = 0, rp = 0;
    for (int i = 0; i < 3; ++i) {
        pp += x.P[i] * x.P[i];
        rp += r[i] * x.P[i];
    }
    Int k, num = 2 * rp + pp;
    mpz_fdiv_q(k.get_mpz_t(), num.get_mpz_t(), Int(2 * pp).get_mpz_t());
    for (int i = 0; i < 3; ++i) r[i] -= k * x.P[i];
    out.P = x.P;
    out.R = ProjPoint(r);  // a sign flip keeps {P, R} a basis
    HomogForm h = restrict_to(x.D.form(), param_from(x.P, out.R));
    if (h.is_zero()) {
        out.residual = HomogForm(2, 2);
        out.degenerate = true;
        return out;
    }
    auto q = h.divide_exact(HomogForm::variable(2, 1));
    if (!q) throw std::logic_error("lambda_fiber: P is not a root");
    out.residual = *q;
    out.degenerate = out.residual.coeff(0) == 0;
    return out;
}

LambdaBranch lambda_branch_on_conic(const BlowupSurface& x, const HomogForm& conic) {
    if (!conic_is_smooth(conic)) throw std::invalid_argument("lambda_branch_on_conic: conic is singular");
    if (on_curve(conic, x.P)) throw std::invalid_argument("lambda_branch_on_conic: P lies on the conic");
    auto g = gradient(conic, x.P.rat());
    HomogForm polar = HomogForm::linear(normalize_primitive(g));
    RationalParam pp = line_param(polar);
    HomogForm q = restrict_to_line(conic, pp);
    Rat a0 = q.coeff(0), a1 = q.coeff(1), a2 = q.coeff(2);
    Rat disc = a1 * a1 - 4 * a0 * a2;
    LambdaBranch out;
    const HomogForm& F = x.D.form();
    auto rat_branch = [&](const Int& s, const Int& t) {
        BranchPoint bp;
        auto v = pp.point(s, t);
        bp.re = v.rat();
        bp.im.assign(3, Rat(0));
        auto tl = cross(x.P.coords(), v.coords());
        bp.tangent_re.assign(tl.begin(), tl.end());
        bp.tangent_im.assign(3, Rat(0));
        bp.on_D = on_curve(F, v);
        return bp;
    };
    Int dn = disc.get_num() * disc.get_den();
    if (disc == 0) throw std::logic_error("lambda_branch_on_conic: polar line tangent to a smooth conic");
    if (dn > 0 && is_square(dn)) {
        out.d = 1;
        for (const auto& r : binary_rational_roots(q)) out.points.push_back(rat_branch(r.s, r.t));
        return out;
    }
    Int sq = squarefree_part(dn);
    out.d = sq;
    long d = sq.get_si();
    // sqrt(disc) = k*sqrt(d) with k = sqrt(disc/d)
    Rat kk = disc / Rat(sq);
    Int kn = isqrt(kk.get_num()), kd = isqrt(kk.get_den());
    Rat k = make_rat(kn, kd);
    for (int sgn : {1, -1}) {
        // root [s:t] = [-a1 + sgn*k*sqrt(d) : 2*a0]; a0 != 0 since the roots are irrational
        QuadElem s(-a1, k * sgn, d);
        QuadElem t = QuadElem::rational(2 * a0, d);
        std::vector<QuadElem> v;
        for (int i = 0; i < 3; ++i) v.push_back(s * pp.comps[i].coeff(0) + t * pp.comps[i].coeff(1));
        BranchPoint bp;
        for (const auto& c : v) {
            bp.re.push_back(c.a());
            bp.im.push_back(c.b());
        }
        std::vector<QuadElem> pq;
        for (int i = 0; i < 3; ++i) pq.push_back(QuadElem::rational(Rat(x.P[i]), d));
        std::vector<QuadElem> tl{pq[1] * v[2] - pq[2] * v[1], pq[2] * v[0] - pq[0] * v[2], pq[0] * v[1] - pq[1] * v[0]};
        for (const auto& c : tl) {
            bp.tangent_re.push_back(c.a());
            bp.tangent_im.push_back(c.b());
        }
        bp.on_D = F.eval(v).is_zero();
        out.points.push_back(bp);
    }
    return out;
}

// ------------------------------------------------------------ pencils

CurvePencil osculating_pencil(const HomogForm& conic, const HomogForm& tangent, const ProjPoint& q) {
    if (!on_curve(conic, q) || !on_curve(tangent, q)) throw std::invalid_argument("osculating_pencil: Q not on both curves");
    if (intersection_multiplicity(conic, line_param(tangent), q) != 2)
        throw std::invalid_argument("osculating_pencil: line is not tangent to the conic at Q");
    return {tangent * tangent, conic};
}

CurvePencil conics_through_four_points(const ProjPoint& p1, const ProjPoint& p2, const ProjPoint& p3,
                                       const ProjPoint& p4) {
    std::vector<ProjPoint> ps{p1, p2, p3, p4};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (ps[i] == ps[j]) throw std::invalid_argument("conics_through_four_points: repeated point");
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k)
                if (collinear(ps[i], ps[j], ps[k])) throw std::invalid_argument("conics_through_four_points: three collinear points");
    return {line_through(p1, p2) * line_through(p3, p4), line_through(p1, p3) * line_through(p2, p4)};
}

ProjPoint project_rho(const ProjPoint& p) {
    if (p.dim() != 3) throw std::invalid_argument("project_rho: expected a point of P^3");
    std::vector<Int> v(p.coords().begin(), p.coords().begin() + 3);
    if (all_zero(v)) throw std::invalid_argument("project_rho: undefined at [0:0:0:1]");
    return ProjPoint(v);
}

}  // namespace lk3
