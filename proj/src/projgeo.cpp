#include "lk3/projgeo.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lk3 {

// ------------------------------------------------------------ ProjPoint

ProjPoint::ProjPoint(const std::vector<Int>& coords) : c_(normalize_primitive(coords)) {
    if (c_.size() < 2 || c_.size() > 4) throw std::invalid_argument("ProjPoint: dimension must be 1..3");
}

ProjPoint::ProjPoint(const std::vector<Rat>& coords) : c_(normalize_primitive(coords)) {
    if (c_.size() < 2 || c_.size() > 4) throw std::invalid_argument("ProjPoint: dimension must be 1..3");
}

ProjPoint::ProjPoint(std::initializer_list<long> coords) {
    std::vector<Int> v;
    for (long c : coords) v.push_back(Int(c));
    *this = ProjPoint(v);
}

Int ProjPoint::height() const {
    Int h = 0;
    for (const auto& x : c_) h = std::max(h, abs(x));
    return h;
}

bool ProjPoint::operator<(const ProjPoint& o) const {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    return c_ < o.c_;
}

std::string ProjPoint::str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ":";
        s += c_[i].get_str();
    }
    return s + "]";
}

std::vector<Rat> RationalParam::at(const Int& s, const Int& t) const {
    std::vector<Rat> v;
    std::vector<Int> st{s, t};
    for (const auto& c : comps) v.push_back(c.eval(st));
    return v;
}

ProjPoint RationalParam::point(const Int& s, const Int& t) const { return ProjPoint(at(s, t)); }

Rat evaluate(const HomogForm& f, const ProjPoint& p) {
    if (f.nvars() != p.dim() + 1) throw std::invalid_argument("evaluate: dimension mismatch");
    return f.eval(p.coords());
}

bool on_curve(const HomogForm& f, const ProjPoint& p) { return evaluate(f, p) == 0; }

// ------------------------------------------------------------ lines

std::vector<Int> cross(const std::vector<Int>& a, const std::vector<Int>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

HomogForm line_through(const ProjPoint& p, const ProjPoint& q) {
    if (p.dim() != 2 || q.dim() != 2) throw std::invalid_argument("line_through: points must lie in P^2");
    if (p == q) throw std::invalid_argument("line_through: points coincide");
    return HomogForm::linear(normalize_primitive(cross(p.coords(), q.coords())));
}

namespace {

std::vector<Int> int_coeffs(const HomogForm& l) {
    HomogForm p = l.primitive();
    std::vector<Int> v;
    for (const auto& c : p.coeffs()) v.push_back(c.get_num());
    return v;
}

}  // namespace

ProjPoint line_meet(const HomogForm& l1, const HomogForm& l2) {
    auto c = cross(int_coeffs(l1), int_coeffs(l2));
    if (c[0] == 0 && c[1] == 0 && c[2] == 0) throw std::invalid_argument("line_meet: lines coincide");
    return ProjPoint(c);
}

bool collinear(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r) {
    IntMat m{p.coords(), q.coords(), r.coords()};
    return det(m) == 0;
}

namespace {

RationalParam param_from_basis(std::vector<Int> b1, std::vector<Int> b2) {
    gauss_reduce(b1, b2);
    RationalParam r;
    for (std::size_t i = 0; i < b1.size(); ++i) r.comps.push_back(binary({Rat(b1[i]), Rat(b2[i])}));
    return r;
}

}  // namespace

RationalParam line_param(const HomogForm& l) { return line_param(std::vector<HomogForm>{l}); }

RationalParam line_param(const std::vector<HomogForm>& equations) {
    IntMat m;
    for (const auto& e : equations) {
        if (e.degree() != 1) throw std::invalid_argument("line_param: equations must be linear");
        m.push_back(int_coeffs(e));
    }
    auto k = integer_kernel(m);
    if (k.size() != 2) throw std::invalid_argument("line_param: equations do not cut out a line");
    return param_from_basis(k[0], k[1]);
}

RationalParam line_param_through(const ProjPoint& p, const ProjPoint& q) {
    if (p.dim() != q.dim()) throw std::invalid_argument("line_param_through: dimension mismatch");
    if (p == q) throw std::invalid_argument("line_param_through: points coincide");
    auto eqs = integer_kernel(IntMat{p.coords(), q.coords()});
    std::vector<HomogForm> forms;
    for (const auto& e : eqs) forms.push_back(HomogForm::linear(e));
    return line_param(forms);
}

std::vector<Rat> gradient(const HomogForm& f, const std::vector<Rat>& p) {
    std::vector<Rat> g;
    for (int v = 0; v < f.nvars(); ++v) g.push_back(f.derivative(v).eval(p));
    return g;
}

HomogForm tangent_line(const HomogForm& f, const ProjPoint& p) {
    auto g = gradient(f, p.rat());
    if (std::all_of(g.begin(), g.end(), [](const Rat& r) { return r == 0; }))
        throw std::invalid_argument("tangent_line: point is singular");
    return HomogForm::linear(normalize_primitive(g));
}

// ------------------------------------------------------------ restriction and multiplicity

HomogForm restrict_to(const HomogForm& f, const RationalParam& c) { return f.compose(c.comps); }

HomogForm restrict_to_line(const HomogForm& f, const RationalParam& line) {
    if (line.degree() != 1) throw std::invalid_argument("restrict_to_line: not a line parametrization");
    return restrict_to(f, line);
}

std::vector<std::pair<Int, Int>> parameters_of(const RationalParam& c, const ProjPoint& p) {
    if (static_cast<int>(c.comps.size()) != p.dim() + 1) throw std::invalid_argument("parameters_of: dimension mismatch");
    std::optional<HomogForm> g;
    for (std::size_t i = 0; i < c.comps.size(); ++i)
        for (std::size_t j = i + 1; j < c.comps.size(); ++j) {
            HomogForm m = c.comps[j] * Rat(p[i]) - c.comps[i] * Rat(p[j]);
            if (m.is_zero()) continue;
            g = g ? binary_gcd(*g, m) : m.primitive();
        }
    if (!g) throw std::invalid_argument("parameters_of: degenerate parametrization");
    std::vector<std::pair<Int, Int>> out;
    if (g->degree() == 0) return out;
    for (const auto& r : binary_rational_roots(*g)) {
        auto v = c.at(r.s, r.t);
        if (std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; })) continue;
        if (ProjPoint(v) == p) out.emplace_back(r.s, r.t);
    }
    return out;
}

int vanishing_order(const HomogForm& f, const Int& s, const Int& t) {
    if (f.is_zero()) throw std::invalid_argument("vanishing_order: zero form");
    HomogForm lin = binary_root_factor(s, t);
    HomogForm cur = f;
    int k = 0;
    while (cur.degree() > 0) {
        auto q = cur.divide_exact(lin);
        if (!q) break;
        cur = *q;
        ++k;
    }
    return k;
}

int intersection_multiplicity(const HomogForm& f, const RationalParam& c, const ProjPoint& p) {
    auto params = parameters_of(c, p);
    if (params.empty()) throw std::invalid_argument("intersection_multiplicity: point is not on the curve");
    HomogForm h = restrict_to(f, c);
    if (h.is_zero()) throw std::invalid_argument("intersection_multiplicity: curve is contained in F = 0");
    int total = 0;
    for (const auto& [s, t] : params) total += vanishing_order(h, s, t);
    return total;
}

// ------------------------------------------------------------ conics

RatMat symmetric_matrix(const HomogForm& q) {
    if (q.nvars() != 3 || q.degree() != 2) throw std::invalid_argument("symmetric_matrix: expected a ternary quadric");
    RatMat a(3, std::vector<Rat>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            Exps e{0, 0, 0, 0};
            ++e[i];
            ++e[j];
            Rat c = q.coeff(e);
            if (i == j) a[i][i] = c;
            else a[i][j] = a[j][i] = c / 2;
        }
    return a;
}

HomogForm quadric_from_matrix(const RatMat& a) {
    HomogForm q(3, 2);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            Exps e{0, 0, 0, 0};
            ++e[i];
            ++e[j];
            q.set_coeff(e, i == j ? a[i][i] : a[i][j] * 2);
        }
    return q;
}

bool conic_is_smooth(const HomogForm& q) { return det(symmetric_matrix(q)) != 0; }

RationalParam parametrize_conic(const HomogForm& q, const ProjPoint& p) {
    if (q.nvars() != 3 || q.degree() != 2) throw std::invalid_argument("parametrize_conic: expected a plane conic");
    if (p.dim() != 2) throw std::invalid_argument("parametrize_conic: point must lie in P^2");
    if (!conic_is_smooth(q)) throw std::invalid_argument("parametrize_conic: conic is reducible");
    if (!on_curve(q, p)) throw std::invalid_argument("parametrize_conic: point is not on the conic");
    auto grad = gradient(q, p.rat());
    // stereographic projection from p onto the line spanned by two unit vectors
    int k = 0;
    while (p[k] == 0) ++k;
    std::vector<int> others;
    for (int i = 0; i < 3; ++i)
        if (i != k) others.push_back(i);
    std::vector<HomogForm> line(3, HomogForm(2, 1));
    line[others[0]] = HomogForm::variable(2, 0);
    line[others[1]] = HomogForm::variable(2, 1);
    HomogForm polar(2, 1);
    for (int i = 0; i < 3; ++i) polar = polar + line[i] * grad[i];
    HomogForm qq = q.compose(line);
    RationalParam r;
    for (int i = 0; i < 3; ++i) r.comps.push_back(polar * line[i] - qq * Rat(p[i]));
    // common integral scaling with content 1
    Int den = 1, g = 0;
    for (const auto& c : r.comps)
        for (const auto& x : c.coeffs()) den = lcm(den, x.get_den());
    for (const auto& c : r.comps)
        for (const auto& x : c.coeffs()) g = gcd(g, Int(x.get_num() * (den / x.get_den())));
    Rat scale = make_rat(den, g);
    for (auto& c : r.comps) c = c * scale;
    return r;
}

std::vector<BinaryRoot> rational_roots(const HomogForm& f) { return binary_rational_roots(f); }

// ------------------------------------------------------------ plane intersections

HomogForm shear(const HomogForm& f, long a, long b) {
    std::vector<HomogForm> subs{HomogForm::linear(std::vector<Rat>{1, a, 0}), HomogForm::linear(std::vector<Rat>{0, 1, 0}),
                                HomogForm::linear(std::vector<Rat>{0, b, 1})};
    return f.compose(subs);
}

ProjPoint unshear(const ProjPoint& p, long a, long b) {
    return ProjPoint(std::vector<Int>{p[0] + a * p[1], p[1], p[2] + b * p[1]});
}

ProjPoint apply_shear_inverse(const ProjPoint& p, long a, long b) {
    return ProjPoint(std::vector<Int>{p[0] - a * p[1], p[1], p[2] - b * p[1]});
}

namespace {

// f(k, y, 1) as a polynomial in y
UPoly specialize_y(const HomogForm& f, const Rat& k) {
    const auto& ms = monomials(3, f.degree());
    std::vector<Rat> c(f.degree() + 1, Rat(0));
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (f.coeff(i) == 0) continue;
        Rat term = f.coeff(i);
        for (int e = 0; e < ms[i][0]; ++e) term *= k;
        c[ms[i][1]] += term;
    }
    return UPoly(c);
}

HomogForm resultant_y_sheared(const HomogForm& fs, const HomogForm& gs) {
    int m = fs.degree(), n = gs.degree(), big = m * n;
    std::vector<Rat> xs, ys;
    for (int k = 0; k <= big; ++k) {
        xs.push_back(Rat(k));
        ys.push_back(resultant(homogenize(specialize_y(fs, Rat(k)), m), homogenize(specialize_y(gs, Rat(k)), n)));
    }
    return homogenize(interpolate(xs, ys), big);
}

const std::vector<std::pair<long, long>>& shear_candidates() {
    static const std::vector<std::pair<long, long>> c = {{0, 0},  {1, 0},  {0, 1},  {1, 1},  {2, 1},  {1, 2},  {-1, 1},
                                                         {1, -1}, {3, 2},  {2, 3},  {-2, 3}, {3, -2}, {5, 3},  {3, 5},
                                                         {-3, 5}, {7, 4},  {4, 7},  {-5, 7}, {11, 6}, {6, -11}};
    return c;
}

}  // namespace

HomogForm resultant_y(const HomogForm& f, const HomogForm& g, long a, long b) {
    return resultant_y_sheared(shear(f, a, b), shear(g, a, b));
}

std::optional<std::vector<ProjPoint>> common_zeros(const HomogForm& f, const HomogForm& g) {
    if (f.nvars() != 3 || g.nvars() != 3) throw std::invalid_argument("common_zeros: expected ternary forms");
    if (f.is_zero() || g.is_zero()) return std::nullopt;
    for (const auto& [a, b] : shear_candidates()) {
        if (f.eval(std::vector<Rat>{Rat(a), Rat(1), Rat(b)}) == 0) continue;
        HomogForm fs = shear(f, a, b), gs = shear(g, a, b);
        HomogForm r = resultant_y_sheared(fs, gs);
        if (r.is_zero()) return std::nullopt;
        std::vector<ProjPoint> out;
        if (r.degree() == 0) return out;
        for (const auto& root : binary_rational_roots(r)) {
            RationalParam line;
            line.comps = {binary({Rat(root.s), Rat(0)}), binary({Rat(0), Rat(1)}), binary({Rat(root.t), Rat(0)})};
            HomogForm hf = restrict_to(fs, line), hg = restrict_to(gs, line);
            HomogForm h = hg.is_zero() ? hf.primitive() : binary_gcd(hf, hg);
            if (h.degree() == 0) continue;
            for (const auto& pr : binary_rational_roots(h)) {
                ProjPoint q = unshear(line.point(pr.s, pr.t), a, b);
                if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    throw std::runtime_error("common_zeros: no admissible coordinate change found");
}

int intersection_multiplicity_resultant(const HomogForm& f, const HomogForm& g, const ProjPoint& p) {
    if (!on_curve(f, p) || !on_curve(g, p)) throw std::invalid_argument("intersection_multiplicity_resultant: point not on both curves");
    for (const auto& [a, b] : shear_candidates()) {
        std::vector<Rat> centre{Rat(a), Rat(1), Rat(b)};
        if (f.eval(centre) == 0 || g.eval(centre) == 0) continue;
        HomogForm fs = shear(f, a, b), gs = shear(g, a, b);
        ProjPoint q = apply_shear_inverse(p, a, b);
        // the line through [0:1:0] and q must meet f = g = 0 only at q
        RationalParam line;
        line.comps = {binary({Rat(q[0]), Rat(0)}), binary({Rat(0), Rat(1)}), binary({Rat(q[2]), Rat(0)})};
        HomogForm hf = restrict_to(fs, line), hg = restrict_to(gs, line);
        HomogForm h = binary_gcd(hf, hg);
        HomogForm lin = binary_root_factor(Int(1), q[1]);
        if (!h.divide_exact(lin.pow(h.degree()))) continue;
        HomogForm r = resultant_y_sheared(fs, gs);
        if (r.is_zero()) throw std::invalid_argument("intersection_multiplicity_resultant: curves share a component");
        return vanishing_order(r, q[0], q[2]);
    }
    throw std::runtime_error("intersection_multiplicity_resultant: no admissible coordinate change found");
}

}  // namespace lk3
