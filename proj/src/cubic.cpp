#include "lk3/cubic.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace lk3 {

PlaneCubic::PlaneCubic(const HomogForm& f) {
    if (f.nvars() != 3 || f.degree() != 3) throw std::invalid_argument("PlaneCubic: expected a ternary cubic");
    if (f.is_zero()) throw std::invalid_argument("PlaneCubic: zero form");
    Rat s = f.scale_to_primitive();
    if (s < 0) s = -s;
    f_ = f * s;
}

namespace {

const std::array<const char*, 9> kClassNames = {"Smooth",           "Nodal",
                                                "Cuspidal",         "ConicPlusChord",
                                                "ConicPlusTangent", "ThreeLinesGeneral",
                                                "ThreeConcurrentLines", "LinePlusConicIrrationalConfig",
                                                "NotOverQ"};

std::vector<Int> coeff_vector(const HomogForm& l) {
    HomogForm p = l.primitive();
    std::vector<Int> v;
    for (const auto& c : p.coeffs()) v.push_back(c.get_num());
    return v;
}

bool all_zero(const std::vector<Rat>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& r) { return r == 0; });
}

// Roots [s:t] of f restricted to the coordinate line x_k = 0, as ratios of the two
// remaining coordinates.
std::vector<std::pair<Int, Int>> coordinate_roots(const HomogForm& f, int k) {
    std::vector<int> idx;
    for (int i = 0; i < 3; ++i)
        if (i != k) idx.push_back(i);
    RationalParam p;
    p.comps.assign(3, HomogForm(2, 1));
    p.comps[idx[0]] = HomogForm::variable(2, 0);
    p.comps[idx[1]] = HomogForm::variable(2, 1);
    HomogForm r = restrict_to(f, p);
    std::vector<std::pair<Int, Int>> out;
    if (r.is_zero()) return out;
    for (const auto& root : binary_rational_roots(r)) out.emplace_back(root.s, root.t);
    return out;
}

std::optional<HomogForm> find_linear_factor(const HomogForm& f) {
    for (int k = 0; k < 3; ++k) {
        HomogForm v = HomogForm::variable(3, k);
        if (f.divide_exact(v)) return v;
    }
    // a non-coordinate factor ax + by + cz has at least two nonzero coefficients
    auto rz = coordinate_roots(f, 2);  // ax + by vanishes at [s:t] -> (a, b) ~ (t, -s)
    auto ry = coordinate_roots(f, 1);  // (a, c)
    auto rx = coordinate_roots(f, 0);  // (b, c)
    std::vector<std::vector<Int>> cands;
    for (const auto& [s1, t1] : rz)
        for (const auto& [s2, t2] : ry) {
            Int a1 = t1, b1 = -s1, a2 = t2, c2 = -s2;
            if (a1 == 0 || a2 == 0) continue;
            cands.push_back({a1 * a2, b1 * a2, c2 * a1});
        }
    for (const auto& [s, t] : rx) cands.push_back({Int(0), t, Int(-s)});
    for (auto& c : cands) {
        if (c[0] == 0 && c[1] == 0 && c[2] == 0) continue;
        HomogForm l = HomogForm::linear(normalize_primitive(c));
        if (f.divide_exact(l)) return l;
    }
    return std::nullopt;
}

void require_reduced(const LinearSplit& s) {
    for (std::size_t i = 1; i < s.lines.size(); ++i)
        if (s.lines[i] == s.lines[i - 1]) throw std::invalid_argument("cubic is not reduced (repeated component)");
}

bool lines_less(const HomogForm& a, const HomogForm& b) { return coeff_vector(a) < coeff_vector(b); }

}  // namespace

std::string to_string(CubicClass c) { return kClassNames[static_cast<int>(c)]; }

CubicClass cubic_class_from_string(const std::string& s) {
    for (std::size_t i = 0; i < kClassNames.size(); ++i)
        if (s == kClassNames[i]) return static_cast<CubicClass>(i);
    throw std::invalid_argument("unknown cubic class: " + s);
}

std::string to_string(SingularKind k) {
    switch (k) {
        case SingularKind::Node: return "node";
        case SingularKind::Cusp: return "cusp";
        default: return "triple";
    }
}

LinearSplit split_linear_factors(const HomogForm& f) {
    if (f.is_zero()) throw std::invalid_argument("split_linear_factors: zero form");
    LinearSplit out;
    HomogForm rest = f;
    while (rest.degree() > 0) {
        auto l = find_linear_factor(rest);
        if (!l) break;
        out.lines.push_back(l->primitive());
        rest = *rest.divide_exact(*l);
    }
    std::sort(out.lines.begin(), out.lines.end(), lines_less);
    out.rest = rest;
    return out;
}

HomogForm hessian(const HomogForm& f) {
    if (f.nvars() != 3) throw std::invalid_argument("hessian: expected a ternary form");
    std::vector<std::vector<HomogForm>> h(3, std::vector<HomogForm>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) h[i][j] = f.derivative(i).derivative(j);
    return h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
           h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
}

RatMat hessian_matrix(const HomogForm& f, const std::vector<Rat>& p) {
    RatMat m(3, std::vector<Rat>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = f.derivative(i).derivative(j).eval(p);
    return m;
}

std::vector<SingularPoint> singular_points(const PlaneCubic& d) {
    const HomogForm& f = d.form();
    require_reduced(split_linear_factors(f));
    std::array<HomogForm, 3> partials{f.derivative(0), f.derivative(1), f.derivative(2)};
    static const std::array<std::array<long, 3>, 6> combos = {
        {{1, 0, 0}, {1, 2, 3}, {3, -1, 2}, {2, 5, -3}, {-4, 3, 7}, {5, 7, 11}}};
    for (const auto& w : combos) {
        HomogForm g = partials[0] * Rat(w[0]) + partials[1] * Rat(w[1]) + partials[2] * Rat(w[2]);
        if (g.is_zero()) continue;
        auto cz = common_zeros(f, g);
        if (!cz) continue;
        std::vector<SingularPoint> out;
        for (const auto& p : *cz) {
            auto pr = p.rat();
            if (!std::all_of(partials.begin(), partials.end(), [&](const HomogForm& h) { return h.eval(pr) == 0; }))
                continue;
            auto r = rank(hessian_matrix(f, pr));
            SingularKind k = r == 2 ? SingularKind::Node : r == 1 ? SingularKind::Cusp : SingularKind::Triple;
            out.push_back({p, k == SingularKind::Triple ? 3 : 2, k});
        }
        return out;
    }
    throw std::runtime_error("singular_points: no admissible polar combination");
}

CubicClass classify(const PlaneCubic& d) {
    const HomogForm& f = d.form();
    LinearSplit s = split_linear_factors(f);
    require_reduced(s);
    if (s.lines.size() == 3) {
        IntMat m;
        for (const auto& l : s.lines) m.push_back(coeff_vector(l));
        return det(m) == 0 ? CubicClass::ThreeConcurrentLines : CubicClass::ThreeLinesGeneral;
    }
    if (s.lines.size() == 1) {
        const HomogForm& q = s.rest;
        if (!conic_is_smooth(q)) return CubicClass::NotOverQ;  // conjugate pair of lines
        HomogForm r = restrict_to_line(q, line_param(s.lines[0]));
        Rat disc = r.coeff(1) * r.coeff(1) - 4 * r.coeff(0) * r.coeff(2);
        if (disc == 0) return CubicClass::ConicPlusTangent;
        Int num = disc.get_num() * disc.get_den();
        if (num > 0 && is_square(num)) return CubicClass::ConicPlusChord;
        return CubicClass::LinePlusConicIrrationalConfig;
    }
    // no rational line: irreducible, or three conjugate lines
    auto sing = singular_points(d);
    if (!sing.empty()) {
        switch (sing[0].kind) {
            case SingularKind::Node: return CubicClass::Nodal;
            case SingularKind::Cusp: return CubicClass::Cuspidal;
            default: return CubicClass::NotOverQ;
        }
    }
    HomogForm h = hessian(f);
    if (!h.is_zero() && h.proportional(f)) return CubicClass::NotOverQ;
    return CubicClass::Smooth;
}

std::vector<HomogForm> principal_tangents(const HomogForm& f, const ProjPoint& p) {
    RatMat h = hessian_matrix(f, p.rat());
    int k = 0;
    while (p[k] == 0) ++k;
    std::vector<int> idx;
    for (int i = 0; i < 3; ++i)
        if (i != k) idx.push_back(i);
    // tangent cone restricted to the line x_k = 0, which misses p
    Rat a = h[idx[0]][idx[0]], b = 2 * h[idx[0]][idx[1]], c = h[idx[1]][idx[1]];
    HomogForm cone = binary({a, b, c});
    std::vector<HomogForm> out;
    if (cone.is_zero()) return out;
    for (const auto& r : binary_rational_roots(cone)) {
        std::vector<Int> q(3, Int(0));
        q[idx[0]] = r.s;
        q[idx[1]] = r.t;
        out.push_back(line_through(p, ProjPoint(q)));
    }
    std::sort(out.begin(), out.end(), lines_less);
    return out;
}

std::vector<Flex> rational_flexes(const PlaneCubic& d) {
    CubicClass c = classify(d);
    if (c != CubicClass::Smooth && c != CubicClass::Nodal && c != CubicClass::Cuspidal)
        throw std::invalid_argument("rational_flexes: cubic is reducible");
    const HomogForm& f = d.form();
    auto cz = common_zeros(f, hessian(f));
    if (!cz) throw std::logic_error("rational_flexes: Hessian shares a component with an irreducible cubic");
    std::vector<Flex> out;
    for (const auto& p : *cz) {
        auto g = gradient(f, p.rat());
        if (all_zero(g)) {
            out.push_back({p, principal_tangents(f, p), false});
        } else {
            out.push_back({p, {tangent_line(f, p)}, true});
        }
    }
    return out;
}

bool is_flex_line(const HomogForm& f, const HomogForm& l) {
    if (l.is_zero() || l.degree() != 1) return false;
    HomogForm r = restrict_to_line(f, line_param(l));
    if (r.is_zero()) return false;
    auto roots = binary_rational_roots(r);
    return roots.size() == 1 && roots[0].multiplicity == f.degree();
}

FlexDecomposition flex_decomposition(const PlaneCubic& d, const HomogForm& l) {
    const HomogForm& f = d.form();
    if (l.nvars() != 3 || l.degree() != 1 || l.is_zero()) throw std::invalid_argument("flex_decomposition: L must be a nonzero linear form");
    RationalParam lp = line_param(l);
    HomogForm r = restrict_to_line(f, lp);
    if (r.is_zero()) throw std::invalid_argument("flex_decomposition: L is a component of D");
    auto roots = binary_rational_roots(r);
    if (roots.size() != 1 || roots[0].multiplicity != 3)
        throw std::invalid_argument("flex_decomposition: restriction of F to L is not a cube");
    ProjPoint p = lp.point(roots[0].s, roots[0].t);
    // M avoids the pivot variable of L and vanishes at p
    int k = 0;
    while (l.coeffs()[k] == 0) ++k;
    std::vector<int> idx;
    for (int i = 0; i < 3; ++i)
        if (i != k) idx.push_back(i);
    std::vector<Int> m(3, Int(0));
    m[idx[0]] = p[idx[1]];
    m[idx[1]] = -p[idx[0]];
    m = normalize_primitive(m);
    HomogForm mform = HomogForm::linear(m);
    // r = a * lin^3 and M o lp = kappa * lin
    HomogForm lin = binary_root_factor(roots[0].s, roots[0].t);
    HomogForm mr = restrict_to_line(mform, lp);
    int j = lin.coeff(0) != 0 ? 0 : 1;
    Rat kappa = mr.coeff(j) / lin.coeff(j);
    Rat a = r.coeff(3 * j) / (lin.coeff(j) * lin.coeff(j) * lin.coeff(j));
    Rat c = kappa * kappa * kappa / a;
    if (c < 0) {
        mform = -mform;
        c = -c;
    }
    auto q = (f * c - mform.pow(3)).divide_exact(l);
    if (!q) throw std::logic_error("flex_decomposition: division by L failed");
    return {mform, *q, c};
}

}  // namespace lk3
