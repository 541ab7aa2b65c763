#include "lk3/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lk3 {

PicClass PicClass::h(std::size_t n) {
    PicClass c;
    c.d = 1;
    c.m.assign(n, Int(0));
    return c;
}

PicClass PicClass::e(std::size_t i, std::size_t n) {
    if (i >= n) throw std::out_of_range("PicClass::e: index out of range");
    PicClass c;
    c.m.assign(n, Int(0));
    c.m[i] = 1;
    return c;
}

PicClass PicClass::operator+(const PicClass& o) const {
    if (n() != o.n()) throw std::invalid_argument("PicClass: rank mismatch");
    PicClass r = *this;
    r.d += o.d;
    for (std::size_t i = 0; i < n(); ++i) r.m[i] += o.m[i];
    return r;
}

PicClass PicClass::operator-(const PicClass& o) const { return *this + o * Int(-1); }

PicClass PicClass::operator*(const Int& k) const {
    PicClass r = *this;
    r.d *= k;
    for (auto& x : r.m) x *= k;
    return r;
}

std::string PicClass::str() const {
    std::ostringstream os;
    os << "(" << d.get_str() << ";";
    for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "," : "") << m[i].get_str();
    os << ")";
    return os.str();
}

Int intersect(const PicClass& a, const PicClass& b) {
    if (a.n() != b.n()) throw std::invalid_argument("intersect: rank mismatch");
    Int r = a.d * b.d;
    for (std::size_t i = 0; i < a.n(); ++i) r -= a.m[i] * b.m[i];
    return r;
}

PicClass canonical_class(int n) {
    if (n < 0 || n > 8) throw std::invalid_argument("canonical_class: n must be in 0..8");
    PicClass k;
    k.d = -3;
    k.m.assign(n, Int(1));
    return k;
}

// ------------------------------------------------------------ general position

namespace {

std::vector<Rat> monomial_row(const ProjPoint& p, int degree) {
    std::vector<Rat> row;
    for (const auto& e : monomials(3, degree)) {
        Rat v = 1;
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < e[i]; ++k) v *= p[i];
        row.push_back(v);
    }
    return row;
}

// rows of the conditions "all first partials of a cubic vanish at p"
std::vector<std::vector<Rat>> singular_rows(const ProjPoint& p) {
    std::vector<std::vector<Rat>> rows(3);
    for (const auto& e : monomials(3, 3)) {
        for (int j = 0; j < 3; ++j) {
            if (e[j] == 0) {
                rows[j].push_back(0);
                continue;
            }
            Rat v = e[j];
            for (int i = 0; i < 3; ++i) {
                int k = e[i] - (i == j ? 1 : 0);
                for (int t = 0; t < k; ++t) v *= p[i];
            }
            rows[j].push_back(v);
        }
    }
    return rows;
}

template <class F>
bool for_each_subset(std::size_t n, std::size_t k, F&& f) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    if (k > n) return false;
    while (true) {
        if (f(idx)) return true;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return false;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

GeneralPositionResult general_position(const std::vector<ProjPoint>& points) {
    if (points.size() > 8) throw std::invalid_argument("general_position: at most 8 points");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].dim() != 2) throw std::invalid_argument("general_position: expected points of P^2");
        for (std::size_t j = 0; j < i; ++j)
            if (points[i] == points[j]) throw std::invalid_argument("general_position: duplicate points");
    }
    GeneralPositionResult r;
    auto pick = [&](const std::vector<std::size_t>& idx) {
        std::vector<ProjPoint> w;
        for (auto i : idx) w.push_back(points[i]);
        return w;
    };
    if (for_each_subset(points.size(), 3, [&](const auto& idx) {
            if (!collinear(points[idx[0]], points[idx[1]], points[idx[2]])) return false;
            r = {false, "collinear", pick(idx)};
            return true;
        }))
        return r;
    if (for_each_subset(points.size(), 6, [&](const auto& idx) {
            RatMat m;
            for (auto i : idx) m.push_back(monomial_row(points[i], 2));
            if (rank(m) == 6) return false;
            r = {false, "six_on_conic", pick(idx)};
            return true;
        }))
        return r;
    if (points.size() == 8) {
        for (std::size_t node = 0; node < 8; ++node) {
            RatMat m;
            for (std::size_t i = 0; i < 8; ++i)
                if (i != node) m.push_back(monomial_row(points[i], 3));
            for (auto& row : singular_rows(points[node])) m.push_back(row);
            if (rank(m) < 10) {
                r.ok = false;
                r.violation = "eight_on_nodal_cubic";
                r.witness = points;
                std::swap(r.witness[0], r.witness[node]);  // the node first
                return r;
            }
        }
    }
    return r;
}

int point_multiplicity(const HomogForm& f, const ProjPoint& p) {
    std::vector<HomogForm> layer{f};
    for (int k = 0; k <= f.degree(); ++k) {
        for (const auto& g : layer)
            if (!g.is_zero() && evaluate(g, p) != 0) return k;
        std::vector<HomogForm> next;
        for (const auto& g : layer)
            for (int v = 0; v < f.nvars(); ++v) {
                HomogForm dg = g.derivative(v);
                if (!dg.is_zero()) next.push_back(dg);
            }
        layer = std::move(next);
        if (layer.empty()) break;
    }
    throw std::invalid_argument("point_multiplicity: zero form");
}

// ------------------------------------------------------------ configurations

std::string to_string(CubicShape s) {
    switch (s) {
        case CubicShape::Irreducible: return "Irreducible";
        case CubicShape::ConicLine: return "ConicLine";
        case CubicShape::ThreeLines: return "ThreeLines";
    }
    return "?";
}

ConfigAnalysis analyze_config(const BlowupConfig& cfg) {
    if (cfg.points.size() > 8) throw std::invalid_argument("blow-up configuration: at most 8 points");
    for (std::size_t i = 0; i < cfg.points.size(); ++i) {
        if (cfg.points[i].dim() != 2) throw std::invalid_argument("blow-up configuration: expected points of P^2");
        for (std::size_t j = 0; j < i; ++j)
            if (cfg.points[i] == cfg.points[j]) throw std::invalid_argument("blow-up configuration: duplicate points");
    }
    PlaneCubic d(cfg.cubic);
    CubicClass cls = classify(d);  // rejects non-reduced cubics
    const HomogForm& f = d.form();
    ConfigAnalysis a;
    for (const auto& p : cfg.points) a.point_mult.push_back(point_multiplicity(f, p));

    LinearSplit s = split_linear_factors(f);
    auto add = [&](const HomogForm& g, int degree, int conj) {
        for (int k = 0; k < conj; ++k) {
            GeometricComponent c;
            c.rational_factor = g;
            c.degree = degree;
            c.conjugates = conj;
            c.index = k;
            for (const auto& p : cfg.points) {
                // a rational point on one of several conjugates lies on all of them, simply
                c.mult.push_back(conj == 1 ? point_multiplicity(g, p) : (on_curve(g, p) ? 1 : 0));
            }
            a.components.push_back(c);
        }
    };
    for (const auto& l : s.lines) add(l, 1, 1);
    if (s.lines.size() == 3) {
        a.shape = CubicShape::ThreeLines;
    } else if (s.lines.size() == 1) {
        if (conic_is_smooth(s.rest)) {
            a.shape = CubicShape::ConicLine;
            add(s.rest, 2, 1);
        } else {
            a.shape = CubicShape::ThreeLines;
            add(s.rest, 1, 2);
        }
    } else if (cls == CubicClass::NotOverQ) {
        a.shape = CubicShape::ThreeLines;
        add(s.rest, 1, 3);
    } else {
        a.shape = CubicShape::Irreducible;
        add(s.rest, 3, 1);
    }
    if (a.shape == CubicShape::ThreeLines) {
        for (const auto& sp : singular_points(d))
            if (sp.multiplicity == 3) a.concurrent_lines = true;
    }
    return a;
}

HatDivisor hat_divisor(const BlowupConfig& cfg) {
    ConfigAnalysis a = analyze_config(cfg);
    const std::size_t n = cfg.points.size();
    HatDivisor h;
    for (std::size_t i = 0; i < n; ++i) {
        if (a.point_mult[i] == 0) {
            h.reason = "point " + cfg.points[i].str() + " is not on D";
            return h;
        }
        if (a.point_mult[i] > 2) {
            h.reason = "point " + cfg.points[i].str() + " has multiplicity " + std::to_string(a.point_mult[i]) + " on D";
            return h;
        }
    }
    auto gp = general_position(cfg.points);
    if (!gp.ok) {
        h.reason = "points not in general position (" + gp.violation + ")";
        return h;
    }
    h.valid = true;
    h.cls = PicClass::h(n) * Int(0);
    for (const auto& c : a.components) {
        PicClass strict = PicClass::h(n) * Int(c.degree);
        for (std::size_t i = 0; i < n; ++i) strict.m[i] = -c.mult[i];
        h.components.push_back(strict);
        h.cls = h.cls + strict;
    }
    for (std::size_t i = 0; i < n; ++i) {
        h.exceptional.push_back(a.point_mult[i] - 1);
        if (a.point_mult[i] > 1) {
            PicClass e = PicClass::e(i, n) * Int(a.point_mult[i] - 1);
            h.components.push_back(PicClass::e(i, n));
            h.cls = h.cls + e;
        }
    }
    return h;
}

std::vector<std::vector<Int>> cyclic_cover_kernel(const std::vector<PicClass>& components, long n) {
    if (n < 2) throw std::invalid_argument("cyclic_cover_kernel: n must be at least 2");
    if (components.empty()) return {};
    const std::size_t r = components.size(), k = components[0].n();
    // columns are the component classes
    IntMat a(k + 1, std::vector<Int>(r));
    for (std::size_t j = 0; j < r; ++j) {
        if (components[j].n() != k) throw std::invalid_argument("cyclic_cover_kernel: rank mismatch");
        a[0][j] = components[j].d;
        for (std::size_t i = 0; i < k; ++i) a[i + 1][j] = components[j].m[i];
    }
    SmithForm snf = smith_normal_form(a);
    const Int N = n;
    std::vector<std::vector<Int>> out;
    for (std::size_t j = 0; j < r; ++j) {
        // b_j must be a multiple of n / gcd(d_j, n); free past the rank
        Int step = j < snf.diag.size() ? Int(N / gcd(snf.diag[j], N)) : Int(1);
        if (step == N) continue;
        std::vector<Int> v(r);
        bool nonzero = false;
        for (std::size_t i = 0; i < r; ++i) {
            Int x = snf.v[i][j] * step;
            x %= N;
            if (x < 0) x += N;
            v[i] = x;
            if (x != 0) nonzero = true;
        }
        if (nonzero) out.push_back(v);
    }
    return out;
}

bool smith_criterion(const std::vector<PicClass>& components, std::vector<Int>* divisors, std::size_t* rank_out) {
    if (components.empty()) return true;
    IntMat m;
    for (const auto& c : components) {
        std::vector<Int> row{c.d};
        row.insert(row.end(), c.m.begin(), c.m.end());
        m.push_back(row);
    }
    SmithForm snf = smith_normal_form(m);
    if (divisors) *divisors = snf.diag;
    if (rank_out) *rank_out = snf.diag.size();
    if (snf.diag.size() != components.size()) return false;
    return std::all_of(snf.diag.begin(), snf.diag.end(), [](const Int& x) { return x == 1; });
}

std::string to_string(TopologyReason r) {
    switch (r) {
        case TopologyReason::PlaneComplement: return "PlaneComplement";
        case TopologyReason::ConcurrentLinesExcluded: return "ConcurrentLinesExcluded";
        case TopologyReason::IrreducibleSmoothPointBlown: return "IrreducibleSmoothPointBlown";
        case TopologyReason::IrreducibleNoSmoothPointBlown: return "IrreducibleNoSmoothPointBlown";
        case TopologyReason::ConicPointOffLineBlown: return "ConicPointOffLineBlown";
        case TopologyReason::ConicLineOnlyLinePointsBlown: return "ConicLineOnlyLinePointsBlown";
        case TopologyReason::LinesTwoDistinctSmoothPoints: return "LinesTwoDistinctSmoothPoints";
        case TopologyReason::LinesTooFewSmoothPoints: return "LinesTooFewSmoothPoints";
    }
    return "?";
}

TopologyResult simply_connected(const BlowupConfig& cfg) {
    HatDivisor hd = hat_divisor(cfg);
    if (!hd.valid) throw std::invalid_argument("simply_connected: invalid configuration: " + hd.reason);
    ConfigAnalysis a = analyze_config(cfg);
    TopologyResult r;
    r.components = hd.components.size();
    r.smith_simply_connected = smith_criterion(hd.components, &r.elementary_divisors, &r.rank);
    const std::size_t n = cfg.points.size();
    if (n == 0) {
        r.simply_connected = false;
        r.reason = a.concurrent_lines ? TopologyReason::ConcurrentLinesExcluded : TopologyReason::PlaneComplement;
        return r;
    }
    auto smooth = [&](std::size_t i) { return a.point_mult[i] == 1; };
    switch (a.shape) {
        case CubicShape::Irreducible: {
            bool any = false;
            for (std::size_t i = 0; i < n; ++i) any = any || smooth(i);
            r.simply_connected = any;
            r.reason = any ? TopologyReason::IrreducibleSmoothPointBlown : TopologyReason::IrreducibleNoSmoothPointBlown;
            break;
        }
        case CubicShape::ConicLine: {
            const GeometricComponent* line = nullptr;
            const GeometricComponent* conic = nullptr;
            for (const auto& c : a.components) (c.degree == 1 ? line : conic) = &c;
            bool any = false;
            for (std::size_t i = 0; i < n; ++i) any = any || (conic->mult[i] > 0 && line->mult[i] == 0);
            r.simply_connected = any;
            r.reason = any ? TopologyReason::ConicPointOffLineBlown : TopologyReason::ConicLineOnlyLinePointsBlown;
            break;
        }
        case CubicShape::ThreeLines: {
            std::vector<bool> hit(a.components.size(), false);
            for (std::size_t i = 0; i < n; ++i) {
                if (!smooth(i)) continue;
                for (std::size_t c = 0; c < a.components.size(); ++c)
                    if (a.components[c].mult[i] > 0) hit[c] = true;
            }
            bool two = std::count(hit.begin(), hit.end(), true) >= 2;
            r.simply_connected = two;
            r.reason = two ? TopologyReason::LinesTwoDistinctSmoothPoints : TopologyReason::LinesTooFewSmoothPoints;
            break;
        }
    }
    return r;
}

}  // namespace lk3
