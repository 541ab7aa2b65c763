#pragma once

#include "lk3/cubic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lk3 {

/// The cubic surface w^3 = F(x, y, z) in P^3; H is the plane w = 0.
class CubicSurface {
public:
    explicit CubicSurface(const PlaneCubic& d);
    const PlaneCubic& base() const { return d_; }
    const HomogForm& F() const { return d_.form(); }
    /// w^3 - F as a form in (x, y, z, w).
    const HomogForm& equation() const { return g_; }
    bool contains(const ProjPoint& p) const;

private:
    PlaneCubic d_;
    HomogForm g_;
};

/// F extended to four variables (w absent).
HomogForm lift_to_p3(const HomogForm& f);

/// Line {L = 0, E = 0} on S where E is a primitive multiple of w - M.
struct SurfaceLine {
    HomogForm flexline;  // L in (x, y, z)
    HomogForm mform;     // M in (x, y, z), rational; the line lies in w = M
    HomogForm qform;     // F = L*Q + M^3
    ProjPoint flex;      // L = M = 0, the point at infinity
    HomogForm L4, E4;    // the two defining planes in (x, y, z, w)
    RationalParam param() const;
    std::string str() const;
};

struct RationalLines {
    std::vector<SurfaceLine> lines;
    /// Rational flex lines whose w = M line needs a cube root of c.
    int flex_lines_without_rational_line = 0;
    /// Every rational line lies in this plane (when there are at least two and they are coplanar).
    std::optional<HomogForm> common_plane;
};

RationalLines rational_lines(const CubicSurface& s);
/// Surface line over the flex line L, if it is defined over Q.
std::optional<SurfaceLine> surface_line_over(const CubicSurface& s, const HomogForm& l);

/// The three lines L = 0, w = zeta^i M meet at L = M = w = 0; checked over Q(sqrt -3).
struct ConcurrencyCheck {
    bool all_on_surface;
    bool concurrent_on_H;
    ProjPoint common_point;
};
ConcurrencyCheck check_concurrency(const CubicSurface& s, const HomogForm& l);

/// Pencil of planes a*L + b*E through the axis line.
struct ConicFibration {
    CubicSurface surface;
    SurfaceLine axis;
    HomogForm plane(const Int& a, const Int& b) const;
    /// The parameter u of the plane through p (tangent plane when p lies on the axis).
    std::pair<Int, Int> parameter_of(const ProjPoint& p) const;
};

struct AtInfinity {
    HomogForm line;       // Lambda_u cap H as a line of P^2
    RationalParam param;  // its parametrization
    HomogForm form;       // C_u restricted to the line, a binary quadratic
    std::vector<std::pair<ProjPoint, int>> rational_points;  // with multiplicity on C_u cap D
};

struct BeukersConic {
    Int a, b;
    HomogForm plane;         // in (x, y, z, w)
    IntMat basis;            // 4x3, columns span the plane's integer points
    HomogForm surface_conic; // residual conic in plane coordinates
    HomogForm plane_conic;   // C_u in (x, y, z), primitive
    AtInfinity infinity;
    bool degenerate;
    /// Point of P^3 from plane coordinates.
    ProjPoint lift(const std::vector<Int>& v) const;
};

BeukersConic fiber(const ConicFibration& mu, const Int& a, const Int& b);

enum class LineRelation { Section, Coplanar };
struct SectionResult {
    LineRelation relation;
    std::optional<ProjPoint> meet;
};
SectionResult section_check(const ConicFibration& mu, const SurfaceLine& other);

/// X: blow-up of P^2 at a smooth point P of D, with the pencil of lines through P.
struct BlowupSurface {
    PlaneCubic D;
    ProjPoint P;
    HomogForm l1, l2;
    BlowupSurface(const PlaneCubic& d, const ProjPoint& p);
    HomogForm line(const Int& a, const Int& b) const { return l1 * Rat(a) + l2 * Rat(b); }
    /// lambda of a point q != P.
    std::pair<Int, Int> lambda_of(const ProjPoint& q) const;
};

struct LambdaFiber {
    Int a, b;
    HomogForm line;
    ProjPoint P;
    ProjPoint R;          // line = {s*P + t*R}, {P, R} a basis of its integer points
    HomogForm residual;   // F(sP + tR) = t * residual(s, t)
    bool degenerate;      // tangent at P or contained in D
    RationalParam param() const;
};
LambdaFiber lambda_fiber(const BlowupSurface& x, const Int& a, const Int& b);

/// Point a + b*sqrt(d) coordinatewise; d == 1 means rational (b = 0).
struct BranchPoint {
    std::vector<Rat> re, im;
    std::vector<Rat> tangent_re, tangent_im;  // line through P and the point
    bool on_D;
};
struct LambdaBranch {
    Int d;  // squarefree part of the discriminant, 1 when rational
    std::vector<BranchPoint> points;
};
LambdaBranch lambda_branch_on_conic(const BlowupSurface& x, const HomogForm& conic);

CurvePencil osculating_pencil(const HomogForm& conic, const HomogForm& tangent, const ProjPoint& q);
CurvePencil conics_through_four_points(const ProjPoint& p1, const ProjPoint& p2, const ProjPoint& p3,
                                       const ProjPoint& p4);

ProjPoint project_rho(const ProjPoint& p);

}  // namespace lk3
