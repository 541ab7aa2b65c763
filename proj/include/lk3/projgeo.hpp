#pragma once

#include "lk3/intmat.hpp"
#include "lk3/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lk3 {

/// Point of P^2 or P^3 in primitive integer coordinates, first nonzero entry positive.
class ProjPoint {
public:
    ProjPoint() = default;
    explicit ProjPoint(const std::vector<Int>& coords);
    explicit ProjPoint(const std::vector<Rat>& coords);
    ProjPoint(std::initializer_list<long> coords);

    int dim() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Int>& coords() const { return c_; }
    const Int& operator[](std::size_t i) const { return c_[i]; }
    std::vector<Rat> rat() const { return std::vector<Rat>(c_.begin(), c_.end()); }
    Int height() const;

    bool operator==(const ProjPoint& o) const { return c_ == o.c_; }
    bool operator!=(const ProjPoint& o) const { return c_ != o.c_; }
    bool operator<(const ProjPoint& o) const;
    std::string str() const;

private:
    std::vector<Int> c_;
};

/// Map P^1 -> P^n given by binary forms of a common degree.
struct RationalParam {
    std::vector<HomogForm> comps;
    int degree() const { return comps.empty() ? 0 : comps[0].degree(); }
    std::vector<Rat> at(const Int& s, const Int& t) const;
    ProjPoint point(const Int& s, const Int& t) const;
};

/// Pencil a*g + b*h.
struct CurvePencil {
    HomogForm g, h;
    HomogForm member(const Rat& a, const Rat& b) const { return g * a + h * b; }
    int degree() const { return g.degree(); }
};

Rat evaluate(const HomogForm& f, const ProjPoint& p);
bool on_curve(const HomogForm& f, const ProjPoint& p);

// ------------------------------------------------------------ lines

HomogForm line_through(const ProjPoint& p, const ProjPoint& q);
ProjPoint line_meet(const HomogForm& l1, const HomogForm& l2);
std::vector<Int> cross(const std::vector<Int>& a, const std::vector<Int>& b);
bool collinear(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r);
/// Linear parametrization of the line {l = 0} in P^2, or of the line cut out by
/// several linear forms in P^3, by a reduced basis of its integer points.
RationalParam line_param(const HomogForm& l);
RationalParam line_param(const std::vector<HomogForm>& equations);
RationalParam line_param_through(const ProjPoint& p, const ProjPoint& q);
HomogForm tangent_line(const HomogForm& f, const ProjPoint& p);
std::vector<Rat> gradient(const HomogForm& f, const std::vector<Rat>& p);

// ------------------------------------------------------------ restriction and multiplicity

HomogForm restrict_to(const HomogForm& f, const RationalParam& c);
HomogForm restrict_to_line(const HomogForm& f, const RationalParam& line);
/// Parameter values [s:t] mapped to p.
std::vector<std::pair<Int, Int>> parameters_of(const RationalParam& c, const ProjPoint& p);
/// Vanishing order of f o c at the parameter of p.
int intersection_multiplicity(const HomogForm& f, const RationalParam& c, const ProjPoint& p);
/// Vanishing order of the binary form at [s:t].
int vanishing_order(const HomogForm& binary_form, const Int& s, const Int& t);

// ------------------------------------------------------------ conics

RatMat symmetric_matrix(const HomogForm& quadric);
HomogForm quadric_from_matrix(const RatMat& a);
bool conic_is_smooth(const HomogForm& q);
RationalParam parametrize_conic(const HomogForm& q, const ProjPoint& p);

// ------------------------------------------------------------ binary form roots

std::vector<BinaryRoot> rational_roots(const HomogForm& binary_form);

// ------------------------------------------------------------ plane intersections

/// Rational common zeros of two ternary forms; nullopt when they share a component.
std::optional<std::vector<ProjPoint>> common_zeros(const HomogForm& f, const HomogForm& g);
/// Intersection multiplicity of two plane curves at p through the resultant in
/// general coordinates.
int intersection_multiplicity_resultant(const HomogForm& f, const HomogForm& g, const ProjPoint& p);
/// Resultant with respect to y after the shear x -> x + a*y, z -> z + b*y, as a binary form in (x, z).
HomogForm resultant_y(const HomogForm& f, const HomogForm& g, long a, long b);
HomogForm shear(const HomogForm& f, long a, long b);
ProjPoint unshear(const ProjPoint& p, long a, long b);
ProjPoint apply_shear_inverse(const ProjPoint& p, long a, long b);

}  // namespace lk3
