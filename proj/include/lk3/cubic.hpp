#pragma once

#include "lk3/projgeo.hpp"

#include <string>
#include <vector>

namespace lk3 {

/// Plane cubic with integer coefficients of content 1 (sign kept as given).
class PlaneCubic {
public:
    explicit PlaneCubic(const HomogForm& f);
    const HomogForm& form() const { return f_; }

private:
    HomogForm f_;
};

enum class CubicClass {
    Smooth,
    Nodal,
    Cuspidal,
    ConicPlusChord,
    ConicPlusTangent,
    ThreeLinesGeneral,
    ThreeConcurrentLines,
    LinePlusConicIrrationalConfig,
    NotOverQ
};
std::string to_string(CubicClass c);
CubicClass cubic_class_from_string(const std::string& s);

enum class SingularKind { Node, Cusp, Triple };
std::string to_string(SingularKind k);

struct SingularPoint {
    ProjPoint point;
    int multiplicity;  // 2 or 3
    SingularKind kind;
};

/// A rational point of D on the Hessian, with its rational flex lines:
/// the tangent at a smooth flex, the rational principal tangents at a singular one.
struct Flex {
    ProjPoint point;
    std::vector<HomogForm> lines;
    bool smooth;
};

struct FlexDecomposition {
    HomogForm M, Q;
    Rat c;  // c*F = L*Q + M^3
};

/// Rational linear factors with multiplicity (sorted), plus the remaining cofactor.
struct LinearSplit {
    std::vector<HomogForm> lines;
    HomogForm rest;
};
LinearSplit split_linear_factors(const HomogForm& f);

std::vector<SingularPoint> singular_points(const PlaneCubic& d);
CubicClass classify(const PlaneCubic& d);
HomogForm hessian(const HomogForm& f);
/// Matrix of second partials evaluated at p.
RatMat hessian_matrix(const HomogForm& f, const std::vector<Rat>& p);
/// Rational lines through a singular point p along the tangent cone.
std::vector<HomogForm> principal_tangents(const HomogForm& f, const ProjPoint& p);
std::vector<Flex> rational_flexes(const PlaneCubic& d);
/// True when F restricted to L is a nonzero cube of a linear form.
bool is_flex_line(const HomogForm& f, const HomogForm& l);
FlexDecomposition flex_decomposition(const PlaneCubic& d, const HomogForm& l);

}  // namespace lk3
