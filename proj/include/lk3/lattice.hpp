#pragma once

#include "lk3/cubic.hpp"
#include "lk3/intmat.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lk3 {

/// d h + sum m_i e_i.
struct PicClass {
    Int d = 0;
    std::vector<Int> m;

    static PicClass h(std::size_t n);
    static PicClass e(std::size_t i, std::size_t n);
    std::size_t n() const { return m.size(); }

    PicClass operator+(const PicClass& o) const;
    PicClass operator-(const PicClass& o) const;
    PicClass operator*(const Int& k) const;
    bool operator==(const PicClass& o) const { return d == o.d && m == o.m; }
    std::string str() const;
};

/// h^2 = 1, e_i^2 = -1, all other pairings 0.
Int intersect(const PicClass& a, const PicClass& b);
PicClass canonical_class(int n);

struct GeneralPositionResult {
    bool ok = true;
    std::string violation;  // "collinear", "six_on_conic", "eight_on_nodal_cubic"
    std::vector<ProjPoint> witness;
};
GeneralPositionResult general_position(const std::vector<ProjPoint>& points);

/// Multiplicity of the curve f = 0 at p (0 when p is off the curve).
int point_multiplicity(const HomogForm& f, const ProjPoint& p);

enum class CubicShape { Irreducible, ConicLine, ThreeLines };
std::string to_string(CubicShape s);

/// A component of D over the algebraic closure, grouped with its conjugates.
struct GeometricComponent {
    HomogForm rational_factor;  // Q-irreducible factor carrying this component
    int degree = 0;             // degree of one geometric component
    int conjugates = 1;         // number of geometric components in the factor
    int index = 0;              // position among the conjugates
    std::vector<int> mult;      // multiplicity at each blown point
};

struct BlowupConfig {
    HomogForm cubic;
    std::vector<ProjPoint> points;
};

struct ConfigAnalysis {
    CubicShape shape = CubicShape::Irreducible;
    bool concurrent_lines = false;
    std::vector<GeometricComponent> components;
    std::vector<int> point_mult;  // multiplicity of D at each blown point
};
/// Throws std::invalid_argument for non-reduced cubics, more than 8 points, or duplicates.
ConfigAnalysis analyze_config(const BlowupConfig& cfg);

struct HatDivisor {
    bool valid = false;
    std::string reason;
    PicClass cls;
    std::vector<int> exceptional;        // coefficient of E_i in D-hat
    std::vector<PicClass> components;    // strict transforms, then the E_i with positive coefficient
};
HatDivisor hat_divisor(const BlowupConfig& cfg);

/// Generators of {a in (Z/n)^r : sum a_i c_i = 0 in Pic / n}; empty when only a = 0.
std::vector<std::vector<Int>> cyclic_cover_kernel(const std::vector<PicClass>& components, long n);

enum class TopologyReason {
    PlaneComplement,
    ConcurrentLinesExcluded,
    IrreducibleSmoothPointBlown,
    IrreducibleNoSmoothPointBlown,
    ConicPointOffLineBlown,
    ConicLineOnlyLinePointsBlown,
    LinesTwoDistinctSmoothPoints,
    LinesTooFewSmoothPoints
};
std::string to_string(TopologyReason r);

struct TopologyResult {
    bool simply_connected = false;
    TopologyReason reason = TopologyReason::PlaneComplement;
    bool smith_simply_connected = false;
    std::vector<Int> elementary_divisors;
    std::size_t rank = 0;
    std::size_t components = 0;
};
/// Case analysis on the shape of D, cross-checked by the Smith form of the component classes.
/// Throws std::invalid_argument when the configuration is invalid.
TopologyResult simply_connected(const BlowupConfig& cfg);
/// Rows are primitive and independent: all elementary divisors 1 and full row rank.
bool smith_criterion(const std::vector<PicClass>& components, std::vector<Int>* divisors = nullptr,
                     std::size_t* rank = nullptr);

}  // namespace lk3
