#pragma once

#include "lk3/surface.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lk3 {

// ------------------------------------------------------------ integrality

enum class Ambient { PlaneModD, SurfaceModH, BlowupModDhat, BlowupModDhatE };
std::string to_string(Ambient a);

struct IntegralityContext {
    Ambient ambient = Ambient::PlaneModD;
    PrimeSet S;
    HomogForm F;                 // divisor in P^2 (any degree), unused for SurfaceModH
    std::optional<ProjPoint> P;  // blown-up point for the blow-up models

    static IntegralityContext plane(const HomogForm& f, const PrimeSet& s);
    static IntegralityContext surface(const PrimeSet& s);
    static IntegralityContext blowup(const HomogForm& f, const ProjPoint& p, const PrimeSet& s, bool with_E);
};

/// A point of X: its image in P^2 and, when the image is P, a direction at P.
struct BlowupPoint {
    ProjPoint image;
    std::optional<std::vector<Int>> direction;
};

/// Throws std::invalid_argument when p lies on the divisor.
bool is_integral(const ProjPoint& p, const IntegralityContext& ctx);
/// Reduction test in the two charts of the blow-up at P.
bool blowup_integrality(const BlowupPoint& q, const IntegralityContext& ctx);
/// gcd of the 2x2 minors of (a, b).
Int minors_gcd(const std::vector<Int>& a, const std::vector<Int>& b);

// ------------------------------------------------------------ points at infinity

enum class InfinityTag { Empty, OneRational, TwoRational, QuadraticRealPair, QuadraticImaginaryPair, Tangency, Many };
std::string to_string(InfinityTag t);

struct InfinityType {
    InfinityTag tag = InfinityTag::Empty;
    std::vector<std::pair<ProjPoint, int>> rational_points;  // with multiplicity
    Int discriminant = 0;                                     // of the irreducible quadratic, if any
    std::vector<std::vector<QuadElem>> conjugate_points;      // filled when the field is small enough
};

/// Support structure of the roots of a nonzero binary form.
InfinityTag binary_infinity_tag(const HomogForm& binary_form, Int* disc = nullptr);
/// C cap D as a divisor on the conic C. With a rational point of a smooth C the
/// pullback along its parametrization is used, otherwise a sheared resultant.
InfinityType infinity_type(const HomogForm& conic, const HomogForm& d, const std::optional<ProjPoint>& point = {});

// ------------------------------------------------------------ Pell engine

/// Fundamental unit (u + v sqrt(disc)) / 2 of the order of discriminant disc > 0, nonsquare.
struct QuadUnit {
    Int u, v;
    int norm;  // u^2 - disc v^2 = 4 * norm
};
std::optional<QuadUnit> fundamental_unit(const Int& disc, unsigned long max_steps = 2000000);

/// 2x2 matrix with q(g x) = N * q(x) where (u + v sqrt(disc)) / 2 has norm N; q = a s^2 + b st + c t^2.
RatMat form_automorph(const HomogForm& q, const Rat& u, const Rat& v);

struct PellAutomorphism {
    IntMat T;
    std::string str() const;
};

/// Generator of the integral automorphisms of C that fix the points at infinity.
/// Needs a rational point of C. Returns nullopt when no infinite-order generator exists.
std::optional<PellAutomorphism> fundamental_automorphism(const HomogForm& conic, const InfinityType& inf,
                                                         const IntegralityContext& ctx, const ProjPoint& point);
/// p, T p, ..., T^(n-1) p. Throws when T does not preserve C.
std::vector<ProjPoint> orbit(const ProjPoint& p, const PellAutomorphism& T, int n, const HomogForm& conic);

/// Integral 2x2 automorphism of the residual form on a line, det an S-unit.
std::optional<IntMat> binary_automorphism(const HomogForm& q, const PrimeSet& s);

// ------------------------------------------------------------ search

/// Integral points of a line (integer-basis parametrization) in P^2 or P^3.
std::vector<ProjPoint> search_integral_points(const RationalParam& line, const IntegralityContext& ctx,
                                              long height_bound);
/// Integral points of a plane conic with all coordinates at most height_bound.
std::vector<ProjPoint> search_integral_points(const HomogForm& conic, const IntegralityContext& ctx,
                                              long height_bound);

// ------------------------------------------------------------ generation

struct GenerationBudget {
    std::size_t max_points = 1000;
    std::size_t max_fibers = 100;
    long height = 100;     // bound for seed searches
    int orbit_len = 20;    // points per fiber
};

struct GenerationReport {
    std::set<ProjPoint> points;          // points of P^2 (images of points of X)
    std::set<ProjPoint> surface_points;  // points of S found on the way
    std::map<std::pair<Int, Int>, int> lambda_counts;
    std::map<std::pair<Int, Int>, int> mu_counts;
    std::size_t fibers_processed = 0;
    std::size_t degenerate_skipped = 0;
    std::size_t no_automorphism_skipped = 0;
    GenerationBudget budget;
    double seconds = 0;
    bool all_verified = true;

    std::size_t lambda_fibers_with_at_least(int k) const;
    std::size_t mu_fibers_with_at_least(int k) const;
};

/// Fibers of a pencil meeting D in one point Q; points come from the parametrization centered at Q.
GenerationReport single_fibration_generate(const CurvePencil& pencil, const ProjPoint& Q,
                                           const IntegralityContext& ctx, const std::vector<ProjPoint>& seeds,
                                           const GenerationBudget& budget);

/// Alternates between lambda-lines through P and Beukers conics of mu.
/// Seeds are points of S (dimension 3) or of P^2 off D.
GenerationReport double_fibration_generate(const BlowupSurface& lambda, const ConicFibration& mu,
                                           const std::vector<ProjPoint>& seeds, const PrimeSet& s,
                                           const GenerationBudget& budget);

// ------------------------------------------------------------ hypotheses

/// Curve where fibers of the two pencils are tangent.
HomogForm ramification_curve(const CurvePencil& lambda, const CurvePencil& mu);
/// Members a*g + b*h divisible by k, as normalized [a:b]; all members when k divides both.
std::optional<std::pair<Int, Int>> member_divisible_by(const CurvePencil& pencil, const HomogForm& k);
/// Members whose reduced support divides b.
std::vector<std::pair<Int, Int>> members_dividing(const CurvePencil& pencil, const HomogForm& b);

struct DComponent {
    HomogForm form;
    std::optional<bool> lambda_constant, mu_constant;
};
std::vector<DComponent> constancy_flags(const std::vector<HomogForm>& components, const CurvePencil& lambda,
                                        const CurvePencil& mu);

struct H1Result {
    bool holds;
    std::vector<std::pair<Int, Int>> branch_fibers;
    bool lambda_of_Dmu_is_point;
};
H1Result check_H1(const HomogForm& branch, const CurvePencil& lambda, const CurvePencil& mu,
                  const std::vector<DComponent>& d);

struct H3Result {
    std::vector<HomogForm> curves;
    bool same_pencil = false;
};
/// Rational curves constant for both pencils (degrees 1 and 2), skipping components of d.
H3Result check_H3(const CurvePencil& lambda, const CurvePencil& mu, const std::optional<HomogForm>& d = {});

}  // namespace lk3
