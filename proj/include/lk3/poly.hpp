#pragma once

#include "lk3/arith.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lk3 {

using Exps = std::array<int, 4>;

/// Monomials of the given degree in graded-lex order (first variable largest).
const std::vector<Exps>& monomials(int nvars, int degree);
std::size_t monomial_index(int nvars, int degree, const Exps& e);

/// Homogeneous polynomial in 2, 3 or 4 variables with rational coefficients.
/// Variable names: (s, t) for two variables, (x, y, z) and (x, y, z, w) otherwise.
class HomogForm {
public:
    HomogForm() : HomogForm(3, 0) {}
    HomogForm(int nvars, int degree);
    HomogForm(int nvars, int degree, std::vector<Rat> coeffs);

    static HomogForm variable(int nvars, int index);
    static HomogForm constant(int nvars, const Rat& c);
    /// Linear form with the given coefficients.
    static HomogForm linear(const std::vector<Rat>& coeffs);
    static HomogForm linear(const std::vector<Int>& coeffs);

    int nvars() const { return nvars_; }
    int degree() const { return degree_; }
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& coeff(std::size_t i) const { return c_[i]; }
    Rat coeff(const Exps& e) const;
    void set_coeff(const Exps& e, const Rat& v);
    bool is_zero() const;

    HomogForm operator+(const HomogForm& o) const;
    HomogForm operator-(const HomogForm& o) const;
    HomogForm operator-() const;
    HomogForm operator*(const HomogForm& o) const;
    HomogForm operator*(const Rat& r) const;
    HomogForm pow(int k) const;
    bool operator==(const HomogForm& o) const { return nvars_ == o.nvars_ && degree_ == o.degree_ && c_ == o.c_; }
    bool operator!=(const HomogForm& o) const { return !(*this == o); }

    Rat eval(const std::vector<Rat>& p) const;
    Rat eval(const std::vector<Int>& p) const;
    QuadElem eval(const std::vector<QuadElem>& p) const;
    HomogForm derivative(int var) const;
    /// Substitutes the i-th variable by subs[i]; all subs share nvars and degree.
    HomogForm compose(const std::vector<HomogForm>& subs) const;

    /// Quotient and remainder for graded-lex division by g.
    std::pair<HomogForm, HomogForm> divmod(const HomogForm& g) const;
    std::optional<HomogForm> divide_exact(const HomogForm& g) const;

    /// Integer coefficients with content 1 and first nonzero coefficient positive.
    HomogForm primitive() const;
    /// Scalar with primitive() == *this * scale_to_primitive().
    Rat scale_to_primitive() const;
    bool proportional(const HomogForm& o) const;

    std::string str() const;
    std::string coeff_list() const;

private:
    int nvars_;
    int degree_;
    std::vector<Rat> c_;
};

HomogForm operator*(const Rat& r, const HomogForm& f);

// ------------------------------------------------------------ univariate

/// Dense univariate polynomial, ascending coefficients.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rat> c);
    static UPoly monomial(const Rat& c, int k);

    int deg() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& lead() const { return c_.back(); }
    Rat coeff(int i) const { return i < static_cast<int>(c_.size()) && i >= 0 ? c_[i] : Rat(0); }

    UPoly operator+(const UPoly& o) const;
    UPoly operator-(const UPoly& o) const;
    UPoly operator*(const UPoly& o) const;
    UPoly operator*(const Rat& r) const;
    bool operator==(const UPoly& o) const { return c_ == o.c_; }

    std::pair<UPoly, UPoly> divmod(const UPoly& g) const;
    UPoly derivative() const;
    UPoly monic() const;
    Rat eval(const Rat& x) const;

private:
    void trim();
    std::vector<Rat> c_;
};

UPoly upoly_gcd(UPoly a, UPoly b);
/// Yun decomposition: pairs (f_i, i) with f = lead * prod f_i^i, f_i monic squarefree, pairwise coprime.
std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& f);
/// Rational roots with multiplicities, ascending.
std::vector<std::pair<Rat, int>> rational_roots(const UPoly& f);
/// Lagrange interpolation through (xs[i], ys[i]).
UPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys);

// ------------------------------------------------------------ binary forms

/// Binary forms are HomogForm with nvars == 2; coefficient i belongs to s^(d-i) t^i.
HomogForm binary(std::vector<Rat> coeffs);
UPoly dehomogenize(const HomogForm& f);            // f(x, 1)
HomogForm homogenize(const UPoly& p, int degree);  // degree >= p.deg()
Rat resultant(const HomogForm& f, const HomogForm& g);
HomogForm binary_gcd(const HomogForm& f, const HomogForm& g);

struct BinaryRoot {
    Int s, t;  // primitive, normalized
    int multiplicity;
};
std::vector<BinaryRoot> binary_rational_roots(const HomogForm& f);
/// Squarefree decomposition of a nonzero binary form: pairs (factor, multiplicity)
/// with the constant absorbed; factors have primitive integer coefficients.
std::vector<std::pair<HomogForm, int>> binary_squarefree(const HomogForm& f);
/// Linear form t0*s - s0*t vanishing at [s0:t0].
HomogForm binary_root_factor(const Int& s0, const Int& t0);

}  // namespace lk3
