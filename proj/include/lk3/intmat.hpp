#pragma once

#include "lk3/arith.hpp"

#include <vector>

namespace lk3 {

using IntMat = std::vector<std::vector<Int>>;
using RatMat = std::vector<std::vector<Rat>>;

IntMat int_identity(std::size_t n);
IntMat int_mul(const IntMat& a, const IntMat& b);
std::vector<Int> int_apply(const IntMat& a, const std::vector<Int>& v);
IntMat int_transpose(const IntMat& a);
RatMat to_rat(const IntMat& a);

Rat det(RatMat m);
Int det(const IntMat& m);
std::size_t rank(RatMat m);
/// Basis of the right nullspace over Q (columns returned as vectors).
std::vector<std::vector<Rat>> nullspace(RatMat m);
RatMat rat_mul(const RatMat& a, const RatMat& b);
/// Inverse of a square nonsingular matrix; throws std::domain_error when singular.
RatMat inverse(const RatMat& m);

struct SmithForm {
    IntMat u;                 // unimodular, rows x rows
    IntMat v;                 // unimodular, cols x cols
    std::vector<Int> diag;    // nonzero elementary divisors d1 | d2 | ..., all positive
};

/// u * a * v = diag(d1, ..., dr, 0, ...).
SmithForm smith_normal_form(const IntMat& a);

/// Basis of the saturated integer lattice {v in Z^n : a v = 0}.
std::vector<std::vector<Int>> integer_kernel(const IntMat& a);

/// Columns of a unimodular matrix whose first column is the primitive vector v.
IntMat unimodular_completion(const std::vector<Int>& v);

/// Lagrange-reduced basis of the rank-2 lattice spanned by b1, b2.
void gauss_reduce(std::vector<Int>& b1, std::vector<Int>& b2);

}  // namespace lk3
