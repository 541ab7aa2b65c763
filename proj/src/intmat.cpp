#include "lk3/intmat.hpp"

#include <stdexcept>
#include <utility>

namespace lk3 {

IntMat int_identity(std::size_t n) {
    IntMat m(n, std::vector<Int>(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMat int_mul(const IntMat& a, const IntMat& b) {
    std::size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
    IntMat c(n, std::vector<Int>(p, Int(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (a[i][j] == 0) continue;
            for (std::size_t l = 0; l < p; ++l) c[i][l] += a[i][j] * b[j][l];
        }
    return c;
}

std::vector<Int> int_apply(const IntMat& a, const std::vector<Int>& v) {
    std::vector<Int> out(a.size(), Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
    return out;
}

IntMat int_transpose(const IntMat& a) {
    if (a.empty()) return {};
    IntMat t(a[0].size(), std::vector<Int>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

RatMat to_rat(const IntMat& a) {
    RatMat r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (const auto& x : a[i]) r[i].push_back(Rat(x));
    return r;
}

RatMat rat_mul(const RatMat& a, const RatMat& b) {
    std::size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
    RatMat c(n, std::vector<Rat>(p, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (a[i][j] == 0) continue;
            for (std::size_t l = 0; l < p; ++l) c[i][l] += a[i][j] * b[j][l];
        }
    return c;
}

Rat det(RatMat m) {
    std::size_t n = m.size();
    Rat d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return Rat(0);
        if (piv != c) {
            std::swap(m[piv], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            Rat f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return d;
}

Int det(const IntMat& m) {
    Rat d = det(to_rat(m));
    return d.get_num();
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMat& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    std::size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        Rat inv = 1 / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::size_t rank(RatMat m) { return rref(m).size(); }

std::vector<std::vector<Rat>> nullspace(RatMat m) {
    if (m.empty()) return {};
    std::size_t cols = m[0].size();
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

RatMat inverse(const RatMat& m) {
    std::size_t n = m.size();
    RatMat aug(n, std::vector<Rat>(2 * n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
        aug[i][n + i] = 1;
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) throw std::domain_error("inverse: singular matrix");
    RatMat inv(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

SmithForm smith_normal_form(const IntMat& a) {
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    IntMat m = a;
    IntMat u = int_identity(rows), v = int_identity(cols);

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        std::swap(m[i], m[j]);
        std::swap(u[i], u[j]);
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (auto& r : m) std::swap(r[i], r[j]);
        for (auto& r : v) std::swap(r[i], r[j]);
    };
    // row_i <- row_i - q * row_j
    auto row_sub = [&](std::size_t i, std::size_t j, const Int& q) {
        for (std::size_t k = 0; k < cols; ++k) m[i][k] -= q * m[j][k];
        for (std::size_t k = 0; k < rows; ++k) u[i][k] -= q * u[j][k];
    };
    auto col_sub = [&](std::size_t i, std::size_t j, const Int& q) {
        for (std::size_t k = 0; k < rows; ++k) m[k][i] -= q * m[k][j];
        for (std::size_t k = 0; k < cols; ++k) v[k][i] -= q * v[k][j];
    };

    std::size_t t = 0;
    for (; t < rows && t < cols; ++t) {
        // choose the smallest nonzero entry in the remaining block as pivot
        bool found = false;
        std::size_t pi = t, pj = t;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (m[i][j] != 0 && (!found || abs(m[i][j]) < abs(m[pi][pj]))) {
                    found = true;
                    pi = i;
                    pj = j;
                }
        if (!found) break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), m[i][t].get_mpz_t(), m[t][t].get_mpz_t());
                row_sub(i, t, q);
                if (m[i][t] != 0) {
                    swap_rows(t, i);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), m[t][j].get_mpz_t(), m[t][t].get_mpz_t());
                col_sub(j, t, q);
                if (m[t][j] != 0) {
                    swap_cols(t, j);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // divisibility condition on the remaining block
            bool fixed = false;
            for (std::size_t i = t + 1; i < rows && !fixed; ++i)
                for (std::size_t j = t + 1; j < cols && !fixed; ++j)
                    if (!mpz_divisible_p(m[i][j].get_mpz_t(), m[t][t].get_mpz_t())) {
                        // add row i to row t, then re-reduce
                        row_sub(t, i, Int(-1));
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (m[t][t] < 0) {
            for (std::size_t k = 0; k < cols; ++k) m[t][k] = -m[t][k];
            for (std::size_t k = 0; k < rows; ++k) u[t][k] = -u[t][k];
        }
    }
    SmithForm out;
    out.u = std::move(u);
    out.v = std::move(v);
    for (std::size_t i = 0; i < t; ++i)
        if (m[i][i] != 0) out.diag.push_back(m[i][i]);
    return out;
}

std::vector<std::vector<Int>> integer_kernel(const IntMat& a) {
    if (a.empty()) return {};
    std::size_t cols = a[0].size();
    SmithForm s = smith_normal_form(a);
    std::vector<std::vector<Int>> basis;
    for (std::size_t j = s.diag.size(); j < cols; ++j) {
        std::vector<Int> col(cols);
        for (std::size_t k = 0; k < cols; ++k) col[k] = s.v[k][j];
        basis.push_back(std::move(col));
    }
    return basis;
}

IntMat unimodular_completion(const std::vector<Int>& v) {
    // Smith form of the row: u * v * w = e1 with u = +-1, so v = u * (first row of w^{-1}).
    std::size_t n = v.size();
    SmithForm s = smith_normal_form(IntMat{v});
    if (s.diag.size() != 1 || s.diag[0] != 1) throw std::invalid_argument("unimodular_completion: vector is not primitive");
    RatMat winv = inverse(to_rat(s.v));
    IntMat out(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rat x = winv[j][i];
            if (j == 0) x *= Rat(s.u[0][0]);
            out[i][j] = x.get_num();
        }
    return out;
}

void gauss_reduce(std::vector<Int>& b1, std::vector<Int>& b2) {
    auto dot = [](const std::vector<Int>& x, const std::vector<Int>& y) {
        Int s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
        return s;
    };
    if (dot(b1, b1) > dot(b2, b2)) std::swap(b1, b2);
    for (;;) {
        Int n1 = dot(b1, b1);
        if (n1 == 0) throw std::invalid_argument("gauss_reduce: zero vector");
        // nearest integer to <b1,b2>/<b1,b1>
        Int num = 2 * dot(b1, b2) + n1, q;
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), Int(2 * n1).get_mpz_t());
        for (std::size_t i = 0; i < b2.size(); ++i) b2[i] -= q * b1[i];
        if (dot(b2, b2) >= n1) break;
        std::swap(b1, b2);
    }
}

}  // namespace lk3
