#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lbz/field.hpp"

namespace lbz {

using Vec = std::vector<Scalar>;

inline Vec zero_vec(const FieldSpec& spec, std::size_t n) { return Vec(n, Scalar::zero(spec)); }

inline Vec unit_vec(const FieldSpec& spec, std::size_t n, std::size_t i) {
    Vec v = zero_vec(spec, n);
    v[i] = Scalar::one(spec);
    return v;
}

inline bool is_zero_vec(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

inline Vec vec_add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw dimension_mismatch();
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline Vec vec_sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw dimension_mismatch();
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

inline Vec vec_scale(const Scalar& c, const Vec& v) {
    Vec r = v;
    for (auto& x : r) x *= c;
    return r;
}

/// Dense row-major matrix of exact scalars over one field.
struct Matrix {
    FieldSpec field;
    std::size_t rows = 0, cols = 0;
    std::vector<Scalar> a;

    Matrix() = default;
    Matrix(const FieldSpec& f, std::size_t r, std::size_t c)
        : field(f), rows(r), cols(c), a(r * c, Scalar::zero(f)) {}

    static Matrix identity(const FieldSpec& f, std::size_t n) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
        return m;
    }

    static Matrix from_rows(const FieldSpec& f, const std::vector<Vec>& rs) {
        const std::size_t c = rs.empty() ? 0 : rs.front().size();
        Matrix m(f, rs.size(), c);
        for (std::size_t i = 0; i < rs.size(); ++i) {
            if (rs[i].size() != c) throw dimension_mismatch("ragged rows");
            for (std::size_t j = 0; j < c; ++j) {
                require_same_field(rs[i][j].spec(), f);
                m.at(i, j) = rs[i][j];
            }
        }
        return m;
    }

    Scalar& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    Vec row(std::size_t i) const { return Vec(a.begin() + i * cols, a.begin() + (i + 1) * cols); }

    std::vector<Vec> row_list() const {
        std::vector<Vec> rs;
        rs.reserve(rows);
        for (std::size_t i = 0; i < rows; ++i) rs.push_back(row(i));
        return rs;
    }

    /// Matrix-vector product M*v.
    Vec apply(const Vec& v) const {
        if (v.size() != cols) throw dimension_mismatch("matrix apply");
        Vec r = zero_vec(field, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
        return r;
    }

    Matrix mul(const Matrix& o) const {
        require_same_field(field, o.field);
        if (cols != o.rows) throw dimension_mismatch("matrix product");
        Matrix r(field, rows, o.cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t k = 0; k < cols; ++k) {
                if (at(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < o.cols; ++j)
                    if (!o.at(k, j).is_zero()) r.at(i, j) += at(i, k) * o.at(k, j);
            }
        return r;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.field == y.field && x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

struct RrefResult {
    Matrix mat;                       // zero rows dropped
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;  // pivot column per row
};

/// Reduced row echelon form with leading ones; zero rows are dropped, so the
/// result is the canonical representative of the row space.
inline RrefResult rref(const Matrix& input) {
    Matrix m = input;
    const std::size_t n = m.cols;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m.rows; ++c) {
        std::size_t sel = m.rows;
        for (std::size_t i = r; i < m.rows; ++i)
            if (!m.at(i, c).is_zero()) { sel = i; break; }
        if (sel == m.rows) continue;
        if (sel != r)
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(sel, j), m.at(r, j));
        const Scalar piv_inv = m.at(r, c).inv();
        for (std::size_t j = c; j < n; ++j) m.at(r, j) *= piv_inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            const Scalar f = m.at(i, c);
            for (std::size_t j = c; j < n; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    Matrix out(m.field, r, n);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = m.at(i, j);
    return RrefResult{std::move(out), r, std::move(pivots)};
}

/// Reduces v against an rref basis; returns the residual (zero iff v lies in
/// the row space).
inline Vec reduce_against(const Matrix& rref_basis, const std::vector<std::size_t>& pivots, const Vec& v) {
    Vec res = v;
    for (std::size_t r = 0; r < rref_basis.rows; ++r) {
        const Scalar c = res[pivots[r]];
        if (c.is_zero()) continue;
        for (std::size_t j = 0; j < rref_basis.cols; ++j) res[j] -= c * rref_basis.at(r, j);
    }
    return res;
}

/// Canonical basis of the right nullspace {v : M v = 0}, as an rref matrix.
inline Matrix kernel_basis(const Matrix& m) {
    const RrefResult rr = rref(m);
    const std::size_t n = m.cols;
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : rr.pivots) is_pivot[p] = true;
    std::vector<Vec> gens;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        Vec v = zero_vec(m.field, n);
        v[f] = Scalar::one(m.field);
        for (std::size_t r = 0; r < rr.rank; ++r) v[rr.pivots[r]] = -rr.mat.at(r, f);
        gens.push_back(std::move(v));
    }
    return rref(Matrix::from_rows(m.field, gens)).mat;
}

/// Faddeev-LeVerrier characteristic polynomial coefficients of a square
/// matrix over Q, c_0 + c_1 x + ... + c_n x^n with c_n = 1.  The recurrence
/// divides by 1..n, so it is not available over small prime fields (where
/// eigenvalue candidates are enumerated directly instead).
inline std::vector<Scalar> characteristic_polynomial(const Matrix& m) {
    if (m.rows != m.cols) throw dimension_mismatch("characteristic polynomial of non-square matrix");
    if (!m.field.is_rationals()) throw bad_params("characteristic polynomial is implemented over Q only");
    const std::size_t n = m.rows;
    std::vector<Scalar> c(n + 1, Scalar::zero(m.field));
    c[n] = Scalar::one(m.field);
    Matrix b = Matrix::identity(m.field, n);
    for (std::size_t k = 1; k <= n; ++k) {
        const Matrix mb = m.mul(b);
        Scalar tr = Scalar::zero(m.field);
        for (std::size_t i = 0; i < n; ++i) tr += mb.at(i, i);
        const Scalar ck = -(tr * Scalar::of_int(m.field, static_cast<long long>(k)).inv());
        c[n - k] = ck;
        b = mb;
        for (std::size_t i = 0; i < n; ++i) b.at(i, i) += ck;
    }
    return c;
}

} // namespace lbz
