#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lbz/matrix.hpp"

namespace lbz {

/// A subspace of F^n held by its canonical reduced-row-echelon basis.  Two
/// subspaces are equal iff their basis matrices are identical, which makes
/// Subspace usable as a dictionary key throughout.
class Subspace {
public:
    Subspace() = default;

    static Subspace zero(const FieldSpec& f, std::size_t ambient) {
        Subspace s;
        s.field_ = f;
        s.ambient_ = ambient;
        s.basis_ = Matrix(f, 0, ambient);
        return s;
    }

    static Subspace full(const FieldSpec& f, std::size_t ambient) {
        Subspace s;
        s.field_ = f;
        s.ambient_ = ambient;
        s.basis_ = Matrix::identity(f, ambient);
        for (std::size_t i = 0; i < ambient; ++i) s.pivots_.push_back(i);
        return s;
    }

    static Subspace span(const FieldSpec& f, std::size_t ambient, const std::vector<Vec>& vectors) {
        for (const auto& v : vectors)
            if (v.size() != ambient) throw dimension_mismatch("spanning vector of wrong length");
        Subspace s;
        s.field_ = f;
        s.ambient_ = ambient;
        RrefResult rr = rref(Matrix::from_rows(f, vectors));
        if (vectors.empty()) rr.mat = Matrix(f, 0, ambient);
        s.basis_ = std::move(rr.mat);
        s.pivots_ = std::move(rr.pivots);
        return s;
    }

    /// Builds from a matrix already known to be in rref (validated).
    static Subspace from_rref(const FieldSpec& f, Matrix m) {
        Subspace direct;
        direct.field_ = f;
        direct.ambient_ = m.cols;
        RrefResult rr = rref(m);
        if (!(rr.mat == m)) throw bad_params("matrix is not in reduced row echelon form");
        direct.basis_ = std::move(rr.mat);
        direct.pivots_ = std::move(rr.pivots);
        return direct;
    }

    const FieldSpec& field() const { return field_; }
    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows; }
    const Matrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    Vec basis_vector(std::size_t i) const { return basis_.row(i); }
    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == ambient_; }

    bool contains(const Vec& v) const {
        if (v.size() != ambient_) throw dimension_mismatch("membership test");
        return is_zero_vec(reduce_against(basis_, pivots_, v));
    }

    bool contains(const Subspace& other) const {
        if (other.ambient_ != ambient_) throw dimension_mismatch("containment test");
        if (other.dim() > dim()) return false;
        for (std::size_t i = 0; i < other.dim(); ++i)
            if (!contains(other.basis_vector(i))) return false;
        return true;
    }

    /// Coordinates of v in this basis, if v lies in the subspace.
    std::optional<Vec> coordinates_of(const Vec& v) const {
        if (v.size() != ambient_) throw dimension_mismatch("coordinate extraction");
        Vec coeff(dim(), Scalar::zero(field_));
        Vec res = v;
        for (std::size_t r = 0; r < dim(); ++r) {
            const Scalar c = res[pivots_[r]];
            coeff[r] = c;
            if (c.is_zero()) continue;
            for (std::size_t j = 0; j < ambient_; ++j) res[j] -= c * basis_.at(r, j);
        }
        if (!is_zero_vec(res)) return std::nullopt;
        return coeff;
    }

    Subspace sum(const Subspace& other) const {
        if (other.ambient_ != ambient_) throw dimension_mismatch("subspace sum");
        std::vector<Vec> rows = basis_.row_list();
        for (auto&& r : other.basis_.row_list()) rows.push_back(std::move(r));
        return span(field_, ambient_, rows);
    }

    /// Zassenhaus intersection.
    Subspace intersect(const Subspace& other) const {
        if (other.ambient_ != ambient_) throw dimension_mismatch("subspace intersection");
        const std::size_t n = ambient_;
        std::vector<Vec> rows;
        for (std::size_t i = 0; i < dim(); ++i) {
            Vec r(2 * n, Scalar::zero(field_));
            for (std::size_t j = 0; j < n; ++j) r[j] = r[n + j] = basis_.at(i, j);
            rows.push_back(std::move(r));
        }
        for (std::size_t i = 0; i < other.dim(); ++i) {
            Vec r(2 * n, Scalar::zero(field_));
            for (std::size_t j = 0; j < n; ++j) r[j] = other.basis_.at(i, j);
            rows.push_back(std::move(r));
        }
        const RrefResult rr = rref(Matrix::from_rows(field_, rows));
        std::vector<Vec> inter;
        for (std::size_t i = 0; i < rr.rank; ++i) {
            bool left_zero = true;
            for (std::size_t j = 0; j < n && left_zero; ++j)
                if (!rr.mat.at(i, j).is_zero()) left_zero = false;
            if (!left_zero) continue;
            Vec r(n, Scalar::zero(field_));
            for (std::size_t j = 0; j < n; ++j) r[j] = rr.mat.at(i, n + j);
            inter.push_back(std::move(r));
        }
        return span(field_, ambient_, inter);
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

    /// Canonical order: (dimension, lexicographic rref entries).
    friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
        if (auto c = a.ambient_ <=> b.ambient_; c != 0) return c;
        if (auto c = a.dim() <=> b.dim(); c != 0) return c;
        for (std::size_t i = 0; i < a.basis_.a.size(); ++i)
            if (auto c = a.basis_.a[i] <=> b.basis_.a[i]; c != 0) return c;
        return std::strong_ordering::equal;
    }

    /// Stable string key, e.g. "[1 0 1; 0 1 0]".
    std::string key() const {
        std::string s = "[";
        for (std::size_t i = 0; i < dim(); ++i) {
            if (i) s += "; ";
            for (std::size_t j = 0; j < ambient_; ++j) {
                if (j) s += " ";
                s += basis_.at(i, j).str();
            }
        }
        s += "]";
        return s;
    }

private:
    FieldSpec field_ = FieldSpec::rationals();
    std::size_t ambient_ = 0;
    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

} // namespace lbz
