#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lbz/subspace.hpp"

namespace lbz {

enum class Convention : std::uint8_t { Right, Left };

inline std::string convention_name(Convention c) { return c == Convention::Right ? "right" : "left"; }

enum class IdentityVariant : std::uint8_t { Right, Left, Symmetric };

inline std::string identity_name(IdentityVariant v) {
    switch (v) {
        case IdentityVariant::Right: return "right";
        case IdentityVariant::Left: return "left";
        default: return "symmetric";
    }
}

inline IdentityVariant identity_of(Convention c) {
    return c == Convention::Right ? IdentityVariant::Right : IdentityVariant::Left;
}

/// A finite-dimensional algebra given by structure constants: the bracket of
/// basis vectors b_i, b_j is the coordinate vector table(i, j).  No identity
/// is assumed at construction; checking is a separate operation.
class StructureTable {
public:
    StructureTable() = default;

    StructureTable(FieldSpec field, std::vector<std::string> labels, std::vector<Vec> table,
                   Convention convention = Convention::Right)
        : field_(field), dim_(labels.size()), convention_(convention), labels_(std::move(labels)),
          table_(std::move(table)) {
        if (table_.size() != dim_ * dim_) throw dimension_mismatch("structure table has wrong shape");
        for (const auto& v : table_) {
            if (v.size() != dim_) throw dimension_mismatch("structure constant vector of wrong length");
            for (const auto& s : v) require_same_field(s.spec(), field_);
        }
    }

    const FieldSpec& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    Convention convention() const { return convention_; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Coordinates of [b_i, b_j].
    const Vec& product(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }

    const std::vector<Vec>& raw_table() const { return table_; }

    /// Bilinear extension of the table.
    Vec bracket(const Vec& v, const Vec& w) const {
        if (v.size() != dim_ || w.size() != dim_) throw dimension_mismatch("bracket operands");
        Vec r = zero_vec(field_, dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (v[i].is_zero()) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (w[j].is_zero()) continue;
                const Scalar c = v[i] * w[j];
                const Vec& t = product(i, j);
                for (std::size_t k = 0; k < dim_; ++k)
                    if (!t[k].is_zero()) r[k] += c * t[k];
            }
        }
        return r;
    }

    Vec square(const Vec& v) const { return bracket(v, v); }

    Subspace zero_subspace() const { return Subspace::zero(field_, dim_); }
    Subspace full_subspace() const { return Subspace::full(field_, dim_); }

    StructureTable with_convention(Convention c) const {
        StructureTable t = *this;
        t.convention_ = c;
        return t;
    }

private:
    FieldSpec field_ = FieldSpec::rationals();
    std::size_t dim_ = 0;
    Convention convention_ = Convention::Right;
    std::vector<std::string> labels_;
    std::vector<Vec> table_;
};

struct IdentityWitness {
    std::size_t i = 0, j = 0, k = 0;
    Vec defect;
};

struct IdentityReport {
    IdentityVariant variant = IdentityVariant::Right;
    bool holds = false;
    std::optional<IdentityWitness> witness;
};

/// Defect of the right identity at (x, y, z):
///   [x,[y,z]] - [[x,y],z] + [[x,z],y].
inline Vec right_identity_defect(const StructureTable& L, const Vec& x, const Vec& y, const Vec& z) {
    Vec d = L.bracket(x, L.bracket(y, z));
    d = vec_sub(d, L.bracket(L.bracket(x, y), z));
    return vec_add(d, L.bracket(L.bracket(x, z), y));
}

/// Defect of the left identity at (x, y, z):
///   [x,[y,z]] - [[x,y],z] - [y,[x,z]].
inline Vec left_identity_defect(const StructureTable& L, const Vec& x, const Vec& y, const Vec& z) {
    Vec d = L.bracket(x, L.bracket(y, z));
    d = vec_sub(d, L.bracket(L.bracket(x, y), z));
    return vec_sub(d, L.bracket(y, L.bracket(x, z)));
}

/// Checks the chosen Leibniz identity on all basis triples; this suffices by
/// trilinearity of the defect.  Symmetric means right and left.
inline IdentityReport check_identity(const StructureTable& L, IdentityVariant variant) {
    const std::size_t n = L.dim();
    auto scan = [&](bool right_form) -> std::optional<IdentityWitness> {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    const Vec bi = unit_vec(L.field(), n, i);
                    const Vec bj = unit_vec(L.field(), n, j);
                    const Vec bk = unit_vec(L.field(), n, k);
                    Vec d = right_form ? right_identity_defect(L, bi, bj, bk)
                                       : left_identity_defect(L, bi, bj, bk);
                    if (!is_zero_vec(d)) return IdentityWitness{i, j, k, std::move(d)};
                }
        return std::nullopt;
    };
    IdentityReport rep;
    rep.variant = variant;
    std::optional<IdentityWitness> w;
    if (variant == IdentityVariant::Right)
        w = scan(true);
    else if (variant == IdentityVariant::Left)
        w = scan(false);
    else {
        w = scan(true);
        if (!w) w = scan(false);
    }
    rep.holds = !w.has_value();
    rep.witness = std::move(w);
    return rep;
}

inline IdentityReport check_identity(const StructureTable& L) {
    return check_identity(L, identity_of(L.convention()));
}

/// Matrix of the right multiplication operator y -> [y, x].
inline Matrix right_mult_matrix(const StructureTable& L, const Vec& x) {
    if (x.size() != L.dim()) throw dimension_mismatch("right multiplication operand");
    const std::size_t n = L.dim();
    Matrix m(L.field(), n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const Vec col = L.bracket(unit_vec(L.field(), n, j), x);
        for (std::size_t i = 0; i < n; ++i) m.at(i, j) = col[i];
    }
    return m;
}

/// Matrix of the left multiplication operator y -> [x, y].
inline Matrix left_mult_matrix(const StructureTable& L, const Vec& x) {
    if (x.size() != L.dim()) throw dimension_mismatch("left multiplication operand");
    const std::size_t n = L.dim();
    Matrix m(L.field(), n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const Vec col = L.bracket(x, unit_vec(L.field(), n, j));
        for (std::size_t i = 0; i < n; ++i) m.at(i, j) = col[i];
    }
    return m;
}

/// Canonical span of { [u, v] : u in basis(U), v in basis(V) }.
inline Subspace product_space(const StructureTable& L, const Subspace& U, const Subspace& V) {
    if (U.ambient_dim() != L.dim() || V.ambient_dim() != L.dim())
        throw dimension_mismatch("product space operands");
    std::vector<Vec> gens;
    for (std::size_t r = 0; r < U.dim(); ++r)
        for (std::size_t s = 0; s < V.dim(); ++s) {
            Vec w = L.bracket(U.basis_vector(r), V.basis_vector(s));
            if (!is_zero_vec(w)) gens.push_back(std::move(w));
        }
    return Subspace::span(L.field(), L.dim(), gens);
}

/// Least subspace containing gens that is closed under the bracket; computed
/// by rref-extending the span with all pairwise products until the dimension
/// stabilizes (at most dim rounds).
inline Subspace generated_subalgebra(const StructureTable& L, const std::vector<Vec>& gens) {
    for (const auto& g : gens)
        if (g.size() != L.dim()) throw dimension_mismatch("generator of wrong length");
    Subspace s = Subspace::span(L.field(), L.dim(), gens);
    for (;;) {
        std::vector<Vec> rows = s.basis().row_list();
        const std::size_t before = s.dim();
        for (std::size_t r = 0; r < before; ++r)
            for (std::size_t c = 0; c < before; ++c) {
                Vec w = L.bracket(s.basis_vector(r), s.basis_vector(c));
                if (!is_zero_vec(w)) rows.push_back(std::move(w));
            }
        Subspace next = Subspace::span(L.field(), L.dim(), rows);
        if (next.dim() == before) return next;
        s = std::move(next);
    }
}

enum class SubspaceClass : std::uint8_t { NotSubalgebra, Subalgebra, RightIdeal, LeftIdeal, Ideal };

inline std::string subspace_class_name(SubspaceClass c) {
    switch (c) {
        case SubspaceClass::NotSubalgebra: return "not_subalgebra";
        case SubspaceClass::Subalgebra: return "subalgebra";
        case SubspaceClass::RightIdeal: return "right_ideal";
        case SubspaceClass::LeftIdeal: return "left_ideal";
        default: return "ideal";
    }
}

/// Strongest applicable label for U inside L.
inline SubspaceClass classify_subspace(const StructureTable& L, const Subspace& U) {
    if (U.ambient_dim() != L.dim()) throw dimension_mismatch("classify operand");
    const std::size_t n = L.dim();
    bool closed = true, right = true, left = true;
    for (std::size_t r = 0; r < U.dim() && closed; ++r)
        for (std::size_t s = 0; s < U.dim() && closed; ++s)
            if (!U.contains(L.bracket(U.basis_vector(r), U.basis_vector(s)))) closed = false;
    if (!closed) return SubspaceClass::NotSubalgebra;
    for (std::size_t r = 0; r < U.dim() && (right || left); ++r)
        for (std::size_t j = 0; j < n && (right || left); ++j) {
            const Vec u = U.basis_vector(r);
            const Vec bj = unit_vec(L.field(), n, j);
            if (right && !U.contains(L.bracket(u, bj))) right = false;
            if (left && !U.contains(L.bracket(bj, u))) left = false;
        }
    if (right && left) return SubspaceClass::Ideal;
    if (right) return SubspaceClass::RightIdeal;
    if (left) return SubspaceClass::LeftIdeal;
    return SubspaceClass::Subalgebra;
}

inline bool is_ideal(const StructureTable& L, const Subspace& U) {
    return classify_subspace(L, U) == SubspaceClass::Ideal;
}

struct QuotientResult {
    StructureTable algebra;              // table on the complement coordinates
    Matrix projection;                   // m x n, sends v to its class
    std::vector<std::size_t> complement; // the non-pivot coordinates used as quotient basis
};

/// Quotient by a two-sided ideal, on the canonical complement basis (the
/// non-pivot coordinates of the ideal's rref matrix).
inline QuotientResult quotient_algebra(const StructureTable& L, const Subspace& J) {
    if (J.ambient_dim() != L.dim()) throw dimension_mismatch("quotient operand");
    if (classify_subspace(L, J) != SubspaceClass::Ideal) throw not_an_ideal();
    const std::size_t n = L.dim();
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : J.pivots()) is_pivot[p] = true;
    std::vector<std::size_t> comp;
    for (std::size_t i = 0; i < n; ++i)
        if (!is_pivot[i]) comp.push_back(i);
    const std::size_t m = comp.size();

    auto reduce = [&](const Vec& v) -> Vec {
        const Vec res = reduce_against(J.basis(), J.pivots(), v);
        Vec out(m, Scalar::zero(L.field()));
        for (std::size_t t = 0; t < m; ++t) out[t] = res[comp[t]];
        return out;
    };

    std::vector<std::string> labels;
    for (std::size_t t = 0; t < m; ++t) labels.push_back(L.labels()[comp[t]]);

    std::vector<Vec> table(m * m, zero_vec(L.field(), m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            table[a * m + b] = reduce(L.product(comp[a], comp[b]));

    Matrix proj(L.field(), m, n);
    for (std::size_t j = 0; j < n; ++j) {
        const Vec cls = reduce(unit_vec(L.field(), n, j));
        for (std::size_t t = 0; t < m; ++t) proj.at(t, j) = cls[t];
    }
    return QuotientResult{StructureTable(L.field(), std::move(labels), std::move(table), L.convention()),
                          std::move(proj), std::move(comp)};
}

/// Block-diagonal direct sum.
inline StructureTable direct_sum(const StructureTable& a, const StructureTable& b) {
    require_same_field(a.field(), b.field());
    if (a.convention() != b.convention()) throw bad_params("direct sum of mixed conventions");
    const std::size_t n = a.dim(), m = b.dim(), d = n + m;
    std::vector<std::string> labels;
    for (const auto& s : a.labels()) labels.push_back(s + "'");
    for (const auto& s : b.labels()) labels.push_back(s + "\"");
    std::vector<Vec> table(d * d, zero_vec(a.field(), d));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) table[i * d + j][k] = a.product(i, j)[k];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k) table[(n + i) * d + (n + j)][n + k] = b.product(i, j)[k];
    return StructureTable(a.field(), std::move(labels), std::move(table), a.convention());
}

/// Opposite algebra: c'[i][j] = c[j][i].  The opposite of a right Leibniz
/// algebra is a left Leibniz algebra and vice versa.
inline StructureTable opposite_algebra(const StructureTable& L) {
    const std::size_t n = L.dim();
    std::vector<Vec> table(n * n, zero_vec(L.field(), n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) table[i * n + j] = L.product(j, i);
    const Convention c = L.convention() == Convention::Right ? Convention::Left : Convention::Right;
    return StructureTable(L.field(), L.labels(), std::move(table), c);
}

/// The induced algebra on the basis of a subalgebra U; coordinates relative
/// to U's rref basis.
inline StructureTable restrict_algebra(const StructureTable& L, const Subspace& U,
                                       const std::string& label_prefix = "u") {
    if (U.ambient_dim() != L.dim()) throw dimension_mismatch("restriction operand");
    const std::size_t m = U.dim();
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m; ++i) labels.push_back(label_prefix + std::to_string(i + 1));
    std::vector<Vec> table(m * m, zero_vec(L.field(), m));
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = 0; s < m; ++s) {
            const Vec w = L.bracket(U.basis_vector(r), U.basis_vector(s));
            auto coords = U.coordinates_of(w);
            if (!coords) throw bad_params("subspace is not closed under the bracket");
            table[r * m + s] = std::move(*coords);
        }
    return StructureTable(L.field(), std::move(labels), std::move(table), L.convention());
}

/// Renders a coordinate vector as a combination of basis labels, e.g.
/// "a+4b" or "(1/2)x1-x2"; "0" for the zero vector.
inline std::string format_vector(const StructureTable& L, const Vec& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        const std::string c = v[i].str();
        if (!out.empty()) out += "+";
        if (c == "1")
            out += L.labels()[i];
        else if (c.find('/') != std::string::npos || c.find('-') != std::string::npos)
            out += "(" + c + ")" + L.labels()[i];
        else
            out += c + L.labels()[i];
    }
    return out.empty() ? "0" : out;
}

} // namespace lbz
