#pragma once

#include <string>
#include <vector>

#include "lbz/algebra.hpp"

namespace lbz::families {

namespace detail {
inline void verify_identity(const StructureTable& L, IdentityVariant v, const std::string& family) {
    if (!check_identity(L, v).holds)
        throw bad_params(family + ": constructed table fails the " + identity_name(v) + " identity");
}
} // namespace detail

/// Cyclic algebra on basis x, x^2, ..., x^n with [x^i,x] = x^{i+1} for
/// i < n and [x^n,x] = alpha_2 x^2 + ... + alpha_n x^n, everything else zero.
inline StructureTable cyclic_algebra(std::size_t n, const std::vector<Scalar>& alphas, const FieldSpec& field) {
    if (n < 2) throw bad_params("cyclic algebra needs dimension n >= 2");
    if (alphas.size() != n - 1) throw bad_params("cyclic algebra needs coefficients alpha_2..alpha_n");
    for (const auto& a : alphas) require_same_field(a.spec(), field);
    std::vector<std::string> labels;
    labels.push_back("x");
    for (std::size_t i = 2; i <= n; ++i) labels.push_back("x" + std::to_string(i));
    std::vector<Vec> table(n * n, zero_vec(field, n));
    for (std::size_t i = 0; i + 1 < n; ++i) table[i * n + 0][i + 1] = Scalar::one(field);
    for (std::size_t i = 2; i <= n; ++i) table[(n - 1) * n + 0][i - 1] = alphas[i - 2];
    StructureTable L(field, std::move(labels), std::move(table));
    detail::verify_identity(L, IdentityVariant::Right, "cyclic");
    return L;
}

/// The two-dimensional algebra of Example 2.1: basis a, b with the only
/// non-zero products [b,b] = a and [a,b] = a.
inline StructureTable diamond(const FieldSpec& field) {
    std::vector<Vec> table(4, zero_vec(field, 2));
    table[0 * 2 + 1][0] = Scalar::one(field); // [a,b] = a
    table[1 * 2 + 1][0] = Scalar::one(field); // [b,b] = a
    StructureTable L(field, {"a", "b"}, std::move(table));
    detail::verify_identity(L, IdentityVariant::Right, "diamond");
    return L;
}

inline StructureTable abelian(std::size_t n, const FieldSpec& field) {
    std::vector<std::string> labels;
    for (std::size_t i = 1; i <= n; ++i) labels.push_back("e" + std::to_string(i));
    return StructureTable(field, std::move(labels), std::vector<Vec>(n * n, zero_vec(field, n)));
}

/// Split extension of an abelian ideal of dimension n-1 by one generator a
/// whose right multiplication restricts to the identity: [e_i,a] = e_i,
/// [a,e_i] = -e_i.
inline StructureTable almost_abelian(std::size_t n, const FieldSpec& field) {
    if (n < 2) throw bad_params("almost abelian algebra needs dimension n >= 2");
    std::vector<std::string> labels;
    for (std::size_t i = 1; i < n; ++i) labels.push_back("e" + std::to_string(i));
    labels.push_back("a");
    std::vector<Vec> table(n * n, zero_vec(field, n));
    for (std::size_t i = 0; i + 1 < n; ++i) {
        table[i * n + (n - 1)][i] = Scalar::one(field);
        table[(n - 1) * n + i][i] = -Scalar::one(field);
    }
    StructureTable L(field, std::move(labels), std::move(table));
    detail::verify_identity(L, IdentityVariant::Symmetric, "almost_abelian");
    return L;
}

/// The section-5 Lie family: basis {x; e_11..e_1r1; ...; e_n1..e_nrn} with
/// [x,e_ij] = e_ij + e_{i+1,j} (i < n), [x,e_nj] = e_nj, brackets with x
/// antisymmetric, all other products zero.  Requires r_1 <= ... <= r_n.
inline StructureTable almost_nilpotent(std::size_t n, const std::vector<std::size_t>& r, const FieldSpec& field) {
    if (n < 1 || r.size() != n) throw bad_params("almost nilpotent algebra needs multiplicities r_1..r_n");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (r[i] > r[i + 1]) throw bad_params("almost nilpotent multiplicities must be nondecreasing");
    for (std::size_t i = 0; i < n; ++i)
        if (r[i] == 0) throw bad_params("almost nilpotent multiplicities must be positive");
    std::size_t dim = 1;
    for (std::size_t i = 0; i < n; ++i) dim += r[i];
    std::vector<std::string> labels{"x"};
    std::vector<std::vector<std::size_t>> idx(n); // idx[i][j] = basis index of e_{i+1, j+1}
    {
        std::size_t next = 1;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < r[i]; ++j) {
                labels.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
                idx[i].push_back(next++);
            }
    }
    std::vector<Vec> table(dim * dim, zero_vec(field, dim));
    auto set_x_product = [&](std::size_t e, const Vec& value) {
        table[0 * dim + e] = value;                 // [x, e]
        Vec neg = value;
        for (auto& s : neg) s = -s;
        table[e * dim + 0] = std::move(neg);        // [e, x] = -[x, e]
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < r[i]; ++j) {
            Vec v = zero_vec(field, dim);
            v[idx[i][j]] = Scalar::one(field);
            if (i + 1 < n) v[idx[i + 1][j]] = Scalar::one(field);
            set_x_product(idx[i][j], v);
        }
    StructureTable L(field, std::move(labels), std::move(table));
    detail::verify_identity(L, IdentityVariant::Symmetric, "almost_nilpotent");
    return L;
}

/// Heisenberg algebra: [x,y] = z = -[y,x].
inline StructureTable heisenberg(const FieldSpec& field) {
    std::vector<Vec> table(9, zero_vec(field, 3));
    table[0 * 3 + 1][2] = Scalar::one(field);
    table[1 * 3 + 0][2] = -Scalar::one(field);
    StructureTable L(field, {"x", "y", "z"}, std::move(table));
    detail::verify_identity(L, IdentityVariant::Symmetric, "heisenberg");
    return L;
}

/// Split simple three-dimensional Lie algebra: [e,f] = h, [h,e] = 2e,
/// [h,f] = -2f.  Not available in characteristic 2.
inline StructureTable sl2(const FieldSpec& field) {
    if (field.is_prime_field() && field.p == 2) throw bad_params("sl2 requires characteristic != 2");
    std::vector<Vec> table(9, zero_vec(field, 3));
    const Scalar one = Scalar::one(field);
    const Scalar two = Scalar::of_int(field, 2);
    table[0 * 3 + 1][2] = one;        // [e,f] = h
    table[1 * 3 + 0][2] = -one;       // [f,e] = -h
    table[2 * 3 + 0][0] = two;        // [h,e] = 2e
    table[0 * 3 + 2][0] = -two;       // [e,h] = -2e
    table[2 * 3 + 1][1] = -two;       // [h,f] = -2f
    table[1 * 3 + 2][1] = two;        // [f,h] = 2f
    StructureTable L(field, {"e", "f", "h"}, std::move(table));
    detail::verify_identity(L, IdentityVariant::Symmetric, "sl2");
    return L;
}

} // namespace lbz::families
