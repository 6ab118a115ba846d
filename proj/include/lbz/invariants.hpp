#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lbz/lattice.hpp"

namespace lbz {

enum class SeriesKind : std::uint8_t { LowerCentral, Derived };

/// A descending series L = T_0 >= T_1 >= ... computed until it stabilizes.
/// For the lower central series T_k = L^{k+1}; for the derived series
/// T_k = L^(k).  class_or_length is present iff the series reaches 0 and is
/// then the nilpotency class / derived length.
struct SeriesResult {
    SeriesKind kind = SeriesKind::LowerCentral;
    std::vector<Subspace> terms;
    bool stabilized = true;
    std::optional<std::size_t> class_or_length;
};

inline SeriesResult series(const StructureTable& L, SeriesKind kind) {
    SeriesResult r;
    r.kind = kind;
    const Subspace full = L.full_subspace();
    r.terms.push_back(full);
    while (!r.terms.back().is_zero()) {
        const Subspace& cur = r.terms.back();
        Subspace next = kind == SeriesKind::LowerCentral ? product_space(L, cur, full)
                                                         : product_space(L, cur, cur);
        if (next == cur) {
            r.terms.push_back(std::move(next)); // show the stabilized repeat
            return r;
        }
        r.terms.push_back(std::move(next));
    }
    r.class_or_length = r.terms.size() - 1;
    return r;
}

inline bool is_nilpotent(const StructureTable& L) {
    return series(L, SeriesKind::LowerCentral).class_or_length.has_value();
}

inline bool is_solvable(const StructureTable& L) {
    return series(L, SeriesKind::Derived).class_or_length.has_value();
}

/// Span of all squares x^2, computed by polarization:
/// span{ b_i^2 } + span{ [b_i,b_j] + [b_j,b_i] : i < j }.
inline Subspace squares_span(const StructureTable& L) {
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < L.dim(); ++i) gens.push_back(L.product(i, i));
    for (std::size_t i = 0; i < L.dim(); ++i)
        for (std::size_t j = i + 1; j < L.dim(); ++j)
            gens.push_back(vec_add(L.product(i, j), L.product(j, i)));
    return Subspace::span(L.field(), L.dim(), gens);
}

/// A table is Lie iff all squares vanish and the (then equivalent) Leibniz
/// identities hold.
inline bool is_lie(const StructureTable& L) {
    return squares_span(L).is_zero() && check_identity(L, IdentityVariant::Right).holds;
}

/// The Leibniz kernel I = span{x^2 : x in L}: the smallest ideal with Lie
/// quotient.  Requires the declared Leibniz identity; the computed span is
/// verified to be an ideal with [L,I] = 0 (right convention; [I,L] = 0 for
/// left) and Lie quotient.
inline Subspace leibniz_kernel(const StructureTable& L) {
    if (!check_identity(L).holds)
        throw not_leibniz("Leibniz kernel needs the " + identity_name(identity_of(L.convention())) +
                          " identity");
    const Subspace I = squares_span(L);
    if (classify_subspace(L, I) != SubspaceClass::Ideal)
        throw error("internal: Leibniz kernel is not an ideal");
    const Subspace full = L.full_subspace();
    const Subspace annihilated = L.convention() == Convention::Right ? product_space(L, full, I)
                                                                     : product_space(L, I, full);
    if (!annihilated.is_zero()) throw error("internal: Leibniz kernel is not annihilated");
    if (!is_lie(quotient_algebra(L, I).algebra)) throw error("internal: quotient by kernel is not Lie");
    return I;
}

/// Centre Z(L) = { z : [z,x] = [x,z] = 0 for all x }, the kernel of the
/// stacked right/left multiplication constraints.
inline Subspace centre(const StructureTable& L) {
    const std::size_t n = L.dim();
    Matrix constraints(L.field(), 2 * n * n, n);
    std::size_t row = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t m = 0; m < n; ++m) {
            for (std::size_t k = 0; k < n; ++k) {
                constraints.at(row, k) = L.product(k, i)[m];     // [z, b_i] = 0
                constraints.at(row + 1, k) = L.product(i, k)[m]; // [b_i, z] = 0
            }
            row += 2;
        }
    return Subspace::from_rref(L.field(), kernel_basis(constraints));
}

/// Indices of the ideal nodes of a built lattice.
inline std::vector<int> ideal_node_indices(const SubalgebraLattice& lat) {
    std::vector<int> out;
    for (std::size_t i = 0; i < lat.size(); ++i)
        if (lat.meta(i).is_ideal) out.push_back(static_cast<int>(i));
    return out;
}

/// Coatoms of the subalgebra lattice.
inline std::vector<Subspace> maximal_subalgebras(const SubalgebraLattice& lat) {
    std::vector<Subspace> out;
    for (int c : lat.coatoms()) out.push_back(lat.node(static_cast<std::size_t>(c)));
    return out;
}

inline std::vector<Subspace> maximal_subalgebras(const StructureTable& L, const Caps& caps = {}) {
    if (!L.field().is_prime_field())
        throw requires_finite_field("maximal subalgebra enumeration needs GF(p)");
    return maximal_subalgebras(build_subalgebra_lattice(L, caps));
}

/// Largest ideal contained in the intersection of all maximal subalgebras,
/// computed from below as the sum of all ideals inside that intersection.
inline Subspace frattini_ideal(const SubalgebraLattice& lat) {
    const StructureTable& L = lat.algebra();
    Subspace inter = L.full_subspace();
    for (int c : lat.coatoms()) inter = inter.intersect(lat.node(static_cast<std::size_t>(c)));
    Subspace sum = L.zero_subspace();
    for (int i : ideal_node_indices(lat)) {
        const Subspace& J = lat.node(static_cast<std::size_t>(i));
        if (inter.contains(J)) sum = sum.sum(J);
    }
    if (classify_subspace(L, sum) != SubspaceClass::Ideal)
        throw error("internal: Frattini ideal candidate is not an ideal");
    return sum;
}

inline Subspace frattini_ideal(const StructureTable& L, const Caps& caps = {}) {
    if (!L.field().is_prime_field())
        throw requires_finite_field("Frattini ideal computation needs GF(p)");
    return frattini_ideal(build_subalgebra_lattice(L, caps));
}

namespace detail {

/// Sum of all ideal nodes whose restricted algebra satisfies `good`; the sum
/// is verified to satisfy `good` itself, failing loudly otherwise.
template <typename Pred>
Subspace largest_ideal_with(const SubalgebraLattice& lat, Pred good, const char* what) {
    const StructureTable& L = lat.algebra();
    Subspace sum = L.zero_subspace();
    for (int i : ideal_node_indices(lat)) {
        const Subspace& J = lat.node(static_cast<std::size_t>(i));
        if (good(restrict_algebra(L, J))) sum = sum.sum(J);
    }
    if (classify_subspace(L, sum) != SubspaceClass::Ideal)
        throw maximality_violated(std::string("sum of ") + what + " ideals is not an ideal");
    if (!good(restrict_algebra(L, sum)))
        throw maximality_violated(std::string("sum of ") + what + " ideals is not " + what +
                                  "; no largest such ideal exists");
    return sum;
}

} // namespace detail

/// Largest nilpotent ideal N(L).
inline Subspace nilradical(const SubalgebraLattice& lat) {
    return detail::largest_ideal_with(lat, [](const StructureTable& t) { return is_nilpotent(t); },
                                      "nilpotent");
}

inline Subspace nilradical(const StructureTable& L, const Caps& caps = {}) {
    if (!L.field().is_prime_field()) throw requires_finite_field("nilradical computation needs GF(p)");
    return nilradical(build_subalgebra_lattice(L, caps));
}

/// Largest solvable ideal R(L).
inline Subspace radical(const SubalgebraLattice& lat) {
    return detail::largest_ideal_with(lat, [](const StructureTable& t) { return is_solvable(t); },
                                      "solvable");
}

inline Subspace radical(const StructureTable& L, const Caps& caps = {}) {
    if (!L.field().is_prime_field()) throw requires_finite_field("radical computation needs GF(p)");
    return radical(build_subalgebra_lattice(L, caps));
}

/// Atoms of the ideal sublattice: minimal nonzero ideals.
inline std::vector<Subspace> minimal_ideals(const SubalgebraLattice& lat) {
    const auto ideals = ideal_node_indices(lat);
    std::vector<Subspace> out;
    for (int i : ideals) {
        if (lat.node(static_cast<std::size_t>(i)).is_zero()) continue;
        bool minimal = true;
        for (int j : ideals) {
            if (j == i || lat.node(static_cast<std::size_t>(j)).is_zero()) continue;
            if (lat.leq(j, i)) {
                minimal = false;
                break;
            }
        }
        if (minimal) out.push_back(lat.node(static_cast<std::size_t>(i)));
    }
    return out;
}

inline std::vector<Subspace> minimal_ideals(const StructureTable& L, const Caps& caps = {}) {
    if (!L.field().is_prime_field())
        throw requires_finite_field("minimal ideal enumeration needs GF(p)");
    return minimal_ideals(build_subalgebra_lattice(L, caps));
}

struct CyclicVerdict {
    enum class Kind : std::uint8_t { Yes, No, Unknown } kind = Kind::Unknown;
    std::optional<Vec> generator;

    bool yes() const { return kind == Kind::Yes; }
    std::string str() const {
        switch (kind) {
            case Kind::Yes: return "yes";
            case Kind::No: return "no";
            default: return "unknown";
        }
    }
};

namespace detail {

/// Projective representatives (first nonzero coordinate 1) over GF(p), in
/// lex order by leading index then remaining digits.
inline std::vector<Vec> projective_vectors(const FieldSpec& f, std::size_t n) {
    std::vector<Vec> out;
    for (std::size_t lead = 0; lead < n; ++lead) {
        const std::size_t tail = n - lead - 1;
        std::vector<std::uint32_t> digits(tail, 0);
        for (;;) {
            Vec v = zero_vec(f, n);
            v[lead] = Scalar::one(f);
            for (std::size_t t = 0; t < tail; ++t) v[lead + 1 + t] = Scalar::residue(f, digits[t]);
            out.push_back(std::move(v));
            std::size_t t = 0;
            while (t < tail && ++digits[t] == f.p) digits[t++] = 0;
            if (t == tail) break;
        }
    }
    return out;
}

/// Height-bounded rational values: 0 and reduced a/b with |a| <= h, 1 <= b <= h.
inline std::vector<Scalar> bounded_rationals(std::uint32_t h) {
    std::vector<Scalar> vals;
    vals.push_back(Scalar::zero(FieldSpec::rationals()));
    for (std::uint32_t b = 1; b <= h; ++b)
        for (std::uint32_t a = 1; a <= h; ++a) {
            if (std::gcd(a, b) != 1) continue;
            vals.push_back(Scalar::rational(BigInt(a), BigInt(b)));
            vals.push_back(Scalar::rational(-BigInt(a), BigInt(b)));
        }
    return vals;
}

} // namespace detail

/// Cyclicity test: exact over GF(p) (scan projective generators, since
/// <lambda v> = <v>); over Q a bounded-height search that honestly returns
/// unknown on failure unless a structural certificate rules cyclic out.
inline CyclicVerdict is_cyclic(const StructureTable& L, const Caps& caps = {}) {
    CyclicVerdict v;
    const std::size_t n = L.dim();
    if (n == 0) {
        v.kind = CyclicVerdict::Kind::Yes;
        v.generator = Vec{};
        return v;
    }
    if (L.field().is_prime_field()) {
        for (auto& cand : detail::projective_vectors(L.field(), n)) {
            if (generated_subalgebra(L, {cand}).is_full()) {
                v.kind = CyclicVerdict::Kind::Yes;
                v.generator = std::move(cand);
                return v;
            }
        }
        v.kind = CyclicVerdict::Kind::No;
        return v;
    }
    // over Q: <v> is contained in Fv + L^2, so dim L^2 < n - 1 rules out a
    // generator; so does being Lie in dimension >= 2.
    const Subspace lsq = product_space(L, L.full_subspace(), L.full_subspace());
    if (lsq.dim() + 1 < n || (n >= 2 && is_lie(L))) {
        v.kind = CyclicVerdict::Kind::No;
        return v;
    }
    const auto vals = detail::bounded_rationals(caps.rational_height);
    for (std::size_t lead = 0; lead < n; ++lead) {
        const std::size_t tail = n - lead - 1;
        std::vector<std::size_t> pick(tail, 0);
        for (;;) {
            Vec cand = zero_vec(L.field(), n);
            cand[lead] = Scalar::one(L.field());
            for (std::size_t t = 0; t < tail; ++t) cand[lead + 1 + t] = vals[pick[t]];
            if (generated_subalgebra(L, {cand}).is_full()) {
                v.kind = CyclicVerdict::Kind::Yes;
                v.generator = std::move(cand);
                return v;
            }
            std::size_t t = 0;
            while (t < tail && ++pick[t] == vals.size()) pick[t++] = 0;
            if (t == tail) break;
        }
    }
    v.kind = CyclicVerdict::Kind::Unknown;
    return v;
}

namespace detail {

/// Positive divisors of |x| by trial division; loud failure when the
/// cofactor cannot be fully factored within the step budget.
inline std::vector<BigInt> positive_divisors(BigInt x, std::uint64_t step_cap = 10000000) {
    if (x < 0) x = -x;
    if (x == 0) return {};
    std::vector<std::pair<BigInt, unsigned>> factors;
    BigInt d = 2;
    std::uint64_t steps = 0;
    while (d * d <= x) {
        if (++steps > step_cap)
            throw cap_exceeded("integer factorization budget exceeded in eigenvalue search");
        if (x % d == 0) {
            unsigned e = 0;
            while (x % d == 0) {
                x /= d;
                ++e;
            }
            factors.emplace_back(d, e);
        }
        ++d;
    }
    if (x > 1) factors.emplace_back(x, 1);
    std::vector<BigInt> divs{1};
    for (auto& [prime, exp] : factors) {
        const std::size_t base = divs.size();
        BigInt pw = 1;
        for (unsigned e = 1; e <= exp; ++e) {
            pw *= prime;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pw);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

/// Eigenvalue candidates of a square matrix: every residue over GF(p);
/// over Q the rational roots of the characteristic polynomial of the
/// denominator-cleared matrix, rescaled back.
inline std::vector<Scalar> eigenvalue_candidates(const Matrix& m) {
    std::vector<Scalar> out;
    if (m.field.is_prime_field()) {
        for (std::uint32_t r = 0; r < m.field.p; ++r) out.push_back(Scalar::residue(m.field, r));
        return out;
    }
    BigInt denom = 1;
    for (const auto& s : m.a)
        denom = boost::multiprecision::lcm(denom, boost::multiprecision::denominator(s.rational_value()));
    Matrix scaled = m;
    const Scalar dscale = Scalar::rational(denom);
    for (auto& s : scaled.a) s *= dscale;
    auto cp = characteristic_polynomial(scaled); // monic, integer coefficients
    std::size_t shift = 0;
    while (shift < cp.size() - 1 && cp[shift].is_zero()) ++shift;
    if (shift > 0) out.push_back(Scalar::zero(m.field));
    const BigInt c0 = boost::multiprecision::numerator(cp[shift].rational_value());
    for (const BigInt& d : positive_divisors(c0)) {
        out.push_back(Scalar::rational(d, denom));
        out.push_back(Scalar::rational(-d, denom));
    }
    return out;
}

/// First one-dimensional two-sided ideal, by refining common-eigenvector
/// candidate subspaces through all right and left multiplication operators.
inline std::optional<Vec> find_one_dimensional_ideal(const StructureTable& L) {
    const std::size_t n = L.dim();
    if (n == 0) return std::nullopt;
    std::vector<Matrix> ops;
    for (std::size_t i = 0; i < n; ++i) {
        ops.push_back(right_mult_matrix(L, unit_vec(L.field(), n, i)));
        ops.push_back(left_mult_matrix(L, unit_vec(L.field(), n, i)));
    }
    std::vector<Subspace> candidates{L.full_subspace()};
    for (const Matrix& op : ops) {
        std::vector<Subspace> next;
        std::vector<Scalar> lambdas = eigenvalue_candidates(op);
        for (const Scalar& lam : lambdas) {
            Matrix shifted = op;
            for (std::size_t i = 0; i < n; ++i) shifted.at(i, i) -= lam;
            const Subspace eig = Subspace::from_rref(L.field(), kernel_basis(shifted));
            if (eig.is_zero()) continue;
            for (const Subspace& w : candidates) {
                Subspace refined = w.intersect(eig);
                if (!refined.is_zero()) next.push_back(std::move(refined));
            }
        }
        candidates = std::move(next);
        if (candidates.empty()) return std::nullopt;
    }
    std::sort(candidates.begin(), candidates.end());
    return candidates.front().basis_vector(0);
}

} // namespace detail

struct SupersolvableResult {
    bool supersolvable = false;
    std::vector<Subspace> chain; // ideals of L with dims 0, 1, ..., n
};

/// Complete-flag test: a chain of ideals of L with one ideal per dimension,
/// built by repeatedly splitting off a one-dimensional ideal of the current
/// quotient.  If L is supersolvable, any choice of one-dimensional ideal
/// works, so no backtracking is required.
inline SupersolvableResult is_supersolvable(const StructureTable& L) {
    SupersolvableResult res;
    res.chain.push_back(L.zero_subspace());
    if (L.dim() == 0) {
        res.supersolvable = true;
        return res;
    }
    if (!is_solvable(L)) return res; // supersolvable implies solvable
    StructureTable cur = L;
    // lifts[k] maps current-quotient coordinates back to L coordinates
    Matrix lift = Matrix::identity(L.field(), L.dim());
    Subspace accumulated = L.zero_subspace();
    while (cur.dim() > 0) {
        const auto w = detail::find_one_dimensional_ideal(cur);
        if (!w) return res;
        // pull the new ideal back to L and extend the chain
        Vec w_in_L = lift.apply(*w);
        std::vector<Vec> gens = accumulated.basis().row_list();
        gens.push_back(std::move(w_in_L));
        accumulated = Subspace::span(L.field(), L.dim(), gens);
        res.chain.push_back(accumulated);
        const auto q = quotient_algebra(cur, Subspace::span(cur.field(), cur.dim(), {*w}));
        // new lift: embed quotient coordinates at the complement positions,
        // then apply the previous lift
        Matrix embed(L.field(), cur.dim(), q.algebra.dim());
        for (std::size_t t = 0; t < q.complement.size(); ++t)
            embed.at(q.complement[t], t) = Scalar::one(L.field());
        lift = lift.mul(embed);
        cur = q.algebra;
    }
    res.supersolvable = true;
    return res;
}

/// Simplicity per the Leibniz definition: the only ideals are 0, I and L,
/// and L^2 != I.  Needs exact ideal enumeration, hence GF(p).
inline bool is_simple(const SubalgebraLattice& lat) {
    const StructureTable& L = lat.algebra();
    const Subspace I = leibniz_kernel(L);
    for (int i : ideal_node_indices(lat)) {
        const Subspace& J = lat.node(static_cast<std::size_t>(i));
        if (!(J.is_zero() || J.is_full() || J == I)) return false;
    }
    return !(product_space(L, L.full_subspace(), L.full_subspace()) == I);
}

inline bool is_simple(const StructureTable& L, const Caps& caps = {}) {
    if (!L.field().is_prime_field())
        throw requires_finite_field("simplicity test needs exact ideal enumeration over GF(p)");
    return is_simple(build_subalgebra_lattice(L, caps));
}

/// Semisimple iff R(L) = I.
inline bool is_semisimple(const SubalgebraLattice& lat) {
    return radical(lat) == leibniz_kernel(lat.algebra());
}

inline bool is_semisimple(const StructureTable& L, const Caps& caps = {}) {
    if (!L.field().is_prime_field()) throw requires_finite_field("semisimplicity test needs GF(p)");
    return is_semisimple(build_subalgebra_lattice(L, caps));
}

enum class QuasiAbelianClass : std::uint8_t { Abelian, AlmostAbelian, Neither };

inline std::string quasi_abelian_name(QuasiAbelianClass c) {
    switch (c) {
        case QuasiAbelianClass::Abelian: return "abelian";
        case QuasiAbelianClass::AlmostAbelian: return "almost_abelian";
        default: return "neither";
    }
}

/// Structural quasi-abelian classification of Lie algebras: abelian, or a
/// split extension L = L^2 + Fa with abelian L^2 and right multiplication by
/// a restricting to the identity on L^2.  Non-Lie tables are Neither.
inline QuasiAbelianClass quasi_abelian_class(const StructureTable& L) {
    if (!is_lie(L)) return QuasiAbelianClass::Neither;
    const std::size_t n = L.dim();
    const Subspace lsq = product_space(L, L.full_subspace(), L.full_subspace());
    if (lsq.is_zero()) return QuasiAbelianClass::Abelian;
    if (lsq.dim() != n - 1) return QuasiAbelianClass::Neither;
    if (!product_space(L, lsq, lsq).is_zero()) return QuasiAbelianClass::Neither;
    // solve [u_r, a] = u_r for a
    const std::size_t m = lsq.dim();
    Matrix sys(L.field(), m * n, n + 1); // augmented
    for (std::size_t r = 0; r < m; ++r) {
        const Vec u = lsq.basis_vector(r);
        for (std::size_t coord = 0; coord < n; ++coord) {
            for (std::size_t k = 0; k < n; ++k)
                sys.at(r * n + coord, k) = L.bracket(u, unit_vec(L.field(), n, k))[coord];
            sys.at(r * n + coord, n) = u[coord];
        }
    }
    const RrefResult rr = rref(sys);
    for (std::size_t row = 0; row < rr.rank; ++row)
        if (rr.pivots[row] == n) return QuasiAbelianClass::Neither; // inconsistent system
    return QuasiAbelianClass::AlmostAbelian;
}

/// Everything the paper names about one algebra, in one record.  The
/// lattice-dependent entries require GF(p) and stay empty over Q.
struct StructureProfile {
    Subspace kernel;
    Subspace centre_space;
    SeriesResult lower_central;
    SeriesResult derived;
    std::optional<Subspace> frattini;
    std::optional<Subspace> nilradical_space;
    std::optional<Subspace> radical_space;
    std::optional<std::vector<Subspace>> minimal_ideal_list;
    std::optional<std::size_t> maximal_subalgebra_count;
    bool lie = false;
    bool nilpotent = false;
    bool solvable = false;
    bool supersolvable = false;
    CyclicVerdict cyclic;
    std::optional<bool> simple;
    std::optional<bool> semisimple;
    QuasiAbelianClass quasi_abelian = QuasiAbelianClass::Neither;
};

inline StructureProfile profile(const StructureTable& L, const Caps& caps = {}) {
    StructureProfile p;
    p.kernel = leibniz_kernel(L);
    p.centre_space = centre(L);
    p.lower_central = series(L, SeriesKind::LowerCentral);
    p.derived = series(L, SeriesKind::Derived);
    p.lie = is_lie(L);
    p.nilpotent = p.lower_central.class_or_length.has_value();
    p.solvable = p.derived.class_or_length.has_value();
    p.supersolvable = is_supersolvable(L).supersolvable;
    p.cyclic = is_cyclic(L, caps);
    p.quasi_abelian = quasi_abelian_class(L);
    if (L.field().is_prime_field()) {
        const auto lat = build_subalgebra_lattice(L, caps);
        p.frattini = frattini_ideal(lat);
        p.nilradical_space = nilradical(lat);
        p.radical_space = radical(lat);
        p.minimal_ideal_list = minimal_ideals(lat);
        p.maximal_subalgebra_count = lat.coatoms().size();
        p.simple = is_simple(lat);
        p.semisimple = is_semisimple(lat);
    }
    return p;
}

} // namespace lbz
