#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "lbz/algebra.hpp"
#include "lbz/caps.hpp"

namespace lbz {

/// Gaussian binomial coefficient [n choose k]_p: the number of k-dimensional
/// subspaces of F_p^n.
inline BigInt gaussian_binomial(std::size_t n, std::size_t k, std::uint32_t p) {
    if (k > n) return 0;
    BigInt num = 1, den = 1;
    for (std::size_t i = 0; i < k; ++i) {
        num *= boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(n - i)) - 1;
        den *= boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(i + 1)) - 1;
    }
    return num / den;
}

inline BigInt total_subspaces(std::size_t n, std::uint32_t p) {
    BigInt t = 0;
    for (std::size_t k = 0; k <= n; ++k) t += gaussian_binomial(n, k, p);
    return t;
}

/// Every subspace of F_p^n exactly once, as canonical rref matrices in
/// (dim, lex) order.  Enumerates by pivot pattern plus free entries; the
/// count agrees with the Gaussian binomial sum by construction.
inline std::vector<Subspace> enumerate_subspaces(std::size_t n, std::uint32_t p, const Caps& caps = {}) {
    if (n > caps.max_dim)
        throw cap_exceeded("subspace enumeration dimension " + std::to_string(n) + " exceeds cap " +
                           std::to_string(caps.max_dim) + " (projected count " +
                           total_subspaces(n, p).str() + ")");
    if (p > caps.max_p)
        throw cap_exceeded("subspace enumeration modulus " + std::to_string(p) + " exceeds cap " +
                           std::to_string(caps.max_p) + " (projected count " +
                           total_subspaces(n, p).str() + ")");
    const FieldSpec f = FieldSpec::gf(p);
    std::vector<Subspace> out;
    out.push_back(Subspace::zero(f, n));
    for (std::size_t d = 1; d <= n; ++d) {
        std::vector<Subspace> level;
        std::vector<std::size_t> piv(d);
        for (std::size_t i = 0; i < d; ++i) piv[i] = i;
        auto next_pattern = [&]() -> bool {
            std::size_t i = d;
            while (i-- > 0) {
                if (piv[i] != i + n - d) {
                    ++piv[i];
                    for (std::size_t j = i + 1; j < d; ++j) piv[j] = piv[j - 1] + 1;
                    return true;
                }
            }
            return false;
        };
        do {
            std::vector<bool> is_piv(n, false);
            for (std::size_t c : piv) is_piv[c] = true;
            std::vector<std::pair<std::size_t, std::size_t>> free_pos;
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = piv[r] + 1; c < n; ++c)
                    if (!is_piv[c]) free_pos.emplace_back(r, c);
            std::vector<std::uint32_t> vals(free_pos.size(), 0);
            for (;;) {
                Matrix m(f, d, n);
                for (std::size_t r = 0; r < d; ++r) m.at(r, piv[r]) = Scalar::one(f);
                for (std::size_t t = 0; t < free_pos.size(); ++t)
                    m.at(free_pos[t].first, free_pos[t].second) = Scalar::residue(f, vals[t]);
                level.push_back(Subspace::from_rref(f, std::move(m)));
                std::size_t t = 0;
                while (t < vals.size() && ++vals[t] == p) vals[t++] = 0;
                if (t == vals.size()) break;
            }
        } while (next_pattern());
        std::sort(level.begin(), level.end());
        for (auto& s : level) out.push_back(std::move(s));
    }
    return out;
}

struct NodeMeta {
    std::size_t dim = 0;
    bool is_ideal = false;
};

/// Isomorphism-invariant summary of the abstract lattice; equal fingerprints
/// are necessary (not sufficient) for lattice isomorphism.
struct LatticeFingerprint {
    std::size_t node_count = 0;
    std::vector<std::size_t> level_profile;                    // node count per height
    std::vector<std::pair<std::size_t, std::size_t>> degrees;  // sorted (up, down) cover degrees
    std::size_t atom_count = 0;
    std::size_t coatom_count = 0;
    bool modular = false;
    bool distributive = false;

    friend bool operator==(const LatticeFingerprint&, const LatticeFingerprint&) = default;
    friend auto operator<=>(const LatticeFingerprint&, const LatticeFingerprint&) = default;

    std::string str() const {
        std::string s = "nodes=" + std::to_string(node_count) + " levels=[";
        for (std::size_t i = 0; i < level_profile.size(); ++i)
            s += (i ? "," : "") + std::to_string(level_profile[i]);
        s += "] atoms=" + std::to_string(atom_count) + " coatoms=" + std::to_string(coatom_count);
        s += std::string(" modular=") + (modular ? "yes" : "no");
        s += std::string(" distributive=") + (distributive ? "yes" : "no");
        s += " degseq=[";
        for (std::size_t i = 0; i < degrees.size(); ++i)
            s += (i ? " " : "") + std::to_string(degrees[i].first) + ":" + std::to_string(degrees[i].second);
        s += "]";
        return s;
    }
};

/// The full subalgebra lattice of an algebra over GF(p): canonically sorted
/// nodes (0 first, L last), transitively reduced cover relation, and
/// order-theoretic meet/join answered from containment bitsets.
class SubalgebraLattice {
public:
    const StructureTable& algebra() const { return algebra_; }
    std::size_t size() const { return nodes_.size(); }
    const std::vector<Subspace>& nodes() const { return nodes_; }
    const Subspace& node(std::size_t i) const { return nodes_[i]; }
    const NodeMeta& meta(std::size_t i) const { return meta_[i]; }
    const std::vector<std::pair<int, int>>& covers() const { return covers_; }
    const std::vector<std::vector<int>>& up_adjacency() const { return up_; }
    const std::vector<std::vector<int>>& down_adjacency() const { return down_; }
    int bottom() const { return 0; }
    int top() const { return static_cast<int>(nodes_.size()) - 1; }

    int index_of(const Subspace& s) const {
        auto it = index_.find(s.key());
        return it == index_.end() ? -1 : it->second;
    }

    bool leq(int i, int j) const { return get_bit(below_[static_cast<std::size_t>(j)], i); }
    bool covered_by(int i, int j) const { return get_bit(cover_bits_[static_cast<std::size_t>(j)], i); }

    /// Meet = greatest lower bound: the highest-index common lower bound
    /// (node order is dimension-major, so the glb sits last).
    int meet(int i, int j) const {
        const auto& a = below_[static_cast<std::size_t>(i)];
        const auto& b = below_[static_cast<std::size_t>(j)];
        for (std::size_t w = a.size(); w-- > 0;) {
            const std::uint64_t x = a[w] & b[w];
            if (x) return static_cast<int>(w * 64 + 63 - static_cast<std::size_t>(__builtin_clzll(x)));
        }
        throw error("lattice meet: no common lower bound");
    }

    /// Join = least upper bound: the lowest-index common upper bound.
    int join(int i, int j) const {
        const auto& a = above_[static_cast<std::size_t>(i)];
        const auto& b = above_[static_cast<std::size_t>(j)];
        for (std::size_t w = 0; w < a.size(); ++w) {
            const std::uint64_t x = a[w] & b[w];
            if (x) return static_cast<int>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(x)));
        }
        throw error("lattice join: no common upper bound");
    }

    std::size_t height(int i) const { return heights_[static_cast<std::size_t>(i)]; }

    std::vector<int> atoms() const { return up_.empty() ? std::vector<int>{} : up_[0]; }
    std::vector<int> coatoms() const { return down_.empty() ? std::vector<int>{} : down_.back(); }

    /// Shortest and longest maximal chain (edge counts from bottom to top).
    std::pair<std::size_t, std::size_t> maximal_chain_lengths() const {
        const std::size_t n = size();
        if (n <= 1) return {0, 0};
        std::vector<std::size_t> lo(n, 0), hi(n, 0);
        for (std::size_t v = 1; v < n; ++v) {
            std::size_t mn = SIZE_MAX, mx = 0;
            for (int u : down_[v]) {
                mn = std::min(mn, lo[static_cast<std::size_t>(u)] + 1);
                mx = std::max(mx, hi[static_cast<std::size_t>(u)] + 1);
            }
            lo[v] = mn == SIZE_MAX ? 0 : mn;
            hi[v] = mx;
        }
        return {lo[n - 1], hi[n - 1]};
    }

    /// Upper semimodular subalgebra u: whenever meet(u,B) is maximal in B,
    /// u is maximal in join(u,B).
    bool is_upper_semimodular_element(int u) const {
        for (int b = 0; b < static_cast<int>(size()); ++b)
            if (covered_by(meet(u, b), b) && !covered_by(u, join(u, b))) return false;
        return true;
    }

    /// Lower semimodular subalgebra u: whenever u is maximal in join(u,B),
    /// meet(u,B) is maximal in B.
    bool is_lower_semimodular_element(int u) const {
        for (int b = 0; b < static_cast<int>(size()); ++b)
            if (covered_by(u, join(u, b)) && !covered_by(meet(u, b), b)) return false;
        return true;
    }

    bool is_lower_semimodular() const {
        for (int u = 0; u < static_cast<int>(size()); ++u)
            if (!is_lower_semimodular_element(u)) return false;
        return true;
    }

    /// Birkhoff cover condition: meet(a,b) covered by a implies b covered by
    /// join(a,b).
    bool lattice_upper_semimodular() const {
        for (int a = 0; a < static_cast<int>(size()); ++a)
            for (int b = a + 1; b < static_cast<int>(size()); ++b)
                if (covered_by(meet(a, b), a) && !covered_by(b, join(a, b))) return false;
        return true;
    }

    bool lattice_lower_semimodular() const {
        for (int a = 0; a < static_cast<int>(size()); ++a)
            for (int b = a + 1; b < static_cast<int>(size()); ++b)
                if (covered_by(a, join(a, b)) && !covered_by(meet(a, b), b)) return false;
        return true;
    }

    const LatticeFingerprint& fingerprint() const { return fingerprint_; }

    friend SubalgebraLattice build_subalgebra_lattice(const StructureTable& L, const Caps& caps);

private:
    static bool get_bit(const std::vector<std::uint64_t>& bits, int i) {
        return (bits[static_cast<std::size_t>(i) >> 6] >> (static_cast<std::size_t>(i) & 63)) & 1u;
    }
    static void set_bit(std::vector<std::uint64_t>& bits, int i) {
        bits[static_cast<std::size_t>(i) >> 6] |= std::uint64_t(1) << (static_cast<std::size_t>(i) & 63);
    }

    StructureTable algebra_;
    std::vector<Subspace> nodes_;
    std::vector<NodeMeta> meta_;
    std::vector<std::pair<int, int>> covers_;
    std::vector<std::vector<int>> up_, down_;
    std::vector<std::vector<std::uint64_t>> below_; // below_[j] = bitset of {i : i <= j}, incl. j
    std::vector<std::vector<std::uint64_t>> above_; // above_[i] = bitset of {j : i <= j}, incl. i
    std::vector<std::vector<std::uint64_t>> cover_bits_;
    std::vector<std::size_t> heights_;
    std::map<std::string, int> index_;
    LatticeFingerprint fingerprint_;
};

inline SubalgebraLattice build_subalgebra_lattice(const StructureTable& L, const Caps& caps = {}) {
    if (!L.field().is_prime_field())
        throw requires_finite_field("subalgebra lattice enumeration needs GF(p)");
    const BigInt projected = total_subspaces(L.dim(), L.field().p);
    if (projected > caps.max_lattice_nodes)
        throw cap_exceeded("projected node count " + projected.str() + " exceeds cap " +
                           std::to_string(caps.max_lattice_nodes));
    SubalgebraLattice lat;
    lat.algebra_ = L;
    const std::size_t n = L.dim();
    const std::uint32_t p = L.field().p;

    for (auto& s : enumerate_subspaces(n, p, caps)) {
        bool closed = true;
        for (std::size_t r = 0; r < s.dim() && closed; ++r)
            for (std::size_t c = 0; c < s.dim() && closed; ++c)
                if (!s.contains(L.bracket(s.basis_vector(r), s.basis_vector(c)))) closed = false;
        if (closed) lat.nodes_.push_back(std::move(s));
    }
    const std::size_t N = lat.nodes_.size();
    lat.meta_.reserve(N);
    for (std::size_t i = 0; i < N; ++i) {
        lat.index_[lat.nodes_[i].key()] = static_cast<int>(i);
        lat.meta_.push_back(NodeMeta{lat.nodes_[i].dim(),
                                     classify_subspace(L, lat.nodes_[i]) == SubspaceClass::Ideal});
    }

    // element-set masks accelerate containment when |F_p^n| <= 64
    std::uint64_t space_size = 1;
    for (std::size_t i = 0; i < n && space_size <= 64; ++i) space_size *= p;
    const bool use_masks = space_size <= 64;
    std::vector<std::uint64_t> masks;
    if (use_masks) {
        masks.assign(N, 0);
        const FieldSpec f = L.field();
        for (std::size_t i = 0; i < N; ++i) {
            const Subspace& s = lat.nodes_[i];
            const std::size_t d = s.dim();
            std::vector<std::uint32_t> digits(d, 0);
            for (;;) {
                Vec v = zero_vec(f, n);
                for (std::size_t r = 0; r < d; ++r)
                    if (digits[r]) v = vec_add(v, vec_scale(Scalar::residue(f, digits[r]), s.basis_vector(r)));
                std::uint64_t idx = 0;
                for (std::size_t c = n; c-- > 0;) idx = idx * p + v[c].residue_value();
                masks[i] |= std::uint64_t(1) << idx;
                std::size_t t = 0;
                while (t < d && ++digits[t] == p) digits[t++] = 0;
                if (t == d) break;
            }
        }
    }
    auto contains_node = [&](std::size_t big, std::size_t small) {
        if (use_masks) return (masks[big] & masks[small]) == masks[small];
        return lat.nodes_[big].contains(lat.nodes_[small]);
    };

    const std::size_t words = (N + 63) / 64;
    lat.below_.assign(N, std::vector<std::uint64_t>(words, 0));
    lat.above_.assign(N, std::vector<std::uint64_t>(words, 0));
    for (std::size_t j = 0; j < N; ++j) {
        for (std::size_t i = 0; i < j; ++i)
            if (lat.meta_[i].dim < lat.meta_[j].dim && contains_node(j, i)) {
                SubalgebraLattice::set_bit(lat.below_[j], static_cast<int>(i));
                SubalgebraLattice::set_bit(lat.above_[i], static_cast<int>(j));
            }
        SubalgebraLattice::set_bit(lat.below_[j], static_cast<int>(j));
        SubalgebraLattice::set_bit(lat.above_[j], static_cast<int>(j));
    }

    // covers: i < j with no k strictly between; transitive reduction by
    // checking emptiness of strict_below(j) ∩ strict_above(i)
    lat.cover_bits_.assign(N, std::vector<std::uint64_t>(words, 0));
    lat.up_.assign(N, {});
    lat.down_.assign(N, {});
    for (std::size_t j = 0; j < N; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            if (!SubalgebraLattice::get_bit(lat.below_[j], static_cast<int>(i))) continue;
            bool is_cover = true;
            for (std::size_t w = 0; w < words && is_cover; ++w) {
                std::uint64_t x = lat.below_[j][w] & lat.above_[i][w];
                if (w == (i >> 6)) x &= ~(std::uint64_t(1) << (i & 63));
                if (w == (j >> 6)) x &= ~(std::uint64_t(1) << (j & 63));
                if (x) is_cover = false;
            }
            if (is_cover) {
                lat.covers_.emplace_back(static_cast<int>(i), static_cast<int>(j));
                SubalgebraLattice::set_bit(lat.cover_bits_[j], static_cast<int>(i));
                lat.up_[i].push_back(static_cast<int>(j));
                lat.down_[j].push_back(static_cast<int>(i));
            }
        }

    lat.heights_.assign(N, 0);
    for (std::size_t v = 0; v < N; ++v)
        for (int u : lat.down_[v])
            lat.heights_[v] = std::max(lat.heights_[v], lat.heights_[static_cast<std::size_t>(u)] + 1);

    LatticeFingerprint& fp = lat.fingerprint_;
    fp.node_count = N;
    const std::size_t max_h = N ? *std::max_element(lat.heights_.begin(), lat.heights_.end()) : 0;
    fp.level_profile.assign(max_h + 1, 0);
    for (std::size_t v = 0; v < N; ++v) fp.level_profile[lat.heights_[v]]++;
    for (std::size_t v = 0; v < N; ++v) fp.degrees.emplace_back(lat.up_[v].size(), lat.down_[v].size());
    std::sort(fp.degrees.begin(), fp.degrees.end());
    fp.atom_count = lat.atoms().size();
    fp.coatom_count = lat.coatoms().size();
    const bool usm = lat.lattice_upper_semimodular();
    const bool lsm = lat.lattice_lower_semimodular();
    fp.modular = usm && lsm; // finite lattices: modular iff both semimodular
    fp.distributive = false;
    if (fp.modular) {
        // a modular lattice is distributive iff it contains no M3
        bool found_m3 = false;
        for (std::size_t x = 0; x < N && !found_m3; ++x)
            for (std::size_t y = x + 1; y < N && !found_m3; ++y) {
                const int m = lat.meet(static_cast<int>(x), static_cast<int>(y));
                const int u = lat.join(static_cast<int>(x), static_cast<int>(y));
                if (m == static_cast<int>(x) || m == static_cast<int>(y)) continue;
                for (std::size_t z = y + 1; z < N && !found_m3; ++z)
                    if (lat.meet(static_cast<int>(x), static_cast<int>(z)) == m &&
                        lat.meet(static_cast<int>(y), static_cast<int>(z)) == m &&
                        lat.join(static_cast<int>(x), static_cast<int>(z)) == u &&
                        lat.join(static_cast<int>(y), static_cast<int>(z)) == u)
                        found_m3 = true;
            }
        fp.distributive = !found_m3;
    }
    return lat;
}

/// A bijection between two lattices' node sets preserving joins and meets;
/// verified exhaustively on all node pairs at construction.
class LatticeMap {
public:
    LatticeMap(const SubalgebraLattice& src, const SubalgebraLattice& dst, std::vector<int> fwd)
        : source_(&src), target_(&dst), fwd_(std::move(fwd)) {
        const std::size_t n = src.size();
        if (fwd_.size() != n || dst.size() != n) throw bad_params("lattice map size mismatch");
        std::vector<bool> seen(n, false);
        for (int v : fwd_) {
            if (v < 0 || v >= static_cast<int>(n) || seen[static_cast<std::size_t>(v)])
                throw bad_params("lattice map is not a bijection");
            seen[static_cast<std::size_t>(v)] = true;
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const int a = static_cast<int>(i), b = static_cast<int>(j);
                if (fwd_[static_cast<std::size_t>(src.join(a, b))] != dst.join(fwd_[i], fwd_[j]))
                    throw bad_params("map does not preserve joins");
                if (fwd_[static_cast<std::size_t>(src.meet(a, b))] != dst.meet(fwd_[i], fwd_[j]))
                    throw bad_params("map does not preserve meets");
            }
    }

    const SubalgebraLattice& source() const { return *source_; }
    const SubalgebraLattice& target() const { return *target_; }
    const std::vector<int>& forward() const { return fwd_; }
    int apply(int i) const { return fwd_[static_cast<std::size_t>(i)]; }

    LatticeMap inverse() const {
        std::vector<int> inv(fwd_.size(), 0);
        for (std::size_t i = 0; i < fwd_.size(); ++i)
            inv[static_cast<std::size_t>(fwd_[i])] = static_cast<int>(i);
        return LatticeMap(*target_, *source_, std::move(inv));
    }

    bool is_identity() const {
        for (std::size_t i = 0; i < fwd_.size(); ++i)
            if (fwd_[i] != static_cast<int>(i)) return false;
        return true;
    }

private:
    const SubalgebraLattice* source_;
    const SubalgebraLattice* target_;
    std::vector<int> fwd_;
};

namespace detail {

/// Color refinement + backtracking on the Hasse diagrams.  A cover-preserving
/// bijection is an order isomorphism, hence preserves joins and meets; each
/// found map is still re-verified by the LatticeMap constructor.
class LatticeIsoEngine {
public:
    LatticeIsoEngine(const SubalgebraLattice& a, const SubalgebraLattice& b, const Caps& caps)
        : a_(a), b_(b), caps_(caps) {}

    /// Collects isomorphisms a -> b.  With stop_at_limit the search halts
    /// quietly once `limit` maps are found; otherwise exceeding `limit`
    /// raises cap_exceeded.
    std::vector<LatticeMap> run(std::size_t limit, bool stop_at_limit) {
        maps_.clear();
        const std::size_t n = a_.size();
        if (b_.size() != n || n == 0) return {};
        limit_ = limit;
        stop_at_limit_ = stop_at_limit;
        done_ = false;
        if (!refine_colors()) return {};
        order_vertices();
        assign_.assign(n, -1);
        used_.assign(n, false);
        pre_.assign(n, -1);
        backtrack(0);
        return std::move(maps_);
    }

private:
    bool refine_colors() {
        const std::size_t n = a_.size();
        using Init = std::tuple<std::size_t, std::size_t, std::size_t>;
        std::vector<Init> sig_a(n), sig_b(n);
        for (std::size_t v = 0; v < n; ++v) {
            sig_a[v] = {a_.height(static_cast<int>(v)), a_.up_adjacency()[v].size(),
                        a_.down_adjacency()[v].size()};
            sig_b[v] = {b_.height(static_cast<int>(v)), b_.up_adjacency()[v].size(),
                        b_.down_adjacency()[v].size()};
        }
        auto pool0 = sig_a;
        pool0.insert(pool0.end(), sig_b.begin(), sig_b.end());
        std::sort(pool0.begin(), pool0.end());
        pool0.erase(std::unique(pool0.begin(), pool0.end()), pool0.end());
        colors_a_.assign(n, 0);
        colors_b_.assign(n, 0);
        for (std::size_t v = 0; v < n; ++v) {
            colors_a_[v] = static_cast<int>(std::lower_bound(pool0.begin(), pool0.end(), sig_a[v]) - pool0.begin());
            colors_b_[v] = static_cast<int>(std::lower_bound(pool0.begin(), pool0.end(), sig_b[v]) - pool0.begin());
        }
        std::size_t color_count = pool0.size();
        for (;;) {
            using Sig = std::tuple<int, std::vector<int>, std::vector<int>>;
            auto signature = [](const SubalgebraLattice& lat, const std::vector<int>& col, std::size_t v) {
                std::vector<int> up, down;
                for (int u : lat.up_adjacency()[v]) up.push_back(col[static_cast<std::size_t>(u)]);
                for (int u : lat.down_adjacency()[v]) down.push_back(col[static_cast<std::size_t>(u)]);
                std::sort(up.begin(), up.end());
                std::sort(down.begin(), down.end());
                return Sig{col[v], std::move(up), std::move(down)};
            };
            std::vector<Sig> sa(n), sb(n);
            for (std::size_t v = 0; v < n; ++v) {
                sa[v] = signature(a_, colors_a_, v);
                sb[v] = signature(b_, colors_b_, v);
            }
            std::vector<Sig> pool = sa;
            pool.insert(pool.end(), sb.begin(), sb.end());
            std::sort(pool.begin(), pool.end());
            pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
            for (std::size_t v = 0; v < n; ++v) {
                colors_a_[v] = static_cast<int>(std::lower_bound(pool.begin(), pool.end(), sa[v]) - pool.begin());
                colors_b_[v] = static_cast<int>(std::lower_bound(pool.begin(), pool.end(), sb[v]) - pool.begin());
            }
            if (pool.size() == color_count) break;
            color_count = pool.size();
        }
        std::map<int, long> balance;
        for (int c : colors_a_) balance[c]++;
        for (int c : colors_b_) balance[c]--;
        for (auto& [c, d] : balance)
            if (d != 0) return false;
        return true;
    }

    void order_vertices() {
        const std::size_t n = a_.size();
        std::map<int, std::size_t> class_size;
        for (int c : colors_a_) class_size[c]++;
        order_.resize(n);
        for (std::size_t v = 0; v < n; ++v) order_[v] = static_cast<int>(v);
        std::stable_sort(order_.begin(), order_.end(), [&](int x, int y) {
            const auto sx = class_size[colors_a_[static_cast<std::size_t>(x)]];
            const auto sy = class_size[colors_a_[static_cast<std::size_t>(y)]];
            if (sx != sy) return sx < sy;
            return x < y;
        });
    }

    bool consistent(int v, int cand) const {
        for (int u : a_.up_adjacency()[static_cast<std::size_t>(v)]) {
            const int m = assign_[static_cast<std::size_t>(u)];
            if (m >= 0 && !b_.covered_by(cand, m)) return false;
        }
        for (int u : a_.down_adjacency()[static_cast<std::size_t>(v)]) {
            const int m = assign_[static_cast<std::size_t>(u)];
            if (m >= 0 && !b_.covered_by(m, cand)) return false;
        }
        for (int u : b_.up_adjacency()[static_cast<std::size_t>(cand)]) {
            const int pre = pre_[static_cast<std::size_t>(u)];
            if (pre >= 0 && !a_.covered_by(v, pre)) return false;
        }
        for (int u : b_.down_adjacency()[static_cast<std::size_t>(cand)]) {
            const int pre = pre_[static_cast<std::size_t>(u)];
            if (pre >= 0 && !a_.covered_by(pre, v)) return false;
        }
        return true;
    }

    void backtrack(std::size_t pos) {
        if (done_) return;
        const std::size_t n = a_.size();
        if (pos == n) {
            if (maps_.size() >= limit_) {
                if (stop_at_limit_) {
                    done_ = true;
                    return;
                }
                throw cap_exceeded("lattice map enumeration exceeded cap of " + std::to_string(limit_));
            }
            maps_.emplace_back(a_, b_, assign_); // verifies joins/meets
            if (maps_.size() >= limit_ && stop_at_limit_) done_ = true;
            return;
        }
        const int v = order_[pos];
        for (int cand = 0; cand < static_cast<int>(n) && !done_; ++cand) {
            if (used_[static_cast<std::size_t>(cand)]) continue;
            if (colors_b_[static_cast<std::size_t>(cand)] != colors_a_[static_cast<std::size_t>(v)]) continue;
            if (!consistent(v, cand)) continue;
            assign_[static_cast<std::size_t>(v)] = cand;
            used_[static_cast<std::size_t>(cand)] = true;
            pre_[static_cast<std::size_t>(cand)] = v;
            backtrack(pos + 1);
            assign_[static_cast<std::size_t>(v)] = -1;
            used_[static_cast<std::size_t>(cand)] = false;
            pre_[static_cast<std::size_t>(cand)] = -1;
        }
    }

    const SubalgebraLattice& a_;
    const SubalgebraLattice& b_;
    Caps caps_;
    std::vector<int> colors_a_, colors_b_, order_, assign_, pre_;
    std::vector<bool> used_;
    std::size_t limit_ = 0;
    bool stop_at_limit_ = true;
    bool done_ = false;
    std::vector<LatticeMap> maps_;
};

} // namespace detail

/// First lattice isomorphism found, or nothing when none exists.
inline std::optional<LatticeMap> lattice_isomorphism(const SubalgebraLattice& a, const SubalgebraLattice& b,
                                                     const Caps& caps = {}) {
    if (a.size() != b.size() || a.size() == 0) return std::nullopt;
    detail::LatticeIsoEngine engine(a, b, caps);
    auto maps = engine.run(1, true);
    if (maps.empty()) return std::nullopt;
    return std::move(maps.front());
}

/// All join/meet preserving bijections a -> b, in deterministic order.
inline std::vector<LatticeMap> lattice_isomorphisms(const SubalgebraLattice& a, const SubalgebraLattice& b,
                                                    const Caps& caps = {}) {
    if (a.size() != b.size() || a.size() == 0) return {};
    if (a.size() > caps.max_lattice_nodes)
        throw cap_exceeded("lattice too large for exhaustive map enumeration");
    detail::LatticeIsoEngine engine(a, b, caps);
    return engine.run(caps.max_maps, false);
}

inline std::vector<LatticeMap> lattice_automorphisms(const SubalgebraLattice& lat, const Caps& caps = {}) {
    return lattice_isomorphisms(lat, lat, caps);
}

} // namespace lbz
