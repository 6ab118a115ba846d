#include <catch2/catch_amalgamated.hpp>

#include "lbz/families.hpp"
#include "lbz/lattice.hpp"

using namespace lbz;

namespace {

Vec coords(const FieldSpec& f, std::vector<long long> vals) {
    Vec v;
    for (long long x : vals) v.push_back(Scalar::of_int(f, x));
    return v;
}

} // namespace

TEST_CASE("subspace enumeration counts match Gaussian binomials") {
    CHECK(enumerate_subspaces(2, 2).size() == 5);
    CHECK(enumerate_subspaces(3, 2).size() == 16); // 1 + 7 + 7 + 1
    CHECK(enumerate_subspaces(2, 3).size() == 6);  // 1 + 4 + 1
    CHECK(enumerate_subspaces(0, 5).size() == 1);
    for (std::uint32_t p : {2u, 3u, 5u})
        for (std::size_t n = 0; n <= 4; ++n) {
            if (total_subspaces(n, p) > 5000) continue;
            const auto all = enumerate_subspaces(n, p);
            CHECK(BigInt(all.size()) == total_subspaces(n, p));
            // pairwise distinct and sorted in (dim, lex) order
            for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1] < all[i]);
        }
}

TEST_CASE("subspace enumeration caps fail loudly") {
    Caps caps;
    caps.max_dim = 3;
    CHECK_THROWS_AS(enumerate_subspaces(4, 2, caps), cap_exceeded);
    caps = Caps{};
    caps.max_p = 3;
    CHECK_THROWS_AS(enumerate_subspaces(2, 5, caps), cap_exceeded);
    // the error message reports the projected node count
    CHECK_THROWS_MATCHES(build_subalgebra_lattice(families::abelian(5, FieldSpec::gf(5))), cap_exceeded,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("42176")));
}

TEST_CASE("diamond lattice has exactly the four nodes of Example 2.1") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        const auto f = FieldSpec::gf(p);
        const auto L = families::diamond(f);
        const auto lat = build_subalgebra_lattice(L);
        REQUIRE(lat.size() == 4);
        const Subspace fa = Subspace::span(f, 2, {coords(f, {1, 0})});
        const Subspace fba = Subspace::span(f, 2, {vec_sub(coords(f, {0, 1}), coords(f, {1, 0}))});
        CHECK(lat.node(0).is_zero());
        CHECK(lat.node(3).is_full());
        CHECK(lat.index_of(fa) >= 0);
        CHECK(lat.index_of(fba) >= 0);
        CHECK(lat.meta(static_cast<std::size_t>(lat.index_of(fa))).is_ideal);
        CHECK(!lat.meta(static_cast<std::size_t>(lat.index_of(fba))).is_ideal);
        CHECK(lat.maximal_chain_lengths() == std::make_pair(std::size_t{2}, std::size_t{2}));
    }
}

TEST_CASE("abelian lattices contain every subspace") {
    const auto lat2 = build_subalgebra_lattice(families::abelian(2, FieldSpec::gf(2)));
    CHECK(lat2.size() == 5);
    const auto lat3 = build_subalgebra_lattice(families::abelian(3, FieldSpec::gf(2)));
    CHECK(lat3.size() == 16);
    CHECK(lat2.maximal_chain_lengths() == std::make_pair(std::size_t{2}, std::size_t{2}));
}

TEST_CASE("nilpotent cyclic lattice over GF(3)") {
    const auto f = FieldSpec::gf(3);
    const auto L = families::cyclic_algebra(3, {Scalar::zero(f), Scalar::zero(f)}, f);
    const auto lat = build_subalgebra_lattice(L);
    // nodes: 0, the four lines of span{x2,x3}, span{x2,x3}, L
    CHECK(lat.size() == 7);
    const auto co = lat.coatoms();
    REQUIRE(co.size() == 1);
    const Subspace i2 = Subspace::span(f, 3, {coords(f, {0, 1, 0}), coords(f, {0, 0, 1})});
    CHECK(lat.node(static_cast<std::size_t>(co.front())) == i2);
    CHECK(lat.maximal_chain_lengths() == std::make_pair(std::size_t{3}, std::size_t{3}));
}

TEST_CASE("join and meet agree with subspace closure and intersection") {
    for (const auto& L : {families::diamond(FieldSpec::gf(3)), families::heisenberg(FieldSpec::gf(2)),
                          families::abelian(3, FieldSpec::gf(2))}) {
        const auto lat = build_subalgebra_lattice(L);
        for (int i = 0; i < static_cast<int>(lat.size()); ++i) {
            CHECK(lat.meet(i, 0) == 0);                           // bottom absorbs
            CHECK(lat.join(i, i) == i);                           // idempotent
            CHECK(lat.join(i, lat.top()) == lat.top());
            for (int j = 0; j < static_cast<int>(lat.size()); ++j) {
                const auto& u = lat.node(static_cast<std::size_t>(i));
                const auto& v = lat.node(static_cast<std::size_t>(j));
                CHECK(lat.node(static_cast<std::size_t>(lat.meet(i, j))) == u.intersect(v));
                std::vector<Vec> gens = u.basis().row_list();
                for (auto& r : v.basis().row_list()) gens.push_back(r);
                CHECK(lat.node(static_cast<std::size_t>(lat.join(i, j))) == generated_subalgebra(L, gens));
            }
        }
    }
}

TEST_CASE("diamond joins cross the lattice") {
    const auto f = FieldSpec::gf(5);
    const auto lat = build_subalgebra_lattice(families::diamond(f));
    const int fa = lat.index_of(Subspace::span(f, 2, {coords(f, {1, 0})}));
    const int fba = lat.index_of(Subspace::span(f, 2, {coords(f, {-1, 1})}));
    REQUIRE(fa >= 0);
    REQUIRE(fba >= 0);
    CHECK(lat.join(fa, fba) == lat.top());
    CHECK(lat.meet(fa, fba) == 0);
}

TEST_CASE("semimodularity predicates") {
    SECTION("graded abelian lattice is semimodular everywhere") {
        const auto lat = build_subalgebra_lattice(families::abelian(2, FieldSpec::gf(2)));
        for (int u = 0; u < static_cast<int>(lat.size()); ++u) {
            CHECK(lat.is_upper_semimodular_element(u));
            CHECK(lat.is_lower_semimodular_element(u));
        }
        CHECK(lat.is_lower_semimodular());
    }
    SECTION("chain lattice is lower semimodular") {
        const auto f = FieldSpec::gf(2);
        const auto L = families::cyclic_algebra(2, {Scalar::zero(f)}, f);
        const auto lat = build_subalgebra_lattice(L);
        CHECK(lat.size() == 3); // 0, Fx2, L
        CHECK(lat.is_lower_semimodular());
        CHECK(lat.maximal_chain_lengths() == std::make_pair(std::size_t{2}, std::size_t{2}));
    }
    SECTION("diamond upper semimodular check is exhaustive over 4 nodes") {
        const auto f = FieldSpec::gf(5);
        const auto lat = build_subalgebra_lattice(families::diamond(f));
        const int fa = lat.index_of(Subspace::span(f, 2, {coords(f, {1, 0})}));
        CHECK(lat.is_upper_semimodular_element(fa));
    }
}

TEST_CASE("fingerprints") {
    const auto d2 = build_subalgebra_lattice(families::diamond(FieldSpec::gf(2)));
    const auto d5 = build_subalgebra_lattice(families::diamond(FieldSpec::gf(5)));
    CHECK(d2.fingerprint() == d5.fingerprint()); // Example 2.1 is field-free
    CHECK(d2.fingerprint().node_count == 4);
    CHECK(d2.fingerprint().atom_count == 2);
    CHECK(d2.fingerprint().coatom_count == 2);
    const auto a2 = build_subalgebra_lattice(families::abelian(2, FieldSpec::gf(2)));
    CHECK(!(d2.fingerprint() == a2.fingerprint())); // 4 vs 5 nodes
    CHECK(a2.fingerprint().modular);
    CHECK(!a2.fingerprint().distributive); // M3
    const auto f2 = FieldSpec::gf(2);
    const auto chain = build_subalgebra_lattice(families::cyclic_algebra(2, {Scalar::zero(f2)}, f2));
    CHECK(chain.fingerprint().modular);
    CHECK(chain.fingerprint().distributive);
}

TEST_CASE("lattice isomorphism and automorphisms") {
    const auto f = FieldSpec::gf(5);
    const auto lat = build_subalgebra_lattice(families::diamond(f));

    SECTION("diamond vs diamond: identity exists") {
        const auto iso = lattice_isomorphism(lat, lat);
        REQUIRE(iso.has_value());
    }
    SECTION("diamond has exactly two automorphisms; the swap moves the kernel") {
        const auto autos = lattice_automorphisms(lat);
        REQUIRE(autos.size() == 2);
        CHECK(autos[0].is_identity());
        CHECK(!autos[1].is_identity());
        const int fa = lat.index_of(Subspace::span(f, 2, {coords(f, {1, 0})}));
        const int fba = lat.index_of(Subspace::span(f, 2, {coords(f, {-1, 1})}));
        CHECK(autos[1].apply(fa) == fba);
        CHECK(autos[1].apply(fba) == fa);
    }
    SECTION("diamond vs abelian(2): no isomorphism (node counts differ)") {
        const auto a2 = build_subalgebra_lattice(families::abelian(2, FieldSpec::gf(2)));
        CHECK(!lattice_isomorphism(lat, a2).has_value());
    }
    SECTION("abelian(2) over GF(2) has the 6 automorphisms of M3") {
        const auto a2 = build_subalgebra_lattice(families::abelian(2, FieldSpec::gf(2)));
        CHECK(lattice_automorphisms(a2).size() == 6);
    }
    SECTION("chain lattice is rigid") {
        const auto f2 = FieldSpec::gf(2);
        const auto chain = build_subalgebra_lattice(families::cyclic_algebra(2, {Scalar::zero(f2)}, f2));
        CHECK(lattice_automorphisms(chain).size() == 1);
    }
    SECTION("isomorphism is symmetric via inversion") {
        const auto d3 = build_subalgebra_lattice(families::diamond(FieldSpec::gf(3)));
        const auto fwd = lattice_isomorphism(lat, d3);
        REQUIRE(fwd.has_value());
        const auto back = fwd->inverse(); // LatticeMap re-verifies on construction
        CHECK(back.forward().size() == lat.size());
        CHECK(lattice_isomorphism(d3, lat).has_value());
        CHECK(lat.fingerprint() == d3.fingerprint()); // fingerprint soundness
    }
}

TEST_CASE("heisenberg over GF(2) is lattice isomorphic to an almost nilpotent Lie algebra") {
    const auto f = FieldSpec::gf(2);
    const auto h = build_subalgebra_lattice(families::heisenberg(f));
    CHECK(h.size() == 12); // 1 + 7 + 3 + 1
    const auto an = build_subalgebra_lattice(families::almost_nilpotent(2, {1, 1}, f));
    CHECK(an.size() == 12);
    const auto iso = lattice_isomorphism(an, h);
    CHECK(iso.has_value());
}

TEST_CASE("five-dimensional abelian lattice over GF(2)") {
    const auto lat = build_subalgebra_lattice(families::abelian(5, FieldSpec::gf(2)));
    CHECK(lat.size() == 374); // 1+31+155+155+31+1
    CHECK(lat.fingerprint().atom_count == 31);
    CHECK(lat.fingerprint().coatom_count == 31);
    CHECK(lat.fingerprint().modular);
    CHECK(!lat.fingerprint().distributive);
    CHECK(lat.maximal_chain_lengths() == std::make_pair(std::size_t{5}, std::size_t{5}));
}

TEST_CASE("generic containment path: dim 4 over GF(3)") {
    const auto lat = build_subalgebra_lattice(families::abelian(4, FieldSpec::gf(3)));
    CHECK(lat.size() == 212); // 1+40+130+40+1
    CHECK(lat.fingerprint().modular);
}

TEST_CASE("zero-dimensional lattice") {
    const auto lat = build_subalgebra_lattice(families::abelian(0, FieldSpec::gf(2)));
    CHECK(lat.size() == 1);
    CHECK(lat.maximal_chain_lengths() == std::make_pair(std::size_t{0}, std::size_t{0}));
    CHECK(lat.atoms().empty());
}
