#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lbz/field.hpp"
#include "lbz/matrix.hpp"
#include "lbz/subspace.hpp"

using namespace lbz;

TEST_CASE("field spec validation") {
    CHECK(FieldSpec::gf(2).p == 2);
    CHECK(FieldSpec::gf(65521).p == 65521); // largest prime below 2^16
    CHECK_THROWS_AS(FieldSpec::gf(1), bad_params);
    CHECK_THROWS_AS(FieldSpec::gf(4), bad_params);
    CHECK_THROWS_AS(FieldSpec::gf(9), bad_params);
    CHECK_THROWS_AS(FieldSpec::gf(65536), bad_params);
    CHECK(FieldSpec::rationals().name() == "Q");
    CHECK(FieldSpec::gf(7).name() == "GF(7)");
}

TEST_CASE("prime field arithmetic") {
    const auto f5 = FieldSpec::gf(5);
    CHECK(Scalar::of_int(f5, 2) + Scalar::of_int(f5, 4) == Scalar::of_int(f5, 1));
    const auto f7 = FieldSpec::gf(7);
    CHECK(Scalar::of_int(f7, 3).inv() == Scalar::of_int(f7, 5)); // 3*5 = 15 = 1 mod 7
    CHECK_THROWS_AS(Scalar::zero(f7).inv(), division_by_zero);

    SECTION("a * inv(a) = 1 for all nonzero a, several p") {
        for (std::uint32_t p : {2u, 3u, 5u, 7u, 13u, 251u}) {
            const auto f = FieldSpec::gf(p);
            for (std::uint32_t a = 1; a < p; ++a)
                CHECK(Scalar::residue(f, a) * Scalar::residue(f, a).inv() == Scalar::one(f));
        }
    }
}

TEST_CASE("rational arithmetic stays normalized and exact") {
    const auto q = FieldSpec::rationals();
    const Scalar half = Scalar::rational(1, 2);
    const Scalar third = Scalar::rational(1, 3);
    CHECK((half + third).str() == "5/6");
    CHECK(Scalar::rational(2, 4).str() == "1/2");
    CHECK(Scalar::rational(-2, -4).str() == "1/2");
    CHECK(Scalar::rational(3, -6).str() == "-1/2");
    CHECK(Scalar::rational(4, 2).str() == "2");
    CHECK((Scalar::rational(1, 3) * Scalar::of_int(q, 3)).is_one());

    SECTION("no overflow: iterated squaring stays exact") {
        Scalar x = Scalar::rational(3, 2);
        for (int i = 0; i < 8; ++i) x *= x; // 3^256 / 2^256
        const BigInt num = boost::multiprecision::numerator(x.rational_value());
        CHECK(num == boost::multiprecision::pow(BigInt(3), 256));
    }
}

TEST_CASE("mixed fields are rejected") {
    CHECK_THROWS_AS(Scalar::of_int(FieldSpec::gf(5), 1) + Scalar::of_int(FieldSpec::gf(7), 1), mixed_fields);
    CHECK_THROWS_AS(Scalar::of_int(FieldSpec::gf(5), 1) * Scalar::rational(1, 2), mixed_fields);
}

TEST_CASE("scalar string round trip") {
    const auto f7 = FieldSpec::gf(7);
    for (std::uint32_t a = 0; a < 7; ++a) {
        const Scalar s = Scalar::residue(f7, a);
        CHECK(Scalar::parse(f7, s.str()) == s);
    }
    const auto q = FieldSpec::rationals();
    for (const char* t : {"0", "1", "-1", "5/6", "-22/7", "100000000000000000000/3"})
        CHECK(Scalar::parse(q, t).str() == t);
    CHECK_THROWS_AS(Scalar::parse(f7, "7"), parse_error);
    CHECK_THROWS_AS(Scalar::parse(f7, "x"), parse_error);
    CHECK_THROWS_AS(Scalar::parse(q, "1/0"), parse_error);
    CHECK_THROWS_AS(Scalar::parse(q, ""), parse_error);
}

namespace {

Matrix rows_of(const FieldSpec& f, std::vector<std::vector<long long>> vals) {
    std::vector<Vec> rows;
    for (auto& r : vals) {
        Vec v;
        for (long long x : r) v.push_back(Scalar::of_int(f, x));
        rows.push_back(std::move(v));
    }
    return Matrix::from_rows(f, rows);
}

} // namespace

TEST_CASE("rref canonical form") {
    const auto f2 = FieldSpec::gf(2);

    SECTION("hand-eliminated GF(2) example") {
        const auto rr = rref(rows_of(f2, {{1, 1, 0}, {0, 1, 1}}));
        CHECK(rr.rank == 2);
        CHECK(rr.mat == rows_of(f2, {{1, 0, 1}, {0, 1, 1}}));
    }
    SECTION("identity is fixed") {
        const auto id = Matrix::identity(FieldSpec::rationals(), 4);
        const auto rr = rref(id);
        CHECK(rr.rank == 4);
        CHECK(rr.mat == id);
    }
    SECTION("zero matrix drops to empty basis") {
        const auto rr = rref(Matrix(FieldSpec::gf(3), 3, 3));
        CHECK(rr.rank == 0);
        CHECK(rr.mat.rows == 0);
    }
    SECTION("idempotent") {
        const auto m = rows_of(FieldSpec::rationals(), {{2, 4, 6}, {1, 3, 5}, {3, 7, 11}});
        const auto once = rref(m);
        const auto twice = rref(once.mat);
        CHECK(once.mat == twice.mat);
    }
}

TEST_CASE("rref is basis-order independent under random row mixing") {
    std::mt19937_64 rng(20240811);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        const auto f = FieldSpec::gf(p);
        for (int trial = 0; trial < 40; ++trial) {
            const std::size_t n = 4;
            std::vector<Vec> rows;
            for (int i = 0; i < 3; ++i) {
                Vec v;
                for (std::size_t j = 0; j < n; ++j)
                    v.push_back(Scalar::residue(f, static_cast<std::uint32_t>(rng() % p)));
                rows.push_back(std::move(v));
            }
            const Subspace s = Subspace::span(f, n, rows);
            // shuffle and take random invertible combinations of the rows
            std::vector<Vec> mixed = rows;
            std::shuffle(mixed.begin(), mixed.end(), rng);
            for (std::size_t i = 0; i < mixed.size(); ++i) {
                const std::size_t j = rng() % mixed.size();
                std::uint32_t c = static_cast<std::uint32_t>(rng() % p);
                if (i == j) continue;
                mixed[i] = vec_add(mixed[i], vec_scale(Scalar::residue(f, c), mixed[j]));
            }
            CHECK(Subspace::span(f, n, mixed) == s);
        }
    }
}

TEST_CASE("subspace operations") {
    const auto f2 = FieldSpec::gf(2);
    const Subspace u = Subspace::span(f2, 3, {rows_of(f2, {{1, 0, 0}}).row(0), rows_of(f2, {{0, 1, 0}}).row(0)});
    const Subspace v = Subspace::span(f2, 3, {rows_of(f2, {{0, 1, 0}}).row(0), rows_of(f2, {{0, 0, 1}}).row(0)});
    const Subspace w = u.intersect(v);
    CHECK(w.dim() == 1);
    CHECK(w.contains(rows_of(f2, {{0, 1, 0}}).row(0)));
    CHECK(u.sum(v).is_full());
    CHECK(u.contains(w));
    CHECK(!u.contains(v));

    SECTION("intersection against random subspaces agrees with element filter") {
        // independent oracle: intersect by filtering all 2^3 vectors
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 30; ++trial) {
            auto rand_space = [&]() {
                std::vector<Vec> rows;
                const int k = static_cast<int>(rng() % 3);
                for (int i = 0; i < k; ++i) {
                    Vec r;
                    for (int j = 0; j < 3; ++j) r.push_back(Scalar::residue(f2, rng() % 2));
                    rows.push_back(std::move(r));
                }
                return Subspace::span(f2, 3, rows);
            };
            const Subspace a = rand_space(), b = rand_space();
            std::vector<Vec> common;
            for (unsigned bits = 0; bits < 8; ++bits) {
                Vec x;
                for (int j = 0; j < 3; ++j) x.push_back(Scalar::residue(f2, (bits >> j) & 1));
                if (a.contains(x) && b.contains(x)) common.push_back(x);
            }
            CHECK(a.intersect(b) == Subspace::span(f2, 3, common));
        }
    }

    SECTION("coordinates round trip") {
        const auto q = FieldSpec::rationals();
        const Subspace s = Subspace::span(q, 3, rows_of(q, {{1, 2, 3}, {0, 1, 1}}).row_list());
        const Vec target = rows_of(q, {{2, 5, 7}}).row(0);
        const auto coords = s.coordinates_of(target);
        REQUIRE(coords.has_value());
        Vec rebuilt = zero_vec(q, 3);
        for (std::size_t i = 0; i < s.dim(); ++i)
            rebuilt = vec_add(rebuilt, vec_scale((*coords)[i], s.basis_vector(i)));
        CHECK(rebuilt == target);
        CHECK(!s.coordinates_of(rows_of(q, {{1, 0, 0}}).row(0)).has_value());
    }
}

TEST_CASE("kernel basis") {
    const auto f3 = FieldSpec::gf(3);
    // x + y + z = 0 over GF(3): kernel of the 1x3 matrix (1 1 1)
    const Matrix m = rows_of(f3, {{1, 1, 1}});
    const Matrix k = kernel_basis(m);
    CHECK(k.rows == 2);
    for (std::size_t i = 0; i < k.rows; ++i) CHECK(is_zero_vec(m.apply(k.row(i))));
}

TEST_CASE("characteristic polynomial over Q") {
    const auto q = FieldSpec::rationals();
    // companion-style matrix with char poly x^2 - 3x + 2 = (x-1)(x-2)
    const Matrix m = rows_of(q, {{0, -2}, {1, 3}});
    const auto c = characteristic_polynomial(m);
    REQUIRE(c.size() == 3);
    CHECK(c[0].str() == "2");
    CHECK(c[1].str() == "-3");
    CHECK(c[2].str() == "1");
    CHECK_THROWS_AS(characteristic_polynomial(rows_of(FieldSpec::gf(2), {{1, 0}, {0, 1}})), bad_params);
}
