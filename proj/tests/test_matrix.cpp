#include <catch2/catch_amalgamated.hpp>

#include "flmm/algebra.hpp"
#include "flmm/matrix.hpp"
#include "flmm/rng.hpp"
#include "support/oracles.hpp"

using namespace flmm;

namespace {
const PrimeField F;

FieldMatrix from_rows(PrimeField f, std::vector<std::vector<long long>> rows) {
    FieldMatrix m(f, rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m.at(r, c) = f.reduce_signed(rows[r][c]);
    return m;
}
}  // namespace

TEST_CASE("rank basics") {
    CHECK(rank(FieldMatrix::identity(F, 3)) == 3);
    CHECK(rank(FieldMatrix(F, 4, 4)) == 0);
    // row2 = 2*row1 over F_7
    PrimeField f7(7);
    CHECK(rank(from_rows(f7, {{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("det basics") {
    CHECK(det(FieldMatrix::identity(F, 5)) == 1);
    CHECK(det(from_rows(F, {{0, 1}, {-1, 0}})) == 1);
    PrimeField f7(7);
    CHECK(det(from_rows(f7, {{2, 3}, {1, 4}})) == 5);  // 2*4 - 3*1
    CHECK_THROWS_AS(det(FieldMatrix(F, 2, 3)), std::invalid_argument);
}

TEST_CASE("pfaffian basics") {
    u64 a = 12345;
    FieldMatrix m(F, 2, 2);
    m.at(0, 1) = a;
    m.at(1, 0) = F.neg(a);
    CHECK(pfaffian(m) == a);

    Rng rng = make_rng(3);
    CHECK(pfaffian(testing::random_skew(F, 3, rng)) == 0);  // odd order
    CHECK(pfaffian(FieldMatrix(F, 0, 0)) == 1);

    FieldMatrix bad = FieldMatrix::identity(F, 2);
    CHECK_THROWS_AS(pfaffian(bad), std::invalid_argument);
}

TEST_CASE("pfaffian matches the recursive reference") {
    Rng rng = make_rng(17);
    for (std::size_t n : {2u, 4u, 6u, 8u}) {
        for (int rep = 0; rep < 10; ++rep) {
            FieldMatrix m = testing::random_skew(F, n, rng);
            CHECK(pfaffian(m) == testing::pfaffian_reference(m));
        }
    }
}

TEST_CASE("pfaffian squared equals det") {
    Rng rng = make_rng(21);
    for (std::size_t k = 1; k <= 4; ++k) {
        for (int rep = 0; rep < 20; ++rep) {
            FieldMatrix m = testing::random_skew(F, 2 * k, rng);
            u64 pf = pfaffian(m);
            CHECK(F.mul(pf, pf) == det(m));
        }
    }
}

TEST_CASE("det matches the permutation-expansion reference") {
    Rng rng = make_rng(5);
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u}) {
        for (int rep = 0; rep < 10; ++rep) {
            FieldMatrix m = FieldMatrix::random(F, n, n, rng);
            CHECK(det(m) == testing::det_reference(m));
        }
    }
}

TEST_CASE("kron block structure") {
    FieldMatrix b = from_rows(F, {{0, 1}, {-1, 0}});

    FieldMatrix d = kron(FieldMatrix::identity(F, 2), b);
    CHECK(d == from_rows(F, {{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}}));

    FieldMatrix c(F, 1, 1);
    c.at(0, 0) = 3;
    FieldMatrix scaled = kron(c, b);
    CHECK(scaled == from_rows(F, {{0, 3}, {-3, 0}}));

    FieldMatrix x = from_rows(F, {{0, 1}, {1, 0}});
    CHECK(kron(x, b) == from_rows(F, {{0, 0, 0, 1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}}));
}

TEST_CASE("kron rank is multiplicative") {
    Rng rng = make_rng(11);
    for (int rep = 0; rep < 10; ++rep) {
        FieldMatrix a = FieldMatrix::random(F, 2 + rng() % 2, 2 + rng() % 2, rng);
        FieldMatrix b = FieldMatrix::random(F, 2 + rng() % 2, 2 + rng() % 2, rng);
        CHECK(rank(kron(a, b)) == rank(a) * rank(b));
    }
}

TEST_CASE("rank is invariant under permutation and invertible factors") {
    Rng rng = make_rng(13);
    for (int rep = 0; rep < 10; ++rep) {
        FieldMatrix m = FieldMatrix::random(F, 4, 5, rng);
        std::size_t r = rank(m);

        FieldMatrix perm(F, 4, 4);
        std::vector<std::size_t> p{2, 0, 3, 1};
        for (std::size_t i = 0; i < 4; ++i) perm.at(i, p[i]) = 1;
        CHECK(rank(perm * m) == r);

        FieldMatrix g(F, 4, 4);
        do {
            g = FieldMatrix::random(F, 4, 4, rng);
        } while (det(g) == 0);
        CHECK(rank(g * m) == r);
    }
}
