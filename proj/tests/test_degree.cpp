#include <catch2/catch_amalgamated.hpp>

#include "flmm/algebra.hpp"
#include "flmm/rng.hpp"
#include "support/oracles.hpp"

using namespace flmm;

namespace {
const PrimeField F;

QuadPoly mono(Exponents e, u64 c = 1) { return QuadPoly::monomial(F, e, c); }
}  // namespace

TEST_CASE("diagonal monomial matrix has degree two") {
    QuadPolyMatrix m(F, 2, 2);
    m.at(0, 0) = mono({1, 0, 0, 0});
    m.at(1, 1) = mono({0, 0, 0, 1});
    Rng rng = make_rng(1);
    CHECK(det_total_degree(m, DegreeMode::kRandomized, 3, rng) == 2);
    CHECK(det_total_degree(m, DegreeMode::kDeterministic, 3, rng) == 2);
    CHECK(det_is_nonzero(m, 3, rng));
}

TEST_CASE("identically zero determinant reports the sentinel") {
    QuadPolyMatrix z(F, 3, 3);
    Rng rng = make_rng(2);
    CHECK(det_total_degree(z, DegreeMode::kRandomized, 3, rng) == kZeroPolyDegree);
    CHECK(det_total_degree(z, DegreeMode::kDeterministic, 3, rng) == kZeroPolyDegree);
    CHECK_FALSE(det_is_nonzero(z, 3, rng));

    // rank-deficient but entrywise nonzero: det = t11*t22 - t11*t22 = 0
    QuadPolyMatrix m(F, 2, 2);
    m.at(0, 0) = mono({1, 0, 0, 0});
    m.at(0, 1) = mono({1, 0, 0, 0});
    m.at(1, 0) = mono({0, 0, 0, 1});
    m.at(1, 1) = mono({0, 0, 0, 1});
    CHECK(det_total_degree(m, DegreeMode::kRandomized, 3, rng) == kZeroPolyDegree);
    CHECK_FALSE(det_is_nonzero(m, 3, rng));
}

TEST_CASE("degree of a cancellation-heavy determinant") {
    // [[t11, t12],[t21, t11]]: det = t11^2 - t12*t21, total degree 2
    QuadPolyMatrix m(F, 2, 2);
    m.at(0, 0) = mono({1, 0, 0, 0});
    m.at(0, 1) = mono({0, 1, 0, 0});
    m.at(1, 0) = mono({0, 0, 1, 0});
    m.at(1, 1) = mono({1, 0, 0, 0});
    Rng rng = make_rng(3);
    CHECK(det_total_degree(m, DegreeMode::kRandomized, 3, rng) == 2);
}

TEST_CASE("nonzero test sees through the tiny-grid fallback") {
    // det = t11^2*t22^2 - t12^2*t21^2 vanishes on a large part of the grid
    QuadPolyMatrix m(F, 2, 2);
    m.at(0, 0) = mono({1, 0, 0, 0}) * mono({0, 0, 0, 1});
    m.at(0, 1) = mono({0, 1, 0, 0}) * mono({0, 0, 1, 0});
    m.at(1, 0) = m.at(0, 1);
    m.at(1, 1) = m.at(0, 0);
    Rng rng = make_rng(4);
    CHECK(det_is_nonzero(m, 3, rng));
}

TEST_CASE("deterministic and randomized modes agree with the symbolic oracle") {
    Rng gen = make_rng(42);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 2 + gen() % 2;  // 2 or 3
        QuadPolyMatrix m(F, n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                if (gen() % 4 == 0) continue;  // leave some zeros
                Exponents e{static_cast<std::uint32_t>(gen() % 3), static_cast<std::uint32_t>(gen() % 3),
                            static_cast<std::uint32_t>(gen() % 2), static_cast<std::uint32_t>(gen() % 2)};
                m.at(r, c) = QuadPoly::monomial(F, e, F.uniform_nonzero(gen));
            }
        const long long expected = testing::det_symbolic(m).total_degree();
        Rng rng = make_rng(1000 + rep);
        CHECK(det_total_degree(m, DegreeMode::kDeterministic, 3, rng) == expected);
        CHECK(det_total_degree(m, DegreeMode::kRandomized, 3, rng) == expected);
    }
}

TEST_CASE("grid interpolation reconstructs a known polynomial") {
    QuadPoly p = mono({2, 0, 1, 0}, 7) + mono({0, 1, 0, 0}, 3) + QuadPoly::constant(F, 11);
    std::array<u64, 4> bounds{2, 1, 1, 0};
    QuadPoly q = interpolate_on_grid(F, bounds, [&](const std::array<u64, 4>& t) { return p.eval(t); });
    CHECK(p == q);
}

TEST_CASE("deterministic mode rejects matrices beyond the grid cap") {
    QuadPolyMatrix m(F, 2, 2);
    m.at(0, 0) = mono({200, 200, 0, 0});
    m.at(1, 1) = mono({0, 0, 200, 200});
    Rng rng = make_rng(6);
    CHECK_THROWS_AS(det_total_degree(m, DegreeMode::kDeterministic, 3, rng), GuardExceeded);
    CHECK(det_total_degree(m, DegreeMode::kRandomized, 3, rng) == 800);
}

TEST_CASE("degree extraction signals a too-small field") {
    PrimeField tiny(5);
    QuadPolyMatrix m(tiny, 2, 2);
    m.at(0, 0) = QuadPoly::monomial(tiny, {4, 0, 0, 0}, 1);
    m.at(1, 1) = QuadPoly::monomial(tiny, {0, 0, 0, 4}, 1);
    Rng rng = make_rng(5);
    CHECK_THROWS_AS(det_total_degree(m, DegreeMode::kRandomized, 3, rng), FieldTooSmall);
}
