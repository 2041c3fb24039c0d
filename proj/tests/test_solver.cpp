#include <catch2/catch_amalgamated.hpp>

#include "flmm/oracle.hpp"
#include "flmm/rng.hpp"
#include "flmm/solver.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace flmm;
using namespace flmm::solver;
using flmm::testing::hv;

namespace {
const PrimeField F;

weights::WeightFamily brute_family(std::size_t m, u64 cap = 4) {
    return weights::WeightFamily(m, {.mode = weights::FamilyMode::kBrute, .brute_cap = cap});
}
}  // namespace

TEST_CASE("degree probe on the one-line instance") {
    Instance inst = testing::one_line(F);
    Rng rng = make_rng(1);
    weights::WeightAssignment w{{1}, "user"};
    CHECK(degree_probe(inst, w, 3, rng) == 8);  // 8 * w . z* with z* = (1)

    // symbolic confirmation on the 4x4 blow-up
    CHECK(testing::det_symbolic(weighted_blowup(inst, w)).total_degree() == 8);
}

TEST_CASE("degree probe demands distinct weights") {
    Instance inst = testing::two_disjoint_lines_f4(F);
    Rng rng = make_rng(2);
    CHECK_THROWS_AS(degree_probe(inst, {{1, 1}, "user"}, 3, rng), InputError);
}

TEST_CASE("degree probe is the zero sentinel when no perfect matching exists") {
    Instance inst = testing::single_line_f3(F);
    Rng rng = make_rng(3);
    for (u64 wv : {1, 2, 5}) CHECK(degree_probe(inst, {{wv}, "user"}, 3, rng) == kZeroPolyDegree);

    Instance dup = testing::duplicated_line_f4(F);
    CHECK(degree_probe(dup, {{1, 2}, "user"}, 3, rng) == kZeroPolyDegree);
}

TEST_CASE("degree probe equals eight times the isolated optimum on K3") {
    Instance inst = testing::k3(F);
    oracle::PolytopeOracle oc(inst);
    weights::WeightAssignment w{{5, 6, 7}, "user"};
    REQUIRE(oc.is_isolating(w.w));
    Rng rng = make_rng(4);
    // z* = (1/2,1/2,1/2): W = 8 * (5+6+7)/2 = 4 * (w1+w2+w3)
    CHECK(degree_probe(inst, w, 3, rng) == 72);
}

TEST_CASE("candidate extraction reads degrees off the perturbed probes") {
    Rng rng = make_rng(5);

    Instance one = testing::one_line(F);
    weights::WeightAssignment w1{{1}, "user"};
    auto ex1 = extract_candidate(one, w1, 8, 3, rng);
    REQUIRE(ex1.y.has_value());
    CHECK(*ex1.y == hv({2}));
    CHECK(ex1.we == std::vector<long long>{40});  // 4W + 8

    Instance k3 = testing::k3(F);
    weights::WeightAssignment w3{{5, 6, 7}, "user"};
    auto ex3 = extract_candidate(k3, w3, 72, 3, rng);
    REQUIRE(ex3.y.has_value());
    CHECK(*ex3.y == hv({1, 1, 1}));
    CHECK(ex3.we == std::vector<long long>{292, 292, 292});  // 4W + 4 each
}

TEST_CASE("extraction reports the zero case") {
    // third line never used by the optimum: W^e = 4W there
    Instance inst = testing::duplicated_plus_disjoint_f4(F);
    oracle::PolytopeOracle oc(inst);
    weights::WeightAssignment w = weights::make_distinct({{3, 1, 2}, "user"});
    REQUIRE(oc.is_isolating(w.w));  // unique perfect matching (1,0,1)
    Rng rng = make_rng(6);
    long long big_w = degree_probe(inst, w, 3, rng);
    auto best = oc.max_weight_over_perfect(w.w);
    REQUIRE(best.has_value());
    CHECK(big_w == 4 * best->value_twice);
    auto ex = extract_candidate(inst, w, big_w, 3, rng);
    REQUIRE(ex.y.has_value());
    CHECK(*ex.y == hv({2, 0, 2}));
    CHECK(ex.we[1] == 4 * big_w);
}

TEST_CASE("probes outside the legal cases abandon the candidate") {
    Instance k3 = testing::k3(F);
    weights::WeightAssignment w{{5, 6, 7}, "user"};
    Rng rng = make_rng(8);
    // true degrees are 292 = 4*72 + 4; a wrong W makes every probe illegal
    auto ex = extract_candidate(k3, w, 10, 3, rng);
    CHECK_FALSE(ex.y.has_value());
    CHECK(ex.we[0] == 292);
    CHECK_THROWS_AS(extract_candidate(k3, w, 0, 3, rng), std::invalid_argument);
}

TEST_CASE("verification gates the candidate") {
    Instance k3 = testing::k3(F);
    weights::WeightAssignment w{{5, 6, 7}, "user"};
    Rng rng = make_rng(7);
    CHECK(verify_candidate(k3, w, hv({1, 1, 1}), 3, rng));
    CHECK_FALSE(verify_candidate(k3, w, hv({2, 2, 2}), 3, rng));  // |y| != n/2
    CHECK_FALSE(verify_candidate(k3, w, hv({2, 1, 0}), 3, rng));  // infeasible pattern, zero det
}

TEST_CASE("solve finds the unique perfect matchings") {
    ProbeSettings s;
    Instance one = testing::one_line(F);
    auto r1 = solve(one, brute_family(1));
    REQUIRE(r1.found);
    CHECK(r1.y == hv({2}));
    CHECK(r1.prime == F.modulus());

    Instance k3 = testing::k3(F);
    auto r3 = solve(k3, brute_family(3));
    REQUIRE(r3.found);
    CHECK(r3.y == hv({1, 1, 1}));
    CHECK(r3.big_w > 0);
    CHECK(r3.we.size() == 3);

    Instance two = testing::two_disjoint_lines_f4(F);
    auto r2 = solve(two, brute_family(2));
    REQUIRE(r2.found);
    CHECK(r2.y == hv({2, 2}));
}

TEST_CASE("solve reports none when no perfect matching exists") {
    auto r = solve(testing::single_line_f3(F), brute_family(1));
    CHECK_FALSE(r.found);
    CHECK(r.elements_tried == 4);  // family exhausted
    CHECK(r.zero_degree_elements == 4);

    auto rd = solve(testing::duplicated_line_f4(F), brute_family(2));
    CHECK_FALSE(rd.found);
}

TEST_CASE("solved matchings are oracle-feasible and perfect") {
    for (const Instance& inst :
         {testing::one_line(F), testing::k3(F), testing::two_disjoint_lines_f4(F),
          testing::duplicated_plus_disjoint_f4(F)}) {
        auto r = solve(inst, brute_family(inst.m()));
        REQUIRE(r.found);
        oracle::PolytopeOracle oc(inst);
        CHECK(oc.is_feasible(r.y));
        CHECK(r.y.twice_size() == static_cast<int>(inst.n()));
    }
}

TEST_CASE("solve works with the gtv family mode") {
    // gtv weights grow geometrically with the round count, so end-to-end
    // solves stay cheap only for small m; larger m uses brute mode
    weights::WeightFamily fam(2, {.mode = weights::FamilyMode::kGtv, .gtv_t = 8, .gtv_q = 8});
    auto r = solve(testing::two_disjoint_lines_f4(F), fam);
    REQUIRE(r.found);
    CHECK(r.y == hv({2, 2}));

    weights::WeightFamily fam1(1, {.mode = weights::FamilyMode::kGtv, .gtv_t = 8, .gtv_q = 8});
    auto r1 = solve(testing::one_line(F), fam1);
    REQUIRE(r1.found);
    CHECK(r1.y == hv({2}));
}

TEST_CASE("parallel mode returns the sequential answer") {
    Instance k3 = testing::k3(F);
    auto fam = brute_family(3);
    ProbeSettings seq;
    ProbeSettings par;
    par.parallel = true;
    auto a = solve(k3, fam, seq);
    auto b = solve(k3, fam, par);
    REQUIRE(a.found);
    REQUIRE(b.found);
    CHECK(a.y == b.y);
    CHECK(a.family_index == b.family_index);
    CHECK(a.witness.w == b.witness.w);
    CHECK(a.elements_tried == b.elements_tried);

    auto na = solve(testing::duplicated_line_f4(F), brute_family(2), seq);
    auto nb = solve(testing::duplicated_line_f4(F), brute_family(2), par);
    CHECK_FALSE(na.found);
    CHECK_FALSE(nb.found);
    CHECK(na.elements_tried == nb.elements_tried);
}

TEST_CASE("weighted solve maximizes the input weights over perfect matchings") {
    Instance inst = testing::duplicated_plus_disjoint_f4(F);
    oracle::PolytopeOracle oc(inst);
    auto fam = brute_family(3, 2);

    std::vector<u64> v{2, 1, 1};
    auto r = solve_weighted(inst, v, fam);
    REQUIRE(r.found);
    CHECK(r.y == hv({2, 0, 2}));  // oracle-unique weighted optimum

    std::vector<u64> v2{1, 2, 1};
    auto r2 = solve_weighted(inst, v2, fam);
    REQUIRE(r2.found);
    CHECK(r2.y == hv({0, 2, 2}));

    // zero input weights: any perfect matching is acceptable
    auto r0 = solve_weighted(inst, {0, 0, 0}, fam);
    REQUIRE(r0.found);
    CHECK(oc.is_feasible(r0.y));
    CHECK(r0.y.twice_size() == 4);
}

TEST_CASE("weighted solve on K3 keeps the unique perfect matching") {
    Instance k3 = testing::k3(F);
    auto r = solve_weighted(k3, {2, 1, 1}, brute_family(3, 2));
    REQUIRE(r.found);
    CHECK(r.y == hv({1, 1, 1}));
}

namespace {

/// Symbolic z-block of the substituted Pfaffian expansion: columns of
/// T_i (x) B_i selected by J, with T_i the full 2x2 monomial matrix.
QuadPolyMatrix z_block(const Instance& inst, const weights::WeightAssignment& w,
                       const std::vector<std::vector<int>>& picks) {
    const std::size_t n = inst.n();
    QuadPolyMatrix out(F, 2 * n, 2 * n);
    std::size_t col = 0;
    for (std::size_t i = 0; i < inst.m(); ++i) {
        if (picks[i].empty()) continue;
        QuadPolyMatrix t(F, 2, 2);
        const auto wi = static_cast<std::uint32_t>(w.w[i]);
        t.at(0, 0) = QuadPoly::monomial(F, {wi, 0, 0, 0}, 1);
        t.at(0, 1) = QuadPoly::monomial(F, {0, wi, 0, 0}, 1);
        t.at(1, 0) = QuadPoly::monomial(F, {0, 0, wi, 0}, 1);
        t.at(1, 1) = QuadPoly::monomial(F, {0, 0, 0, wi}, 1);
        QuadPolyMatrix tb = kron(t, inst.span_pair(i));
        for (int j : picks[i]) {
            for (std::size_t r = 0; r < 2 * n; ++r) out.at(r, col) = tb.at(r, j);
            ++col;
        }
    }
    REQUIRE(col == 2 * n);
    return out;
}

}  // namespace

TEST_CASE("z-block determinants are homogeneous of degree four w.z") {
    struct Case {
        Instance inst;
        HalfIntegralVector z;
        weights::WeightAssignment w;
    };
    // two lines inside the plane share a direction; (1/2,1/2) is perfect
    Instance plane_pair(F, 2, {{{1, 0}, {0, 1}}, {{1, 0}, {1, 1}}});
    std::vector<Case> cases{
        {testing::one_line(F), hv({2}), {{3}, "user"}},
        {testing::two_disjoint_lines_f4(F), hv({2, 2}), {{2, 5}, "user"}},
        {plane_pair, hv({1, 1}), {{3, 4}, "user"}},
    };
    for (const auto& c : cases) {
        long long degree_twice = 0;  // 2 * (w . 2z) = 4 w.z
        for (std::size_t i = 0; i < c.inst.m(); ++i)
            degree_twice += 2ll * c.w.w[i] * c.z.twice(i);
        // the column picks per line: all four for z_i = 1, either pair for 1/2
        std::vector<std::vector<std::vector<int>>> options(c.inst.m());
        for (std::size_t i = 0; i < c.inst.m(); ++i) {
            if (c.z.twice(i) == 2) {
                options[i] = {{0, 1, 2, 3}};
            } else if (c.z.twice(i) == 1) {
                options[i] = {{0, 1}, {2, 3}};
            } else {
                options[i] = {{}};
            }
        }
        QuadPoly total(F);
        std::vector<std::size_t> choice(c.inst.m(), 0);
        while (true) {
            std::vector<std::vector<int>> picks(c.inst.m());
            for (std::size_t i = 0; i < c.inst.m(); ++i) picks[i] = options[i][choice[i]];
            QuadPoly d = testing::det_symbolic(z_block(c.inst, c.w, picks));
            for (const auto& [e, coeff] : d.terms())
                CHECK(static_cast<long long>(e[0]) + e[1] + e[2] + e[3] == degree_twice);
            total += d;
            std::size_t i = 0;
            while (i < c.inst.m()) {
                if (++choice[i] < options[i].size()) break;
                choice[i] = 0;
                ++i;
            }
            if (i == c.inst.m()) break;
        }
        // the summed block keeps the same homogeneous degree when nonzero
        for (const auto& [e, coeff] : total.terms())
            CHECK(static_cast<long long>(e[0]) + e[1] + e[2] + e[3] == degree_twice);
    }
}
