#include <catch2/catch_amalgamated.hpp>

#include "flmm/hitting_set.hpp"
#include "flmm/oracle.hpp"
#include "flmm/rng.hpp"
#include "support/fixtures.hpp"

using namespace flmm;
using namespace flmm::hitset;

namespace {
const PrimeField F;

weights::ExplicitFamily single(std::vector<u64> w) {
    return weights::ExplicitFamily{{weights::WeightAssignment{std::move(w), "user"}}};
}
}  // namespace

TEST_CASE("stream cardinality is |W| * |S|^4") {
    auto fam = single({1});
    HittingSetStream stream(F, 1, 2, fam);
    CHECK(stream.point_set_size() == 5);  // 2nD+1 with n = 2, D = 1
    CHECK(stream.size() == 625);

    weights::WeightFamily brute(2, {.mode = weights::FamilyMode::kBrute, .brute_cap = 2});
    HittingSetStream s2(F, 2, 2, brute);
    CHECK(s2.point_set_size() == 9);
    CHECK(s2.size() == 4 * 9ull * 9 * 9 * 9);
}

TEST_CASE("identity point yields identity blocks") {
    auto fam = single({1});
    HittingSetStream stream(F, 1, 2, fam);
    // odometer: a is the fastest digit; (a,b,c,d) = (1,0,0,1)
    const u64 s = stream.point_set_size();
    HittingTuple tup = stream.at(1 + s * s * s * 1);
    CHECK(tup.abcd == std::array<u64, 4>{1, 0, 0, 1});
    CHECK(tup.t[0] == FieldMatrix::identity(F, 2));
}

TEST_CASE("pinned power tuple over F_101") {
    PrimeField f101(101);
    auto fam = single({2});
    HittingSetStream stream(f101, 1, 2, fam);
    const u64 s = stream.point_set_size();
    CHECK(s == 9);
    HittingTuple tup = stream.at(2 + s * s * s * 3);  // (a,b,c,d) = (2,0,0,3)
    CHECK(tup.abcd == std::array<u64, 4>{2, 0, 0, 3});
    FieldMatrix expect(f101, 2, 2);
    expect.at(0, 0) = 16;  // (2^2)^2
    expect.at(1, 1) = 81;  // (3^2)^2
    CHECK(tup.t[0] == expect);
}

TEST_CASE("stream is deterministic") {
    weights::WeightFamily brute(2, {.mode = weights::FamilyMode::kBrute, .brute_cap = 2});
    HittingSetStream a(F, 2, 4, brute);
    HittingSetStream b(F, 2, 4, brute);
    for (u64 idx : {0ull, 17ull, 4095ull}) {
        CHECK(a.at(idx).abcd == b.at(idx).abcd);
        CHECK(a.at(idx).w.w == b.at(idx).w.w);
    }
}

TEST_CASE("witness found on full-rank instances") {
    Rng rng = make_rng(12);

    Instance one = testing::one_line(F);
    weights::WeightFamily fam1(1, {.mode = weights::FamilyMode::kBrute, .brute_cap = 2});
    weights::DistinctFamily dfam1(fam1);
    HittingSetStream s1(F, 1, one.n(), dfam1);
    auto r1 = find_witness(one, s1);
    REQUIRE(r1.outcome == WitnessOutcome::kFound);
    CHECK(det(blowup2_eval(one, r1.tuple->t)) != 0);
    CHECK(ncrank_estimate(one, 3, rng) == one.n());

    Instance k3 = testing::k3(F);
    auto fam3 = single({1, 2, 4});  // distinct, unique perfect maximizer on K3
    HittingSetStream s3(F, 3, k3.n(), fam3);
    auto r3 = find_witness(k3, s3);
    REQUIRE(r3.outcome == WitnessOutcome::kFound);
    CHECK(det(blowup2_eval(k3, r3.tuple->t)) != 0);
}

TEST_CASE("witness search is exhaustive on deficient instances") {
    Instance inst = testing::single_line_f3(F);
    auto fam = single({1});
    HittingSetStream stream(F, 1, inst.n(), fam);
    CHECK(stream.size() == 2401);  // s = 7
    auto r = find_witness(inst, stream);
    CHECK(r.outcome == WitnessOutcome::kNoWitness);
    CHECK(r.tuples_tested == 2401);
}

TEST_CASE("budget exhaustion is flagged as indeterminate") {
    Instance inst = testing::single_line_f3(F);
    auto fam = single({1});
    HittingSetStream stream(F, 1, inst.n(), fam);
    auto r = find_witness(inst, stream, 10);
    CHECK(r.outcome == WitnessOutcome::kIndeterminate);
    CHECK(r.tuples_tested == 10);
}

TEST_CASE("the field must cover the point set") {
    PrimeField tiny(5);
    auto fam = single({3});
    CHECK_THROWS_AS(HittingSetStream(tiny, 1, 2, fam), FieldTooSmall);
}

TEST_CASE("first witness index is reproducible") {
    Instance k3 = testing::k3(F);
    auto fam = single({1, 2, 4});
    HittingSetStream s(F, 3, k3.n(), fam);
    auto a = find_witness(k3, s);
    auto b = find_witness(k3, s);
    REQUIRE(a.outcome == WitnessOutcome::kFound);
    CHECK(a.tuple->index == b.tuple->index);
    CHECK(a.tuples_tested == b.tuples_tested);
}
