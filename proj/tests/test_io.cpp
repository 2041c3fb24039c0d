#include <catch2/catch_amalgamated.hpp>

#include "flmm/io.hpp"
#include "flmm/oracle.hpp"
#include "support/fixtures.hpp"

using namespace flmm;
using namespace flmm::io;

namespace {
const PrimeField F;
}

TEST_CASE("instance JSON round-trips byte-identically") {
    Instance inst = gen_random(F, 3, 4, 7);
    std::string text = canonical_dump(instance_to_json(inst));
    Instance reparsed = instance_from_json(json::parse(text));
    CHECK(canonical_dump(instance_to_json(reparsed)) == text);
}

TEST_CASE("generation is deterministic in the seed") {
    CHECK(canonical_dump(instance_to_json(gen_random(F, 4, 4, 7))) ==
          canonical_dump(instance_to_json(gen_random(F, 4, 4, 7))));
    CHECK(canonical_dump(instance_to_json(gen_random(F, 4, 4, 7))) !=
          canonical_dump(instance_to_json(gen_random(F, 4, 4, 8))));
    CHECK(canonical_dump(instance_to_json(gen_intersection(F, 3, 2, 2, 5))) ==
          canonical_dump(instance_to_json(gen_intersection(F, 3, 2, 2, 5))));
}

TEST_CASE("negative entries are reduced at load") {
    json j{{"prime", 101}, {"n", 2}, {"lines", json::array({json{{"a", {1, 0}}, {"b", {0, -1}}}})}};
    Instance inst = instance_from_json(j);
    CHECK(inst.line(0).b[1] == 100);
}

TEST_CASE("malformed instances are rejected") {
    CHECK_THROWS_AS(instance_from_json(json{{"n", 2}}), InputError);
    CHECK_THROWS_AS(instance_from_json(json{{"prime", 42}, {"n", 2}, {"lines", json::array()}}), InputError);
    json dependent{{"prime", 101},
                   {"n", 2},
                   {"lines", json::array({json{{"a", {1, 2}}, {"b", {2, 4}}}})}};
    CHECK_THROWS_AS(instance_from_json(dependent), InputError);
    json wrong_dim{{"prime", 101}, {"n", 3}, {"lines", json::array({json{{"a", {1, 0}}, {"b", {0, 1}}}})}};
    CHECK_THROWS_AS(instance_from_json(wrong_dim), InputError);
}

TEST_CASE("graph generation matches the triangle fixture") {
    Instance k3 = gen_graph(F, 3, {{0, 1}, {1, 2}, {2, 0}});
    Instance fix = testing::k3(F);
    CHECK(canonical_dump(instance_to_json(k3)) == canonical_dump(instance_to_json(fix)));
    CHECK_THROWS_AS(gen_graph(F, 3, {{0, 0}}), InputError);
    CHECK_THROWS_AS(gen_graph(F, 3, {{0, 5}}), InputError);
}

TEST_CASE("single edge graph is the one-line instance") {
    Instance e = gen_graph(F, 2, {{0, 1}});
    CHECK(canonical_dump(instance_to_json(e)) == canonical_dump(instance_to_json(testing::one_line(F))));
}

TEST_CASE("intersection instances are block-structured") {
    Instance inst = gen_intersection(F, 3, 2, 2, 11);
    CHECK(inst.n() == 4);
    CHECK(inst.m() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(inst.line(i).a[2] == 0);
        CHECK(inst.line(i).a[3] == 0);
        CHECK(inst.line(i).b[0] == 0);
        CHECK(inst.line(i).b[1] == 0);
    }
    // generic two-matroid instance with enough lines has a common base
    CHECK(oracle::PolytopeOracle(inst).has_perfect_matching());
}

TEST_CASE("constraint matrix files") {
    lattice::ConstraintMatrix d(2, 3);
    d.at(0, 0) = 2;
    d.at(1, 1) = 1;
    d.at(0, 1) = 1;
    d.at(1, 2) = 2;
    json j = constraint_to_json(d);
    lattice::ConstraintMatrix r = constraint_from_json(j);
    CHECK(r.rows == 2);
    CHECK(r.cols == 3);
    CHECK(r.at(0, 0) == 2);
    CHECK(r.at(1, 2) == 2);
    CHECK_THROWS_AS(constraint_from_json(json{{"rows", 1}}), InputError);
}

TEST_CASE("csv parsing") {
    CHECK(parse_csv_integers("1,-2,3") == std::vector<long long>{1, -2, 3});
    CHECK(parse_csv_u64("4,5") == std::vector<u64>{4, 5});
    CHECK_THROWS_AS(parse_csv_u64("4,-5"), InputError);
    CHECK_THROWS_AS(parse_csv_integers("1,,2"), InputError);
}
