#include <catch2/catch_amalgamated.hpp>

#include "flmm/field.hpp"
#include "flmm/rng.hpp"

using namespace flmm;

TEST_CASE("primality testing") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(3));
    CHECK(is_prime_u64(101));
    CHECK(is_prime_u64(PrimeField::kDefaultPrime));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(0));
    CHECK_FALSE(is_prime_u64(2147483647ull * 3));
    CHECK_FALSE(is_prime_u64(1ull << 32));
}

TEST_CASE("field construction rejects non-primes") {
    CHECK_THROWS_AS(PrimeField(42), InputError);
    CHECK_NOTHROW(PrimeField(101));
}

TEST_CASE("default prime exceeds 2^30") {
    PrimeField f;
    CHECK(f.modulus() > (1ull << 30));
    CHECK(is_prime_u64(f.modulus()));
}

TEST_CASE("field axioms on random elements") {
    PrimeField f;
    Rng rng = make_rng(7);
    for (int i = 0; i < 200; ++i) {
        u64 a = f.uniform(rng), b = f.uniform(rng), c = f.uniform(rng);
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        CHECK(f.add(a, f.neg(a)) == 0);
        CHECK(f.sub(a, b) == f.add(a, f.neg(b)));
        if (a != 0) {
            CHECK(f.mul(a, f.inv(a)) == 1);
            CHECK(f.pow(a, f.modulus() - 1) == 1);  // Fermat
        }
    }
}

TEST_CASE("signed reduction") {
    PrimeField f(101);
    CHECK(f.reduce_signed(-1) == 100);
    CHECK(f.reduce_signed(-101) == 0);
    CHECK(f.reduce_signed(205) == 3);
}

TEST_CASE("child seeds are distinct and deterministic") {
    CHECK(child_seed(1, 0) == child_seed(1, 0));
    CHECK(child_seed(1, 0) != child_seed(1, 1));
    CHECK(child_seed(1, 0) != child_seed(2, 0));
}
