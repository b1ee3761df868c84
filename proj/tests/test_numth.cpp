#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dm/numth.hpp"
#include <numeric>

using namespace dm;

namespace {

bool trial_division_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TEST_CASE("primality: known values") {
    CHECK(is_prime(Int(56167)));  // 237^2 - 2
    CHECK(is_prime(Int(56171)));  // 237^2 + 2
    CHECK_FALSE(is_prime(Int(1)));
    CHECK(is_prime(Int(439)));  // 21^2 - 2 = 9*7^2 - 2
    CHECK(is_prime(Int(2)));
    CHECK_FALSE(is_prime(Int(0)));
    CHECK_FALSE(is_prime(Int(561)));   // Carmichael
    CHECK_FALSE(is_prime(Int("3215031751")));  // strong pseudoprime to first bases
    CHECK(classify_prime(Int(56167)) == Primality::prime);
}

TEST_CASE("primality agrees with trial division") {
    for (unsigned long n = 0; n < 20000; ++n)
        CHECK(is_prime(Int(n)) == trial_division_prime(n));
    Rng rng(42);
    for (int i = 0; i < 3000; ++i) {
        unsigned long n = rng.next_below(1000000);
        CHECK(is_prime(Int(n)) == trial_division_prime(n));
    }
}

TEST_CASE("primality above 2^64 is flagged probable") {
    Int n("340282366920938463463374607431768211507");  // 2^128 + 51, prime
    CHECK(classify_prime(n) == Primality::probable_prime);
    Int m("340282366920938463463374607431768211509");
    CHECK(classify_prime(m) == Primality::composite);
}

TEST_CASE("legendre: known values") {
    CHECK(legendre(Int(2), Int(3)) == -1);
    for (long q : {3, 7, 11, 19, 23}) CHECK(legendre(Int(-1), Int(q)) == -1);
    CHECK(legendre(Int(1), Int(7)) == 1);
    CHECK(legendre(Int(0), Int(7)) == 0);
    CHECK_THROWS_AS(legendre(Int(3), Int(8)), HypothesisError);
    CHECK_THROWS_AS(legendre(Int(3), Int(2)), HypothesisError);
}

TEST_CASE("legendre: multiplicativity and Euler criterion") {
    Rng rng(7);
    std::vector<long> primes = {3, 5, 7, 11, 13, 101, 997, 7919};
    for (long p : primes) {
        for (int i = 0; i < 40; ++i) {
            Int m = 1 + rng.next_int(Int(10000));
            Int n = 1 + rng.next_int(Int(10000));
            if (m % p == 0 || n % p == 0) continue;
            CHECK(legendre(m * n, Int(p)) == legendre(m, Int(p)) * legendre(n, Int(p)));
        }
    }
    // brute force: (n/p) = 1 iff n is a nonzero square mod p
    for (long p : {3, 5, 13, 97}) {
        std::vector<bool> sq(p, false);
        for (long x = 1; x < p; ++x) sq[(x * x) % p] = true;
        for (long n = 1; n < p; ++n) CHECK((legendre(Int(n), Int(p)) == 1) == sq[n]);
    }
}

TEST_CASE("valuation") {
    CHECK(valuation(Int(256) * 49, Int(2)) == 8);
    CHECK(valuation(Int(77), Int(7)) == 1);
    CHECK(valuation(Int(-12), Int(2)) == 2);
    CHECK_THROWS_AS(valuation(Int(0), Int(2)), InternalError);
    CHECK(strip_factor(Int(48), Int(2)) == 3);
}

TEST_CASE("ModInt basics") {
    ModInt a(Int(7), Int(10));
    ModInt b(Int(5), Int(10));
    CHECK((a + b).value() == 2);
    CHECK((a * b).value() == 5);
    CHECK((a - b).value() == 2);
    CHECK(a.pow(Int(2)).value() == 9);
    CHECK_THROWS_AS(a + ModInt(Int(1), Int(11)), InternalError);
    CHECK_THROWS_AS(ModInt(Int(2), Int(10)).inverse(), InternalError);
    CHECK((ModInt(Int(3), Int(10)).inverse() * ModInt(Int(3), Int(10))).value() == 1);
}

TEST_CASE("rational_reconstruct") {
    // r = m - 1 with bounds (1,1) -> -1/1
    Int m(1000003);
    auto r = rational_reconstruct(ModInt(m - 1, m), Int(1), Int(1));
    REQUIRE(r.has_value());
    CHECK(*r == Rat(-1));

    // 2/3 mod 10^6+3
    ModInt three(Int(3), m);
    ModInt val = ModInt(Int(2), m) * three.inverse();
    auto s = rational_reconstruct(val, Int(10), Int(10));
    REQUIRE(s.has_value());
    CHECK(*s == make_rat(Int(2), Int(3)));

    // random residues with no small representative: exhaustive scan oracle
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        Int v = rng.next_int(m);
        auto got = rational_reconstruct(ModInt(v, m), Int(10), Int(10));
        bool exists = false;
        Rat expect;
        for (long q = 1; q <= 10 && !exists; ++q)
            for (long p = -10; p <= 10; ++p) {
                if (std::gcd(std::abs(p), q) != 1) continue;
                if ((Int(q) * v - Int(p)) % m == 0) {
                    exists = true;
                    expect = make_rat(Int(p), Int(q));
                    break;
                }
            }
        if (exists) {
            REQUIRE(got.has_value());
            CHECK(*got == expect);
        } else {
            CHECK_FALSE(got.has_value());
        }
    }
}

TEST_CASE("rational arithmetic is exact") {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        Int a = rng.next_int(Int(1000000)) - 500000;
        Int b = 1 + rng.next_int(Int(1000000));
        Int c = rng.next_int(Int(1000000)) - 500000;
        Int d = 1 + rng.next_int(Int(1000000));
        Rat q = make_rat(a, b) + make_rat(c, d);
        CHECK(q * Rat(b) * Rat(d) == Rat(a * d + c * b));
    }
}

TEST_CASE("square detection") {
    CHECK(is_square(Int(0)));
    CHECK(is_square(Int(144)));
    CHECK_FALSE(is_square(Int(-4)));
    CHECK_FALSE(is_square(Int(2)));
    CHECK(is_square(make_rat(Int(4), Int(9))));
    CHECK(sqrt_exact(make_rat(Int(4), Int(9))) == make_rat(Int(2), Int(3)));
}
