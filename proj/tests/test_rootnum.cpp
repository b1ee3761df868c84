#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dm/rootnum.hpp"

#include <map>

using namespace dm;

namespace {

EllCurve Eprime(long a) {
    Rat A(a);
    return EllCurve::from_a246(-4 - A * A * A * A, 4 * A * A * A * A, Rat(0));
}

}  // namespace

TEST_CASE("local root numbers for eligible parameters") {
    for (long a : {21L, 237L}) {
        GlobalRootReport rep = global_root_number(Int(a));
        REQUIRE(rep.places.size() == 6);
        std::map<std::string, int> w;
        for (const auto& lr : rep.places) w[lr.place] = lr.w;
        Int A(a);
        Int q = A / 3;
        Int p1 = A * A - 2, p2 = A * A + 2;
        CHECK(w["inf"] == -1);
        CHECK(w["2"] == 1);
        CHECK(w["3"] == 1);
        CHECK(w[q.get_str()] == 1);
        CHECK(w[p1.get_str()] == -1);
        CHECK(w[p2.get_str()] == -1);
        CHECK(rep.w_global == -1);
        CHECK(rep.bad_set_complete);
    }
}

TEST_CASE("hypothesis violations are rejected with the violated condition") {
    CHECK_THROWS_AS(global_root_number(Int(15)), HypothesisError);   // q = 5 = 1 mod 4
    CHECK_THROWS_AS(global_root_number(Int(6)), HypothesisError);    // q = 2 not > 3
    CHECK_THROWS_AS(global_root_number(Int(7)), HypothesisError);    // not divisible by 3
}

TEST_CASE("a = 33 fails only if a^2 +- 2 is composite") {
    // 33 = 3 * 11 with 11 = 3 mod 4; 33^2 - 2 = 1087 and 33^2 + 2 = 1091 are prime,
    // so this parameter is actually eligible
    GlobalRootReport rep = global_root_number(Int(33));
    CHECK(rep.w_global == -1);
}

TEST_CASE("the 2-adic rule inputs") {
    LocalRootReport r2 = local_root_number(Eprime(21), "2");
    CHECK(r2.w == 1);
    CHECK(r2.rule == "2adic_c6");
    CHECK(r2.data.at("c6' mod 4") == "3");
    CHECK(r2.data.at("v2(twist A)") == "2");
    CHECK(r2.data.at("twist B mod 4") == "3");
}

TEST_CASE("archimedean place") {
    LocalRootReport r = local_root_number(Eprime(21), "inf");
    CHECK(r.w == -1);
    CHECK(r.rule == "archimedean");
}

TEST_CASE("split criteria agree with the reduced-equation symbols") {
    // at p = 3 the reduced model has node slope class (2/3) = -1
    CHECK(legendre(Int(2), Int(3)) == -1);
    // at p = q = 3 mod 4 the slope class is (-4/q) = (-1/q) = -1
    for (long q = 7; q < 100; q += 4) {
        if (!is_prime(Int(q))) continue;
        CHECK(legendre(Int(-4), Int(q)) == -1);
        CHECK(legendre(Int(-1), Int(q)) == -1);
    }
}

TEST_CASE("parity certificate") {
    ParityCertificate cert = parity_rank_odd(Int(21));
    CHECK(cert.rank_odd);
    CHECK(cert.conditional == "parity");
    CHECK(cert.report.w_global == -1);

    ParityCertificate cert237 = parity_rank_odd(Int(237));
    CHECK(cert237.rank_odd);

    CHECK_THROWS_AS(parity_rank_odd(Int(6)), HypothesisError);
}

TEST_CASE("good places report w = 1") {
    LocalRootReport r = local_root_number(Eprime(21), "5");
    CHECK(r.w == 1);
    CHECK(r.rule == "good");
}
