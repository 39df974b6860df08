#include <doctest.h>

#include "vass/numeric.hpp"

using namespace vass;

TEST_SUITE_BEGIN("numeric");

TEST_CASE("Nat arithmetic basics") {
    CHECK(Nat(0).is_zero());
    CHECK(Nat(0).to_string() == "0");
    CHECK((Nat(3) + Nat(4)).to_string() == "7");
    CHECK((Nat(1000000007) * Nat(998244353)).to_string() == "998244359987710471");
    CHECK(Nat(42) == Nat(42));
    CHECK(Nat(41) < Nat(42));
    CHECK(Nat(1) < Nat(0x100000000ull));
}

TEST_CASE("Nat subtraction") {
    CHECK(*Nat(10).minus(Nat(3)) == Nat(7));
    CHECK(!Nat(3).minus(Nat(10)).has_value());
    CHECK(Nat(3).monus(Nat(10)).is_zero());
    CHECK(Nat(0x100000000ull).monus(Nat(1)).to_string() == "4294967295");
}

TEST_CASE("Nat string round trip on big values") {
    std::string s = "123456789012345678901234567890123456789";
    CHECK(Nat::from_string(s).to_string() == s);
    CHECK(Nat::from_string("000123").to_string() == "123");
}

TEST_CASE("Nat pow") {
    CHECK(Nat::pow(Nat(2), 10) == Nat(1024));
    CHECK(Nat::pow(Nat(8), 4) == Nat(4096));
    CHECK(Nat::pow(Nat(7), 0) == Nat(1));
    CHECK(Nat::pow(Nat(0), 5).is_zero());
    // square-and-multiply agrees with the naive product
    Nat naive(1);
    for (int i = 0; i < 23; ++i)
        naive = naive * Nat(13);
    CHECK(Nat::pow(Nat(13), 23) == naive);
    // algebraic identity on a value far beyond 64 bits
    CHECK(Nat::pow(Nat(8), 1728) == Nat::pow(Nat(64), 864));
    CHECK(Nat::pow(Nat(8), 1728) == Nat::pow(Nat(2), 5184));
}

TEST_CASE("Int arithmetic and ordering") {
    CHECK(Int(-5).to_string() == "-5");
    CHECK((Int(-5) + Int(3)) == Int(-2));
    CHECK((Int(-5) + Int(7)) == Int(2));
    CHECK((Int(5) + Int(-5)).is_zero());
    CHECK(!(Int(5) + Int(-5)).is_negative());
    CHECK(Int(-3) < Int(-2));
    CHECK(Int(-1) < Int(0));
    CHECK((-Int(4)).to_string() == "-4");
    CHECK(Int::from_string("-12") == Int(-12));
}

TEST_CASE("NatOmega ordering and absorption") {
    CHECK(NatOmega::omega() > NatOmega(Nat(1000000)));
    CHECK(NatOmega(Nat(3)) < NatOmega(Nat(4)));
    CHECK(*add_effect(NatOmega::omega(), Int(-100)) == NatOmega::omega());
    CHECK(*add_effect(NatOmega(Nat(2)), Int(-2)) == NatOmega(Nat(0)));
    CHECK(!add_effect(NatOmega(Nat(1)), Int(-2)).has_value());
    CHECK(NatOmega::omega().to_string() == "w");
}

TEST_CASE("add_effect on naturals") {
    CHECK(*add_effect(Nat(1), Int(-1)) == Nat(0));
    CHECK(!add_effect(Nat(0), Int(-1)).has_value());
    CHECK(*add_effect(Nat(7), Int(5)) == Nat(12));
}

TEST_SUITE_END();
