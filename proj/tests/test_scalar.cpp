#include <doctest.h>

#include "polyrel/scalar.hpp"

using namespace polyrel;

TEST_SUITE("scalar") {

TEST_CASE("rational arithmetic stays in lowest terms") {
    const Scalar half = Scalar::rational(1, 2);
    const Scalar third = Scalar::rational(1, 3);
    CHECK((half + third).str() == "5/6");
    CHECK((half * third).str() == "1/6");
    CHECK((half - half).is_zero());
    CHECK(Scalar::rational(2, 4).str() == "1/2");
    CHECK(Scalar::rational(3, -7).str() == "-3/7"); // positive denominator
}

TEST_CASE("prime field inverse") {
    // small modulus allowed at the scalar level; FieldConfig enforces p >= 101
    const Scalar three = Scalar::residue(3, 7);
    CHECK(three.inv().res() == 5); // 3 * 5 = 15 = 1 mod 7
    CHECK((three * three.inv()).res() == 1);

    const Scalar a = Scalar::residue(1234, 10007);
    CHECK((a * a.inv()).res() == 1);
}

TEST_CASE("division by zero") {
    CHECK_THROWS_AS(Scalar::rational(0).inv(), DivisionByZero);
    CHECK_THROWS_AS(Scalar::rational(1) / Scalar::rational(0), DivisionByZero);
    CHECK_THROWS_AS(Scalar::residue(0, 101).inv(), DivisionByZero);
}

TEST_CASE("field mismatch") {
    CHECK_THROWS_AS(Scalar::rational(1) + Scalar::residue(1, 101), FieldMismatch);
    CHECK_THROWS_AS(Scalar::residue(1, 101) * Scalar::residue(1, 103), FieldMismatch);
    CHECK_THROWS_AS(Scalar::real(1.0) == Scalar::real(1.0), FieldMismatch);
    CHECK(Scalar::close(Scalar::real(1.0), Scalar::real(1.0 + 1e-12), 1e-9));
}

TEST_CASE("field config validation") {
    CHECK(FieldConfig::prime(101).p == 101);
    CHECK(FieldConfig::prime(10007).name() == "prime:10007");
    CHECK_THROWS_AS(FieldConfig::prime(6), Error);     // not prime
    CHECK_THROWS_AS(FieldConfig::prime(97), Error);    // prime but below the floor
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(10007));
    CHECK_FALSE(is_prime_u64(10006));
    CHECK(is_prime_u64(1000000007ULL));
}

TEST_CASE("text round trip") {
    const FieldConfig q = FieldConfig::rational();
    CHECK(Scalar::parse("-3/7", q).str() == "-3/7");
    CHECK(Scalar::parse("5", q) == Scalar::parse("5/1", q));
    CHECK(Scalar::parse("10/4", q).str() == "5/2");
    CHECK_THROWS_AS(Scalar::parse("x", q), Error);
    CHECK_THROWS_AS(Scalar::parse("1/0", q), DivisionByZero);

    const FieldConfig p = FieldConfig::prime(10007);
    CHECK(Scalar::parse("123", p).res() == 123);

    const FieldConfig f = FieldConfig::float64();
    const Scalar x = Scalar::real(0.1);
    CHECK(Scalar::parse(x.str(), f).dbl() == 0.1); // shortest form round-trips
}

TEST_CASE("sampling ranges and determinism") {
    const FieldConfig p = FieldConfig::prime(10007);
    Rng r1(1), r2(1);
    for (int k = 0; k < 200; ++k) {
        const Scalar a = sample_scalar(r1, p);
        const Scalar b = sample_scalar(r2, p);
        CHECK(a.res() < 10007);
        CHECK(a == b);
    }

    const FieldConfig q = FieldConfig::rational();
    Rng r3(9);
    for (int k = 0; k < 200; ++k) {
        const Scalar a = sample_scalar(r3, q);
        // lowest terms: gcd(num, den) = 1, den > 0
        CHECK(gcd(a.rat().get_num(), a.rat().get_den()) == 1);
        CHECK(a.rat().get_den() > 0);
        CHECK(abs(a.rat().get_num()) <= 50 * 50); // pool bound after reduction
    }

    const FieldConfig f = FieldConfig::float64();
    Rng r4(3);
    for (int k = 0; k < 200; ++k) {
        const double d = sample_scalar(r4, f).dbl();
        CHECK(d >= -1.0);
        CHECK(d < 1.0);
    }
}

TEST_CASE("field axioms on sampled triples") {
    for (const FieldConfig f : {FieldConfig::rational(), FieldConfig::prime(10007)}) {
        Rng rng(42);
        for (int k = 0; k < 1000; ++k) {
            const Scalar a = sample_scalar(rng, f);
            const Scalar b = sample_scalar(rng, f);
            const Scalar c = sample_scalar(rng, f);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            if (!a.is_zero()) CHECK(a * a.inv() == Scalar::one(f));
        }
    }
}

TEST_CASE("rational equality is cross-multiplied integer equality") {
    Rng rng(7);
    const FieldConfig q = FieldConfig::rational();
    for (int k = 0; k < 500; ++k) {
        const Scalar a = sample_scalar(rng, q);
        const Scalar b = sample_scalar(rng, q);
        const bool cross =
            a.rat().get_num() * b.rat().get_den() == b.rat().get_num() * a.rat().get_den();
        CHECK((a == b) == cross);
    }
    // same value through different constructions
    CHECK(Scalar::rational(6, 4) == Scalar::rational(3, 2));
}

} // TEST_SUITE
