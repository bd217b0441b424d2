#include <doctest.h>

#include <nlohmann/json.hpp>

#include "polyrel/relations.hpp"

using namespace polyrel;

TEST_SUITE("relations") {

TEST_CASE("embed places the block by positions") {
    const FieldConfig q = FieldConfig::rational();
    const std::vector<int> pos123{1, 2, 3};
    CHECK(embed(ScalarMatrix::identity(3, q), pos123, 6) == ScalarMatrix::identity(6, q));

    ScalarMatrix m(3, 3, q);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m.at(r, c) = Scalar::rational(10 * (r + 1) + c + 1);
    const std::vector<int> pos{2, 4, 6};
    const ScalarMatrix e = embed(m, pos, 6);
    CHECK(e.at(1, 5) == m.at(0, 2)); // block (1,3) lands at global (2,6), 1-based
    CHECK(e.at(3, 3) == m.at(1, 1));
    CHECK(e.at(0, 0) == Scalar::one(q));
    CHECK(e.at(0, 2).is_zero());

    CHECK_THROWS_AS(embed(m, std::vector<int>{1, 1, 2}, 6), BadPositions);
    CHECK_THROWS_AS(embed(m, std::vector<int>{1, 2, 7}, 6), BadPositions);
    CHECK_THROWS_AS(embed(m, std::vector<int>{1, 2}, 6), BadPositions);
}

TEST_CASE("embeddings on disjoint positions commute") {
    const FieldConfig q = FieldConfig::rational();
    Rng rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        ScalarMatrix m1(3, 3, q), m2(3, 3, q);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                m1.at(r, c) = sample_scalar(rng, q);
                m2.at(r, c) = sample_scalar(rng, q);
            }
        const std::vector<int> p1{1, 3, 5}, p2{2, 4, 6};
        const ScalarMatrix e1 = embed(m1, p1, 6), e2 = embed(m2, p2, 6);
        CHECK(e1 * e2 == e2 * e1);
    }
}

TEST_CASE("heptagon sides agree exactly for vandermonde") {
    const ParameterSet p = default_vandermonde(7, FieldConfig::rational());
    const SideProduct lhs = side_product(Move::Heptagon, Side::Lhs, p);
    const SideProduct rhs = side_product(Move::Heptagon, Side::Rhs, p);
    CHECK(lhs.matrix == rhs.matrix);
    // spot values of the common product
    CHECK(lhs.matrix.at(0, 0) == Scalar::rational(3, 8));
    CHECK(lhs.matrix.at(0, 1) == Scalar::rational(1, 10));
    CHECK(lhs.matrix.at(0, 2) == Scalar::rational(1, 80));
    CHECK(lhs.matrix.at(0, 3).is_zero());
}

TEST_CASE("verify_relation over random generic sets") {
    for (const FieldConfig f : {FieldConfig::rational(), FieldConfig::prime(10007)}) {
        for (std::uint64_t seed = 100; seed < 110; ++seed) {
            const ParameterSet p = sample_generic_params(seed, f, 7);
            const VerificationReport r = verify_relation(Move::Heptagon, p);
            CHECK(r.equal);
            CHECK(r.max_discrepancy == "0");
            CHECK_FALSE(r.first_mismatch.has_value());
        }
        for (std::uint64_t seed = 200; seed < 210; ++seed) {
            const ParameterSet p = sample_generic_params(seed, f, 5);
            CHECK(verify_relation(Move::Pentagon, p).equal);
        }
    }
}

TEST_CASE("verify_relation rejects non-generic parameters") {
    ParameterSet p = default_vandermonde(7, FieldConfig::rational());
    p.triples[1] = p.triples[0]; // d_{12k} = 0 for all k
    CHECK_THROWS_AS(verify_relation(Move::Heptagon, p), NonGenericParameters);
}

TEST_CASE("verify_relation works on the float64 adapter") {
    ParameterSet exact = default_vandermonde(7, FieldConfig::rational());
    ParameterSet fl;
    fl.n = 7;
    fl.field = FieldConfig::float64();
    for (const auto& t : exact.triples)
        fl.triples.push_back({Scalar::real(t[0].to_double()), Scalar::real(t[1].to_double()),
                              Scalar::real(t[2].to_double())});
    const VerificationReport r = verify_relation(Move::Heptagon, fl, 1e-9);
    CHECK(r.equal);
}

TEST_CASE("report serialization") {
    const ParameterSet p = default_vandermonde(7, FieldConfig::rational());
    const nlohmann::json j = verification_report_to_json(verify_relation(Move::Heptagon, p));
    CHECK(j["move"] == "heptagon");
    CHECK(j["equal"] == true);
    CHECK(j["first_mismatch"].is_null());
    CHECK(j["params_digest"].get<std::string>().size() == 16);
}

TEST_CASE("transport is linear and side-independent") {
    const ParameterSet p = sample_generic_params(77, FieldConfig::rational(), 7);
    const FieldConfig q = p.field;
    Rng rng(4);

    std::vector<Scalar> zero(6, Scalar::zero(q));
    for (const auto& [face, value] : transport(zero, Move::Heptagon, Side::Lhs, p).final_values)
        CHECK(value.is_zero());

    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Scalar> x, y;
        for (int i = 0; i < 6; ++i) {
            x.push_back(sample_scalar(rng, q));
            y.push_back(sample_scalar(rng, q));
        }
        const Scalar a = sample_scalar(rng, q), b = sample_scalar(rng, q);
        std::vector<Scalar> combo;
        for (int i = 0; i < 6; ++i) combo.push_back(a * x[static_cast<std::size_t>(i)] +
                                                    b * y[static_cast<std::size_t>(i)]);

        const auto tx = transport(x, Move::Heptagon, Side::Lhs, p);
        const auto ty = transport(y, Move::Heptagon, Side::Lhs, p);
        const auto tc = transport(combo, Move::Heptagon, Side::Lhs, p);
        for (int i = 0; i < 6; ++i) {
            const auto& [f, v] = tc.final_values[static_cast<std::size_t>(i)];
            CHECK(v == a * tx.final_values[static_cast<std::size_t>(i)].second +
                           b * ty.final_values[static_cast<std::size_t>(i)].second);
        }

        // both sides produce the same boundary colors
        const auto tr = transport(x, Move::Heptagon, Side::Rhs, p);
        for (int i = 0; i < 6; ++i) {
            CHECK(tx.final_values[static_cast<std::size_t>(i)].first ==
                  tr.final_values[static_cast<std::size_t>(i)].first);
            CHECK(tx.final_values[static_cast<std::size_t>(i)].second ==
                  tr.final_values[static_cast<std::size_t>(i)].second);
        }
    }
}

} // TEST_SUITE
