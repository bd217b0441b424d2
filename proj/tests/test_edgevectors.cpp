#include <doctest.h>

#include <nlohmann/json.hpp>

#include "polyrel/edgevectors.hpp"

using namespace polyrel;

namespace {

ParameterSet vdm7() { return default_vandermonde(7, FieldConfig::rational()); }

} // namespace

TEST_SUITE("edgevectors") {

TEST_CASE("edge vector components and zero pattern") {
    const ParameterSet p = vdm7();
    const BoundaryColoring e47 = edge_vector(FaceId(4, 7), p);
    CHECK(e47.at(FaceId(1, 2)) == Scalar::rational(180)); // d_{412) d_{712}
    for (const FaceId& f : all_faces(7)) {
        const bool meets = f.contains(4) || f.contains(7);
        CHECK(e47.at(f).is_zero() == meets);
    }

    // ratio of two components on the same face, via the displayed formula
    const BoundaryColoring e12 = edge_vector(FaceId(1, 2), p);
    const BoundaryColoring e13 = edge_vector(FaceId(1, 3), p);
    const FaceId u12345(6, 7); // the face with vertex set 12345
    CHECK(e12.at(u12345) == Scalar::rational(600));
    CHECK(e13.at(u12345) == Scalar::rational(360));
    CHECK(e12.at(u12345) / e13.at(u12345) == det3(p, 2, 6, 7) / det3(p, 3, 6, 7));

    // e_{ij} = e_{ji} is structural (FaceId is unordered)
    CHECK(edge_vector(FaceId(2, 1), p).at(u12345) == e12.at(u12345));
}

TEST_CASE("every edge vector is permitted; random colorings are not") {
    for (const FieldConfig f : {FieldConfig::rational(), FieldConfig::prime(10007)}) {
        const ParameterSet p = sample_generic_params(11, f, 7);
        for (const FaceId& edge : all_faces(7)) {
            const PermittedReport r = check_permitted(edge_vector(edge, p), p);
            CHECK(r.all_pass());
            CHECK(r.simplices.size() == 7);
        }

        // zero coloring passes
        CHECK(check_permitted(BoundaryColoring::zero(7, f), p).all_pass());

        // random colorings fail with probability 1; resample on the
        // measure-zero pass
        Rng rng(5);
        bool failed = false;
        for (int attempt = 0; attempt < 5 && !failed; ++attempt) {
            BoundaryColoring c = BoundaryColoring::zero(7, f);
            for (auto& v : c.values) v = sample_scalar(rng, f);
            failed = !check_permitted(c, p).all_pass();
        }
        CHECK(failed);
    }
}

TEST_CASE("lambda coefficients") {
    const ParameterSet p = vdm7();
    const FaceId u(6, 7); // vertex set 12345
    CHECK(lambda_coeff(u, 1, FaceId(1, 2), p).value == Scalar::rational(2));
    CHECK(lambda_coeff(u, 2, FaceId(1, 2), p).value == Scalar::rational(-2));
    // antisymmetry on all edges of all faces
    for (const FaceId& ul : all_faces(7)) {
        const auto uv = face_vertices(ul, 7);
        for (std::size_t a = 0; a < uv.size(); ++a) {
            for (std::size_t b = a + 1; b < uv.size(); ++b) {
                const FaceId edge(uv[a], uv[b]);
                CHECK(lambda_coeff(ul, uv[a], edge, p).value +
                          lambda_coeff(ul, uv[b], edge, p).value ==
                      Scalar::rational(0));
            }
        }
    }
    CHECK_THROWS_AS(lambda_coeff(u, 6, FaceId(6, 7), p), InvalidFace); // 6 not in u
}

TEST_CASE("the four-term determinant identity behind the vertex dependence") {
    // component of the u=12345, i=1 dependence at the face 12345 itself:
    // d167 (d345 d267 - d245 d367 + d235 d467 - d234 d567) must vanish
    const ParameterSet p = sample_generic_params(21, FieldConfig::rational(), 7);
    const Scalar expanded =
        det3(p, 3, 4, 5) * det3(p, 2, 6, 7) - det3(p, 2, 4, 5) * det3(p, 3, 6, 7) +
        det3(p, 2, 3, 5) * det3(p, 4, 6, 7) - det3(p, 2, 3, 4) * det3(p, 5, 6, 7);
    CHECK((det3(p, 1, 6, 7) * expanded).is_zero());
}

TEST_CASE("all 105 vertex dependences vanish with rank-3 quadruples") {
    const ParameterSet p = vdm7();
    for (const FaceId& u : all_faces(7)) {
        for (int i : face_vertices(u, 7)) {
            const VertexDependenceReport r = verify_vertex_dependence(u, i, p);
            CHECK(r.dependence_holds);
            CHECK(r.quadruple_rank == 3);
        }
    }
}

TEST_CASE("dependence of dependences") {
    const ParameterSet p = sample_generic_params(33, FieldConfig::prime(10007), 7);
    for (const FaceId& u : all_faces(7)) CHECK(verify_dependence_of_dependences(u, p));
}

TEST_CASE("global span: rank 6 equals the permitted dimension") {
    const ParameterSet p = vdm7();
    const SpanReport r = global_span(p);
    CHECK(r.edge_rank == 6);
    CHECK(r.permitted_dim == 6);
    CHECK(r.spans_coincide);

    const ParameterSet p2 = sample_generic_params(55, FieldConfig::rational(), 7);
    const SpanReport r2 = global_span(p2);
    CHECK(r2.edge_rank == 6);
    CHECK(r2.permitted_dim == 6);
}

TEST_CASE("local spans: rank 3 on every simplex") {
    const ParameterSet p = vdm7();
    for (int s = 1; s <= 7; ++s) {
        const LocalSpanReport r = local_span(s, p);
        CHECK(r.edge_rank == 3);
        CHECK(r.permitted_dim == 3);
    }
    // restriction of e_{47} to simplex 4's legs is the zero vector
    const BoundaryColoring e47 = edge_vector(FaceId(4, 7), p);
    const SimplexLegs& legs = simplex_legs(Move::Heptagon, 4);
    for (const FaceId& f : legs.inputs) CHECK(e47.at(f).is_zero());
    for (const FaceId& f : legs.outputs) CHECK(e47.at(f).is_zero());
}

TEST_CASE("kernel coefficients depend only on the second index") {
    const ParameterSet p = vdm7();
    for (int i = 1; i <= 7; ++i) CHECK(verify_only_on_j(i, p));

    // homogeneity: a common nonzero rescaling of all triples changes nothing
    ParameterSet scaled = p;
    const Scalar c = Scalar::rational(3, 7);
    for (auto& t : scaled.triples)
        for (auto& s : t) s *= c;
    for (int i = 1; i <= 7; ++i) CHECK(verify_only_on_j(i, scaled));
}

TEST_CASE("lambda matches the exact kernel of the quadruple up to one constant") {
    const ParameterSet p = sample_generic_params(66, FieldConfig::rational(), 7);
    const FaceId u(6, 7);
    const auto uv = face_vertices(u, 7); // 1..5
    const int i = uv[0];

    // kernel of the stacked quadruple (coefficients live on the left)
    ScalarMatrix quad(4, 21, p.field);
    std::vector<FaceId> edges;
    int row = 0;
    for (int j : uv) {
        if (j == i) continue;
        edges.emplace_back(i, j);
        const BoundaryColoring e = edge_vector(edges.back(), p);
        for (int c = 0; c < 21; ++c) quad.at(row, c) = e.values[static_cast<std::size_t>(c)];
        ++row;
    }
    const auto kernel = exact_nullspace(quad.transposed());
    REQUIRE(kernel.size() == 1);

    // proportionality: lambda_k * kernel_0 == lambda_0 * kernel_k for all k
    std::vector<Scalar> lambda;
    for (const FaceId& e : edges) lambda.push_back(lambda_coeff(u, i, e, p).value);
    for (std::size_t k = 1; k < 4; ++k)
        CHECK(lambda[k] * kernel[0][0] == lambda[0] * kernel[0][k]);
    // record the constant: it is lambda_0 / kernel_0
    CHECK_FALSE(kernel[0][0].is_zero());
}

TEST_CASE("reconstruction reproduces the ansatz matrices") {
    for (const FieldConfig f : {FieldConfig::rational(), FieldConfig::prime(10007)}) {
        const ParameterSet p = sample_generic_params(9, f, 7);
        for (int s = 1; s <= 7; ++s) {
            const TransferMatrix rec = reconstruct_matrix(s, p);
            const TransferMatrix ans = transfer_matrix(Move::Heptagon, s, p);
            CHECK(rec.entries == ans.entries);
        }
    }
}

TEST_CASE("e47 walkthrough: support rows under transport") {
    const ParameterSet p = vdm7();
    const BoundaryColoring e47 = edge_vector(FaceId(4, 7), p);

    // boundary values on the initial assignment, pushed through the lhs
    const WiringDiagram& w = wiring(Move::Heptagon, Side::Lhs);
    std::vector<Scalar> row;
    for (const FaceId& f : w.initial_faces) row.push_back(e47.at(f));
    CHECK(row[0] == Scalar::rational(-576)); // face 15
    CHECK(row[1] == Scalar::rational(-900)); // face 16
    CHECK(row[2].is_zero());                 // face 17 contains 7

    bool any_nonzero = false;
    for (const Scalar& s : row) any_nonzero = any_nonzero || !s.is_zero();
    CHECK(any_nonzero);

    const TransportResult t = transport(row, Move::Heptagon, Side::Lhs, p);
    // inner faces reproduce the edge-vector components (rows of the
    // compatibility equations), zeros wherever 4 or 7 appears
    for (const auto& [face, value] : t.inner_values) {
        CHECK(value == e47.at(face));
        if (face.contains(4) || face.contains(7)) CHECK(value.is_zero());
    }
    // the boundary outputs close the loop
    for (const auto& [face, value] : t.final_values) CHECK(value == e47.at(face));

    // both sides transport the support row identically
    const TransportResult r = transport(row, Move::Heptagon, Side::Rhs, p);
    for (std::size_t k = 0; k < t.final_values.size(); ++k)
        CHECK(t.final_values[k].second == r.final_values[k].second);
}

TEST_CASE("pentagon vertex vectors are permitted") {
    for (const FieldConfig f : {FieldConfig::rational(), FieldConfig::prime(10007)}) {
        const ParameterSet p = sample_generic_params(3, f, 5);
        for (int i = 1; i <= 5; ++i) {
            const BoundaryColoring v = vertex_vector(i, p);
            bool nonzero = false;
            for (const Scalar& s : v.values) nonzero = nonzero || !s.is_zero();
            CHECK(nonzero);
            CHECK(check_permitted(v, p).all_pass());
        }
    }
}

TEST_CASE("edge vector dump schema") {
    const nlohmann::json j = edge_vectors_to_json(vdm7());
    CHECK(j["schema"] == "polyrel/edge-vectors-v1");
    CHECK(j["vectors"].size() == 21);
    CHECK(j["vectors"]["47"]["12"] == "180");
    CHECK(j["vectors"]["47"].size() == 10);
}

} // TEST_SUITE
