#include "polyrel/edgevectors.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace polyrel {

BoundaryColoring BoundaryColoring::zero(int n, const FieldConfig& f) {
    return BoundaryColoring{n, std::vector<Scalar>(all_faces(n).size(), Scalar::zero(f))};
}

BoundaryColoring edge_vector(FaceId edge, const ParameterSet& params) {
    if (params.n != 7) throw Error("edge vectors are defined on the heptagon boundary (n=7)");
    require_generic(params);
    BoundaryColoring col = BoundaryColoring::zero(7, params.field);
    for (const FaceId& f : support_faces(edge, 7))
        col.at(f) = det3(params, edge.a, f.a, f.b) * det3(params, edge.b, f.a, f.b);
    return col;
}

BoundaryColoring vertex_vector(int i, const ParameterSet& params) {
    if (params.n != 5) throw Error("vertex vectors are defined on the pentagon boundary (n=5)");
    BoundaryColoring col = BoundaryColoring::zero(5, params.field);
    const std::array<int, 1> sigma{i};
    for (const FaceId& f : all_faces(5)) col.at(f) = generalized_vector(5, sigma, f, params);
    return col;
}

bool PermittedReport::all_pass() const {
    return std::all_of(simplices.begin(), simplices.end(),
                       [](const SimplexCheck& c) { return c.pass; });
}

PermittedReport check_permitted(const BoundaryColoring& coloring, const ParameterSet& params) {
    if (coloring.n != params.n) throw Error("coloring and parameters disagree on n");
    const Move move = params.n == 7 ? Move::Heptagon : Move::Pentagon;
    PermittedReport report;
    for (int p = 1; p <= params.n; ++p) {
        const TransferMatrix t = transfer_matrix(move, p, params);
        std::vector<Scalar> in;
        for (const FaceId& f : t.input_legs) in.push_back(coloring.at(f));
        const std::vector<Scalar> out = row_times(in, t.entries);
        bool pass = true;
        for (std::size_t k = 0; k < t.output_legs.size(); ++k)
            if (out[k] != coloring.at(t.output_legs[k])) pass = false;
        report.simplices.push_back({p, pass});
    }
    return report;
}

namespace {

// u is a 5-vertex face named by its complement pair; returns its vertex set.
std::vector<int> u_vertices(FaceId u, const ParameterSet& params) {
    if (params.n != 7) throw Error("5-vertex faces live on the heptagon boundary");
    return face_vertices(u, 7);
}

} // namespace

DependenceCoefficient lambda_coeff(FaceId u, int i, FaceId edge, const ParameterSet& params) {
    const std::vector<int> uv = u_vertices(u, params);
    if (!edge.contains(i)) throw InvalidFace("edge " + edge.str() + " does not contain vertex " +
                                             std::to_string(i));
    const int j = edge.other(i);
    auto inside = [&uv](int v) { return std::find(uv.begin(), uv.end(), v) != uv.end(); };
    if (!inside(i) || !inside(j))
        throw InvalidFace("edge " + edge.str() + " is not inside face " + u.str());
    std::vector<int> rest;
    for (int v : uv)
        if (v != i && v != j) rest.push_back(v); // already increasing
    std::vector<int> perm{i, j};
    perm.insert(perm.end(), rest.begin(), rest.end());
    const int sign = permutation_sign(perm);
    Scalar value = det3(params, rest[0], rest[1], rest[2]);
    if (sign < 0) value = -value;
    return DependenceCoefficient{u, i, edge, value};
}

VertexDependenceReport verify_vertex_dependence(FaceId u, int i, const ParameterSet& params) {
    const std::vector<int> uv = u_vertices(u, params);
    if (std::find(uv.begin(), uv.end(), i) == uv.end())
        throw InvalidVertex(std::to_string(i) + " not in face " + u.str());

    const auto& faces = all_faces(7);
    std::vector<Scalar> sum(faces.size(), Scalar::zero(params.field));
    ScalarMatrix quadruple(4, static_cast<int>(faces.size()), params.field);
    int row = 0;
    for (int j : uv) {
        if (j == i) continue;
        const FaceId edge(i, j);
        const BoundaryColoring e = edge_vector(edge, params);
        const Scalar lam = lambda_coeff(u, i, edge, params).value;
        for (std::size_t c = 0; c < faces.size(); ++c) {
            sum[c] += lam * e.values[c];
            quadruple.at(row, static_cast<int>(c)) = e.values[c];
        }
        ++row;
    }
    VertexDependenceReport report;
    report.dependence_holds =
        std::all_of(sum.begin(), sum.end(), [](const Scalar& s) { return s.is_zero(); });
    report.quadruple_rank = exact_rank(quadruple);
    return report;
}

bool verify_dependence_of_dependences(FaceId u, const ParameterSet& params) {
    const std::vector<int> uv = u_vertices(u, params);
    for (std::size_t a = 0; a < uv.size(); ++a) {
        for (std::size_t b = a + 1; b < uv.size(); ++b) {
            const FaceId edge(uv[a], uv[b]);
            const Scalar li = lambda_coeff(u, uv[a], edge, params).value;
            const Scalar lj = lambda_coeff(u, uv[b], edge, params).value;
            if (!(li + lj).is_zero()) return false;
        }
    }
    return true;
}

ScalarMatrix permitted_system(const ParameterSet& params) {
    const Move move = params.n == 7 ? Move::Heptagon : Move::Pentagon;
    const int k = matrix_size(move);
    const auto& faces = all_faces(params.n);
    ScalarMatrix sys(params.n * k, static_cast<int>(faces.size()), params.field);
    int row = 0;
    for (int p = 1; p <= params.n; ++p) {
        const TransferMatrix t = transfer_matrix(move, p, params);
        for (int c = 0; c < k; ++c) {
            for (int r = 0; r < k; ++r)
                sys.at(row, face_index(t.input_legs[r], params.n)) += t.entries.at(r, c);
            sys.at(row, face_index(t.output_legs[c], params.n)) -= Scalar::one(params.field);
            ++row;
        }
    }
    return sys;
}

namespace {

ScalarMatrix edge_vector_matrix(const ParameterSet& params) {
    const auto& faces = all_faces(7);
    ScalarMatrix m(static_cast<int>(faces.size()), static_cast<int>(faces.size()), params.field);
    for (std::size_t r = 0; r < faces.size(); ++r) {
        const BoundaryColoring e = edge_vector(faces[r], params);
        for (std::size_t c = 0; c < faces.size(); ++c)
            m.at(static_cast<int>(r), static_cast<int>(c)) = e.values[c];
    }
    return m;
}

} // namespace

SpanReport global_span(const ParameterSet& params) {
    require_generic(params);
    SpanReport report;
    const ScalarMatrix ev = edge_vector_matrix(params);
    report.edge_rank = exact_rank(ev);
    report.permitted_dim = static_cast<int>(exact_nullspace(permitted_system(params)).size());
    bool all_permitted = true;
    for (const FaceId& edge : all_faces(7))
        if (!check_permitted(edge_vector(edge, params), params).all_pass()) all_permitted = false;
    report.spans_coincide =
        all_permitted && report.edge_rank == report.permitted_dim && report.edge_rank == 6;
    return report;
}

LocalSpanReport local_span(int p, const ParameterSet& params) {
    require_generic(params);
    const SimplexLegs& legs = simplex_legs(Move::Heptagon, p);
    std::vector<FaceId> all_legs = legs.inputs;
    all_legs.insert(all_legs.end(), legs.outputs.begin(), legs.outputs.end());

    const auto& faces = all_faces(7);
    ScalarMatrix restricted(static_cast<int>(faces.size()), static_cast<int>(all_legs.size()),
                            params.field);
    for (std::size_t r = 0; r < faces.size(); ++r) {
        const BoundaryColoring e = edge_vector(faces[r], params);
        for (std::size_t c = 0; c < all_legs.size(); ++c)
            restricted.at(static_cast<int>(r), static_cast<int>(c)) = e.at(all_legs[c]);
    }

    LocalSpanReport report;
    report.edge_rank = exact_rank(restricted);

    // permitted space of the single simplex: 3 relations on its 6 face colors
    const TransferMatrix t = transfer_matrix(Move::Heptagon, p, params);
    ScalarMatrix local(3, 6, params.field);
    for (int c = 0; c < 3; ++c) {
        for (int r = 0; r < 3; ++r) local.at(c, r) += t.entries.at(r, c);
        local.at(c, 3 + c) -= Scalar::one(params.field);
    }
    report.permitted_dim = static_cast<int>(exact_nullspace(local).size());
    return report;
}

bool verify_only_on_j(int i, const ParameterSet& params) {
    require_generic(params);
    std::vector<int> others;
    for (int j = 1; j <= 7; ++j)
        if (j != i) others.push_back(j);

    // kernel of the 3 x 6 matrix whose columns are the triples of j != i
    ScalarMatrix triples(3, 6, params.field);
    for (int row = 0; row < 3; ++row)
        for (std::size_t c = 0; c < others.size(); ++c)
            triples.at(row, static_cast<int>(c)) = params.triple(others[c])[row];
    const auto kernel = exact_nullspace(triples);
    if (kernel.size() != 3) return false;

    const auto& faces = all_faces(7);
    std::vector<BoundaryColoring> evs;
    for (int j : others) evs.push_back(edge_vector(FaceId(i, j), params));

    for (const auto& coeff : kernel) {
        for (std::size_t f = 0; f < faces.size(); ++f) {
            Scalar s = Scalar::zero(params.field);
            for (std::size_t c = 0; c < others.size(); ++c) s += coeff[c] * evs[c].values[f];
            if (!s.is_zero()) return false;
        }
    }

    ScalarMatrix span(6, static_cast<int>(faces.size()), params.field);
    for (int r = 0; r < 6; ++r)
        for (std::size_t c = 0; c < faces.size(); ++c)
            span.at(r, static_cast<int>(c)) = evs[static_cast<std::size_t>(r)].values[c];
    return exact_rank(span) == 3;
}

TransferMatrix reconstruct_matrix(int p, const ParameterSet& params) {
    require_generic(params);
    const SimplexLegs& legs = simplex_legs(Move::Heptagon, p);

    // collect edge-vector restrictions until the input block is invertible
    std::vector<std::vector<Scalar>> in_rows, out_rows;
    for (const FaceId& edge : all_faces(7)) {
        const BoundaryColoring e = edge_vector(edge, params);
        std::vector<Scalar> in, out;
        for (const FaceId& f : legs.inputs) in.push_back(e.at(f));
        for (const FaceId& f : legs.outputs) out.push_back(e.at(f));

        ScalarMatrix candidate(static_cast<int>(in_rows.size()) + 1, 3, params.field);
        for (std::size_t r = 0; r < in_rows.size(); ++r)
            for (int c = 0; c < 3; ++c) candidate.at(static_cast<int>(r), c) = in_rows[r][c];
        for (int c = 0; c < 3; ++c) candidate.at(static_cast<int>(in_rows.size()), c) = in[c];
        if (exact_rank(candidate) == static_cast<int>(in_rows.size()) + 1) {
            in_rows.push_back(std::move(in));
            out_rows.push_back(std::move(out));
        }
        if (in_rows.size() == 3) break;
    }
    if (in_rows.size() < 3)
        throw SingularInputBlock("edge vectors restricted to simplex " + std::to_string(p) +
                                 " do not span the input legs");

    ScalarMatrix in_block(3, 3, params.field), out_block(3, 3, params.field);
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            in_block.at(r, c) = in_rows[r][c];
            out_block.at(r, c) = out_rows[r][c];
        }
    }
    TransferMatrix t{p, exact_solve(in_block, out_block), legs.inputs, legs.outputs};
    return t;
}

nlohmann::json edge_vectors_to_json(const ParameterSet& params) {
    nlohmann::json j;
    j["schema"] = "polyrel/edge-vectors-v1";
    nlohmann::json vectors;
    for (const FaceId& edge : all_faces(7)) {
        const BoundaryColoring e = edge_vector(edge, params);
        nlohmann::json comp;
        for (const FaceId& f : support_faces(edge, 7)) comp[f.str()] = e.at(f).str();
        vectors[edge.str()] = comp;
    }
    j["vectors"] = vectors;
    return j;
}

} // namespace polyrel
