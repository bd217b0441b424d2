#pragma once

#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "polyrel/ansatz.hpp"
#include "polyrel/relations.hpp"

namespace polyrel {

/// A color per codim-2 face of the boundary simplex, indexed canonically by
/// all_faces(n).
struct BoundaryColoring {
    int n = 7;
    std::vector<Scalar> values;

    static BoundaryColoring zero(int n, const FieldConfig& f);
    Scalar& at(FaceId face) { return values[static_cast<std::size_t>(face_index(face, n))]; }
    const Scalar& at(FaceId face) const {
        return values[static_cast<std::size_t>(face_index(face, n))];
    }
};

/// Edge vector e_{ij}: d_{ilm} d_{jlm} on every face avoiding both i and j
/// (with {l, m} that face's label pair), zero elsewhere. n = 7 only.
BoundaryColoring edge_vector(FaceId edge, const ParameterSet& params);

/// Vertex vector of the pentagon boundary: generalized_vector at n = 5 with
/// sigma = {i}, assembled over all ten faces.
BoundaryColoring vertex_vector(int i, const ParameterSet& params);

struct SimplexCheck {
    int simplex = 0;
    bool pass = false;
};
struct PermittedReport {
    std::vector<SimplexCheck> simplices;
    bool all_pass() const;
};

/// Restriction to each codim-1 simplex must satisfy inputs * A = outputs
/// exactly; works for both the heptagon (n = 7) and pentagon (n = 5) wiring.
PermittedReport check_permitted(const BoundaryColoring& coloring, const ParameterSet& params);

/// lambda^{(u)}_{i,ij} = eps_{ijklm} d_{klm}, with u the 5-vertex face named
/// by its complement pair, and (k, l, m) = u \ {i, j} in increasing order.
struct DependenceCoefficient {
    FaceId u;
    int vertex = 0;
    FaceId edge;
    Scalar value;
};
DependenceCoefficient lambda_coeff(FaceId u, int i, FaceId edge, const ParameterSet& params);

/// Checks sum_b lambda_{i,b} e_b = 0 over the four edges b with i in b inside
/// u, and that those four edge vectors have rank exactly 3.
struct VertexDependenceReport {
    bool dependence_holds = false;
    int quadruple_rank = 0;
    bool pass() const { return dependence_holds && quadruple_rank == 3; }
};
VertexDependenceReport verify_vertex_dependence(FaceId u, int i, const ParameterSet& params);

/// Eq-level cancellation of the five vertex dependences of u: for every edge
/// inside u, lambda_{i,ij} + lambda_{j,ij} = 0.
bool verify_dependence_of_dependences(FaceId u, const ParameterSet& params);

/// Rank of all 21 edge vectors and the exact dimension of the permitted
/// coloring space; spans coincide iff both are 6 and every edge vector is
/// permitted.
struct SpanReport {
    int edge_rank = 0;
    int permitted_dim = 0;
    bool spans_coincide = false;
};
SpanReport global_span(const ParameterSet& params);

/// Rank of the 21 edge vectors restricted to the six legs of simplex p, and
/// the exact dimension of that simplex's permitted space.
struct LocalSpanReport {
    int edge_rank = 0;
    int permitted_dim = 0;
};
LocalSpanReport local_span(int p, const ParameterSet& params);

/// The coefficients-only-depend-on-j test: every exact kernel vector of the
/// 3 x 6 triple matrix (columns j != i) annihilates { e_{ij} }, and those six
/// vectors span exactly 3 dimensions.
bool verify_only_on_j(int i, const ParameterSet& params);

/// Recovers the 3 x 3 transfer matrix of simplex p from the restricted edge
/// vectors alone and returns it; must reproduce heptagon_matrix entrywise.
TransferMatrix reconstruct_matrix(int p, const ParameterSet& params);

/// The 3n x C(n,2) permittedness system: rows are the linear relations
/// inputs * A^(p) - outputs per simplex, columns are face colors.
ScalarMatrix permitted_system(const ParameterSet& params);

nlohmann::json edge_vectors_to_json(const ParameterSet& params);

} // namespace polyrel
