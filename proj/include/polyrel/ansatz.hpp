#pragma once

#include <array>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "polyrel/combinatorics.hpp"
#include "polyrel/exactmat.hpp"
#include "polyrel/scalar.hpp"

namespace polyrel {

/// Per-vertex parameter triples (alpha_i, beta_i, gamma_i), the free data of
/// the determinant ansatz. Vertices are 1-based.
struct ParameterSet {
    int n = 7; // 5 or 7
    FieldConfig field;
    std::vector<std::array<Scalar, 3>> triples;

    const std::array<Scalar, 3>& triple(int vertex) const;
};

/// Determinant d_{ijk}: columns are the triples of i, j, k in the written
/// order, so d is fully antisymmetric in its indices. The index order
/// matters: callers that follow displayed formulas must pass indices exactly
/// as written there.
Scalar det3(const ParameterSet& params, int i, int j, int k);

/// alpha_i = 1, beta_i = t_i, gamma_i = t_i^2. Distinct t make every d_{ijk}
/// a product of differences, hence nonzero, so the set is generic by
/// construction.
ParameterSet vandermonde_params(std::vector<Scalar> t);
/// vandermonde_params with t = (1, .., n).
ParameterSet default_vandermonde(int n, const FieldConfig& f);

struct GenericityReport {
    std::vector<std::array<int, 3>> vanishing; // sorted triples with d = 0
    bool ok() const { return vanishing.empty(); }
};
GenericityReport genericity_check(const ParameterSet& params);
/// Throws NonGenericParameters listing the vanishing triples.
void require_generic(const ParameterSet& params);

/// One random draw of n triples (no genericity guarantee).
ParameterSet sample_params(Rng& rng, const FieldConfig& f, int n);
/// Resamples with incremented seed until generic; throws after max_retries.
ParameterSet sample_generic_params(std::uint64_t seed, const FieldConfig& f, int n,
                                   int max_retries = 100);

/// Transfer matrix of one codim-1 simplex. Rows are labeled by input legs,
/// columns by output legs; the matrix acts on row vectors from the right.
struct TransferMatrix {
    int simplex = 0;
    ScalarMatrix entries;
    std::vector<FaceId> input_legs;
    std::vector<FaceId> output_legs;
};

/// Entry at (input ip, output lp) = d_{jlp} d_{klp} / (d_{ijp} d_{ikp}) with
/// j, k the other two input vertices.
TransferMatrix heptagon_matrix(int p, std::span<const FaceId> inputs,
                               std::span<const FaceId> outputs, const ParameterSet& params);

/// Entry at (input ip, output lp) = d_{jlp} / d_{ijp} with j the other input.
TransferMatrix pentagon_matrix(int p, std::span<const FaceId> inputs,
                               std::span<const FaceId> outputs, const ParameterSet& params);

/// Transfer matrix with legs taken from the move's wiring.
TransferMatrix transfer_matrix(Move m, int p, const ParameterSet& params);

/// Component at face v (named by its complementary pair) of the vector
/// attached to the simplex with vertex set sigma: prod_{i in sigma} d_{ilm}.
/// The complement pair (l, m) is taken in cyclic ascending order, which fixes
/// the sign left open when sigma has an odd number of vertices. Zero when
/// sigma is not contained in v.
Scalar generalized_vector(int n, std::span<const int> sigma, FaceId v, const ParameterSet& params);

nlohmann::json params_to_json(const ParameterSet& params);
ParameterSet params_from_json(const nlohmann::json& j);

} // namespace polyrel
