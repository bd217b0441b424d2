#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "polyrel/ansatz.hpp"

namespace polyrel {

/// Direct sum m (+) 1: identity except for the block placed on the given
/// 1-based row/column positions.
ScalarMatrix embed(const ScalarMatrix& m, std::span<const int> positions, int total_size);

/// Ordered product of one side's embedded transfer matrices. Acting on row
/// vectors, the leftmost factor applies first.
struct SideProduct {
    Move move = Move::Heptagon;
    Side side = Side::Lhs;
    ScalarMatrix matrix;
    const WiringDiagram* diagram = nullptr;
};

SideProduct side_product(Move m, Side s, const ParameterSet& params);

struct Mismatch {
    int row = 0, col = 0; // 1-based
    std::string lhs, rhs;
};

struct VerificationReport {
    Move move = Move::Heptagon;
    FieldConfig field;
    std::string params_digest;
    bool equal = false;
    std::optional<Mismatch> first_mismatch;
    /// "0" for exact equality; otherwise the largest |lhs - rhs| (float64).
    std::string max_discrepancy;
};

/// Exact entrywise comparison of the two side products (infinity-norm vs
/// float_tol for float64 parameter sets). Genericity is validated first.
VerificationReport verify_relation(Move m, const ParameterSet& params, double float_tol = 1e-9);

/// Row of colors on the initial boundary faces pushed through one side.
struct TransportResult {
    std::vector<std::pair<FaceId, Scalar>> final_values; // per final position
    std::vector<std::pair<FaceId, Scalar>> inner_values; // produced inner faces, step order
};

TransportResult transport(std::span<const Scalar> row, Move m, Side s, const ParameterSet& params);

nlohmann::json verification_report_to_json(const VerificationReport& r);

} // namespace polyrel
