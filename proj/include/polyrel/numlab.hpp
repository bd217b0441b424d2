#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "polyrel/ansatz.hpp"

namespace polyrel {
namespace numlab {

inline constexpr int kMatrices = 7;
inline constexpr int kUnknowns = 63;  // seven 3x3 matrices, row-major, simplex order 1..7
inline constexpr int kResiduals = 36; // entrywise lhs - rhs of the 6x6 relation

std::array<Eigen::Matrix3d, kMatrices> unpack(const Eigen::VectorXd& x);
Eigen::VectorXd pack(const std::array<Eigen::Matrix3d, kMatrices>& mats);

/// Float cast of the exact ansatz matrices, in unknown-vector layout.
Eigen::VectorXd ansatz_unknowns(const ParameterSet& params);

/// vec(lhs - rhs) of the relation, using the same wiring as the exact side
/// products but in double arithmetic.
Eigen::VectorXd residual(const Eigen::VectorXd& x);

/// Analytic 36 x 63 Jacobian via the product rule over each side's factors.
Eigen::MatrixXd jacobian(const Eigen::VectorXd& x);

struct LmOptions {
    int max_iter = 1000;
    double tol = 1e-12;       // residual infinity-norm target
    double lambda0 = 1e-3;
    double lambda_up = 10.0;
    double lambda_down = 10.0;
    double init_scale = 1.0;  // start entries uniform in [-s, s)
    bool keep_trace = false;
};

struct TraceEntry {
    int iteration = 0;
    double lambda = 0.0;
    double residual_norm = 0.0; // Euclidean norm after the accepted step
};

struct NumericRun {
    std::uint64_t seed = 0;
    int iterations = 0;
    double residual_inf = 0.0;
    bool converged = false;
    bool nonfinite = false; // NaN/Inf encountered; run marked failed
    Eigen::VectorXd x;
    std::vector<TraceEntry> trace;
};

/// Damped least squares from a seed-determined random start. Accepted steps
/// strictly decrease the residual norm; stops on residual < tol, step norm
/// < 1e-14 or max_iter.
NumericRun lm_solve(std::uint64_t seed, const LmOptions& opts = {});

/// Start LM from a given point instead of a random one (seed only labels the run).
NumericRun lm_solve_from(const Eigen::VectorXd& start, std::uint64_t seed,
                         const LmOptions& opts = {});

struct Nullspace {
    Eigen::MatrixXd basis; // rows are null vectors
    int nullity = 0;
};

/// Right singular vectors with sigma < tol_ratio * sigma_max. The zero matrix
/// has full nullity.
Nullspace numeric_nullspace(const Eigen::MatrixXd& m, double tol_ratio = 1e-8);

int numeric_rank(const Eigen::MatrixXd& m, double tol_ratio = 1e-8);

struct EdgeFinding {
    FaceId edge;
    bool exists = false;
    int nullity = 0;
    Eigen::VectorXd vector; // 21 components, unit norm, first nonzero positive
};

struct DependenceFinding {
    FaceId u;
    int vertex = 0;
    bool dependence_found = false;
    int quadruple_rank = 0;
    Eigen::Vector4d kernel = Eigen::Vector4d::Zero();
};

struct AnalysisReport {
    std::uint64_t seed = 0;
    double svd_tol_ratio = 0.0;
    double ll_tolerance = 0.0;
    std::vector<EdgeFinding> edges;                    // 21
    std::vector<DependenceFinding> dependences;        // 105
    std::vector<std::pair<FaceId, double>> ll_residuals; // per 5-face u
    int global_rank = 0;
    int permitted_nullity = 0;
    std::array<int, 7> local_ranks{};
    std::array<int, 7> local_nullities{};
    // detected properties: edge vectors exist (i), unique vertex dependences
    // (ii), dependence-of-dependences (iii), global span (iv), local spans (v)
    std::array<bool, 5> properties{};
};

/// Structure detection on a converged run; throws NotConverged otherwise.
AnalysisReport analyze(const NumericRun& run, double svd_tol_ratio = 1e-8);

nlohmann::json run_to_json(const NumericRun& run);
NumericRun run_from_json(const nlohmann::json& j);
nlohmann::json analysis_to_json(const AnalysisReport& report);

} // namespace numlab
} // namespace polyrel
