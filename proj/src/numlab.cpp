#include "polyrel/numlab.hpp"

#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "polyrel/rng.hpp"

namespace polyrel {
namespace numlab {

namespace {

struct Factor {
    int simplex = 0;              // 1..7
    std::array<int, 3> positions; // 0-based
};

// product order per side, positions from the heptagon wiring
const std::array<Factor, 4>& lhs_factors() {
    static const std::array<Factor, 4> f = [] {
        std::array<Factor, 4> out{};
        const WiringDiagram& w = wiring(Move::Heptagon, Side::Lhs);
        for (std::size_t i = 0; i < 4; ++i) {
            out[i].simplex = w.steps[i].simplex;
            for (int k = 0; k < 3; ++k) out[i].positions[k] = w.steps[i].positions[k] - 1;
        }
        return out;
    }();
    return f;
}

const std::array<Factor, 3>& rhs_factors() {
    static const std::array<Factor, 3> f = [] {
        std::array<Factor, 3> out{};
        const WiringDiagram& w = wiring(Move::Heptagon, Side::Rhs);
        for (std::size_t i = 0; i < 3; ++i) {
            out[i].simplex = w.steps[i].simplex;
            for (int k = 0; k < 3; ++k) out[i].positions[k] = w.steps[i].positions[k] - 1;
        }
        return out;
    }();
    return f;
}

Eigen::Matrix<double, 6, 6> embed6(const Eigen::Matrix3d& m, const std::array<int, 3>& pos) {
    Eigen::Matrix<double, 6, 6> e = Eigen::Matrix<double, 6, 6>::Identity();
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) e(pos[r], pos[c]) = m(r, c);
    return e;
}

template <std::size_t N>
Eigen::Matrix<double, 6, 6> side_matrix(const std::array<Eigen::Matrix3d, kMatrices>& mats,
                                        const std::array<Factor, N>& factors) {
    Eigen::Matrix<double, 6, 6> acc = Eigen::Matrix<double, 6, 6>::Identity();
    for (const Factor& f : factors) acc = acc * embed6(mats[f.simplex - 1], f.positions);
    return acc;
}

} // namespace

std::array<Eigen::Matrix3d, kMatrices> unpack(const Eigen::VectorXd& x) {
    if (x.size() != kUnknowns) throw Error("unknown vector must have 63 entries");
    std::array<Eigen::Matrix3d, kMatrices> mats;
    for (int s = 0; s < kMatrices; ++s)
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) mats[s](r, c) = x(9 * s + 3 * r + c);
    return mats;
}

Eigen::VectorXd pack(const std::array<Eigen::Matrix3d, kMatrices>& mats) {
    Eigen::VectorXd x(kUnknowns);
    for (int s = 0; s < kMatrices; ++s)
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) x(9 * s + 3 * r + c) = mats[s](r, c);
    return x;
}

Eigen::VectorXd ansatz_unknowns(const ParameterSet& params) {
    std::array<Eigen::Matrix3d, kMatrices> mats;
    for (int p = 1; p <= 7; ++p) {
        const TransferMatrix t = transfer_matrix(Move::Heptagon, p, params);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) mats[p - 1](r, c) = t.entries.at(r, c).to_double();
    }
    return pack(mats);
}

Eigen::VectorXd residual(const Eigen::VectorXd& x) {
    const auto mats = unpack(x);
    const Eigen::Matrix<double, 6, 6> diff =
        side_matrix(mats, lhs_factors()) - side_matrix(mats, rhs_factors());
    Eigen::VectorXd r(kResiduals);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) r(6 * i + j) = diff(i, j);
    return r;
}

namespace {

template <std::size_t N>
void accumulate_jacobian(const std::array<Eigen::Matrix3d, kMatrices>& mats,
                         const std::array<Factor, N>& factors, double sign, Eigen::MatrixXd& jac) {
    std::array<Eigen::Matrix<double, 6, 6>, N> embedded;
    for (std::size_t i = 0; i < N; ++i)
        embedded[i] = embed6(mats[factors[i].simplex - 1], factors[i].positions);

    // prefix[i] = product of factors before i, suffix[i] = product after i
    std::array<Eigen::Matrix<double, 6, 6>, N + 1> prefix, suffix;
    prefix[0] = Eigen::Matrix<double, 6, 6>::Identity();
    for (std::size_t i = 0; i < N; ++i) prefix[i + 1] = prefix[i] * embedded[i];
    suffix[N] = Eigen::Matrix<double, 6, 6>::Identity();
    for (std::size_t i = N; i-- > 0;) suffix[i] = embedded[i] * suffix[i + 1];

    for (std::size_t i = 0; i < N; ++i) {
        const Factor& f = factors[i];
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                const int col = 9 * (f.simplex - 1) + 3 * a + b;
                // derivative of the product w.r.t. entry (a,b) of this factor:
                // prefix * E_{pa,pb} * suffix = outer(prefix[:,pa], suffix[pb,:])
                const auto left = prefix[i].col(f.positions[a]);
                const auto right = suffix[i + 1].row(f.positions[b]);
                for (int u = 0; u < 6; ++u)
                    for (int v = 0; v < 6; ++v) jac(6 * u + v, col) += sign * left(u) * right(v);
            }
        }
    }
}

} // namespace

Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) {
    const auto mats = unpack(x);
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(kResiduals, kUnknowns);
    accumulate_jacobian(mats, lhs_factors(), 1.0, jac);
    accumulate_jacobian(mats, rhs_factors(), -1.0, jac);
    return jac;
}

NumericRun lm_solve_from(const Eigen::VectorXd& start, std::uint64_t seed, const LmOptions& opts) {
    if (opts.max_iter <= 0 || opts.tol <= 0 || opts.lambda0 <= 0 || opts.lambda_up <= 0 ||
        opts.lambda_down <= 0)
        throw Error("lm options must be positive");

    NumericRun run;
    run.seed = seed;
    run.x = start;

    Eigen::VectorXd r = residual(run.x);
    double rnorm = r.norm();
    if (!std::isfinite(rnorm)) {
        run.nonfinite = true;
        run.residual_inf = std::numeric_limits<double>::infinity();
        return run;
    }
    double lambda = opts.lambda0;
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(kUnknowns, kUnknowns);

    int it = 0;
    while (it < opts.max_iter) {
        ++it;
        const Eigen::MatrixXd jac = jacobian(run.x);
        const Eigen::VectorXd grad = jac.transpose() * r;
        const Eigen::MatrixXd normal = jac.transpose() * jac;

        double step_norm = 0.0;
        bool accepted = false;
        while (lambda < 1e100) {
            const Eigen::VectorXd step = (normal + lambda * eye).ldlt().solve(-grad);
            const Eigen::VectorXd xn = run.x + step;
            const Eigen::VectorXd rn = residual(xn);
            const double rnn = rn.norm();
            if (!std::isfinite(rnn)) {
                run.nonfinite = true;
                break;
            }
            if (rnn < rnorm) {
                run.x = xn;
                r = rn;
                rnorm = rnn;
                step_norm = step.norm();
                lambda /= opts.lambda_down;
                accepted = true;
                break;
            }
            lambda *= opts.lambda_up;
        }
        if (opts.keep_trace && accepted) run.trace.push_back({it, lambda, rnorm});
        if (!accepted) break; // damping exhausted or non-finite
        if (r.lpNorm<Eigen::Infinity>() < opts.tol) break;
        if (step_norm < 1e-14) break;
    }

    run.iterations = it;
    run.residual_inf = r.lpNorm<Eigen::Infinity>();
    run.converged = !run.nonfinite && run.residual_inf < opts.tol;
    return run;
}

NumericRun lm_solve(std::uint64_t seed, const LmOptions& opts) {
    Rng rng(seed);
    Eigen::VectorXd x0(kUnknowns);
    for (int i = 0; i < kUnknowns; ++i) x0(i) = opts.init_scale * rng.symmetric();
    return lm_solve_from(x0, seed, opts);
}

Nullspace numeric_nullspace(const Eigen::MatrixXd& m, double tol_ratio) {
    const int cols = static_cast<int>(m.cols());
    Nullspace out;
    if (m.size() == 0 || m.isZero(0.0)) {
        out.basis = Eigen::MatrixXd::Identity(cols, cols);
        out.nullity = cols;
        return out;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    std::vector<int> null_cols;
    for (int k = 0; k < cols; ++k) {
        const double s = k < sv.size() ? sv(k) : 0.0;
        if (s < tol_ratio * smax) null_cols.push_back(k);
    }
    out.nullity = static_cast<int>(null_cols.size());
    out.basis = Eigen::MatrixXd(out.nullity, cols);
    for (int r = 0; r < out.nullity; ++r) out.basis.row(r) = svd.matrixV().col(null_cols[r]).transpose();
    return out;
}

int numeric_rank(const Eigen::MatrixXd& m, double tol_ratio) {
    if (m.size() == 0 || m.isZero(0.0)) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k)
        if (sv(k) >= tol_ratio * smax) ++rank;
    return rank;
}

namespace {

// permittedness rows (inputs * A^(p) - outputs) over the chosen face columns;
// faces not in `columns` are constrained to zero by omission
Eigen::MatrixXd permitted_rows(const std::array<Eigen::Matrix3d, kMatrices>& mats,
                               const std::vector<FaceId>& columns, const std::vector<int>& simplices) {
    std::vector<FaceId> faces = columns;
    auto col_of = [&faces](FaceId f) -> int {
        for (std::size_t i = 0; i < faces.size(); ++i)
            if (faces[i] == f) return static_cast<int>(i);
        return -1;
    };
    Eigen::MatrixXd rows(3 * simplices.size(), faces.size());
    rows.setZero();
    int row = 0;
    for (int p : simplices) {
        const SimplexLegs& legs = simplex_legs(Move::Heptagon, p);
        for (int c = 0; c < 3; ++c) {
            for (int r = 0; r < 3; ++r) {
                const int col = col_of(legs.inputs[r]);
                if (col >= 0) rows(row, col) += mats[p - 1](r, c);
            }
            const int col = col_of(legs.outputs[c]);
            if (col >= 0) rows(row, col) -= 1.0;
            ++row;
        }
    }
    return rows;
}

} // namespace

AnalysisReport analyze(const NumericRun& run, double svd_tol_ratio) {
    if (!run.converged)
        throw NotConverged("seed " + std::to_string(run.seed) + ", residual " +
                           shortest_double(run.residual_inf));
    const auto mats = unpack(run.x);
    const auto& faces = all_faces(7);
    const int nf = static_cast<int>(faces.size());

    AnalysisReport report;
    report.seed = run.seed;
    report.svd_tol_ratio = svd_tol_ratio;
    report.ll_tolerance = 1e-6;

    std::vector<int> all_simplices;
    for (int p = 1; p <= 7; ++p) all_simplices.push_back(p);

    // (i) one edge vector per edge: nullspace of the permittedness system
    // restricted to the support faces
    for (const FaceId& edge : faces) {
        EdgeFinding finding;
        finding.edge = edge;
        const std::vector<FaceId> support = support_faces(edge, 7);
        std::vector<int> simplices;
        for (int p = 1; p <= 7; ++p)
            if (!edge.contains(p)) simplices.push_back(p);
        const Eigen::MatrixXd sys = permitted_rows(mats, support, simplices);
        const Nullspace ns = numeric_nullspace(sys, svd_tol_ratio);
        finding.nullity = ns.nullity;
        finding.exists = ns.nullity >= 1;
        finding.vector = Eigen::VectorXd::Zero(nf);
        if (finding.exists) {
            Eigen::VectorXd v = ns.basis.row(0).transpose();
            v.normalize();
            for (int k = 0; k < v.size(); ++k) {
                if (std::abs(v(k)) > 1e-8) {
                    if (v(k) < 0) v = -v;
                    break;
                }
            }
            for (std::size_t k = 0; k < support.size(); ++k)
                finding.vector(face_index(support[k], 7)) = v(static_cast<int>(k));
        }
        report.edges.push_back(std::move(finding));
    }
    auto edge_of = [&report, &faces](FaceId e) -> const EdgeFinding& {
        return report.edges[static_cast<std::size_t>(face_index(e, 7))];
    };

    // (ii) per (u, i): rank and kernel of the four edge vectors at i inside u
    for (const FaceId& u_label : faces) {
        const std::vector<int> uv = face_vertices(u_label, 7);
        for (int i : uv) {
            DependenceFinding dep;
            dep.u = u_label;
            dep.vertex = i;
            Eigen::MatrixXd quad(4, nf);
            int r = 0;
            for (int j : uv)
                if (j != i) quad.row(r++) = edge_of(FaceId(i, j)).vector.transpose();
            dep.quadruple_rank = numeric_rank(quad, svd_tol_ratio);
            const Nullspace ns = numeric_nullspace(quad.transpose(), svd_tol_ratio);
            dep.dependence_found = ns.nullity >= 1;
            if (dep.dependence_found) dep.kernel = ns.basis.row(0).transpose().head<4>();
            report.dependences.push_back(dep);
        }
    }

    // (iii) per u: find scales s_i making the shared-edge coefficients cancel
    // pairwise (s_a lam_a,ab + s_b lam_b,ab = 0, a 10 x 5 homogeneous system),
    // then report the worst relative violation under those scales
    for (const FaceId& u_label : faces) {
        const std::vector<int> uv = face_vertices(u_label, 7);
        std::array<std::array<double, 5>, 5> lam{}; // lam[vi][vj] = lambda_{uv[vi], edge(uv[vi],uv[vj])}
        bool usable = true;
        for (std::size_t vi = 0; vi < 5; ++vi) {
            const DependenceFinding* dep = nullptr;
            for (const auto& d : report.dependences)
                if (d.u == u_label && d.vertex == uv[vi]) dep = &d;
            if (!dep || !dep->dependence_found) {
                usable = false;
                break;
            }
            int k = 0;
            for (std::size_t vj = 0; vj < 5; ++vj) {
                if (vj == vi) continue;
                lam[vi][vj] = dep->kernel(k++);
            }
        }
        double worst = std::numeric_limits<double>::infinity();
        if (usable) {
            Eigen::MatrixXd pairs(10, 5);
            pairs.setZero();
            int row = 0;
            for (std::size_t a = 0; a < 5; ++a) {
                for (std::size_t b = a + 1; b < 5; ++b) {
                    pairs(row, static_cast<int>(a)) = lam[a][b];
                    pairs(row, static_cast<int>(b)) = lam[b][a];
                    ++row;
                }
            }
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(pairs, Eigen::ComputeFullV);
            const Eigen::VectorXd scale = svd.matrixV().col(4);
            worst = 0.0;
            for (std::size_t a = 0; a < 5; ++a) {
                for (std::size_t b = a + 1; b < 5; ++b) {
                    const double x = scale(static_cast<int>(a)) * lam[a][b];
                    const double y = scale(static_cast<int>(b)) * lam[b][a];
                    const double mag = std::max({std::abs(x), std::abs(y), 1e-300});
                    worst = std::max(worst, std::abs(x + y) / mag);
                }
            }
        }
        report.ll_residuals.emplace_back(u_label, worst);
    }

    // (iv) global span vs permitted nullity
    Eigen::MatrixXd ev(nf, nf);
    for (int r = 0; r < nf; ++r) ev.row(r) = report.edges[static_cast<std::size_t>(r)].vector.transpose();
    report.global_rank = numeric_rank(ev, svd_tol_ratio);
    {
        std::vector<FaceId> cols(faces.begin(), faces.end());
        const Eigen::MatrixXd sys = permitted_rows(mats, cols, all_simplices);
        report.permitted_nullity = numeric_nullspace(sys, svd_tol_ratio).nullity;
    }

    // (v) local spans vs local nullities
    for (int p = 1; p <= 7; ++p) {
        const SimplexLegs& legs = simplex_legs(Move::Heptagon, p);
        std::vector<FaceId> cols = legs.inputs;
        cols.insert(cols.end(), legs.outputs.begin(), legs.outputs.end());
        Eigen::MatrixXd restricted(nf, 6);
        for (int r = 0; r < nf; ++r)
            for (int c = 0; c < 6; ++c)
                restricted(r, c) = report.edges[static_cast<std::size_t>(r)].vector(face_index(cols[static_cast<std::size_t>(c)], 7));
        report.local_ranks[static_cast<std::size_t>(p - 1)] = numeric_rank(restricted, svd_tol_ratio);
        const Eigen::MatrixXd local = permitted_rows(mats, cols, {p});
        report.local_nullities[static_cast<std::size_t>(p - 1)] =
            numeric_nullspace(local, svd_tol_ratio).nullity;
    }

    bool all_exist = true, all_unique = true, ll_ok = true, locals_ok = true;
    for (const auto& e : report.edges)
        if (!e.exists) all_exist = false;
    for (const auto& d : report.dependences)
        if (!d.dependence_found || d.quadruple_rank != 3) all_unique = false;
    for (const auto& [u, res] : report.ll_residuals)
        if (!(res < report.ll_tolerance)) ll_ok = false;
    for (int p = 0; p < 7; ++p)
        if (report.local_ranks[static_cast<std::size_t>(p)] != 3 ||
            report.local_nullities[static_cast<std::size_t>(p)] != 3)
            locals_ok = false;
    report.properties = {all_exist, all_unique, ll_ok,
                         report.global_rank == 6 && report.permitted_nullity == 6, locals_ok};
    return report;
}

nlohmann::json run_to_json(const NumericRun& run) {
    nlohmann::json j;
    j["seed"] = run.seed;
    j["iterations"] = run.iterations;
    j["residual"] = run.residual_inf;
    j["converged"] = run.converged;
    j["nonfinite"] = run.nonfinite;
    const auto mats = unpack(run.x);
    nlohmann::json jm = nlohmann::json::array();
    for (const auto& m : mats) {
        nlohmann::json rows = nlohmann::json::array();
        for (int r = 0; r < 3; ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (int c = 0; c < 3; ++c) row.push_back(m(r, c));
            rows.push_back(row);
        }
        jm.push_back(rows);
    }
    j["matrices"] = jm;
    return j;
}

NumericRun run_from_json(const nlohmann::json& j) {
    try {
        NumericRun run;
        run.seed = j.at("seed").get<std::uint64_t>();
        run.iterations = j.at("iterations").get<int>();
        run.residual_inf = j.at("residual").get<double>();
        run.converged = j.at("converged").get<bool>();
        run.nonfinite = j.value("nonfinite", false);
        const auto& jm = j.at("matrices");
        if (jm.size() != kMatrices) throw SchemaError("expected 7 matrices");
        std::array<Eigen::Matrix3d, kMatrices> mats;
        for (int s = 0; s < kMatrices; ++s)
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) mats[s](r, c) = jm[s][r][c].get<double>();
        run.x = pack(mats);
        return run;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(e.what());
    }
}

nlohmann::json analysis_to_json(const AnalysisReport& report) {
    nlohmann::json j;
    j["seed"] = report.seed;
    j["tolerances"] = {{"svd_tol_ratio", report.svd_tol_ratio},
                       {"ll_tolerance", report.ll_tolerance}};
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : report.edges) {
        nlohmann::json je;
        je["edge"] = e.edge.str();
        je["exists"] = e.exists;
        je["nullity"] = e.nullity;
        nlohmann::json v = nlohmann::json::array();
        for (int k = 0; k < e.vector.size(); ++k) v.push_back(e.vector(k));
        je["vector"] = v;
        edges.push_back(je);
    }
    j["edges"] = edges;
    nlohmann::json deps = nlohmann::json::array();
    for (const auto& d : report.dependences) {
        nlohmann::json jd;
        jd["u"] = d.u.str();
        jd["vertex"] = d.vertex;
        jd["dependence_found"] = d.dependence_found;
        jd["quadruple_rank"] = d.quadruple_rank;
        jd["kernel"] = {d.kernel(0), d.kernel(1), d.kernel(2), d.kernel(3)};
        deps.push_back(jd);
    }
    j["dependences"] = deps;
    nlohmann::json ll = nlohmann::json::array();
    for (const auto& [u, res] : report.ll_residuals)
        ll.push_back({{"u", u.str()}, {"residual", res}});
    j["ll_residuals"] = ll;
    j["global_rank"] = report.global_rank;
    j["permitted_nullity"] = report.permitted_nullity;
    j["local_ranks"] = report.local_ranks;
    j["local_nullities"] = report.local_nullities;
    j["properties"] = {{"edge_vectors_exist", report.properties[0]},
                       {"unique_vertex_dependences", report.properties[1]},
                       {"dependence_of_dependences", report.properties[2]},
                       {"global_span", report.properties[3]},
                       {"local_spans", report.properties[4]}};
    return j;
}

} // namespace numlab
} // namespace polyrel
