// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line each. Exits nonzero if any criterion fails.
//
// Usage: polyrel_acceptance [--cli PATH]   (PATH enables the CLI determinism
// criterion; without it that criterion runs against the library writers only)

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "polyrel/artifacts.hpp"
#include "polyrel/edgevectors.hpp"
#include "polyrel/numlab.hpp"
#include "polyrel/relations.hpp"

using namespace polyrel;
using nlohmann::json;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail = "") {
    std::printf("%s criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- criterion 1 & 2: exact relation verification -------------------------

void criterion_verify(int index, Move move, double budget_seconds) {
    const auto t0 = std::chrono::steady_clock::now();
    const int n = vertex_count(move);
    bool all_equal = true;
    std::string detail;

    if (move == Move::Heptagon || move == Move::Pentagon) {
        const ParameterSet vdm = default_vandermonde(n, FieldConfig::rational());
        all_equal = verify_relation(move, vdm).equal;
    }
    for (std::uint64_t seed = 0; seed < 100 && all_equal; ++seed) {
        const ParameterSet p = sample_generic_params(seed, FieldConfig::rational(), n);
        if (!verify_relation(move, p).equal) {
            all_equal = false;
            detail = "rational seed " + std::to_string(seed);
        }
    }
    const FieldConfig fp = FieldConfig::prime(10007);
    for (std::uint64_t seed = 0; seed < 100 && all_equal; ++seed) {
        const ParameterSet p = sample_generic_params(seed, fp, n);
        if (!verify_relation(move, p).equal) {
            all_equal = false;
            detail = "prime seed " + std::to_string(seed);
        }
    }
    const double elapsed = seconds_since(t0);
    const bool in_budget = elapsed < budget_seconds;
    std::ostringstream os;
    os << "vandermonde + 100 rational + 100 prime sets, exact, " << elapsed << "s";
    if (!detail.empty()) os << ", first failure: " << detail;
    report(index, move_name(move) + " verification", all_equal && in_budget, os.str());
}

// ---- criterion 3: exact edge-vector suite ---------------------------------

bool edge_suite(const ParameterSet& p, std::string& why) {
    for (const FaceId& edge : all_faces(7)) {
        if (!check_permitted(edge_vector(edge, p), p).all_pass()) {
            why = "edge " + edge.str() + " not permitted";
            return false;
        }
    }
    for (const FaceId& u : all_faces(7)) {
        for (int i : face_vertices(u, 7)) {
            const VertexDependenceReport r = verify_vertex_dependence(u, i, p);
            if (!r.dependence_holds || r.quadruple_rank != 3) {
                why = "dependence at u=" + u.str() + " i=" + std::to_string(i);
                return false;
            }
        }
        if (!verify_dependence_of_dependences(u, p)) {
            why = "ll at u=" + u.str();
            return false;
        }
    }
    const SpanReport g = global_span(p);
    if (!(g.edge_rank == 6 && g.permitted_dim == 6 && g.spans_coincide)) {
        why = "global span";
        return false;
    }
    for (int s = 1; s <= 7; ++s) {
        const LocalSpanReport l = local_span(s, p);
        if (l.edge_rank != 3 || l.permitted_dim != 3) {
            why = "local span at " + std::to_string(s);
            return false;
        }
    }
    for (int i = 1; i <= 7; ++i) {
        if (!verify_only_on_j(i, p)) {
            why = "kernel test at vertex " + std::to_string(i);
            return false;
        }
    }
    for (int s = 1; s <= 7; ++s) {
        if (!(reconstruct_matrix(s, p).entries == transfer_matrix(Move::Heptagon, s, p).entries)) {
            why = "reconstruction at " + std::to_string(s);
            return false;
        }
    }
    return true;
}

void criterion_edge_suite() {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::string why;
    pass = edge_suite(default_vandermonde(7, FieldConfig::rational()), why);
    for (std::uint64_t seed = 0; seed < 10 && pass; ++seed)
        pass = edge_suite(sample_generic_params(seed, FieldConfig::rational(), 7), why);
    const double elapsed = seconds_since(t0);
    std::ostringstream os;
    os << "vandermonde + 10 random sets, all groups, " << elapsed << "s";
    if (!why.empty()) os << ", failed: " << why;
    report(3, "edge-vector suite", pass && elapsed < 30.0, os.str());
}

// ---- criterion 4: e_47 walkthrough -----------------------------------------

void criterion_e47() {
    const ParameterSet p = default_vandermonde(7, FieldConfig::rational());
    const BoundaryColoring e47 = edge_vector(FaceId(4, 7), p);
    bool pass = true;
    for (const FaceId& f : all_faces(7))
        if (e47.at(f).is_zero() != (f.contains(4) || f.contains(7))) pass = false;

    const WiringDiagram& w = wiring(Move::Heptagon, Side::Lhs);
    std::vector<Scalar> row;
    bool any_nonzero = false;
    for (const FaceId& f : w.initial_faces) {
        row.push_back(e47.at(f));
        any_nonzero = any_nonzero || !e47.at(f).is_zero();
    }
    if (!any_nonzero) pass = false;

    const TransportResult t = transport(row, Move::Heptagon, Side::Lhs, p);
    for (const auto& [face, value] : t.inner_values)
        if (value != e47.at(face)) pass = false;
    for (const auto& [face, value] : t.final_values)
        if (value != e47.at(face)) pass = false;

    report(4, "e_47 walkthrough", pass, "zero pattern + row equations under transport, exact");
}

// ---- criterion 5: jacobian vs finite differences ---------------------------

void criterion_jacobian() {
    const double h = 1e-6;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(seed);
        Eigen::VectorXd x(numlab::kUnknowns);
        for (int i = 0; i < numlab::kUnknowns; ++i) x(i) = rng.symmetric();
        const Eigen::MatrixXd jac = numlab::jacobian(x);
        Eigen::MatrixXd fd(numlab::kResiduals, numlab::kUnknowns);
        for (int c = 0; c < numlab::kUnknowns; ++c) {
            Eigen::VectorXd xp = x, xm = x;
            xp(c) += h;
            xm(c) -= h;
            fd.col(c) = (numlab::residual(xp) - numlab::residual(xm)) / (2 * h);
        }
        worst = std::max(worst, (jac - fd).cwiseAbs().maxCoeff() / fd.cwiseAbs().maxCoeff());
    }
    report(5, "jacobian vs central differences", worst < 1e-6,
           "max relative deviation " + shortest_double(worst) + " at 10 random points");
}

// ---- criterion 6: LM multistart ---------------------------------------------

std::vector<numlab::NumericRun> g_runs; // reused by criterion 8

void criterion_lm() {
    const auto t0 = std::chrono::steady_clock::now();
    numlab::LmOptions opts; // tol 1e-12, max_iter 1000
    int converged = 0;
    for (std::uint64_t k = 0; k < 50; ++k) {
        g_runs.push_back(numlab::lm_solve(derive_seed(7, k), opts));
        if (g_runs.back().residual_inf < 1e-10) ++converged;
    }
    const double elapsed = seconds_since(t0);
    std::ostringstream os;
    os << converged << "/50 runs below 1e-10 (need >= 30), " << elapsed << "s";
    report(6, "LM multistart convergence", converged >= 30 && elapsed < 60.0, os.str());
}

// ---- criterion 7: numeric/exact oracle equivalence --------------------------

void criterion_oracle_equivalence() {
    const ParameterSet p = default_vandermonde(7, FieldConfig::rational());
    numlab::NumericRun run;
    run.seed = 0;
    run.x = numlab::ansatz_unknowns(p);
    run.residual_inf = numlab::residual(run.x).lpNorm<Eigen::Infinity>();
    run.converged = run.residual_inf < 1e-12;

    bool pass = run.converged;
    std::string why = pass ? "" : "ansatz cast did not satisfy the residual";
    if (pass) {
        const numlab::AnalysisReport r = numlab::analyze(run, 1e-8);
        for (const auto& e : r.edges)
            if (!e.exists || e.nullity != 1) pass = false;
        for (const auto& d : r.dependences)
            if (!d.dependence_found || d.quadruple_rank != 3) pass = false;
        if (r.global_rank != 6 || r.permitted_nullity != 6) pass = false;
        for (int s = 0; s < 7; ++s)
            if (r.local_ranks[static_cast<std::size_t>(s)] != 3 ||
                r.local_nullities[static_cast<std::size_t>(s)] != 3)
                pass = false;
        for (bool prop : r.properties) pass = pass && prop;
        if (!pass) why = "detected counts differ from the exact suite";
    }
    report(7, "numeric/exact oracle equivalence", pass,
           why.empty() ? "21 edges nullity 1, ranks 3/6/3 at sigma-ratio 1e-8" : why);
}

// ---- criterion 8: structure of LM solutions --------------------------------

void criterion_lm_structure() {
    int analyzed = 0;
    std::array<int, 5> holds{};
    for (const auto& run : g_runs) {
        if (!run.converged) continue;
        ++analyzed;
        const numlab::AnalysisReport r = numlab::analyze(run, 1e-8);
        for (std::size_t k = 0; k < 5; ++k)
            if (r.properties[k]) ++holds[k];
    }

    // negative control: perturb one converged solution
    bool control_failed = false;
    for (const auto& run : g_runs) {
        if (!run.converged) continue;
        numlab::NumericRun bad = run;
        bad.x(5) += 0.1;
        const numlab::AnalysisReport r = numlab::analyze(bad, 1e-8);
        for (bool prop : r.properties) control_failed = control_failed || !prop;
        break;
    }

    std::ostringstream os;
    os << "aggregate over " << analyzed << " converged runs:";
    const char* names[5] = {"(i)", "(ii)", "(iii)", "(iv)", "(v)"};
    for (std::size_t k = 0; k < 5; ++k)
        os << " " << names[k] << "=" << holds[k] << "/" << analyzed;
    os << "; negative control " << (control_failed ? "fails a check" : "UNEXPECTEDLY PASSES");
    // the aggregate is recorded, not asserted; the criterion requires the
    // report to exist and the negative control to fail
    report(8, "LM solution structure report", analyzed > 0 && control_failed, os.str());
}

// ---- criterion 9: generalized vector ----------------------------------------

void criterion_generalized() {
    bool pass = true;
    std::string why;

    const ParameterSet p7 = default_vandermonde(7, FieldConfig::rational());
    for (const FaceId& edge : all_faces(7)) {
        const BoundaryColoring e = edge_vector(edge, p7);
        const std::array<int, 2> sigma{edge.a, edge.b};
        for (const FaceId& v : all_faces(7)) {
            if (!(generalized_vector(7, sigma, v, p7) == e.at(v))) {
                pass = false;
                why = "n=7 mismatch at edge " + edge.str() + ", face " + v.str();
            }
        }
    }

    const ParameterSet p5 = default_vandermonde(5, FieldConfig::rational());
    for (int i = 1; i <= 5 && pass; ++i) {
        if (!check_permitted(vertex_vector(i, p5), p5).all_pass()) {
            pass = false;
            why = "n=5 vertex vector " + std::to_string(i) + " not permitted";
        }
    }
    report(9, "generalized vector formula", pass,
           pass ? "n=7 agrees with edge vectors on all 21x21 pairs; n=5 vertex vectors permitted"
                : why);
}

// ---- criterion 10: byte-identical artifacts ---------------------------------

std::string run_cli(const std::string& cli, const std::string& args) {
    const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
    return std::to_string(std::system(cmd.c_str()));
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_determinism(const std::string& cli) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "polyrel_acceptance";
    fs::create_directories(dir);
    bool pass = true;
    std::string detail;

    if (!cli.empty()) {
        const fs::path p1 = dir / "params1.json", p2 = dir / "params2.json";
        const fs::path s1 = dir / "sol1.json", s2 = dir / "sol2.json";
        const fs::path a1 = dir / "an1.json", a2 = dir / "an2.json";
        run_cli(cli, "gen-params --mode random --seed 42 -o " + p1.string());
        run_cli(cli, "gen-params --mode random --seed 42 -o " + p2.string());
        run_cli(cli, "solve-lm --runs 5 --seed 7 -o " + s1.string());
        run_cli(cli, "solve-lm --runs 5 --seed 7 -o " + s2.string());
        run_cli(cli, "analyze " + s1.string() + " -o " + a1.string());
        run_cli(cli, "analyze " + s1.string() + " -o " + a2.string());
        pass = slurp(p1) == slurp(p2) && slurp(s1) == slurp(s2) && slurp(a1) == slurp(a2);
        if (!slurp(p1).empty()) {
            detail = "gen-params/solve-lm/analyze artifacts byte-identical across reruns";
        } else {
            pass = false;
            detail = "cli produced no artifacts";
        }
    } else {
        // library-level fallback: serialize the same run twice
        const numlab::NumericRun r1 = numlab::lm_solve(derive_seed(7, 0), {});
        const numlab::NumericRun r2 = numlab::lm_solve(derive_seed(7, 0), {});
        pass = numlab::run_to_json(r1).dump(2) == numlab::run_to_json(r2).dump(2);
        detail = "library writers only (pass --cli for the full check)";
    }
    report(10, "artifact determinism", pass, detail);
}

} // namespace

int main(int argc, char** argv) {
    std::string cli;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") cli = argv[i + 1];

    criterion_verify(1, Move::Heptagon, 5.0);
    criterion_verify(2, Move::Pentagon, 2.0);
    criterion_edge_suite();
    criterion_e47();
    criterion_jacobian();
    criterion_lm();
    criterion_oracle_equivalence();
    criterion_lm_structure();
    criterion_generalized();
    criterion_determinism(cli);

    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", g_failures);
    return 1;
}
