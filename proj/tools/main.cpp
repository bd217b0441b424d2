#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "polyrel/artifacts.hpp"
#include "polyrel/edgevectors.hpp"
#include "polyrel/numlab.hpp"
#include "polyrel/relations.hpp"

namespace {

using nlohmann::json;
using namespace polyrel;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

json envelope(const std::string& schema, const json& config) {
    json j;
    j["schema"] = schema;
    j["tool_version"] = std::string(kToolVersion);
    j["config"] = config;
    return j;
}

FieldConfig parse_field(const std::string& text) {
    if (text == "rational") return FieldConfig::rational();
    if (text == "float64") return FieldConfig::float64();
    if (text.rfind("prime:", 0) == 0) {
        const std::string num = text.substr(6);
        try {
            return FieldConfig::prime(std::stoull(num));
        } catch (const std::invalid_argument&) {
            throw Error("bad prime modulus: " + num);
        } catch (const std::out_of_range&) {
            throw Error("bad prime modulus: " + num);
        }
    }
    throw Error("unknown field spec: " + text + " (want rational | prime:P)");
}

int default_threads() {
    if (const char* env = std::getenv("POLYREL_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

int run_gen_params(const std::string& mode, int n, const std::string& field_text,
                   std::uint64_t seed, const std::string& out) {
    const FieldConfig field = parse_field(field_text);
    if (field.kind == FieldKind::Float64)
        throw Error("gen-params supports rational and prime fields");
    ParameterSet params;
    if (mode == "vandermonde") {
        params = default_vandermonde(n, field);
    } else if (mode == "random") {
        params = sample_generic_params(seed, field, n);
    } else {
        throw Error("unknown mode: " + mode);
    }

    json j = params_to_json(params);
    j["tool_version"] = std::string(kToolVersion);
    j["config"] = {{"mode", mode}, {"n", n}, {"field", field.name()}, {"seed", seed}};
    write_json_atomic(out, j);
    std::cout << "wrote " << out << " (" << field.name() << ", n=" << n << ")\n";
    return kExitOk;
}

int run_verify(const std::string& move_text, const std::string& params_path,
               const std::string& out) {
    const Move move = move_from_name(move_text);
    const ParameterSet params = params_from_json(load_json(params_path));

    VerificationReport report;
    try {
        report = verify_relation(move, params);
    } catch (const NonGenericParameters& e) {
        std::cerr << e.what() << "\n";
        if (!out.empty()) {
            json j = envelope("polyrel/verification-v1", {{"move", move_text}, {"params", params_path}});
            j["input_digest"] = file_digest(params_path);
            j["equal"] = false;
            j["error"] = e.what();
            write_json_atomic(out, j);
        }
        return kExitCheckFailed;
    }

    json j = verification_report_to_json(report);
    j["tool_version"] = std::string(kToolVersion);
    j["config"] = {{"move", move_text}, {"params", params_path}};
    j["input_digest"] = file_digest(params_path);
    if (!out.empty()) write_json_atomic(out, j);
    std::cout << move_text << ": " << (report.equal ? "equal" : "NOT equal")
              << " (max discrepancy " << report.max_discrepancy << ")\n";
    return report.equal ? kExitOk : kExitCheckFailed;
}

int run_edge_vectors(const std::string& params_path, const std::string& checks,
                     const std::string& out) {
    static const std::vector<std::string> known{"all",  "permitted", "deps",       "ll",
                                                "span", "zvezda",    "reconstruct"};
    if (std::find(known.begin(), known.end(), checks) == known.end())
        throw Error("unknown check group: " + checks);
    const ParameterSet params = params_from_json(load_json(params_path));
    if (params.n != 7) throw Error("edge-vector checks need n=7 parameters");

    json results = json::array();
    bool all_pass = true;
    auto record = [&](const std::string& name, bool pass, const json& detail = nullptr) {
        results.push_back({{"check", name}, {"pass", pass}, {"detail", detail}});
        if (!pass) all_pass = false;
    };
    const bool all = checks == "all";
    const auto& faces = all_faces(7);

    try {
        require_generic(params);
        if (all || checks == "permitted") {
            for (const FaceId& edge : faces) {
                const PermittedReport r = check_permitted(edge_vector(edge, params), params);
                json fails = json::array();
                for (const auto& s : r.simplices)
                    if (!s.pass) fails.push_back(s.simplex);
                record("permitted:e" + edge.str(), r.all_pass(),
                       r.all_pass() ? json(nullptr) : json{{"failing_simplices", fails}});
            }
        }
        if (all || checks == "deps") {
            for (const FaceId& u : faces) {
                for (int i : face_vertices(u, 7)) {
                    const VertexDependenceReport r = verify_vertex_dependence(u, i, params);
                    record("dependence:u" + u.str() + ":v" + std::to_string(i), r.pass(),
                           json{{"dependence_holds", r.dependence_holds},
                                {"quadruple_rank", r.quadruple_rank}});
                }
            }
        }
        if (all || checks == "ll") {
            for (const FaceId& u : faces)
                record("ll:u" + u.str(), verify_dependence_of_dependences(u, params));
        }
        if (all || checks == "span") {
            const SpanReport g = global_span(params);
            record("span:global", g.spans_coincide,
                   json{{"edge_rank", g.edge_rank}, {"permitted_dim", g.permitted_dim}});
            for (int p = 1; p <= 7; ++p) {
                const LocalSpanReport l = local_span(p, params);
                record("span:local:" + std::to_string(p),
                       l.edge_rank == 3 && l.permitted_dim == 3,
                       json{{"edge_rank", l.edge_rank}, {"permitted_dim", l.permitted_dim}});
            }
        }
        if (all || checks == "zvezda") {
            for (int i = 1; i <= 7; ++i)
                record("kernel:v" + std::to_string(i), verify_only_on_j(i, params));
        }
        if (all || checks == "reconstruct") {
            for (int p = 1; p <= 7; ++p) {
                const TransferMatrix rec = reconstruct_matrix(p, params);
                const TransferMatrix ans = transfer_matrix(Move::Heptagon, p, params);
                record("reconstruct:" + std::to_string(p), rec.entries == ans.entries);
            }
        }
    } catch (const NonGenericParameters& e) {
        record("genericity", false, json{{"error", e.what()}});
    }

    json j = envelope("polyrel/edge-checks-v1", {{"params", params_path}, {"checks", checks}});
    j["input_digest"] = file_digest(params_path);
    j["all_pass"] = all_pass;
    j["results"] = results;
    if (!out.empty()) write_json_atomic(out, j);
    int passed = 0;
    for (const auto& r : results)
        if (r["pass"].get<bool>()) ++passed;
    std::cout << "edge-vector checks: " << passed << "/" << results.size() << " passed\n";
    return all_pass ? kExitOk : kExitCheckFailed;
}

int run_solve_lm(int runs, std::uint64_t seed, double tol, int max_iter, double init_scale,
                 int threads, const std::string& out) {
    numlab::LmOptions opts;
    opts.tol = tol;
    opts.max_iter = max_iter;
    opts.init_scale = init_scale;

    std::vector<numlab::NumericRun> results(static_cast<std::size_t>(runs));
    const int workers = std::max(1, std::min(threads, runs));
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int k = next.fetch_add(1); k < runs; k = next.fetch_add(1))
                results[static_cast<std::size_t>(k)] =
                    numlab::lm_solve(derive_seed(seed, static_cast<std::uint64_t>(k)), opts);
        });
    }
    for (auto& t : pool) t.join();

    int converged = 0;
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> iters;
    json jr = json::array();
    for (const auto& r : results) {
        if (r.converged) {
            ++converged;
            iters.push_back(r.iterations);
        }
        best = std::min(best, r.residual_inf);
        jr.push_back(numlab::run_to_json(r));
    }
    std::sort(iters.begin(), iters.end());
    const int median_iters = iters.empty() ? 0 : iters[iters.size() / 2];

    json j = envelope("polyrel/solutions-v1",
                      {{"runs", runs},
                       {"seed", seed},
                       {"tol", tol},
                       {"max_iter", max_iter},
                       {"init_scale", init_scale}});
    j["runs"] = jr;
    j["summary"] = {{"converged", converged}, {"median_iterations", median_iters},
                    {"best_residual", best}};
    write_json_atomic(out, j);
    std::cout << "converged " << converged << "/" << runs << ", median iterations " << median_iters
              << ", best residual " << shortest_double(best) << "\n";
    return converged > 0 ? kExitOk : kExitCheckFailed;
}

int run_analyze(const std::string& solutions_path, double svd_tol, const std::string& out) {
    const json solutions = load_json(solutions_path);
    if (!solutions.contains("runs") || !solutions["runs"].is_array())
        throw SchemaError("solutions file has no runs array");

    json per_run = json::array();
    int converged = 0;
    std::array<int, 5> holds{};
    for (const auto& jr : solutions["runs"]) {
        const numlab::NumericRun run = numlab::run_from_json(jr);
        if (!run.converged) continue;
        ++converged;
        const numlab::AnalysisReport report = numlab::analyze(run, svd_tol);
        for (std::size_t k = 0; k < 5; ++k)
            if (report.properties[k]) ++holds[k];
        per_run.push_back(numlab::analysis_to_json(report));
    }
    if (converged == 0) {
        std::cerr << "no converged runs in " << solutions_path << "\n";
        return kExitCheckFailed;
    }

    json j = envelope("polyrel/analysis-v1", {{"solutions", solutions_path}, {"svd_tol", svd_tol}});
    j["input_digest"] = file_digest(solutions_path);
    j["runs"] = per_run;
    json agg;
    const char* names[5] = {"edge_vectors_exist", "unique_vertex_dependences",
                            "dependence_of_dependences", "global_span", "local_spans"};
    for (std::size_t k = 0; k < 5; ++k)
        agg[names[k]] = static_cast<double>(holds[k]) / converged;
    agg["converged_runs"] = converged;
    j["aggregate"] = agg;
    write_json_atomic(out, j);
    std::cout << "analyzed " << converged << " runs; property fractions:";
    for (std::size_t k = 0; k < 5; ++k) std::cout << " " << names[k] << "=" << agg[names[k]];
    std::cout << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"direct-sum heptagon/pentagon relation toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    int threads = default_threads();
    app.add_option("--threads", threads, "worker threads (default: POLYREL_THREADS or 1)");

    auto* gen = app.add_subcommand("gen-params", "generate a parameter set");
    std::string mode = "vandermonde", field_text = "rational", out_path;
    int n = 7;
    std::uint64_t seed = 0;
    gen->add_option("--mode", mode, "vandermonde | random")
        ->check(CLI::IsMember({"vandermonde", "random"}));
    gen->add_option("--n", n, "vertex count")->check(CLI::IsMember({5, 7}));
    gen->add_option("--field", field_text, "rational | prime:P");
    gen->add_option("--seed", seed, "rng seed (random mode)");
    gen->add_option("-o,--output", out_path, "output file")->required();

    auto* verify = app.add_subcommand("verify", "verify a relation exactly");
    std::string move_text, params_path, report_path;
    verify->add_option("move", move_text, "heptagon | pentagon")
        ->required()
        ->check(CLI::IsMember({"heptagon", "pentagon"}));
    verify->add_option("--params", params_path, "parameter file")->required()
        ->check(CLI::ExistingFile);
    verify->add_option("-o,--output", report_path, "report file");

    auto* ev = app.add_subcommand("edge-vectors", "run the exact edge-vector suites");
    std::string checks = "all";
    ev->add_option("--params", params_path, "parameter file")->required()
        ->check(CLI::ExistingFile);
    ev->add_option("--checks", checks, "all | permitted | deps | ll | span | zvezda | reconstruct");
    ev->add_option("-o,--output", report_path, "report file");

    auto* lm = app.add_subcommand("solve-lm", "multistart Levenberg-Marquardt search");
    int runs = 50, max_iter = 1000;
    double tol = 1e-12, init_scale = 1.0;
    lm->add_option("--runs", runs, "number of runs")->check(CLI::PositiveNumber);
    lm->add_option("--seed", seed, "base seed");
    lm->add_option("--tol", tol, "residual infinity-norm target")->check(CLI::PositiveNumber);
    lm->add_option("--max-iter", max_iter, "iteration cap")->check(CLI::PositiveNumber);
    lm->add_option("--init-scale", init_scale, "initial entry scale");
    lm->add_option("-o,--output", out_path, "solutions file")->required();

    auto* an = app.add_subcommand("analyze", "detect edge-vector structure in solutions");
    std::string solutions_path;
    double svd_tol = 1e-8;
    an->add_option("solutions", solutions_path, "solutions.json from solve-lm")
        ->required()
        ->check(CLI::ExistingFile);
    an->add_option("--svd-tol", svd_tol, "singular-value ratio threshold");
    an->add_option("-o,--output", out_path, "analysis file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) return run_gen_params(mode, n, field_text, seed, out_path);
        if (verify->parsed()) return run_verify(move_text, params_path, report_path);
        if (ev->parsed()) return run_edge_vectors(params_path, checks, report_path);
        if (lm->parsed())
            return run_solve_lm(runs, seed, tol, max_iter, init_scale, threads, out_path);
        if (an->parsed()) return run_analyze(solutions_path, svd_tol, out_path);
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NonGenericParameters& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
