#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "polyrel/artifacts.hpp"
#include "polyrel/edgevectors.hpp"
#include "polyrel/numlab.hpp"
#include "polyrel/relations.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace polyrel;

namespace {

py::object to_py(const json& j) {
    switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<long long>());
    case json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get<std::string>());
    case json::value_t::array: {
        py::list out;
        for (const auto& v : j) out.append(to_py(v));
        return out;
    }
    case json::value_t::object: {
        py::dict out;
        for (auto it = j.begin(); it != j.end(); ++it)
            out[py::str(it.key())] = to_py(it.value());
        return out;
    }
    default: throw Error("unsupported json value");
    }
}

json from_py(const py::handle& obj) {
    if (obj.is_none()) return nullptr;
    if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
    if (py::isinstance<py::int_>(obj)) {
        try {
            return obj.cast<long long>();
        } catch (const py::cast_error&) {
            return obj.cast<unsigned long long>(); // seeds use the full u64 range
        }
    }
    if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
    if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
    if (py::isinstance<py::list>(obj) || py::isinstance<py::tuple>(obj)) {
        json a = json::array();
        for (const auto& v : obj) a.push_back(from_py(v));
        return a;
    }
    if (py::isinstance<py::dict>(obj)) {
        json o = json::object();
        for (const auto& kv : obj.cast<py::dict>())
            o[kv.first.cast<std::string>()] = from_py(kv.second);
        return o;
    }
    throw Error("unsupported python value in json conversion");
}

FieldConfig field_from_name(const std::string& text) {
    if (text == "rational") return FieldConfig::rational();
    if (text == "float64") return FieldConfig::float64();
    if (text.rfind("prime:", 0) == 0) return FieldConfig::prime(std::stoull(text.substr(6)));
    throw Error("unknown field spec: " + text);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact heptagon/pentagon relation toolkit";
    m.attr("__version__") = std::string(kToolVersion);

    m.def(
        "gen_params",
        [](const std::string& mode, int n, const std::string& field, std::uint64_t seed) {
            const FieldConfig f = field_from_name(field);
            ParameterSet p = mode == "vandermonde" ? default_vandermonde(n, f)
                                                   : sample_generic_params(seed, f, n);
            return to_py(params_to_json(p));
        },
        py::arg("mode") = "vandermonde", py::arg("n") = 7, py::arg("field") = "rational",
        py::arg("seed") = 0, "Generate a generic parameter set as a dict.");

    m.def(
        "det3",
        [](const py::dict& params, int i, int j, int k) {
            return det3(params_from_json(from_py(params)), i, j, k).str();
        },
        py::arg("params"), py::arg("i"), py::arg("j"), py::arg("k"),
        "The antisymmetric parameter determinant d_{ijk}, as text.");

    m.def(
        "verify",
        [](const std::string& move, const py::dict& params) {
            const VerificationReport r =
                verify_relation(move_from_name(move), params_from_json(from_py(params)));
            return to_py(verification_report_to_json(r));
        },
        py::arg("move"), py::arg("params"),
        "Exact verification of the heptagon or pentagon relation.");

    m.def(
        "edge_vector",
        [](int i, int j, const py::dict& params) {
            const ParameterSet p = params_from_json(from_py(params));
            const BoundaryColoring e = edge_vector(FaceId(i, j), p);
            py::dict out;
            for (const FaceId& f : all_faces(7)) out[py::str(f.str())] = e.at(f).str();
            return out;
        },
        py::arg("i"), py::arg("j"), py::arg("params"),
        "All 21 components of the edge vector e_{ij}, as text.");

    m.def(
        "wiring",
        [](const std::string& move, const std::string& side) {
            return to_py(wiring_to_json(
                wiring(move_from_name(move), side == "lhs" ? Side::Lhs : Side::Rhs)));
        },
        py::arg("move"), py::arg("side"), "The fixed wiring diagram of one side of a move.");

    m.def(
        "edge_checks",
        [](const py::dict& params) {
            const ParameterSet p = params_from_json(from_py(params));
            require_generic(p);
            py::dict out;
            bool pass = true;
            for (const FaceId& e : all_faces(7))
                if (!check_permitted(edge_vector(e, p), p).all_pass()) pass = false;
            out["permitted"] = pass;
            pass = true;
            for (const FaceId& u : all_faces(7))
                for (int i : face_vertices(u, 7))
                    if (!verify_vertex_dependence(u, i, p).pass()) pass = false;
            out["dependences"] = pass;
            pass = true;
            for (const FaceId& u : all_faces(7))
                if (!verify_dependence_of_dependences(u, p)) pass = false;
            out["ll"] = pass;
            const SpanReport g = global_span(p);
            out["global_rank"] = g.edge_rank;
            out["permitted_dim"] = g.permitted_dim;
            pass = true;
            for (int i = 1; i <= 7; ++i)
                if (!verify_only_on_j(i, p)) pass = false;
            out["zvezda"] = pass;
            pass = true;
            for (int s = 1; s <= 7; ++s) {
                const TransferMatrix rec = reconstruct_matrix(s, p);
                const TransferMatrix ans = transfer_matrix(Move::Heptagon, s, p);
                if (!(rec.entries == ans.entries)) pass = false;
            }
            out["reconstruct"] = pass;
            return out;
        },
        py::arg("params"), "Run the exact edge-vector suites; returns per-group pass flags.");

    m.def(
        "solve_lm",
        [](int runs, std::uint64_t seed, double tol, int max_iter, double init_scale) {
            numlab::LmOptions opts;
            opts.tol = tol;
            opts.max_iter = max_iter;
            opts.init_scale = init_scale;
            json jr = json::array();
            for (int k = 0; k < runs; ++k)
                jr.push_back(numlab::run_to_json(
                    numlab::lm_solve(derive_seed(seed, static_cast<std::uint64_t>(k)), opts)));
            json j;
            j["schema"] = "polyrel/solutions-v1";
            j["runs"] = jr;
            return to_py(j);
        },
        py::arg("runs") = 1, py::arg("seed") = 0, py::arg("tol") = 1e-12,
        py::arg("max_iter") = 1000, py::arg("init_scale") = 1.0,
        "Multistart Levenberg-Marquardt runs; returns the solutions document.");

    m.def(
        "analyze",
        [](const py::dict& solutions, double svd_tol) {
            const json doc = from_py(solutions);
            json out = json::array();
            for (const auto& jr : doc.at("runs")) {
                const numlab::NumericRun run = numlab::run_from_json(jr);
                if (!run.converged) continue;
                out.push_back(numlab::analysis_to_json(numlab::analyze(run, svd_tol)));
            }
            return to_py(out);
        },
        py::arg("solutions"), py::arg("svd_tol") = 1e-8,
        "Structure detection for each converged run in a solutions document.");

    // translators run newest-first, so the base goes first
    py::register_exception<Error>(m, "PolyrelError");
    py::register_exception<SchemaError>(m, "SchemaError");
    py::register_exception<NonGenericParameters>(m, "NonGenericParameters");
}
