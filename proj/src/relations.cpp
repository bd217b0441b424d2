#include "polyrel/relations.hpp"

#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "polyrel/artifacts.hpp"

namespace polyrel {

ScalarMatrix embed(const ScalarMatrix& m, std::span<const int> positions, int total_size) {
    if (m.rows() != m.cols()) throw BadPositions("embed expects a square block");
    if (static_cast<int>(positions.size()) != m.rows())
        throw BadPositions("position count != block size");
    std::set<int> distinct(positions.begin(), positions.end());
    if (distinct.size() != positions.size()) throw BadPositions("positions must be distinct");
    for (int p : positions)
        if (p < 1 || p > total_size)
            throw BadPositions("position " + std::to_string(p) + " out of [1.." +
                               std::to_string(total_size) + "]");
    ScalarMatrix out = ScalarMatrix::identity(total_size, m.field());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out.at(positions[r] - 1, positions[c] - 1) = m.at(r, c);
    return out;
}

SideProduct side_product(Move m, Side s, const ParameterSet& params) {
    const WiringDiagram& w = wiring(m, s);
    const int n = row_size(m);
    ScalarMatrix acc = ScalarMatrix::identity(n, params.field);
    for (const WiringStep& step : w.steps) {
        TransferMatrix t = m == Move::Heptagon
                               ? heptagon_matrix(step.simplex, step.inputs, step.outputs, params)
                               : pentagon_matrix(step.simplex, step.inputs, step.outputs, params);
        acc = acc * embed(t.entries, step.positions, n);
    }
    return SideProduct{m, s, std::move(acc), &w};
}

VerificationReport verify_relation(Move m, const ParameterSet& params, double float_tol) {
    if (params.n != vertex_count(m))
        throw Error("parameter set has n=" + std::to_string(params.n) + ", move needs " +
                    std::to_string(vertex_count(m)));
    require_generic(params);

    VerificationReport report;
    report.move = m;
    report.field = params.field;
    report.params_digest = fnv1a_hex(params_to_json(params).dump());

    const SideProduct lhs = side_product(m, Side::Lhs, params);
    const SideProduct rhs = side_product(m, Side::Rhs, params);
    const int n = row_size(m);

    if (params.field.exact()) {
        report.equal = true;
        report.max_discrepancy = "0";
        for (int r = 0; r < n && report.equal; ++r) {
            for (int c = 0; c < n; ++c) {
                if (lhs.matrix.at(r, c) != rhs.matrix.at(r, c)) {
                    report.equal = false;
                    report.first_mismatch = Mismatch{r + 1, c + 1, lhs.matrix.at(r, c).str(),
                                                     rhs.matrix.at(r, c).str()};
                    report.max_discrepancy = "nonzero";
                    break;
                }
            }
        }
    } else {
        double max_abs = 0.0;
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) {
                const double d = std::abs(lhs.matrix.at(r, c).dbl() - rhs.matrix.at(r, c).dbl());
                if (d > max_abs) {
                    max_abs = d;
                    if (d > float_tol && !report.first_mismatch)
                        report.first_mismatch = Mismatch{r + 1, c + 1, lhs.matrix.at(r, c).str(),
                                                         rhs.matrix.at(r, c).str()};
                }
            }
        }
        report.equal = max_abs <= float_tol;
        if (report.equal) report.first_mismatch.reset();
        report.max_discrepancy = shortest_double(max_abs);
    }
    return report;
}

TransportResult transport(std::span<const Scalar> row, Move m, Side s, const ParameterSet& params) {
    const WiringDiagram& w = wiring(m, s);
    const int n = row_size(m);
    if (static_cast<int>(row.size()) != n) throw Error("transport row must have length " + std::to_string(n));

    std::vector<Scalar> values(row.begin(), row.end());
    std::vector<FaceId> held = w.initial_faces;
    TransportResult result;

    const std::set<FaceId> boundary(w.final_faces.begin(), w.final_faces.end());
    for (const WiringStep& step : w.steps) {
        TransferMatrix t = m == Move::Heptagon
                               ? heptagon_matrix(step.simplex, step.inputs, step.outputs, params)
                               : pentagon_matrix(step.simplex, step.inputs, step.outputs, params);
        std::vector<Scalar> in;
        for (std::size_t k = 0; k < step.positions.size(); ++k) {
            const int pos = step.positions[k];
            if (held[pos - 1] != step.inputs[k])
                throw Error("wiring flow broken at simplex " + std::to_string(step.simplex));
            in.push_back(values[pos - 1]);
        }
        std::vector<Scalar> out = row_times(in, t.entries);
        for (std::size_t k = 0; k < step.positions.size(); ++k) {
            const int pos = step.positions[k];
            values[pos - 1] = out[k];
            held[pos - 1] = step.outputs[k];
            if (!boundary.count(step.outputs[k]))
                result.inner_values.emplace_back(step.outputs[k], out[k]);
        }
    }
    for (int pos = 1; pos <= n; ++pos) {
        if (held[pos - 1] != w.final_faces[pos - 1])
            throw Error("wiring did not reach the final assignment");
        result.final_values.emplace_back(held[pos - 1], values[pos - 1]);
    }
    return result;
}

nlohmann::json verification_report_to_json(const VerificationReport& r) {
    nlohmann::json j;
    j["schema"] = "polyrel/verification-v1";
    j["move"] = move_name(r.move);
    j["field"] = r.field.name();
    j["params_digest"] = r.params_digest;
    j["equal"] = r.equal;
    j["max_discrepancy"] = r.max_discrepancy;
    if (r.first_mismatch) {
        j["first_mismatch"] = {{"row", r.first_mismatch->row},
                               {"col", r.first_mismatch->col},
                               {"lhs", r.first_mismatch->lhs},
                               {"rhs", r.first_mismatch->rhs}};
    } else {
        j["first_mismatch"] = nullptr;
    }
    return j;
}

} // namespace polyrel
