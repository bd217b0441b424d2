#include "polyrel/ansatz.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace polyrel {

const std::array<Scalar, 3>& ParameterSet::triple(int vertex) const {
    if (vertex < 1 || vertex > n)
        throw InvalidVertex(std::to_string(vertex) + " out of [1.." + std::to_string(n) + "]");
    return triples[static_cast<std::size_t>(vertex - 1)];
}

Scalar det3(const ParameterSet& params, int i, int j, int k) {
    if (i == j || i == k || j == k)
        throw DuplicateIndex("d_{" + std::to_string(i) + std::to_string(j) + std::to_string(k) + "}");
    const auto& a = params.triple(i);
    const auto& b = params.triple(j);
    const auto& c = params.triple(k);
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - b[0] * (a[1] * c[2] - a[2] * c[1]) +
           c[0] * (a[1] * b[2] - a[2] * b[1]);
}

ParameterSet vandermonde_params(std::vector<Scalar> t) {
    if (t.empty()) throw Error("empty parameter list");
    const FieldConfig f = t.front().field();
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j)
            if (Scalar::close(t[i], t[j], 0.0))
                throw DuplicateParameter("t_" + std::to_string(i + 1) + " = t_" + std::to_string(j + 1));
    ParameterSet p;
    p.n = static_cast<int>(t.size());
    p.field = f;
    for (const Scalar& ti : t)
        p.triples.push_back({Scalar::one(f), ti, ti * ti});
    return p;
}

ParameterSet default_vandermonde(int n, const FieldConfig& f) {
    std::vector<Scalar> t;
    for (int i = 1; i <= n; ++i) {
        Scalar v = Scalar::zero(f);
        const Scalar one = Scalar::one(f);
        for (int k = 0; k < i; ++k) v += one;
        t.push_back(v);
    }
    return vandermonde_params(std::move(t));
}

GenericityReport genericity_check(const ParameterSet& params) {
    GenericityReport report;
    for (int i = 1; i <= params.n; ++i)
        for (int j = i + 1; j <= params.n; ++j)
            for (int k = j + 1; k <= params.n; ++k)
                if (det3(params, i, j, k).is_zero()) report.vanishing.push_back({i, j, k});
    return report;
}

void require_generic(const ParameterSet& params) {
    GenericityReport r = genericity_check(params);
    if (r.ok()) return;
    std::ostringstream os;
    os << "vanishing d for triples";
    for (const auto& t : r.vanishing) os << " (" << t[0] << "," << t[1] << "," << t[2] << ")";
    throw NonGenericParameters(os.str());
}

ParameterSet sample_params(Rng& rng, const FieldConfig& f, int n) {
    ParameterSet p;
    p.n = n;
    p.field = f;
    for (int i = 0; i < n; ++i) {
        std::array<Scalar, 3> t{Scalar::zero(f), Scalar::zero(f), Scalar::zero(f)};
        for (auto& s : t) s = sample_scalar(rng, f);
        p.triples.push_back(std::move(t));
    }
    return p;
}

ParameterSet sample_generic_params(std::uint64_t seed, const FieldConfig& f, int n, int max_retries) {
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        Rng rng(seed + static_cast<std::uint64_t>(attempt));
        ParameterSet p = sample_params(rng, f, n);
        if (genericity_check(p).ok()) return p;
    }
    throw NonGenericParameters("no generic set within " + std::to_string(max_retries) +
                               " resamples from seed " + std::to_string(seed));
}

namespace {

void check_legs(int p, std::span<const FaceId> inputs, std::span<const FaceId> outputs, int k) {
    if (static_cast<int>(inputs.size()) != k || static_cast<int>(outputs.size()) != k)
        throw LegMismatch("simplex " + std::to_string(p) + " needs " + std::to_string(k) +
                          " inputs and outputs");
    std::set<FaceId> seen;
    for (const auto& f : inputs) {
        if (!f.contains(p)) throw LegMismatch("leg " + f.str() + " does not contain " + std::to_string(p));
        seen.insert(f);
    }
    for (const auto& f : outputs) {
        if (!f.contains(p)) throw LegMismatch("leg " + f.str() + " does not contain " + std::to_string(p));
        seen.insert(f);
    }
    if (seen.size() != 2 * static_cast<std::size_t>(k))
        throw LegMismatch("legs of simplex " + std::to_string(p) + " are not distinct");
}

Scalar checked_div(const Scalar& num, const Scalar& den) {
    if (den.is_zero()) throw ZeroDenominator("transfer-matrix denominator vanished");
    return num / den;
}

void assert_regular(const TransferMatrix& t) {
    if (!t.entries.field().exact()) return;
    if (exact_determinant(t.entries).is_zero())
        throw ZeroDenominator("transfer matrix of simplex " + std::to_string(t.simplex) +
                              " is singular");
}

} // namespace

TransferMatrix heptagon_matrix(int p, std::span<const FaceId> inputs,
                               std::span<const FaceId> outputs, const ParameterSet& params) {
    check_legs(p, inputs, outputs, 3);
    TransferMatrix t{p, ScalarMatrix(3, 3, params.field),
                     {inputs.begin(), inputs.end()},
                     {outputs.begin(), outputs.end()}};
    for (int r = 0; r < 3; ++r) {
        const int i = inputs[r].other(p);
        std::array<int, 2> others{};
        int u = 0;
        for (int rr = 0; rr < 3; ++rr)
            if (rr != r) others[u++] = inputs[rr].other(p);
        const int j = others[0], k = others[1];
        const Scalar den = det3(params, i, j, p) * det3(params, i, k, p);
        for (int c = 0; c < 3; ++c) {
            const int l = outputs[c].other(p);
            t.entries.at(r, c) = checked_div(det3(params, j, l, p) * det3(params, k, l, p), den);
        }
    }
    assert_regular(t);
    return t;
}

TransferMatrix pentagon_matrix(int p, std::span<const FaceId> inputs,
                               std::span<const FaceId> outputs, const ParameterSet& params) {
    check_legs(p, inputs, outputs, 2);
    TransferMatrix t{p, ScalarMatrix(2, 2, params.field),
                     {inputs.begin(), inputs.end()},
                     {outputs.begin(), outputs.end()}};
    for (int r = 0; r < 2; ++r) {
        const int i = inputs[r].other(p);
        const int j = inputs[1 - r].other(p);
        const Scalar den = det3(params, i, j, p);
        for (int c = 0; c < 2; ++c) {
            const int l = outputs[c].other(p);
            t.entries.at(r, c) = checked_div(det3(params, j, l, p), den);
        }
    }
    assert_regular(t);
    return t;
}

TransferMatrix transfer_matrix(Move m, int p, const ParameterSet& params) {
    const SimplexLegs& legs = simplex_legs(m, p);
    return m == Move::Heptagon ? heptagon_matrix(p, legs.inputs, legs.outputs, params)
                               : pentagon_matrix(p, legs.inputs, legs.outputs, params);
}

Scalar generalized_vector(int n, std::span<const int> sigma, FaceId v, const ParameterSet& params) {
    if (n != 5 && n != 7) throw Error("generalized vector supports n in {5, 7}");
    if (params.n != n) throw Error("parameter set has wrong vertex count");
    const int expected = (n - 5) / 2 + 1;
    std::set<int> sig(sigma.begin(), sigma.end());
    if (static_cast<int>(sig.size()) != expected || static_cast<int>(sigma.size()) != expected)
        throw InvalidFace("sigma must have " + std::to_string(expected) + " distinct vertices");
    if (v.a < 1 || v.b > n) throw InvalidFace(v.str() + " for n=" + std::to_string(n));
    for (int i : sigma) {
        if (i < 1 || i > n) throw InvalidVertex(std::to_string(i));
        if (v.contains(i)) return Scalar::zero(params.field); // sigma not inside v
    }
    // cyclic ascending order of the complement pair: (a, b) with b - a mod n
    // on the short forward arc; fixes the sign of odd products
    int l = v.a, m = v.b;
    if ((m - l) % n > (n - 1) / 2) std::swap(l, m);
    Scalar out = Scalar::one(params.field);
    for (int i : sigma) out *= det3(params, i, l, m);
    return out;
}

nlohmann::json params_to_json(const ParameterSet& params) {
    nlohmann::json j;
    j["schema"] = "polyrel/params-v1";
    j["n"] = params.n;
    nlohmann::json field;
    field["kind"] = params.field.kind == FieldKind::Rational ? "rational"
                    : params.field.kind == FieldKind::Prime  ? "prime"
                                                             : "float64";
    if (params.field.kind == FieldKind::Prime) field["p"] = params.field.p;
    j["field"] = field;
    j["mode"] = "explicit";
    nlohmann::json triples = nlohmann::json::array();
    for (const auto& t : params.triples) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& s : t) {
            if (params.field.kind == FieldKind::Float64)
                row.push_back(s.dbl());
            else
                row.push_back(s.str());
        }
        triples.push_back(row);
    }
    j["triples"] = triples;
    return j;
}

namespace {

Scalar scalar_from_json(const nlohmann::json& v, const FieldConfig& f) {
    if (v.is_string()) return Scalar::parse(v.get<std::string>(), f);
    if (v.is_number() && f.kind == FieldKind::Float64) return Scalar::real(v.get<double>());
    if (v.is_number_integer() && f.kind == FieldKind::Rational)
        return Scalar::rational(mpq_class(v.get<long>()));
    if (v.is_number_unsigned() && f.kind == FieldKind::Prime)
        return Scalar::residue(v.get<std::uint64_t>(), f.p);
    throw SchemaError("bad scalar value " + v.dump() + " for field " + f.name());
}

} // namespace

ParameterSet params_from_json(const nlohmann::json& j) {
    try {
        const auto& field = j.at("field");
        const std::string kind = field.at("kind").get<std::string>();
        FieldConfig f;
        if (kind == "rational")
            f = FieldConfig::rational();
        else if (kind == "prime")
            f = FieldConfig::prime(field.at("p").get<std::uint64_t>());
        else if (kind == "float64")
            f = FieldConfig::float64();
        else
            throw SchemaError("unknown field kind " + kind);

        const int n = j.at("n").get<int>();
        if (n != 5 && n != 7) throw SchemaError("n must be 5 or 7");

        const std::string mode = j.value("mode", std::string("explicit"));
        if (mode == "vandermonde") {
            std::vector<Scalar> t;
            for (const auto& v : j.at("t")) t.push_back(scalar_from_json(v, f));
            if (static_cast<int>(t.size()) != n) throw SchemaError("t length != n");
            return vandermonde_params(std::move(t));
        }
        if (mode != "explicit") throw SchemaError("unknown mode " + mode);

        ParameterSet p;
        p.n = n;
        p.field = f;
        for (const auto& row : j.at("triples")) {
            if (row.size() != 3) throw SchemaError("triple must have 3 entries");
            p.triples.push_back({scalar_from_json(row[0], f), scalar_from_json(row[1], f),
                                 scalar_from_json(row[2], f)});
        }
        if (static_cast<int>(p.triples.size()) != n) throw SchemaError("triples length != n");
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(e.what());
    }
}

} // namespace polyrel
