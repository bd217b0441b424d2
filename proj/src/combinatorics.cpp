#include "polyrel/combinatorics.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

namespace polyrel {

FaceId::FaceId(int p, int q) : a(std::min(p, q)), b(std::max(p, q)) {
    if (p == q) throw InvalidVertex("face endpoints must differ, got " + std::to_string(p));
    if (p < 1 || q < 1) throw InvalidVertex("vertex labels start at 1");
}

int vertex_count(Move m) { return m == Move::Heptagon ? 7 : 5; }
int row_size(Move m) { return m == Move::Heptagon ? 6 : 3; }
int matrix_size(Move m) { return m == Move::Heptagon ? 3 : 2; }

std::string move_name(Move m) { return m == Move::Heptagon ? "heptagon" : "pentagon"; }

Move move_from_name(const std::string& name) {
    if (name == "heptagon") return Move::Heptagon;
    if (name == "pentagon") return Move::Pentagon;
    throw Error("unknown move: " + name);
}

FaceInfo face_of_pair(int p, int q, int n) {
    if (p < 1 || p > n) throw InvalidVertex(std::to_string(p) + " out of [1.." + std::to_string(n) + "]");
    if (q < 1 || q > n) throw InvalidVertex(std::to_string(q) + " out of [1.." + std::to_string(n) + "]");
    FaceId id(p, q);
    FaceInfo info{id, {}};
    for (int v = 1; v <= n; ++v)
        if (v != p && v != q) info.vertices.push_back(v);
    return info;
}

std::vector<int> face_vertices(FaceId f, int n) { return face_of_pair(f.a, f.b, n).vertices; }

FaceId face_of_vertices(std::span<const int> vertices, int n) {
    std::set<int> have(vertices.begin(), vertices.end());
    if (static_cast<int>(have.size()) != n - 2)
        throw InvalidFace("expected " + std::to_string(n - 2) + " distinct vertices");
    std::vector<int> missing;
    for (int v = 1; v <= n; ++v)
        if (!have.count(v)) missing.push_back(v);
    if (missing.size() != 2) throw InvalidFace("vertex set is not a codim-2 face");
    return FaceId(missing[0], missing[1]);
}

const std::vector<FaceId>& all_faces(int n) {
    static const auto cache = [] {
        std::map<int, std::vector<FaceId>> m;
        for (int n : {5, 7}) {
            std::vector<FaceId> faces;
            for (int a = 1; a <= n; ++a)
                for (int b = a + 1; b <= n; ++b) faces.emplace_back(a, b);
            m[n] = std::move(faces);
        }
        return m;
    }();
    auto it = cache.find(n);
    if (it == cache.end()) throw Error("unsupported vertex count " + std::to_string(n));
    return it->second;
}

int face_index(FaceId f, int n) {
    const auto& faces = all_faces(n);
    auto it = std::find(faces.begin(), faces.end(), f);
    if (it == faces.end()) throw InvalidFace(f.str() + " for n=" + std::to_string(n));
    return static_cast<int>(it - faces.begin());
}

std::vector<FaceId> support_faces(FaceId edge, int n) {
    if (edge.a < 1 || edge.b > n) throw InvalidVertex("edge " + edge.str());
    std::vector<FaceId> out;
    for (const FaceId& f : all_faces(n))
        if (!f.contains(edge.a) && !f.contains(edge.b)) out.push_back(f);
    return out;
}

int permutation_sign(std::span<const int> labels) {
    int sign = 1;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t j = i + 1; j < labels.size(); ++j) {
            if (labels[i] == labels[j])
                throw DuplicateLabel(std::to_string(labels[i]));
            if (labels[i] > labels[j]) sign = -sign;
        }
    }
    return sign;
}

namespace {

WiringStep step(int simplex, std::vector<int> pos, std::vector<std::pair<int, int>> in,
                std::vector<std::pair<int, int>> out) {
    WiringStep s;
    s.simplex = simplex;
    s.positions = std::move(pos);
    for (auto [a, b] : in) s.inputs.emplace_back(a, b);
    for (auto [a, b] : out) s.outputs.emplace_back(a, b);
    return s;
}

std::vector<FaceId> faces(std::vector<std::pair<int, int>> ps) {
    std::vector<FaceId> fs;
    for (auto [a, b] : ps) fs.emplace_back(a, b);
    return fs;
}

// The fixed wiring of both moves. Subscripts of the relation give the
// position triples; leg assignments are the unique flow-consistent ones
// (inner faces produced before consumed, every leg of simplex p contains p,
// both sides share the boundary assignment). The exact relation check in the
// test suite validates these tables against the ansatz.
WiringDiagram build(Move m, Side s) {
    WiringDiagram w;
    w.move = m;
    w.side = s;
    if (m == Move::Heptagon) {
        w.initial_faces = faces({{1, 5}, {1, 6}, {1, 7}, {2, 6}, {2, 7}, {3, 7}});
        w.final_faces = faces({{2, 5}, {3, 5}, {4, 5}, {3, 6}, {4, 6}, {4, 7}});
        if (s == Side::Lhs) {
            w.steps = {
                step(1, {1, 2, 3}, {{1, 5}, {1, 6}, {1, 7}}, {{1, 2}, {1, 3}, {1, 4}}),
                step(2, {1, 4, 5}, {{1, 2}, {2, 6}, {2, 7}}, {{2, 5}, {2, 3}, {2, 4}}),
                step(3, {2, 4, 6}, {{1, 3}, {2, 3}, {3, 7}}, {{3, 5}, {3, 6}, {3, 4}}),
                step(4, {3, 5, 6}, {{1, 4}, {2, 4}, {3, 4}}, {{4, 5}, {4, 6}, {4, 7}}),
            };
        } else {
            w.steps = {
                step(7, {3, 5, 6}, {{1, 7}, {2, 7}, {3, 7}}, {{5, 7}, {6, 7}, {4, 7}}),
                step(6, {2, 4, 5}, {{1, 6}, {2, 6}, {6, 7}}, {{5, 6}, {3, 6}, {4, 6}}),
                step(5, {1, 2, 3}, {{1, 5}, {5, 6}, {5, 7}}, {{2, 5}, {3, 5}, {4, 5}}),
            };
        }
    } else {
        w.initial_faces = faces({{1, 4}, {1, 5}, {2, 5}});
        w.final_faces = faces({{2, 4}, {3, 4}, {3, 5}});
        if (s == Side::Lhs) {
            w.steps = {
                step(1, {1, 2}, {{1, 4}, {1, 5}}, {{1, 2}, {1, 3}}),
                step(2, {1, 3}, {{1, 2}, {2, 5}}, {{2, 4}, {2, 3}}),
                step(3, {2, 3}, {{1, 3}, {2, 3}}, {{3, 4}, {3, 5}}),
            };
        } else {
            w.steps = {
                step(5, {2, 3}, {{1, 5}, {2, 5}}, {{4, 5}, {3, 5}}),
                step(4, {1, 2}, {{1, 4}, {4, 5}}, {{2, 4}, {3, 4}}),
            };
        }
    }
    return w;
}

} // namespace

const WiringDiagram& wiring(Move m, Side s) {
    static const WiringDiagram hl = build(Move::Heptagon, Side::Lhs);
    static const WiringDiagram hr = build(Move::Heptagon, Side::Rhs);
    static const WiringDiagram pl = build(Move::Pentagon, Side::Lhs);
    static const WiringDiagram pr = build(Move::Pentagon, Side::Rhs);
    if (m == Move::Heptagon) return s == Side::Lhs ? hl : hr;
    return s == Side::Lhs ? pl : pr;
}

const SimplexLegs& simplex_legs(Move m, int p) {
    static const auto cache = [] {
        std::map<std::pair<Move, int>, SimplexLegs> c;
        for (Move m : {Move::Heptagon, Move::Pentagon}) {
            for (Side s : {Side::Lhs, Side::Rhs}) {
                for (const auto& st : wiring(m, s).steps)
                    c[{m, st.simplex}] = SimplexLegs{st.inputs, st.outputs};
            }
        }
        return c;
    }();
    auto it = cache.find({m, p});
    if (it == cache.end())
        throw InvalidVertex("no simplex " + std::to_string(p) + " in " + move_name(m));
    return it->second;
}

nlohmann::json wiring_to_json(const WiringDiagram& w) {
    nlohmann::json j;
    j["move"] = move_name(w.move);
    j["side"] = w.side == Side::Lhs ? "lhs" : "rhs";
    auto face_list = [](const std::vector<FaceId>& fs) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& f : fs) a.push_back(f.str());
        return a;
    };
    j["initial"] = face_list(w.initial_faces);
    j["final"] = face_list(w.final_faces);
    j["steps"] = nlohmann::json::array();
    for (const auto& s : w.steps) {
        nlohmann::json js;
        js["simplex"] = s.simplex;
        js["positions"] = s.positions;
        js["inputs"] = face_list(s.inputs);
        js["outputs"] = face_list(s.outputs);
        j["steps"].push_back(js);
    }
    return j;
}

} // namespace polyrel
