#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "polyrel/errors.hpp"

namespace polyrel {

/// Codimension-2 face of the boundary simplex, named by the unordered pair of
/// vertices it omits (complement duality): face {p,q} is the one shared by
/// the codim-1 simplices p and q. Stored canonically with a < b.
struct FaceId {
    int a = 0;
    int b = 0;

    FaceId() = default;
    FaceId(int p, int q);

    bool contains(int v) const { return a == v || b == v; }
    int other(int v) const { return a == v ? b : a; }
    std::string str() const { return std::to_string(a) + std::to_string(b); }

    friend auto operator<=>(const FaceId&, const FaceId&) = default;
};

enum class Move { Heptagon, Pentagon };
enum class Side { Lhs, Rhs };

int vertex_count(Move m);                // 7 / 5
int row_size(Move m);                    // positions in a side row: 6 / 3
int matrix_size(Move m);                 // transfer matrix size: 3 / 2
std::string move_name(Move m);
Move move_from_name(const std::string& name);

/// Canonical face plus the vertex set it actually consists of.
struct FaceInfo {
    FaceId id;
    std::vector<int> vertices; // sorted complement of {a, b} in [1..n]
};

FaceInfo face_of_pair(int p, int q, int n);
std::vector<int> face_vertices(FaceId f, int n);
FaceId face_of_vertices(std::span<const int> vertices, int n);

/// All C(n,2) faces in lexicographic order; face_index is the position in it.
const std::vector<FaceId>& all_faces(int n);
int face_index(FaceId f, int n);

/// Faces whose vertex set avoids both endpoints of `edge`: the support of an
/// edge vector. C(n-2, 2) of them.
std::vector<FaceId> support_faces(FaceId edge, int n);

/// (-1)^(inversion count) of a sequence of pairwise distinct labels.
int permutation_sign(std::span<const int> labels);

struct WiringStep {
    int simplex = 0;
    std::vector<int> positions;   // 1-based row positions the matrix acts on
    std::vector<FaceId> inputs;   // ordered input legs (matrix rows)
    std::vector<FaceId> outputs;  // ordered output legs (matrix columns)
};

/// One side of a relation: the ordered transfer-matrix applications together
/// with the face held at each row position before and after. Both sides of a
/// move share initial_faces and final_faces (the common boundary).
struct WiringDiagram {
    Move move = Move::Heptagon;
    Side side = Side::Lhs;
    std::vector<WiringStep> steps;
    std::vector<FaceId> initial_faces; // position p holds initial_faces[p-1]
    std::vector<FaceId> final_faces;
};

const WiringDiagram& wiring(Move m, Side s);

/// Input/output legs of one codim-1 simplex, as fixed by the move's wiring.
struct SimplexLegs {
    std::vector<FaceId> inputs;
    std::vector<FaceId> outputs;
};
const SimplexLegs& simplex_legs(Move m, int p);

nlohmann::json wiring_to_json(const WiringDiagram& w);

} // namespace polyrel
