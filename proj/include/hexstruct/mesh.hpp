#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hexstruct {

// Dense handles, contiguous in [0, count) per element kind.
using VertexId = int32_t;
using EdgeId = int32_t;
using FaceId = int32_t;
using CellId = int32_t;

inline constexpr int32_t kInvalidId = -1;

enum class CellKind : uint8_t { Hex, NonHex };

enum class MeshErrorKind {
  NonManifoldFace,
  OpenShell,
  DanglingIndex,
  UnsupportedRecipe,
  InternalError,
};

class MeshError : public std::runtime_error {
 public:
  MeshError(MeshErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  MeshErrorKind kind() const { return kind_; }

 private:
  MeshErrorKind kind_;
};

using Vec3 = std::array<double, 3>;

// Cell described as a closed shell of face loops. Shared faces are matched by
// canonical loop; each face of a cell must pair with exactly one other face
// of the same cell along every edge.
struct CellShell {
  std::vector<std::vector<VertexId>> faces;
};

// Immutable after construction; all queries are read-only.
class HexDominantMesh {
 public:
  // Geometry / elements
  std::vector<Vec3> positions;
  std::vector<std::array<VertexId, 2>> edge_verts;  // sorted pairs
  std::vector<std::vector<VertexId>> face_verts;    // canonical loops
  std::vector<std::vector<EdgeId>> face_edges;
  std::vector<std::vector<FaceId>> cell_faces;
  std::vector<std::vector<EdgeId>> cell_edges;
  std::vector<std::vector<VertexId>> cell_verts;
  std::vector<CellKind> cell_kind;

  // Adjacency
  std::vector<std::vector<EdgeId>> vertex_edges;
  std::vector<std::vector<FaceId>> vertex_faces;
  std::vector<std::vector<CellId>> vertex_cells;
  std::vector<std::vector<FaceId>> edge_faces;
  std::vector<std::vector<CellId>> edge_cells;
  std::vector<std::vector<CellId>> face_cells;  // size 1 or 2 per face

  // Boundary flags
  std::vector<uint8_t> vertex_boundary;
  std::vector<uint8_t> edge_boundary;
  std::vector<uint8_t> face_boundary;

  bool non_conforming = false;

  size_t vertex_count() const { return positions.size(); }
  size_t edge_count() const { return edge_verts.size(); }
  size_t face_count() const { return face_verts.size(); }
  size_t cell_count() const { return cell_faces.size(); }

  size_t hex_count() const;
  size_t nonhex_count() const { return cell_count() - hex_count(); }

  int edge_valence(EdgeId e) const { return static_cast<int>(edge_cells[e].size()); }

  // n(e) != 4 interior, n(e) != 2 boundary.
  bool is_irregular(EdgeId e) const {
    int n = edge_valence(e);
    return edge_boundary[e] ? n != 2 : n != 4;
  }

  // Edge touches at least one non-hex cell.
  bool is_nonhex_incident(EdgeId e) const {
    for (CellId c : edge_cells[e])
      if (cell_kind[c] == CellKind::NonHex) return true;
    return false;
  }

  bool is_quad(FaceId f) const { return face_verts[f].size() == 4; }

  VertexId edge_other_vertex(EdgeId e, VertexId v) const {
    return edge_verts[e][0] == v ? edge_verts[e][1] : edge_verts[e][0];
  }

  bool edge_has_vertex(EdgeId e, VertexId v) const {
    return edge_verts[e][0] == v || edge_verts[e][1] == v;
  }

  EdgeId find_edge(VertexId a, VertexId b) const;
};

// Deterministic: identical input produces identical handle assignment.
HexDominantMesh build_mesh(const std::vector<CellShell>& raw_cells,
                           std::vector<Vec3> positions);

// Canonical face key: lexicographically smallest rotation/reflection.
std::vector<VertexId> canonical_face_loop(const std::vector<VertexId>& loop);

// Face loops for the standard cell kinds, VTK corner ordering.
std::vector<std::vector<VertexId>> hex_face_loops(const std::array<VertexId, 8>& v);
std::vector<std::vector<VertexId>> tet_face_loops(const std::array<VertexId, 4>& v);
std::vector<std::vector<VertexId>> prism_face_loops(const std::array<VertexId, 6>& v);
std::vector<std::vector<VertexId>> pyramid_face_loops(const std::array<VertexId, 5>& v);

}  // namespace hexstruct
