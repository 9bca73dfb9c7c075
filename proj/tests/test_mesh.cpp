#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "hexstruct/synth.hpp"

using namespace hexstruct;

namespace {

// Counting oracle for a structured nx x ny x nz grid.
long grid_edges(long nx, long ny, long nz) {
  return nx * (ny + 1) * (nz + 1) + ny * (nx + 1) * (nz + 1) + nz * (nx + 1) * (ny + 1);
}
long grid_faces(long nx, long ny, long nz) {
  return nx * ny * (nz + 1) + ny * nz * (nx + 1) + nx * nz * (ny + 1);
}

// How many of an edge's endpoint coordinates sit on the grid hull.
int hull_coords(const HexDominantMesh& m, EdgeId e, double nx, double ny, double nz) {
  int shared = 0;
  const Vec3& a = m.positions[m.edge_verts[e][0]];
  const Vec3& b = m.positions[m.edge_verts[e][1]];
  double hi[3] = {nx, ny, nz};
  for (int d = 0; d < 3; ++d)
    if (a[d] == b[d] && (a[d] == 0.0 || a[d] == hi[d])) ++shared;
  return shared;
}

}  // namespace

TEST_CASE("grid element counts match closed-form formulas") {
  for (auto [nx, ny, nz] : {std::array{2, 3, 4}, std::array{1, 1, 1}, std::array{3, 3, 3}}) {
    HexDominantMesh m = synth_grid(nx, ny, nz);
    CAPTURE(nx);
    CHECK(m.cell_count() == size_t(nx) * ny * nz);
    CHECK(m.vertex_count() == size_t(nx + 1) * (ny + 1) * (nz + 1));
    CHECK(m.edge_count() == size_t(grid_edges(nx, ny, nz)));
    CHECK(m.face_count() == size_t(grid_faces(nx, ny, nz)));
    CHECK(m.hex_count() == m.cell_count());
    CHECK_FALSE(m.non_conforming);
  }
}

TEST_CASE("grid edge valence and boundary classification by position") {
  const int n = 3;
  HexDominantMesh m = synth_grid(n, n, n);
  for (EdgeId e = 0; e < (EdgeId)m.edge_count(); ++e) {
    // An axis-aligned grid edge lies on as many hull planes as it is missing
    // incident cells: 0 planes -> valence 4, 1 -> 2, 2 -> 1.
    int h = hull_coords(m, e, n, n, n);
    CHECK(m.edge_valence(e) == (h == 0 ? 4 : h == 1 ? 2 : 1));
    CHECK(bool(m.edge_boundary[e]) == (h > 0));
    CHECK(m.is_irregular(e) == (h == 2));
  }
}

TEST_CASE("face_cells sizes and boundary face count") {
  const int nx = 2, ny = 3, nz = 2;
  HexDominantMesh m = synth_grid(nx, ny, nz);
  long boundary = 0;
  for (FaceId f = 0; f < (FaceId)m.face_count(); ++f) {
    REQUIRE(m.face_cells[f].size() >= 1);
    REQUIRE(m.face_cells[f].size() <= 2);
    CHECK(bool(m.face_boundary[f]) == (m.face_cells[f].size() == 1));
    if (m.face_boundary[f]) ++boundary;
  }
  CHECK(boundary == 2 * (nx * ny + ny * nz + nx * nz));
}

TEST_CASE("face_edges runs along the face loop") {
  HexDominantMesh m = synth_inject_nonhex({2, 2, 2}, "glue-prism");
  for (FaceId f = 0; f < (FaceId)m.face_count(); ++f) {
    const auto& loop = m.face_verts[f];
    REQUIRE(m.face_edges[f].size() == loop.size());
    for (size_t i = 0; i < loop.size(); ++i) {
      EdgeId e = m.face_edges[f][i];
      VertexId a = loop[i], b = loop[(i + 1) % loop.size()];
      CHECK(m.edge_has_vertex(e, a));
      CHECK(m.edge_has_vertex(e, b));
    }
  }
}

TEST_CASE("adjacency tables are mutually consistent") {
  HexDominantMesh m = synth_inject_nonhex({2, 2, 2}, "y-junction");
  for (EdgeId e = 0; e < (EdgeId)m.edge_count(); ++e) {
    CHECK(m.edge_verts[e][0] < m.edge_verts[e][1]);
    for (VertexId v : m.edge_verts[e]) {
      const auto& ve = m.vertex_edges[v];
      CHECK(std::find(ve.begin(), ve.end(), e) != ve.end());
    }
    // edge_cells == cells listing e in cell_edges.
    std::set<CellId> expect;
    for (CellId c = 0; c < (CellId)m.cell_count(); ++c)
      if (std::find(m.cell_edges[c].begin(), m.cell_edges[c].end(), e) != m.cell_edges[c].end())
        expect.insert(c);
    CHECK(std::set<CellId>(m.edge_cells[e].begin(), m.edge_cells[e].end()) == expect);
  }
  for (FaceId f = 0; f < (FaceId)m.face_count(); ++f)
    for (CellId c : m.face_cells[f]) {
      const auto& cf = m.cell_faces[c];
      CHECK(std::find(cf.begin(), cf.end(), f) != cf.end());
    }
}

TEST_CASE("vertex boundary flag follows incident boundary faces") {
  HexDominantMesh m = synth_pie(3, 2, 2);
  for (VertexId v = 0; v < (VertexId)m.vertex_count(); ++v) {
    bool on_boundary = false;
    for (FaceId f : m.vertex_faces[v]) on_boundary |= bool(m.face_boundary[f]);
    CHECK(bool(m.vertex_boundary[v]) == on_boundary);
  }
}

TEST_CASE("find_edge agrees with edge_verts") {
  HexDominantMesh m = synth_grid(2, 2, 2);
  for (EdgeId e = 0; e < (EdgeId)m.edge_count(); ++e) {
    CHECK(m.find_edge(m.edge_verts[e][0], m.edge_verts[e][1]) == e);
    CHECK(m.find_edge(m.edge_verts[e][1], m.edge_verts[e][0]) == e);
  }
  CHECK(m.find_edge(0, (VertexId)m.vertex_count() - 1) == kInvalidId);
}

TEST_CASE("build_mesh is deterministic") {
  HexDominantMesh a = synth_pie(5, 2, 2);
  HexDominantMesh b = synth_pie(5, 2, 2);
  CHECK(a.edge_verts == b.edge_verts);
  CHECK(a.face_verts == b.face_verts);
  CHECK(a.cell_edges == b.cell_edges);
}

TEST_CASE("canonical_face_loop is rotation and reflection invariant") {
  std::vector<VertexId> base{4, 7, 2, 9};
  std::vector<VertexId> canon = canonical_face_loop(base);
  for (size_t r = 0; r < base.size(); ++r) {
    std::vector<VertexId> rot(base.begin() + r, base.end());
    rot.insert(rot.end(), base.begin(), base.begin() + r);
    CHECK(canonical_face_loop(rot) == canon);
    std::vector<VertexId> rev(rot.rbegin(), rot.rend());
    CHECK(canonical_face_loop(rev) == canon);
  }
}

TEST_CASE("build_mesh rejects broken input") {
  std::vector<Vec3> pos(8, Vec3{0, 0, 0});
  std::array<VertexId, 8> hex{0, 1, 2, 3, 4, 5, 6, 7};

  SUBCASE("dangling vertex index") {
    CellShell c{hex_face_loops({0, 1, 2, 3, 4, 5, 6, 99})};
    CHECK_THROWS_WITH_AS(build_mesh({c}, pos), doctest::Contains("vertex"), MeshError);
    try {
      build_mesh({c}, pos);
    } catch (const MeshError& e) {
      CHECK(e.kind() == MeshErrorKind::DanglingIndex);
    }
  }

  SUBCASE("open shell") {
    auto faces = hex_face_loops(hex);
    faces.pop_back();
    try {
      build_mesh({{faces}}, pos);
      FAIL("expected MeshError");
    } catch (const MeshError& e) {
      CHECK(e.kind() == MeshErrorKind::OpenShell);
    }
  }

  SUBCASE("non-manifold face") {
    // Three hexes stacked on the same bottom quad.
    std::vector<Vec3> p(16, Vec3{0, 0, 0});
    CellShell a{hex_face_loops({0, 1, 2, 3, 4, 5, 6, 7})};
    CellShell b{hex_face_loops({0, 1, 2, 3, 8, 9, 10, 11})};
    CellShell c{hex_face_loops({0, 1, 2, 3, 12, 13, 14, 15})};
    try {
      build_mesh({a, b, c}, p);
      FAIL("expected MeshError");
    } catch (const MeshError& e) {
      CHECK(e.kind() == MeshErrorKind::NonManifoldFace);
    }
  }
}

TEST_CASE("cell kinds for the standard shapes") {
  HexDominantMesh m = synth_inject_nonhex({2, 2, 2}, "split-hex");
  size_t nonhex = 0;
  for (CellKind k : m.cell_kind)
    if (k == CellKind::NonHex) ++nonhex;
  CHECK(nonhex == 2);  // the two prisms
  CHECK(m.cell_count() == 9);

  HexDominantMesh py = synth_inject_nonhex({2, 2, 2}, "glue-pyramid");
  CHECK(py.nonhex_count() == 1);
  // Pyramid: 5 faces, 8 edges, 5 vertices.
  for (CellId c = 0; c < (CellId)py.cell_count(); ++c)
    if (py.cell_kind[c] == CellKind::NonHex) {
      CHECK(py.cell_faces[c].size() == 5);
      CHECK(py.cell_edges[c].size() == 8);
      CHECK(py.cell_verts[c].size() == 5);
    }
}
