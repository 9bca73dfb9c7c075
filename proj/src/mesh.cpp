#include "hexstruct/mesh.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hexstruct {

size_t HexDominantMesh::hex_count() const {
  size_t n = 0;
  for (CellKind k : cell_kind)
    if (k == CellKind::Hex) ++n;
  return n;
}

EdgeId HexDominantMesh::find_edge(VertexId a, VertexId b) const {
  for (EdgeId e : vertex_edges[a])
    if (edge_has_vertex(e, b)) return e;
  return kInvalidId;
}

std::vector<VertexId> canonical_face_loop(const std::vector<VertexId>& loop) {
  size_t n = loop.size();
  std::vector<VertexId> best;
  for (int dir = 0; dir < 2; ++dir) {
    for (size_t s = 0; s < n; ++s) {
      std::vector<VertexId> cand(n);
      for (size_t i = 0; i < n; ++i) {
        size_t idx = dir == 0 ? (s + i) % n : (s + n - i) % n;
        cand[i] = loop[idx];
      }
      if (best.empty() || cand < best) best = std::move(cand);
    }
  }
  return best;
}

namespace {

// Hex iff 8 vertices, 6 quads, and every vertex lies on exactly 3 faces.
CellKind classify_cell(const CellShell& shell) {
  if (shell.faces.size() != 6) return CellKind::NonHex;
  std::map<VertexId, int> incidence;
  for (const auto& f : shell.faces) {
    if (f.size() != 4) return CellKind::NonHex;
    for (VertexId v : f) incidence[v]++;
  }
  if (incidence.size() != 8) return CellKind::NonHex;
  for (auto& [v, cnt] : incidence)
    if (cnt != 3) return CellKind::NonHex;
  return CellKind::Hex;
}

void check_shell_closed(const CellShell& shell, CellId c) {
  // Every edge of the shell must appear in exactly 2 of the cell's faces.
  std::map<std::pair<VertexId, VertexId>, int> edge_use;
  for (const auto& f : shell.faces) {
    if (f.size() < 3)
      throw MeshError(MeshErrorKind::OpenShell,
                      "cell " + std::to_string(c) + ": face with <3 vertices");
    for (size_t i = 0; i < f.size(); ++i) {
      VertexId a = f[i], b = f[(i + 1) % f.size()];
      if (a == b)
        throw MeshError(MeshErrorKind::OpenShell,
                        "cell " + std::to_string(c) + ": degenerate face edge");
      edge_use[{std::min(a, b), std::max(a, b)}]++;
    }
  }
  for (auto& [e, cnt] : edge_use)
    if (cnt != 2)
      throw MeshError(MeshErrorKind::OpenShell,
                      "cell " + std::to_string(c) + ": shell does not close");
}

}  // namespace

HexDominantMesh build_mesh(const std::vector<CellShell>& raw_cells,
                           std::vector<Vec3> positions) {
  HexDominantMesh m;
  m.positions = std::move(positions);
  const auto nv = static_cast<VertexId>(m.positions.size());

  for (size_t c = 0; c < raw_cells.size(); ++c) {
    for (const auto& f : raw_cells[c].faces)
      for (VertexId v : f)
        if (v < 0 || v >= nv)
          throw MeshError(MeshErrorKind::DanglingIndex,
                          "cell " + std::to_string(c) + ": vertex index " +
                              std::to_string(v) + " out of range");
    check_shell_closed(raw_cells[c], static_cast<CellId>(c));
  }

  // Faces deduplicated by canonical loop; handle order follows first use.
  std::map<std::vector<VertexId>, FaceId> face_index;
  std::map<std::array<VertexId, 2>, EdgeId> edge_index;

  m.cell_faces.resize(raw_cells.size());
  m.cell_kind.resize(raw_cells.size());

  for (size_t c = 0; c < raw_cells.size(); ++c) {
    m.cell_kind[c] = classify_cell(raw_cells[c]);
    for (const auto& loop : raw_cells[c].faces) {
      auto key = canonical_face_loop(loop);
      auto it = face_index.find(key);
      FaceId f;
      if (it == face_index.end()) {
        f = static_cast<FaceId>(m.face_verts.size());
        face_index.emplace(key, f);
        m.face_verts.push_back(key);
        m.face_cells.emplace_back();
      } else {
        f = it->second;
      }
      if (m.face_cells[f].size() == 2)
        throw MeshError(MeshErrorKind::NonManifoldFace,
                        "face shared by more than two cells");
      m.face_cells[f].push_back(static_cast<CellId>(c));
      m.cell_faces[c].push_back(f);
    }
    // A shell may legally repeat a face only through distinct cells, never
    // within one cell.
    auto faces = m.cell_faces[c];
    std::sort(faces.begin(), faces.end());
    if (std::adjacent_find(faces.begin(), faces.end()) != faces.end())
      throw MeshError(MeshErrorKind::OpenShell,
                      "cell " + std::to_string(c) + ": repeated face in shell");
  }

  // Edges from face loops.
  m.face_edges.resize(m.face_verts.size());
  for (FaceId f = 0; f < static_cast<FaceId>(m.face_verts.size()); ++f) {
    const auto& loop = m.face_verts[f];
    for (size_t i = 0; i < loop.size(); ++i) {
      VertexId a = loop[i], b = loop[(i + 1) % loop.size()];
      std::array<VertexId, 2> key{std::min(a, b), std::max(a, b)};
      auto it = edge_index.find(key);
      EdgeId e;
      if (it == edge_index.end()) {
        e = static_cast<EdgeId>(m.edge_verts.size());
        edge_index.emplace(key, e);
        m.edge_verts.push_back(key);
      } else {
        e = it->second;
      }
      m.face_edges[f].push_back(e);
    }
  }

  // Adjacency tables.
  m.vertex_edges.resize(nv);
  m.vertex_faces.resize(nv);
  m.vertex_cells.resize(nv);
  m.edge_faces.resize(m.edge_verts.size());
  m.edge_cells.resize(m.edge_verts.size());
  m.cell_edges.resize(raw_cells.size());
  m.cell_verts.resize(raw_cells.size());

  for (EdgeId e = 0; e < static_cast<EdgeId>(m.edge_verts.size()); ++e) {
    m.vertex_edges[m.edge_verts[e][0]].push_back(e);
    m.vertex_edges[m.edge_verts[e][1]].push_back(e);
  }
  for (FaceId f = 0; f < static_cast<FaceId>(m.face_verts.size()); ++f) {
    for (VertexId v : m.face_verts[f]) m.vertex_faces[v].push_back(f);
    for (EdgeId e : m.face_edges[f]) m.edge_faces[e].push_back(f);
  }
  for (CellId c = 0; c < static_cast<CellId>(raw_cells.size()); ++c) {
    std::set<EdgeId> edges;
    std::set<VertexId> verts;
    for (FaceId f : m.cell_faces[c]) {
      edges.insert(m.face_edges[f].begin(), m.face_edges[f].end());
      verts.insert(m.face_verts[f].begin(), m.face_verts[f].end());
    }
    m.cell_edges[c].assign(edges.begin(), edges.end());
    m.cell_verts[c].assign(verts.begin(), verts.end());
    for (EdgeId e : m.cell_edges[c]) m.edge_cells[e].push_back(c);
    for (VertexId v : m.cell_verts[c]) m.vertex_cells[v].push_back(c);
  }

  // Boundary classification.
  m.face_boundary.resize(m.face_verts.size(), 0);
  m.edge_boundary.resize(m.edge_verts.size(), 0);
  m.vertex_boundary.resize(nv, 0);
  for (FaceId f = 0; f < static_cast<FaceId>(m.face_verts.size()); ++f) {
    if (m.face_cells[f].size() == 1) {
      m.face_boundary[f] = 1;
      for (EdgeId e : m.face_edges[f]) m.edge_boundary[e] = 1;
      for (VertexId v : m.face_verts[f]) m.vertex_boundary[v] = 1;
    }
  }

  // Two cells meeting at the same vertex set but different loops means a
  // non-conforming interface: both copies end up as boundary faces.
  {
    std::map<std::vector<VertexId>, int> boundary_sets;
    for (FaceId f = 0; f < static_cast<FaceId>(m.face_verts.size()); ++f) {
      if (!m.face_boundary[f]) continue;
      std::vector<VertexId> s = m.face_verts[f];
      std::sort(s.begin(), s.end());
      if (++boundary_sets[s] > 1) m.non_conforming = true;
    }
  }

  return m;
}

std::vector<std::vector<VertexId>> hex_face_loops(const std::array<VertexId, 8>& v) {
  return {{v[0], v[3], v[2], v[1]}, {v[4], v[5], v[6], v[7]},
          {v[0], v[1], v[5], v[4]}, {v[1], v[2], v[6], v[5]},
          {v[2], v[3], v[7], v[6]}, {v[3], v[0], v[4], v[7]}};
}

std::vector<std::vector<VertexId>> tet_face_loops(const std::array<VertexId, 4>& v) {
  return {{v[0], v[2], v[1]}, {v[0], v[1], v[3]}, {v[1], v[2], v[3]}, {v[2], v[0], v[3]}};
}

std::vector<std::vector<VertexId>> prism_face_loops(const std::array<VertexId, 6>& v) {
  return {{v[0], v[2], v[1]},
          {v[3], v[4], v[5]},
          {v[0], v[1], v[4], v[3]},
          {v[1], v[2], v[5], v[4]},
          {v[2], v[0], v[3], v[5]}};
}

std::vector<std::vector<VertexId>> pyramid_face_loops(const std::array<VertexId, 5>& v) {
  return {{v[0], v[3], v[2], v[1]},
          {v[0], v[1], v[4]},
          {v[1], v[2], v[4]},
          {v[2], v[3], v[4]},
          {v[3], v[0], v[4]}};
}

}  // namespace hexstruct
