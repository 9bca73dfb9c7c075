#include "hexstruct/sheets.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace hexstruct {

namespace {

struct EdgeUnionFind {
  std::vector<int> parent;
  explicit EdgeUnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool hex_incident_face(const HexDominantMesh& mesh, FaceId f) {
  for (CellId c : mesh.face_cells[f])
    if (mesh.cell_kind[c] == CellKind::Hex) return true;
  return false;
}

// Edges e and m adjacent within one hex cell: shared vertex, common hex.
bool hex_adjacent(const HexDominantMesh& mesh, EdgeId e, EdgeId m) {
  VertexId shared = kInvalidId;
  for (VertexId v : mesh.edge_verts[e])
    if (mesh.edge_has_vertex(m, v)) shared = v;
  if (shared == kInvalidId) return false;
  for (CellId c : mesh.edge_cells[e]) {
    if (mesh.cell_kind[c] != CellKind::Hex) continue;
    const auto& ce = mesh.cell_edges[c];
    if (std::find(ce.begin(), ce.end(), m) != ce.end()) return true;
  }
  return false;
}

std::vector<Sheet> sheets_from_classes(const HexDominantMesh& mesh, EdgeUnionFind& uf,
                                       const std::vector<uint8_t>& member,
                                       SheetLevel level) {
  // Group member edges by class root; order sheets by smallest edge id.
  std::map<int, std::vector<EdgeId>> classes;
  for (EdgeId e = 0; e < static_cast<EdgeId>(mesh.edge_count()); ++e)
    if (member[e]) classes[uf.find(e)].push_back(e);

  std::vector<std::vector<EdgeId>> ordered;
  for (auto& [root, edges] : classes) ordered.push_back(std::move(edges));
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  std::vector<Sheet> sheets;
  for (auto& edges : ordered) {
    Sheet s;
    s.level = level;
    s.parallel_edges = std::move(edges);
    std::set<CellId> cells;
    for (EdgeId e : s.parallel_edges)
      for (CellId c : mesh.edge_cells[e])
        if (mesh.cell_kind[c] == CellKind::Hex) cells.insert(c);
    s.cells.assign(cells.begin(), cells.end());
    sheets.push_back(std::move(s));
  }
  return sheets;
}

}  // namespace

bool parallel(const HexDominantMesh& mesh, EdgeId a, EdgeId b) {
  if (a == b) return false;
  for (VertexId v : mesh.edge_verts[a])
    if (mesh.edge_has_vertex(b, v)) return false;
  for (FaceId f : mesh.edge_faces[a]) {
    if (!mesh.is_quad(f)) continue;
    const auto& fe = mesh.face_edges[f];
    if (std::find(fe.begin(), fe.end(), b) != fe.end()) return true;
  }
  return false;
}

std::vector<Sheet> extract_sheets(const HexDominantMesh& mesh, SheetLevel level,
                                  const HybridBaseComplex* bc) {
  EdgeUnionFind uf(mesh.edge_count());
  std::vector<uint8_t> member(mesh.edge_count(), 0);

  if (level == SheetLevel::Mesh) {
    // Propagation runs through hex cells only: opposite edges of every quad
    // face of a hex cell are identified.
    for (FaceId f = 0; f < static_cast<FaceId>(mesh.face_count()); ++f) {
      if (!mesh.is_quad(f) || !hex_incident_face(mesh, f)) continue;
      const auto& fe = mesh.face_edges[f];
      uf.unite(fe[0], fe[2]);
      uf.unite(fe[1], fe[3]);
      for (EdgeId e : fe) member[e] = 1;
    }
    return sheets_from_classes(mesh, uf, member, level);
  }

  if (!bc)
    throw MeshError(MeshErrorKind::InternalError,
                    "base-complex level sheets need a base complex");

  // Block level: opposite sides of every quad patch are parallel; block edges
  // carry their member mesh edges into the closure.
  std::vector<int> edge_block(mesh.edge_count(), -1);
  for (size_t b = 0; b < bc->block_edges.size(); ++b)
    for (EdgeId e : bc->block_edges[b].edges) edge_block[e] = static_cast<int>(b);

  // Opposite sides of a patch connect through its interior quads: run the
  // opposite-edge closure over every patch face. Interior patch edges only
  // conduct; membership stays restricted to block edges below.
  for (const auto& patch : bc->patches)
    for (FaceId f : patch.faces) {
      if (!mesh.is_quad(f)) continue;
      const auto& fe = mesh.face_edges[f];
      uf.unite(fe[0], fe[2]);
      uf.unite(fe[1], fe[3]);
    }
  // Chain cohesion: edges of one block edge always travel together.
  for (const auto& be : bc->block_edges) {
    bool hex_only = true;
    for (EdgeId e : be.edges)
      if (mesh.is_nonhex_incident(e)) hex_only = false;
    if (!hex_only) continue;
    for (size_t i = 1; i < be.edges.size(); ++i) uf.unite(be.edges[0], be.edges[i]);
    for (EdgeId e : be.edges) member[e] = 1;
  }
  std::vector<Sheet> sheets = sheets_from_classes(mesh, uf, member, level);
  for (Sheet& s : sheets) {
    s.edge_chain.reserve(s.parallel_edges.size());
    for (EdgeId e : s.parallel_edges) s.edge_chain.push_back(edge_block[e]);
  }
  return sheets;
}

void augment_nonhex(const HexDominantMesh& mesh, Sheet& sheet) {
  std::set<CellId> nonhex;
  for (EdgeId e : sheet.parallel_edges)
    for (CellId c : mesh.edge_cells[e])
      if (mesh.cell_kind[c] == CellKind::NonHex) nonhex.insert(c);
  sheet.adjacent_nonhex.assign(nonhex.begin(), nonhex.end());
}

void classify_sheet(const HexDominantMesh& mesh, Sheet& sheet) {
  sheet.t1 = sheet.t2 = sheet.t3 = false;
  std::set<VertexId> unmatched;

  std::vector<uint8_t> in_sheet(mesh.edge_count(), 0);
  for (EdgeId e : sheet.parallel_edges) in_sheet[e] = 1;

  std::map<VertexId, std::vector<EdgeId>> at_vertex;
  for (EdgeId e : sheet.parallel_edges) {
    at_vertex[mesh.edge_verts[e][0]].push_back(e);
    at_vertex[mesh.edge_verts[e][1]].push_back(e);
  }

  // At base-complex level the block edge is the parallel unit: two edges of
  // the same chain meeting head-to-tail are not a sharing pair.
  std::map<EdgeId, int> chain_of;
  if (!sheet.edge_chain.empty())
    for (size_t i = 0; i < sheet.parallel_edges.size(); ++i)
      chain_of[sheet.parallel_edges[i]] = sheet.edge_chain[i];
  auto same_chain = [&](EdgeId a, EdgeId b) {
    if (chain_of.empty()) return false;
    int ca = chain_of[a], cb = chain_of[b];
    return ca >= 0 && ca == cb;
  };

  auto cell_has_edge = [&](CellId c, EdgeId e) {
    const auto& ce = mesh.cell_edges[c];
    return std::find(ce.begin(), ce.end(), e) != ce.end();
  };
  auto share_face = [&](CellId a, CellId b) {
    for (FaceId f : mesh.cell_faces[a])
      for (FaceId g : mesh.cell_faces[b])
        if (f == g) return true;
    return false;
  };

  for (const auto& [v, edges] : at_vertex) {
    if (edges.size() < 2) continue;
    for (size_t i = 0; i < edges.size(); ++i)
      for (size_t j = i + 1; j < edges.size(); ++j) {
        EdgeId ei = edges[i], ej = edges[j];
        if (same_chain(ei, ej)) continue;
        unmatched.insert(v);
        bool common_hex = false;
        for (CellId c : mesh.vertex_cells[v]) {
          bool has_i = cell_has_edge(c, ei), has_j = cell_has_edge(c, ej);
          if (mesh.cell_kind[c] == CellKind::NonHex) {
            if (has_i || has_j) sheet.t1 = true;
          } else if (has_i && has_j) {
            common_hex = true;
          }
        }
        if (common_hex) {
          sheet.t3 = true;
          continue;
        }
        // Self-parallel: the two edges lie in distinct face-adjacent hexes.
        bool adjacent_hexes = false;
        for (CellId ci : mesh.edge_cells[ei]) {
          if (mesh.cell_kind[ci] != CellKind::Hex) continue;
          for (CellId cj : mesh.edge_cells[ej]) {
            if (mesh.cell_kind[cj] != CellKind::Hex || ci == cj) continue;
            if (share_face(ci, cj)) adjacent_hexes = true;
          }
        }
        if (adjacent_hexes) sheet.t2 = true;
      }
  }

  sheet.unmatched_vertices.assign(unmatched.begin(), unmatched.end());
  sheet.perfect = sheet.unmatched_vertices.empty();
}

void classify_sheets(const HexDominantMesh& mesh, std::vector<Sheet>& sheets,
                     bool use_parallel) {
#ifdef HEXSTRUCT_OPENMP
  if (use_parallel) {
    const auto n = static_cast<int64_t>(sheets.size());
#pragma omp parallel for schedule(dynamic)
    for (int64_t i = 0; i < n; ++i) {
      augment_nonhex(mesh, sheets[i]);
      classify_sheet(mesh, sheets[i]);
    }
    return;
  }
#else
  (void)use_parallel;
#endif
  for (auto& s : sheets) {
    augment_nonhex(mesh, s);
    classify_sheet(mesh, s);
  }
}

std::vector<SubSheet> decompose_sheet(const HexDominantMesh& mesh, const Sheet& sheet,
                                      int parent_id) {
  // Parallel neighbors within E_P, via hex-incident quad faces.
  std::vector<uint8_t> in_sheet(mesh.edge_count(), 0);
  for (EdgeId e : sheet.parallel_edges) in_sheet[e] = 1;
  std::map<EdgeId, std::vector<EdgeId>> nbrs;
  for (EdgeId e : sheet.parallel_edges) {
    std::set<EdgeId> n;
    for (FaceId f : mesh.edge_faces[e]) {
      if (!mesh.is_quad(f) || !hex_incident_face(mesh, f)) continue;
      const auto& fe = mesh.face_edges[f];
      for (int i = 0; i < 4; ++i)
        if (fe[i] == e && in_sheet[fe[(i + 2) % 4]]) n.insert(fe[(i + 2) % 4]);
    }
    nbrs[e].assign(n.begin(), n.end());
  }

  std::vector<uint8_t> consumed(mesh.edge_count(), 0);
  std::vector<SubSheet> result;

  for (;;) {
    EdgeId seed = kInvalidId;
    for (EdgeId e : sheet.parallel_edges)
      if (!consumed[e]) {
        seed = e;
        break;
      }
    if (seed == kInvalidId) break;

    // Grow E_SP* breadth-first, smallest edge id first; reject candidates
    // adjacent to a member within some hex cell.
    std::set<EdgeId> members{seed};
    std::set<EdgeId> frontier{seed};
    std::set<EdgeId> rejected;
    while (!frontier.empty()) {
      EdgeId e = *frontier.begin();
      frontier.erase(frontier.begin());
      for (EdgeId cand : nbrs[e]) {
        if (consumed[cand] || members.count(cand) || rejected.count(cand)) continue;
        bool clash = false;
        for (EdgeId m : members)
          if (hex_adjacent(mesh, cand, m)) {
            clash = true;
            break;
          }
        if (clash) {
          rejected.insert(cand);
          continue;
        }
        members.insert(cand);
        frontier.insert(cand);
      }
    }
    for (EdgeId e : members) consumed[e] = 1;

    // Subsheet cells: hex cells fully covered by visited vertices; then drop
    // members with no incident subsheet cell.
    std::set<VertexId> visited;
    for (EdgeId e : members) {
      visited.insert(mesh.edge_verts[e][0]);
      visited.insert(mesh.edge_verts[e][1]);
    }
    std::set<CellId> cells;
    for (EdgeId e : members)
      for (CellId c : mesh.edge_cells[e]) {
        if (mesh.cell_kind[c] != CellKind::Hex) continue;
        bool all = true;
        for (VertexId v : mesh.cell_verts[c])
          if (!visited.count(v)) all = false;
        if (all) cells.insert(c);
      }

    SubSheet sub;
    sub.parent = parent_id;
    sub.level = sheet.level;
    for (EdgeId e : members) {
      bool touches = false;
      for (CellId c : mesh.edge_cells[e])
        if (cells.count(c)) touches = true;
      if (touches) sub.parallel_edges.push_back(e);
    }
    if (sub.parallel_edges.empty()) continue;
    std::set<CellId> kept_cells;
    for (EdgeId e : sub.parallel_edges)
      for (CellId c : mesh.edge_cells[e])
        if (cells.count(c)) kept_cells.insert(c);
    sub.cells.assign(kept_cells.begin(), kept_cells.end());
    augment_nonhex(mesh, sub);
    classify_sheet(mesh, sub);
    result.push_back(std::move(sub));
  }
  return result;
}

}  // namespace hexstruct
