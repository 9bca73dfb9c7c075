#include "hexstruct/base_complex.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace hexstruct {

size_t HybridBaseComplex::hex_component_count() const {
  size_t n = 0;
  for (const auto& c : components)
    if (c.kind == ComponentKind::HexComponent) ++n;
  return n;
}

std::optional<EdgeId> straight_edge_continuation(const HexDominantMesh& mesh, EdgeId e,
                                                 VertexId v,
                                                 const std::vector<uint8_t>* stop_at_vertex) {
  if (stop_at_vertex && (*stop_at_vertex)[v]) return std::nullopt;
  const bool on_boundary = mesh.edge_boundary[e] != 0;

  // Faces of e that disqualify a candidate: on the boundary only boundary
  // faces count, so the walk stays within the surface grid.
  std::vector<FaceId> efaces;
  for (FaceId f : mesh.edge_faces[e])
    if (!on_boundary || mesh.face_boundary[f]) efaces.push_back(f);

  auto shares_face = [&](EdgeId cand) {
    for (FaceId f : mesh.edge_faces[cand])
      if (std::find(efaces.begin(), efaces.end(), f) != efaces.end()) return true;
    return false;
  };

  EdgeId found = kInvalidId;
  for (EdgeId cand : mesh.vertex_edges[v]) {
    if (cand == e) continue;
    if (on_boundary && !mesh.edge_boundary[cand]) continue;
    if (shares_face(cand)) continue;
    if (found != kInvalidId) return std::nullopt;  // ambiguous
    found = cand;
  }
  if (found == kInvalidId) return std::nullopt;
  return found;
}

std::optional<FaceId> surface_face_continuation(const HexDominantMesh& mesh, FaceId f,
                                                EdgeId crossing,
                                                const std::vector<uint8_t>* barrier_edges) {
  if (barrier_edges && (*barrier_edges)[crossing]) return std::nullopt;
  if (mesh.is_nonhex_incident(crossing)) return std::nullopt;
  if (mesh.is_irregular(crossing)) return std::nullopt;

  if (mesh.face_boundary[f]) {
    // Boundary surfaces spread within the boundary across regular edges.
    FaceId other = kInvalidId;
    for (FaceId g : mesh.edge_faces[crossing]) {
      if (!mesh.face_boundary[g] || g == f) continue;
      if (other != kInvalidId) return std::nullopt;
      other = g;
    }
    if (other == kInvalidId || !mesh.is_quad(other)) return std::nullopt;
    return other;
  }

  if (mesh.edge_boundary[crossing]) return std::nullopt;
  for (FaceId g : mesh.edge_faces[crossing])
    if (!mesh.is_quad(g)) return std::nullopt;

  // Regular interior edge: four quads in two opposite pairs; the continuation
  // is the unique face sharing no cell with f.
  FaceId found = kInvalidId;
  for (FaceId g : mesh.edge_faces[crossing]) {
    if (g == f) continue;
    bool shared = false;
    for (CellId c : mesh.face_cells[g])
      for (CellId d : mesh.face_cells[f])
        if (c == d) shared = true;
    if (shared) continue;
    if (found != kInvalidId) return std::nullopt;
    found = g;
  }
  if (found == kInvalidId) return std::nullopt;
  return found;
}

Frame trace_frame(const HexDominantMesh& mesh, const HybridSingularityGraph& hsg) {
  Frame fr;
  fr.vertex_in_frame.assign(mesh.vertex_count(), 0);
  fr.edge_in_frame.assign(mesh.edge_count(), 0);
  fr.face_in_frame.assign(mesh.face_count(), 0);

  auto mark_edge = [&](EdgeId e) {
    fr.edge_in_frame[e] = 1;
    fr.vertex_in_frame[mesh.edge_verts[e][0]] = 1;
    fr.vertex_in_frame[mesh.edge_verts[e][1]] = 1;
  };
  auto mark_face = [&](FaceId f) {
    fr.face_in_frame[f] = 1;
    for (EdgeId e : mesh.face_edges[f]) mark_edge(e);
  };

  // Seed: singularities, pseudo-singularities, and all non-hex cell faces.
  for (const auto& ch : hsg.singularities)
    for (EdgeId e : ch.edges) mark_edge(e);
  for (EdgeId e : hsg.pseudo_singularities) mark_edge(e);
  for (CellId c = 0; c < static_cast<CellId>(mesh.cell_count()); ++c)
    if (mesh.cell_kind[c] == CellKind::NonHex)
      for (FaceId f : mesh.cell_faces[c]) mark_face(f);

  // Separation surfaces are seeded from singularity and pseudo-singularity
  // edges only, and stop at this barrier set; seeding from arbitrary frame
  // edges would sweep the whole mesh.
  std::vector<uint8_t> barrier = fr.edge_in_frame;
  std::vector<uint8_t> stop_vertex(mesh.vertex_count(), 0);
  for (VertexId v = 0; v < static_cast<VertexId>(mesh.vertex_count()); ++v)
    stop_vertex[v] = hsg.vertex_is_singular[v] || hsg.vertex_is_pseudo_singular[v];

  std::vector<EdgeId> seeds;
  for (EdgeId e = 0; e < static_cast<EdgeId>(mesh.edge_count()); ++e)
    if (barrier[e]) seeds.push_back(e);

  std::vector<uint8_t> swept(mesh.face_count(), 0);
  auto sweep = [&](FaceId start) {
    if (swept[start]) return;
    std::deque<FaceId> queue{start};
    swept[start] = 1;
    while (!queue.empty()) {
      FaceId f = queue.front();
      queue.pop_front();
      mark_face(f);
      for (EdgeId x : mesh.face_edges[f]) {
        auto g = surface_face_continuation(mesh, f, x, &barrier);
        if (g && !swept[*g]) {
          swept[*g] = 1;
          queue.push_back(*g);
        }
      }
    }
  };

  size_t iterations = 0;
  bool changed = true;
  while (changed) {
    if (++iterations > mesh.edge_count() + 1)
      throw MeshError(MeshErrorKind::InternalError, "frame tracing failed to converge");
    changed = false;

    // Extend chains straight through regular regions.
    std::vector<EdgeId> frame_edges;
    for (EdgeId e = 0; e < static_cast<EdgeId>(mesh.edge_count()); ++e)
      if (fr.edge_in_frame[e]) frame_edges.push_back(e);
    for (EdgeId e : frame_edges)
      for (VertexId v : {mesh.edge_verts[e][0], mesh.edge_verts[e][1]}) {
        EdgeId cur = e;
        VertexId at = v;
        while (auto next = straight_edge_continuation(mesh, cur, at, &stop_vertex)) {
          if (fr.edge_in_frame[*next]) break;
          mark_edge(*next);
          changed = true;
          at = mesh.edge_other_vertex(*next, at);
          cur = *next;
        }
      }

    for (EdgeId e : seeds)
      for (FaceId f : mesh.edge_faces[e])
        if (mesh.is_quad(f) && !swept[f]) {
          sweep(f);
          changed = true;
        }
  }
  return fr;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

HybridBaseComplex partition_components(const HexDominantMesh& mesh, const Frame& frame) {
  HybridBaseComplex bc;
  bc.cell_component.assign(mesh.cell_count(), -1);

  // Components: non-hex singletons plus hex regions flood-filled without
  // crossing frame faces. Iteration order fixes component ids.
  for (CellId c = 0; c < static_cast<CellId>(mesh.cell_count()); ++c) {
    if (bc.cell_component[c] >= 0) continue;
    Component comp;
    int id = static_cast<int>(bc.components.size());
    if (mesh.cell_kind[c] == CellKind::NonHex) {
      comp.kind = ComponentKind::NonHexComponent;
      comp.cells = {c};
      bc.cell_component[c] = id;
    } else {
      comp.kind = ComponentKind::HexComponent;
      std::deque<CellId> queue{c};
      bc.cell_component[c] = id;
      while (!queue.empty()) {
        CellId cur = queue.front();
        queue.pop_front();
        comp.cells.push_back(cur);
        for (FaceId f : mesh.cell_faces[cur]) {
          if (frame.face_in_frame[f]) continue;
          for (CellId nb : mesh.face_cells[f])
            if (nb != cur && bc.cell_component[nb] < 0 &&
                mesh.cell_kind[nb] == CellKind::Hex) {
              bc.cell_component[nb] = id;
              queue.push_back(nb);
            }
        }
      }
      std::sort(comp.cells.begin(), comp.cells.end());
    }
    bc.components.push_back(std::move(comp));
  }

  // Patches: frame faces grouped by the component pair they separate, merged
  // across edges interior to exactly two frame faces of the same pair. Edge
  // irregularity and pseudo-singularity split patches.
  auto face_key = [&](FaceId f) {
    int a = -1, b = -1;
    const auto& cells = mesh.face_cells[f];
    if (!cells.empty()) a = bc.cell_component[cells[0]];
    if (cells.size() > 1) b = bc.cell_component[cells[1]];
    if (a > b) std::swap(a, b);
    return std::pair<int, int>{a, b};
  };

  std::vector<FaceId> frame_faces;
  for (FaceId f = 0; f < static_cast<FaceId>(mesh.face_count()); ++f)
    if (frame.face_in_frame[f]) frame_faces.push_back(f);

  std::vector<int> frame_face_count(mesh.edge_count(), 0);
  for (FaceId f : frame_faces)
    for (EdgeId e : mesh.face_edges[f]) ++frame_face_count[e];

  UnionFind uf(mesh.face_count());
  std::vector<uint8_t> patch_interior(mesh.edge_count(), 0);
  for (EdgeId e = 0; e < static_cast<EdgeId>(mesh.edge_count()); ++e) {
    if (frame_face_count[e] != 2) continue;
    if (mesh.is_irregular(e) || mesh.is_nonhex_incident(e)) continue;
    FaceId a = kInvalidId, b = kInvalidId;
    for (FaceId f : mesh.edge_faces[e])
      if (frame.face_in_frame[f]) (a == kInvalidId ? a : b) = f;
    if (face_key(a) != face_key(b)) continue;
    uf.unite(a, b);
    patch_interior[e] = 1;
  }

  std::map<int, int> root_to_patch;
  for (FaceId f : frame_faces) {
    int root = uf.find(f);
    auto it = root_to_patch.find(root);
    int pid;
    if (it == root_to_patch.end()) {
      pid = static_cast<int>(bc.patches.size());
      root_to_patch.emplace(root, pid);
      auto key = face_key(f);
      bc.patches.push_back(FramePatch{{}, key.first, key.second});
    } else {
      pid = it->second;
    }
    bc.patches[pid].faces.push_back(f);
  }

  // E_B: frame edges not interior to a patch. V_B: nodes of the E_B graph.
  bc.edge_in_complex.assign(mesh.edge_count(), 0);
  for (EdgeId e = 0; e < static_cast<EdgeId>(mesh.edge_count()); ++e)
    bc.edge_in_complex[e] = frame.edge_in_frame[e] && !patch_interior[e];

  std::vector<std::vector<EdgeId>> vertex_complex_edges(mesh.vertex_count());
  for (EdgeId e = 0; e < static_cast<EdgeId>(mesh.edge_count()); ++e)
    if (bc.edge_in_complex[e]) {
      vertex_complex_edges[mesh.edge_verts[e][0]].push_back(e);
      vertex_complex_edges[mesh.edge_verts[e][1]].push_back(e);
    }
  for (VertexId v = 0; v < static_cast<VertexId>(mesh.vertex_count()); ++v) {
    size_t deg = vertex_complex_edges[v].size();
    if (deg > 0 && deg != 2) bc.corners.push_back(v);
  }
  std::vector<uint8_t> is_corner(mesh.vertex_count(), 0);
  for (VertexId v : bc.corners) is_corner[v] = 1;

  // Block edges: E_B chained between corners; untouched cycles close up.
  std::vector<uint8_t> done(mesh.edge_count(), 0);
  auto walk = [&](EdgeId start, VertexId from) {
    BlockEdge be;
    EdgeId e = start;
    VertexId v = from;
    while (true) {
      done[e] = 1;
      be.edges.push_back(e);
      VertexId w = mesh.edge_other_vertex(e, v);
      if (is_corner[w]) break;
      const auto& inc = vertex_complex_edges[w];
      EdgeId next = inc[0] == e ? inc[1] : inc[0];
      if (done[next]) {
        be.closed = (next == start);
        break;
      }
      e = next;
      v = w;
    }
    return be;
  };
  for (EdgeId e = 0; e < static_cast<EdgeId>(mesh.edge_count()); ++e) {
    if (!bc.edge_in_complex[e] || done[e]) continue;
    VertexId a = mesh.edge_verts[e][0], b = mesh.edge_verts[e][1];
    if (is_corner[a]) {
      bc.block_edges.push_back(walk(e, a));
    } else if (is_corner[b]) {
      bc.block_edges.push_back(walk(e, b));
    } else {
      EdgeId cur = e;
      VertexId v = a;
      while (true) {
        const auto& inc = vertex_complex_edges[v];
        EdgeId prev = inc[0] == cur ? inc[1] : inc[0];
        if (prev == e) {
          bc.block_edges.push_back(walk(e, b));  // closed loop
          break;
        }
        VertexId w = mesh.edge_other_vertex(prev, v);
        cur = prev;
        if (is_corner[w]) {
          bc.block_edges.push_back(walk(cur, w));
          break;
        }
        v = w;
      }
    }
  }

  // Ring labeling: a hex component is a ring unless its boundary consists of
  // six patches with four corners each.
  std::vector<std::vector<int>> comp_patches(bc.components.size());
  for (size_t p = 0; p < bc.patches.size(); ++p) {
    if (bc.patches[p].comp_a >= 0) comp_patches[bc.patches[p].comp_a].push_back(int(p));
    if (bc.patches[p].comp_b >= 0 && bc.patches[p].comp_b != bc.patches[p].comp_a)
      comp_patches[bc.patches[p].comp_b].push_back(int(p));
  }
  auto patch_corner_count = [&](int p) {
    std::vector<VertexId> cs;
    for (FaceId f : bc.patches[p].faces)
      for (EdgeId e : mesh.face_edges[f])
        if (bc.edge_in_complex[e])
          for (VertexId v : mesh.edge_verts[e])
            if (is_corner[v]) cs.push_back(v);
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    return cs.size();
  };
  for (size_t ci = 0; ci < bc.components.size(); ++ci) {
    if (bc.components[ci].kind != ComponentKind::HexComponent) continue;
    bool cube = comp_patches[ci].size() == 6;
    if (cube)
      for (int p : comp_patches[ci])
        if (patch_corner_count(p) != 4) cube = false;
    bc.components[ci].is_ring = !cube;
  }

  return bc;
}

}  // namespace hexstruct
