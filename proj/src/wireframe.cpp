#include "hexstruct/wireframe.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "hexstruct/base_complex.hpp"

namespace hexstruct {

namespace {

// Maximal chains over an edge subset; nodes are flagged vertices and vertices
// of degree != 2 within the subset.
std::vector<WireSegment> segment_chains(const HexDominantMesh& mesh,
                                        const std::vector<uint8_t>& in_set,
                                        const std::vector<uint8_t>& node_vertex) {
  std::vector<std::vector<EdgeId>> incident(mesh.vertex_count());
  for (EdgeId e = 0; e < static_cast<EdgeId>(mesh.edge_count()); ++e)
    if (in_set[e]) {
      incident[mesh.edge_verts[e][0]].push_back(e);
      incident[mesh.edge_verts[e][1]].push_back(e);
    }
  auto is_node = [&](VertexId v) {
    return node_vertex[v] || incident[v].size() != 2;
  };

  std::vector<uint8_t> done(mesh.edge_count(), 0);
  std::vector<WireSegment> segments;
  auto walk = [&](EdgeId start, VertexId from) {
    WireSegment seg;
    EdgeId e = start;
    VertexId v = from;
    while (true) {
      done[e] = 1;
      seg.edges.push_back(e);
      if (mesh.is_irregular(e)) seg.is_irregular = true;
      VertexId w = mesh.edge_other_vertex(e, v);
      if (is_node(w)) break;
      const auto& inc = incident[w];
      EdgeId next = inc[0] == e ? inc[1] : inc[0];
      if (done[next]) {
        seg.closed = (next == start);
        break;
      }
      e = next;
      v = w;
    }
    return seg;
  };
  for (EdgeId e = 0; e < static_cast<EdgeId>(mesh.edge_count()); ++e) {
    if (!in_set[e] || done[e]) continue;
    VertexId a = mesh.edge_verts[e][0], b = mesh.edge_verts[e][1];
    if (is_node(a)) {
      segments.push_back(walk(e, a));
    } else if (is_node(b)) {
      segments.push_back(walk(e, b));
    } else {
      EdgeId cur = e;
      VertexId v = a;
      while (true) {
        const auto& inc = incident[v];
        EdgeId prev = inc[0] == cur ? inc[1] : inc[0];
        if (prev == e) {
          segments.push_back(walk(e, b));  // closed loop
          break;
        }
        VertexId w = mesh.edge_other_vertex(prev, v);
        cur = prev;
        if (is_node(w)) {
          segments.push_back(walk(cur, w));
          break;
        }
        v = w;
      }
    }
  }
  return segments;
}

}  // namespace

VsgWireframe build_wireframe(const HexDominantMesh& mesh, const ValenceSingularityGraph& vsg) {
  VsgWireframe wf;
  std::vector<uint8_t> in_set = vsg.edge_in_graph;

  for (VertexId sv : vsg.singular_vertices)
    for (EdgeId first : mesh.vertex_edges[sv]) {
      if (mesh.is_irregular(first)) continue;  // already in the VSG
      EdgeId cur = first;
      VertexId v = sv;
      while (true) {
        in_set[cur] = 1;
        VertexId w = mesh.edge_other_vertex(cur, v);
        if (vsg.vertex_is_singular[w]) break;
        // Interior traces stop on hitting the boundary; boundary traces keep
        // running along the surface.
        if (!mesh.edge_boundary[cur] && mesh.vertex_boundary[w]) break;
        auto next = straight_edge_continuation(mesh, cur, w);
        if (!next || mesh.is_irregular(*next)) break;
        cur = *next;
        v = w;
      }
    }

  wf.edge_in_wireframe = in_set;
  std::vector<uint8_t> node_vertex(mesh.vertex_count(), 0);
  for (VertexId v = 0; v < static_cast<VertexId>(mesh.vertex_count()); ++v)
    node_vertex[v] = vsg.vertex_is_singular[v];
  wf.segments = segment_chains(mesh, in_set, node_vertex);

  wf.edge_segment.assign(mesh.edge_count(), -1);
  for (size_t s = 0; s < wf.segments.size(); ++s)
    for (EdgeId e : wf.segments[s].edges) wf.edge_segment[e] = static_cast<int>(s);

  std::set<VertexId> nodes;
  std::vector<std::vector<EdgeId>> incident(mesh.vertex_count());
  for (EdgeId e = 0; e < static_cast<EdgeId>(mesh.edge_count()); ++e)
    if (in_set[e]) {
      incident[mesh.edge_verts[e][0]].push_back(e);
      incident[mesh.edge_verts[e][1]].push_back(e);
    }
  for (VertexId v = 0; v < static_cast<VertexId>(mesh.vertex_count()); ++v)
    if (!incident[v].empty() && (node_vertex[v] || incident[v].size() != 2))
      nodes.insert(v);
  wf.nodes.assign(nodes.begin(), nodes.end());
  wf.edge_opacity.assign(mesh.edge_count(), 0.0);
  return wf;
}

void mark_non_important(VsgWireframe& wf, const HexDominantMesh& mesh,
                        const ValenceSingularityGraph& vsg) {
  // Rule (V): a node carries importance only as a singular vertex away from a
  // quad-surrounded boundary corner. "Corner" is combinatorial: a boundary
  // vertex with exactly 3 incident boundary quads.
  auto node_important = [&](VertexId v) {
    if (!vsg.vertex_is_singular[v]) return false;
    if (mesh.vertex_boundary[v]) {
      int bquads = 0;
      bool all_quads = true;
      for (FaceId f : mesh.vertex_faces[v]) {
        if (!mesh.is_quad(f)) all_quads = false;
        if (mesh.face_boundary[f] && mesh.is_quad(f)) ++bquads;
      }
      if (bquads == 3 && all_quads) return false;
    }
    return true;
  };

  // Segment endpoints (with the first edge at each endpoint).
  struct Endpoint {
    int segment;
    VertexId v;
    EdgeId first_edge;
  };
  std::vector<std::array<Endpoint, 2>> seg_ends(wf.segments.size());
  std::vector<bool> has_ends(wf.segments.size(), false);
  for (size_t s = 0; s < wf.segments.size(); ++s) {
    const auto& seg = wf.segments[s];
    if (seg.closed) continue;
    EdgeId efront = seg.edges.front(), eback = seg.edges.back();
    VertexId a, b;
    if (seg.edges.size() == 1) {
      a = mesh.edge_verts[efront][0];
      b = mesh.edge_verts[efront][1];
    } else {
      EdgeId second = seg.edges[1];
      a = mesh.edge_has_vertex(second, mesh.edge_verts[efront][0])
              ? mesh.edge_verts[efront][1]
              : mesh.edge_verts[efront][0];
      EdgeId prev = seg.edges[seg.edges.size() - 2];
      b = mesh.edge_has_vertex(prev, mesh.edge_verts[eback][0]) ? mesh.edge_verts[eback][1]
                                                                : mesh.edge_verts[eback][0];
    }
    seg_ends[s] = {Endpoint{int(s), a, efront}, Endpoint{int(s), b, eback}};
    has_ends[s] = true;
  }

  // (E1) plus hidden regular loops.
  for (size_t s = 0; s < wf.segments.size(); ++s) {
    auto& seg = wf.segments[s];
    if (seg.is_irregular) continue;
    if (seg.closed) {
      seg.important = false;
      continue;
    }
    if (!has_ends[s]) continue;
    if (!node_important(seg_ends[s][0].v) && !node_important(seg_ends[s][1].v))
      seg.important = false;
  }

  // (E2)-(E4) at every singular vertex over the regular segments meeting it.
  std::map<VertexId, std::vector<Endpoint>> at_vertex;
  for (size_t s = 0; s < wf.segments.size(); ++s) {
    if (wf.segments[s].is_irregular || !has_ends[s]) continue;
    for (const auto& ep : seg_ends[s])
      if (vsg.vertex_is_singular[ep.v]) at_vertex[ep.v].push_back(ep);
  }

  auto pairable = [&](const Endpoint& a, const Endpoint& b) {
    if (a.segment == b.segment) return false;
    // First edges from different cells, all incident faces quads.
    for (CellId ca : mesh.edge_cells[a.first_edge])
      for (CellId cb : mesh.edge_cells[b.first_edge])
        if (ca == cb) return false;
    for (EdgeId e : {a.first_edge, b.first_edge})
      for (FaceId f : mesh.edge_faces[e])
        if (!mesh.is_quad(f)) return false;
    return true;
  };

  for (auto& [v, eps] : at_vertex) {
    const size_t n = eps.size();
    std::vector<std::vector<size_t>> partners(n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (i != j && pairable(eps[i], eps[j])) partners[i].push_back(j);

    for (size_t i = 0; i < n; ++i) {
      if (partners[i].size() == 1) {
        size_t j = partners[i][0];
        // (E2) mutually exclusive pair.
        if (partners[j].size() == 1 && partners[j][0] == i) {
          wf.segments[eps[i].segment].important = false;
          wf.segments[eps[j].segment].important = false;
        }
      } else if (partners[i].size() >= 2) {
        // (E3) hub whose partners have no other option: hub plus the
        // lowest-id partner go; (E4) multi-option everywhere: nothing.
        bool all_exclusive = true;
        for (size_t j : partners[i])
          if (!(partners[j].size() == 1 && partners[j][0] == i)) all_exclusive = false;
        if (all_exclusive) {
          int lowest = static_cast<int>(wf.segments.size());
          for (size_t j : partners[i]) lowest = std::min(lowest, eps[j].segment);
          wf.segments[eps[i].segment].important = false;
          wf.segments[lowest].important = false;
        }
      }
    }
  }
}

void reactivate(VsgWireframe& wf, const HexDominantMesh& mesh,
                const ValenceSingularityGraph& vsg) {
  std::vector<uint8_t> vertex_touches_irregular(mesh.vertex_count(), 0);
  for (EdgeId e = 0; e < static_cast<EdgeId>(mesh.edge_count()); ++e)
    if (vsg.edge_in_graph[e]) {
      vertex_touches_irregular[mesh.edge_verts[e][0]] = 1;
      vertex_touches_irregular[mesh.edge_verts[e][1]] = 1;
    }
  for (auto& seg : wf.segments) {
    if (seg.important) continue;
    for (EdgeId e : seg.edges)
      if (vertex_touches_irregular[mesh.edge_verts[e][0]] ||
          vertex_touches_irregular[mesh.edge_verts[e][1]]) {
        seg.reactivated = true;
        break;
      }
  }
}

ColorAssignment assign_colors(const HexDominantMesh& mesh, const ValenceSingularityGraph& vsg,
                              double rho) {
  ColorAssignment ca;
  ca.rho = rho;
  const int n = static_cast<int>(vsg.singularities.size());
  ca.color_class.assign(n, 0);
  if (n == 0) return ca;

  std::vector<int> edge_chain(mesh.edge_count(), -1);
  for (int i = 0; i < n; ++i)
    for (EdgeId e : vsg.singularities[i].edges) edge_chain[e] = i;

  // E_i/E_j per chain pair: distinct edges parallel to the other chain.
  std::map<std::pair<int, int>, std::pair<std::set<EdgeId>, std::set<EdgeId>>> pp;
  for (FaceId f = 0; f < static_cast<FaceId>(mesh.face_count()); ++f) {
    if (!mesh.is_quad(f)) continue;
    const auto& fe = mesh.face_edges[f];
    for (int k = 0; k < 2; ++k) {
      EdgeId a = fe[k], b = fe[k + 2];
      int ci = edge_chain[a], cj = edge_chain[b];
      if (ci < 0 || cj < 0 || ci == cj) continue;
      if (ci > cj) std::swap(ci, cj), std::swap(a, b);
      auto& entry = pp[{ci, cj}];
      entry.first.insert(a);
      entry.second.insert(b);
    }
  }

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  for (const auto& [key, sets] : pp) {
    auto [i, j] = key;
    double ri = double(sets.first.size()) / double(vsg.singularities[i].edges.size());
    double rj = double(sets.second.size()) / double(vsg.singularities[j].edges.size());
    if (std::min(ri, rj) >= rho) {
      ca.partial_parallel_pairs.push_back({i, j});
      parent[find(i)] = find(j);
    }
  }

  // Chain adjacency via shared vertices.
  std::map<VertexId, std::vector<int>> chains_at;
  for (int i = 0; i < n; ++i)
    for (EdgeId e : vsg.singularities[i].edges)
      for (VertexId v : mesh.edge_verts[e]) {
        auto& lst = chains_at[v];
        if (std::find(lst.begin(), lst.end(), i) == lst.end()) lst.push_back(i);
      }

  std::map<int, std::vector<int>> class_members;
  for (int i = 0; i < n; ++i) class_members[find(i)].push_back(i);
  std::set<std::pair<int, int>> class_adj;
  for (const auto& [v, lst] : chains_at)
    for (size_t a = 0; a < lst.size(); ++a)
      for (size_t b = a + 1; b < lst.size(); ++b) {
        int ra = find(lst[a]), rb = find(lst[b]);
        if (ra != rb) {
          class_adj.insert({ra, rb});
          class_adj.insert({rb, ra});
        }
      }

  // Greedy colors, smallest classes first; adjacent classes must differ.
  std::vector<int> roots;
  for (const auto& [root, members] : class_members) roots.push_back(root);
  std::sort(roots.begin(), roots.end(), [&](int a, int b) {
    size_t sa = class_members[a].size(), sb = class_members[b].size();
    if (sa != sb) return sa < sb;
    return class_members[a].front() < class_members[b].front();
  });
  std::map<int, int> class_color;
  for (int root : roots) {
    std::set<int> used;
    for (const auto& [pair_a, pair_b] : class_adj)
      if (pair_a == root) {
        auto it = class_color.find(pair_b);
        if (it != class_color.end()) used.insert(it->second);
      }
    int color = 0;
    while (used.count(color)) ++color;
    class_color[root] = color;
  }
  for (int i = 0; i < n; ++i) ca.color_class[i] = class_color[find(i)];
  return ca;
}

void assign_opacity(VsgWireframe& wf, const HexDominantMesh& mesh, double o_min,
                    double lambda) {
  wf.edge_opacity.assign(mesh.edge_count(), 0.0);
  std::vector<EdgeId> retained;
  std::vector<uint8_t> in_retained(mesh.edge_count(), 0);
  for (const auto& seg : wf.segments) {
    if (!seg.important && !seg.reactivated) continue;
    for (EdgeId e : seg.edges)
      if (!in_retained[e]) {
        in_retained[e] = 1;
        retained.push_back(e);
      }
  }

  std::vector<std::vector<EdgeId>> incident(mesh.vertex_count());
  for (EdgeId e : retained) {
    incident[mesh.edge_verts[e][0]].push_back(e);
    incident[mesh.edge_verts[e][1]].push_back(e);
  }

  std::vector<int> dist(mesh.edge_count(), -1);
  std::deque<EdgeId> queue;
  for (EdgeId e : retained)
    if (mesh.is_irregular(e) || mesh.is_nonhex_incident(e)) {
      dist[e] = 0;
      queue.push_back(e);
    }
  while (!queue.empty()) {
    EdgeId e = queue.front();
    queue.pop_front();
    for (VertexId v : mesh.edge_verts[e])
      for (EdgeId nb : incident[v])
        if (dist[nb] < 0) {
          dist[nb] = dist[e] + 1;
          queue.push_back(nb);
        }
  }
  for (EdgeId e : retained) {
    double op = dist[e] < 0 ? o_min : std::max(o_min, std::exp(-lambda * dist[e]));
    if (mesh.is_irregular(e)) op = 1.0;
    wf.edge_opacity[e] = op;
  }
}

SheetWireframe sheet_wireframe(const HexDominantMesh& mesh, const Sheet& sheet,
                               double rho, double o_min, double lambda) {
  SheetWireframe out;
  std::set<CellId> cells(sheet.cells.begin(), sheet.cells.end());
  cells.insert(sheet.adjacent_nonhex.begin(), sheet.adjacent_nonhex.end());

  std::map<VertexId, VertexId> remap;
  std::vector<Vec3> positions;
  std::vector<CellShell> shells;
  for (CellId c : cells) {
    CellShell shell;
    for (FaceId f : mesh.cell_faces[c]) {
      std::vector<VertexId> loop;
      for (VertexId v : mesh.face_verts[f]) {
        auto it = remap.find(v);
        if (it == remap.end()) {
          it = remap.emplace(v, static_cast<VertexId>(positions.size())).first;
          positions.push_back(mesh.positions[v]);
          out.to_parent_vertex.push_back(v);
        }
        loop.push_back(it->second);
      }
      shell.faces.push_back(std::move(loop));
    }
    shells.push_back(std::move(shell));
  }
  out.submesh = build_mesh(shells, std::move(positions));
  out.vsg = extract_vsg(out.submesh);
  out.wireframe = build_wireframe(out.submesh, out.vsg);
  mark_non_important(out.wireframe, out.submesh, out.vsg);
  reactivate(out.wireframe, out.submesh, out.vsg);
  out.colors = assign_colors(out.submesh, out.vsg, rho);
  assign_opacity(out.wireframe, out.submesh, o_min, lambda);
  return out;
}

}  // namespace hexstruct
