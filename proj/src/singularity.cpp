#include "hexstruct/singularity.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hexstruct {

namespace {

struct ClassKey {
  int valence;
  bool boundary;
  bool operator<(const ClassKey& o) const {
    return valence != o.valence ? valence < o.valence : boundary < o.boundary;
  }
  bool operator==(const ClassKey& o) const {
    return valence == o.valence && boundary == o.boundary;
  }
};

// Partition candidate edges into maximal simple chains. Chains never cross a
// vertex where the continuation is ambiguous (branch), where the class
// changes, or where `stop_vertex` holds.
std::vector<SingularityChain> chain_edges(const HexDominantMesh& mesh,
                                          const std::vector<EdgeId>& candidates,
                                          const std::vector<uint8_t>& stop_vertex) {
  std::vector<uint8_t> is_candidate(mesh.edge_count(), 0);
  for (EdgeId e : candidates) is_candidate[e] = 1;

  auto key_of = [&](EdgeId e) {
    return ClassKey{mesh.edge_valence(e), mesh.edge_boundary[e] != 0};
  };

  // Per vertex: candidate edges grouped by class.
  std::map<std::pair<VertexId, ClassKey>, std::vector<EdgeId>> incident;
  for (EdgeId e : candidates) {
    ClassKey k = key_of(e);
    incident[{mesh.edge_verts[e][0], k}].push_back(e);
    incident[{mesh.edge_verts[e][1], k}].push_back(e);
  }

  auto is_node = [&](VertexId v, ClassKey k) {
    if (!stop_vertex.empty() && stop_vertex[v]) return true;
    auto it = incident.find({v, k});
    return it == incident.end() || it->second.size() != 2;
  };

  std::vector<uint8_t> visited(mesh.edge_count(), 0);
  std::vector<SingularityChain> chains;

  auto walk = [&](EdgeId start, VertexId from) {
    SingularityChain ch;
    ch.valence = mesh.edge_valence(start);
    ch.boundary = mesh.edge_boundary[start] != 0;
    ClassKey k = key_of(start);
    EdgeId e = start;
    VertexId v = from;
    while (true) {
      visited[e] = 1;
      ch.edges.push_back(e);
      VertexId w = mesh.edge_other_vertex(e, v);
      if (is_node(w, k)) break;
      const auto& inc = incident.at({w, k});
      EdgeId next = inc[0] == e ? inc[1] : inc[0];
      if (visited[next]) { ch.closed = (next == start); break; }
      e = next;
      v = w;
    }
    return ch;
  };

  for (EdgeId e : candidates) {
    if (visited[e]) continue;
    ClassKey k = key_of(e);
    VertexId a = mesh.edge_verts[e][0], bvert = mesh.edge_verts[e][1];
    if (is_node(a, k)) {
      chains.push_back(walk(e, a));
    } else if (is_node(bvert, k)) {
      chains.push_back(walk(e, bvert));
    } else {
      // Interior of a chain or a closed loop: walk backwards to a node first.
      EdgeId cur = e;
      VertexId v = a;  // walk in the direction of vertex a
      while (true) {
        const auto& inc = incident.at({v, k});
        EdgeId prev = inc[0] == cur ? inc[1] : inc[0];
        if (prev == e) { chains.push_back(walk(e, bvert)); break; }  // loop
        VertexId w = mesh.edge_other_vertex(prev, v);
        cur = prev;
        if (is_node(w, k)) { chains.push_back(walk(cur, w)); break; }
        v = w;
      }
    }
  }
  return chains;
}

std::vector<VertexId> chain_endpoints(const HexDominantMesh& mesh,
                                      const SingularityChain& ch) {
  if (ch.closed) return {};
  if (ch.edges.size() == 1)
    return {mesh.edge_verts[ch.edges[0]][0], mesh.edge_verts[ch.edges[0]][1]};
  // First edge endpoint not shared with second edge; symmetric for last.
  auto free_end = [&](EdgeId e, EdgeId inner) {
    VertexId a = mesh.edge_verts[e][0], b = mesh.edge_verts[e][1];
    return mesh.edge_has_vertex(inner, a) ? b : a;
  };
  return {free_end(ch.edges.front(), ch.edges[1]),
          free_end(ch.edges.back(), ch.edges[ch.edges.size() - 2])};
}

}  // namespace

HybridSingularityGraph extract_hybrid_singularity_graph(const HexDominantMesh& mesh) {
  HybridSingularityGraph g;
  g.vertex_is_singular.assign(mesh.vertex_count(), 0);
  g.vertex_is_pseudo_singular.assign(mesh.vertex_count(), 0);

  std::vector<EdgeId> candidates;
  for (EdgeId e = 0; e < static_cast<EdgeId>(mesh.edge_count()); ++e) {
    if (mesh.is_nonhex_incident(e)) {
      g.pseudo_singularities.push_back(e);
      g.vertex_is_pseudo_singular[mesh.edge_verts[e][0]] = 1;
      g.vertex_is_pseudo_singular[mesh.edge_verts[e][1]] = 1;
    } else if (mesh.is_irregular(e)) {
      candidates.push_back(e);
    }
  }

  g.singularities = chain_edges(mesh, candidates, g.vertex_is_pseudo_singular);

  std::set<VertexId> sv;
  for (const auto& ch : g.singularities)
    for (VertexId v : chain_endpoints(mesh, ch))
      if (!g.vertex_is_pseudo_singular[v]) sv.insert(v);  // pseudo wins
  g.singular_vertices.assign(sv.begin(), sv.end());
  for (VertexId v : g.singular_vertices) g.vertex_is_singular[v] = 1;

  for (VertexId v = 0; v < static_cast<VertexId>(mesh.vertex_count()); ++v)
    if (g.vertex_is_pseudo_singular[v]) g.pseudo_singular_vertices.push_back(v);

  return g;
}

ValenceSingularityGraph extract_vsg(const HexDominantMesh& mesh) {
  ValenceSingularityGraph g;
  g.vertex_is_singular.assign(mesh.vertex_count(), 0);
  g.edge_in_graph.assign(mesh.edge_count(), 0);

  std::vector<EdgeId> candidates;
  for (EdgeId e = 0; e < static_cast<EdgeId>(mesh.edge_count()); ++e)
    if (mesh.is_irregular(e)) {
      candidates.push_back(e);
      g.edge_in_graph[e] = 1;
    }

  g.singularities = chain_edges(mesh, candidates, {});

  std::set<VertexId> sv;
  for (const auto& ch : g.singularities)
    for (VertexId v : chain_endpoints(mesh, ch)) sv.insert(v);
  g.singular_vertices.assign(sv.begin(), sv.end());
  for (VertexId v : g.singular_vertices) g.vertex_is_singular[v] = 1;

  return g;
}

}  // namespace hexstruct
