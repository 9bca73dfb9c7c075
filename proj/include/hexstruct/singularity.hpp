#pragma once

#include <vector>

#include "hexstruct/mesh.hpp"

namespace hexstruct {

// Maximal chain of connected irregular edges of uniform valence and uniform
// boundary/interior class.
struct SingularityChain {
  std::vector<EdgeId> edges;  // ordered along the chain
  int valence = 0;
  bool boundary = false;
  bool closed = false;  // loop without end vertices
};

struct HybridSingularityGraph {
  std::vector<SingularityChain> singularities;     // hex-only irregular edges
  std::vector<EdgeId> pseudo_singularities;        // one entry per non-hex edge
  std::vector<VertexId> singular_vertices;         // chain endpoints
  std::vector<VertexId> pseudo_singular_vertices;  // endpoints of pseudo edges
  std::vector<uint8_t> vertex_is_singular;         // per mesh vertex
  std::vector<uint8_t> vertex_is_pseudo_singular;  // per mesh vertex
};

struct ValenceSingularityGraph {
  std::vector<SingularityChain> singularities;  // cover all irregular edges
  std::vector<VertexId> singular_vertices;      // chain endpoints
  std::vector<uint8_t> vertex_is_singular;
  std::vector<uint8_t> edge_in_graph;  // per mesh edge: irregular
};

HybridSingularityGraph extract_hybrid_singularity_graph(const HexDominantMesh& mesh);
ValenceSingularityGraph extract_vsg(const HexDominantMesh& mesh);

}  // namespace hexstruct
