#pragma once

#include <optional>
#include <vector>

#include "hexstruct/mesh.hpp"
#include "hexstruct/singularity.hpp"

namespace hexstruct {

// Union of separation surfaces, singularity lines, and the boundary surface.
struct Frame {
  std::vector<uint8_t> vertex_in_frame;
  std::vector<uint8_t> edge_in_frame;
  std::vector<uint8_t> face_in_frame;
};

enum class ComponentKind : uint8_t { HexComponent, NonHexComponent };

struct Component {
  std::vector<CellId> cells;
  ComponentKind kind;
  bool is_ring = false;  // hex component whose patch graph is not 6 quad patches
};

// A maximal set of frame faces between one pair of components (or a component
// and the boundary), connected across patch-interior edges.
struct FramePatch {
  std::vector<FaceId> faces;
  int comp_a = -1;  // component ids; -1 = boundary side
  int comp_b = -1;
};

// Chain of frame edges between two base complex corners.
struct BlockEdge {
  std::vector<EdgeId> edges;
  bool closed = false;
};

struct HybridBaseComplex {
  std::vector<Component> components;
  std::vector<int> cell_component;  // per mesh cell
  std::vector<FramePatch> patches;
  std::vector<BlockEdge> block_edges;        // E_B chains
  std::vector<VertexId> corners;             // V_B
  std::vector<uint8_t> edge_in_complex;      // per mesh edge: part of E_B
  size_t hex_component_count() const;
};

// Unique edge at v sharing no face with e (boundary edges continue only along
// the boundary surface). Absence is a value; `stop_at_vertex` short-circuits
// the walk at flagged vertices.
std::optional<EdgeId> straight_edge_continuation(const HexDominantMesh& mesh, EdgeId e,
                                                 VertexId v,
                                                 const std::vector<uint8_t>* stop_at_vertex = nullptr);

// Continuation of a separation surface across edge e* of quad face f. Interior
// surfaces stop at irregular, pseudo-singular, boundary, and barrier edges;
// boundary surfaces continue across regular boundary edges.
std::optional<FaceId> surface_face_continuation(const HexDominantMesh& mesh, FaceId f,
                                                EdgeId crossing,
                                                const std::vector<uint8_t>* barrier_edges = nullptr);

Frame trace_frame(const HexDominantMesh& mesh, const HybridSingularityGraph& hsg);

HybridBaseComplex partition_components(const HexDominantMesh& mesh, const Frame& frame);

}  // namespace hexstruct
