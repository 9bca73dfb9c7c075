#pragma once

#include <vector>

#include "hexstruct/mesh.hpp"
#include "hexstruct/sheets.hpp"
#include "hexstruct/singularity.hpp"

namespace hexstruct {

struct WireSegment {
  std::vector<EdgeId> edges;  // ordered chain
  bool is_irregular = false;  // contains an irregular edge
  bool important = true;
  bool reactivated = false;
  bool closed = false;
};

struct VsgWireframe {
  std::vector<VertexId> nodes;
  std::vector<WireSegment> segments;
  std::vector<uint8_t> edge_in_wireframe;  // per mesh edge
  std::vector<int> edge_segment;           // per mesh edge, -1 outside
  std::vector<double> edge_opacity;        // per mesh edge, retained edges only
};

struct ColorAssignment {
  std::vector<std::array<int, 2>> partial_parallel_pairs;  // singularity ids
  std::vector<int> color_class;                            // per vsg singularity
  double rho = 0.8;
};

inline constexpr double kDefaultRho = 0.8;
inline constexpr double kDefaultOpacityMin = 0.15;
inline constexpr double kDefaultOpacityLambda = 0.5;

// Complete wireframe: all VSG edges plus traces from every singular vertex
// along every incident edge, segmented into maximal chains.
VsgWireframe build_wireframe(const HexDominantMesh& mesh, const ValenceSingularityGraph& vsg);

// Importance rules (V), (E1)-(E4); regular segments only. Deterministic and
// idempotent.
void mark_non_important(VsgWireframe& wf, const HexDominantMesh& mesh,
                        const ValenceSingularityGraph& vsg);

// Single pass: hidden segments touching an irregular edge come back.
void reactivate(VsgWireframe& wf, const HexDominantMesh& mesh,
                const ValenceSingularityGraph& vsg);

ColorAssignment assign_colors(const HexDominantMesh& mesh, const ValenceSingularityGraph& vsg,
                              double rho = kDefaultRho);

// opacity(e) = max(o_min, exp(-lambda * hops to nearest irregular or non-hex
// edge)) over retained wireframe edges.
void assign_opacity(VsgWireframe& wf, const HexDominantMesh& mesh, double o_min = kDefaultOpacityMin,
                    double lambda = kDefaultOpacityLambda);

// Full pipeline over the submesh induced by a sheet's cells (plus its adjacent
// non-hex cells); submesh boundary counts as boundary.
struct SheetWireframe {
  HexDominantMesh submesh;
  ValenceSingularityGraph vsg;
  VsgWireframe wireframe;
  ColorAssignment colors;
  std::vector<VertexId> to_parent_vertex;  // submesh vertex -> mesh vertex
};

SheetWireframe sheet_wireframe(const HexDominantMesh& mesh, const Sheet& sheet,
                               double rho = kDefaultRho, double o_min = kDefaultOpacityMin,
                               double lambda = kDefaultOpacityLambda);

}  // namespace hexstruct
