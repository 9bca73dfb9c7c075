#pragma once

#include <string>

#include "hexstruct/mesh.hpp"

namespace hexstruct {

struct GridDims {
  int nx = 1, ny = 1, nz = 1;
};

// Structured all-hex grid of unit cubes.
HexDominantMesh synth_grid(int nx, int ny, int nz);

// Mutated grid fixtures. Supported recipes:
//   "split-hex"    one hex split into two prisms along a face diagonal
//   "glue-prism"   prism glued onto a boundary quad of the top face
//   "glue-pyramid" pyramid glued onto a boundary quad of the top face
//   "y-junction"   bottom hex pair replaced by three prisms meeting at a ridge
HexDominantMesh synth_inject_nonhex(const GridDims& dims, const std::string& recipe);

// n hex sectors around a central axis, each sector subdivided rings x rings in
// the cross-section and extruded `layers` high. The central vertical edges have
// valence `sectors`, so sectors != 4 yields an interior singular line.
HexDominantMesh synth_pie(int sectors, int rings, int layers);

// Open fan: like the pie but the first and last rays stay boundary, so the
// axis is a boundary singular line of valence `sectors`. Sectors listed in
// `capped_sectors` get a prism glued under their innermost bottom quad, which
// turns the adjacent ray edges pseudo-singular.
HexDominantMesh synth_wedge(int sectors, int rings, int layers,
                            const std::vector<int>& capped_sectors = {});

// Closed loop of `length` hexes whose square cross-section returns rotated by
// a quarter turn, producing one self-intersecting cross-edge sheet. The prism
// variant glues a prism onto a side quad so the sheet also shares vertices
// through a non-hex cell.
HexDominantMesh synth_twist_ring(int length, bool with_prism = false);

// Spiral ramp, `sectors` cells per turn, one cell thick and wide; the layer
// sheet winds upward and meets its own next turn (self-parallel). The pyramid
// variant glues a pyramid onto an inner-surface quad at the seam.
HexDominantMesh synth_helix(int sectors, int turns, bool with_pyramid = false);

}  // namespace hexstruct
