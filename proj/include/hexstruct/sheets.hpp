#pragma once

#include <vector>

#include "hexstruct/base_complex.hpp"
#include "hexstruct/mesh.hpp"

namespace hexstruct {

enum class SheetLevel : uint8_t { Mesh, BaseComplex };

struct Sheet {
  std::vector<EdgeId> parallel_edges;       // E_P, ascending
  std::vector<CellId> cells;                // C_SH: hex cells touching E_P
  std::vector<CellId> adjacent_nonhex;      // non-hex cells touching E_P
  std::vector<VertexId> unmatched_vertices; // vertices shared by >=2 E_P edges
  std::vector<int> edge_chain;              // block-edge id per member edge
                                            // (BaseComplex level only, else empty)
  bool perfect = false;
  bool t1 = false;  // sharing via a non-hex cell
  bool t2 = false;  // self-parallel: distinct face-adjacent hexes
  bool t3 = false;  // self-intersecting: both edges in one hex
  SheetLevel level = SheetLevel::Mesh;
};

// Decomposition product; t3 is guaranteed false.
struct SubSheet : Sheet {
  int parent = -1;
};

// Definition 1: same quad face, disjoint vertex sets.
bool parallel(const HexDominantMesh& mesh, EdgeId a, EdgeId b);

// Transitive closures of `parallel` over hex cells (level Mesh) or over block
// edges paired across quad patches (level BaseComplex). Deterministic: sheets
// ordered by smallest member edge id.
std::vector<Sheet> extract_sheets(const HexDominantMesh& mesh,
                                  SheetLevel level = SheetLevel::Mesh,
                                  const HybridBaseComplex* bc = nullptr);

void augment_nonhex(const HexDominantMesh& mesh, Sheet& sheet);

// Matching-based classification; fills flags and unmatched_vertices.
void classify_sheet(const HexDominantMesh& mesh, Sheet& sheet);

// Classifies every sheet; data-parallel when built with OpenMP and
// use_parallel is set, bit-identical to the serial path.
void classify_sheets(const HexDominantMesh& mesh, std::vector<Sheet>& sheets,
                     bool use_parallel = true);

// BFS decomposition into self-intersection-free subsheets.
std::vector<SubSheet> decompose_sheet(const HexDominantMesh& mesh, const Sheet& sheet,
                                      int parent_id = 0);

}  // namespace hexstruct
