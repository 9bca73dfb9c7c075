#pragma once

#include <string>
#include <vector>

#include "hexstruct/mesh.hpp"
#include "hexstruct/sheets.hpp"
#include "hexstruct/wireframe.hpp"

namespace hexstruct {

enum class IoErrorKind {
  MalformedHeader,
  TruncatedStream,
  UnsupportedCellType,
  MalformedSection,
  UnknownKeyword,
  DanglingReference,
};

class IoError : public std::runtime_error {
 public:
  IoError(IoErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  IoErrorKind kind() const { return kind_; }

 private:
  IoErrorKind kind_;
};

// Format-level cell record. vtk_type 10/12/13/14 use `verts` in the format's
// corner order; type 42 carries the face stream directly.
struct RawCell {
  int vtk_type = 0;
  std::vector<VertexId> verts;
  std::vector<std::vector<VertexId>> faces;
};

struct RawMesh {
  std::vector<Vec3> positions;
  std::vector<RawCell> cells;
};

RawMesh read_vtk_legacy(const std::string& text);
RawMesh read_medit(const std::string& text, bool strict = false);

HexDominantMesh build_from_raw(const RawMesh& raw);

// Dispatches on extension: .vtk / .mesh.
HexDominantMesh load_mesh_file(const std::string& path);

// Cell subset as UNSTRUCTURED_GRID (polyhedron face streams) with integer
// CELL_DATA fields; byte-stable.
std::string write_cells_vtk(const HexDominantMesh& mesh, const std::vector<CellId>& cells,
                            const std::vector<std::pair<std::string, std::vector<int>>>& fields);

struct WireLine {
  EdgeId e;
  int color_class = -1;
  double opacity = 1.0;
  int important = 1;
  int reactivated = 0;
  int valence = -1;  // -1 for regular edges
};

std::string write_wireframe_vtk(const HexDominantMesh& mesh, const std::vector<WireLine>& lines);

// The retained wireframe flattened into line records.
std::vector<WireLine> wireframe_lines(const HexDominantMesh& mesh, const ValenceSingularityGraph& vsg,
                                      const VsgWireframe& wf, const ColorAssignment& colors,
                                      bool retained_only = true);

// Singularity graph as LINES with per-chain valence and is_pseudo.
std::string write_hsg_vtk(const HexDominantMesh& mesh, const HybridSingularityGraph& hsg);

// Parallel edges as LINES plus unmatched vertices as VERTICES (highlight=1).
std::string write_sheet_lines_vtk(const HexDominantMesh& mesh, const Sheet& sheet);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace hexstruct
