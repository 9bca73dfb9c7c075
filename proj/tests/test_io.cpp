#include <doctest.h>

#include <filesystem>
#include <string>

#include "hexstruct/mesh_io.hpp"
#include "hexstruct/report.hpp"
#include "hexstruct/synth.hpp"

using namespace hexstruct;

namespace {

template <typename Fn>
IoErrorKind thrown_kind(Fn&& fn) {
  try {
    fn();
  } catch (const IoError& e) {
    return e.kind();
  }
  FAIL("expected IoError");
  return IoErrorKind::MalformedHeader;
}

std::string vtk_header() {
  return "# vtk DataFile Version 3.0\ntest\nASCII\nDATASET UNSTRUCTURED_GRID\n";
}

std::string unit_cube_points() {
  return "POINTS 8 double\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n0 0 1\n1 0 1\n1 1 1\n0 1 1\n";
}

std::vector<CellId> all_cells(const HexDominantMesh& m) {
  std::vector<CellId> cells(m.cell_count());
  for (CellId c = 0; c < (CellId)m.cell_count(); ++c) cells[c] = c;
  return cells;
}

void check_same_mesh(const HexDominantMesh& a, const HexDominantMesh& b) {
  REQUIRE(a.vertex_count() == b.vertex_count());
  REQUIRE(a.cell_count() == b.cell_count());
  CHECK(a.face_count() == b.face_count());
  CHECK(a.edge_count() == b.edge_count());
  CHECK(a.nonhex_count() == b.nonhex_count());
  for (VertexId v = 0; v < (VertexId)a.vertex_count(); ++v)
    for (int d = 0; d < 3; ++d)
      // %.9g keeps nine significant digits.
      CHECK(a.positions[v][d] == doctest::Approx(b.positions[v][d]).epsilon(1e-8));
  for (CellId c = 0; c < (CellId)a.cell_count(); ++c) {
    CHECK(a.cell_kind[c] == b.cell_kind[c]);
    CHECK(a.cell_faces[c].size() == b.cell_faces[c].size());
  }
}

}  // namespace

TEST_CASE("polyhedron export round-trips through the reader") {
  for (int which : {0, 1, 2}) {
    CAPTURE(which);
    HexDominantMesh m = which == 0   ? synth_grid(2, 2, 2)
                        : which == 1 ? synth_pie(3, 2, 2)
                                     : synth_inject_nonhex({2, 2, 2}, "glue-prism");
    std::string text = write_cells_vtk(m, all_cells(m), {});
    CHECK(text == write_cells_vtk(m, all_cells(m), {}));  // byte-stable
    HexDominantMesh back = build_from_raw(read_vtk_legacy(text));
    check_same_mesh(m, back);
  }
}

TEST_CASE("corner-ordered vtk cell types build the right shells") {
  SUBCASE("hexahedron") {
    std::string text = vtk_header() + unit_cube_points() +
                       "CELLS 1 9\n8 0 1 2 3 4 5 6 7\nCELL_TYPES 1\n12\n";
    HexDominantMesh m = build_from_raw(read_vtk_legacy(text));
    CHECK(m.cell_count() == 1);
    CHECK(m.hex_count() == 1);
    CHECK(m.face_count() == 6);
    CHECK(m.edge_count() == 12);
  }
  SUBCASE("tetrahedron") {
    std::string text = vtk_header() +
                       "POINTS 4 double\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n"
                       "CELLS 1 5\n4 0 1 2 3\nCELL_TYPES 1\n10\n";
    HexDominantMesh m = build_from_raw(read_vtk_legacy(text));
    CHECK(m.nonhex_count() == 1);
    CHECK(m.face_count() == 4);
    CHECK(m.edge_count() == 6);
  }
  SUBCASE("wedge") {
    std::string text = vtk_header() +
                       "POINTS 6 double\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n1 0 1\n0 1 1\n"
                       "CELLS 1 7\n6 0 1 2 3 4 5\nCELL_TYPES 1\n13\n";
    HexDominantMesh m = build_from_raw(read_vtk_legacy(text));
    CHECK(m.nonhex_count() == 1);
    CHECK(m.face_count() == 5);
    CHECK(m.edge_count() == 9);
  }
  SUBCASE("pyramid") {
    std::string text = vtk_header() +
                       "POINTS 5 double\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n0.5 0.5 1\n"
                       "CELLS 1 6\n5 0 1 2 3 4\nCELL_TYPES 1\n14\n";
    HexDominantMesh m = build_from_raw(read_vtk_legacy(text));
    CHECK(m.nonhex_count() == 1);
    CHECK(m.face_count() == 5);
    CHECK(m.edge_count() == 8);
    CHECK(m.vertex_count() == 5);
  }
}

TEST_CASE("vtk reader reports precise error kinds") {
  CHECK(thrown_kind([] { read_vtk_legacy("nonsense\n"); }) == IoErrorKind::MalformedHeader);
  CHECK(thrown_kind([] {
          read_vtk_legacy("# vtk DataFile Version 3.0\ntitle\nBINARY\nDATASET UNSTRUCTURED_GRID\n");
        }) == IoErrorKind::MalformedHeader);
  CHECK(thrown_kind([] {
          read_vtk_legacy("# vtk DataFile Version 3.0\ntitle\nASCII\nDATASET POLYDATA\n");
        }) == IoErrorKind::MalformedHeader);
  CHECK(thrown_kind([] { read_vtk_legacy(vtk_header() + "POINTS 8 double\n0 0 0\n"); }) ==
        IoErrorKind::TruncatedStream);
  CHECK(thrown_kind([] {
          read_vtk_legacy(vtk_header() + "POINTS 1 double\n0 0 oops\n");
        }) == IoErrorKind::MalformedSection);
  CHECK(thrown_kind([] {
          read_vtk_legacy(vtk_header() + unit_cube_points() +
                          "CELLS 1 9\n8 0 1 2 3 4 5 6 7\nCELL_TYPES 1\n11\n");
        }) == IoErrorKind::UnsupportedCellType);
  CHECK(thrown_kind([] {
          read_vtk_legacy(vtk_header() + unit_cube_points() +
                          "CELLS 1 9\n8 0 1 2 3 4 5 6 7\nCELL_TYPES 2\n12\n12\n");
        }) == IoErrorKind::MalformedSection);
  // Wrong corner count for the declared type.
  CHECK(thrown_kind([] {
          read_vtk_legacy(vtk_header() + unit_cube_points() +
                          "CELLS 1 8\n7 0 1 2 3 4 5 6\nCELL_TYPES 1\n12\n");
        }) == IoErrorKind::MalformedSection);
  // Polyhedron stream with trailing garbage inside the entry.
  CHECK(thrown_kind([] {
          read_vtk_legacy(vtk_header() +
                          "POINTS 4 double\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n"
                          "CELLS 1 8\n7 1 3 0 1 2 9 9\nCELL_TYPES 1\n42\n");
        }) == IoErrorKind::MalformedSection);
}

TEST_CASE("medit reader parses hexahedra and honors strict mode") {
  std::string text =
      "MeshVersionFormatted 2\nDimension 3\n"
      "Vertices 8\n"
      "0 0 0 1\n1 0 0 1\n1 1 0 1\n0 1 0 1\n0 0 1 1\n1 0 1 1\n1 1 1 1\n0 1 1 1\n"
      "Hexahedra 1\n1 2 3 4 5 6 7 8 0\n"
      "End\n";
  HexDominantMesh m = build_from_raw(read_medit(text));
  CHECK(m.hex_count() == 1);
  CHECK(m.face_count() == 6);

  std::string with_extra =
      "MeshVersionFormatted 2\nDimension 3\nTriangles 1\n1 2 3 0\n" + text.substr(text.find("Vertices"));
  CHECK(build_from_raw(read_medit(with_extra)).hex_count() == 1);  // skipped when lax
  CHECK(thrown_kind([&] { read_medit(with_extra, /*strict=*/true); }) == IoErrorKind::UnknownKeyword);
  CHECK(thrown_kind([] { read_medit("Dimension 2\n"); }) == IoErrorKind::MalformedSection);
  CHECK(thrown_kind([] { read_medit("Vertices 3\n0 0 0 1\n"); }) == IoErrorKind::TruncatedStream);
}

TEST_CASE("load_mesh_file dispatches on extension") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "hexstruct_io_test";
  fs::create_directories(dir);
  HexDominantMesh m = synth_grid(2, 2, 2);
  write_text_file((dir / "g.vtk").string(), write_cells_vtk(m, all_cells(m), {}));
  check_same_mesh(m, load_mesh_file((dir / "g.vtk").string()));
  CHECK(thrown_kind([&] { load_mesh_file((dir / "missing.vtk").string()); }) ==
        IoErrorKind::TruncatedStream);
  write_text_file((dir / "g.obj").string(), "whatever");
  CHECK(thrown_kind([&] { load_mesh_file((dir / "g.obj").string()); }) ==
        IoErrorKind::MalformedHeader);
  fs::remove_all(dir);
}

TEST_CASE("writers emit vtk magic and LF-only line endings") {
  HexDominantMesh m = synth_pie(3, 2, 2);
  HybridSingularityGraph hsg = extract_hybrid_singularity_graph(m);
  ValenceSingularityGraph vsg = extract_vsg(m);
  VsgWireframe wf = build_wireframe(m, vsg);
  mark_non_important(wf, m, vsg);
  reactivate(wf, m, vsg);
  assign_opacity(wf, m);
  ColorAssignment colors = assign_colors(m, vsg);

  std::vector<std::string> outputs = {
      write_cells_vtk(m, all_cells(m), {{"component", std::vector<int>(m.cell_count(), 0)}}),
      write_hsg_vtk(m, hsg),
      write_wireframe_vtk(m, wireframe_lines(m, vsg, wf, colors)),
  };
  for (const std::string& text : outputs) {
    CHECK(text.rfind("# vtk DataFile", 0) == 0);
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.back() == '\n');
  }
}

TEST_CASE("wireframe line records respect the retained filter") {
  HexDominantMesh m = synth_pie(3, 2, 2);
  ValenceSingularityGraph vsg = extract_vsg(m);
  VsgWireframe wf = build_wireframe(m, vsg);
  mark_non_important(wf, m, vsg);
  reactivate(wf, m, vsg);
  assign_opacity(wf, m);
  ColorAssignment colors = assign_colors(m, vsg);

  auto retained = wireframe_lines(m, vsg, wf, colors, true);
  auto all = wireframe_lines(m, vsg, wf, colors, false);
  CHECK(all.size() >= retained.size());
  size_t wf_edges = 0;
  for (const WireSegment& seg : wf.segments) wf_edges += seg.edges.size();
  CHECK(all.size() == wf_edges);
  for (const WireLine& l : retained) {
    CHECK((l.important || l.reactivated));
    if (l.valence >= 0) {
      CHECK(m.is_irregular(l.e));
      CHECK(l.valence == m.edge_valence(l.e));
      CHECK(l.color_class >= 0);
      CHECK(l.opacity == 1.0);
    }
  }
}

TEST_CASE("sheet export lists unmatched vertices before parallel edges") {
  HexDominantMesh m = synth_twist_ring(6);
  std::vector<Sheet> sheets = extract_sheets(m);
  classify_sheets(m, sheets);
  const Sheet* t3 = nullptr;
  for (const Sheet& s : sheets)
    if (s.t3) t3 = &s;
  REQUIRE(t3 != nullptr);
  std::string text = write_sheet_lines_vtk(m, *t3);
  CHECK(text.find("VERTICES " + std::to_string(t3->unmatched_vertices.size())) != std::string::npos);
  CHECK(text.find("LINES " + std::to_string(t3->parallel_edges.size())) != std::string::npos);
  CHECK(text.find("highlight") != std::string::npos);
  CHECK(text == write_sheet_lines_vtk(m, *t3));
}

TEST_CASE("report formatting is exact") {
  CHECK(report_csv_header() ==
        "mesh,|C|,hex_ratio,|C_B|,hexbc_ratio,n_sheets,n_t1,n_t2,n_t3,"
        "n_subsheets_largest_t3,T_GS,T_GB,T_VSGW,T_GSH,T_GSH*,non_conforming\n");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(1.0 / 3.0) == "0.333333333");
  CHECK(format_double(1e-7) == "1e-07");

  StructureReport r;
  r.name = "demo";
  r.n_cells = 27;
  r.hex_ratio = 1.0;
  r.n_components = 1;
  r.hexbc_ratio = 1.0;
  r.n_sheets = 9;
  std::string csv = write_report(r, ReportFormat::Csv);
  CHECK(csv == report_csv_header() +
                   "demo,27,1,1,1,9,0,0,0,0,0,0,0,0,0,0\n");
  std::string json = write_report(r, ReportFormat::Json);
  CHECK(json.find("\"mesh\": \"demo\"") != std::string::npos);
  CHECK(json.find("\"T_GSH*\": 0") != std::string::npos);
  CHECK(json.back() == '\n');
}
