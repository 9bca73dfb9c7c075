#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "hexstruct/mesh_io.hpp"
#include "hexstruct/pipeline.hpp"
#include "hexstruct/synth.hpp"

namespace fs = std::filesystem;
using namespace hexstruct;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitInternal = 4;

int log_level() {
  const char* env = std::getenv("HEXSTRUCT_LOG");
  if (!env) return 1;  // warn
  std::string v = env;
  if (v == "debug") return 3;
  if (v == "info") return 2;
  if (v == "error") return 0;
  return 1;
}

void log_info(const std::string& msg) {
  if (log_level() >= 2) std::cerr << "[info] " << msg << "\n";
}

int exit_code_for(const std::exception& ex) {
  if (auto* io = dynamic_cast<const IoError*>(&ex))
    return io->kind() == IoErrorKind::UnsupportedCellType ? kExitUnsupported : kExitParse;
  if (auto* me = dynamic_cast<const MeshError*>(&ex))
    return me->kind() == MeshErrorKind::InternalError ? kExitInternal : kExitParse;
  return kExitInternal;
}

struct SynthSpec {
  int grid = 0;
  std::string recipe;
};

HexDominantMesh make_input(const std::string& input, const SynthSpec& synth, std::string& name) {
  if (synth.grid > 0 || !synth.recipe.empty()) {
    int n = synth.grid > 0 ? synth.grid : 2;
    if (synth.recipe.empty()) {
      name = "grid" + std::to_string(n);
      return synth_grid(n, n, n);
    }
    name = synth.recipe;
    if (synth.recipe == "pie3") return synth_pie(3, 3, 2);
    if (synth.recipe == "pie5") return synth_pie(5, 3, 2);
    if (synth.recipe == "twist-ring") return synth_twist_ring(8);
    if (synth.recipe == "twist-ring-prism") return synth_twist_ring(8, true);
    if (synth.recipe == "helix") return synth_helix(6, 3);
    if (synth.recipe == "helix-pyramid") return synth_helix(6, 3, true);
    if (synth.recipe == "wedge4") return synth_wedge(4, 2, 2);
    if (synth.recipe == "wedge8-capped") return synth_wedge(8, 2, 2, {3, 6});
    return synth_inject_nonhex({n, n, n}, synth.recipe);
  }
  if (input.empty()) throw IoError(IoErrorKind::MalformedHeader, "no input mesh given");
  name = fs::path(input).stem().string();
  return load_mesh_file(input);
}

void run_exports(const HexDominantMesh& mesh, const PipelineResult& result,
                 const std::string& hsg_path, const std::string& complex_path,
                 const std::string& sheets_prefix, const std::string& wireframe_path,
                 const std::string& sheet_wf_prefix) {
  if (!hsg_path.empty()) write_text_file(hsg_path, write_hsg_vtk(mesh, result.hsg));
  if (!complex_path.empty()) {
    std::vector<CellId> cells(mesh.cell_count());
    std::vector<int> component(mesh.cell_count()), kind(mesh.cell_count());
    for (CellId c = 0; c < static_cast<CellId>(mesh.cell_count()); ++c) {
      cells[c] = c;
      component[c] = result.base_complex.cell_component[c];
      kind[c] = result.base_complex.components[component[c]].kind == ComponentKind::HexComponent
                    ? 0
                    : 1;
    }
    write_text_file(complex_path, write_cells_vtk(mesh, cells,
                                                  {{"component_id", component},
                                                   {"component_kind", kind}}));
  }
  if (!sheets_prefix.empty()) {
    for (size_t i = 0; i < result.sheets.size(); ++i) {
      const Sheet& s = result.sheets[i];
      std::vector<int> sheet_id(s.cells.size(), static_cast<int>(i));
      std::vector<int> self_intersect(s.cells.size(), 0);
      if (s.t3) {
        // Cells holding a vertex-sharing pair of parallel edges.
        std::vector<uint8_t> in_sheet(mesh.edge_count(), 0);
        for (EdgeId e : s.parallel_edges) in_sheet[e] = 1;
        for (size_t ci = 0; ci < s.cells.size(); ++ci) {
          const auto& ce = mesh.cell_edges[s.cells[ci]];
          for (size_t a = 0; a < ce.size() && !self_intersect[ci]; ++a)
            for (size_t b = a + 1; b < ce.size(); ++b) {
              if (!in_sheet[ce[a]] || !in_sheet[ce[b]]) continue;
              if (mesh.edge_has_vertex(ce[a], mesh.edge_verts[ce[b]][0]) ||
                  mesh.edge_has_vertex(ce[a], mesh.edge_verts[ce[b]][1])) {
                self_intersect[ci] = 1;
                break;
              }
            }
        }
      }
      std::string base = sheets_prefix + std::to_string(i);
      write_text_file(base + "_cells.vtk",
                      write_cells_vtk(mesh, s.cells,
                                      {{"sheet_id", sheet_id}, {"self_intersect", self_intersect}}));
      write_text_file(base + "_edges.vtk", write_sheet_lines_vtk(mesh, s));
    }
  }
  if (!wireframe_path.empty())
    write_text_file(wireframe_path,
                    write_wireframe_vtk(mesh, wireframe_lines(mesh, result.vsg, result.wireframe,
                                                              result.colors)));
  if (!sheet_wf_prefix.empty()) {
    for (size_t i = 0; i < result.sheets.size(); ++i) {
      SheetWireframe sw = sheet_wireframe(mesh, result.sheets[i]);
      write_text_file(sheet_wf_prefix + std::to_string(i) + ".vtk",
                      write_wireframe_vtk(sw.submesh,
                                          wireframe_lines(sw.submesh, sw.vsg, sw.wireframe,
                                                          sw.colors)));
    }
  }
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty() || output == "-")
    std::cout << text;
  else
    write_text_file(output, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hexstruct: structure extraction for hex-dominant meshes"};
  app.require_subcommand(1);

  std::string format = "json";
  PipelineOptions options;
  std::string level = "mesh";
  SynthSpec synth;
  std::string output;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--rho", options.rho);
    cmd->add_option("--opacity-min", options.opacity_min);
    cmd->add_option("--opacity-lambda", options.opacity_lambda);
    cmd->add_option("--level", level)->check(CLI::IsMember({"mesh", "base-complex"}));
    cmd->add_flag("--decompose-all", options.decompose_all);
    cmd->add_option("-o,--output", output);
  };

  // analyze
  auto* analyze = app.add_subcommand("analyze", "analyze one mesh");
  std::string input;
  analyze->add_option("input", input, "mesh file (.vtk or .mesh)");
  analyze->add_option("--synth-grid", synth.grid);
  analyze->add_option("--synth-recipe", synth.recipe);
  std::string export_hsg, export_complex, export_sheets, export_wireframe, export_sheet_wf;
  analyze->add_option("--export-hsg", export_hsg);
  analyze->add_option("--export-complex", export_complex);
  analyze->add_option("--export-sheets", export_sheets);
  analyze->add_option("--export-wireframe", export_wireframe);
  analyze->add_option("--export-sheet-wireframes", export_sheet_wf);
  add_common(analyze);

  // compare
  auto* compare = app.add_subcommand("compare", "compare two meshes");
  std::string input_a, input_b;
  compare->add_option("input_a", input_a)->required();
  compare->add_option("input_b", input_b)->required();
  add_common(compare);

  // batch
  auto* batch = app.add_subcommand("batch", "analyze a directory of meshes");
  std::string batch_dir;
  int jobs = 1;
  bool strict = false;
  batch->add_option("dir", batch_dir)->required();
  batch->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
  batch->add_flag("--strict", strict);
  add_common(batch);

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "write a synthetic fixture mesh");
  synth_cmd->add_option("--synth-grid", synth.grid);
  synth_cmd->add_option("--synth-recipe", synth.recipe);
  synth_cmd->add_option("-o,--output", output)->required();

  CLI11_PARSE(app, argc, argv);
  options.level = level == "mesh" ? SheetLevel::Mesh : SheetLevel::BaseComplex;
  ReportFormat rf = format == "json" ? ReportFormat::Json : ReportFormat::Csv;

  try {
    if (*analyze) {
      std::string name;
      HexDominantMesh mesh = make_input(input, synth, name);
      log_info("analyzing " + name);
      PipelineResult result = analyze_mesh(mesh, name, options);
      run_exports(mesh, result, export_hsg, export_complex, export_sheets, export_wireframe,
                  export_sheet_wf);
      emit(write_report(result.report, rf), output);
      return 0;
    }

    if (*compare) {
      std::string name_a, name_b;
      HexDominantMesh mesh_a = make_input(input_a, {}, name_a);
      HexDominantMesh mesh_b = make_input(input_b, {}, name_b);
      StructureReport a = analyze_mesh(mesh_a, name_a, options).report;
      StructureReport b = analyze_mesh(mesh_b, name_b, options).report;
      StructureReport delta;
      delta.name = "delta";
      delta.n_cells = b.n_cells - a.n_cells;
      delta.hex_ratio = b.hex_ratio - a.hex_ratio;
      delta.n_components = b.n_components - a.n_components;
      delta.hexbc_ratio = b.hexbc_ratio - a.hexbc_ratio;
      delta.n_sheets = b.n_sheets - a.n_sheets;
      delta.n_t1 = b.n_t1 - a.n_t1;
      delta.n_t2 = b.n_t2 - a.n_t2;
      delta.n_t3 = b.n_t3 - a.n_t3;
      delta.n_subsheets_largest_t3 = b.n_subsheets_largest_t3 - a.n_subsheets_largest_t3;
      if (rf == ReportFormat::Csv) {
        emit(report_csv_header() + report_csv_row(a) + report_csv_row(b) + report_csv_row(delta),
             output);
      } else {
        std::string text = "{\n\"a\": " + write_report(a, rf) + ",\n\"b\": " + write_report(b, rf) +
                           ",\n\"delta\": " + write_report(delta, rf) + "}\n";
        emit(text, output);
      }
      return 0;
    }

    if (*batch) {
      std::vector<std::string> files;
      for (const auto& entry : fs::directory_iterator(batch_dir)) {
        auto ext = entry.path().extension().string();
        if (ext == ".vtk" || ext == ".mesh") files.push_back(entry.path().string());
      }
      std::sort(files.begin(), files.end());

      std::vector<std::string> rows(files.size());
      std::vector<int> codes(files.size(), 0);
      std::atomic<size_t> cursor{0};
      std::mutex log_mutex;
      auto worker = [&]() {
        for (;;) {
          size_t i = cursor.fetch_add(1);
          if (i >= files.size()) return;
          try {
            std::string name;
            HexDominantMesh mesh = make_input(files[i], {}, name);
            rows[i] = report_csv_row(analyze_mesh(mesh, name, options).report);
          } catch (const std::exception& ex) {
            codes[i] = exit_code_for(ex);
            std::lock_guard<std::mutex> lock(log_mutex);
            std::cerr << "error: " << files[i] << ": " << ex.what() << "\n";
          }
        }
      };
      std::vector<std::thread> pool;
      for (int t = 0; t < std::max(1, jobs); ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();

      std::string csv = report_csv_header();
      int failures = 0, first_code = 0;
      for (size_t i = 0; i < files.size(); ++i) {
        if (codes[i]) {
          ++failures;
          if (!first_code) first_code = codes[i];
        } else {
          csv += rows[i];
        }
      }
      emit(csv, output);
      std::cerr << files.size() - failures << " analyzed, " << failures << " failed\n";
      return strict && failures ? first_code : 0;
    }

    if (*synth_cmd) {
      std::string name;
      HexDominantMesh mesh = make_input("", synth, name);
      std::vector<CellId> cells(mesh.cell_count());
      for (CellId c = 0; c < static_cast<CellId>(mesh.cell_count()); ++c) cells[c] = c;
      write_text_file(output, write_cells_vtk(mesh, cells, {}));
      return 0;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return exit_code_for(ex);
  }
  return 0;
}
