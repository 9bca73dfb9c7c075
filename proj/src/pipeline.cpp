#include "hexstruct/pipeline.hpp"

#include <chrono>

namespace hexstruct {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

PipelineResult analyze_mesh(const HexDominantMesh& mesh, const std::string& name,
                            const PipelineOptions& options) {
  PipelineResult r;
  r.report.name = name;
  r.report.n_cells = static_cast<long>(mesh.cell_count());
  r.report.hex_ratio =
      mesh.cell_count() ? double(mesh.hex_count()) / double(mesh.cell_count()) : 0.0;
  r.report.non_conforming = mesh.non_conforming;

  auto t0 = std::chrono::steady_clock::now();
  r.hsg = extract_hybrid_singularity_graph(mesh);
  r.vsg = extract_vsg(mesh);
  r.report.t_gs = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  r.frame = trace_frame(mesh, r.hsg);
  r.base_complex = partition_components(mesh, r.frame);
  r.report.t_gb = seconds_since(t0);
  r.report.n_components = static_cast<long>(r.base_complex.components.size());
  r.report.hexbc_ratio = r.base_complex.components.empty()
                             ? 0.0
                             : double(r.base_complex.hex_component_count()) /
                                   double(r.base_complex.components.size());

  t0 = std::chrono::steady_clock::now();
  r.wireframe = build_wireframe(mesh, r.vsg);
  mark_non_important(r.wireframe, mesh, r.vsg);
  reactivate(r.wireframe, mesh, r.vsg);
  r.colors = assign_colors(mesh, r.vsg, options.rho);
  assign_opacity(r.wireframe, mesh, options.opacity_min, options.opacity_lambda);
  r.report.t_vsgw = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  r.sheets = extract_sheets(mesh, options.level,
                            options.level == SheetLevel::BaseComplex ? &r.base_complex : nullptr);
  classify_sheets(mesh, r.sheets, options.use_parallel);
  r.report.t_gsh = seconds_since(t0);
  r.report.n_sheets = static_cast<long>(r.sheets.size());
  for (const Sheet& s : r.sheets) {
    if (s.t1) ++r.report.n_t1;
    if (s.t2) ++r.report.n_t2;
    if (s.t3) ++r.report.n_t3;
  }

  // Decomposition: the report covers the largest t3 sheet by cell count, or
  // every t3 sheet with decompose_all.
  t0 = std::chrono::steady_clock::now();
  for (size_t i = 0; i < r.sheets.size(); ++i)
    if (r.sheets[i].t3 &&
        (r.largest_t3_sheet < 0 ||
         r.sheets[i].cells.size() > r.sheets[r.largest_t3_sheet].cells.size()))
      r.largest_t3_sheet = static_cast<int>(i);
  if (options.decompose_all) {
    for (size_t i = 0; i < r.sheets.size(); ++i)
      if (r.sheets[i].t3) {
        auto subs = decompose_sheet(mesh, r.sheets[i], static_cast<int>(i));
        r.subsheets.insert(r.subsheets.end(), subs.begin(), subs.end());
      }
  } else if (r.largest_t3_sheet >= 0) {
    r.subsheets = decompose_sheet(mesh, r.sheets[r.largest_t3_sheet], r.largest_t3_sheet);
  }
  r.report.t_gsh2 = seconds_since(t0);
  if (r.largest_t3_sheet >= 0) {
    long n = 0;
    for (const SubSheet& s : r.subsheets)
      if (s.parent == r.largest_t3_sheet) ++n;
    r.report.n_subsheets_largest_t3 = n;
  }

  return r;
}

}  // namespace hexstruct
