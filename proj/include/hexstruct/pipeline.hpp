#pragma once

#include <string>
#include <vector>

#include "hexstruct/base_complex.hpp"
#include "hexstruct/mesh.hpp"
#include "hexstruct/report.hpp"
#include "hexstruct/sheets.hpp"
#include "hexstruct/singularity.hpp"
#include "hexstruct/wireframe.hpp"

namespace hexstruct {

struct PipelineOptions {
  double rho = kDefaultRho;
  double opacity_min = kDefaultOpacityMin;
  double opacity_lambda = kDefaultOpacityLambda;
  SheetLevel level = SheetLevel::Mesh;
  bool decompose_all = false;
  bool use_parallel = true;
};

struct PipelineResult {
  HybridSingularityGraph hsg;
  ValenceSingularityGraph vsg;
  Frame frame;
  HybridBaseComplex base_complex;
  std::vector<Sheet> sheets;
  int largest_t3_sheet = -1;  // index into sheets, -1 if no t3 sheet
  std::vector<SubSheet> subsheets;  // of the largest t3 sheet (or all t3 sheets)
  VsgWireframe wireframe;
  ColorAssignment colors;
  StructureReport report;
};

PipelineResult analyze_mesh(const HexDominantMesh& mesh, const std::string& name,
                            const PipelineOptions& options = {});

}  // namespace hexstruct
