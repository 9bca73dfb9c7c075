#pragma once

#include <cstdint>
#include <string>

namespace hexstruct {

enum class ReportFormat : uint8_t { Json, Csv };

// Table-row statistics for one mesh; timings in wall-clock seconds.
struct StructureReport {
  std::string name;
  long n_cells = 0;             // |C|
  double hex_ratio = 0.0;       // |H|/|C|
  long n_components = 0;        // |C_B|
  double hexbc_ratio = 0.0;     // |H_B|/|C_B|
  long n_sheets = 0;
  long n_t1 = 0;
  long n_t2 = 0;
  long n_t3 = 0;
  long n_subsheets_largest_t3 = 0;
  double t_gs = 0.0;    // T_GS
  double t_gb = 0.0;    // T_GB
  double t_vsgw = 0.0;  // T_VSGW
  double t_gsh = 0.0;   // T_GSH
  double t_gsh2 = 0.0;  // T_GSH*
  bool non_conforming = false;
};

// %.9g, the shared float format of every writer.
std::string format_double(double v);

std::string write_report(const StructureReport& report, ReportFormat format);

std::string report_csv_header();
std::string report_csv_row(const StructureReport& report);

}  // namespace hexstruct
