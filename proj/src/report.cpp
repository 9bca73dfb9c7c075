#include "hexstruct/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace hexstruct {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string write_report(const StructureReport& r, ReportFormat format) {
  if (format == ReportFormat::Csv) return report_csv_header() + report_csv_row(r);

  nlohmann::ordered_json j;
  j["mesh"] = r.name;
  j["|C|"] = r.n_cells;
  j["hex_ratio"] = nlohmann::json::parse(format_double(r.hex_ratio));
  j["|C_B|"] = r.n_components;
  j["hexbc_ratio"] = nlohmann::json::parse(format_double(r.hexbc_ratio));
  j["n_sheets"] = r.n_sheets;
  j["n_t1"] = r.n_t1;
  j["n_t2"] = r.n_t2;
  j["n_t3"] = r.n_t3;
  j["n_subsheets_largest_t3"] = r.n_subsheets_largest_t3;
  j["T_GS"] = nlohmann::json::parse(format_double(r.t_gs));
  j["T_GB"] = nlohmann::json::parse(format_double(r.t_gb));
  j["T_VSGW"] = nlohmann::json::parse(format_double(r.t_vsgw));
  j["T_GSH"] = nlohmann::json::parse(format_double(r.t_gsh));
  j["T_GSH*"] = nlohmann::json::parse(format_double(r.t_gsh2));
  j["non_conforming"] = r.non_conforming;
  return j.dump(2) + "\n";
}

std::string report_csv_header() {
  return "mesh,|C|,hex_ratio,|C_B|,hexbc_ratio,n_sheets,n_t1,n_t2,n_t3,"
         "n_subsheets_largest_t3,T_GS,T_GB,T_VSGW,T_GSH,T_GSH*,non_conforming\n";
}

std::string report_csv_row(const StructureReport& r) {
  std::string row = r.name;
  row += "," + std::to_string(r.n_cells);
  row += "," + format_double(r.hex_ratio);
  row += "," + std::to_string(r.n_components);
  row += "," + format_double(r.hexbc_ratio);
  row += "," + std::to_string(r.n_sheets);
  row += "," + std::to_string(r.n_t1);
  row += "," + std::to_string(r.n_t2);
  row += "," + std::to_string(r.n_t3);
  row += "," + std::to_string(r.n_subsheets_largest_t3);
  row += "," + format_double(r.t_gs);
  row += "," + format_double(r.t_gb);
  row += "," + format_double(r.t_vsgw);
  row += "," + format_double(r.t_gsh);
  row += "," + format_double(r.t_gsh2);
  row += std::string(",") + (r.non_conforming ? "1" : "0") + "\n";
  return row;
}

}  // namespace hexstruct
