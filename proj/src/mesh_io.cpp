#include "hexstruct/mesh_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hexstruct/report.hpp"

namespace hexstruct {

namespace {

struct Tokens {
  std::vector<std::string> toks;
  size_t pos = 0;

  bool eof() const { return pos >= toks.size(); }
  const std::string& next(const char* what) {
    if (eof()) throw IoError(IoErrorKind::TruncatedStream, std::string("unexpected end of file reading ") + what);
    return toks[pos++];
  }
  const std::string* peek() const { return eof() ? nullptr : &toks[pos]; }
  long next_long(const char* what) {
    const std::string& t = next(what);
    try {
      size_t used = 0;
      long v = std::stol(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      throw IoError(IoErrorKind::MalformedSection,
                    std::string("expected integer for ") + what + ", got '" + t + "'");
    }
  }
  double next_double(const char* what) {
    const std::string& t = next(what);
    try {
      size_t used = 0;
      double v = std::stod(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      throw IoError(IoErrorKind::MalformedSection,
                    std::string("expected number for ") + what + ", got '" + t + "'");
    }
  }
};

Tokens tokenize(const std::string& text, size_t from = 0) {
  Tokens tk;
  std::istringstream in(text.substr(from));
  std::string t;
  while (in >> t) tk.toks.push_back(t);
  return tk;
}

bool is_number(const std::string& t) {
  char* end = nullptr;
  std::strtod(t.c_str(), &end);
  return end && *end == '\0' && end != t.c_str();
}

int expected_corner_count(int vtk_type) {
  switch (vtk_type) {
    case 10: return 4;
    case 12: return 8;
    case 13: return 6;
    case 14: return 5;
    default: return -1;
  }
}

}  // namespace

RawMesh read_vtk_legacy(const std::string& text) {
  // Header: magic comment, title, ASCII, DATASET UNSTRUCTURED_GRID.
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("# vtk DataFile", 0) != 0)
    throw IoError(IoErrorKind::MalformedHeader, "missing '# vtk DataFile' magic");
  if (!std::getline(in, line))
    throw IoError(IoErrorKind::MalformedHeader, "missing title line");
  if (!std::getline(in, line) || line.substr(0, 5) != "ASCII")
    throw IoError(IoErrorKind::MalformedHeader, "only ASCII VTK legacy is supported");

  Tokens tk = tokenize(text, static_cast<size_t>(in.tellg()));
  if (tk.next("DATASET") != "DATASET" || tk.next("dataset type") != "UNSTRUCTURED_GRID")
    throw IoError(IoErrorKind::MalformedHeader, "expected DATASET UNSTRUCTURED_GRID");

  RawMesh raw;
  std::vector<std::vector<long>> cell_streams;
  std::vector<long> cell_types;

  while (!tk.eof()) {
    std::string section = tk.next("section keyword");
    if (section == "POINTS") {
      long n = tk.next_long("point count");
      tk.next("point type");
      for (long i = 0; i < n; ++i) {
        Vec3 p;
        for (int k = 0; k < 3; ++k) p[k] = tk.next_double("point coordinate");
        raw.positions.push_back(p);
      }
    } else if (section == "CELLS") {
      long n = tk.next_long("cell count");
      tk.next_long("cell list size");
      for (long i = 0; i < n; ++i) {
        long cnt = tk.next_long("cell entry size");
        if (cnt < 0) throw IoError(IoErrorKind::MalformedSection, "negative cell entry size");
        std::vector<long> entry;
        for (long k = 0; k < cnt; ++k) entry.push_back(tk.next_long("cell entry"));
        cell_streams.push_back(std::move(entry));
      }
    } else if (section == "CELL_TYPES") {
      long n = tk.next_long("cell type count");
      for (long i = 0; i < n; ++i) cell_types.push_back(tk.next_long("cell type"));
    } else if (section == "CELL_DATA" || section == "POINT_DATA" || section == "FIELD" ||
               section == "SCALARS" || section == "LOOKUP_TABLE" || section == "METADATA") {
      // Attribute payloads are ignored on input.
      while (tk.peek() && is_number(*tk.peek())) tk.next("attribute data");
    } else {
      while (tk.peek() && is_number(*tk.peek())) tk.next("unknown section data");
    }
  }

  if (cell_types.size() != cell_streams.size())
    throw IoError(IoErrorKind::MalformedSection, "CELLS and CELL_TYPES disagree");

  for (size_t i = 0; i < cell_streams.size(); ++i) {
    RawCell cell;
    cell.vtk_type = static_cast<int>(cell_types[i]);
    const auto& entry = cell_streams[i];
    int nc = expected_corner_count(cell.vtk_type);
    if (nc > 0) {
      if (static_cast<long>(entry.size()) != nc)
        throw IoError(IoErrorKind::MalformedSection,
                      "cell " + std::to_string(i) + ": wrong vertex count for type " +
                          std::to_string(cell.vtk_type));
      for (long v : entry) cell.verts.push_back(static_cast<VertexId>(v));
    } else if (cell.vtk_type == 42) {
      size_t p = 0;
      if (entry.empty()) throw IoError(IoErrorKind::MalformedSection, "empty polyhedron stream");
      long nfaces = entry[p++];
      for (long f = 0; f < nfaces; ++f) {
        if (p >= entry.size())
          throw IoError(IoErrorKind::MalformedSection, "short polyhedron face stream");
        long nv = entry[p++];
        std::vector<VertexId> loop;
        for (long k = 0; k < nv; ++k) {
          if (p >= entry.size())
            throw IoError(IoErrorKind::MalformedSection, "short polyhedron face stream");
          loop.push_back(static_cast<VertexId>(entry[p++]));
        }
        cell.faces.push_back(std::move(loop));
      }
      if (p != entry.size())
        throw IoError(IoErrorKind::MalformedSection, "trailing data in polyhedron stream");
    } else {
      throw IoError(IoErrorKind::UnsupportedCellType,
                    "unsupported VTK cell type " + std::to_string(cell.vtk_type));
    }
    raw.cells.push_back(std::move(cell));
  }
  return raw;
}

RawMesh read_medit(const std::string& text, bool strict) {
  Tokens tk = tokenize(text);
  RawMesh raw;

  auto read_cells = [&](int vtk_type, int nverts) {
    long n = tk.next_long("element count");
    for (long i = 0; i < n; ++i) {
      RawCell cell;
      cell.vtk_type = vtk_type;
      for (int k = 0; k < nverts; ++k)
        cell.verts.push_back(static_cast<VertexId>(tk.next_long("element vertex") - 1));
      tk.next_long("element reference");
      raw.cells.push_back(std::move(cell));
    }
  };

  while (!tk.eof()) {
    std::string kw = tk.next("keyword");
    if (kw == "MeshVersionFormatted") {
      tk.next_long("version");
    } else if (kw == "Dimension") {
      long d = tk.next_long("dimension");
      if (d != 3) throw IoError(IoErrorKind::MalformedSection, "only dimension 3 supported");
    } else if (kw == "Vertices") {
      long n = tk.next_long("vertex count");
      for (long i = 0; i < n; ++i) {
        Vec3 p;
        for (int k = 0; k < 3; ++k) p[k] = tk.next_double("vertex coordinate");
        tk.next_long("vertex reference");
        raw.positions.push_back(p);
      }
    } else if (kw == "Hexahedra") {
      read_cells(12, 8);
    } else if (kw == "Tetrahedra") {
      read_cells(10, 4);
    } else if (kw == "Prisms") {
      read_cells(13, 6);
    } else if (kw == "Pyramids") {
      read_cells(14, 5);
    } else if (kw == "End") {
      break;
    } else {
      if (strict) throw IoError(IoErrorKind::UnknownKeyword, "unknown keyword '" + kw + "'");
      while (tk.peek() && is_number(*tk.peek())) tk.next("skipped data");
    }
  }
  return raw;
}

HexDominantMesh build_from_raw(const RawMesh& raw) {
  std::vector<CellShell> shells;
  for (size_t i = 0; i < raw.cells.size(); ++i) {
    const RawCell& c = raw.cells[i];
    CellShell shell;
    switch (c.vtk_type) {
      case 10:
        shell.faces = tet_face_loops({c.verts[0], c.verts[1], c.verts[2], c.verts[3]});
        break;
      case 12:
        shell.faces = hex_face_loops({c.verts[0], c.verts[1], c.verts[2], c.verts[3], c.verts[4],
                                      c.verts[5], c.verts[6], c.verts[7]});
        break;
      case 13:
        shell.faces = prism_face_loops(
            {c.verts[0], c.verts[1], c.verts[2], c.verts[3], c.verts[4], c.verts[5]});
        break;
      case 14:
        shell.faces =
            pyramid_face_loops({c.verts[0], c.verts[1], c.verts[2], c.verts[3], c.verts[4]});
        break;
      case 42:
        shell.faces = c.faces;
        break;
      default:
        throw IoError(IoErrorKind::UnsupportedCellType,
                      "cell " + std::to_string(i) + ": unsupported type " +
                          std::to_string(c.vtk_type));
    }
    shells.push_back(std::move(shell));
  }
  return build_mesh(shells, raw.positions);
}

HexDominantMesh load_mesh_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(IoErrorKind::TruncatedStream, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  auto dot = path.rfind('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot);
  if (ext == ".vtk") return build_from_raw(read_vtk_legacy(text));
  if (ext == ".mesh") return build_from_raw(read_medit(text));
  throw IoError(IoErrorKind::MalformedHeader, "unrecognized mesh extension: " + path);
}

namespace {

void append_points(std::string& out, const std::vector<Vec3>& positions) {
  out += "POINTS " + std::to_string(positions.size()) + " double\n";
  for (const Vec3& p : positions)
    out += format_double(p[0]) + " " + format_double(p[1]) + " " + format_double(p[2]) + "\n";
}

void append_int_field(std::string& out, const std::string& name, const std::vector<int>& values) {
  out += "SCALARS " + name + " int 1\nLOOKUP_TABLE default\n";
  for (int v : values) out += std::to_string(v) + "\n";
}

void append_double_field(std::string& out, const std::string& name,
                         const std::vector<double>& values) {
  out += "SCALARS " + name + " double 1\nLOOKUP_TABLE default\n";
  for (double v : values) out += format_double(v) + "\n";
}

std::string polydata_header() {
  return "# vtk DataFile Version 3.0\nhexstruct wireframe\nASCII\nDATASET POLYDATA\n";
}

}  // namespace

std::string write_cells_vtk(const HexDominantMesh& mesh, const std::vector<CellId>& cells,
                            const std::vector<std::pair<std::string, std::vector<int>>>& fields) {
  for (const auto& [name, values] : fields)
    if (values.size() != cells.size())
      throw IoError(IoErrorKind::DanglingReference, "field " + name + " size mismatch");

  std::string out = "# vtk DataFile Version 3.0\nhexstruct cells\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  append_points(out, mesh.positions);

  std::string cell_block;
  long total = 0;
  for (CellId c : cells) {
    if (c < 0 || c >= static_cast<CellId>(mesh.cell_count()))
      throw IoError(IoErrorKind::DanglingReference, "cell id out of range");
    std::string entry = std::to_string(mesh.cell_faces[c].size());
    long count = 1;
    for (FaceId f : mesh.cell_faces[c]) {
      entry += " " + std::to_string(mesh.face_verts[f].size());
      ++count;
      for (VertexId v : mesh.face_verts[f]) {
        entry += " " + std::to_string(v);
        ++count;
      }
    }
    cell_block += std::to_string(count) + " " + entry + "\n";
    total += count + 1;
  }
  out += "CELLS " + std::to_string(cells.size()) + " " + std::to_string(total) + "\n";
  out += cell_block;
  out += "CELL_TYPES " + std::to_string(cells.size()) + "\n";
  for (size_t i = 0; i < cells.size(); ++i) out += "42\n";

  if (!fields.empty()) {
    out += "CELL_DATA " + std::to_string(cells.size()) + "\n";
    for (const auto& [name, values] : fields) append_int_field(out, name, values);
  }
  return out;
}

std::string write_wireframe_vtk(const HexDominantMesh& mesh, const std::vector<WireLine>& lines) {
  std::string out = polydata_header();
  append_points(out, mesh.positions);
  out += "LINES " + std::to_string(lines.size()) + " " + std::to_string(lines.size() * 3) + "\n";
  for (const WireLine& l : lines)
    out += "2 " + std::to_string(mesh.edge_verts[l.e][0]) + " " +
           std::to_string(mesh.edge_verts[l.e][1]) + "\n";
  out += "CELL_DATA " + std::to_string(lines.size()) + "\n";
  std::vector<int> color, important, reactivated, valence;
  std::vector<double> opacity;
  for (const WireLine& l : lines) {
    color.push_back(l.color_class);
    opacity.push_back(l.opacity);
    important.push_back(l.important);
    reactivated.push_back(l.reactivated);
    valence.push_back(l.valence);
  }
  append_int_field(out, "color_class", color);
  append_double_field(out, "opacity", opacity);
  append_int_field(out, "important", important);
  append_int_field(out, "reactivated", reactivated);
  append_int_field(out, "valence", valence);
  return out;
}

std::vector<WireLine> wireframe_lines(const HexDominantMesh& mesh,
                                      const ValenceSingularityGraph& vsg, const VsgWireframe& wf,
                                      const ColorAssignment& colors, bool retained_only) {
  std::vector<int> edge_chain(mesh.edge_count(), -1);
  for (size_t i = 0; i < vsg.singularities.size(); ++i)
    for (EdgeId e : vsg.singularities[i].edges) edge_chain[e] = static_cast<int>(i);

  std::vector<WireLine> lines;
  for (const auto& seg : wf.segments) {
    bool retained = seg.important || seg.reactivated;
    if (retained_only && !retained) continue;
    for (EdgeId e : seg.edges) {
      WireLine l;
      l.e = e;
      int chain = edge_chain[e];
      l.color_class = chain >= 0 ? colors.color_class[chain] : -1;
      l.opacity = wf.edge_opacity[e];
      l.important = seg.important ? 1 : 0;
      l.reactivated = seg.reactivated ? 1 : 0;
      l.valence = mesh.is_irregular(e) ? mesh.edge_valence(e) : -1;
      lines.push_back(l);
    }
  }
  return lines;
}

std::string write_hsg_vtk(const HexDominantMesh& mesh, const HybridSingularityGraph& hsg) {
  std::vector<EdgeId> edges;
  std::vector<int> valence, is_pseudo;
  for (const auto& ch : hsg.singularities)
    for (EdgeId e : ch.edges) {
      edges.push_back(e);
      valence.push_back(ch.valence);
      is_pseudo.push_back(0);
    }
  for (EdgeId e : hsg.pseudo_singularities) {
    edges.push_back(e);
    valence.push_back(mesh.edge_valence(e));
    is_pseudo.push_back(1);
  }

  std::string out = polydata_header();
  append_points(out, mesh.positions);
  out += "LINES " + std::to_string(edges.size()) + " " + std::to_string(edges.size() * 3) + "\n";
  for (EdgeId e : edges)
    out += "2 " + std::to_string(mesh.edge_verts[e][0]) + " " +
           std::to_string(mesh.edge_verts[e][1]) + "\n";
  out += "CELL_DATA " + std::to_string(edges.size()) + "\n";
  append_int_field(out, "valence", valence);
  append_int_field(out, "is_pseudo", is_pseudo);
  return out;
}

std::string write_sheet_lines_vtk(const HexDominantMesh& mesh, const Sheet& sheet) {
  std::string out = polydata_header();
  append_points(out, mesh.positions);
  size_t nv = sheet.unmatched_vertices.size(), nl = sheet.parallel_edges.size();
  out += "VERTICES " + std::to_string(nv) + " " + std::to_string(nv * 2) + "\n";
  for (VertexId v : sheet.unmatched_vertices) out += "1 " + std::to_string(v) + "\n";
  out += "LINES " + std::to_string(nl) + " " + std::to_string(nl * 3) + "\n";
  for (EdgeId e : sheet.parallel_edges)
    out += "2 " + std::to_string(mesh.edge_verts[e][0]) + " " +
           std::to_string(mesh.edge_verts[e][1]) + "\n";
  out += "CELL_DATA " + std::to_string(nv + nl) + "\n";
  std::vector<int> highlight(nv, 1);
  highlight.insert(highlight.end(), nl, 0);
  append_int_field(out, "highlight", highlight);
  return out;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(IoErrorKind::TruncatedStream, "cannot write " + path);
  out << contents;
}

}  // namespace hexstruct
