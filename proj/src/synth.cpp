#include "hexstruct/synth.hpp"

#include <cmath>
#include <map>
#include <set>

namespace hexstruct {

namespace {

struct ShellBuilder {
  std::vector<Vec3> positions;
  std::vector<CellShell> cells;

  void add_hex(const std::array<VertexId, 8>& v) { cells.push_back({hex_face_loops(v)}); }
  void add_prism(const std::array<VertexId, 6>& v) { cells.push_back({prism_face_loops(v)}); }
  void add_pyramid(const std::array<VertexId, 5>& v) { cells.push_back({pyramid_face_loops(v)}); }

  // Drop unreferenced vertices, preserving relative order.
  HexDominantMesh build() {
    std::set<VertexId> used;
    for (const auto& c : cells)
      for (const auto& f : c.faces) used.insert(f.begin(), f.end());
    std::map<VertexId, VertexId> remap;
    std::vector<Vec3> pos;
    for (VertexId v : used) {
      remap[v] = static_cast<VertexId>(pos.size());
      pos.push_back(positions[v]);
    }
    for (auto& c : cells)
      for (auto& f : c.faces)
        for (auto& v : f) v = remap[v];
    return build_mesh(cells, std::move(pos));
  }
};

ShellBuilder grid_shells(int nx, int ny, int nz) {
  ShellBuilder b;
  auto vid = [&](int x, int y, int z) {
    return static_cast<VertexId>(x + (nx + 1) * (y + (ny + 1) * z));
  };
  for (int z = 0; z <= nz; ++z)
    for (int y = 0; y <= ny; ++y)
      for (int x = 0; x <= nx; ++x)
        b.positions.push_back({double(x), double(y), double(z)});
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        b.add_hex({vid(i, j, k), vid(i + 1, j, k), vid(i + 1, j + 1, k), vid(i, j + 1, k),
                   vid(i, j, k + 1), vid(i + 1, j, k + 1), vid(i + 1, j + 1, k + 1),
                   vid(i, j + 1, k + 1)});
  return b;
}

}  // namespace

HexDominantMesh synth_grid(int nx, int ny, int nz) {
  if (nx < 1 || ny < 1 || nz < 1)
    throw MeshError(MeshErrorKind::UnsupportedRecipe, "grid dimensions must be >= 1");
  return grid_shells(nx, ny, nz).build();
}

HexDominantMesh synth_inject_nonhex(const GridDims& dims, const std::string& recipe) {
  const int nx = dims.nx, ny = dims.ny, nz = dims.nz;
  if (nx < 1 || ny < 1 || nz < 1)
    throw MeshError(MeshErrorKind::UnsupportedRecipe, "grid dimensions must be >= 1");
  ShellBuilder b = grid_shells(nx, ny, nz);
  auto vid = [&](int x, int y, int z) {
    return static_cast<VertexId>(x + (nx + 1) * (y + (ny + 1) * z));
  };

  if (recipe == "split-hex") {
    // Cell 0 becomes two prisms split along the bottom-face diagonal.
    std::array<VertexId, 8> c{vid(0, 0, 0), vid(1, 0, 0), vid(1, 1, 0), vid(0, 1, 0),
                              vid(0, 0, 1), vid(1, 0, 1), vid(1, 1, 1), vid(0, 1, 1)};
    b.cells.erase(b.cells.begin());
    ShellBuilder out;
    out.positions = b.positions;
    out.add_prism({c[0], c[1], c[2], c[4], c[5], c[6]});
    out.add_prism({c[0], c[2], c[3], c[4], c[6], c[7]});
    out.cells.insert(out.cells.end(), b.cells.begin(), b.cells.end());
    return out.build();
  }

  if (recipe == "glue-prism" || recipe == "glue-pyramid") {
    VertexId a = vid(0, 0, nz), bb = vid(1, 0, nz), cc = vid(1, 1, nz), d = vid(0, 1, nz);
    if (recipe == "glue-prism") {
      // Ridge runs along y above the quad.
      VertexId e = static_cast<VertexId>(b.positions.size());
      b.positions.push_back({0.5, 0.0, nz + 0.7});
      VertexId f = static_cast<VertexId>(b.positions.size());
      b.positions.push_back({0.5, 1.0, nz + 0.7});
      b.add_prism({a, bb, e, d, cc, f});
    } else {
      VertexId apex = static_cast<VertexId>(b.positions.size());
      b.positions.push_back({0.5, 0.5, nz + 0.7});
      b.add_pyramid({a, bb, cc, d, apex});
    }
    return b.build();
  }

  if (recipe == "y-junction") {
    if (nx < 2)
      throw MeshError(MeshErrorKind::UnsupportedRecipe, "y-junction needs nx >= 2");
    // Cells (0,j,0) and (1,j,0) are replaced, per y slab, by three prisms
    // meeting at the ridge x=1, z=1.
    std::vector<CellShell> kept;
    size_t idx = 0;
    for (int k = 0; k < nz; ++k)
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i, ++idx)
          if (!(k == 0 && (i == 0 || i == 1))) kept.push_back(b.cells[idx]);
    b.cells = std::move(kept);
    for (int j = 0; j < ny; ++j) {
      VertexId A0 = vid(0, j, 0), B0 = vid(2, j, 0), A1 = vid(0, j + 1, 0),
               B1 = vid(2, j + 1, 0);
      VertexId Am0 = vid(0, j, 1), M0 = vid(1, j, 1), Bm0 = vid(2, j, 1);
      VertexId Am1 = vid(0, j + 1, 1), M1 = vid(1, j + 1, 1), Bm1 = vid(2, j + 1, 1);
      b.add_prism({A0, B0, M0, A1, B1, M1});
      b.add_prism({A0, M0, Am0, A1, M1, Am1});
      b.add_prism({B0, Bm0, M0, B1, Bm1, M1});
    }
    return b.build();
  }

  throw MeshError(MeshErrorKind::UnsupportedRecipe, "unknown recipe: " + recipe);
}

namespace {

// Shared body of synth_pie (wrap) and synth_wedge (open). Sectors sit between
// rays i and i+1; with wrap the last sector closes back onto ray 0.
HexDominantMesh fan_mesh(int sectors, int rings, int layers, bool wrap,
                         const std::vector<int>& capped_sectors) {
  const int n = sectors, s = rings;

  // Cross-section vertex ids: center, then rays, then sector interiors.
  // S_i[u][v]: u steps along ray i, v steps along ray i+1.
  std::vector<Vec3> xs_pos;
  const double span = wrap ? 2.0 * M_PI : 1.5 * M_PI;
  auto dir = [&](int i) {
    double t = span * i / n;
    return std::array<double, 2>{std::cos(t), std::sin(t)};
  };
  std::map<std::tuple<int, int, int>, int> xs_id;  // (sector, u, v) -> id
  auto xs = [&](int i, int u, int v) -> int {
    // Shared points: center and rays.
    if (u == 0 && v == 0) i = 0, u = 0, v = 0;
    else if (v == 0) {}                  // on ray i
    else if (u == 0) { i = wrap ? (i + 1) % n : i + 1; std::swap(u, v); v = 0; }  // on ray i+1
    auto key = std::make_tuple(i, u, v);
    auto it = xs_id.find(key);
    if (it != xs_id.end()) return it->second;
    auto d0 = dir(i), d1 = dir(i + 1);
    int id = static_cast<int>(xs_pos.size());
    xs_pos.push_back({u * d0[0] + v * d1[0], u * d0[1] + v * d1[1], 0.0});
    xs_id.emplace(key, id);
    return id;
  };

  // Materialize all cross-section quads first so vertex ids are stable.
  std::vector<std::array<int, 4>> quads;
  for (int i = 0; i < n; ++i)
    for (int u = 0; u < s; ++u)
      for (int v = 0; v < s; ++v)
        quads.push_back({xs(i, u, v), xs(i, u + 1, v), xs(i, u + 1, v + 1), xs(i, u, v + 1)});

  ShellBuilder b;
  const int nxs = static_cast<int>(xs_pos.size());
  for (int l = 0; l <= layers; ++l)
    for (int p = 0; p < nxs; ++p)
      b.positions.push_back({xs_pos[p][0], xs_pos[p][1], double(l)});
  for (int l = 0; l < layers; ++l)
    for (const auto& q : quads) {
      auto at = [&](int p, int lev) { return static_cast<VertexId>(p + lev * nxs); };
      b.add_hex({at(q[0], l), at(q[1], l), at(q[2], l), at(q[3], l), at(q[0], l + 1),
                 at(q[1], l + 1), at(q[2], l + 1), at(q[3], l + 1)});
    }

  // Prisms glued under the innermost bottom quad of selected sectors; every
  // edge of that quad (both rays included) becomes non-hex incident.
  for (int i : capped_sectors) {
    if (i < 0 || i >= n)
      throw MeshError(MeshErrorKind::UnsupportedRecipe, "capped sector out of range");
    VertexId c = static_cast<VertexId>(xs(i, 0, 0)), a = static_cast<VertexId>(xs(i, 1, 0)),
             p = static_cast<VertexId>(xs(i, 1, 1)), d = static_cast<VertexId>(xs(i, 0, 1));
    auto mid = [&](VertexId x, VertexId y) {
      return Vec3{0.5 * (b.positions[x][0] + b.positions[y][0]),
                  0.5 * (b.positions[x][1] + b.positions[y][1]), -0.7};
    };
    VertexId r1 = static_cast<VertexId>(b.positions.size());
    b.positions.push_back(mid(c, a));
    VertexId r2 = static_cast<VertexId>(b.positions.size());
    b.positions.push_back(mid(d, p));
    b.add_prism({c, a, r1, d, p, r2});
  }
  return b.build();
}

}  // namespace

HexDominantMesh synth_pie(int sectors, int rings, int layers) {
  if (sectors < 3 || rings < 1 || layers < 1)
    throw MeshError(MeshErrorKind::UnsupportedRecipe, "pie needs sectors>=3, rings>=1, layers>=1");
  return fan_mesh(sectors, rings, layers, /*wrap=*/true, {});
}

HexDominantMesh synth_wedge(int sectors, int rings, int layers,
                            const std::vector<int>& capped_sectors) {
  if (sectors < 2 || rings < 1 || layers < 1)
    throw MeshError(MeshErrorKind::UnsupportedRecipe,
                    "wedge needs sectors>=2, rings>=1, layers>=1");
  return fan_mesh(sectors, rings, layers, /*wrap=*/false, capped_sectors);
}

HexDominantMesh synth_twist_ring(int length, bool with_prism) {
  if (length < 3)
    throw MeshError(MeshErrorKind::UnsupportedRecipe, "twist ring needs length >= 3");
  const int L = length;
  const double R = std::max(3.0, L / 2.0);
  ShellBuilder b;
  auto vid = [&](int k, int c) { return static_cast<VertexId>(4 * k + c); };
  for (int k = 0; k < L; ++k) {
    double phi = 2.0 * M_PI * k / L;
    double psi = 0.5 * M_PI * k / L;  // quarter turn over the full loop
    for (int c = 0; c < 4; ++c) {
      double a = psi + 0.25 * M_PI + 0.5 * M_PI * c;
      double r = R + std::cos(a) * M_SQRT1_2;
      b.positions.push_back({r * std::cos(phi), r * std::sin(phi), std::sin(a) * M_SQRT1_2});
    }
  }
  // The last cell's top face is cross-section 0 rotated by one corner.
  auto top = [&](int k, int c) { return k + 1 < L ? vid(k + 1, c) : vid(0, (c + 1) % 4); };
  for (int k = 0; k < L; ++k)
    b.add_hex({vid(k, 0), vid(k, 1), vid(k, 2), vid(k, 3), top(k, 0), top(k, 1), top(k, 2),
               top(k, 3)});
  if (with_prism) {
    // Ridge sits outside the side quad between corners 1 and 2 of cell 0.
    auto out = [&](int k) {
      double phi = 2.0 * M_PI * k / L;
      const auto &p1 = b.positions[vid(k, 1)], &p2 = b.positions[vid(k, 2)];
      Vec3 m{0.5 * (p1[0] + p2[0]), 0.5 * (p1[1] + p2[1]), 0.5 * (p1[2] + p2[2])};
      Vec3 axis{R * std::cos(phi), R * std::sin(phi), 0.0};
      return Vec3{m[0] + 0.7 * (m[0] - axis[0]), m[1] + 0.7 * (m[1] - axis[1]),
                  m[2] + 0.7 * (m[2] - axis[2])};
    };
    VertexId r1 = static_cast<VertexId>(b.positions.size());
    b.positions.push_back(out(0));
    VertexId r2 = static_cast<VertexId>(b.positions.size());
    b.positions.push_back(out(1));
    b.add_prism({vid(0, 1), vid(0, 2), r1, vid(1, 1), vid(1, 2), r2});
  }
  return b.build();
}

HexDominantMesh synth_helix(int sectors, int turns, bool with_pyramid) {
  if (sectors < 3 || turns < 2)
    throw MeshError(MeshErrorKind::UnsupportedRecipe, "helix needs sectors>=3, turns>=2");
  const int m = sectors;
  const int tmax = turns + 1;
  ShellBuilder b;
  auto vid = [&](int a, int i, int t) { return static_cast<VertexId>((t * m + a) * 2 + i); };
  for (int t = 0; t <= tmax; ++t)
    for (int a = 0; a < m; ++a)
      for (int i = 0; i < 2; ++i) {
        double phi = 2.0 * M_PI * a / m;
        double r = 2.0 + i;
        b.positions.push_back({r * std::cos(phi), r * std::sin(phi), t + double(a) / m});
      }
  // Cell k sits at angle a, turn t; crossing angle 0 climbs one height step.
  for (int k = 0; k < m * turns; ++k) {
    int a = k % m, t = k / m;
    int a2 = (a + 1) % m, t2 = a + 1 < m ? t : t + 1;
    b.add_hex({vid(a, 0, t), vid(a, 1, t), vid(a2, 1, t2), vid(a2, 0, t2), vid(a, 0, t + 1),
               vid(a, 1, t + 1), vid(a2, 1, t2 + 1), vid(a2, 0, t2 + 1)});
  }
  if (with_pyramid) {
    // Base is the inner-surface quad of the first cell, which holds a seam
    // vertical edge.
    VertexId apex = static_cast<VertexId>(b.positions.size());
    double phi = M_PI / m;
    b.positions.push_back({1.2 * std::cos(phi), 1.2 * std::sin(phi), 0.5 + 0.5 / m});
    b.add_pyramid({vid(0, 0, 0), vid(1, 0, 0), vid(1, 0, 1), vid(0, 0, 1), apex});
  }
  return b.build();
}

}  // namespace hexstruct
