#include <chrono>
#include <cstdio>

#include "hexstruct/pipeline.hpp"
#include "hexstruct/synth.hpp"

using namespace hexstruct;

// Serial vs parallel sheet classification on a few synthetic meshes; results
// must agree bit for bit.
int main() {
  struct Case {
    const char* name;
    HexDominantMesh mesh;
  };
  std::vector<Case> cases;
  cases.push_back({"grid20x20x15", synth_grid(20, 20, 15)});
  cases.push_back({"pie5_8_40", synth_pie(5, 8, 40)});
  cases.push_back({"y-junction-8", synth_inject_nonhex({8, 8, 8}, "y-junction")});

  std::printf("%-14s %8s %10s %10s %8s\n", "mesh", "sheets", "serial_s", "openmp_s", "match");
  for (auto& c : cases) {
    auto sheets_serial = extract_sheets(c.mesh);
    auto sheets_parallel = sheets_serial;

    auto t0 = std::chrono::steady_clock::now();
    classify_sheets(c.mesh, sheets_serial, /*use_parallel=*/false);
    double serial = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    t0 = std::chrono::steady_clock::now();
    classify_sheets(c.mesh, sheets_parallel, /*use_parallel=*/true);
    double parallel = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    bool match = sheets_serial.size() == sheets_parallel.size();
    for (size_t i = 0; match && i < sheets_serial.size(); ++i) {
      const Sheet &a = sheets_serial[i], &b = sheets_parallel[i];
      match = a.parallel_edges == b.parallel_edges && a.unmatched_vertices == b.unmatched_vertices &&
              a.adjacent_nonhex == b.adjacent_nonhex && a.perfect == b.perfect && a.t1 == b.t1 &&
              a.t2 == b.t2 && a.t3 == b.t3;
    }
    std::printf("%-14s %8zu %10.4f %10.4f %8s\n", c.name, sheets_serial.size(), serial, parallel,
                match ? "yes" : "NO");
  }
  return 0;
}
