#include "ribnet_cli/mesh.hpp"

#include <cstdio>

#include "ribnet/moebius.hpp"
#include "ribnet_cli/json_reader.hpp"

namespace ribnet::cli {
namespace {

std::string coordinate_line(const EuclideanPoint& x) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", x(0), x(1), x(2));
  return buf;
}

// One surface: the vertices whose coordinate on `fixed` equals `value`
// (fixed < 0 for the whole lattice), listed in index order.
std::string surface(const Lattice& lat, const std::vector<EuclideanPoint>& x, int fixed, int value,
                    const std::string& title) {
  std::vector<int> free;
  for (int a = 0; a < lat.dim(); ++a) {
    if (a != fixed) free.push_back(a);
  }
  std::string out = "# " + title + "\n";
  std::vector<std::size_t> local(lat.vertex_count(), 0);
  std::size_t count = 0;
  for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
    if (fixed >= 0 && lat.coordinate(v, fixed) != value) continue;
    local[v] = ++count;
    out += coordinate_line(x[v]);
  }
  for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
    if (!local[v]) continue;
    if (free.size() == 1) {
      if (lat.has_edge(v, free[0])) {
        out += "l " + std::to_string(local[v]) + " " + std::to_string(local[lat.shift(v, free[0])]) + "\n";
      }
      continue;
    }
    const int axes[] = {free[0], free[1]};
    if (!lat.has_cell(v, axes)) continue;
    const std::size_t a = lat.shift(v, free[0]), b = lat.shift(v, free[1]);
    const std::size_t c = lat.shift(a, free[1]);
    out += "f " + std::to_string(local[v]) + " " + std::to_string(local[a]) + " " +
           std::to_string(local[c]) + " " + std::to_string(local[b]) + "\n";
  }
  return out;
}

}  // namespace

std::vector<MeshFile> obj_slices(const PairNet& net, bool companion, const std::string& stem) {
  if (net.n != 3) throw InputError("OBJ export needs n = 3");
  const Lattice& lat = net.lattice;
  const auto& P = companion ? net.Fhat : net.F;
  if (P.empty()) throw InputError("the net has no F^ to export");
  std::vector<EuclideanPoint> x(lat.vertex_count());
  for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
    const ProjectedPoint p = project(P[v]);
    if (!std::holds_alternative<EuclideanPoint>(p)) {
      throw InputError("vertex " + std::to_string(v) + " is at infinity; OBJ needs finite points");
    }
    x[v] = std::get<EuclideanPoint>(p);
  }
  std::vector<MeshFile> files;
  if (lat.dim() <= 2) {
    files.push_back({stem + ".obj", surface(lat, x, -1, 0, "ribnet net")});
    return files;
  }
  if (lat.dim() != 3) throw InputError("OBJ export supports m <= 3");
  for (int a = 0; a < 3; ++a) {
    for (int c = 0; c < lat.extents()[static_cast<std::size_t>(a)]; ++c) {
      const std::string tag = "axis" + std::to_string(a) + "_" + std::to_string(c);
      files.push_back({stem + "_" + tag + ".obj",
                       surface(lat, x, a, c, "ribnet coordinate surface, lattice axis " +
                                                 std::to_string(a) + " fixed at " + std::to_string(c))});
    }
  }
  return files;
}

}  // namespace ribnet::cli
