#pragma once

#include <string>
#include <vector>

#include "ribnet/net.hpp"

namespace ribnet::cli {

struct MeshFile {
  std::string name;
  std::string content;
};

// Wavefront OBJ quad meshes of the coordinate surfaces of a net in R^3, one
// file per fixed lattice coordinate: `<stem>_axis<a>_<c>.obj`. A 2D net gives
// a single `<stem>.obj`, a 1D net a polyline. Throws InputError for n != 3 or
// vertices at infinity.
std::vector<MeshFile> obj_slices(const PairNet& net, bool companion, const std::string& stem);

}  // namespace ribnet::cli
