#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ribnet/cauchy.hpp"
#include "ribnet/net.hpp"

namespace ribnet {

struct FrameSeed {
  Lattice lattice;
  SpinFrameField frames;
  EdgeField edge_spheres;
};

// Constant edge vectors s_j = e_j + beta_j e_inf: a rectangular grid with
// F^ = e_inf. One spacing per axis.
FrameSeed seed_grid(int n, const std::vector<int>& extents, std::span<const double> spacings);

// Parameters of the random circular seed. Each new face vertex gets the cross
// ratio q = cross_ratio * (1 + spread * u), u uniform in [-1, 1].
struct ParameterField {
  double cross_ratio = -1.0;  // -1 is the square
  double spread = 0.0;
  double jitter = 0.0;        // perturbation of the axis vertices
  double spacing = 1.0;
};

// Coordinate 2-planes of a circular net, faces built on the circumcircle of
// their three predecessors. Deterministic for a given seed.
InitialData seed_random_circular(int n, const std::vector<int>& extents,
                                 const ParameterField& field, std::uint64_t seed);

struct RandomFrameOptions {
  double amplitude = 0.05;  // size of the sphere and face perturbations
  double companion = 0.05;  // inverse radius of the axis spheres; moves F^ off e_inf
  bool euclidean = false;   // keep every edge sphere a plane
  bool moebius = true;      // apply a random Moebius map (ignored if euclidean)
};

// A consistent frame field: axis edge spheres are perturbed bisector planes,
// face edges follow the sphere face condition with a random angle, and
// 3-cells are completed at sphere level.
FrameSeed seed_random_frames(int n, const std::vector<int>& extents,
                             const RandomFrameOptions& opts, std::uint64_t seed);

// Random data on the i-cells through the origin of {0,1}^k (i = 1 or 2),
// indexed like Lattice({2,...,2}). Faces use q near -1.
std::vector<std::optional<ConformalPoint>> seed_hypercube(int k, int i, int n,
                                                          std::uint64_t seed);

// A random even versor (product of two random unit spheres), redrawn until its
// coefficient norm is at most kMaxMoebiusNorm so that it distorts moderately.
inline constexpr double kMaxMoebiusNorm = 8.0;
Versor random_moebius(const Algebra& alg, std::uint64_t seed);

// Uniform double in [0, 1) from the top 53 bits of a 64-bit engine draw.
double unit_uniform(std::uint64_t bits);

}  // namespace ribnet
