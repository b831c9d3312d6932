#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ribnet/lattice.hpp"
#include "ribnet/moebius.hpp"
#include "ribnet/net.hpp"
#include "ribnet/versor.hpp"

// Completion of circular nets from their coordinate 2-planes.
namespace ribnet {

struct CompletionOptions {
  double input_tol = 1e-8;  // concircularity of given faces, normalised wedge
  double soft_tol = 1e-8;   // discrepancies above this are counted
  double hard_tol = 1e-5;   // discrepancies above this abort
};

// Partial vertex data on a lattice. Vertices with at most two nonzero
// coordinates must be present; further vertices may be given as well and are
// then checked against their completion.
struct InitialData {
  int n = 0;
  Lattice lattice;
  std::vector<std::optional<ConformalPoint>> F;
  std::vector<std::optional<ConformalPoint>> Fhat;  // empty unless pair data
  std::optional<Versor> origin_frame;

  bool has_companion() const { return !Fhat.empty(); }
  // Throws std::invalid_argument on missing or misplaced data and
  // InconsistentData on a non-concircular face.
  void validate(const CompletionOptions& opts = {}) const;
};

// Restriction of a net to the vertices with at most `k` nonzero coordinates.
InitialData initial_data_from_net(const PairNet& net, bool with_companion, int k = 2);

struct CellCompletion {
  std::size_t vertex = 0;
  std::array<int, 3> axes{};
  bool companion = false;
  double circle_residual = 0.0;
  double sphere_residual = 0.0;
};

struct Discrepancy {
  std::size_t vertex = 0;
  std::array<int, 3> axes{};
  bool companion = false;
  double distance = 0.0;
};

struct CompletionReport {
  std::vector<CellCompletion> cells;
  std::vector<Discrepancy> discrepancies;
  double max_circle_residual = 0.0;
  double max_sphere_residual = 0.0;
  double max_discrepancy = 0.0;
  std::size_t soft_violations = 0;
  std::size_t degenerate_edges = 0;
  std::size_t flipped_spheres = 0;
  bool euclidean = false;

  void add(const CellCompletion& c);
  void add(const Discrepancy& d, double soft_tol);
};

struct Cell3 {
  ConformalPoint point;
  double circle_residual = 0.0;  // of the result on the three circles
  double sphere_residual = 0.0;  // of all eight points on one 2-sphere
};

// Eighth vertex of an elementary 3-cell from the other seven, given in
// bit order: position b has bit 0/1/2 set for a step along the first,
// second, third axis. Throws DegenerateConfiguration or InconsistentData.
Cell3 complete_cell(std::span<const ConformalPoint> seven, const CompletionOptions& opts = {});
ConformalPoint complete_cell_3d(std::span<const ConformalPoint> seven,
                                const CompletionOptions& opts = {});

struct FillResult {
  PairNet net;
  CompletionReport report;
};

// Fills F in lexicographic order. Each vertex with three or more nonzero
// coordinates is completed from its smallest axis triple; other triples
// report discrepancies. The returned net has no companion.
FillResult fill_lattice(const InitialData& init, const CompletionOptions& opts = {});

// Fills F and F^, recovers edge spheres and integrates frames.
FillResult fill_pair_lattice(const InitialData& init, const CompletionOptions& opts = {});

struct HypercubeResult {
  PairNet net;
  CompletionReport report;
  // Worst concircularity (normalised wedge) over all 2-cells.
  double max_face_residual = 0.0;
};

// Fills {0,1}^k from the points on the i-cells through the origin, given as
// a vector indexed like Lattice({2,...,2}). For i = 1 one real parameter per
// 2-cell (axis pairs in lexicographic order) fixes the fourth vertex as a
// cross ratio. Throws std::invalid_argument for i < 1, i > k, or i = 1
// without parameters.
HypercubeResult hypercube_fill(int k, int i, int n,
                               const std::vector<std::optional<ConformalPoint>>& data,
                               std::span<const double> face_parameters = {},
                               const CompletionOptions& opts = {});

// The point x3 with cross ratio [x1, x2, x3, x4] = q on the circle through
// the finite points x1, x2, x4. Throws DegenerateConfiguration if x3 would be
// at infinity or the points are not distinct.
EuclideanPoint point_by_cross_ratio(const EuclideanPoint& x1, const EuclideanPoint& x2,
                                    const EuclideanPoint& x4, double q);

// Sphere-level completion of an elementary 3-cell: given the nine edge
// spheres on the three faces through the base, returns the three edges into
// the far vertex (along a, b, c). The spheres at the far vertex are the
// intersection of two spans, so this is the plane-meet construction.
struct CellSpheres {
  Multivector a, b, c;
};
CellSpheres complete_cell_spheres(const EdgeField& spheres, const Lattice& lattice,
                                  std::size_t base, int a, int b, int c);

// Fills every edge sphere into a vertex of support >= 3 from the spheres on
// the coordinate 2-planes through the origin. Lexicographic order.
void complete_sphere_field(const Lattice& lattice, EdgeField& spheres);

}  // namespace ribnet
