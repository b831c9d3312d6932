#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ribnet/clifford.hpp"
#include "ribnet/lattice.hpp"
#include "ribnet/moebius.hpp"
#include "ribnet/versor.hpp"

// Discrete frames, Ribaucour pairs of nets and their edge spheres.
//
// Lattice axis j (0-based) is paired with the generator e_{j+1}, so a net of
// dimension m needs m <= n. Frames propagate as
//   Phi(t + t_j) = e_j s_j Phi(t),
// the nets are F = Phi^{-1} e_0 Phi and F^ = Phi^{-1} e_inf Phi, and the edge
// spheres are S_j = Phi^{-1}(t) e_j Phi(t + t_j) = -Phi^{-1}(t) s_j Phi(t).
// Per-edge fields are indexed by Lattice::edge_slot; unused slots hold an
// invalid Multivector.
namespace ribnet {

using SpinFrameField = std::vector<Versor>;
using EdgeField = std::vector<Multivector>;

struct Residual {
  double raw = 0.0;
  double scaled = 0.0;
};

struct PairNet {
  Lattice lattice;
  int n = 0;
  std::vector<ConformalPoint> F;
  std::vector<ConformalPoint> Fhat;
  SpinFrameField frames;     // empty when absent
  EdgeField edge_vectors;    // s_j, frame-relative; empty when absent
  EdgeField edge_spheres;    // S_j, global; empty when absent
  bool euclidean = false;

  const Algebra& algebra() const { return Algebra::get(n); }
  bool has_frames() const { return !frames.empty(); }
  bool has_edge_vectors() const { return !edge_vectors.empty(); }
  bool has_edge_spheres() const { return !edge_spheres.empty(); }
};

// Generator paired with lattice axis j.
Multivector axis_generator(const Algebra& alg, int axis);
// Throws std::invalid_argument unless 1 <= m <= n.
void require_net_dims(int m, int n);

// Throws std::invalid_argument unless s is grade 1 with s^2 = -1.
Versor propagate_frame(const Versor& phi, const Multivector& s, int axis);

// Frames from edge vectors by propagation along a spanning tree rooted at the
// origin. Each vertex is reached through its smallest nonzero axis.
SpinFrameField integrate_edge_vectors(const Lattice& lattice, const EdgeField& s,
                                      const Versor& origin);

// F, F^, s_j and S_j from frames. F^ is snapped to e_inf (and the net flagged
// Euclidean) when every F^ is projectively e_inf within snap_tol.
PairNet nets_from_frames(const Lattice& lattice, SpinFrameField frames,
                         double snap_tol = 1e-12);

// s_j = -e_j Phi(t + t_j) Phi^{-1}(t), projected to grade 1.
Multivector edge_vector_from_frames(const Versor& phi_t, const Versor& phi_next, int axis);

// The two orderings Phi^{-1}(t) e_j Phi(t+t_j) and Phi^{-1}(t+t_j) e_j Phi(t)
// and their difference.
struct EdgeSphereValue {
  Multivector sphere;
  Residual asymmetry;
  double non_vector = 0.0;  // relative size of the non-grade-1 content
};
EdgeSphereValue edge_sphere_value(const Versor& phi_t, const Versor& phi_next, int axis);
// Throws InconsistentData when the asymmetry exceeds rel_tol.
Multivector edge_sphere(const Versor& phi_t, const Versor& phi_next, int axis,
                        double rel_tol = 1e-9);

// |e_j s_j(t+t_i) e_i s_i(t) - e_i s_i(t+t_j) e_j s_j(t)|; scaled divides by
// the product of the four input norms.
Residual mc_residual_face(const Multivector& s_i, const Multivector& s_j,
                          const Multivector& s_i_shifted, const Multivector& s_j_shifted,
                          int axis_i, int axis_j);

// |S_i(t) S_j(t+t_i) + S_j(t) S_i(t+t_j)| and the rank of the span of the four
// spheres, which is at most 2 on a consistent face.
struct SphereFaceResidual {
  Residual residual;
  int span_rank = 0;
};
SphereFaceResidual mc_residual_spheres(const Multivector& S_i, const Multivector& S_j_shifted,
                                       const Multivector& S_j, const Multivector& S_i_shifted,
                                       double rank_tol = 1e-8);

// Cross ratio of [F^(t), F(t), F(t+t_j), F^(t+t_j)] from s_j alone.
// nullopt marks a degenerate edge (<e_0,s> or <e_inf,s> vanishes).
std::optional<double> edge_cross_ratio_closed_form(const Multivector& s, double rel_tol = 1e-12);

// Cross ratio of [F(t), F(t+t_i), F(t+t_i+t_j), F(t+t_j)] from the edge vectors
// of a consistent face. nullopt when a denominator vanishes.
std::optional<double> face_cross_ratio_closed_form(const Multivector& s_i,
                                                   const Multivector& s_i_shifted,
                                                   const Multivector& s_j,
                                                   const Multivector& s_j_shifted,
                                                   double rel_tol = 1e-12);

enum class CellNet { kF, kFhat, kPair };

struct CellSphereReport {
  std::optional<SphereBlade> sphere;  // nullopt when the cell is degenerate
  double residual = 0.0;              // max incidence residual over all points
  int generic_points = 0;
  bool degenerate() const { return !sphere.has_value(); }
};

// Sphere through the vertices of an elementary cell: a (k-1)-sphere for one
// net, a k-sphere for the pair. Degenerate cells are reported, not thrown.
CellSphereReport cell_sphere_check(const PairNet& net, std::size_t base, std::span<const int> axes,
                                   CellNet which, double generic_tol = 1e-6);

// Phi^{-1}(t) (e_0 ^ s_1 ^ ... ^ s_m ^ e_inf) Phi(t) at the m-cell with the
// given base. Throws std::invalid_argument when m >= n or data is missing.
SphereBlade ribaucour_congruence(const PairNet& net, std::size_t base);

// The unit sphere reflecting Fa to Fb and F^a to F^b, with the sign gauge
// "first significant coefficient positive".
// Throws DegenerateConfiguration for non-concircular input, both edges
// degenerate, or a pair of point pairs that separate each other.
Multivector recover_edge_sphere(const Multivector& Fa, const Multivector& Fb,
                                const Multivector& Fhat_a, const Multivector& Fhat_b,
                                double rel_tol = 1e-8);

// Flips s so that <s, reference> >= 0.
Multivector align_sign(Multivector s, const Multivector& reference);
// First coefficient above 1e-9 * max_abs made positive.
Multivector canonical_sign(Multivector s);

// Recovers every edge sphere of the pair, aligning each with the previous
// sphere along its axis when one exists.
EdgeField edge_spheres_from_nets(const PairNet& net, double rel_tol = 1e-8);

enum class SignPolicy {
  kStrict,   // every face must satisfy the sphere condition as given
  kResolve,  // flip sphere signs as needed to make the frame integrable
};

struct FrameIntegration {
  SpinFrameField frames;
  EdgeField spheres;          // after sign resolution
  std::size_t flipped = 0;    // spheres whose sign changed
  double max_closure = 0.0;   // worst non-tree edge mismatch
};

// Phi(t + t_j) = -e_j Phi(t) S_j along a spanning tree, then checks every
// other edge. Throws InconsistentData naming the first failing face.
FrameIntegration frame_from_edge_spheres(const Lattice& lattice, const EdgeField& spheres,
                                         const Versor& origin, SignPolicy policy,
                                         double rel_tol = 1e-8);

// An even unit versor with Phi^{-1} e_0 Phi ~ F and Phi^{-1} e_inf Phi ~ F^.
// Throws DegenerateConfiguration when F ~ F^.
Versor adapted_frame(const Multivector& F, const Multivector& Fhat);

// Representative with a positive f_0 coefficient.
Multivector future_pointing(const Multivector& p);

}  // namespace ribnet
