#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ribnet/errors.hpp"
#include "ribnet/net.hpp"
#include "ribnet/seeds.hpp"
#include "test_support.hpp"

namespace ribnet {
namespace {

using prop::finite;

PairNet frame_net(std::vector<int> extents, std::uint64_t seed, RandomFrameOptions opts = {}) {
  const FrameSeed s = seed_random_frames(3, extents, opts, seed);
  return nets_from_frames(s.lattice, s.frames);
}

template <class Fn>
void for_each_face(const Lattice& lat, Fn&& fn) {
  for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
    for (int i = 0; i < lat.dim(); ++i) {
      for (int j = i + 1; j < lat.dim(); ++j) {
        const int axes[] = {i, j};
        if (lat.has_cell(v, axes)) fn(v, i, j);
      }
    }
  }
}

TEST(Net, GridSeedIsRectangularGrid) {
  const double spacing[] = {0.5, 1.0, 2.0};
  const FrameSeed s = seed_grid(3, {3, 4, 2}, spacing);
  const PairNet net = nets_from_frames(s.lattice, s.frames);
  EXPECT_TRUE(net.euclidean);
  for (std::size_t v = 0; v < net.lattice.vertex_count(); ++v) {
    const MultiIndex t = net.lattice.multi_index(v);
    const EuclideanPoint x = finite(project(net.F[v]));
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(x(j), spacing[j] * t[static_cast<std::size_t>(j)], 1e-14);
    EXPECT_TRUE(net.Fhat[v].is_infinite());
  }
}

TEST(Net, GridEdgesAreDegenerateForTheCompanionCrossRatio) {
  const double spacing[] = {1.0, 1.0, 1.0};
  const FrameSeed s = seed_grid(3, {2, 2, 2}, spacing);
  const PairNet net = nets_from_frames(s.lattice, s.frames);
  for (std::size_t slot = 0; slot < net.edge_vectors.size(); ++slot) {
    if (net.edge_vectors[slot].valid()) {
      EXPECT_FALSE(edge_cross_ratio_closed_form(net.edge_vectors[slot]).has_value());
    }
  }
}

TEST(Net, DimensionChecks) {
  EXPECT_THROW(require_net_dims(4, 3), std::invalid_argument);
  EXPECT_THROW(require_net_dims(0, 3), std::invalid_argument);
  const Algebra& alg = Algebra::get(3);
  EXPECT_THROW(propagate_frame(Versor::identity(alg), 2.0 * alg.e(1), 0), std::invalid_argument);
}

TEST(Net, FrameNetsSatisfyBothIntegrabilityConditions) {
  for (std::uint64_t seed : {1, 2, 3}) {
    const PairNet net = frame_net({4, 4, 4}, seed);
    const Lattice& lat = net.lattice;
    auto s = [&](std::size_t v, int j) { return net.edge_vectors[lat.edge_slot(v, j)]; };
    auto S = [&](std::size_t v, int j) { return net.edge_spheres[lat.edge_slot(v, j)]; };
    for_each_face(lat, [&](std::size_t v, int i, int j) {
      const std::size_t vi = lat.shift(v, i), vj = lat.shift(v, j);
      EXPECT_LT(mc_residual_face(s(v, i), s(v, j), s(vj, i), s(vi, j), i, j).scaled, 1e-10);
      const SphereFaceResidual r = mc_residual_spheres(S(v, i), S(vi, j), S(v, j), S(vj, i));
      EXPECT_LT(r.residual.scaled, 1e-10);
      EXPECT_LE(r.span_rank, 2);
    });
  }
}

TEST(Net, EdgeSpheresAreSymmetricAndReflectTheNets) {
  const PairNet net = frame_net({3, 3, 3}, 4);
  const Lattice& lat = net.lattice;
  for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
    for (int j = 0; j < 3; ++j) {
      if (!lat.has_edge(v, j)) continue;
      const std::size_t w = lat.shift(v, j);
      const EdgeSphereValue e = edge_sphere_value(net.frames[v], net.frames[w], j);
      EXPECT_LT(e.asymmetry.scaled, 1e-10);
      const Multivector& Sj = e.sphere;
      EXPECT_LT(projective_distance((Sj * net.F[v].vec() * Sj).grade(1), net.F[w].vec()), 1e-9);
      EXPECT_LT(projective_distance((Sj * net.Fhat[v].vec() * Sj).grade(1), net.Fhat[w].vec()),
                1e-9);
    }
  }
}

TEST(Net, CorruptedFrameBreaksEdgeSymmetry) {
  PairNet net = frame_net({2, 2, 2}, 5);
  const Algebra& alg = net.algebra();
  const Multivector rot[] = {alg.e(1), (alg.e(1) + 0.1 * alg.e(2)) / std::sqrt(1.01)};
  net.frames[1] = Versor::from_vectors(rot) * net.frames[1];
  EXPECT_THROW(edge_sphere(net.frames[0], net.frames[1], 2), InconsistentData);
}

TEST(Net, ClosedFormCrossRatiosMatchDirectEvaluation) {
  const PairNet net = frame_net({4, 4, 4}, 6);
  const Lattice& lat = net.lattice;
  int edges = 0;
  for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
    for (int j = 0; j < 3; ++j) {
      if (!lat.has_edge(v, j)) continue;
      const std::size_t w = lat.shift(v, j);
      const auto closed = edge_cross_ratio_closed_form(net.edge_vectors[lat.edge_slot(v, j)]);
      ASSERT_TRUE(closed.has_value());
      const double direct = cross_ratio(net.Fhat[v], net.F[v], net.F[w], net.Fhat[w]).r0;
      EXPECT_NEAR(*closed, direct, 1e-8 * std::max(1.0, std::abs(direct)));
      ++edges;
    }
  }
  EXPECT_EQ(edges, 3 * 3 * 4 * 4);
  auto s = [&](std::size_t v, int j) { return net.edge_vectors[lat.edge_slot(v, j)]; };
  for_each_face(lat, [&](std::size_t v, int i, int j) {
    const std::size_t vi = lat.shift(v, i), vj = lat.shift(v, j), vij = lat.shift(vi, j);
    const auto closed = face_cross_ratio_closed_form(s(v, i), s(vj, i), s(v, j), s(vi, j));
    ASSERT_TRUE(closed.has_value());
    const double direct = cross_ratio(net.F[v], net.F[vi], net.F[vij], net.F[vj]).r0;
    EXPECT_NEAR(*closed, direct, 1e-8 * std::max(1.0, std::abs(direct)));
  });
}

TEST(Net, CellsLieOnSpheres) {
  const PairNet net = frame_net({3, 3, 3}, 7);
  const int axes[] = {0, 1, 2};
  for (std::size_t base : net.lattice.cell_bases(axes)) {
    for (CellNet which : {CellNet::kF, CellNet::kFhat, CellNet::kPair}) {
      const CellSphereReport r = cell_sphere_check(net, base, axes, which);
      EXPECT_LT(r.residual, 1e-8);
    }
  }
  const int face[] = {0, 2};
  const CellSphereReport pair = cell_sphere_check(net, 0, face, CellNet::kPair);
  ASSERT_FALSE(pair.degenerate());
  EXPECT_EQ(pair.sphere->sphere_dim, 2);
}

TEST(Net, RibaucourCongruenceContainsBothNets) {
  const FrameSeed seed = seed_random_frames(3, {3, 3}, {}, 8);
  const PairNet net = nets_from_frames(seed.lattice, seed.frames);
  const int axes[] = {0, 1};
  for (std::size_t base : net.lattice.cell_bases(axes)) {
    const SphereBlade c = ribaucour_congruence(net, base);
    for (std::size_t v : net.lattice.cell_vertices(base, axes)) {
      EXPECT_LT(incidence_residual(net.F[v].vec(), c), 1e-9);
      EXPECT_LT(incidence_residual(net.Fhat[v].vec(), c), 1e-9);
    }
  }
  EXPECT_THROW(ribaucour_congruence(frame_net({2, 2, 2}, 8), 0), std::invalid_argument);
}

TEST(Net, RecoveredSpheresMatchUpToSign) {
  const PairNet net = frame_net({3, 3, 3}, 9);
  const EdgeField rec = edge_spheres_from_nets(net);
  for (std::size_t slot = 0; slot < rec.size(); ++slot) {
    if (!rec[slot].valid()) continue;
    EXPECT_LT(projective_distance(rec[slot], net.edge_spheres[slot]), 1e-8);
  }
}

TEST(Net, RecoverEdgeSphereRejectsNonConcircularPoints) {
  const Algebra& alg = Algebra::get(3);
  auto p = [&](double x, double y, double z) {
    EuclideanPoint e(3);
    e << x, y, z;
    return lift(alg, e).vec();
  };
  EXPECT_THROW(recover_edge_sphere(p(0, 0, 0), p(1, 0, 0), p(0, 1, 0), p(0, 0, 1)),
               DegenerateConfiguration);
  // Symmetric quadruple: the bisector plane x = 1/2.
  const Multivector s = recover_edge_sphere(p(0, 0, 0), p(1, 0, 0), p(0, 1, 0), p(1, 1, 0));
  EXPECT_LT(projective_distance(s, plane(alg, EuclideanPoint::Unit(3, 0), 0.5).vec()), 1e-12);
}

TEST(Net, ReconstructionClosesThroughSpheresAndFrames) {
  const PairNet net = frame_net({4, 4, 4}, 10);
  const EdgeField rec = edge_spheres_from_nets(net);
  const Versor origin = adapted_frame(net.F[0].vec(), net.Fhat[0].vec());
  const FrameIntegration integ =
      frame_from_edge_spheres(net.lattice, rec, origin, SignPolicy::kResolve);
  const PairNet back = nets_from_frames(net.lattice, integ.frames);
  for (std::size_t v = 0; v < net.lattice.vertex_count(); ++v) {
    EXPECT_LT(prop::distance(back.F[v], net.F[v]), 1e-8);
    EXPECT_LT(prop::distance(back.Fhat[v], net.Fhat[v]), 1e-8);
  }
}

TEST(Net, StrictIntegrationNamesTheFailingFace) {
  const PairNet net = frame_net({3, 3, 3}, 11);
  EdgeField S = net.edge_spheres;
  const int t[] = {1, 1, 0};
  S[net.lattice.edge_slot(net.lattice.index(t), 2)] *= -1.0;
  try {
    frame_from_edge_spheres(net.lattice, S, net.frames[0], SignPolicy::kStrict);
    FAIL() << "expected InconsistentData";
  } catch (const InconsistentData& e) {
    // The first face in lexicographic order through the flipped edge.
    EXPECT_NE(std::string(e.what()).find("face (0,1,0) axes (0,2)"), std::string::npos) << e.what();
  }
}

TEST(Net, ResolveIntegrationRepairsSigns) {
  const PairNet net = frame_net({3, 3, 3}, 12);
  EdgeField S = net.edge_spheres;
  // Vertex (1,2,0) is reached through axis 0, so its axis-1 edge is off the tree.
  const int t[] = {1, 1, 0};
  const std::size_t slot = net.lattice.edge_slot(net.lattice.index(t), 1);
  S[slot] *= -1.0;
  const FrameIntegration integ =
      frame_from_edge_spheres(net.lattice, S, net.frames[0], SignPolicy::kResolve);
  EXPECT_EQ(integ.flipped, 1u);
  EXPECT_EQ(integ.spheres[slot], net.edge_spheres[slot]);
  for (std::size_t v = 0; v < net.lattice.vertex_count(); ++v) {
    EXPECT_LT((integ.frames[v].mv() - net.frames[v].mv()).norm(), 1e-9 * net.frames[v].mv().norm());
  }
}

TEST(Net, InconsistentSpheresFailToClose) {
  const PairNet net = frame_net({3, 3, 3}, 13);
  EdgeField S = net.edge_spheres;
  const std::size_t slot = net.lattice.edge_slot(net.lattice.index(std::vector<int>{1, 1, 1}), 0);
  const Algebra& alg = net.algebra();
  S[slot] = (S[slot] + 0.05 * alg.e(3));
  S[slot] /= std::sqrt(minkowski_inner(S[slot], S[slot]));
  EXPECT_THROW(frame_from_edge_spheres(net.lattice, S, net.frames[0], SignPolicy::kResolve),
               InconsistentData);
}

TEST(Net, AdaptedFrameMapsTheNullBasis) {
  prop::for_all(100, 14, [](prop::Gen& g) {
    const Algebra& alg = Algebra::get(3);
    const ConformalPoint F = lift(alg, g.point(3)), Fh = lift(alg, g.point(3));
    const Versor phi = adapted_frame(F.vec(), Fh.vec());
    EXPECT_TRUE(phi.even());
    EXPECT_LT(projective_distance(phi.apply(alg.e0()), F.vec()), 1e-10);
    EXPECT_LT(projective_distance(phi.apply(alg.einf()), Fh.vec()), 1e-10);
  });
  const Algebra& alg = Algebra::get(3);
  const Multivector p = lift(alg, EuclideanPoint::Ones(3)).vec();
  EXPECT_THROW(adapted_frame(p, 2.0 * p), DegenerateConfiguration);
}

TEST(Net, SignHelpers) {
  const Algebra& alg = Algebra::get(3);
  const Multivector s = -alg.e(2) + 0.5 * alg.e(3);
  const Multivector c = canonical_sign(s);
  EXPECT_TRUE(c == s || c == -s);
  EXPECT_EQ(canonical_sign(-s), c);
  EXPECT_EQ(align_sign(s, alg.e(2)), -s);
  EXPECT_EQ(align_sign(s, -alg.e(2)), s);
}

}  // namespace
}  // namespace ribnet
