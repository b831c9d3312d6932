#include <algorithm>
#include <vector>

#include <gtest/gtest.h>

#include "ribnet/diagnostics.hpp"
#include "ribnet/seeds.hpp"
#include "test_support.hpp"

namespace ribnet {
namespace {

bool same_frames(const FrameSeed& a, const FrameSeed& b) {
  if (a.frames.size() != b.frames.size()) return false;
  for (std::size_t v = 0; v < a.frames.size(); ++v) {
    if (!(a.frames[v].mv() == b.frames[v].mv())) return false;
  }
  return true;
}

TEST(Seeds, RandomFramesAreDeterministic) {
  const FrameSeed a = seed_random_frames(3, {3, 4, 3}, {}, 81);
  const FrameSeed b = seed_random_frames(3, {3, 4, 3}, {}, 81);
  const FrameSeed c = seed_random_frames(3, {3, 4, 3}, {}, 82);
  EXPECT_TRUE(same_frames(a, b));
  EXPECT_FALSE(same_frames(a, c));
}

TEST(Seeds, RandomFramesVerifyAcrossOptions) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    RandomFrameOptions opts;
    opts.companion = seed % 2 ? 0.05 : 0.2;
    opts.moebius = seed % 3 != 0;
    const FrameSeed s = seed_random_frames(3, {5, 5, 5}, opts, seed);
    const NetDiagnostics d = verify_net(nets_from_frames(s.lattice, s.frames));
    EXPECT_TRUE(d.passed()) << "seed " << seed << ": " << d.first_failure()->name;
    EXPECT_EQ(d.find("edge_cross_ratio")->degenerate, 0u);
  }
}

TEST(Seeds, EuclideanFramesKeepPlanes) {
  RandomFrameOptions opts;
  opts.euclidean = true;
  const FrameSeed s = seed_random_frames(3, {4, 4, 4}, opts, 83);
  const PairNet net = nets_from_frames(s.lattice, s.frames);
  EXPECT_TRUE(net.euclidean);
  const Algebra& alg = net.algebra();
  for (const auto& S : net.edge_spheres) {
    if (!S.valid()) continue;
    EXPECT_LT((S * alg.einf() + alg.einf() * S).norm(), 1e-10);
  }
  EXPECT_TRUE(verify_net(net).passed());
}

TEST(Seeds, FrameSeedsWorkInHigherDimensions) {
  const FrameSeed s = seed_random_frames(4, {3, 3, 3, 3}, {}, 84);
  const NetDiagnostics d = verify_net(nets_from_frames(s.lattice, s.frames));
  EXPECT_TRUE(d.passed()) << d.first_failure()->name;
}

TEST(Seeds, CircularSeedGivesConcircularPlanes) {
  ParameterField field;
  field.spread = 0.2;
  field.jitter = 0.05;
  const InitialData a = seed_random_circular(3, {4, 4, 4}, field, 85);
  const InitialData b = seed_random_circular(3, {4, 4, 4}, field, 85);
  EXPECT_NO_THROW(a.validate());
  for (std::size_t v = 0; v < a.F.size(); ++v) {
    EXPECT_EQ(a.F[v].has_value(), a.lattice.support(v).size() <= 2);
    if (a.F[v]) EXPECT_EQ(a.F[v]->vec(), b.F[v]->vec());
  }
}

TEST(Seeds, SquareCircularSeedFillsToTheGrid) {
  const InitialData init = seed_random_circular(3, {4, 4, 4}, {}, 86);
  const FillResult f = fill_lattice(init);
  for (std::size_t v = 0; v < init.lattice.vertex_count(); ++v) {
    const EuclideanPoint x = prop::finite(project(f.net.F[v]));
    const MultiIndex t = init.lattice.multi_index(v);
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(x(j), t[static_cast<std::size_t>(j)], 1e-10);
  }
}

TEST(Seeds, RandomMoebiusIsBoundedAndDeterministic) {
  const Algebra& alg = Algebra::get(3);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Versor v = random_moebius(alg, s);
    EXPECT_LE(v.mv().norm(), kMaxMoebiusNorm);
    EXPECT_TRUE(v.even());
    EXPECT_EQ(v.mv(), random_moebius(alg, s).mv());
  }
}

TEST(Seeds, UnitUniformCoversTheUnitInterval) {
  EXPECT_EQ(unit_uniform(0), 0.0);
  EXPECT_LT(unit_uniform(~std::uint64_t{0}), 1.0);
  EXPECT_EQ(unit_uniform(std::uint64_t{1} << 63), 0.5);
}

}  // namespace
}  // namespace ribnet
