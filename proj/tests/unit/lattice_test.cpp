#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "ribnet/lattice.hpp"
#include "test_support.hpp"

namespace ribnet {
namespace {

TEST(Lattice, IndexRoundTripAndLexicographicOrder) {
  const Lattice lat({3, 4, 2});
  EXPECT_EQ(lat.vertex_count(), 24u);
  EXPECT_EQ(lat.edge_slot_count(), 72u);
  for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
    const MultiIndex t = lat.multi_index(v);
    EXPECT_EQ(lat.index(t), v);
    if (v > 0) EXPECT_LT(lat.multi_index(v - 1), t);
  }
  EXPECT_EQ(lat.stride(0), 8u);
  EXPECT_EQ(lat.stride(2), 1u);
}

TEST(Lattice, RejectsEmptyExtents) {
  EXPECT_THROW(Lattice({3, 0}), std::invalid_argument);
}

TEST(Lattice, SupportAndEdges) {
  const Lattice lat({3, 3, 3});
  const int t[] = {2, 0, 1};
  const std::size_t v = lat.index(t);
  EXPECT_EQ(lat.support(v), (std::vector<int>{0, 2}));
  EXPECT_FALSE(lat.has_edge(v, 0));
  EXPECT_TRUE(lat.has_edge(v, 1));
  EXPECT_TRUE(lat.has_edge(v, 2));
  const int out[] = {3, 0, 0};
  EXPECT_FALSE(lat.contains(out));
}

TEST(Lattice, CellsAndVertices) {
  const Lattice lat({3, 4, 2});
  const int axes[] = {0, 2};
  EXPECT_EQ(lat.cell_bases(axes).size(), 2u * 4u * 1u);
  const std::vector<std::size_t> verts = lat.cell_vertices(0, axes);
  ASSERT_EQ(verts.size(), 4u);
  EXPECT_EQ(verts[1], lat.stride(0));
  EXPECT_EQ(verts[2], lat.stride(2));
  EXPECT_EQ(verts[3], lat.stride(0) + lat.stride(2));
  const int t[] = {2, 0, 0};
  EXPECT_FALSE(lat.has_cell(lat.index(t), axes));
}

TEST(Lattice, AxisSubsetsCountBinomials) {
  prop::for_all(20, 41, [](prop::Gen& g) {
    const int m = g.integer(1, 6), k = g.integer(0, m);
    long binom = 1;
    for (int i = 0; i < k; ++i) binom = binom * (m - i) / (i + 1);
    const auto subsets = axis_subsets(m, k);
    EXPECT_EQ(static_cast<long>(subsets.size()), binom);
    for (std::size_t i = 1; i < subsets.size(); ++i) EXPECT_LT(subsets[i - 1], subsets[i]);
  });
}

}  // namespace
}  // namespace ribnet
