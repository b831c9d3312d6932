#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ribnet {

using MultiIndex = std::vector<int>;

// Box-shaped piece of Z^m, {0..extent_0-1} x ... x {0..extent_{m-1}-1}.
//
// Vertices are numbered lexicographically (axis 0 most significant), so
// increasing vertex index is the lexicographic fill order. The edge
// t + 1/2 t_j is keyed by its base vertex and axis: slot = vertex * m + j.
// An elementary k-cell is keyed by its base vertex and its sorted axes.
class Lattice {
 public:
  Lattice() = default;
  // Every extent must be >= 1. Throws std::invalid_argument otherwise.
  explicit Lattice(std::vector<int> extents);

  int dim() const noexcept { return static_cast<int>(extents_.size()); }
  const std::vector<int>& extents() const noexcept { return extents_; }
  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_slot_count() const noexcept { return vertex_count_ * extents_.size(); }

  bool contains(std::span<const int> t) const;
  std::size_t index(std::span<const int> t) const;
  MultiIndex multi_index(std::size_t vertex) const;
  int coordinate(std::size_t vertex, int axis) const;
  std::size_t stride(int axis) const { return strides_[static_cast<std::size_t>(axis)]; }

  // Edge from `vertex` in direction +axis exists.
  bool has_edge(std::size_t vertex, int axis) const {
    return coordinate(vertex, axis) + 1 < extents_[static_cast<std::size_t>(axis)];
  }
  std::size_t edge_slot(std::size_t vertex, int axis) const {
    return vertex * extents_.size() + static_cast<std::size_t>(axis);
  }
  std::size_t shift(std::size_t vertex, int axis) const { return vertex + stride(axis); }

  // Axes with a nonzero coordinate, ascending.
  std::vector<int> support(std::size_t vertex) const;

  // Base vertices of all elementary cells spanned by `axes`, in index order.
  std::vector<std::size_t> cell_bases(std::span<const int> axes) const;
  // The 2^k vertices of a cell; bit b of the position selects axes[b].
  std::vector<std::size_t> cell_vertices(std::size_t base, std::span<const int> axes) const;
  bool has_cell(std::size_t base, std::span<const int> axes) const;

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.extents_ == b.extents_; }

 private:
  std::vector<int> extents_;
  std::vector<std::size_t> strides_;
  std::size_t vertex_count_ = 0;
};

// All k-element subsets of {0..m-1}, each ascending, in lexicographic order.
std::vector<std::vector<int>> axis_subsets(int m, int k);

}  // namespace ribnet
