#include "ribnet/lattice.hpp"

#include <stdexcept>

namespace ribnet {

Lattice::Lattice(std::vector<int> extents) : extents_(std::move(extents)) {
  if (extents_.empty()) throw std::invalid_argument("lattice needs at least one axis");
  strides_.assign(extents_.size(), 1);
  vertex_count_ = 1;
  for (std::size_t a = extents_.size(); a-- > 0;) {
    if (extents_[a] < 1) throw std::invalid_argument("lattice extents must be positive");
    strides_[a] = vertex_count_;
    vertex_count_ *= static_cast<std::size_t>(extents_[a]);
  }
}

bool Lattice::contains(std::span<const int> t) const {
  if (t.size() != extents_.size()) return false;
  for (std::size_t a = 0; a < t.size(); ++a) {
    if (t[a] < 0 || t[a] >= extents_[a]) return false;
  }
  return true;
}

std::size_t Lattice::index(std::span<const int> t) const {
  if (!contains(t)) throw std::out_of_range("multi-index outside the lattice");
  std::size_t v = 0;
  for (std::size_t a = 0; a < t.size(); ++a) v += static_cast<std::size_t>(t[a]) * strides_[a];
  return v;
}

MultiIndex Lattice::multi_index(std::size_t vertex) const {
  MultiIndex t(extents_.size());
  for (std::size_t a = 0; a < extents_.size(); ++a) {
    t[a] = static_cast<int>(vertex / strides_[a]);
    vertex %= strides_[a];
  }
  return t;
}

int Lattice::coordinate(std::size_t vertex, int axis) const {
  const auto a = static_cast<std::size_t>(axis);
  return static_cast<int>((vertex / strides_[a]) % static_cast<std::size_t>(extents_[a]));
}

std::vector<int> Lattice::support(std::size_t vertex) const {
  std::vector<int> axes;
  for (int a = 0; a < dim(); ++a) {
    if (coordinate(vertex, a) != 0) axes.push_back(a);
  }
  return axes;
}

bool Lattice::has_cell(std::size_t base, std::span<const int> axes) const {
  for (int a : axes) {
    if (!has_edge(base, a)) return false;
  }
  return true;
}

std::vector<std::size_t> Lattice::cell_bases(std::span<const int> axes) const {
  std::vector<std::size_t> bases;
  for (std::size_t v = 0; v < vertex_count_; ++v) {
    if (has_cell(v, axes)) bases.push_back(v);
  }
  return bases;
}

std::vector<std::size_t> Lattice::cell_vertices(std::size_t base, std::span<const int> axes) const {
  const std::size_t count = std::size_t{1} << axes.size();
  std::vector<std::size_t> out(count, base);
  for (std::size_t pos = 0; pos < count; ++pos) {
    for (std::size_t b = 0; b < axes.size(); ++b) {
      if (pos & (std::size_t{1} << b)) out[pos] += stride(axes[b]);
    }
  }
  return out;
}

std::vector<std::vector<int>> axis_subsets(int m, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > m) return out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

}  // namespace ribnet
