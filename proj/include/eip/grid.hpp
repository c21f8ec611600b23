#pragma once

// Dense occupancy grids over a box. These back the O(volume) kernels
// (bond counting, vacancy scans, window sums) and the in-place
// rearrangements, which track their bond count incrementally.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "eip/lattice.hpp"

namespace eip {

template <std::size_t D>
class Grid {
 public:
  explicit Grid(const Box<D>& box) : box_(box) {
    std::size_t cells = 1;
    for (std::size_t i = 0; i < D; ++i) {
      if (box.hi[i] < box.lo[i]) throw std::invalid_argument("Grid: inverted box");
      stride_[D - 1 - i] = cells;
      cells *= static_cast<std::size_t>(box.count(D - 1 - i));
    }
    cells_.assign(cells, 0);
  }

  Grid(const Config<D>& c, i64 margin) : Grid(bounding_box(c).padded(margin)) {
    for (const auto& p : c) cells_[index(p)] = 1;
  }

  const Box<D>& box() const { return box_; }
  std::size_t stride(std::size_t axis) const { return stride_[axis]; }
  std::size_t cell_count() const { return cells_.size(); }

  std::size_t index(const Point<D>& p) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < D; ++i) idx += static_cast<std::size_t>(p[i] - box_.lo[i]) * stride_[i];
    return idx;
  }
  bool inside(const Point<D>& p) const { return box_.contains(p); }
  bool test(const Point<D>& p) const { return inside(p) && cells_[index(p)] != 0; }
  void set(const Point<D>& p, bool on) {
    if (!inside(p)) throw std::out_of_range("Grid: point outside box");
    cells_[index(p)] = on ? 1 : 0;
  }

  std::uint8_t operator[](std::size_t idx) const { return cells_[idx]; }
  const std::vector<std::uint8_t>& cells() const { return cells_; }

  int neighbors(const Point<D>& p) const {
    int count = 0;
    for (std::size_t axis = 0; axis < D; ++axis) {
      count += test(p + unit<D>(axis)) ? 1 : 0;
      count += test(p - unit<D>(axis)) ? 1 : 0;
    }
    return count;
  }

  /// Bonds among occupied cells. Cells on the box boundary count only
  /// towards neighbours inside the box.
  i64 bonds() const {
    i64 total = 0;
    Point<D> p = box_.lo;
    for (std::size_t idx = 0; idx < cells_.size(); ++idx) {
      if (cells_[idx]) {
        for (std::size_t axis = 0; axis < D; ++axis) {
          if (p[axis] < box_.hi[axis] && cells_[idx + stride_[axis]]) ++total;
        }
      }
      advance(p);
    }
    return total;
  }

  /// Occupied cells in lexicographic order.
  Config<D> to_config() const {
    std::vector<Point<D>> pts;
    Point<D> p = box_.lo;
    for (std::size_t idx = 0; idx < cells_.size(); ++idx) {
      if (cells_[idx]) pts.push_back(p);
      advance(p);
    }
    return Config<D>::from_sorted(std::move(pts));
  }

 private:
  void advance(Point<D>& p) const {
    for (std::size_t axis = D; axis-- > 0;) {
      if (++p[axis] <= box_.hi[axis]) return;
      p[axis] = box_.lo[axis];
    }
  }

  Box<D> box_;
  std::array<std::size_t, D> stride_{};
  std::vector<std::uint8_t> cells_;
};

using Grid2 = Grid<2>;
using Grid3 = Grid<3>;

/// A mutable configuration on a dense grid that keeps its bond count current
/// under single-site insertions and removals.
class BondGrid {
 public:
  explicit BondGrid(const Box3& box) : grid_(box) {}
  BondGrid(const Config3& c, const Box3& box) : grid_(box) {
    for (const auto& p : c) add(p);
  }

  i64 bonds() const { return bonds_; }
  i64 size() const { return size_; }
  bool test(const Point3& p) const { return grid_.test(p); }
  int neighbors(const Point3& p) const { return grid_.neighbors(p); }
  const Box3& box() const { return grid_.box(); }

  void add(const Point3& p) {
    if (grid_.test(p)) throw std::logic_error("BondGrid: site already occupied");
    bonds_ += grid_.neighbors(p);
    grid_.set(p, true);
    ++size_;
  }
  void remove(const Point3& p) {
    if (!grid_.test(p)) throw std::logic_error("BondGrid: site is empty");
    grid_.set(p, false);
    bonds_ -= grid_.neighbors(p);
    --size_;
  }
  /// Moves the whole set `from` to `to` (same length, element-wise).
  void move(std::span<const Point3> from, std::span<const Point3> to) {
    for (const auto& p : from) remove(p);
    for (const auto& p : to) add(p);
  }

  Config3 to_config() const { return grid_.to_config(); }

 private:
  Grid3 grid_;
  i64 bonds_ = 0;
  i64 size_ = 0;
};

}  // namespace eip
