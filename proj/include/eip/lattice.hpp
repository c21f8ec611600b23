#pragma once

// Finite configurations on Z^2 and Z^3: points, bounding boxes, unit bonds,
// edge perimeter, level slices and symmetric differences.

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "eip/intmath.hpp"

namespace eip {

template <std::size_t D>
struct Point {
  static_assert(D == 2 || D == 3);
  std::array<i64, D> v{};

  constexpr Point() = default;
  constexpr Point(i64 x, i64 y) requires(D == 2) : v{x, y} {}
  constexpr Point(i64 x, i64 y, i64 z) requires(D == 3) : v{x, y, z} {}

  constexpr i64& operator[](std::size_t i) { return v[i]; }
  constexpr i64 operator[](std::size_t i) const { return v[i]; }
  constexpr i64 x() const { return v[0]; }
  constexpr i64 y() const { return v[1]; }
  constexpr i64 z() const requires(D == 3) { return v[2]; }

  constexpr auto operator<=>(const Point&) const = default;

  constexpr Point& operator+=(const Point& o) {
    for (std::size_t i = 0; i < D; ++i) v[i] += o.v[i];
    return *this;
  }
  constexpr Point& operator-=(const Point& o) {
    for (std::size_t i = 0; i < D; ++i) v[i] -= o.v[i];
    return *this;
  }
  friend constexpr Point operator+(Point a, const Point& b) { return a += b; }
  friend constexpr Point operator-(Point a, const Point& b) { return a -= b; }
};

using Point2 = Point<2>;
using Point3 = Point<3>;

/// Unit vector along `axis` (0-based).
template <std::size_t D>
constexpr Point<D> unit(std::size_t axis, i64 sign = 1) {
  Point<D> p;
  p[axis] = sign;
  return p;
}

/// Inclusive axis-aligned integer box [lo, hi].
template <std::size_t D>
struct Box {
  Point<D> lo;
  Point<D> hi;

  /// hi - lo along an axis (the side length in lattice units).
  constexpr i64 extent(std::size_t axis) const { return hi[axis] - lo[axis]; }
  /// Number of lattice sites along an axis.
  constexpr i64 count(std::size_t axis) const { return extent(axis) + 1; }
  constexpr i64 volume() const {
    i64 vol = 1;
    for (std::size_t i = 0; i < D; ++i) vol *= count(i);
    return vol;
  }
  constexpr bool contains(const Point<D>& p) const {
    for (std::size_t i = 0; i < D; ++i) {
      if (p[i] < lo[i] || p[i] > hi[i]) return false;
    }
    return true;
  }
  constexpr Box padded(i64 margin) const {
    Box b = *this;
    for (std::size_t i = 0; i < D; ++i) {
      b.lo[i] -= margin;
      b.hi[i] += margin;
    }
    return b;
  }
  constexpr bool operator==(const Box&) const = default;
};

using Box2 = Box<2>;
using Box3 = Box<3>;

/// All lattice points of a box, in lexicographic order.
template <std::size_t D>
std::vector<Point<D>> box_points(const Box<D>& box);

/// An immutable finite set of lattice points with its tightest bounding box.
/// Points are stored sorted lexicographically and without duplicates.
template <std::size_t D>
class Config {
 public:
  using point_type = Point<D>;

  Config() = default;
  Config(std::initializer_list<Point<D>> pts) : Config(from_points(std::vector<Point<D>>(pts))) {}

  /// Sorts and deduplicates.
  static Config from_points(std::vector<Point<D>> pts);
  /// Caller guarantees strict lexicographic order.
  static Config from_sorted(std::vector<Point<D>> pts);

  std::size_t size() const { return pts_.size(); }
  i64 n() const { return static_cast<i64>(pts_.size()); }
  bool empty() const { return pts_.empty(); }
  std::span<const Point<D>> points() const { return pts_; }
  auto begin() const { return pts_.begin(); }
  auto end() const { return pts_.end(); }

  bool contains(const Point<D>& p) const { return std::binary_search(pts_.begin(), pts_.end(), p); }
  /// Tightest box containing every point; empty configurations have none.
  const std::optional<Box<D>>& bbox() const { return bbox_; }

  bool operator==(const Config& o) const { return pts_ == o.pts_; }

 private:
  std::vector<Point<D>> pts_;
  std::optional<Box<D>> bbox_;
};

using Config2 = Config<2>;
using Config3 = Config<3>;

/// Number of unordered nearest-neighbour pairs.
template <std::size_t D>
i64 bond_count(const Config<D>& c);

/// #{(x, y) : |x - y| = 1, x in c, y not in c} = 2D*n - 2*bonds.
template <std::size_t D>
i64 edge_perimeter(const Config<D>& c);

/// Number of points of c adjacent to p (p itself not counted).
template <std::size_t D>
int neighbor_count(const Config<D>& c, const Point<D>& p);

template <std::size_t D>
Config<D> translate(const Config<D>& c, const Point<D>& shift);

template <std::size_t D>
i64 intersection_size(const Config<D>& a, const Config<D>& b);

template <std::size_t D>
i64 sym_diff_size(const Config<D>& a, const Config<D>& b);

/// Connectivity of the unit-bond graph. The empty configuration is connected.
template <std::size_t D>
bool is_connected(const Config<D>& c);

/// Throws std::invalid_argument("empty") on an empty configuration.
template <std::size_t D>
Box<D> bounding_box(const Config<D>& c);

/// Number of signed axis permutations of Z^D (8 or 48).
template <std::size_t D>
constexpr int symmetry_count() {
  return D == 2 ? 8 : 48;
}

/// Image of p under the k-th signed axis permutation, 0 <= k < symmetry_count<D>().
/// k = 0 is the identity.
template <std::size_t D>
Point<D> apply_symmetry(const Point<D>& p, int k);

template <std::size_t D>
Config<D> apply_symmetry(const Config<D>& c, int k);

// --- three-dimensional operations -------------------------------------------

/// Points of c in the plane {coordinate `axis` = value}; axis is 1, 2 or 3.
Config3 level(const Config3& c, int axis, i64 value);

/// Tightest axis-aligned box containing c. Throws on empty input.
Box3 minimal_cuboid(const Config3& c);

/// Tightest rectangle containing a configuration lying in one plane
/// {z = const}; returned as a box whose z-range is that single value.
/// Throws std::invalid_argument("not planar") otherwise.
Box3 minimal_rectangle(const Config3& c);

/// Sites outside c adjacent to exactly three points of c, sorted.
std::vector<Point3> three_vacancies(const Config3& c);

/// (x, y) -> (x, y, z).
Config3 embed(const Config2& c, i64 z);

/// Drops the z coordinate; throws std::invalid_argument if c is not planar.
Config2 project(const Config3& c);

}  // namespace eip
