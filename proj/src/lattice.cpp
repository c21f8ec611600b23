#include "eip/lattice.hpp"

#include <numeric>
#include <stdexcept>

#include "eip/grid.hpp"

namespace eip {

namespace {

template <std::size_t D>
std::optional<Box<D>> compute_bbox(const std::vector<Point<D>>& pts) {
  if (pts.empty()) return std::nullopt;
  Box<D> b{pts.front(), pts.front()};
  for (const auto& p : pts) {
    for (std::size_t i = 0; i < D; ++i) {
      b.lo[i] = std::min(b.lo[i], p[i]);
      b.hi[i] = std::max(b.hi[i], p[i]);
    }
  }
  return b;
}

}  // namespace

template <std::size_t D>
std::vector<Point<D>> box_points(const Box<D>& box) {
  std::vector<Point<D>> pts;
  pts.reserve(static_cast<std::size_t>(box.volume()));
  Point<D> p = box.lo;
  while (true) {
    pts.push_back(p);
    std::size_t axis = D;
    while (axis-- > 0) {
      if (++p[axis] <= box.hi[axis]) break;
      p[axis] = box.lo[axis];
    }
    if (axis == static_cast<std::size_t>(-1)) break;
  }
  return pts;
}

template <std::size_t D>
Config<D> Config<D>::from_points(std::vector<Point<D>> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return from_sorted(std::move(pts));
}

template <std::size_t D>
Config<D> Config<D>::from_sorted(std::vector<Point<D>> pts) {
  Config c;
  c.bbox_ = compute_bbox(pts);
  c.pts_ = std::move(pts);
  return c;
}

template <std::size_t D>
i64 bond_count(const Config<D>& c) {
  if (c.size() < 2) return 0;
  return Grid<D>(c, 0).bonds();
}

template <std::size_t D>
i64 edge_perimeter(const Config<D>& c) {
  return 2 * static_cast<i64>(D) * c.n() - 2 * bond_count(c);
}

template <std::size_t D>
int neighbor_count(const Config<D>& c, const Point<D>& p) {
  int count = 0;
  for (std::size_t axis = 0; axis < D; ++axis) {
    count += c.contains(p + unit<D>(axis)) ? 1 : 0;
    count += c.contains(p - unit<D>(axis)) ? 1 : 0;
  }
  return count;
}

template <std::size_t D>
Config<D> translate(const Config<D>& c, const Point<D>& shift) {
  std::vector<Point<D>> pts(c.begin(), c.end());
  for (auto& p : pts) p += shift;
  return Config<D>::from_sorted(std::move(pts));
}

template <std::size_t D>
i64 intersection_size(const Config<D>& a, const Config<D>& b) {
  i64 common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  return common;
}

template <std::size_t D>
i64 sym_diff_size(const Config<D>& a, const Config<D>& b) {
  return a.n() + b.n() - 2 * intersection_size(a, b);
}

template <std::size_t D>
bool is_connected(const Config<D>& c) {
  if (c.size() < 2) return true;
  const auto pts = c.points();
  std::vector<std::size_t> parent(pts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  std::size_t components = pts.size();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t axis = 0; axis < D; ++axis) {
      const auto q = pts[i] + unit<D>(axis);
      const auto it = std::lower_bound(pts.begin(), pts.end(), q);
      if (it == pts.end() || *it != q) continue;
      const auto a = find(i);
      const auto b = find(static_cast<std::size_t>(it - pts.begin()));
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
  }
  return components == 1;
}

template <std::size_t D>
Box<D> bounding_box(const Config<D>& c) {
  if (!c.bbox()) throw std::invalid_argument("empty");
  return *c.bbox();
}

template <std::size_t D>
Point<D> apply_symmetry(const Point<D>& p, int k) {
  if (k < 0 || k >= symmetry_count<D>()) throw std::invalid_argument("apply_symmetry: index out of range");
  std::array<std::size_t, D> perm{};
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = 0; i < k / (1 << D); ++i) std::next_permutation(perm.begin(), perm.end());
  const int signs = k % (1 << D);
  Point<D> q;
  for (std::size_t i = 0; i < D; ++i) {
    q[i] = (signs >> i & 1) ? -p[perm[i]] : p[perm[i]];
  }
  return q;
}

template <std::size_t D>
Config<D> apply_symmetry(const Config<D>& c, int k) {
  std::vector<Point<D>> pts;
  pts.reserve(c.size());
  for (const auto& p : c) pts.push_back(apply_symmetry(p, k));
  return Config<D>::from_points(std::move(pts));
}

Config3 level(const Config3& c, int axis, i64 value) {
  if (axis < 1 || axis > 3) throw std::invalid_argument("level: axis must be 1, 2 or 3");
  std::vector<Point3> pts;
  for (const auto& p : c) {
    if (p[static_cast<std::size_t>(axis - 1)] == value) pts.push_back(p);
  }
  return Config3::from_sorted(std::move(pts));
}

Box3 minimal_cuboid(const Config3& c) { return bounding_box(c); }

Box3 minimal_rectangle(const Config3& c) {
  const Box3 b = bounding_box(c);
  if (b.lo.z() != b.hi.z()) throw std::invalid_argument("not planar");
  return b;
}

std::vector<Point3> three_vacancies(const Config3& c) {
  std::vector<Point3> out;
  if (c.empty()) return out;
  const Grid3 grid(c, 1);
  for (const auto& p : box_points(grid.box())) {
    if (!grid.test(p) && grid.neighbors(p) == 3) out.push_back(p);
  }
  return out;
}

Config3 embed(const Config2& c, i64 z) {
  std::vector<Point3> pts;
  pts.reserve(c.size());
  for (const auto& p : c) pts.emplace_back(p.x(), p.y(), z);
  return Config3::from_sorted(std::move(pts));
}

Config2 project(const Config3& c) {
  if (!c.empty()) minimal_rectangle(c);
  std::vector<Point2> pts;
  pts.reserve(c.size());
  for (const auto& p : c) pts.emplace_back(p.x(), p.y());
  return Config2::from_sorted(std::move(pts));
}

#define EIP_INSTANTIATE(D)                                                    \
  template std::vector<Point<D>> box_points<D>(const Box<D>&);                \
  template class Config<D>;                                                   \
  template i64 bond_count<D>(const Config<D>&);                               \
  template i64 edge_perimeter<D>(const Config<D>&);                           \
  template int neighbor_count<D>(const Config<D>&, const Point<D>&);          \
  template Config<D> translate<D>(const Config<D>&, const Point<D>&);         \
  template i64 intersection_size<D>(const Config<D>&, const Config<D>&);      \
  template i64 sym_diff_size<D>(const Config<D>&, const Config<D>&);          \
  template bool is_connected<D>(const Config<D>&);                            \
  template Box<D> bounding_box<D>(const Config<D>&);                          \
  template Point<D> apply_symmetry<D>(const Point<D>&, int);                  \
  template Config<D> apply_symmetry<D>(const Config<D>&, int);

EIP_INSTANTIATE(2)
EIP_INSTANTIATE(3)

#undef EIP_INSTANTIATE

}  // namespace eip
