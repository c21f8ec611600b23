#include "eip/wulff.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>

#include "eip/grid.hpp"

namespace eip {

namespace {

using Count = std::int32_t;

// Sliding window sum of length w along `axis` of a row-major array with the
// given shape. The output has shape[axis] + w - 1 entries along that axis;
// entry k sums input entries [k - w + 1, k].
std::vector<Count> slide(const std::vector<Count>& in, std::vector<std::size_t>& shape, std::size_t axis,
                         std::size_t w) {
  std::size_t outer = 1;
  std::size_t inner = 1;
  for (std::size_t i = 0; i < axis; ++i) outer *= shape[i];
  for (std::size_t i = axis + 1; i < shape.size(); ++i) inner *= shape[i];
  const std::size_t len = shape[axis];
  const std::size_t out_len = len + w - 1;
  std::vector<Count> out(outer * out_len * inner, 0);
  for (std::size_t o = 0; o < outer; ++o) {
    const Count* src = in.data() + o * len * inner;
    Count* dst = out.data() + o * out_len * inner;
    for (std::size_t k = 0; k < out_len; ++k) {
      Count* row = dst + k * inner;
      if (k > 0) {
        const Count* prev = row - inner;
        for (std::size_t i = 0; i < inner; ++i) row[i] = prev[i];
      }
      if (k < len) {
        const Count* add = src + k * inner;
        for (std::size_t i = 0; i < inner; ++i) row[i] += add[i];
      }
      if (k >= w) {
        const Count* sub = src + (k - w) * inner;
        for (std::size_t i = 0; i < inner; ++i) row[i] -= sub[i];
      }
    }
  }
  shape[axis] = out_len;
  return out;
}

template <std::size_t D>
FluctuationReport<D> make_report(const Config<D>& m, i64 wulff_size, i64 overlap, Point<D> shift) {
  FluctuationReport<D> r;
  r.n = m.n();
  r.best_shift = shift;
  r.max_overlap = overlap;
  r.sym_diff = r.n + wulff_size - 2 * overlap;
  r.baseline_gap = wulff_size >= r.n ? wulff_size - r.n : r.n - wulff_size;
  r.ratio = static_cast<double>(static_cast<long double>(r.sym_diff) / pow34(r.n));
  return r;
}

}  // namespace

i64 wulff_side(i64 n) {
  if (n < 1) throw std::invalid_argument("wulff: n must be >= 1");
  return static_cast<i64>(icbrt(static_cast<u64>(n)));
}

Config3 wulff3(i64 n) {
  const i64 l = wulff_side(n);
  return Config3::from_sorted(box_points(Box3{{0, 0, 0}, {l, l, l}}));
}

Config2 wulff2(i64 d) {
  if (d < 1) throw std::invalid_argument("wulff2: d must be >= 1");
  const auto w = static_cast<i64>(isqrt(static_cast<u64>(d)));
  return Config2::from_sorted(box_points(Box2{{1, 1}, {w, w}}));
}

template <std::size_t D>
std::pair<i64, Point<D>> max_window_overlap(const Config<D>& m, const std::array<i64, D>& window) {
  const Box<D> box = bounding_box(m);
  for (i64 w : window) {
    if (w < 1) throw std::invalid_argument("max_window_overlap: window must be positive");
  }
  const Grid<D> grid(box);
  std::vector<std::size_t> shape(D);
  for (std::size_t i = 0; i < D; ++i) shape[i] = static_cast<std::size_t>(box.count(i));

  std::vector<Count> sums(grid.cell_count(), 0);
  for (const auto& p : m) sums[grid.index(p)] = 1;

  // All axes but the last are materialized; the last is streamed.
  for (std::size_t axis = 0; axis + 1 < D; ++axis) {
    sums = slide(sums, shape, axis, static_cast<std::size_t>(window[axis]));
  }
  const std::size_t len = shape[D - 1];
  const auto w = static_cast<std::size_t>(window[D - 1]);
  const std::size_t out_len = len + w - 1;
  const std::size_t rows = sums.size() / len;

  Count best = -1;
  std::size_t best_row = 0;
  std::size_t best_k = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    const Count* src = sums.data() + r * len;
    Count run = 0;
    for (std::size_t k = 0; k < out_len; ++k) {
      if (k < len) run += src[k];
      if (k >= w) run -= src[k - w];
      if (run > best) {
        best = run;
        best_row = r;
        best_k = k;
      }
    }
  }

  // Row index enumerates the leading axes in row-major order.
  Point<D> corner;
  std::size_t rem = best_row;
  for (std::size_t axis = D - 1; axis-- > 0;) {
    const std::size_t idx = rem % shape[axis];
    rem /= shape[axis];
    corner[axis] = box.lo[axis] - (window[axis] - 1) + static_cast<i64>(idx);
  }
  corner[D - 1] = box.lo[D - 1] - (window[D - 1] - 1) + static_cast<i64>(best_k);
  return {best, corner};
}

FluctuationReport3 fluctuation3(const Config3& m) {
  if (m.empty()) throw std::invalid_argument("fluctuation3: empty configuration");
  const i64 l = wulff_side(m.n());
  const auto [overlap, corner] = max_window_overlap<3>(m, {l + 1, l + 1, l + 1});
  return make_report<3>(m, (l + 1) * (l + 1) * (l + 1), overlap, corner);
}

FluctuationReport2 fluctuation2(const Config2& m) {
  if (m.empty()) throw std::invalid_argument("fluctuation2: empty configuration");
  const auto w = static_cast<i64>(isqrt(static_cast<u64>(m.n())));
  const auto [overlap, corner] = max_window_overlap<2>(m, {w, w});
  // W^2 sits at [1, w]^2, so the shift is one less than the window corner.
  return make_report<2>(m, w * w, overlap, corner - Point2{1, 1});
}

i64 side_deviation(const Config3& m) {
  const Box3 box = minimal_cuboid(m);
  const i64 ln = wulff_side(m.n());
  i64 dev = 0;
  for (std::size_t i = 0; i < 3; ++i) dev = std::max(dev, std::abs(box.extent(i) - ln));
  return dev;
}

std::string format_ratio(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

long double pow34(i64 n) { return std::pow(static_cast<long double>(n), 0.75L); }

template std::pair<i64, Point<2>> max_window_overlap<2>(const Config<2>&, const std::array<i64, 2>&);
template std::pair<i64, Point<3>> max_window_overlap<3>(const Config<3>&, const std::array<i64, 3>&);

}  // namespace eip
