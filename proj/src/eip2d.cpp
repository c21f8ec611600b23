#include "eip/eip2d.hpp"

#include <stdexcept>

namespace eip {

namespace {

void require_positive(i64 d, const char* what) {
  if (d < 1) throw std::invalid_argument(std::string(what) + ": d must be >= 1");
}

void require_rect_line_domain(i64 s, i64 p, i64 q) {
  if (s < 1 || p < 0 || q < 0 || p > s - 2 || q >= s) throw std::invalid_argument("degenerate parameters");
}

// No domain check: the s = 2 sharp-sequence member has p = s - 1.
Config2 rect_line_points(i64 s, i64 p, i64 q) {
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(s * s - s * p - q));
  for (i64 x = 1; x <= s - p - 1; ++x) {
    for (i64 y = 1; y <= s; ++y) pts.emplace_back(x, y);
  }
  for (i64 y = 1; y <= s - q; ++y) pts.emplace_back(s - p, y);
  return Config2::from_sorted(std::move(pts));
}

}  // namespace

i64 eta(i64 d) {
  require_positive(d, "eta");
  return 2 * static_cast<i64>(ceil_sqrt(4 * static_cast<u64>(d)));
}

i64 bmax2(i64 d) {
  require_positive(d, "bmax2");
  // floor(2d - 2 sqrt d) = 2d - ceil(sqrt(4d))
  return 2 * d - static_cast<i64>(ceil_sqrt(4 * static_cast<u64>(d)));
}

bool is_minimizer2(const Config2& c) {
  if (c.empty()) throw std::invalid_argument("is_minimizer2: empty configuration");
  return bond_count(c) == bmax2(c.n());
}

DaisyDescriptor daisy_descriptor(i64 d) {
  require_positive(d, "build_daisy");
  const auto t = static_cast<i64>(isqrt(static_cast<u64>(d)));
  DaisyDescriptor desc;
  desc.s = t;
  if (d < t * t + t) {
    desc.s_prime = t;
    desc.e = d - t * t;
  } else {
    desc.s_prime = t + 1;
    desc.e = d - t * (t + 1);
  }
  if (desc.e < 0 || desc.e >= desc.s_prime || desc.cardinality() != d) {
    throw std::logic_error("daisy_descriptor: no valid decomposition");
  }
  return desc;
}

Point2 daisy_point(i64 i) {
  require_positive(i, "daisy_point");
  const i64 j = i - 1;
  const auto t = static_cast<i64>(isqrt(static_cast<u64>(j)));
  if (j < t * t + t) return {j - t * t + 1, t + 1};  // row y = t+1 of R(t, t+1)
  return {t + 1, j - t * t - t + 1};                  // column x = t+1
}

i64 daisy_line_start(i64 i) {
  require_positive(i, "daisy_line_start");
  const i64 j = i - 1;
  const auto t = static_cast<i64>(isqrt(static_cast<u64>(j)));
  return j < t * t + t ? t * t + 1 : t * t + t + 1;
}

std::pair<DaisyDescriptor, Config2> build_daisy(i64 d) {
  const DaisyDescriptor desc = daisy_descriptor(d);
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(d));
  for (i64 x = 1; x <= desc.s; ++x) {
    for (i64 y = 1; y <= desc.s_prime; ++y) pts.emplace_back(x, y);
  }
  for (i64 k = 1; k <= desc.e; ++k) {
    if (desc.s_prime == desc.s) {
      pts.emplace_back(k, desc.s_prime + 1);
    } else {
      pts.emplace_back(desc.s + 1, k);
    }
  }
  return {desc, Config2::from_points(std::move(pts))};
}

Config2 build_rect_line(i64 s, i64 p, i64 q) {
  require_rect_line_domain(s, p, q);
  return rect_line_points(s, p, q);
}

i64 rect_line_bond_formula(i64 s, i64 p, i64 q) {
  require_rect_line_domain(s, p, q);
  return (s - 1) * (s - p - 1) + s * (s - p - 2) + 2 * (s - q) - 1;
}

bool lemma41_holds(i64 s, i64 p, i64 q) {
  require_rect_line_domain(s, p, q);
  return 4 * (s - q) > (p + 1) * (p + 1);
}

i64 sharp_d(i64 s) {
  if (s < 2) throw std::invalid_argument("sharp_sequence_2d: s must be >= 2");
  return s * s - s * static_cast<i64>(isqrt(static_cast<u64>(s))) - s / 4;
}

SharpSequence2d sharp_sequence_2d(i64 s) {
  SharpSequence2d out;
  out.s = s;
  out.d = sharp_d(s);
  out.params = {s, static_cast<i64>(isqrt(static_cast<u64>(s))), s / 4};
  out.config = rect_line_points(s, out.params.p, out.params.q);
  return out;
}

}  // namespace eip
