#pragma once

// Wulff shapes and the fluctuation metric
//   min over integer shifts a of #(M symmetric-difference (a + W_n)).
//
// The minimum is found by maximizing the overlap #(M n (a + W)) over every
// shift for which a + W meets the bounding box of M. Shifts whose window
// misses the box have overlap 0 and cannot do better than any other shift,
// so the search range [bbox.lo - (w - 1), bbox.hi] per axis is exhaustive.
// Window sums are computed by separable sliding sums, one axis at a time.

#include <string>

#include "eip/lattice.hpp"

namespace eip {

/// floor(n^(1/3)), exact.
i64 wulff_side(i64 n);

/// W_n = [0, l_n]^3 with l_n = floor(n^(1/3)); (l_n + 1)^3 points.
Config3 wulff3(i64 n);

/// W^2_d = [1, floor(sqrt d)]^2.
Config2 wulff2(i64 d);

template <std::size_t D>
struct FluctuationReport {
  i64 n = 0;
  /// Lexicographically smallest optimal shift of the Wulff shape.
  Point<D> best_shift;
  i64 sym_diff = 0;
  i64 max_overlap = 0;
  /// |#W - n|, a lower bound on sym_diff that every configuration pays.
  i64 baseline_gap = 0;
  /// sym_diff / n^(3/4).
  double ratio = 0.0;
};

using FluctuationReport3 = FluctuationReport<3>;
using FluctuationReport2 = FluctuationReport<2>;

FluctuationReport3 fluctuation3(const Config3& m);
FluctuationReport2 fluctuation2(const Config2& m);

/// Maximum window sum of an axis-aligned box window with the given number of
/// sites per axis, over all placements meeting the configuration's bounding
/// box. Returns (best overlap, lexicographically smallest window low corner).
template <std::size_t D>
std::pair<i64, Point<D>> max_window_overlap(const Config<D>& m, const std::array<i64, D>& window);

/// max_i |l_i - l_n| with l_i the minimal-cuboid side lengths (hi - lo).
i64 side_deviation(const Config3& m);

/// ratio rendered with 6 decimals (round-half-even on the binary value,
/// locale independent).
std::string format_ratio(double value);

/// x^(3/4) in long double.
long double pow34(i64 n);

}  // namespace eip
