#pragma once

// The n^(3/4) lower-bound family in 3D.
//
// M = Q(s, s, s) plus a top face R(r, s) u ({r + 1} x [1, s - q]) on z = s + 1.
// Transformation 1 peels the (h1 + 1)^2 lines of the corner block
// [s - h1, s] x [1, s] x [s - h1, s] onto the top face, one line at a time,
// after sliding the top face by e1. Transformation 2 rotates the slab
// [1, s - h1 - 1] x [1, s] x [s - h1, s + 1] about e2 against the x = 1 face.
// Both steps keep the bond count, which is audited after every move.

#include <iosfwd>
#include <string>

#include "eip/eip2d.hpp"
#include "eip/lattice.hpp"
#include "eip/wulff.hpp"

namespace eip {

struct LowerBoundParams {
  i64 s = 0;
  i64 q = 0;
  i64 r = 0;
  i64 d = 0;
  i64 n = 0;
  /// floor(n^(1/12) / 3), exact.
  i64 h1 = 0;
  /// h1 + (h1 + 1)^2 < floor(sqrt s).
  bool s0_ok = false;
};

/// Requires 2 <= s <= 2'000'000.
LowerBoundParams lower_bound_params(i64 s);

bool condition_rh1s(i64 s);

/// Smallest s such that the condition holds for every s' in [s, horizon].
/// Returns horizon + 1 if it fails at the horizon.
i64 s0_min(i64 horizon = 1'000'000);

/// s(s - h1 - 1)(h1 + 1). Throws std::invalid_argument if the condition
/// fails for s.
i64 bound_value(i64 s);

/// wulff_side(n_s) == s.
bool side_claim_holds(i64 s);

Config3 build_M(i64 s);

/// Throws PropertyViolation ("construction invalid for this s") when a move
/// changes the bond count.
Config3 transform1(const Config3& m, i64 s);

/// Throws PropertyViolation on a bond change or when the result misses the
/// block [-h1, s] x [1, s] x [1, s - h1 - 1].
Config3 transform2(const Config3& m1, i64 s);

bool inclusion_holds(const Config3& m2, i64 s);

struct LowerBoundInstance {
  LowerBoundParams params;
  Config3 m;
  Config3 m1;
  Config3 m2;
  i64 bonds_m = 0;
  i64 bonds_m1 = 0;
  i64 bonds_m2 = 0;
  i64 lines_moved = 0;
};

/// Full chain. With keep_intermediate false only m2 is filled in, which
/// keeps memory at one configuration for large s.
LowerBoundInstance construct_lower(i64 s, bool keep_intermediate = true);

struct LowerBoundRow {
  i64 s = 0;
  i64 n = 0;
  i64 d = 0;
  i64 h1 = 0;
  i64 bound_value = 0;
  i64 sym_diff = 0;
  i64 baseline_gap = 0;
  double ratio_bound = 0.0;
  double ratio_measured = 0.0;
  bool bonds_conserved = false;
  bool inclusion = false;
  i64 side_deviation = 0;
};

/// Builds M'' for s and measures it against the Wulff shape.
LowerBoundRow evaluate_lower(i64 s);

void write_lower_csv_header(std::ostream& out);
void write_lower_csv_row(std::ostream& out, const LowerBoundRow& row);

struct SharpRow2d {
  i64 s = 0;
  i64 d = 0;
  i64 sym_diff = 0;
  /// floor(sqrt s) * (s - floor(sqrt s) - 1), twice the guaranteed bound.
  i64 twice_bound = 0;
  double ratio = 0.0;
};

/// R_{s, floor(sqrt s), floor(s/4)} against W^2_{d_s}.
SharpRow2d evaluate_sharp_2d(i64 s);

inline double sharp_ratio_2d(i64 s) { return evaluate_sharp_2d(s).ratio; }

void write_sharp_csv_header(std::ostream& out);
void write_sharp_csv_row(std::ostream& out, const SharpRow2d& row);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace eip
