#pragma once

// Exact edge-isoperimetry on the square lattice: the closed-form minimum
// perimeter, the canonical "daisy" minimizers and the rectangle-plus-line
// family used for the sharpness constructions.

#include <utility>

#include "eip/lattice.hpp"

namespace eip {

/// Minimum edge perimeter of a d-point subset of Z^2: 2*ceil(2*sqrt(d)).
i64 eta(i64 d);

/// Maximum number of unit bonds of a d-point subset of Z^2: floor(2d - 2*sqrt(d)).
i64 bmax2(i64 d);

/// Throws std::invalid_argument on an empty configuration.
bool is_minimizer2(const Config2& c);

/// D_d = R(s, s') u L_e with s' in {s, s+1}, e < s' and d = s*s' + e.
struct DaisyDescriptor {
  i64 s = 0;
  i64 s_prime = 0;
  i64 e = 0;

  i64 cardinality() const { return s * s_prime + e; }
  bool operator==(const DaisyDescriptor&) const = default;
};

DaisyDescriptor daisy_descriptor(i64 d);

/// The i-th point (1-based) of the nested daisy sequence, so that
/// D_d = {daisy_point(1), ..., daisy_point(d)}.
Point2 daisy_point(i64 i);

/// Start index (1-based) of the straight run of the daisy sequence that
/// contains index i. Runs are the rows/columns added one at a time.
i64 daisy_line_start(i64 i);

std::pair<DaisyDescriptor, Config2> build_daisy(i64 d);

/// R_{s,p,q} = R(s-p-1, s) u ({s-p} x [1, s-q]).
struct RectLineDescriptor {
  i64 s = 0;
  i64 p = 0;
  i64 q = 0;

  i64 cardinality() const { return s * s - s * p - q; }
};

/// Requires s >= 1, p <= s-2, q < s; throws "degenerate parameters" otherwise.
Config2 build_rect_line(i64 s, i64 p, i64 q);

/// Bond count of R_{s,p,q} from the closed formula.
i64 rect_line_bond_formula(i64 s, i64 p, i64 q);

/// 4(s - q) > (p + 1)^2, on the same parameter domain as build_rect_line.
bool lemma41_holds(i64 s, i64 p, i64 q);

struct SharpSequence2d {
  i64 s = 0;
  i64 d = 0;
  RectLineDescriptor params;
  Config2 config;
};

/// d_s = s^2 - s*floor(sqrt s) - floor(s/4) and R_{s, floor(sqrt s), floor(s/4)}.
/// For s = 2 the rectangle part is empty and the result is a vertical domino.
SharpSequence2d sharp_sequence_2d(i64 s);

/// d_s alone.
i64 sharp_d(i64 s);

}  // namespace eip
