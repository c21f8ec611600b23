#pragma once

// Bond-preserving rearrangement of a 3D minimizer into a quasicube, and the
// follow-up merge of the side face into the base cuboid.
//
// After the first step every z-level is a daisy anchored at (1, 1), and the
// levels are nested. All later moves keep that shape: points leave the top
// level from the end of its daisy sequence and enter a lower level at the
// next position of its sequence. Every move is audited against a running
// bond count; any change aborts with NotMinimizerError.

#include <iosfwd>
#include <optional>
#include <string>

#include "eip/lattice.hpp"

namespace eip {

/// C = (Q(s, s', s3 - 1) u F1 u F2) + (base_origin - (1, 1, 1)).
struct QuasicubeDescriptor {
  i64 s = 0;
  i64 s_prime = 0;
  i64 s3 = 0;
  /// Top level z = s3.
  Config3 f1;
  /// Side face x = s + 1. May share points with f1.
  Config3 f2;
  Point3 base_origin{1, 1, 1};
};

struct TraceStep {
  std::string label;
  i64 moved = 0;
  i64 bonds = 0;
};

using RearrangementTrace = std::vector<TraceStep>;

struct CuboidifyOptions {
  /// Axis (1..3) to use as the level direction. By default the axis with
  /// the fewest nonempty levels, z preferred on ties.
  std::optional<int> axis;
  /// Verify after every substep that each level is a daisy.
  bool check_levels = false;
};

struct CuboidifyResult {
  Config3 config;
  QuasicubeDescriptor quasicube;
  RearrangementTrace trace;
};

/// Throws std::invalid_argument on empty input and NotMinimizerError if any
/// step changes the bond count or the top level runs out of donors.
CuboidifyResult cuboidify(const Config3& m, const CuboidifyOptions& opts = {});

struct MergeResult {
  Config3 config;
  /// Base cuboid Q(a, b, c); the rest of the configuration lies on z = c + 1.
  i64 a = 0;
  i64 b = 0;
  i64 c = 0;
  RearrangementTrace trace;
};

/// Folds the side face of a cuboidify output into the base. Throws
/// std::invalid_argument on input that is not in cuboidify's normal form,
/// NotMinimizerError on any bond change.
MergeResult merge_side_face(const Config3& q);

/// Structural check of the quasicube shape up to translation and the 48
/// axis symmetries. Tries the identity first.
std::optional<QuasicubeDescriptor> match_quasicube(const Config3& c);

/// Same check in the given frame only (no symmetry, no translation).
std::optional<QuasicubeDescriptor> match_quasicube_in_frame(const Config3& c);

/// True iff the configuration is Q(a, b, c) plus points on level c + 1 only.
bool is_cuboid_plus_top(const Config3& c, i64& a, i64& b, i64& height);

/// True iff the level, projected to the plane, is the daisy of its size or
/// its transpose.
bool is_daisy_level(const Config3& level);

void write_trace_csv(std::ostream& out, const RearrangementTrace& trace);

}  // namespace eip
