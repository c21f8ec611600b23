// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "eip/cuboidify.hpp"
#include "eip/eip2d.hpp"
#include "eip/intmath.hpp"
#include "eip/lattice.hpp"
#include "eip/lowerbound.hpp"
#include "eip/oracle.hpp"
#include "eip/wulff.hpp"

using namespace eip;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

void fail(Outcome& o, const std::string& what) {
  if (o.ok) o.detail = what;
  o.ok = false;
}

// 2 * ceil(2 sqrt d) by scanning k.
i64 perimeter_by_scan(i64 d) {
  i64 k = 0;
  while (k * k < 4 * d) ++k;
  return 2 * k;
}

// floor(2d - 2 sqrt d): largest b with (2d - b)^2 >= 4d.
i64 bonds_by_scan(i64 d) {
  i64 b = 2 * d;
  while ((2 * d - b) * (2 * d - b) < 4 * d) --b;
  return b;
}

bool twelfth_power_envelope(i64 side, i64 n) {
  i128 p = 1;
  for (int k = 0; k < 12; ++k) p *= static_cast<i128>(side);
  return p <= static_cast<i128>(4096) * static_cast<i128>(n);
}

Config3 with_points(std::vector<Point3> pts, std::initializer_list<Point3> extra) {
  pts.insert(pts.end(), extra);
  return Config3::from_points(std::move(pts));
}

Outcome criterion1() {
  Outcome o;
  for (int d = 1; d <= 12; ++d) {
    const OracleRecord r = theta2_bruteforce(d, {.allow_large = false, .sample_cap = 0});
    if (r.min_perimeter != perimeter_by_scan(d)) fail(o, "min perimeter differs at d = " + std::to_string(d));
    if (r.max_bonds != bonds_by_scan(d)) fail(o, "max bonds differ at d = " + std::to_string(d));
  }
  if (o.ok) o.detail = "d = 1..12 exact";
  return o;
}

Outcome criterion2() {
  Outcome o;
  for (i64 d = 1; d <= 10000; ++d) {
    const Config2 c = build_daisy(d).second;
    if (c.n() != d || !is_minimizer2(c) || bond_count(c) != bonds_by_scan(d)) {
      fail(o, "daisy " + std::to_string(d) + " is not a minimizer");
    }
  }
  if (o.ok) o.detail = "d = 1..10000";
  return o;
}

Outcome criterion3() {
  Outcome o;
  i64 cases = 0;
  for (i64 s = 2; s <= 40; ++s) {
    for (i64 p = 0; p <= s - 2; ++p) {
      for (i64 q = 0; q <= s - 1; ++q) {
        const Config2 c = build_rect_line(s, p, q);
        const bool direct = bond_count(c) == bonds_by_scan(c.n());
        if (lemma41_holds(s, p, q) != direct || is_minimizer2(c) != direct) {
          fail(o, "criterion disagrees at (" + std::to_string(s) + "," + std::to_string(p) + "," + std::to_string(q) + ")");
        }
        if (rect_line_bond_formula(s, p, q) != bond_count(c)) fail(o, "bond formula differs");
        ++cases;
      }
    }
  }
  if (o.ok) o.detail = std::to_string(cases) + " parameter triples";
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto cache = cache_dir_from_env();
  std::size_t samples = 0;
  for (int n = 1; n <= 9; ++n) {
    const OracleRecord r = load_or_compute(3, n, cache);
    if (r.min_perimeter != 6 * n - 2 * r.max_bonds) fail(o, "record relation fails at n = " + std::to_string(n));
    for (const auto& m : r.samples3) {
      ++samples;
      if (edge_perimeter(m) != 6 * n - 2 * r.max_bonds) fail(o, "sample perimeter wrong at n = " + std::to_string(n));
      try {
        const auto c = cuboidify(m);
        if (c.config.n() != n || bond_count(c.config) != r.max_bonds) {
          fail(o, "cuboidify output is not a minimizer at n = " + std::to_string(n));
        }
      } catch (const std::exception& e) {
        fail(o, std::string("cuboidify failed: ") + e.what());
      }
    }
  }
  if (o.ok) o.detail = std::to_string(samples) + " oracle minimizers, n = 1..9";
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::vector<Config3> inputs;
  const auto cube = box_points(Box3{{1, 1, 1}, {3, 3, 3}});
  inputs.push_back(Config3::from_points(cube));
  inputs.push_back(with_points(cube, {{4, 1, 1}}));
  inputs.push_back(with_points(cube, {{4, 1, 1}, {4, 1, 2}}));
  inputs.push_back(with_points(cube, {{1, 1, 4}, {1, 2, 4}, {2, 1, 4}}));
  for (i64 s = 2; s <= 6; ++s) inputs.push_back(build_M(s));
  const auto cache = cache_dir_from_env();
  for (int n = 1; n <= 10; ++n) {
    for (const auto& m : load_or_compute(3, n, cache).samples3) inputs.push_back(m);
  }
  for (const auto& in : inputs) {
    const i64 b = bond_count(in);
    try {
      const auto r = cuboidify(in, {.axis = std::nullopt, .check_levels = true});
      for (const auto& step : r.trace) {
        if (step.bonds != b) fail(o, "trace step " + step.label + " changed the bond count");
      }
      if (r.config.n() != in.n() || bond_count(r.config) != b) fail(o, "cuboidify changed n or bonds");
      if (!match_quasicube(r.config)) fail(o, "output is not a quasicube");
      const auto m = merge_side_face(r.config);
      for (const auto& step : m.trace) {
        if (step.bonds != b) fail(o, "merge step " + step.label + " changed the bond count");
      }
      if (m.config.n() != in.n()) fail(o, "merge changed n");
    } catch (const std::exception& e) {
      fail(o, std::string("rearrangement failed: ") + e.what());
    }
  }
  if (o.ok) o.detail = std::to_string(inputs.size()) + " inputs";
  return o;
}

struct LowerRow {
  i64 s;
  i64 n;
  i64 h1;
  i64 side;
};

std::vector<LowerRow> lower_rows;

Outcome criterion6() {
  Outcome o;
  const i64 s0 = s0_min();
  i64 below_third = 0;
  i64 tested = 0;
  for (i64 s = s0; s <= 200; ++s) {
    if (!condition_rh1s(s)) continue;
    ++tested;
    const LowerBoundInstance inst = construct_lower(s, false);
    const auto& p = inst.params;
    const std::string at = " at s = " + std::to_string(s);
    if (bond_count(inst.m2) != bond_count(build_M(s))) fail(o, "bond count of M'' differs from M" + at);
    for (const auto& pt : box_points(Box3{{-p.h1, 1, 1}, {s, s, s - p.h1 - 1}})) {
      if (!inst.m2.contains(pt)) {
        fail(o, "block inclusion fails" + at);
        break;
      }
    }
    const i64 bound = s * (s - p.h1 - 1) * (p.h1 + 1);
    if (fluctuation3(inst.m2).sym_diff < bound) fail(o, "fluctuation below the bound" + at);
    const long double scale = pow34(p.n);
    if (s >= 20 && static_cast<long double>(bound) < 0.3L * scale) fail(o, "bound below 0.3 n^(3/4)" + at);
    if (static_cast<long double>(bound) < scale / 3 * (1 - 1e-9L)) ++below_third;
    const Box3 box = bounding_box(inst.m2);
    i64 side = 0;
    for (std::size_t a = 0; a < 3; ++a) side = std::max(side, std::abs(box.hi[a] - box.lo[a] - wulff_side(p.n)));
    lower_rows.push_back({s, p.n, p.h1, side});
  }
  if (o.ok) {
    o.detail = "s = " + std::to_string(s0) + "..200 (" + std::to_string(tested) + " values); bound < n^(3/4)/3 at " +
               std::to_string(below_third) + " of them, >= 0.3 n^(3/4) for s >= 20";
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::vector<double> x, y;
  for (i64 s = 50; s <= 2000; ++s) {
    const SharpRow2d r = evaluate_sharp_2d(s);
    const i64 root = static_cast<i64>(isqrt(static_cast<u64>(s)));
    if (2 * r.sym_diff < root * (s - root - 1)) fail(o, "2D fluctuation below the bound at s = " + std::to_string(s));
    x.push_back(static_cast<double>(r.d));
    y.push_back(static_cast<double>(r.sym_diff));
  }
  const double slope = loglog_slope(x, y);
  if (slope < 0.72 || slope > 0.78) fail(o, "fitted exponent " + format_ratio(slope) + " outside [0.72, 0.78]");
  if (o.ok) o.detail = "s = 50..2000, fitted exponent " + format_ratio(slope);
  return o;
}

Outcome criterion8() {
  Outcome o;
  for (i64 s = 2; s <= 10000; ++s) {
    const i64 n = lower_bound_params(s).n;
    const i128 lo = static_cast<i128>(s) * s * s;
    const i128 hi = static_cast<i128>(s + 1) * (s + 1) * (s + 1);
    if (!(lo <= n && n < hi) || wulff_side(n) != s) fail(o, "Wulff side differs at s = " + std::to_string(s));
  }
  if (o.ok) o.detail = "s = 2..10000";
  return o;
}

Outcome criterion9() {
  Outcome o;
  if (lower_rows.empty()) fail(o, "no lower-bound instances were built");
  for (const auto& r : lower_rows) {
    const std::string at = " at s = " + std::to_string(r.s);
    if (r.side != r.h1 + 2) fail(o, "side deviation " + std::to_string(r.side) + " is not h1 + 2" + at);
    if (!twelfth_power_envelope(r.side, r.n)) fail(o, "side deviation above 2 n^(1/12)" + at);
  }
  if (o.ok) o.detail = "side deviation = h1 + 2 <= 2 n^(1/12) on " + std::to_string(lower_rows.size()) + " instances";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"2D closed form vs exhaustive search", criterion1},
      {"daisy optimality", criterion2},
      {"rectangle-plus-line criterion", criterion3},
      {"3D oracle consistency", criterion4},
      {"cuboidification conservation", criterion5},
      {"lower-bound chain", criterion6},
      {"2D sharpness", criterion7},
      {"s equals the Wulff side of n_s", criterion8},
      {"side deviation envelope", criterion9},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d: %s: %s (%.1fs)\n", o.ok ? "PASS" : "FAIL", index, name, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.ok) ++failures;
  }
  std::printf("NOT-REPRODUCIBLE criterion 10: exact asymptotic constants of the upper and lower bounds; "
              "covered by criteria 6-9 instead\n");
  return failures == 0 ? 0 : 1;
}
