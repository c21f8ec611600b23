#include "eip/lowerbound.hpp"

#include <cmath>
#include <mutex>
#include <ostream>
#include <stdexcept>

#include "eip/error.hpp"
#include "eip/grid.hpp"
#include "eip/intmath.hpp"

namespace eip {

LowerBoundParams lower_bound_params(i64 s) {
  if (s < 2 || s > 2'000'000) throw std::invalid_argument("lower bound family: s must be in [2, 2000000]");
  LowerBoundParams p;
  p.s = s;
  const auto root = static_cast<i64>(isqrt(static_cast<u64>(s)));
  p.q = s / 4;
  p.r = s - root - 1;
  p.d = s * s - s * root - p.q;
  p.n = s * s * s + p.d;
  p.h1 = static_cast<i64>(floor_root_over(static_cast<u64>(p.n), 12, 3));
  p.s0_ok = p.h1 + (p.h1 + 1) * (p.h1 + 1) < root;
  return p;
}

bool condition_rh1s(i64 s) { return lower_bound_params(s).s0_ok; }

i64 s0_min(i64 horizon) {
  if (horizon < 2) throw std::invalid_argument("s0_min: horizon must be >= 2");
  i64 s = horizon;
  while (s >= 2 && condition_rh1s(s)) --s;
  return s + 1;
}

namespace {

i64 default_s0_min() {
  static std::once_flag once;
  static i64 value = 0;
  std::call_once(once, [] { value = s0_min(); });
  return value;
}

void require_valid(const LowerBoundParams& p) {
  if (!p.s0_ok || p.s < default_s0_min()) {
    throw std::invalid_argument("lower bound construction needs s >= s0 (got s = " + std::to_string(p.s) + ")");
  }
}

Box3 working_box(const LowerBoundParams& p, const Config3& c) {
  Box3 box{{-p.h1 - 3, -1, -1}, {p.s + 2, p.s + 2, p.s + 3}};
  if (!c.empty()) {
    const Box3 b = bounding_box(c);
    for (std::size_t a = 0; a < 3; ++a) {
      box.lo[a] = std::min(box.lo[a], b.lo[a] - 2);
      box.hi[a] = std::max(box.hi[a], b.hi[a] + 2);
    }
  }
  return box;
}

[[noreturn]] void invalid(const LowerBoundParams& p, const std::string& where, i64 before, i64 after) {
  throw PropertyViolation("construction invalid for this s = " + std::to_string(p.s) + ": bond count went from " +
                          std::to_string(before) + " to " + std::to_string(after) + " during " + where);
}

void fill_M(BondGrid& g, const LowerBoundParams& p) {
  const i64 s = p.s;
  for (const auto& pt : box_points(Box3{{1, 1, 1}, {s, s, s}})) g.add(pt);
  for (i64 x = 1; x <= p.r; ++x) {
    for (i64 y = 1; y <= s; ++y) g.add({x, y, s + 1});
  }
  for (i64 y = 1; y <= s - p.q; ++y) g.add({p.r + 1, y, s + 1});
}

i64 run_transform1(BondGrid& g, const LowerBoundParams& p) {
  const i64 s = p.s;
  const i64 h = p.h1;
  const i64 b0 = g.bonds();
  i64 lines = 0;
  for (i64 x0 = s; x0 >= s - h; --x0) {
    for (i64 z0 = s; z0 >= s - h; --z0) {
      std::vector<Point3> line;
      for (i64 y = 1; y <= s; ++y) line.push_back({x0, y, z0});
      for (const auto& pt : line) {
        if (!g.test(pt)) throw PropertyViolation("transformation 1: line to move is not full");
      }
      std::vector<Point3> top;
      for (i64 x = s + 1; x >= g.box().lo.x() + 1; --x) {
        for (i64 y = 1; y <= s; ++y) {
          if (g.test({x, y, s + 1})) top.push_back({x, y, s + 1});
        }
      }
      // highest x first, so every target is already vacated
      for (const auto& pt : top) {
        g.remove(pt);
        g.add({pt.x() + 1, pt.y(), pt.z()});
      }
      for (const auto& pt : line) {
        g.remove(pt);
        g.add({1, pt.y(), s + 1});
      }
      ++lines;
      if (g.bonds() != b0) invalid(p, "transformation 1", b0, g.bonds());
    }
  }
  return lines;
}

void run_transform2(BondGrid& g, const LowerBoundParams& p) {
  const i64 s = p.s;
  const i64 h = p.h1;
  const i64 b0 = g.bonds();
  std::vector<Point3> from;
  std::vector<Point3> to;
  for (const auto& pt : box_points(Box3{{1, 1, s - h}, {s - h - 1, s, s + 1}})) {
    if (g.test(pt)) {
      from.push_back(pt);
      to.push_back({s - h - pt.z(), pt.y(), pt.x()});
    }
  }
  g.move(from, to);
  if (g.bonds() != b0) invalid(p, "transformation 2", b0, g.bonds());
}

bool inclusion_in(const BondGrid& g, const LowerBoundParams& p) {
  for (i64 x = -p.h1; x <= p.s; ++x) {
    for (i64 y = 1; y <= p.s; ++y) {
      for (i64 z = 1; z <= p.s - p.h1 - 1; ++z) {
        if (!g.test({x, y, z})) return false;
      }
    }
  }
  return true;
}

}  // namespace

i64 bound_value(i64 s) {
  const LowerBoundParams p = lower_bound_params(s);
  require_valid(p);
  return s * (s - p.h1 - 1) * (p.h1 + 1);
}

bool side_claim_holds(i64 s) { return wulff_side(lower_bound_params(s).n) == s; }

Config3 build_M(i64 s) {
  const LowerBoundParams p = lower_bound_params(s);
  BondGrid g(working_box(p, {}));
  fill_M(g, p);
  return g.to_config();
}

Config3 transform1(const Config3& m, i64 s) {
  const LowerBoundParams p = lower_bound_params(s);
  BondGrid g(m, working_box(p, m));
  run_transform1(g, p);
  return g.to_config();
}

bool inclusion_holds(const Config3& m2, i64 s) {
  const LowerBoundParams p = lower_bound_params(s);
  for (const auto& pt : box_points(Box3{{-p.h1, 1, 1}, {s, s, s - p.h1 - 1}})) {
    if (!m2.contains(pt)) return false;
  }
  return true;
}

Config3 transform2(const Config3& m1, i64 s) {
  const LowerBoundParams p = lower_bound_params(s);
  require_valid(p);
  BondGrid g(m1, working_box(p, m1));
  run_transform2(g, p);
  if (!inclusion_in(g, p)) throw PropertyViolation("transformation 2: result does not contain the base block");
  return g.to_config();
}

LowerBoundInstance construct_lower(i64 s, bool keep_intermediate) {
  LowerBoundInstance inst;
  inst.params = lower_bound_params(s);
  const auto& p = inst.params;
  require_valid(p);
  BondGrid g(working_box(p, {}));
  fill_M(g, p);
  inst.bonds_m = g.bonds();
  if (keep_intermediate) inst.m = g.to_config();
  inst.lines_moved = run_transform1(g, p);
  inst.bonds_m1 = g.bonds();
  if (keep_intermediate) inst.m1 = g.to_config();
  run_transform2(g, p);
  if (!inclusion_in(g, p)) throw PropertyViolation("transformation 2: result does not contain the base block");
  inst.bonds_m2 = g.bonds();
  inst.m2 = g.to_config();
  return inst;
}

LowerBoundRow evaluate_lower(i64 s) {
  const LowerBoundInstance inst = construct_lower(s, false);
  const auto& p = inst.params;
  const FluctuationReport3 rep = fluctuation3(inst.m2);
  LowerBoundRow row;
  row.s = s;
  row.n = p.n;
  row.d = p.d;
  row.h1 = p.h1;
  row.bound_value = bound_value(s);
  row.sym_diff = rep.sym_diff;
  row.baseline_gap = rep.baseline_gap;
  row.ratio_bound = static_cast<double>(static_cast<long double>(row.bound_value) / pow34(p.n));
  row.ratio_measured = rep.ratio;
  row.bonds_conserved = inst.bonds_m == inst.bonds_m1 && inst.bonds_m1 == inst.bonds_m2;
  row.inclusion = inclusion_holds(inst.m2, s);
  row.side_deviation = side_deviation(inst.m2);
  return row;
}

void write_lower_csv_header(std::ostream& out) {
  out << "s,n,d,h1,bound_value,sym_diff,baseline_gap,ratio_bound,ratio_measured,bonds_conserved\n";
}

void write_lower_csv_row(std::ostream& out, const LowerBoundRow& r) {
  out << r.s << ',' << r.n << ',' << r.d << ',' << r.h1 << ',' << r.bound_value << ',' << r.sym_diff << ','
      << r.baseline_gap << ',' << format_ratio(r.ratio_bound) << ',' << format_ratio(r.ratio_measured) << ','
      << (r.bonds_conserved ? 1 : 0) << '\n';
}

SharpRow2d evaluate_sharp_2d(i64 s) {
  const SharpSequence2d seq = sharp_sequence_2d(s);
  const FluctuationReport2 rep = fluctuation2(seq.config);
  const auto root = static_cast<i64>(isqrt(static_cast<u64>(s)));
  SharpRow2d row;
  row.s = s;
  row.d = seq.d;
  row.sym_diff = rep.sym_diff;
  row.twice_bound = root * (s - root - 1);
  row.ratio = rep.ratio;
  return row;
}

void write_sharp_csv_header(std::ostream& out) { out << "s,d,sym_diff,twice_bound,ratio\n"; }

void write_sharp_csv_row(std::ostream& out, const SharpRow2d& r) {
  out << r.s << ',' << r.d << ',' << r.sym_diff << ',' << r.twice_bound << ',' << format_ratio(r.ratio) << '\n';
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need two or more points");
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0 || y[i] <= 0) throw std::invalid_argument("loglog_slope: values must be positive");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0) throw std::invalid_argument("loglog_slope: x values are all equal");
  return (n * sxy - sx * sy) / den;
}

}  // namespace eip
