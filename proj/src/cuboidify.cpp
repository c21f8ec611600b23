#include "eip/cuboidify.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "eip/eip2d.hpp"
#include "eip/error.hpp"
#include "eip/grid.hpp"

namespace eip {

namespace {

// Cyclic relabeling that sends the chosen axis to z.
Point3 to_frame(const Point3& p, int axis) {
  switch (axis) {
    case 1: return {p.y(), p.z(), p.x()};
    case 2: return {p.z(), p.x(), p.y()};
    default: return p;
  }
}

int level_count(const Config3& c, std::size_t axis) {
  std::vector<i64> vals;
  vals.reserve(c.size());
  for (const auto& p : c) vals.push_back(p[axis]);
  std::sort(vals.begin(), vals.end());
  return static_cast<int>(std::unique(vals.begin(), vals.end()) - vals.begin());
}

int pick_axis(const Config3& c) {
  int best = 3;
  int best_count = level_count(c, 2);
  for (int axis : {1, 2}) {
    const int count = level_count(c, static_cast<std::size_t>(axis - 1));
    if (count < best_count) {
      best = axis;
      best_count = count;
    }
  }
  return best;
}

// Last index of the daisy line containing i.
i64 daisy_line_end(i64 i) {
  const auto t = static_cast<i64>(isqrt(static_cast<u64>(i - 1)));
  return i - 1 < t * t + t ? t * t + t : (t + 1) * (t + 1);
}

Point3 daisy_at(i64 i, i64 z) {
  const Point2 p = daisy_point(i);
  return {p.x(), p.y(), z};
}

[[noreturn]] void bond_change(const std::string& where, i64 expected, i64 got) {
  throw NotMinimizerError("input is not an EIP minimizer: bond count went from " + std::to_string(expected) + " to " +
                          std::to_string(got) + " during " + where);
}

// Stack of nested daisies on levels 1..f, all anchored at (1, 1).
class DaisyStack {
 public:
  DaisyStack(std::vector<i64> sizes, i64 width, i64 expected_bonds)
      : sizes_(std::move(sizes)),
        grid_(Box3{{0, 0, 0}, {width + 2, width + 2, static_cast<i64>(sizes_.size()) + 1}}),
        expected_(expected_bonds) {
    top_ = static_cast<i64>(sizes_.size()) - 1;
    for (i64 k = 1; k <= top_; ++k) {
      for (i64 i = 1; i <= sizes_[static_cast<std::size_t>(k)]; ++i) grid_.add(daisy_at(i, k));
    }
  }

  i64 size(i64 k) const { return sizes_[static_cast<std::size_t>(k)]; }
  i64 top() const { return top_; }
  i64 bonds() const { return grid_.bonds(); }
  const BondGrid& grid() const { return grid_; }

  void audit(const std::string& where) const {
    if (grid_.bonds() != expected_) bond_change(where, expected_, grid_.bonds());
  }

  bool next_is_vacancy(i64 k) const { return grid_.neighbors(daisy_at(size(k) + 1, k)) >= 3; }

  // One point from the end of the top daisy to the next slot of level k.
  void move_point(i64 k) {
    grid_.remove(daisy_at(size(top_), top_));
    --sizes_[static_cast<std::size_t>(top_)];
    grid_.add(daisy_at(size(k) + 1, k));
    ++sizes_[static_cast<std::size_t>(k)];
    shrink_top();
  }

  // The last (possibly partial) line of the top daisy to the next slots of
  // level k. Returns the number of points moved.
  i64 move_line(i64 k, i64 room) {
    const i64 last = size(top_);
    const i64 len = last - daisy_line_start(last) + 1;
    if (len > room) {
      throw PropertyViolation("cuboidify: donor line of length " + std::to_string(len) + " exceeds room " +
                              std::to_string(room));
    }
    for (i64 i = 0; i < len; ++i) grid_.remove(daisy_at(last - i, top_));
    sizes_[static_cast<std::size_t>(top_)] -= len;
    for (i64 i = 1; i <= len; ++i) grid_.add(daisy_at(size(k) + i, k));
    sizes_[static_cast<std::size_t>(k)] += len;
    shrink_top();
    return len;
  }

  void check_levels(const std::string& where) const {
    for (i64 k = 1; k <= top_; ++k) {
      if (!is_daisy_level(level(grid_.to_config(), 3, k))) {
        throw PropertyViolation("cuboidify: level " + std::to_string(k) + " is not a daisy after " + where);
      }
    }
  }

 private:
  void shrink_top() {
    while (top_ > 0 && size(top_) == 0) --top_;
  }

  std::vector<i64> sizes_;  // index 0 unused
  BondGrid grid_;
  i64 expected_;
  i64 top_ = 0;
};

std::optional<QuasicubeDescriptor> frame_matches(const Config3& c, i64 s, i64 s_prime, i64 s3);

i64 count_at_x(const Config3& c, i64 x) {
  return std::count_if(c.begin(), c.end(), [x](const Point3& p) { return p.x() == x; });
}

}  // namespace

bool is_daisy_level(const Config3& lvl) {
  if (lvl.empty()) return true;
  const Config2 flat = project(lvl);
  const Box2 box = bounding_box(flat);
  const Config2 norm = translate(flat, Point2{1 - box.lo.x(), 1 - box.lo.y()});
  const Config2 daisy = build_daisy(norm.n()).second;
  if (norm == daisy) return true;
  std::vector<Point2> swapped;
  for (const auto& p : daisy) swapped.emplace_back(p.y(), p.x());
  return norm == Config2::from_points(std::move(swapped));
}

CuboidifyResult cuboidify(const Config3& m, const CuboidifyOptions& opts) {
  if (m.empty()) throw std::invalid_argument("cuboidify: empty configuration");
  const int axis = opts.axis.value_or(pick_axis(m));
  if (axis < 1 || axis > 3) throw std::invalid_argument("cuboidify: axis must be 1, 2 or 3");

  CuboidifyResult out;
  auto& trace = out.trace;
  const i64 bonds_in = bond_count(m);
  trace.push_back({"input", 0, bonds_in});

  // Step (i): daisies stacked by decreasing size; equal sizes keep z order.
  std::vector<std::pair<i64, i64>> levels;  // (z, size)
  {
    std::vector<Point3> framed;
    framed.reserve(m.size());
    for (const auto& p : m) framed.push_back(to_frame(p, axis));
    std::sort(framed.begin(), framed.end(), [](const Point3& a, const Point3& b) { return a.z() < b.z(); });
    for (const auto& p : framed) {
      if (levels.empty() || levels.back().first != p.z()) levels.emplace_back(p.z(), 0);
      ++levels.back().second;
    }
  }
  std::stable_sort(levels.begin(), levels.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<i64> sizes{0};
  for (const auto& lv : levels) sizes.push_back(lv.second);

  const DaisyDescriptor base = daisy_descriptor(sizes[1]);
  const i64 s = base.s;
  const i64 s_prime = base.s_prime;
  const i64 rect = s * s_prime;

  DaisyStack stack(sizes, s + 1, bonds_in);
  {
    const Config3 stacked = stack.grid().to_config();
    std::vector<Point3> framed;
    for (const auto& p : m) framed.push_back(to_frame(p, axis));
    const i64 kept = intersection_size(stacked, Config3::from_points(std::move(framed)));
    trace.push_back({"step-i", m.n() - kept, stack.bonds()});
  }
  stack.audit("step (i)");
  if (opts.check_levels) stack.check_levels("step (i)");

  if (stack.top() > 2) {
    // Step (ii): fill 3-vacancies level by level from the top daisy.
    for (i64 k = 2; k < stack.top(); ++k) {
      i64 moved = 0;
      while (k < stack.top() && stack.next_is_vacancy(k)) {
        stack.move_point(k);
        ++moved;
        stack.audit("step (ii) at level " + std::to_string(k));
      }
      if (moved > 0) trace.push_back({"step-ii z=" + std::to_string(k), moved, stack.bonds()});
    }
    if (opts.check_levels) stack.check_levels("step (ii)");

    // Step (iii): grow every intermediate level to R(s, s').
    for (i64 k = 2; k < stack.top(); ++k) {
      i64 moved = 0;
      while (k < stack.top() && stack.size(k) < rect) {
        const i64 next = stack.size(k) + 1;
        if (stack.next_is_vacancy(k)) {
          stack.move_point(k);
          ++moved;
        } else {
          moved += stack.move_line(k, std::min(daisy_line_end(next), rect) - next + 1);
        }
        stack.audit("procedure P_" + std::to_string(k));
      }
      if (moved > 0) trace.push_back({"P_" + std::to_string(k), moved, stack.bonds()});
    }
    if (opts.check_levels) stack.check_levels("step (iii)");
  }

  Config3 result = stack.grid().to_config();
  if (s_prime == s && base.e > 0) {
    // Put the extra lines on the x = s + 1 side.
    std::vector<Point3> pts;
    pts.reserve(result.size());
    for (const auto& p : result) pts.emplace_back(p.y(), p.x(), p.z());
    result = Config3::from_points(std::move(pts));
    trace.push_back({"transpose", 0, bond_count(result)});
  }

  auto desc = frame_matches(result, s, s_prime, bounding_box(result).hi.z());
  if (!desc) {
    throw PropertyViolation("cuboidify: output is not a quasicube with the base daisy's sides");
  }
  if (result.n() != m.n() || bond_count(result) != bonds_in) {
    throw PropertyViolation("cuboidify: cardinality or bond count not conserved");
  }
  trace.push_back({"output", 0, bond_count(result)});
  out.config = std::move(result);
  out.quasicube = std::move(*desc);
  return out;
}

namespace {

std::optional<QuasicubeDescriptor> frame_matches(const Config3& c, i64 s, i64 s_prime, i64 s3) {
  if (s < 1 || (s_prime != s && s_prime != s + 1)) return std::nullopt;
  i64 base = 0;
  for (const auto& p : c) {
    if (p.z() <= s3 - 1 && p.x() <= s && p.y() <= s_prime) {
      ++base;
    } else if (!((p.z() == s3 && p.x() <= s + 1 && p.y() <= s_prime) ||
                 (p.x() == s + 1 && p.y() <= s_prime - 1 && p.z() <= s3))) {
      return std::nullopt;
    }
  }
  if (base != s * s_prime * (s3 - 1)) return std::nullopt;
  QuasicubeDescriptor d;
  d.s = s;
  d.s_prime = s_prime;
  d.s3 = s3;
  d.f1 = level(c, 3, s3);
  d.f2 = level(c, 1, s + 1);
  return d;
}

}  // namespace

std::optional<QuasicubeDescriptor> match_quasicube_in_frame(const Config3& c) {
  if (c.empty()) return std::nullopt;
  const Box3 box = bounding_box(c);
  if (box.lo != Point3{1, 1, 1}) return std::nullopt;
  const i64 s3 = box.hi.z();
  // With a base, its y-extent fixes s'. A lone top face only bounds it.
  i64 sp = box.hi.y();
  if (s3 >= 2) {
    sp = 0;
    for (const auto& p : c) {
      if (p.z() == 1) sp = std::max(sp, p.y());
    }
  }
  for (const i64 s : {sp - 1, sp}) {
    if (auto d = frame_matches(c, s, sp, s3)) return d;
  }
  return std::nullopt;
}

std::optional<QuasicubeDescriptor> match_quasicube(const Config3& c) {
  if (c.empty()) return std::nullopt;
  for (int k = 0; k < symmetry_count<3>(); ++k) {
    const Config3 img = apply_symmetry(c, k);
    const Box3 box = bounding_box(img);
    const Point3 lo = box.lo;
    auto d = match_quasicube_in_frame(translate(img, Point3{1, 1, 1} - lo));
    if (d) {
      d->base_origin = lo;
      return d;
    }
  }
  return std::nullopt;
}

bool is_cuboid_plus_top(const Config3& c, i64& a, i64& b, i64& height) {
  if (c.empty()) return false;
  const Box3 box = bounding_box(c);
  if (box.lo != Point3{1, 1, 1}) return false;
  const Config3 first = level(c, 3, 1);
  const Box3 r = minimal_rectangle(first);
  a = r.hi.x();
  b = r.hi.y();
  const i64 full = a * b;
  height = 0;
  for (i64 z = 1; z <= box.hi.z(); ++z) {
    const Config3 lv = level(c, 3, z);
    const bool is_full = lv.n() == full && minimal_rectangle(lv).hi.x() == a && minimal_rectangle(lv).hi.y() == b;
    if (!is_full) break;
    height = z;
  }
  // at most one partial level above the full ones
  return box.hi.z() <= height + 1;
}

namespace {

// Mutable state for the side-face merge: base Q(A, B, C), the side face at
// x = A + 1 and the top face on z = C + 1 kept as a daisy sequence.
class MergeState {
 public:
  MergeState(const Config3& q, i64 A, i64 B, i64 C)
      : A_(A), B_(B), C_(C),
        grid_(q, Box3{{0, 0, 0}, {std::max(A, C + 1) + 2, std::max(B, C + 1) + 2, C + 3}}),
        expected_(grid_.bonds()) {}

  BondGrid& grid() { return grid_; }
  i64 expected() const { return expected_; }
  RearrangementTrace& trace() { return trace_; }

  void audit(const std::string& where) const {
    if (grid_.bonds() != expected_) bond_change(where, expected_, grid_.bonds());
  }

  // Replace the top face by the daisy of its size. The preferred layout has
  // the rectangle's long side along y and the extra line at x = a_f + 1;
  // the transposed layout is used when only it keeps every vertical bond.
  void frame_top() {
    std::vector<Point3> old;
    for (const auto& p : grid_.to_config()) {
      if (p.z() == C_ + 1) old.push_back(p);
    }
    const i64 d = static_cast<i64>(old.size());
    for (const auto& p : old) grid_.remove(p);
    top_.clear();
    a_f_ = b_f_ = 0;
    if (d > 0) {
      const DaisyDescriptor desc = daisy_descriptor(d);
      const bool square = desc.s_prime == desc.s;
      for (const bool transpose : {square, !square}) {
        if (!top_.empty()) {
          for (const auto& p : top_) grid_.remove(p);
        }
        top_.clear();
        for (i64 i = 1; i <= d; ++i) {
          const Point2 p = daisy_point(i);
          top_.push_back(transpose ? Point3{p.y(), p.x(), C_ + 1} : Point3{p.x(), p.y(), C_ + 1});
        }
        for (const auto& p : top_) grid_.add(p);
        a_f_ = transpose ? desc.s_prime : desc.s;
        b_f_ = transpose ? desc.s : desc.s_prime;
        if (grid_.bonds() == expected_) break;
      }
    }
    i64 moved = 0;
    for (const auto& p : top_) {
      if (std::find(old.begin(), old.end(), p) == old.end()) ++moved;
    }
    audit("top face normalization");
    trace_.push_back({"top-daisy", moved, grid_.bonds()});
  }

  i64 b_f() const { return b_f_; }
  i64 a_f() const { return a_f_; }
  std::vector<Point3>& top() { return top_; }

  // Fill `line` in order from the end of the top daisy: single points into
  // 3-vacancies, whole donor lines at line starts.
  i64 fill(const std::vector<Point3>& line, const std::string& label) {
    i64 moved = 0;
    std::size_t i = 0;
    while (i < line.size()) {
      if (grid_.test(line[i])) {
        ++i;
        continue;
      }
      if (top_.empty()) throw NotMinimizerError("input is not an EIP minimizer: top face exhausted during " + label);
      const auto size = static_cast<i64>(top_.size());
      if (grid_.neighbors(line[i]) >= 3) {
        grid_.remove(top_.back());
        top_.pop_back();
        grid_.add(line[i]);
        ++moved;
        ++i;
      } else {
        const i64 len = size - daisy_line_start(size) + 1;
        std::size_t room = 0;
        while (i + room < line.size() && !grid_.test(line[i + room])) ++room;
        if (static_cast<std::size_t>(len) > room) {
          throw NotMinimizerError("input is not an EIP minimizer: no top-face edge fits during " + label);
        }
        for (i64 k = 0; k < len; ++k) {
          grid_.remove(top_.back());
          top_.pop_back();
        }
        for (i64 k = 0; k < len; ++k) grid_.add(line[i + static_cast<std::size_t>(k)]);
        moved += len;
        i += static_cast<std::size_t>(len);
      }
      audit(label);
    }
    return moved;
  }

 private:
  i64 A_, B_, C_;
  BondGrid grid_;
  i64 expected_;
  RearrangementTrace trace_;
  std::vector<Point3> top_;
  i64 a_f_ = 0;
  i64 b_f_ = 0;
};

MergeResult finish_merge(Config3 config, RearrangementTrace trace) {
  MergeResult r;
  if (!is_cuboid_plus_top(config, r.a, r.b, r.c)) {
    throw PropertyViolation("merge_side_face: output is not a cuboid plus one top face");
  }
  trace.push_back({"output", 0, bond_count(config)});
  r.config = std::move(config);
  r.trace = std::move(trace);
  return r;
}

}  // namespace

MergeResult merge_side_face(const Config3& q) {
  const auto desc = match_quasicube_in_frame(q);
  if (!desc) throw std::invalid_argument("merge_side_face: malformed quasicube");
  const i64 A = desc->s;
  const i64 B = desc->s_prime;
  const i64 C = desc->s3 - 1;

  // The side face below the top level must be the rectangle [1,e] x [1,s''].
  i64 e = 0;
  i64 s2 = 0;
  for (const auto& p : desc->f2) {
    if (p.z() <= C) {
      e = std::max(e, p.y());
      s2 = std::max(s2, p.z());
    }
  }
  const i64 side_points = std::count_if(desc->f2.begin(), desc->f2.end(), [C](const Point3& p) { return p.z() <= C; });
  if (side_points != e * s2) throw std::invalid_argument("merge_side_face: side face is not a rectangle");

  if (e == 0) {
    RearrangementTrace trace{{"input", 0, bond_count(q)}};
    return finish_merge(q, std::move(trace));
  }

  MergeState st(q, A, B, C);
  st.trace().push_back({"input", 0, st.expected()});
  st.frame_top();
  auto& grid = st.grid();

  auto rotate_side_on_top = [&](i64 max_z, const std::string& label) {
    std::vector<Point3> from;
    std::vector<Point3> to;
    for (const auto& p : grid.to_config()) {
      if (p.x() == A + 1 && p.z() <= max_z) {
        from.push_back(p);
        to.emplace_back(p.z(), p.y(), C + 2);
      }
    }
    grid.move(from, to);
    st.audit(label);
    st.trace().push_back({label, static_cast<i64>(from.size()), grid.bonds()});
    CuboidifyResult again = cuboidify(grid.to_config(), {.axis = 3});
    for (auto& step : again.trace) {
      if (step.label == "input" || step.label == "output") continue;
      st.trace().push_back({"recuboidify " + step.label, step.moved, step.bonds});
    }
    return finish_merge(std::move(again.config), std::move(st.trace()));
  };

  // Top points above the side face.
  const i64 e_top = count_at_x(level(grid.to_config(), 3, C + 1), A + 1);
  if (e_top > 0) {
    if (e_top > C) return rotate_side_on_top(C + 1, "side face onto top");
    std::vector<Point3> from;
    std::vector<Point3> to;
    for (i64 y = 1; y <= e_top; ++y) {
      from.emplace_back(A + 1, y, C + 1);
      to.emplace_back(A + 1, e + 1, y);
    }
    grid.move(from, to);
    st.audit("top line to side column");
    st.trace().push_back({"top line to side column", e_top, grid.bonds()});
    auto& top = st.top();
    top.resize(top.size() - static_cast<std::size_t>(e_top));
  }

  const i64 a_f = st.a_f();
  const i64 width = e_top > 0 ? e + 1 : e;
  if (a_f >= std::max({e, s2, e_top}) && st.b_f() >= width) return rotate_side_on_top(C, "side face onto top");

  auto rows = [&](i64 z_from, i64 z_to, i64 width, const std::string& label) {
    for (i64 z = z_from; z <= z_to; ++z) {
      std::vector<Point3> line;
      for (i64 y = 1; y <= width; ++y) line.emplace_back(A + 1, y, z);
      const i64 moved = st.fill(line, label);
      if (moved > 0) st.trace().push_back({label + " z=" + std::to_string(z), moved, grid.bonds()});
    }
  };
  auto columns = [&](i64 y_from, i64 y_to, i64 height, const std::string& label) {
    for (i64 y = y_from; y <= y_to; ++y) {
      std::vector<Point3> line;
      for (i64 z = 1; z <= height; ++z) line.emplace_back(A + 1, y, z);
      const i64 moved = st.fill(line, label);
      if (moved > 0) st.trace().push_back({label + " y=" + std::to_string(y), moved, grid.bonds()});
    }
  };

  if (a_f < e) {
    rows(s2 + 1, C, e, "T1");
    columns(e + 1, B, C, "T2");
  } else {
    columns(e + 1, B, s2, "T2");
    rows(s2 + 1, C, B, "T1");
  }
  return finish_merge(grid.to_config(), std::move(st.trace()));
}

void write_trace_csv(std::ostream& out, const RearrangementTrace& trace) {
  out << "step_label,moved_points,bonds\n";
  for (const auto& t : trace) out << t.label << ',' << t.moved << ',' << t.bonds << '\n';
}

}  // namespace eip
