#include "eip/verify.hpp"

#include <array>
#include <random>
#include <sstream>
#include <stdexcept>

#include "eip/cuboidify.hpp"
#include "eip/eip2d.hpp"
#include "eip/error.hpp"
#include "eip/intmath.hpp"
#include "eip/lattice.hpp"
#include "eip/lowerbound.hpp"
#include "eip/oracle.hpp"
#include "eip/wulff.hpp"

namespace eip {

namespace {

class CheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw CheckFailed(what);
}

template <class T>
std::string str(const T& v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

// Fixed polyomino and polycube counts.
constexpr std::array<u64, 12> kPolyominoes{1, 2, 6, 19, 63, 216, 760, 2725, 9910, 36446, 135268, 505861};
constexpr std::array<u64, 9> kPolycubes{1, 3, 15, 86, 534, 3481, 23502, 162913, 1152870};

Config3 random_blob(std::mt19937_64& rng, int n, int span) {
  std::uniform_int_distribution<int> coord(-span, span);
  std::vector<Point3> pts;
  for (int i = 0; i < n; ++i) pts.emplace_back(coord(rng), coord(rng), coord(rng));
  return Config3::from_points(pts);
}

Config2 random_blob2(std::mt19937_64& rng, int n, int span) {
  std::uniform_int_distribution<int> coord(0, span);
  std::vector<Point2> pts;
  for (int i = 0; i < n; ++i) pts.emplace_back(coord(rng), coord(rng));
  return Config2::from_points(pts);
}

i64 brute_overlap(const Config3& c, i64 w) {
  const Box3 b = bounding_box(c);
  i64 best = 0;
  for (const auto& a : box_points(Box3{{b.lo.x() - w, b.lo.y() - w, b.lo.z() - w}, b.hi})) {
    i64 k = 0;
    for (const auto& p : c) {
      if (p.x() >= a.x() && p.x() < a.x() + w && p.y() >= a.y() && p.y() < a.y() + w && p.z() >= a.z() &&
          p.z() < a.z() + w) {
        ++k;
      }
    }
    best = std::max(best, k);
  }
  return best;
}

void lattice_relation(bool quick) {
  std::mt19937_64 rng(1);
  const int trials = quick ? 50 : 300;
  for (int t = 0; t < trials; ++t) {
    const Config3 c = random_blob(rng, 1 + t % 40, 3);
    expect(edge_perimeter(c) + 2 * bond_count(c) == 6 * c.n(), "3D relation fails for a random configuration");
    const Config2 c2 = random_blob2(rng, 1 + t % 30, 6);
    expect(edge_perimeter(c2) + 2 * bond_count(c2) == 4 * c2.n(), "2D relation fails for a random configuration");
  }
}

void lattice_symmetry(bool quick) {
  std::mt19937_64 rng(2);
  const int trials = quick ? 20 : 100;
  for (int t = 0; t < trials; ++t) {
    const Config3 c = random_blob(rng, 1 + t % 30, 3);
    const i64 b = bond_count(c);
    const i64 per = edge_perimeter(c);
    expect(bond_count(translate(c, Point3{7, -3, 1ll << 35})) == b, "bond count changes under translation");
    for (int k = 0; k < symmetry_count<3>(); ++k) {
      const Config3 img = apply_symmetry(c, k);
      expect(bond_count(img) == b && edge_perimeter(img) == per, "bond count changes under symmetry " + str(k));
    }
  }
}

void lattice_sym_diff(bool quick) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < (quick ? 30 : 150); ++t) {
    const Config3 a = random_blob(rng, 10, 2);
    const Config3 b = random_blob(rng, 12, 2);
    expect(sym_diff_size(a, b) == sym_diff_size(b, a), "sym_diff_size is not symmetric");
    expect(sym_diff_size(a, b) == a.n() + b.n() - 2 * intersection_size(a, b), "sym_diff_size identity fails");
  }
}

void lattice_vacancies(bool quick) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < (quick ? 20 : 100); ++t) {
    const Config3 c = random_blob(rng, 4 + t % 20, 2);
    for (const auto& v : three_vacancies(c)) {
      expect(!c.contains(v), "3-vacancy inside the configuration");
      std::vector<Point3> grown(c.begin(), c.end());
      grown.push_back(v);
      expect(bond_count(Config3::from_points(grown)) == bond_count(c) + 3, "3-vacancy does not add 3 bonds");
    }
  }
}

void lattice_minimal_cuboid(bool quick) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < (quick ? 20 : 100); ++t) {
    const Config3 c = random_blob(rng, 1 + t % 12, 4);
    const Box3 b = minimal_cuboid(c);
    for (const auto& p : c) expect(b.contains(p), "minimal cuboid misses a point");
    for (std::size_t axis = 0; axis < 3; ++axis) {
      for (int side = 0; side < 2; ++side) {
        Box3 smaller = b;
        if (side == 0) ++smaller.lo[axis]; else --smaller.hi[axis];
        bool drops = false;
        for (const auto& p : c) drops = drops || !smaller.contains(p);
        expect(drops, "minimal cuboid can shrink");
      }
    }
  }
}

void eip2d_oracle(bool quick) {
  for (int d = 1; d <= (quick ? 9 : 12); ++d) {
    const OracleRecord rec = theta2_bruteforce(d, {.allow_large = false, .sample_cap = 0});
    expect(rec.min_perimeter == eta(d), "eta(" + str(d) + ") differs from exhaustive search");
    expect(rec.max_bonds == bmax2(d), "bmax2(" + str(d) + ") differs from exhaustive search");
  }
}

void eip2d_daisies(bool quick) {
  for (i64 d = 1; d <= (quick ? 2000 : 10000); ++d) {
    expect(is_minimizer2(build_daisy(d).second), "daisy " + str(d) + " is not a minimizer");
    expect(eta(d) == 4 * d - 2 * bmax2(d), "eta and bmax2 disagree at " + str(d));
  }
}

void eip2d_lemma(bool quick) {
  for (i64 s = 2; s <= (quick ? 20 : 40); ++s) {
    for (i64 p = 0; p <= s - 2; ++p) {
      for (i64 q = 0; q < s; ++q) {
        const Config2 c = build_rect_line(s, p, q);
        const std::string at = "(" + str(s) + "," + str(p) + "," + str(q) + ")";
        expect(lemma41_holds(s, p, q) == is_minimizer2(c), "rectangle-plus-line criterion fails at " + at);
        expect(bond_count(c) == rect_line_bond_formula(s, p, q), "bond formula fails at " + at);
      }
    }
  }
}

void eip2d_exact(bool) {
  for (u64 k = 1; k < (1ull << 30); k = k * 3 + 1) {
    for (i64 off = -2; off <= 2; ++off) {
      const i64 d = static_cast<i64>(k * k) + off;
      if (d < 1) continue;
      const i128 half = eta(d) / 2;
      expect(half * half >= 4 * static_cast<i128>(d) && 4 * static_cast<i128>(d) > (half - 1) * (half - 1),
             "eta not exact at " + str(d));
    }
  }
}

void wulff_invariance(bool quick) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < (quick ? 5 : 20); ++t) {
    const Config3 c = random_blob(rng, 20 + t, 3);
    const i64 base = fluctuation3(c).sym_diff;
    expect(fluctuation3(translate(c, Point3{5, -9, 2})).sym_diff == base, "fluctuation changes under translation");
    for (int k = 0; k < symmetry_count<3>(); k += quick ? 7 : 1) {
      expect(fluctuation3(apply_symmetry(c, k)).sym_diff == base, "fluctuation changes under symmetry " + str(k));
    }
  }
}

void wulff_brute(bool quick) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < (quick ? 10 : 40); ++t) {
    const Config3 c = random_blob(rng, 5 + t, 3);
    const i64 w = wulff_side(c.n()) + 1;
    const i64 expected = c.n() + w * w * w - 2 * brute_overlap(c, w);
    expect(fluctuation3(c).sym_diff == expected, "window scan differs from brute force");
  }
}

void wulff_nested(bool quick) {
  for (i64 l = 0; l <= (quick ? 10 : 30); ++l) {
    const Config3 cube = Config3::from_sorted(box_points(Box3{{0, 0, 0}, {l, l, l}}));
    const i64 k = l + 1;
    const i64 expected = (k + 1) * (k + 1) * (k + 1) - k * k * k;
    expect(fluctuation3(cube).sym_diff == expected, "nested cube fluctuation wrong at side " + str(l));
  }
}

void wulff_cbrt(bool quick) {
  for (i64 n = 1; n <= (quick ? 100000 : 2000000); ++n) {
    const i64 l = wulff_side(n);
    expect(l * l * l <= n && (l + 1) * (l + 1) * (l + 1) > n, "cube root contract fails at " + str(n));
  }
}

void oracle_counts(bool quick) {
  for (int n = 1; n <= (quick ? 10 : 12); ++n) {
    expect(count_connected(2, n) == kPolyominoes[static_cast<std::size_t>(n - 1)], "polyomino count wrong at " + str(n));
  }
  for (int n = 1; n <= (quick ? 7 : 9); ++n) {
    expect(count_connected(3, n) == kPolycubes[static_cast<std::size_t>(n - 1)], "polycube count wrong at " + str(n));
  }
}

void oracle_cubes(bool) {
  expect(theta3_bruteforce(1).max_bonds == 0, "single point");
  const OracleRecord r8 = theta3_bruteforce(8);
  expect(r8.max_bonds == 12, "the 2-cube does not attain the maximum");
  bool found = false;
  for (const auto& c : r8.samples3) found = found || c == Config3::from_sorted(box_points(Box3{{1, 1, 1}, {2, 2, 2}}));
  expect(found, "the 2-cube is not among the minimizers");
  for (int n = 1; n <= 9; ++n) {
    const OracleRecord r = theta3_bruteforce(n, {.allow_large = false, .sample_cap = 0});
    expect(r.min_perimeter == 6 * n - 2 * r.max_bonds, "3D relation fails for oracle record " + str(n));
  }
}

void cuboidify_minimizers(bool quick) {
  for (int n = 1; n <= (quick ? 8 : 10); ++n) {
    const i64 best = theta3_bruteforce(n, {.allow_large = false, .sample_cap = 0}).max_bonds;
    std::vector<Config3> mins;
    enumerate_connected<3>(n, [&](const Polyform<3>& p) {
      if (p.bonds() == best) mins.push_back(p.to_config());
    });
    for (const auto& m : mins) {
      const auto r = cuboidify(m, {.axis = std::nullopt, .check_levels = true});
      expect(r.config.n() == n, "cuboidify changed the cardinality");
      expect(bond_count(r.config) == best, "cuboidify output is not a minimizer");
      for (const auto& step : r.trace) expect(step.bonds == best, "trace step " + step.label + " changed bonds");
      expect(match_quasicube(r.config).has_value(), "cuboidify output is not a quasicube");
      i64 prev = n + 1;
      for (i64 z = 1; z <= r.quasicube.s3; ++z) {
        const i64 k = level(r.config, 3, z).n();
        expect(k <= prev, "levels are not non-increasing");
        prev = k;
      }
      expect(cuboidify(r.config, {.axis = 3, .check_levels = false}).config == r.config, "cuboidify not idempotent");
      expect(bond_count(merge_side_face(r.config).config) == best, "merge_side_face changed bonds");
    }
  }
}

void lower_chain(bool quick) {
  for (i64 s = 4; s <= (quick ? 30 : 100); ++s) {
    const LowerBoundRow row = evaluate_lower(s);
    expect(row.bonds_conserved, "bond count not conserved along the construction at s = " + str(s));
    expect(row.inclusion, "block inclusion fails at s = " + str(s));
    expect(row.sym_diff >= row.bound_value, "fluctuation below the bound at s = " + str(s));
  }
}

void lower_arithmetic(bool) {
  for (i64 s = 2; s <= 10000; ++s) {
    const LowerBoundParams p = lower_bound_params(s);
    const auto root = static_cast<i64>(isqrt(static_cast<u64>(s)));
    expect(p.d == s * s - s * root - s / 4, "d_s formula at " + str(s));
    expect(p.n == s * s * s + p.d, "n_s formula at " + str(s));
    if (s >= 4) expect(p.d == p.r * s + (s - p.q), "top face count at " + str(s));
    expect(side_claim_holds(s), "Wulff side of n_s differs from s at " + str(s));
  }
  expect(build_M(2).n() == 10, "size of the smallest instance");
  expect(bond_count(build_M(2)) == theta3_bruteforce(10, {.allow_large = false, .sample_cap = 0}).max_bonds,
         "smallest instance is not a minimizer");
}

void sharp_2d(bool quick) {
  for (i64 s = 2; s <= (quick ? 100 : 400); ++s) {
    const SharpRow2d r = evaluate_sharp_2d(s);
    expect(2 * r.sym_diff >= r.twice_bound, "2D fluctuation below the bound at s = " + str(s));
  }
}

void csv_determinism(bool) {
  std::ostringstream a;
  std::ostringstream b;
  for (i64 s : {4, 9, 17}) {
    write_lower_csv_row(a, evaluate_lower(s));
    write_lower_csv_row(b, evaluate_lower(s));
    write_sharp_csv_row(a, evaluate_sharp_2d(s));
    write_sharp_csv_row(b, evaluate_sharp_2d(s));
  }
  expect(a.str() == b.str(), "CSV rows differ between runs");
}

struct Check {
  const char* name;
  void (*run)(bool);
};

constexpr Check kChecks[] = {
    {"lattice: perimeter-bond relation", lattice_relation},
    {"lattice: translation and symmetry invariance", lattice_symmetry},
    {"lattice: symmetric difference identity", lattice_sym_diff},
    {"lattice: 3-vacancies add three bonds", lattice_vacancies},
    {"lattice: minimal cuboid is tight", lattice_minimal_cuboid},
    {"eip2d: closed form against exhaustive search", eip2d_oracle},
    {"eip2d: daisies are minimizers", eip2d_daisies},
    {"eip2d: rectangle-plus-line criterion and bond formula", eip2d_lemma},
    {"eip2d: exact roots near squares", eip2d_exact},
    {"wulff: fluctuation invariance", wulff_invariance},
    {"wulff: window scan against brute force", wulff_brute},
    {"wulff: nested cubes", wulff_nested},
    {"wulff: integer cube root", wulff_cbrt},
    {"oracle: fixed polyform counts", oracle_counts},
    {"oracle: cubes and perimeter relation", oracle_cubes},
    {"cuboidify: every small minimizer", cuboidify_minimizers},
    {"lowerbound: construction chain", lower_chain},
    {"lowerbound: arithmetic identities", lower_arithmetic},
    {"lowerbound: 2D sharpness bound", sharp_2d},
    {"cli: deterministic CSV", csv_determinism},
};

}  // namespace

std::vector<CheckResult> run_verify(const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  for (const auto& check : kChecks) {
    CheckResult r{check.name, true, {}};
    try {
      check.run(opts.quick);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = e.what();
    }
    if (opts.on_result) opts.on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace eip
