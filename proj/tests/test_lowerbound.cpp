#include <array>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "eip/error.hpp"
#include "eip/intmath.hpp"
#include "eip/lowerbound.hpp"
#include "eip/oracle.hpp"
#include "oracles.hpp"

using namespace eip;

namespace {

// side <= 2 n^(1/12), exactly
bool within_twice_twelfth_root(i64 side, i64 n) {
  i128 p = 1;
  for (int k = 0; k < 12; ++k) p *= static_cast<i128>(side);
  return p <= static_cast<i128>(4096) * static_cast<i128>(n);
}

}  // namespace

TEST_CASE("lower bound parameters") {
  const auto p2 = lower_bound_params(2);
  CHECK(p2.n == 10);
  CHECK(p2.r == 0);
  CHECK(p2.q == 0);
  const auto p16 = lower_bound_params(16);
  CHECK(p16.n == 4284);
  CHECK(p16.d == 188);
  CHECK(p16.r == 11);
  const auto p81 = lower_bound_params(81);
  CHECK(p81.n == 537253);
  CHECK(p81.h1 == 1);
  CHECK(lower_bound_params(80).h1 == 0);
  CHECK_THROWS_AS(lower_bound_params(1), std::invalid_argument);

  i64 prev = 0;
  for (i64 s = 2; s <= 10000; ++s) {
    const auto p = lower_bound_params(s);
    const auto root = static_cast<i64>(isqrt(static_cast<u64>(s)));
    CHECK(p.d == s * s - s * root - p.q);
    if (s >= 4) CHECK(p.d == p.r * s + (s - p.q));
    CHECK(p.n == s * s * s + p.d);
    CHECK(p.n > prev);
    prev = p.n;
  }
}

TEST_CASE("condition on s and s0") {
  CHECK_FALSE(condition_rh1s(2));
  CHECK_FALSE(condition_rh1s(3));
  CHECK(condition_rh1s(4));
  CHECK(condition_rh1s(81));
  CHECK(s0_min(10000) == 4);
  CHECK(s0_min() == 4);
  CHECK(s0_min(3) == 4);
}

TEST_CASE("build_M") {
  const Config3 m2 = build_M(2);
  CHECK(m2.n() == 10);
  CHECK(bond_count(m2) == 15);
  CHECK(theta3_bruteforce(10, {.allow_large = false, .sample_cap = 0}).max_bonds == 15);

  for (i64 s : {2, 3, 4, 7, 16, 25}) {
    const auto p = lower_bound_params(s);
    const Config3 m = build_M(s);
    CHECK(m.n() == p.n);
    const Config3 top = level(m, 3, s + 1);
    CHECK(top.n() == p.d);
    CHECK(is_minimizer2(project(top)));
  }
  CHECK(level(build_M(16), 3, 17).n() == 188);
}

TEST_CASE("transformation 1") {
  const Config3 m = build_M(4);
  const Config3 m1 = transform1(m, 4);
  CHECK(m1.n() == m.n());
  CHECK(bond_count(m1) == bond_count(m));
  CHECK(m1.contains({1, 1, 5}));
  CHECK_FALSE(m1.contains({4, 1, 4}));
  CHECK(construct_lower(4).lines_moved == 1);

  const auto big = construct_lower(81);
  CHECK(big.lines_moved == 4);
  CHECK(big.bonds_m1 == big.bonds_m);
  CHECK(big.m1.n() == big.m.n());

  CHECK_THROWS_WITH_AS(transform1(build_M(2), 2), doctest::Contains("construction invalid"), PropertyViolation);
  CHECK_THROWS_WITH_AS(transform1(build_M(3), 3), doctest::Contains("construction invalid"), PropertyViolation);
}

TEST_CASE("transformation 2") {
  const Config3 m2 = transform2(transform1(build_M(4), 4), 4);
  CHECK(m2.n() == 71);
  CHECK(bond_count(m2) == bond_count(build_M(4)));
  CHECK(inclusion_holds(m2, 4));
  for (const auto& p : box_points(Box3{{0, 1, 1}, {4, 4, 3}})) CHECK(m2.contains(p));
  CHECK_FALSE(inclusion_holds(build_M(4), 4));
  CHECK_THROWS_AS(transform2(build_M(3), 3), std::invalid_argument);
}

TEST_CASE("lower bound chain for s up to 60 and s = 81") {
  std::vector<i64> range;
  for (i64 s = 4; s <= 60; ++s) range.push_back(s);
  range.push_back(81);
  for (i64 s : range) {
    CAPTURE(s);
    const LowerBoundRow row = evaluate_lower(s);
    CHECK(row.bonds_conserved);
    CHECK(row.inclusion);
    CHECK(row.sym_diff >= row.bound_value);
    CHECK(row.sym_diff >= row.baseline_gap);
    // the partial face sits one layer beyond the full block
    CHECK(row.side_deviation == row.h1 + 2);
    CHECK(within_twice_twelfth_root(row.side_deviation, row.n));
  }
}

TEST_CASE("measured fluctuation of M'' against brute-force overlap") {
  for (i64 s : {4, 5, 6}) {
    const auto inst = construct_lower(s, false);
    const i64 w = wulff_side(inst.params.n) + 1;
    const i64 overlap = eip::testing::brute_max_overlap(inst.m2, std::array<i64, 3>{w, w, w});
    CHECK(evaluate_lower(s).sym_diff == inst.params.n + w * w * w - 2 * overlap);
  }
}

TEST_CASE("bound value") {
  CHECK(bound_value(81) == 12798);
  const long double ratio = static_cast<long double>(bound_value(81)) / pow34(537253);
  CHECK(static_cast<double>(ratio) == doctest::Approx(0.6449).epsilon(1e-3));
  CHECK_THROWS_AS(bound_value(3), std::invalid_argument);
  for (i64 s = 20; s <= 10000; ++s) {
    const auto p = lower_bound_params(s);
    CHECK(static_cast<long double>(bound_value(s)) >= 0.3L * pow34(p.n));
  }
  // h1 + 1 > n^(1/12) / 3 always
  for (i64 s = 4; s <= 10000; s += 7) {
    const auto p = lower_bound_params(s);
    i128 t = 1;
    for (int k = 0; k < 12; ++k) t *= static_cast<i128>(3 * (p.h1 + 1));
    CHECK(t > static_cast<i128>(p.n));
  }
}

TEST_CASE("s equals the Wulff side of n_s") {
  for (i64 s = 2; s <= 10000; ++s) CHECK(side_claim_holds(s));
}

TEST_CASE("2D sharpness rows") {
  const auto r9 = evaluate_sharp_2d(9);
  CHECK(r9.twice_bound == 15);
  CHECK(r9.sym_diff >= 8);
  const auto r100 = evaluate_sharp_2d(100);
  CHECK(r100.d == 8975);
  CHECK(r100.twice_bound == 890);
  CHECK(r100.sym_diff >= 445);
  for (i64 s = 2; s <= 300; ++s) {
    const auto r = evaluate_sharp_2d(s);
    CHECK(2 * r.sym_diff >= r.twice_bound);
    CHECK(r.d == sharp_d(s));
  }
  CHECK_THROWS(evaluate_sharp_2d(1));
}

TEST_CASE("loglog_slope") {
  std::vector<double> x, y;
  for (int i = 1; i <= 20; ++i) {
    x.push_back(i * 10.0);
    y.push_back(3.0 * std::pow(i * 10.0, 0.75));
  }
  CHECK(loglog_slope(x, y) == doctest::Approx(0.75));
  CHECK_THROWS_AS(loglog_slope({1.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(loglog_slope({1.0, 1.0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(loglog_slope({1.0, 0.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("lower bound csv") {
  std::ostringstream out;
  write_lower_csv_header(out);
  write_lower_csv_row(out, evaluate_lower(4));
  CHECK(out.str() ==
        "s,n,d,h1,bound_value,sym_diff,baseline_gap,ratio_bound,ratio_measured,bonds_conserved\n"
        "4,71,7,0,12,76,54,0.490611,3.107204,1\n");
  std::ostringstream sharp;
  write_sharp_csv_header(sharp);
  CHECK(sharp.str() == "s,d,sym_diff,twice_bound,ratio\n");
}
