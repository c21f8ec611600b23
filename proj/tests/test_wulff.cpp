#include <random>

#include "doctest.h"
#include "eip/eip2d.hpp"
#include "eip/wulff.hpp"
#include "oracles.hpp"

using namespace eip;
using eip::testing::brute_max_overlap;

TEST_CASE("wulff shapes") {
  CHECK(wulff_side(1) == 1);
  CHECK(wulff_side(7) == 1);
  CHECK(wulff_side(8) == 2);
  CHECK(wulff_side(27) == 3);
  CHECK(wulff3(27).n() == 64);
  CHECK(wulff3(1).n() == 8);
  const Config2 w52 = wulff2(52);
  CHECK(w52.n() == 49);
  CHECK(minimal_rectangle(embed(w52, 0)).lo == Point3{1, 1, 0});
  CHECK(minimal_rectangle(embed(w52, 0)).hi == Point3{7, 7, 0});
  CHECK_THROWS_AS(wulff3(0), std::invalid_argument);
  CHECK_THROWS_AS(wulff2(0), std::invalid_argument);
}

TEST_CASE("fluctuation examples") {
  const Config3 c27 = Config3::from_sorted(box_points(Box3{{1, 1, 1}, {3, 3, 3}}));
  const auto r = fluctuation3(c27);
  CHECK(r.n == 27);
  CHECK(r.max_overlap == 27);
  CHECK(r.sym_diff == 37);
  CHECK(r.baseline_gap == 37);

  const Config2 strip = build_rect_line(10, 8, 0);
  const auto r2 = fluctuation2(strip);
  CHECK(r2.max_overlap == 8);
  CHECK(r2.sym_diff == 20);
  CHECK(r2.baseline_gap == 4);

  CHECK_THROWS_AS(fluctuation3(Config3{}), std::invalid_argument);
}

TEST_CASE("best shift is the lexicographically smallest optimum") {
  const auto r = fluctuation3(Config3{{5, 5, 5}});
  // W_1 = [0,1]^3; the smallest shift covering (5,5,5) is (4,4,4).
  CHECK(r.best_shift == Point3{4, 4, 4});
  CHECK(r.sym_diff == 7);
  const auto r2 = fluctuation2(Config2{{3, 7}});
  CHECK(r2.best_shift == Point2{2, 6});
  CHECK(r2.sym_diff == 0);
}

TEST_CASE("window overlap matches brute force") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 80; ++trial) {
    std::vector<Point3> pts;
    const int n = 1 + trial % 30;
    for (int i = 0; i < n; ++i) pts.emplace_back(rng() % 7, rng() % 5, rng() % 6);
    const auto c = Config3::from_points(pts);
    const std::array<i64, 3> w{1 + static_cast<i64>(rng() % 4), 1 + static_cast<i64>(rng() % 4),
                               1 + static_cast<i64>(rng() % 4)};
    const auto [overlap, corner] = max_window_overlap<3>(c, w);
    CHECK(overlap == brute_max_overlap<3>(c, w));
    i64 direct = 0;
    for (const auto& p : c) {
      bool in = true;
      for (std::size_t i = 0; i < 3; ++i) in = in && p[i] >= corner[i] && p[i] < corner[i] + w[i];
      direct += in ? 1 : 0;
    }
    CHECK(direct == overlap);

    const auto rep = fluctuation3(c);
    const i64 l = wulff_side(c.n());
    CHECK(rep.sym_diff == sym_diff_size(c, translate(wulff3(c.n()), rep.best_shift)));
    CHECK(rep.sym_diff >= rep.baseline_gap);
    CHECK(rep.max_overlap == brute_max_overlap<3>(c, {l + 1, l + 1, l + 1}));
  }
  for (int trial = 0; trial < 80; ++trial) {
    std::vector<Point2> pts;
    for (int i = 0; i < 1 + trial % 30; ++i) pts.emplace_back(rng() % 9, rng() % 8);
    const auto c = Config2::from_points(pts);
    const auto rep = fluctuation2(c);
    CHECK(rep.sym_diff == sym_diff_size(c, translate(wulff2(c.n()), rep.best_shift)));
    const i64 w = static_cast<i64>(isqrt(static_cast<u64>(c.n())));
    CHECK(rep.max_overlap == brute_max_overlap<2>(c, {w, w}));
  }
}

TEST_CASE("fluctuation is invariant under translation and cube symmetries") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point3> pts;
    for (int i = 0; i < 20; ++i) pts.emplace_back(rng() % 4, rng() % 4, rng() % 5);
    const auto c = Config3::from_points(pts);
    const i64 base = fluctuation3(c).sym_diff;
    CHECK(fluctuation3(translate(c, {-100, 3, 77})).sym_diff == base);
    for (int k = 0; k < 48; ++k) CHECK(fluctuation3(apply_symmetry(c, k)).sym_diff == base);
  }
}

TEST_CASE("exact cubes nest in the next Wulff shape") {
  for (i64 l = 1; l <= 12; ++l) {
    const Config3 c = Config3::from_sorted(box_points(Box3{{0, 0, 0}, {l, l, l}}));
    const i64 n = (l + 1) * (l + 1) * (l + 1);
    const auto r = fluctuation3(c);
    CHECK(r.sym_diff == (l + 2) * (l + 2) * (l + 2) - n);
  }
  // 3 l^2 / l^(9/4) decays, slowly
  const auto small = fluctuation3(Config3::from_sorted(box_points(Box3{{0, 0, 0}, {9, 9, 9}})));
  const auto big = fluctuation3(Config3::from_sorted(box_points(Box3{{0, 0, 0}, {79, 79, 79}})));
  CHECK(big.ratio < small.ratio);
  CHECK(big.ratio < 1.1);
}

TEST_CASE("side deviation and ratio formatting") {
  CHECK(side_deviation(Config3::from_sorted(box_points(Box3{{1, 1, 1}, {3, 3, 3}}))) == 1);
  CHECK(side_deviation(Config3::from_sorted(box_points(Box3{{0, 0, 0}, {1, 1, 1}}))) == 1);
  CHECK(side_deviation(Config3::from_sorted(box_points(Box3{{0, 0, 0}, {0, 0, 7}}))) == 5);
  CHECK(format_ratio(0.5) == "0.500000");
  CHECK(format_ratio(1.0 / 3.0) == "0.333333");
  CHECK(static_cast<double>(pow34(16)) == doctest::Approx(8.0));
}
