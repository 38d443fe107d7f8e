#include <doctest.h>

#include <cmath>
#include <set>

#include "caustic.hpp"
#include "classifier.hpp"
#include "errors.hpp"
#include "gen.hpp"

using namespace isolens;

TEST_CASE("calibration reproduces the frozen sign") {
  const Calibration c = calibrate_reversing_sign();
  CHECK(c.k == 1.1);
  CHECK(c.w == Complex{0.0, 0.0});
  CHECK(c.idx_minus == -1);
  CHECK(c.m_solver == 2);
  CHECK(c.sign == kReversingSign);
}

TEST_CASE("three plus three at k = 1.92, w = 0.67i") {
  const RegionReport r = classify(LensParams::make(1.92), {0.0, 0.67});
  CHECK_FALSE(r.on_curve);
  CHECK(r.idx_minus == -2);
  CHECK(r.idx_plus == 3);
  CHECK(r.m_predicted == 3);
  CHECK(r.n_predicted == 3);
  CHECK(r.m_solver == 3);
  CHECK(r.n_solver == 3);
  CHECK(r.total_predicted() == 6);
  CHECK(r.consistent);
}

TEST_CASE("distant sources") {
  const Classifier c(LensParams::make(1.0));
  const RegionReport real = c.classify({100.0, 0.0});
  CHECK(real.m_predicted == 1);
  CHECK(real.n_predicted == 0);
  CHECK(real.consistent);
  const RegionReport up = c.classify({0.0, 10.0});
  CHECK(up.m_predicted == 1);
  CHECK(up.n_predicted == 1);
  CHECK(up.consistent);
}

TEST_CASE("points on the caustic are not classified") {
  const auto p = LensParams::make(1.3);
  const Complex fold = critical_point_near(1.3, 0.4, {0.9, 0.1});
  const RegionReport r = Classifier(p).predict(eval_f(p, fold));
  CHECK(r.on_curve);
  CHECK(r.curve_distance < kOnCurveBand);
  CHECK_FALSE(r.m_predicted.has_value());
  CHECK_FALSE(r.total_predicted().has_value());
}

TEST_CASE("classifier input checks") {
  CHECK_THROWS_AS(Classifier(LensParams::make(1.0, {0.2, 0.0})), InvalidParam);
  CHECK_THROWS_AS(sweep(LensParams::make(1.0), {}, 8), InvalidParam);
  CHECK_THROWS_AS(sweep(LensParams::make(1.0), Window{1.0, 0.0, 0.0, 1.0}, 32), InvalidParam);
}

TEST_CASE("sweep layout") {
  SweepOptions o;
  o.spot_checks = 2;
  const SweepResult s = sweep(LensParams::make(0.8), Window{-1.0, 1.0, -0.5, 0.5}, 16, o);
  REQUIRE(s.cells.size() == 256);
  CHECK(s.at(0, 0).w == Complex{-1.0, -0.5});
  CHECK(s.at(15, 15).w == Complex{1.0, 0.5});
  CHECK(s.at(15, 0).w.real() == doctest::Approx(1.0));
  CHECK(s.spot_checks.size() == 2);
  CHECK(s.spot_checks_consistent);
}

TEST_CASE("sweep bounds above the six-image range") {
  const SweepResult s = sweep(LensParams::make(2.2), {}, 40);
  int largest = 0;
  for (const auto& c : s.cells) {
    if (c.on_curve) continue;
    CHECK(c.m + c.n <= 4);
    CHECK(c.m + c.n >= 1);
    largest = std::max(largest, c.m + c.n);
  }
  CHECK(largest >= 3);
  CHECK(s.spot_checks_consistent);
}

TEST_CASE("six-image pocket at k = 1.92") {
  const SweepResult s = sweep(LensParams::make(1.92), Window{-0.01, 0.01, 0.665, 0.675}, 16);
  int six = 0;
  for (const auto& c : s.cells) six += !c.on_curve && c.m == 3 && c.n == 3;
  CHECK(six > 0);
  CHECK(s.spot_checks_consistent);
}

TEST_CASE("small k keeps totals between 1 and 4") {
  const SweepResult s = sweep(LensParams::make(0.5), {}, 32);
  for (const auto& c : s.cells) {
    if (c.on_curve) continue;
    CHECK(c.m + c.n >= 1);
    CHECK(c.m + c.n <= 4);
  }
}

TEST_CASE("labels are constant inside the central caustic region at k = 1.1") {
  const SweepResult s = sweep(LensParams::make(1.1), Window{-0.1, 0.1, -0.1, 0.1}, 16);
  for (const auto& c : s.cells) {
    CHECK_FALSE(c.on_curve);
    CHECK(c.m == 2);
    CHECK(c.n == 2);
  }
}

TEST_CASE("property: labels change only across curves") {
  gen::Gen g(51);
  for (int trial = 0; trial < 3; ++trial) {
    const auto p = LensParams::make(g.k(0.5, 2.5));
    const Classifier classifier(p, 256);
    const int n = 24;
    const double h = 4.0 / (n - 1);
    std::vector<RegionReport> grid;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) grid.push_back(classifier.predict({-2.0 + h * i, -2.0 + h * j}));
    auto label = [&](const RegionReport& r) { return r.total_predicted().value_or(-1); };
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const RegionReport& a = grid[j * n + i];
        for (const auto& [di, dj] : {std::pair{1, 0}, std::pair{0, 1}}) {
          if (i + di >= n || j + dj >= n) continue;
          const RegionReport& b = grid[(j + dj) * n + i + di];
          if (label(a) != label(b)) CHECK(std::min(a.curve_distance, b.curve_distance) <= h);
        }
      }
    }
  }
}

TEST_CASE("property: predictions agree with the solver away from the curves") {
  gen::Gen g(52);
  int checked = 0;
  for (int trial = 0; trial < 6; ++trial) {
    const auto p = LensParams::make(g.k(0.3, 3.0));
    const Classifier classifier(p, 256);
    for (int q = 0; q < 6; ++q) {
      const RegionReport r = classifier.classify(g.box(2.0));
      if (r.on_curve || r.curve_distance < 1e-3) continue;
      ++checked;
      CHECK(r.consistent);
      CHECK(r.m_predicted == r.m_solver);
      CHECK(r.n_predicted == r.n_solver);
      CHECK(*r.m_predicted - *r.n_predicted >= 0);
      CHECK(*r.m_predicted - *r.n_predicted <= 1);
    }
  }
  CHECK(checked > 20);
}
