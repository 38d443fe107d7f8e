#include <doctest.h>

#include <cmath>

#include "errors.hpp"
#include "gen.hpp"
#include "winding.hpp"

using namespace isolens;

namespace {

OrientedLoop circle(Complex centre, double radius, int turns, int n = 64) {
  OrientedLoop loop;
  for (int i = 0; i < n * std::abs(turns); ++i) {
    const double a = 2.0 * kPi * i / n * (turns > 0 ? 1 : -1);
    loop.points.push_back(centre + std::polar(radius, a));
  }
  loop.points.push_back(loop.points.front());
  return loop;
}

RefinablePiece circle_piece(double from, double to, int n) {
  RefinablePiece piece;
  piece.refine = [](double tau, Complex) {
    const Complex z = std::polar(1.0, tau);
    return CurvePoint{tau, z, z};
  };
  for (int i = 0; i <= n; ++i) piece.samples.push_back(piece.refine(from + (to - from) * i / n, {}));
  return piece;
}

// Random star-shaped polygon about the origin.
OrientedLoop star(gen::Gen& g) {
  OrientedLoop loop;
  const int n = g.integer(8, 40);
  for (int i = 0; i < n; ++i) loop.points.push_back(std::polar(g.uniform(0.5, 2.0), 2.0 * kPi * i / n));
  loop.points.push_back(loop.points.front());
  return loop;
}

}  // namespace

TEST_CASE("unit circle windings") {
  CHECK(winding_number(circle(0.0, 1.0, 1), 0.0) == 1);
  CHECK(winding_number(circle(0.0, 1.0, 1), 2.0) == 0);
  CHECK(winding_number(circle(0.0, 1.0, 2), Complex{0.1, -0.2}) == 2);
  CHECK(winding_number(circle(0.0, 1.0, -1), 0.0) == -1);
}

TEST_CASE("malformed or on-curve loops") {
  OrientedLoop open = circle(0.0, 1.0, 1);
  open.points.pop_back();
  CHECK_THROWS_AS(winding_number(open, 0.0), InvalidParam);
  OrientedLoop tiny;
  tiny.points = {0.0, 1.0, Complex{0, 1}, 0.0};
  CHECK_THROWS_AS(winding_number(tiny, 0.5), InvalidParam);
  CHECK_THROWS_AS(winding_number(circle(0.0, 1.0, 1), 1.0), OnCurveError);
}

TEST_CASE("refinable chain of arcs") {
  const RefinablePiece pieces[] = {circle_piece(0.0, kPi, 4), circle_piece(kPi, 2.0 * kPi, 4)};
  // Four samples per half circle cut the chord inside radius 0.93; refinement
  // must still see w = 0.95 as inside.
  const WindingResult inside = winding_number(pieces, Complex{0.95 * std::cos(0.4), 0.95 * std::sin(0.4)});
  CHECK(inside.index == 1);
  CHECK(inside.min_distance == doctest::Approx(0.05).epsilon(1e-2));
  CHECK(winding_number(pieces, Complex{1.02, 0.3}).index == 0);
  CHECK(winding_number(pieces, std::polar(1.0, 0.7)).min_distance < 1e-9);
}

TEST_CASE("index far from the caustic") {
  const BoundaryIndex index(LensParams::make(1.92));
  CHECK(index.dminus({5.0, 5.0}).index == 0);
  CHECK(index.dminus({1.2, 0.0}).index == 0);
}

TEST_CASE("reference indices at k = 1.92, w = 0.67i") {
  const auto p = LensParams::make(1.92);
  const Complex w{0.0, 0.67};
  CHECK(index_dminus(p, w) == -2);
  CHECK(index_dplus(p, w, BoundaryIndex::default_clip(p, w)) == 3);
}

TEST_CASE("index at the origin for k = 1.1") {
  const auto p = LensParams::make(1.1);
  CHECK(index_dminus(p, 0.0) == -1);
  CHECK(index_dplus(p, 0.0, BoundaryIndex::default_clip(p, 0.0)) == 2);
}

TEST_CASE("on-curve and clip errors") {
  const auto p = LensParams::make(1.0);
  const Complex fold = critical_point_near(1.0, 0.3, {0.9, 0.1});
  CHECK_THROWS_AS(index_dminus(p, eval_f(p, fold)), OnCurveError);
  CHECK_THROWS_AS(index_dplus(p, 0.0, 1.5), InvalidParam);
  // w = pi/2 - k is the image of the strip edge at Im z = 0
  CHECK_THROWS_AS(index_dplus(p, Complex{kHalfPi - 1.0, 0.0}, 10.0), OnCurveError);
}

TEST_CASE("property: winding is invariant under translation and rotation") {
  gen::Gen g(31);
  for (int trial = 0; trial < 300; ++trial) {
    const OrientedLoop loop = star(g);
    const Complex w = g.box(2.5);
    int base = 0;
    try {
      base = winding_number(loop, w);
    } catch (const OnCurveError&) {
      continue;
    }
    CHECK((base == 0 || base == 1));
    const Complex shift = g.box(10.0);
    const Complex turn = std::polar(1.0, g.uniform(-kPi, kPi));
    OrientedLoop moved = loop;
    for (auto& p : moved.points) p = p * turn + shift;
    moved.points.back() = moved.points.front();
    CHECK(winding_number(moved, w * turn + shift) == base);
    OrientedLoop reversed = loop;
    std::reverse(reversed.points.begin(), reversed.points.end());
    CHECK(winding_number(reversed, w) == -base);
  }
}

TEST_CASE("property: indices respect the lens symmetries") {
  gen::Gen g(32);
  for (int trial = 0; trial < 6; ++trial) {
    const auto p = LensParams::make(g.k(0.3, 3.0));
    const BoundaryIndex index(p, 256);
    for (int q = 0; q < 10; ++q) {
      const Complex w = g.box(2.0);
      const double clip = BoundaryIndex::default_clip(p, w);
      const WindingResult a = index.dminus(w);
      const WindingResult b = index.dplus(w, clip);
      if (std::min(a.min_distance, b.min_distance) < 1e-6) continue;
      CHECK(index.dminus(std::conj(w)).index == a.index);
      CHECK(index.dminus(-w).index == a.index);
      CHECK(index.dplus(std::conj(w), clip).index == b.index);
      CHECK(index.dplus(-w, clip).index == b.index);
    }
  }
}

TEST_CASE("property: indices are stable under refinement of the samples") {
  gen::Gen g(33);
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = LensParams::make(g.k(0.3, 3.0));
    const BoundaryIndex coarse(p, 64);
    const BoundaryIndex fine(p, 512);
    for (int q = 0; q < 20; ++q) {
      const Complex w = g.box(2.0);
      const double clip = BoundaryIndex::default_clip(p, w);
      const WindingResult f = fine.dminus(w);
      const WindingResult fp = fine.dplus(w, clip);
      if (std::min(f.min_distance, fp.min_distance) < 1e-6) continue;
      CHECK(coarse.dminus(w).index == f.index);
      CHECK(coarse.dplus(w, clip).index == fp.index);
      CHECK(f.index <= 0);
      CHECK(fp.index >= 0);
    }
  }
}
