#include <doctest.h>

#include <cmath>
#include <vector>

#include "critical_curve.hpp"
#include "errors.hpp"
#include "gen.hpp"

using namespace isolens;

namespace {

double wrap(double a) { return std::remainder(a, 2.0 * kPi); }

std::vector<Complex> all_points(const CriticalCurve& c) {
  std::vector<Complex> pts;
  for (const auto& arc : c.arcs)
    for (const auto& s : arc.samples) pts.push_back(s.z);
  return pts;
}

double distance_to_polylines(const CriticalCurve& c, Complex p) {
  double best = INFINITY;
  for (const auto& arc : c.arcs) {
    for (std::size_t i = 0; i + 1 < arc.samples.size(); ++i) {
      const Complex a = arc.samples[i].z;
      const Complex b = arc.samples[i + 1].z;
      const Complex d = b - a;
      double u = std::norm(d) > 0 ? ((p - a) * std::conj(d)).real() / std::norm(d) : 0.0;
      u = std::clamp(u, 0.0, 1.0);
      best = std::min(best, std::abs(p - (a + u * d)));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("positive quadratic root at k = 1, t = 0") {
  const Complex s = critical_s(LensParams::make(1.0), 0.0);
  CHECK(std::abs(s - Complex{(std::sqrt(5.0) - 1.0) / 2.0, 0.0}) < 1e-15);
  CHECK(s.real() == doctest::Approx(0.618034).epsilon(1e-6));
}

TEST_CASE("discriminant vanishes only at k = 2") {
  CHECK(std::abs(critical_discriminant(2.0, kHalfPi)) < 1e-15);
  CHECK(std::abs(critical_discriminant(2.0, -kHalfPi)) < 1e-15);
  for (double t = -kPi; t < kPi; t += 0.01) CHECK(std::abs(critical_discriminant(1.9, t)) > 0.3);
}

TEST_CASE("boundary case on the imaginary s axis") {
  CHECK_THROWS_AS(critical_s(LensParams::make(2.5), kHalfPi), BoundaryCase);
  CHECK_NOTHROW(critical_s(LensParams::make(1.5), kHalfPi));
}

TEST_CASE("strip endpoints at k = 2.01") {
  const StripEndpoints e = strip_endpoints(LensParams::make(2.01));
  CHECK(std::abs(e.t0 - 0.812486163386315290) < 1e-14);
  CHECK(std::abs(e.t1 - 0.953789932871963867) < 1e-14);
  CHECK(e.v1 == Complex{-kHalfPi, -e.t0});
  CHECK(e.v2 == Complex{-kHalfPi, -e.t1});
  CHECK(std::sinh(e.t0) * std::sinh(e.t1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("strip endpoints merge at k = 2") {
  const StripEndpoints e = strip_endpoints(LensParams::make(2.0));
  CHECK(std::abs(e.t0 - 0.881373587019543025) < 1e-14);
  CHECK(std::abs(e.t1 - 0.881373587019543025) < 1e-14);
  CHECK(e.v1 == e.v2);
  CHECK_THROWS_AS(strip_endpoints(LensParams::make(1.99)), InvalidParam);
}

TEST_CASE("topology below and above k = 2") {
  const auto loop = trace_critical(LensParams::make(1.5), 256);
  CHECK(loop.topology == CurveTopology::OneLoop);
  REQUIRE(loop.arcs.size() == 1);
  CHECK(loop.arcs[0].closed);
  CHECK(std::abs(loop.arcs[0].samples.front().z - loop.arcs[0].samples.back().z) < 1e-12);
  CHECK_FALSE(loop.endpoints.has_value());

  const auto arcs = trace_critical(LensParams::make(2.5), 256);
  CHECK(arcs.topology == CurveTopology::FourArcs);
  REQUIRE(arcs.arcs.size() == 4);
  REQUIRE(arcs.endpoints.has_value());
  const double t0 = arcs.endpoints->t0;
  const double t1 = arcs.endpoints->t1;
  // right, top, left, bottom, each running counterclockwise about the pole
  const auto& right = arcs.arcs[0].samples;
  CHECK(right.front().z == Complex{kHalfPi, -t0});
  CHECK(right.back().z == Complex{kHalfPi, t0});
  const auto& top = arcs.arcs[1].samples;
  CHECK(top.front().z == Complex{kHalfPi, t1});
  CHECK(top.back().z == Complex{-kHalfPi, t1});
  CHECK(arcs.arcs[2].samples.front().z == Complex{-kHalfPi, t0});
  CHECK(arcs.arcs[3].samples.front().z == Complex{-kHalfPi, -t1});
  for (const auto& arc : arcs.arcs) CHECK_FALSE(arc.closed);
}

TEST_CASE("tracing rejects bad input") {
  CHECK_THROWS_AS(trace_critical(LensParams::make(1.0), 8), InvalidParam);
  CHECK_THROWS_AS(trace_critical(LensParams::make(1.0, {0.2, 0.0}), 64), InvalidParam);
}

TEST_CASE("extra parameters become exact samples") {
  const double extra[] = {0.123456789};
  const auto c = trace_critical(LensParams::make(1.2), 64, extra);
  bool found = false;
  for (const auto& s : c.arcs[0].samples) found = found || s.t == 0.123456789;
  CHECK(found);
}

TEST_CASE("property: critical samples satisfy |g'| = 1 with the right parameter") {
  gen::Gen g(11);
  for (int trial = 0; trial < 40; ++trial) {
    const double k = g.k(0.05, 6.0);
    const auto c = trace_critical(LensParams::make(k), 128);
    for (const auto& arc : c.arcs) {
      double previous = -INFINITY;
      for (const auto& s : arc.samples) {
        CHECK(s.t > previous);
        previous = s.t;
        CHECK(std::abs(s.z.real()) <= kHalfPi + 1e-12);
        const Complex gp = g_prime(k, s.z);
        CHECK(std::abs(std::abs(gp) - 1.0) < 1e-10);
        CHECK(std::abs(wrap(-std::arg(gp) - s.t)) < 1e-7);
      }
    }
  }
}

TEST_CASE("property: roots of the quadratic multiply to -1") {
  gen::Gen g(12);
  for (int trial = 0; trial < 1000; ++trial) {
    const double k = g.k(0.01, 10.0);
    const double t = g.uniform(-kPi, kPi);
    const auto [a, b] = critical_quadratic_roots(k, t);
    CHECK(std::abs(a * b + 1.0) < 1e-12);
    const Complex e = k * std::polar(1.0, t);
    CHECK(std::abs(a * a + e * a - 1.0) < 1e-10 * std::max(1.0, std::norm(a)));
  }
}

TEST_CASE("property: critical curve is symmetric under conjugation and negation") {
  gen::Gen g(13);
  for (int trial = 0; trial < 12; ++trial) {
    const double k = g.k(0.1, 5.0);
    const auto c = trace_critical(LensParams::make(k), 512);
    const auto pts = all_points(c);
    double spacing = 0.0;
    for (const auto& arc : c.arcs)
      for (std::size_t i = 0; i + 1 < arc.samples.size(); ++i)
        spacing = std::max(spacing, std::abs(arc.samples[i + 1].z - arc.samples[i].z));
    double worst = 0.0;
    for (std::size_t i = 0; i < pts.size(); i += 7) {
      worst = std::max(worst, distance_to_polylines(c, std::conj(pts[i])));
      worst = std::max(worst, distance_to_polylines(c, -pts[i]));
    }
    CHECK(worst <= spacing);
  }
}

TEST_CASE("property: the loop winds once counterclockwise about the pole") {
  gen::Gen g(14);
  for (int trial = 0; trial < 20; ++trial) {
    const double k = g.k(0.05, 1.99);
    const auto c = trace_critical(LensParams::make(k), 256);
    double turn = 0.0;
    const auto& s = c.arcs[0].samples;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) turn += std::arg(s[i + 1].z / s[i].z);
    CHECK(turn == doctest::Approx(2.0 * kPi).epsilon(1e-9));
  }
}
