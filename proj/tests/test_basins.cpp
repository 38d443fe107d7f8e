#include <doctest.h>

#include <cmath>

#include "basins.hpp"
#include "errors.hpp"
#include "gen.hpp"

using namespace isolens;

namespace {

const Window kView{-1.5, 1.5, -2.0, 2.0};

}  // namespace

TEST_CASE("attracting fixed points at k = 1.92, w = 0.67i") {
  const auto a = basin_attractors(LensParams::make(1.92), {0.0, 0.67});
  REQUIRE(a.size() == 3);
  CHECK(std::abs(a[0] - Complex{0.0, 1.5363458140776685929}) < 1e-12);
  CHECK(std::abs(a[1] - Complex{-1.46175393059526477129, 0.77388761533983886110}) < 1e-12);
  CHECK(std::abs(a[2] - Complex{1.46175393059526477129, 0.77388761533983886110}) < 1e-12);
}

TEST_CASE("fixed-point map") {
  const auto p = LensParams::make(1.3);
  const Complex z{0.4, -0.2};
  CHECK(std::abs(basin_map(p, {0.1, 0.2}, z) - (Complex{0.1, 0.2} + 1.3 / std::sin(std::conj(z)))) < 1e-15);
  CHECK_THROWS_AS(basin_map(p, 0.0, 0.0), PoleError);
}

TEST_CASE("orbit from 1.4i reaches the top attractor") {
  const auto p = LensParams::make(1.92);
  const Complex w{0.0, 0.67};
  const auto a = basin_attractors(p, w);
  CHECK(iterate_map(p, w, {0.0, 1.4}, a) == 0);
  CHECK(iterate_map(p, w, a[2], a) == 2);
  BasinOptions none;
  none.max_iter = 0;
  CHECK(iterate_map(p, w, {0.0, 1.4}, a, none) == kUnresolved);
}

TEST_CASE("attractor count equals the number of preserving roots") {
  const auto p = LensParams::make(1.0);
  const auto roots = find_all(p, 0.0);
  CHECK(basin_attractors(p, 0.0).size() == static_cast<std::size_t>(roots.counts().preserving));
}

TEST_CASE("render rejects sources without attractors") {
  const auto p = LensParams::make(1.0);
  // w = 100 has only the reversing image next to the pole.
  CHECK(basin_attractors(p, 100.0).empty());
  CHECK_THROWS_AS(render_basins(p, 100.0, kView, 8, 8), InvalidParam);
  CHECK_THROWS_AS(render_basins(p, 0.0, kView, 0, 8), InvalidParam);
  CHECK_THROWS_AS(basin_attractors(LensParams::make(1.0, {0.1, 0.0}), 0.0), InvalidParam);
}

TEST_CASE("palette") {
  CHECK(basin_colour(0) == std::array<std::uint8_t, 3>{255, 255, 255});
  CHECK(basin_colour(1) == std::array<std::uint8_t, 3>{128, 128, 128});
  CHECK(basin_colour(2) == std::array<std::uint8_t, 3>{0, 0, 0});
  CHECK(basin_colour(kUnresolved) == std::array<std::uint8_t, 3>{200, 30, 30});
  CHECK(basin_colour(3) != basin_colour(0));
}

TEST_CASE("rendering is deterministic and mirror symmetric") {
  const auto p = LensParams::make(1.92);
  const Complex w{0.0, 0.67};
  BasinOptions serial;
  serial.threads = 1;
  const BasinImage a = render_basins(p, w, kView, 40, 40, serial);
  const BasinImage b = render_basins(p, w, kView, 40, 40);
  CHECK(a.labels == b.labels);
  CHECK(a.at(20, 0) == b.at(20, 0));
  // z -> -conj(z) commutes with the map for imaginary w and swaps attractors 1 and 2.
  const int swap[] = {0, 2, 1};
  int mismatches = 0;
  for (int y = 0; y < 40; ++y) {
    for (int x = 0; x < 40; ++x) {
      const int l = a.at(x, y);
      const int m = a.at(39 - x, y);
      if (l == kUnresolved || m == kUnresolved) continue;
      mismatches += swap[l] != m;
    }
  }
  CHECK(mismatches == 0);
  CHECK(a.resolved_fraction() > 0.9);
}

TEST_CASE("resolved fraction grows with the iteration cap") {
  const auto p = LensParams::make(1.92);
  double previous = 0.0;
  for (int cap : {5, 20, 100, 500}) {
    BasinOptions o;
    o.max_iter = cap;
    const double f = render_basins(p, {0.0, 0.67}, kView, 24, 24, o).resolved_fraction();
    CHECK(f >= previous);
    previous = f;
  }
}

TEST_CASE("property: every resolved pixel converges to its labelled attractor") {
  gen::Gen g(61);
  const auto p = LensParams::make(1.92);
  const Complex w{0.0, 0.67};
  const auto a = basin_attractors(p, w);
  for (int trial = 0; trial < 300; ++trial) {
    const Complex z0 = g.strip_point(2.0);
    const int label = iterate_map(p, w, z0, a);
    if (label == kUnresolved) continue;
    Complex z = z0;
    for (int i = 0; i < 2000; ++i) z = basin_map(p, w, z);
    CHECK(std::abs(z - a[static_cast<std::size_t>(label)]) < 1e-9);
  }
}
