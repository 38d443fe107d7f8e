#include "basins.hpp"

#include <cmath>

#include "errors.hpp"
#include "parallel.hpp"

namespace isolens {

std::vector<Complex> basin_attractors(const LensParams& params, Complex w, const SolveOptions& options) {
  if (params.has_shear()) throw InvalidParam("basins require alpha = 0");
  std::vector<Complex> out;
  for (const Solution& s : find_all(params, w, options).solutions) {
    if (s.orientation != Orientation::Preserving) continue;
    if (!(std::abs(g_prime(params.k, s.z)) < 1.0)) {
      throw InvalidParam("orientation-preserving root is not attracting: " + format_complex(s.z));
    }
    if (!(std::abs(basin_map(params, w, s.z) - s.z) < 1e-10)) {
      throw InvalidParam("root is not a fixed point to 1e-10: " + format_complex(s.z));
    }
    out.push_back(s.z);
  }
  return out;
}

Complex basin_map(const LensParams& params, Complex w, Complex z) {
  const Complex s = std::sin(std::conj(z));
  if (std::abs(s) < kPoleExclusion) throw PoleError("basin orbit hit the pole");
  return w + params.k / s;
}

int iterate_map(const LensParams& params, Complex w, Complex z0, const std::vector<Complex>& attractors,
                const BasinOptions& options) {
  Complex z = z0;
  for (int step = 0;; ++step) {
    for (std::size_t a = 0; a < attractors.size(); ++a) {
      if (std::abs(z - attractors[a]) < options.capture_radius) return static_cast<int>(a);
    }
    if (step == options.max_iter || !(std::abs(z.imag()) <= options.escape_im)) return kUnresolved;
    try {
      z = basin_map(params, w, z);
    } catch (const PoleError&) {
      return kUnresolved;
    }
  }
}

double BasinImage::resolved_fraction() const {
  if (labels.empty()) return 0.0;
  std::size_t resolved = 0;
  for (int l : labels) resolved += l != kUnresolved;
  return static_cast<double>(resolved) / static_cast<double>(labels.size());
}

BasinImage render_basins(const LensParams& params, Complex w, const Window& viewport, int width, int height,
                         const BasinOptions& options) {
  if (width < 1 || height < 1) throw InvalidParam("image size must be positive");
  BasinImage img;
  img.viewport = viewport;
  img.width = width;
  img.height = height;
  img.attractors = basin_attractors(params, w);
  if (img.attractors.empty()) throw InvalidParam("no attracting fixed points at this (k, w)");
  img.labels.assign(static_cast<std::size_t>(width) * height, kUnresolved);

  const double hx = (viewport.re_max - viewport.re_min) / width;
  const double hy = (viewport.im_max - viewport.im_min) / height;
  parallel_for(img.labels.size(), options.threads, [&](std::size_t n) {
    const int x = static_cast<int>(n % width), y = static_cast<int>(n / width);
    const Complex z0{viewport.re_min + (x + 0.5) * hx, viewport.im_max - (y + 0.5) * hy};
    img.labels[n] = iterate_map(params, w, z0, img.attractors, options);
  });
  return img;
}

std::array<std::uint8_t, 3> basin_colour(int label) {
  static constexpr std::array<std::array<std::uint8_t, 3>, 6> kPalette = {{
      {255, 255, 255},
      {128, 128, 128},
      {0, 0, 0},
      {70, 110, 200},
      {80, 170, 90},
      {230, 170, 40},
  }};
  if (label == kUnresolved) return {200, 30, 30};
  return kPalette[static_cast<std::size_t>(label) % kPalette.size()];
}

}  // namespace isolens
