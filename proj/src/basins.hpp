#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "classifier.hpp"

namespace isolens {

/// Label of a pixel whose orbit reached no attractor.
inline constexpr int kUnresolved = -1;

struct BasinOptions {
  int max_iter = 500;
  double capture_radius = 1e-6;
  double escape_im = 50.0;
  int threads = 0;
};

/// Attracting fixed points of T(z) = w + k/sin(conj z): the orientation
/// preserving solutions, ordered by descending Im, then ascending Re.
/// Throws InvalidParam when one fails |g'| < 1 or |T(z) - z| < 1e-10.
std::vector<Complex> basin_attractors(const LensParams& params, Complex w, const SolveOptions& options = {});

/// One application of T.
Complex basin_map(const LensParams& params, Complex w, Complex z);

/// Iterates T from z0 and returns the index of the first attractor the orbit
/// comes within the capture radius of, or kUnresolved.
int iterate_map(const LensParams& params, Complex w, Complex z0, const std::vector<Complex>& attractors,
                const BasinOptions& options = {});

struct BasinImage {
  Window viewport;
  int width = 0;
  int height = 0;
  std::vector<int> labels;  ///< row-major, row 0 at the top (largest Im)
  std::vector<Complex> attractors;

  int at(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
  /// Fraction of pixels with a label other than kUnresolved.
  double resolved_fraction() const;
};

/// Pixel (x, y) samples z at the pixel centre.
BasinImage render_basins(const LensParams& params, Complex w, const Window& viewport, int width, int height,
                         const BasinOptions& options = {});

/// Colour of an attractor label: white, gray, black for the first three,
/// then fixed extra colours; red for kUnresolved.
std::array<std::uint8_t, 3> basin_colour(int label);

}  // namespace isolens
