#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "solver.hpp"
#include "winding.hpp"

namespace isolens {

/// Query points closer than this to the caustic or to the image of the strip
/// boundary are labelled on-curve instead of being classified.
inline constexpr double kOnCurveBand = 1e-6;

/// Sign s in m = 1 - s * index(D-), frozen from the calibration point.
inline constexpr int kReversingSign = 1;

struct Calibration {
  double k = 1.1;
  Complex w;
  int idx_minus = 0;
  int m_solver = 0;
  int sign = 0;  ///< (1 - m_solver) / idx_minus, or 0 if that is not +-1
};

/// Re-derives the sign of the reversing-count formula at k = 1.1, w = 0.
Calibration calibrate_reversing_sign();

struct RegionReport {
  Complex w;
  std::optional<int> idx_minus;
  std::optional<int> idx_plus;
  std::optional<int> m_predicted;
  std::optional<int> n_predicted;
  std::optional<int> m_solver;
  std::optional<int> n_solver;
  int degenerate_solver = 0;
  bool consistent = true;
  bool on_curve = false;
  double curve_distance = 0.0;

  std::optional<int> total_predicted() const {
    if (!m_predicted || !n_predicted) return std::nullopt;
    return *m_predicted + *n_predicted;
  }
};

/// Count prediction from curve indices, with optional solver cross-check.
/// Requires alpha = 0. Thread-safe for concurrent classify calls.
class Classifier {
 public:
  explicit Classifier(const LensParams& params, int samples_per_arc = 512);

  const LensParams& params() const noexcept { return index_.params(); }

  /// Indices only; the solver fields stay empty.
  RegionReport predict(Complex w) const;
  /// Indices plus find_all; `consistent` compares the two off the curve.
  RegionReport classify(Complex w, const SolveOptions& options = {}) const;

 private:
  BoundaryIndex index_;
};

RegionReport classify(const LensParams& params, Complex w, const SolveOptions& options = {});

struct Window {
  double re_min = -2.0;
  double re_max = 2.0;
  double im_min = -2.0;
  double im_max = 2.0;
};

struct SweepCell {
  Complex w;
  int m = -1;  ///< -1 when on the curve
  int n = -1;
  bool on_curve = false;
};

struct SweepResult {
  double k = 0.0;
  Window window;
  int resolution = 0;             ///< cells per side
  std::vector<SweepCell> cells;   ///< row-major, row 0 at im_min
  std::vector<RegionReport> spot_checks;
  bool spot_checks_consistent = true;

  const SweepCell& at(int i, int j) const { return cells[static_cast<std::size_t>(j) * resolution + i]; }
};

struct SweepOptions {
  int threads = 0;                 ///< 0: hardware concurrency
  int spot_checks = 5;             ///< random off-curve cells re-checked with the solver
  std::uint64_t seed = 42;
  SolveOptions solve;
};

/// resolution x resolution grid of (m, n) labels over the window, cell
/// centres at the grid nodes including the window edges.
SweepResult sweep(const LensParams& params, const Window& window, int resolution, const SweepOptions& options = {});

}  // namespace isolens
