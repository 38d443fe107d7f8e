#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core_map.hpp"

namespace isolens {

enum class Orientation { Preserving, Reversing, Degenerate };

/// |jacobian| below this marks a root as lying on the critical curve.
inline constexpr double kDegenerateJacobian = 1e-8;

Orientation orientation_of(double jacobian);
const char* to_string(Orientation o);

struct Solution {
  Complex z;
  Orientation orientation = Orientation::Degenerate;
  double residual = 0.0;
  double jacobian = 0.0;
};

struct OrientationCounts {
  int preserving = 0;
  int reversing = 0;
  int degenerate = 0;
  int total() const { return preserving + reversing + degenerate; }
};

struct SolveReport {
  std::vector<Solution> solutions;  ///< descending Im, then ascending Re
  std::size_t seeds_used = 0;
  std::optional<bool> oracle_agreement;
  /// Set for alpha = 0 when a non-degenerate root set falls outside 1..6
  /// (or more than 3 of one orientation).
  bool bound_violation = false;

  OrientationCounts counts() const;
};

struct SolveOptions {
  int seed_cols = 61;
  int seed_rows = 121;
  int max_iter = 60;
  std::uint64_t rng_seed = 42;
  int reseed_budget = 512;
};

/// Axis-aligned rectangle in the plane of the unknown.
struct SearchRect {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
};

/// Seed rectangle for the equation eval_f(params, u) = target:
/// |Re u| <= pi/2 - 0.01 and |Im u| <= Y. For alpha = 0, Y = max(1, |w| + k) + 0.5.
SearchRect search_rect(const LensParams& params, Complex target);

/// Newton iteration for eval_f(params, z) = target from `seed`.
/// Returns nothing on divergence, stall, or if the seed is outside the open
/// strip or within 1e-3 of the pole.
std::optional<Solution> newton_solve(const LensParams& params, Complex target, Complex seed, int max_iter = 60,
                                     std::uint64_t rng_seed = 42);

/// All solutions of f(z) = w in the strip (alpha must be 0).
SolveReport find_all(const LensParams& params, Complex w, const SolveOptions& options = {});

/// All solutions of the sheared equation; roots are reported in z.
SolveReport find_all_shear(const LensParams& params, Complex w, const SolveOptions& options = {});

/// Independent brute-force oracle: local minima of |f - target| on a grid,
/// polished by Nelder-Mead. Shares only eval_f/jet with the Newton path.
class OracleGrid {
 public:
  /// `density` columns and 2*density rows over `rect`.
  OracleGrid(const LensParams& params, const SearchRect& rect, int density);

  /// Roots of eval_f(params, u) = target inside the grid rectangle.
  std::vector<Solution> find(Complex target) const;

  const SearchRect& rect() const noexcept { return rect_; }

 private:
  LensParams params_;
  SearchRect rect_;
  int nx_;
  int ny_;
  double dx_;
  double dy_;
  std::vector<std::complex<float>> images_;  ///< row-major, NaN at poles
};

/// Oracle counterpart of find_all / find_all_shear; roots reported in z.
std::vector<Solution> oracle_find_all(const LensParams& params, Complex w, int grid_density = 2000);

/// True when both lists have the same size and every root of `a` has a
/// distinct partner in `b` within `tol`.
bool same_roots(const std::vector<Solution>& a, const std::vector<Solution>& b, double tol = 1e-6);

/// Removes roots closer than `radius` to an earlier one (keeping the smaller
/// residual) and sorts by descending Im, then ascending Re (Im within 1e-9
/// counts as equal).
std::vector<Solution> dedup_roots(std::vector<Solution> roots, double radius = 1e-6);

}  // namespace isolens
