#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "critical_curve.hpp"

namespace isolens {

/// Below this distance from a curve the index about w is treated as undefined.
inline constexpr double kOnCurveDistance = 1e-9;

/// Closed polyline in the image plane; first point equals last point.
struct OrientedLoop {
  std::vector<Complex> points;
  std::string orientation_note;
};

/// Exact winding number of the polyline about w.
/// Throws InvalidParam for a malformed loop and OnCurveError within 1e-9 of it.
int winding_number(const OrientedLoop& loop, Complex w);

/// A curve sample: parameter, preimage point z, and image point.
struct CurvePoint {
  double tau = 0.0;
  Complex z;
  Complex image;
};

/// A piece of a parametrized closed chain that can be resampled on demand.
/// `refine(tau, z_hint)` returns the point at tau; z_hint (the preimage
/// midpoint of the enclosing segment) resolves branch ambiguity.
struct RefinablePiece {
  std::vector<CurvePoint> samples;
  std::function<CurvePoint(double tau, Complex z_hint)> refine;
};

struct WindingResult {
  int index = 0;
  double min_distance = 0.0;  ///< distance from w to the refined curve
};

/// Winding number of a closed chain of pieces about w. Segments are bisected
/// until each subtends less than pi/4 at w and is shorter than its distance to
/// w (or shorter than `resolution`). Does not throw for on-curve points; the
/// caller inspects min_distance.
WindingResult winding_number(std::span<const RefinablePiece> chain, Complex w, double resolution = 1e-11);

/// Boundary chains of D- and D+ (strip part where the Jacobian is negative /
/// positive), mapped by f and oriented with the region on the left.
class BoundaryIndex {
 public:
  explicit BoundaryIndex(const LensParams& params, int samples_per_arc = 512);

  const LensParams& params() const noexcept { return params_; }

  /// Index of f(boundary of D-) about w.
  WindingResult dminus(Complex w) const;
  /// Index of f(boundary of D+ cut at |Im z| = clip) about w.
  /// Throws InvalidParam unless |w| < clip - k - 1.
  WindingResult dplus(Complex w, double clip) const;

  static double default_clip(const LensParams& params, Complex w);

  /// Exposed for tests: the D- chain in the z-plane.
  std::vector<RefinablePiece> dminus_chain() const { return dminus_; }
  /// The D+ chains (one per component of D+, or outer rectangle plus hole).
  std::vector<std::vector<RefinablePiece>> dplus_chains(double clip) const;

 private:
  RefinablePiece line_piece(double x, double y_from, double y_to) const;
  RefinablePiece horizontal_piece(double y, double x_from, double x_to) const;
  RefinablePiece critical_piece(std::size_t arc, bool reversed) const;

  LensParams params_;
  CriticalCurve curve_;
  int samples_;
  std::vector<RefinablePiece> dminus_;
};

/// Throws OnCurveError when the index is undefined.
int index_dminus(const LensParams& params, Complex w);
int index_dplus(const LensParams& params, Complex w, double clip);

}  // namespace isolens
