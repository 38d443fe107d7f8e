#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "core_map.hpp"

namespace isolens {

enum class CurveTopology { OneLoop, FourArcs };

/// A point z on the critical curve with its parameter t = -arg g'(z).
struct CurveSample {
  double t = 0.0;
  Complex z;
};

struct CriticalArc {
  std::vector<CurveSample> samples;  ///< t strictly increasing
  bool closed = false;
};

/// Strip-boundary endpoints of the critical curve for k >= 2.
struct StripEndpoints {
  Complex v1;         ///< -pi/2 - i*t0
  Complex v2;         ///< -pi/2 - i*t1
  double t0 = 0.0;    ///< sinh t0 = k/2 - sqrt(k^2/4 - 1)
  double t1 = 0.0;    ///< sinh t1 = k/2 + sqrt(k^2/4 - 1)
};

/// The set {z : |g'(z)| = 1} in the strip |Re z| <= pi/2.
///
/// k < 2: one closed loop around the pole, traversed counterclockwise.
/// k >= 2: four arcs, each running counterclockwise around the pole, in the
/// order right (through the positive real axis), top, left, bottom.
struct CriticalCurve {
  double k = 0.0;
  CurveTopology topology = CurveTopology::OneLoop;
  std::vector<CriticalArc> arcs;
  std::optional<StripEndpoints> endpoints;
};

/// Both roots of s^2 + k e^{it} s - 1 = 0.
std::pair<Complex, Complex> critical_quadratic_roots(double k, double t);

/// k^2 e^{2it} + 4; vanishes for real t only when k = 2.
Complex critical_discriminant(double k, double t);

/// The root s = cos z of the critical quadratic with Re s > 0.
/// Throws BoundaryCase when Re s is zero to 1e-12 (strip-boundary points, k >= 2).
Complex critical_s(const LensParams& params, double t);

/// Point of the critical curve at parameter t, choosing between the two
/// preimages +-arccos(s) the one nearest to `hint`. No boundary check.
Complex critical_point_near(double k, double t, Complex hint);

/// Closed-form sampling. `extra_t` values are inserted as additional exact
/// samples in every arc whose parameter range contains them (modulo 2 pi).
CriticalCurve trace_critical(const LensParams& params, int samples_per_arc,
                             std::span<const double> extra_t = {});

StripEndpoints strip_endpoints(const LensParams& params);

}  // namespace isolens
