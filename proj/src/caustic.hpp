#pragma once

#include <array>
#include <vector>

#include "critical_curve.hpp"

namespace isolens {

enum class CuspFamily { AxisReal, AxisImag, Oblique };

/// A point z on the critical curve whose image is a cusp of the caustic.
struct Cusp {
  Complex z;
  Complex image;
  CuspFamily family = CuspFamily::AxisReal;
  double t = 0.0;  ///< curve parameter -arg g'(z), in [-pi, pi)
  Complex s;       ///< cos z
  double r = 0.0;  ///< |s|^2
};

/// 2/sqrt(3): oblique cusps exist strictly above this value of k.
double oblique_cusp_threshold();

/// pi^2 / (2 sqrt(pi^2 - 4)): above this k no source has 5 or 6 images.
double six_image_upper_threshold();

/// p(r) = r^3 - 3r^2 + (k^2 - 1) r - 1
double cusp_polynomial(double k, double r);

/// Unique positive root r(k) of p, by bisection on (0, 4).
double positive_root_p(double k);

/// Closed-form critical values (k^2 - 4)(1 -+ (2/9) sqrt(12 - 3k^2)), for 0 < k <= 2.
std::array<double, 2> cusp_polynomial_critical_values(double k);

/// Cusp points: z1, z2, z3 = -z1, z4 = -z2 on the axes, then the oblique ones
/// ordered by quadrant when 2/sqrt(3) < k < 2.
std::vector<Cusp> find_cusps(const LensParams& params);

/// (g'')^2 / (g')^3 at z; real and positive at a cusp.
Complex cusp_discriminant(double k, Complex z);

struct CausticSample {
  double t = 0.0;
  Complex z;
  Complex image;
  bool is_cusp = false;
};

/// Smooth piece of the caustic between two cusps, or between a cusp and the
/// image of a strip-boundary endpoint.
struct CausticArc {
  int critical_arc = 0;               ///< index into the traced critical curve
  std::vector<CausticSample> samples;
  std::vector<double> tangent_arg;    ///< unwrapped arg of consecutive differences
};

struct Caustic {
  double k = 0.0;
  std::vector<CausticArc> arcs;
  std::vector<Cusp> cusps;
};

Caustic trace_caustic(const LensParams& params, int samples_per_arc);

/// Images of the lines Re z = +-pi/2 for |Im z| <= im_limit.
struct BoundaryImage {
  std::vector<Complex> right;  ///< (pi/2 - k/cosh y) + iy
  std::vector<Complex> left;   ///< -(pi/2 - k/cosh y) + iy
};

BoundaryImage boundary_image(const LensParams& params, double im_limit, int samples);

}  // namespace isolens
