#pragma once

#include <array>

#include "complex.hpp"

namespace isolens {

/// |sin z| below this is treated as evaluation at the pole.
inline constexpr double kPoleExclusion = 1e-13;

/// Parameters of the lens map: mass scale k > 0 and an optional shear alpha.
///
/// With shear the map is written in the substituted variable u = z - alpha*conj(z):
/// F(u) = u + alpha*conj(u) - k1/sin(conj u), solved against w1, where
/// k1 = k(1-|alpha|^2) and w1 = w(1-|alpha|^2). For alpha = 0 this is the
/// plain map f(z) = z - k/sin(conj z).
struct LensParams {
  double k = 1.0;
  Complex alpha{0.0, 0.0};

  /// Validating constructor; throws InvalidParam.
  static LensParams make(double k, Complex alpha = {});

  bool has_shear() const noexcept { return alpha != Complex{}; }
  double shear_scale() const noexcept { return 1.0 - std::norm(alpha); }
  double effective_k() const noexcept { return k * shear_scale(); }
  Complex scaled_target(Complex w) const noexcept { return w * shear_scale(); }
  /// Maps a solution u of the substituted equation back to z.
  Complex z_from_u(Complex u) const noexcept { return (u + alpha * std::conj(u)) / shear_scale(); }
};

/// Value and first-order structure of the map at a point.
struct MapJet {
  Complex value;
  Complex d_z;
  Complex d_zbar;
  double jacobian = 0.0;
  Complex gpp;  ///< g''(z) of g(z) = -k1/sin z
};

/// g'(z) = k cos z / sin^2 z for g(z) = -k/sin z.
Complex g_prime(double k, Complex z);

Complex eval_f(const LensParams& params, Complex z);
MapJet jet(const LensParams& params, Complex z);

/// (conj z, -z, -conj z)
std::array<Complex, 3> symmetry_images(Complex z);

}  // namespace isolens
