#include "core_map.hpp"

#include <cmath>

#include "errors.hpp"

namespace isolens {

namespace {

struct SinCos {
  Complex sin;
  Complex cos;
  Complex inv_sin;
};

// sin and cos share one real sincos/sinh/cosh evaluation; this is the hot
// path of every Newton step.
SinCos checked_sin_cos(Complex z) {
  const double x = z.real(), y = z.imag();
  const double sx = std::sin(x), cx = std::cos(x);
  const double shy = std::sinh(y), chy = std::cosh(y);
  SinCos out{{sx * chy, cx * shy}, {cx * chy, -sx * shy}, {}};
  const double n = std::norm(out.sin);
  if (!(std::sqrt(n) >= kPoleExclusion)) {
    throw PoleError("lens map evaluated at a pole (z = " + format_complex(z) + ")");
  }
  out.inv_sin = std::conj(out.sin) / n;
  return out;
}

}  // namespace

LensParams LensParams::make(double k, Complex alpha) {
  if (!std::isfinite(k) || k <= 0.0) throw InvalidParam("k must be a finite positive number");
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw InvalidParam("shear alpha must be finite");
  }
  if (alpha != Complex{} && std::abs(std::abs(alpha) - 1.0) < 1e-12) {
    throw InvalidParam("shear with |alpha| = 1 is not supported");
  }
  return LensParams{k, alpha};
}

Complex g_prime(double k, Complex z) {
  const SinCos sc = checked_sin_cos(z);
  return k * sc.cos * sc.inv_sin * sc.inv_sin;
}

Complex eval_f(const LensParams& params, Complex z) {
  const SinCos sc = checked_sin_cos(z);
  return z + params.alpha * std::conj(z) - params.effective_k() * std::conj(sc.inv_sin);
}

MapJet jet(const LensParams& params, Complex z) {
  const double k1 = params.effective_k();
  const SinCos sc = checked_sin_cos(z);
  const Complex c = sc.cos;
  const Complex inv2 = sc.inv_sin * sc.inv_sin;
  const Complex gp = k1 * c * inv2;

  MapJet out;
  out.value = z + params.alpha * std::conj(z) - k1 * std::conj(sc.inv_sin);
  out.d_z = Complex{1.0, 0.0};
  out.d_zbar = params.alpha + std::conj(gp);
  out.jacobian = std::norm(out.d_z) - std::norm(out.d_zbar);
  out.gpp = -k1 * (1.0 + c * c) * inv2 * sc.inv_sin;
  return out;
}

std::array<Complex, 3> symmetry_images(Complex z) { return {std::conj(z), -z, -std::conj(z)}; }

}  // namespace isolens
