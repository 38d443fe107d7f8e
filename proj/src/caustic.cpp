#include "caustic.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/tools/roots.hpp>

#include "errors.hpp"

namespace isolens {

namespace {

double curve_parameter(double k, Complex z) {
  double t = -std::arg(g_prime(k, z));
  if (t >= kPi) t -= 2.0 * kPi;
  return t;
}

Cusp make_cusp(double k, Complex z, CuspFamily family) {
  Cusp c;
  c.z = z;
  c.image = eval_f(LensParams{k, {}}, z);
  c.family = family;
  c.t = curve_parameter(k, z);
  c.s = std::cos(z);
  c.r = std::norm(c.s);
  return c;
}

}  // namespace

double oblique_cusp_threshold() { return 2.0 / std::sqrt(3.0); }

double six_image_upper_threshold() { return kPi * kPi / (2.0 * std::sqrt(kPi * kPi - 4.0)); }

double cusp_polynomial(double k, double r) { return ((r - 3.0) * r + (k * k - 1.0)) * r - 1.0; }

double positive_root_p(double k) {
  if (!(k > 0.0)) throw InvalidParam("k must be positive");
  // p(0) = -1 and p(4) = 11 + 4k^2 bracket the only positive root.
  const auto [lo, hi] = boost::math::tools::bisect(
      [k](double r) { return cusp_polynomial(k, r); }, 0.0, 4.0,
      [](double a, double b) { return std::abs(b - a) <= 1e-15; });
  return 0.5 * (lo + hi);
}

std::array<double, 2> cusp_polynomial_critical_values(double k) {
  if (!(k > 0.0) || k > 2.0) throw InvalidParam("critical values of p are real only for 0 < k <= 2");
  const double root = (2.0 / 9.0) * std::sqrt(std::max(0.0, 12.0 - 3.0 * k * k));
  return {(k * k - 4.0) * (1.0 - root), (k * k - 4.0) * (1.0 + root)};
}

Complex cusp_discriminant(double k, Complex z) {
  const LensParams params{k, {}};
  const MapJet j = jet(params, z);
  const Complex gp = g_prime(k, z);
  return j.gpp * j.gpp / (gp * gp * gp);
}

std::vector<Cusp> find_cusps(const LensParams& params) {
  if (!(params.k > 0.0)) throw InvalidParam("k must be positive");
  if (params.has_shear()) throw InvalidParam("cusp location requires alpha = 0");
  const double k = params.k;
  const double half = k / 2.0;
  const double root = std::sqrt(half * half + 1.0);

  std::vector<Cusp> cusps;
  const Complex z1{std::acos(root - half), 0.0};
  const Complex z2{0.0, std::log(half + root + std::sqrt((half + root) * (half + root) - 1.0))};
  cusps.push_back(make_cusp(k, z1, CuspFamily::AxisReal));
  cusps.push_back(make_cusp(k, z2, CuspFamily::AxisImag));
  cusps.push_back(make_cusp(k, -z1, CuspFamily::AxisReal));
  cusps.push_back(make_cusp(k, -z2, CuspFamily::AxisImag));

  const double k_low = oblique_cusp_threshold();
  if (k <= k_low + 1e-12 || k >= 2.0 - 1e-12) return cusps;

  const double r = positive_root_p(k);
  const double cos2t = (1.0 - k * k * r + r * r) / (2.0 * r);
  if (std::abs(cos2t) > 1.0) return cusps;
  const double theta = 0.5 * std::acos(cos2t);

  std::vector<Cusp> oblique;
  for (double phi : {theta, -theta, kPi - theta, kPi + theta}) {
    const Complex s = std::polar(std::sqrt(r), phi);
    if (std::cos(phi) * (r * r - 1.0) <= 0.0 || s.real() <= 0.0) continue;
    const Complex z = std::acos(s);
    oblique.push_back(make_cusp(k, z, CuspFamily::Oblique));
    oblique.push_back(make_cusp(k, -z, CuspFamily::Oblique));
  }
  auto quadrant = [](Complex z) {
    if (z.real() > 0) return z.imag() > 0 ? 1 : 4;
    return z.imag() > 0 ? 2 : 3;
  };
  std::sort(oblique.begin(), oblique.end(),
            [&](const Cusp& a, const Cusp& b) { return quadrant(a.z) < quadrant(b.z); });
  cusps.insert(cusps.end(), oblique.begin(), oblique.end());
  return cusps;
}

Caustic trace_caustic(const LensParams& params, int samples_per_arc) {
  Caustic caustic;
  caustic.k = params.k;
  caustic.cusps = find_cusps(params);

  std::vector<double> cusp_t;
  for (const auto& c : caustic.cusps) cusp_t.push_back(c.t);
  const CriticalCurve curve = trace_critical(params, samples_per_arc, cusp_t);

  auto is_cusp = [&](Complex z) {
    return std::any_of(caustic.cusps.begin(), caustic.cusps.end(),
                       [&](const Cusp& c) { return std::abs(c.z - z) < 1e-9; });
  };

  for (std::size_t a = 0; a < curve.arcs.size(); ++a) {
    CausticArc current;
    current.critical_arc = static_cast<int>(a);
    for (const auto& sample : curve.arcs[a].samples) {
      CausticSample cs{sample.t, sample.z, eval_f(params, sample.z), is_cusp(sample.z)};
      current.samples.push_back(cs);
      if (cs.is_cusp && current.samples.size() > 1) {
        caustic.arcs.push_back(std::move(current));
        current = CausticArc{};
        current.critical_arc = static_cast<int>(a);
        current.samples.push_back(cs);
      }
    }
    if (current.samples.size() > 1) caustic.arcs.push_back(std::move(current));
  }

  for (auto& arc : caustic.arcs) {
    double previous = 0.0;
    for (std::size_t i = 0; i + 1 < arc.samples.size(); ++i) {
      double angle = std::arg(arc.samples[i + 1].image - arc.samples[i].image);
      if (i > 0) {
        while (angle - previous > kPi) angle -= 2.0 * kPi;
        while (angle - previous < -kPi) angle += 2.0 * kPi;
      }
      arc.tangent_arg.push_back(angle);
      previous = angle;
    }
  }
  return caustic;
}

BoundaryImage boundary_image(const LensParams& params, double im_limit, int samples) {
  if (!(im_limit > 0.0)) throw InvalidParam("im_limit must be positive");
  if (samples < 2) throw InvalidParam("need at least two samples");
  BoundaryImage out;
  out.right.reserve(static_cast<std::size_t>(samples));
  out.left.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double y = -im_limit + 2.0 * im_limit * i / (samples - 1);
    const double x = kHalfPi - params.effective_k() / std::cosh(y);
    out.right.emplace_back(x, y);
    out.left.emplace_back(-x, y);
  }
  return out;
}

}  // namespace isolens
