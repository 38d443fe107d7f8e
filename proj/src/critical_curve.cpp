#include "critical_curve.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace isolens {

namespace {

Complex positive_root(double k, double t) {
  const auto [a, b] = critical_quadratic_roots(k, t);
  return a.real() >= b.real() ? a : b;
}

Complex nearest_preimage(Complex s, Complex hint) {
  const Complex z = std::acos(s);
  return std::abs(z - hint) <= std::abs(-z - hint) ? z : -z;
}

std::vector<double> parameter_grid(double lo, double hi, int n, std::span<const double> extra) {
  std::vector<double> ts;
  ts.reserve(static_cast<std::size_t>(n) + extra.size());
  for (int i = 0; i < n; ++i) ts.push_back(lo + (hi - lo) * i / (n - 1));
  // Parameters are angles, so an extra value may fall in the range only after a turn.
  for (double t : extra) {
    for (double shifted : {t - 2.0 * kPi, t, t + 2.0 * kPi}) {
      if (shifted > lo && shifted < hi) ts.push_back(shifted);
    }
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end(), [](double a, double b) { return std::abs(a - b) < 1e-13; }),
           ts.end());
  return ts;
}

// Follows one branch of +-arccos(s(t)) by nearest-neighbour continuation
// outward from the sample nearest a reference point known exactly.
std::vector<CurveSample> follow(double k, const std::vector<double>& ts, double t_ref, Complex z_ref,
                                bool open_ends) {
  std::vector<CurveSample> out(ts.size());
  const auto ref_it = std::lower_bound(ts.begin(), ts.end(), t_ref - 1e-13);
  const auto ref = static_cast<std::size_t>(ref_it - ts.begin());
  const std::size_t first = open_ends ? 1 : 0;
  const std::size_t last = open_ends ? ts.size() - 2 : ts.size() - 1;

  out[ref] = {ts[ref], nearest_preimage(positive_root(k, ts[ref]), z_ref)};
  for (std::size_t i = ref + 1; i <= last; ++i) {
    out[i] = {ts[i], nearest_preimage(positive_root(k, ts[i]), out[i - 1].z)};
  }
  for (std::size_t i = ref; i-- > first;) {
    out[i] = {ts[i], nearest_preimage(positive_root(k, ts[i]), out[i + 1].z)};
  }
  return out;
}

std::vector<CurveSample> negated(const std::vector<CurveSample>& arc) {
  std::vector<CurveSample> out = arc;
  for (auto& s : out) s.z = -s.z;
  return out;
}

}  // namespace

std::pair<Complex, Complex> critical_quadratic_roots(double k, double t) {
  const Complex b = k * std::polar(1.0, t);
  const Complex root = std::sqrt(b * b + 4.0);
  // Product of the roots is -1; use the numerically larger one to get the other.
  const Complex big = (std::abs(-b + root) >= std::abs(-b - root)) ? (-b + root) / 2.0 : (-b - root) / 2.0;
  return {big, -1.0 / big};
}

Complex critical_discriminant(double k, double t) { return k * k * std::polar(1.0, 2.0 * t) + 4.0; }

Complex critical_s(const LensParams& params, double t) {
  if (params.k <= 0.0) throw InvalidParam("k must be positive");
  const Complex s = positive_root(params.k, t);
  if (std::abs(s.real()) < 1e-12) {
    throw BoundaryCase("critical point at t = " + std::to_string(t) + " lies on the strip boundary");
  }
  return s;
}

Complex critical_point_near(double k, double t, Complex hint) {
  return nearest_preimage(positive_root(k, t), hint);
}

StripEndpoints strip_endpoints(const LensParams& params) {
  const double k = params.k;
  if (!(k >= 2.0)) throw InvalidParam("strip endpoints exist only for k >= 2");
  const double root = std::sqrt(std::max(0.0, k * k / 4.0 - 1.0));
  const double upper = k / 2.0 + root;
  const double lower = 1.0 / upper;  // k/2 - root without cancellation
  StripEndpoints e;
  e.t0 = std::asinh(lower);
  e.t1 = std::asinh(upper);
  e.v1 = Complex{-kHalfPi, -e.t0};
  e.v2 = Complex{-kHalfPi, -e.t1};
  return e;
}

CriticalCurve trace_critical(const LensParams& params, int samples_per_arc, std::span<const double> extra_t) {
  if (!(params.k > 0.0)) throw InvalidParam("k must be positive");
  if (params.has_shear()) throw InvalidParam("critical curve tracing requires alpha = 0");
  if (samples_per_arc < 16) throw InvalidParam("samples_per_arc must be at least 16");

  const double k = params.k;
  const double half = k / 2.0;
  const double root = std::sqrt(half * half + 1.0);
  const Complex z_real{std::acos(root - half), 0.0};          // cusp on the positive real axis
  const Complex z_imag{0.0, std::acosh(half + root)};         // cusp on the positive imaginary axis

  CriticalCurve curve;
  curve.k = k;

  if (k < 2.0) {
    curve.topology = CurveTopology::OneLoop;
    const auto ts = parameter_grid(-kPi, kPi, samples_per_arc, extra_t);
    const auto right = follow(k, ts, 0.0, z_real, false);
    CriticalArc loop;
    loop.closed = true;
    loop.samples = right;
    const auto left = negated(right);
    for (std::size_t i = 1; i < left.size(); ++i) {
      loop.samples.push_back({left[i].t + 2.0 * kPi, left[i].z});
    }
    curve.arcs.push_back(std::move(loop));
    return curve;
  }

  curve.topology = CurveTopology::FourArcs;
  const StripEndpoints e = strip_endpoints(params);
  curve.endpoints = e;
  // The right arc ends at pi/2 +- i t0, the top arc at +-pi/2 + i t1.
  auto open_arc = [&](double lo, double hi, double t_ref, Complex z_ref, Complex end_a, Complex end_b) {
    const auto ts = parameter_grid(lo, hi, samples_per_arc, extra_t);
    auto samples = follow(k, ts, t_ref, z_ref, true);
    auto snap = [&](Complex near) { return std::abs(end_a - near) <= std::abs(end_b - near) ? end_a : end_b; };
    samples.front() = {ts.front(), snap(samples[1].z)};
    samples.back() = {ts.back(), snap(samples[samples.size() - 2].z)};
    return samples;
  };

  const auto right =
      open_arc(-kHalfPi, kHalfPi, 0.0, z_real, Complex{kHalfPi, -e.t0}, Complex{kHalfPi, e.t0});
  const auto top =
      open_arc(kHalfPi, 3.0 * kHalfPi, kPi, z_imag, Complex{kHalfPi, e.t1}, Complex{-kHalfPi, e.t1});
  curve.arcs.push_back({right, false});
  curve.arcs.push_back({top, false});
  curve.arcs.push_back({negated(right), false});
  curve.arcs.push_back({negated(top), false});
  return curve;
}

}  // namespace isolens
