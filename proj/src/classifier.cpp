#include "classifier.hpp"

#include <algorithm>
#include <random>

#include "errors.hpp"
#include "parallel.hpp"

namespace isolens {

Calibration calibrate_reversing_sign() {
  Calibration c;
  c.k = 1.1;
  c.w = Complex{};
  const LensParams params{c.k, {}};
  c.idx_minus = index_dminus(params, c.w);
  c.m_solver = find_all(params, c.w).counts().reversing;
  if (c.idx_minus != 0 && (1 - c.m_solver) % c.idx_minus == 0) {
    const int s = (1 - c.m_solver) / c.idx_minus;
    if (s == 1 || s == -1) c.sign = s;
  }
  return c;
}

Classifier::Classifier(const LensParams& params, int samples_per_arc) : index_(params, samples_per_arc) {
  if (params.has_shear()) throw InvalidParam("the classifier requires alpha = 0");
  if (!(params.k > 0.0)) throw InvalidParam("k must be positive");
}

RegionReport Classifier::predict(Complex w) const {
  RegionReport r;
  r.w = w;
  const WindingResult minus = index_.dminus(w);
  const WindingResult plus = index_.dplus(w, BoundaryIndex::default_clip(params(), w));
  r.curve_distance = std::min(minus.min_distance, plus.min_distance);
  r.on_curve = r.curve_distance < kOnCurveBand;
  if (r.on_curve) return r;
  r.idx_minus = minus.index;
  r.idx_plus = plus.index;
  r.m_predicted = 1 - kReversingSign * minus.index;
  r.n_predicted = plus.index;
  return r;
}

RegionReport Classifier::classify(Complex w, const SolveOptions& options) const {
  RegionReport r = predict(w);
  const OrientationCounts c = find_all(params(), w, options).counts();
  r.m_solver = c.reversing;
  r.n_solver = c.preserving;
  r.degenerate_solver = c.degenerate;
  if (!r.on_curve) {
    r.consistent = c.degenerate == 0 && *r.m_predicted == c.reversing && *r.n_predicted == c.preserving;
  }
  return r;
}

RegionReport classify(const LensParams& params, Complex w, const SolveOptions& options) {
  return Classifier(params).classify(w, options);
}

SweepResult sweep(const LensParams& params, const Window& window, int resolution, const SweepOptions& options) {
  if (resolution < 16) throw InvalidParam("sweep resolution must be at least 16");
  if (!(window.re_max > window.re_min) || !(window.im_max > window.im_min)) {
    throw InvalidParam("sweep window is empty");
  }
  const Classifier classifier(params);
  SweepResult out;
  out.k = params.k;
  out.window = window;
  out.resolution = resolution;
  out.cells.resize(static_cast<std::size_t>(resolution) * resolution);

  const double hx = (window.re_max - window.re_min) / (resolution - 1);
  const double hy = (window.im_max - window.im_min) / (resolution - 1);
  parallel_for(out.cells.size(), options.threads, [&](std::size_t n) {
    const int i = static_cast<int>(n % resolution), j = static_cast<int>(n / resolution);
    const Complex w{window.re_min + i * hx, window.im_min + j * hy};
    const RegionReport r = classifier.predict(w);
    SweepCell cell{w, -1, -1, r.on_curve};
    if (!r.on_curve) {
      cell.m = *r.m_predicted;
      cell.n = *r.n_predicted;
    }
    out.cells[n] = cell;
  });

  std::vector<std::size_t> off_curve;
  for (std::size_t n = 0; n < out.cells.size(); ++n) {
    if (!out.cells[n].on_curve) off_curve.push_back(n);
  }
  std::mt19937_64 rng(options.seed);
  const int checks = std::min<int>(options.spot_checks, static_cast<int>(off_curve.size()));
  for (int c = 0; c < checks; ++c) {
    std::uniform_int_distribution<std::size_t> pick(0, off_curve.size() - 1);
    const RegionReport r = classifier.classify(out.cells[off_curve[pick(rng)]].w, options.solve);
    out.spot_checks_consistent = out.spot_checks_consistent && r.consistent;
    out.spot_checks.push_back(r);
  }
  return out;
}

}  // namespace isolens
