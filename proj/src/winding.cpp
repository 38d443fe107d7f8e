#include "winding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace isolens {

namespace {

double segment_distance(Complex p, Complex a, Complex b) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  const double u = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + u * d));
}

struct Accumulator {
  Complex w;
  double resolution;
  double angle = 0.0;
  double min_distance = std::numeric_limits<double>::infinity();
};

void accumulate(const RefinablePiece& piece, const CurvePoint& a, const CurvePoint& b, Accumulator& acc,
                int depth) {
  const Complex da = a.image - acc.w;
  const Complex db = b.image - acc.w;
  const double len = std::abs(b.image - a.image);
  const double dist = segment_distance(acc.w, a.image, b.image);
  if (len == 0.0) {
    acc.min_distance = std::min(acc.min_distance, dist);
    return;
  }
  const double swept = std::arg(db / da);
  const bool coarse = std::abs(swept) > kPi / 4.0 || dist < len;
  if (coarse && len > acc.resolution && depth < 64 && piece.refine) {
    const CurvePoint m = piece.refine(0.5 * (a.tau + b.tau), 0.5 * (a.z + b.z));
    accumulate(piece, a, m, acc, depth + 1);
    accumulate(piece, m, b, acc, depth + 1);
    return;
  }
  acc.min_distance = std::min(acc.min_distance, dist);
  if (dist > 0.0) acc.angle += swept;
}

}  // namespace

int winding_number(const OrientedLoop& loop, Complex w) {
  const auto& p = loop.points;
  if (p.size() < 8) throw InvalidParam("oriented loop needs at least 8 points");
  if (p.front() != p.back()) throw InvalidParam("oriented loop must be closed");
  double angle = 0.0;
  double min_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    min_distance = std::min(min_distance, segment_distance(w, p[i], p[i + 1]));
    if (p[i] != p[i + 1]) angle += std::arg((p[i + 1] - w) / (p[i] - w));
  }
  if (min_distance < kOnCurveDistance) {
    throw OnCurveError("winding number undefined: point lies on the curve", min_distance);
  }
  return static_cast<int>(std::lround(angle / (2.0 * kPi)));
}

WindingResult winding_number(std::span<const RefinablePiece> chain, Complex w, double resolution) {
  Accumulator acc{w, resolution};
  const CurvePoint* previous = nullptr;
  for (const auto& piece : chain) {
    if (piece.samples.empty()) continue;
    if (previous != nullptr) {
      // Joints between pieces are straight links (normally of zero length).
      accumulate(RefinablePiece{}, *previous, piece.samples.front(), acc, 0);
    }
    for (std::size_t i = 0; i + 1 < piece.samples.size(); ++i) {
      accumulate(piece, piece.samples[i], piece.samples[i + 1], acc, 0);
    }
    previous = &piece.samples.back();
  }
  if (previous != nullptr) accumulate(RefinablePiece{}, *previous, chain.front().samples.front(), acc, 0);
  return {static_cast<int>(std::lround(acc.angle / (2.0 * kPi))), acc.min_distance};
}

BoundaryIndex::BoundaryIndex(const LensParams& params, int samples_per_arc)
    : params_(params), curve_(trace_critical(params, samples_per_arc)), samples_(samples_per_arc) {
  if (curve_.topology == CurveTopology::OneLoop) {
    dminus_.push_back(critical_piece(0, false));
    return;
  }
  // Counterclockwise around the pole: right arc, right line up to the top
  // arc, top arc, left line down, left arc, left line down, bottom arc,
  // right line up.
  const StripEndpoints e = *curve_.endpoints;
  dminus_.push_back(critical_piece(0, false));
  dminus_.push_back(line_piece(kHalfPi, e.t0, e.t1));
  dminus_.push_back(critical_piece(1, false));
  dminus_.push_back(line_piece(-kHalfPi, e.t1, e.t0));
  dminus_.push_back(critical_piece(2, false));
  dminus_.push_back(line_piece(-kHalfPi, -e.t0, -e.t1));
  dminus_.push_back(critical_piece(3, false));
  dminus_.push_back(line_piece(kHalfPi, -e.t1, -e.t0));
}

double BoundaryIndex::default_clip(const LensParams& params, Complex w) {
  return std::max(10.0, std::abs(w) + params.k + 5.0);
}

std::vector<std::vector<RefinablePiece>> BoundaryIndex::dplus_chains(double clip) const {
  std::vector<std::vector<RefinablePiece>> chains;
  if (curve_.topology == CurveTopology::OneLoop) {
    chains.push_back({line_piece(kHalfPi, -clip, clip), horizontal_piece(clip, kHalfPi, -kHalfPi),
                      line_piece(-kHalfPi, clip, -clip), horizontal_piece(-clip, -kHalfPi, kHalfPi)});
    chains.push_back({critical_piece(0, true)});
    return chains;
  }
  const StripEndpoints e = *curve_.endpoints;
  chains.push_back({line_piece(kHalfPi, -e.t0, e.t0), critical_piece(0, true)});
  chains.push_back({line_piece(-kHalfPi, e.t0, -e.t0), critical_piece(2, true)});
  chains.push_back({line_piece(kHalfPi, e.t1, clip), horizontal_piece(clip, kHalfPi, -kHalfPi),
                    line_piece(-kHalfPi, clip, e.t1), critical_piece(1, true)});
  chains.push_back({line_piece(-kHalfPi, -e.t1, -clip), horizontal_piece(-clip, -kHalfPi, kHalfPi),
                    line_piece(kHalfPi, -clip, -e.t1), critical_piece(3, true)});
  return chains;
}

WindingResult BoundaryIndex::dminus(Complex w) const { return winding_number(dminus_, w); }

WindingResult BoundaryIndex::dplus(Complex w, double clip) const {
  if (!(std::abs(w) < clip - params_.k - 1.0)) {
    throw InvalidParam("clip height too small for this query point");
  }
  WindingResult total{0, std::numeric_limits<double>::infinity()};
  for (const auto& chain : dplus_chains(clip)) {
    const WindingResult r = winding_number(chain, w);
    total.index += r.index;
    total.min_distance = std::min(total.min_distance, r.min_distance);
  }
  return total;
}

RefinablePiece BoundaryIndex::line_piece(double x, double y_from, double y_to) const {
  RefinablePiece piece;
  const LensParams params = params_;
  piece.refine = [params, x, y_from, y_to](double tau, Complex) {
    const Complex z{x, y_from + tau * (y_to - y_from)};
    return CurvePoint{tau, z, eval_f(params, z)};
  };
  if (y_from == y_to) return piece;
  const int n = std::max(16, static_cast<int>(std::ceil(std::abs(y_to - y_from) * 32.0)));
  for (int i = 0; i <= n; ++i) piece.samples.push_back(piece.refine(static_cast<double>(i) / n, {}));
  return piece;
}

RefinablePiece BoundaryIndex::horizontal_piece(double y, double x_from, double x_to) const {
  RefinablePiece piece;
  const LensParams params = params_;
  piece.refine = [params, y, x_from, x_to](double tau, Complex) {
    const Complex z{x_from + tau * (x_to - x_from), y};
    return CurvePoint{tau, z, eval_f(params, z)};
  };
  for (int i = 0; i <= 32; ++i) piece.samples.push_back(piece.refine(i / 32.0, {}));
  return piece;
}

RefinablePiece BoundaryIndex::critical_piece(std::size_t arc, bool reversed) const {
  RefinablePiece piece;
  const LensParams params = params_;
  piece.refine = [params](double t, Complex hint) {
    const Complex z = critical_point_near(params.k, t, hint);
    return CurvePoint{t, z, eval_f(params, z)};
  };
  const auto& samples = curve_.arcs.at(arc).samples;
  piece.samples.reserve(samples.size());
  for (const auto& s : samples) piece.samples.push_back({s.t, s.z, eval_f(params_, s.z)});
  if (reversed) std::reverse(piece.samples.begin(), piece.samples.end());
  return piece;
}

int index_dminus(const LensParams& params, Complex w) {
  const WindingResult r = BoundaryIndex(params).dminus(w);
  if (r.min_distance < kOnCurveDistance) throw OnCurveError("w lies on f(boundary of D-)", r.min_distance);
  return r.index;
}

int index_dplus(const LensParams& params, Complex w, double clip) {
  const WindingResult r = BoundaryIndex(params).dplus(w, clip);
  if (r.min_distance < kOnCurveDistance) throw OnCurveError("w lies on f(boundary of D+)", r.min_distance);
  return r.index;
}

}  // namespace isolens
