#include "solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "errors.hpp"

namespace isolens {

namespace {

constexpr double kStripMargin = 0.01;
constexpr double kPoleSeedExclusion = 1e-3;
constexpr double kNewtonTolerance = 1e-12;
constexpr double kAcceptTolerance = 1e-10;
constexpr double kDedupRadius = 1e-6;

bool in_open_strip(Complex z) { return std::abs(z.real()) < kHalfPi; }

Solution make_solution(const LensParams& params, Complex target, Complex z);

// Newton stops as soon as the residual drops below tolerance; a few extra
// steps, kept only while they help, bring roots to the rounding floor.
Solution polish(const LensParams& params, Complex target, Solution s) {
  for (int i = 0; i < 3; ++i) {
    try {
      const MapJet j = jet(params, s.z);
      const Complex r = target - j.value;
      if (std::abs(j.jacobian) < kDegenerateJacobian) break;
      const Complex z = s.z + (std::conj(j.d_z) * r - j.d_zbar * std::conj(r)) / j.jacobian;
      if (!(std::abs(z.real()) < kHalfPi)) break;
      const Solution next = make_solution(params, target, z);
      if (!(next.residual < s.residual)) break;
      s = next;
    } catch (const PoleError&) {
      break;
    }
  }
  return s;
}

Solution make_solution(const LensParams& params, Complex target, Complex z) {
  const MapJet j = jet(params, z);
  return {z, orientation_of(j.jacobian), std::abs(j.value - target), j.jacobian};
}

std::vector<Solution> to_z_plane(const LensParams& params, std::vector<Solution> roots) {
  if (!params.has_shear()) return roots;
  for (auto& r : roots) r.z = params.z_from_u(r.z);
  return roots;
}

SolveReport multistart(const LensParams& params, Complex target, const SolveOptions& options) {
  if (options.seed_cols < 2 || options.seed_rows < 2) throw InvalidParam("seed grid needs at least 2x2 seeds");
  const SearchRect rect = search_rect(params, target);
  const double dx = (rect.x_max - rect.x_min) / (options.seed_cols - 1);
  const double dy = (rect.y_max - rect.y_min) / (options.seed_rows - 1);

  SolveReport report;
  std::vector<Solution> found;
  std::vector<Complex> failed;
  std::uint64_t index = 0;
  auto run = [&](Complex seed) {
    ++report.seeds_used;
    const std::uint64_t stream = options.rng_seed + 0x9E3779B97F4A7C15ull * ++index;
    auto root = newton_solve(params, target, seed, options.max_iter, stream);
    if (!root) return false;
    if (std::none_of(found.begin(), found.end(),
                     [&](const Solution& s) { return std::abs(s.z - root->z) < kDedupRadius; })) {
      found.push_back(*root);
    }
    return true;
  };

  for (int j = 0; j < options.seed_rows; ++j) {
    for (int i = 0; i < options.seed_cols; ++i) {
      const Complex seed{rect.x_min + i * dx, rect.y_min + j * dy};
      if (std::abs(seed) < kPoleSeedExclusion) continue;
      if (!run(seed)) failed.push_back(seed);
    }
  }
  // Roots near the pole satisfy z ~ -k/conj(target) and have tiny Newton
  // basins; seed them on a log-polar cluster around the pole.
  if (target != Complex{}) run(-params.effective_k() / std::conj(target));
  for (double radius = 2e-3; radius < 0.5; radius *= 1.5) {
    for (int a = 0; a < 12; ++a) run(std::polar(radius, (a + 0.5) * kPi / 6.0));
  }

  const std::size_t budget = std::min<std::size_t>(failed.size(), static_cast<std::size_t>(options.reseed_budget));
  for (std::size_t n = 0; n < budget; ++n) {
    // Spread the budget over all failures rather than the first rows.
    const Complex base = failed[n * failed.size() / budget];
    run(base + Complex{0.37 * dx, 0.41 * dy});
  }

  for (Solution& s : found) s = polish(params, target, s);
  report.solutions = dedup_roots(std::move(found));
  return report;
}

double nelder_mead_residual(const LensParams& params, Complex target, Complex z) {
  if (!in_open_strip(z)) return std::numeric_limits<double>::infinity();
  try {
    return std::abs(eval_f(params, z) - target);
  } catch (const PoleError&) {
    return std::numeric_limits<double>::infinity();
  }
}

// Derivative-free descent on |f - target| with shrinking restarts.
Complex nelder_mead(const LensParams& params, Complex target, Complex start, double initial_size) {
  Complex best = start;
  double best_value = nelder_mead_residual(params, target, best);
  double size = initial_size;
  for (int restart = 0; restart < 6 && best_value >= 1e-13; ++restart) {
    std::array<Complex, 3> p = {best, best + Complex{size, 0.0}, best + Complex{0.0, size}};
    std::array<double, 3> v{};
    for (int i = 0; i < 3; ++i) v[i] = nelder_mead_residual(params, target, p[i]);
    for (int iter = 0; iter < 600; ++iter) {
      std::array<int, 3> order = {0, 1, 2};
      std::sort(order.begin(), order.end(), [&](int a, int b) { return v[a] < v[b]; });
      const int lo = order[0], mid = order[1], hi = order[2];
      const double diameter = std::max(std::abs(p[hi] - p[lo]), std::abs(p[mid] - p[lo]));
      if (v[lo] < 1e-14 || diameter < 1e-15 * (1.0 + std::abs(p[lo]))) break;

      const Complex centroid = 0.5 * (p[lo] + p[mid]);
      const Complex reflected = centroid + (centroid - p[hi]);
      const double fr = nelder_mead_residual(params, target, reflected);
      if (fr < v[lo]) {
        const Complex expanded = centroid + 2.0 * (centroid - p[hi]);
        const double fe = nelder_mead_residual(params, target, expanded);
        if (fe < fr) {
          p[hi] = expanded, v[hi] = fe;
        } else {
          p[hi] = reflected, v[hi] = fr;
        }
        continue;
      }
      if (fr < v[mid]) {
        p[hi] = reflected, v[hi] = fr;
        continue;
      }
      const bool outside = fr < v[hi];
      const Complex contracted = outside ? centroid + 0.5 * (reflected - centroid) : centroid + 0.5 * (p[hi] - centroid);
      const double fc = nelder_mead_residual(params, target, contracted);
      if (fc < std::min(fr, v[hi])) {
        p[hi] = contracted, v[hi] = fc;
        continue;
      }
      for (int i : {mid, hi}) {
        p[i] = p[lo] + 0.5 * (p[i] - p[lo]);
        v[i] = nelder_mead_residual(params, target, p[i]);
      }
    }
    const int arg_min = static_cast<int>(std::min_element(v.begin(), v.end()) - v.begin());
    if (v[arg_min] < best_value) {
      best = p[arg_min];
      best_value = v[arg_min];
    }
    size *= 1e-2;
  }
  return best;
}

// Discrete local minima of |values| on an nx-by-ny row-major grid. Ties break
// in scan order so a plateau yields one candidate.
template <typename Value>
std::vector<std::pair<int, int>> grid_minima(int nx, int ny, Value&& value) {
  std::vector<std::pair<int, int>> out;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double v = value(i, j);
      if (!std::isfinite(v)) continue;
      bool minimum = true;
      for (int dj = -1; dj <= 1 && minimum; ++dj) {
        for (int di = -1; di <= 1; ++di) {
          if (di == 0 && dj == 0) continue;
          const int ii = i + di, jj = j + dj;
          if (ii < 0 || jj < 0 || ii >= nx || jj >= ny) continue;
          const double u = value(ii, jj);
          const bool earlier = dj < 0 || (dj == 0 && di < 0);
          if (u < v || (earlier && u == v)) {
            minimum = false;
            break;
          }
        }
      }
      if (minimum) out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace

Orientation orientation_of(double jacobian) {
  if (std::abs(jacobian) < kDegenerateJacobian) return Orientation::Degenerate;
  return jacobian > 0.0 ? Orientation::Preserving : Orientation::Reversing;
}

const char* to_string(Orientation o) {
  switch (o) {
    case Orientation::Preserving:
      return "preserving";
    case Orientation::Reversing:
      return "reversing";
    case Orientation::Degenerate:
      return "degenerate";
  }
  return "unknown";
}

OrientationCounts SolveReport::counts() const {
  OrientationCounts c;
  for (const auto& s : solutions) {
    switch (s.orientation) {
      case Orientation::Preserving:
        ++c.preserving;
        break;
      case Orientation::Reversing:
        ++c.reversing;
        break;
      case Orientation::Degenerate:
        ++c.degenerate;
        break;
    }
  }
  return c;
}

SearchRect search_rect(const LensParams& params, Complex target) {
  const double x = kHalfPi - kStripMargin;
  double y = std::max(1.0, std::abs(target) + params.effective_k()) + 0.5;
  if (params.has_shear()) {
    // |Im(u + alpha conj u)| >= |1 - |alpha|| |Im u| - |alpha| pi/2 bounds Im u.
    const double a = std::abs(params.alpha);
    y = (std::max(1.0, std::abs(target) + std::abs(params.effective_k())) + a * kHalfPi) / std::abs(1.0 - a) + 0.5;
    y = std::min(y, 60.0);
  }
  return {-x, x, -y, y};
}

std::optional<Solution> newton_solve(const LensParams& params, Complex target, Complex seed, int max_iter,
                                     std::uint64_t rng_seed) {
  if (!in_open_strip(seed) || std::abs(seed) < kPoleSeedExclusion) return std::nullopt;
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> direction(0.0, 2.0 * kPi);
  constexpr double kEdge = kHalfPi - 1e-10;

  Complex z = seed;
  int jitters = 0;
  double best = std::numeric_limits<double>::infinity();
  int since_best = 0;
  for (int iter = 0; iter <= max_iter; ++iter) {
    MapJet j;
    try {
      j = jet(params, z);
    } catch (const PoleError&) {
      return std::nullopt;
    }
    const Complex r = target - j.value;
    if (std::abs(r) < kNewtonTolerance) return make_solution(params, target, z);
    if (iter == max_iter) break;
    // Orbits that stop making progress (typically cycling on the strip edge
    // towards a root outside the strip) are abandoned.
    if (std::abs(r) < 0.9 * best) {
      best = std::abs(r);
      since_best = 0;
    } else if (++since_best > 8) {
      return std::nullopt;
    }
    if (std::abs(j.jacobian) < kDegenerateJacobian) {
      if (jitters++ == 3) return std::nullopt;
      z += std::polar(1e-4, direction(rng));
      continue;
    }
    Complex step = (std::conj(j.d_z) * r - j.d_zbar * std::conj(r)) / j.jacobian;
    if (std::abs(step) > 1.0) step /= std::abs(step);
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) {
      // Rounding floor: accept if the residual is already within tolerance.
      if (std::abs(r) < kAcceptTolerance) return make_solution(params, target, z);
      return std::nullopt;
    }
    z += step;
    z.real(std::clamp(z.real(), -kEdge, kEdge));
    if (std::abs(z.imag()) > 1e3) return std::nullopt;
  }
  return std::nullopt;
}

std::vector<Solution> dedup_roots(std::vector<Solution> roots, double radius) {
  constexpr double kOrderTieTolerance = 1e-9;
  std::sort(roots.begin(), roots.end(), [](const Solution& a, const Solution& b) { return a.residual < b.residual; });
  std::vector<Solution> kept;
  for (const auto& r : roots) {
    if (std::none_of(kept.begin(), kept.end(), [&](const Solution& k) { return std::abs(k.z - r.z) < radius; })) {
      kept.push_back(r);
    }
  }
  // Mirror-image roots agree in Im only to rounding; treat such Im as tied so
  // the order (and anything keyed on it, like basin colours) is stable.
  std::sort(kept.begin(), kept.end(), [](const Solution& a, const Solution& b) {
    if (std::abs(a.z.imag() - b.z.imag()) > kOrderTieTolerance) return a.z.imag() > b.z.imag();
    return a.z.real() < b.z.real();
  });
  return kept;
}

SolveReport find_all(const LensParams& params, Complex w, const SolveOptions& options) {
  if (!(params.k > 0.0)) throw InvalidParam("k must be positive");
  if (params.has_shear()) throw InvalidParam("find_all requires alpha = 0; use find_all_shear");
  SolveReport report = multistart(params, w, options);
  const OrientationCounts c = report.counts();
  if (c.degenerate == 0) {
    report.bound_violation = c.total() < 1 || c.total() > 6 || c.preserving > 3 || c.reversing > 3;
  }
  return report;
}

SolveReport find_all_shear(const LensParams& params, Complex w, const SolveOptions& options) {
  if (!(params.k > 0.0)) throw InvalidParam("k must be positive");
  if (std::abs(std::abs(params.alpha) - 1.0) < 1e-12) throw InvalidParam("|alpha| = 1 is not supported");
  SolveReport report = multistart(params, params.scaled_target(w), options);
  report.solutions = to_z_plane(params, std::move(report.solutions));
  return report;
}

OracleGrid::OracleGrid(const LensParams& params, const SearchRect& rect, int density)
    : params_(params), rect_(rect), nx_(density), ny_(2 * density) {
  if (density < 4) throw InvalidParam("oracle grid density must be at least 4");
  dx_ = (rect.x_max - rect.x_min) / (nx_ - 1);
  dy_ = (rect.y_max - rect.y_min) / (ny_ - 1);
  images_.resize(static_cast<std::size_t>(nx_) * ny_);
  // sin(x + iy) = sin x cosh y + i cos x sinh y separates over the grid, so
  // the trig is evaluated once per row and column.
  std::vector<double> sx(nx_), cx(nx_);
  for (int i = 0; i < nx_; ++i) {
    const double x = rect.x_min + i * dx_;
    sx[i] = std::sin(x);
    cx[i] = std::cos(x);
  }
  const double k1 = params.effective_k();
  const float nan = std::numeric_limits<float>::quiet_NaN();
  for (int j = 0; j < ny_; ++j) {
    const double y = rect.y_min + j * dy_;
    const double shy = std::sinh(y), chy = std::cosh(y);
    for (int i = 0; i < nx_; ++i) {
      const Complex z{rect.x_min + i * dx_, y};
      const Complex sin_z{sx[i] * chy, cx[i] * shy};
      const double n = std::norm(sin_z);
      std::complex<float> v{nan, nan};
      if (std::sqrt(n) >= kPoleExclusion) {
        // k1 / conj(sin z) = k1 sin z / |sin z|^2
        v = std::complex<float>(z + params.alpha * std::conj(z) - k1 * sin_z / n);
      }
      images_[static_cast<std::size_t>(j) * nx_ + i] = v;
    }
  }
}

std::vector<Solution> OracleGrid::find(Complex target) const {
  const std::complex<float> t(target);
  std::vector<float> values(images_.size());
  for (std::size_t n = 0; n < images_.size(); ++n) values[n] = std::norm(images_[n] - t);
  const auto value = [&](int i, int j) -> double { return values[static_cast<std::size_t>(j) * nx_ + i]; };

  const double spacing = std::max(dx_, dy_);
  std::vector<Solution> roots;
  auto polish = [&](Complex start, double size) {
    const Complex z = nelder_mead(params_, target, start, size);
    const double residual = nelder_mead_residual(params_, target, z);
    if (residual < kAcceptTolerance) roots.push_back(make_solution(params_, target, z));
  };

  for (const auto& [i, j] : grid_minima(nx_, ny_, value)) {
    const Complex z{rect_.x_min + i * dx_, rect_.y_min + j * dy_};
    // A root within half a cell of z keeps |f - target| below the local
    // Lipschitz bound of f times the cell size.
    double threshold = 0.05;
    try {
      threshold = std::max(threshold, spacing * (1.0 + std::abs(jet(params_, z).d_zbar)));
    } catch (const PoleError&) {
      continue;
    }
    if (value(i, j) < threshold * threshold) polish(z, 0.5 * spacing);
  }

  // Near the pole f varies like k/|z|, far faster than the grid can follow;
  // a log-polar patch covers the roots that sit there when |target| is large.
  if (rect_.x_min < 0.0 && rect_.x_max > 0.0 && rect_.y_min < 0.0 && rect_.y_max > 0.0) {
    constexpr int kRadial = 48, kAngular = 64;
    const double r_min = 1e-4, r_max = 4.0 * spacing;
    if (r_max > r_min) {
      const double ratio = std::pow(r_max / r_min, 1.0 / (kRadial - 1));
      std::vector<double> patch(kRadial * kAngular);
      std::vector<Complex> where(kRadial * kAngular);
      for (int a = 0; a < kAngular; ++a) {
        for (int r = 0; r < kRadial; ++r) {
          where[a * kRadial + r] = std::polar(r_min * std::pow(ratio, r), 2.0 * kPi * a / kAngular);
          patch[a * kRadial + r] = nelder_mead_residual(params_, target, where[a * kRadial + r]);
        }
      }
      // Angular direction wraps around; radial direction does not.
      for (int a = 0; a < kAngular; ++a) {
        for (int r = 1; r + 1 < kRadial; ++r) {
          const double v = patch[a * kRadial + r];
          bool minimum = std::isfinite(v);
          for (int da = -1; da <= 1 && minimum; ++da) {
            for (int dr = -1; dr <= 1; ++dr) {
              if (da == 0 && dr == 0) continue;
              const int aa = (a + da + kAngular) % kAngular;
              if (patch[aa * kRadial + r + dr] < v) {
                minimum = false;
                break;
              }
            }
          }
          if (minimum) polish(where[a * kRadial + r], 0.5 * std::abs(where[a * kRadial + r]) * (ratio - 1.0));
        }
      }
    }
  }

  // Roots near the critical curve come in close pairs; rescan around each on
  // a finer local grid so a partner sharing the same coarse cell is not lost.
  const std::size_t primary = roots.size();
  for (std::size_t n = 0; n < primary; ++n) {
    if (std::abs(roots[n].jacobian) > 0.25) continue;
    const Complex centre = roots[n].z;
    constexpr int kLocal = 41;
    const double radius = 3.0 * spacing;
    const double h = 2.0 * radius / (kLocal - 1);
    std::vector<double> local(kLocal * kLocal);
    for (int j = 0; j < kLocal; ++j) {
      for (int i = 0; i < kLocal; ++i) {
        local[j * kLocal + i] = nelder_mead_residual(params_, target, centre + Complex{-radius + i * h, -radius + j * h});
      }
    }
    for (const auto& [i, j] : grid_minima(kLocal, kLocal, [&](int i, int j) { return local[j * kLocal + i]; })) {
      polish(centre + Complex{-radius + i * h, -radius + j * h}, 0.5 * h);
    }
  }
  return dedup_roots(std::move(roots), kDedupRadius);
}

std::vector<Solution> oracle_find_all(const LensParams& params, Complex w, int grid_density) {
  if (!(params.k > 0.0)) throw InvalidParam("k must be positive");
  const Complex target = params.scaled_target(w);
  const OracleGrid grid(params, search_rect(params, target), grid_density);
  return to_z_plane(params, grid.find(target));
}

bool same_roots(const std::vector<Solution>& a, const std::vector<Solution>& b, double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& r : a) {
    bool matched = false;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (!used[i] && std::abs(b[i].z - r.z) < tol) {
        used[i] = matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

}  // namespace isolens
