#include "isolens/isolens.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "acceptance.hpp"
#include "basins.hpp"
#include "classifier.hpp"
#include "emit.hpp"
#include "errors.hpp"

using namespace isolens;

struct isolens_lens {
  LensParams params;
};

struct isolens_solve_result {
  LensParams params;
  Complex w;
  SolveReport report;
};

struct isolens_sweep {
  SweepResult result;
};

struct isolens_basins {
  BasinImage image;
};

namespace {

thread_local std::string last_error;

template <typename Fn>
isolens_status guard(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return ISOLENS_OK;
  } catch (const InvalidParam& e) {
    last_error = e.what();
    return ISOLENS_E_INVALID_PARAM;
  } catch (const PoleError& e) {
    last_error = e.what();
    return ISOLENS_E_POLE;
  } catch (const OnCurveError& e) {
    last_error = e.what();
    return ISOLENS_E_ON_CURVE;
  } catch (const BoundaryCase& e) {
    last_error = e.what();
    return ISOLENS_E_BOUNDARY_CASE;
  } catch (const IoError& e) {
    last_error = e.what();
    return ISOLENS_E_IO;
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("JSON: ") + e.what();
    return ISOLENS_E_INVALID_PARAM;
  } catch (const std::exception& e) {
    last_error = e.what();
    return ISOLENS_E_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return ISOLENS_E_INTERNAL;
  }
}

Complex to_cpp(isolens_complex z) { return {z.re, z.im}; }
isolens_complex to_c(Complex z) { return {z.real(), z.imag()}; }
Window to_cpp(isolens_window w) { return {w.re_min, w.re_max, w.im_min, w.im_max}; }

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

SolveOptions options_or_default(const isolens_solve_options* o) {
  SolveOptions out;
  if (o) {
    out.seed_cols = o->seed_cols;
    out.seed_rows = o->seed_rows;
    out.max_iter = o->max_iter;
    out.rng_seed = o->rng_seed;
    out.reseed_budget = o->reseed_budget;
  }
  if (out.seed_cols < 2 || out.seed_rows < 2) throw InvalidParam("seed grid needs at least 2 x 2 seeds");
  if (out.max_iter < 1) throw InvalidParam("max_iter must be positive");
  if (out.reseed_budget < 0) throw InvalidParam("reseed budget must be non-negative");
  return out;
}

Provenance to_cpp(const isolens_provenance* p) {
  Provenance out;
  if (!p) return out;
  if (p->command) out.command = p->command;
  if (p->inputs_json) {
    out.inputs = nlohmann::ordered_json::parse(p->inputs_json);
    if (!out.inputs.is_object()) throw InvalidParam("provenance inputs must be a JSON object");
  }
  return out;
}

isolens_solution to_c(const Solution& s) {
  const isolens_orientation o = s.orientation == Orientation::Preserving  ? ISOLENS_PRESERVING
                                : s.orientation == Orientation::Reversing ? ISOLENS_REVERSING
                                                                          : ISOLENS_DEGENERATE;
  return {to_c(s.z), o, s.residual, s.jacobian};
}

isolens_region to_c(const RegionReport& r) {
  isolens_region out{};
  out.w = to_c(r.w);
  out.on_curve = r.on_curve;
  out.curve_distance = r.curve_distance;
  out.has_prediction = r.m_predicted.has_value();
  out.idx_minus = r.idx_minus.value_or(0);
  out.idx_plus = r.idx_plus.value_or(0);
  out.m_predicted = r.m_predicted.value_or(-1);
  out.n_predicted = r.n_predicted.value_or(-1);
  out.has_solver = r.m_solver.has_value();
  out.m_solver = r.m_solver.value_or(-1);
  out.n_solver = r.n_solver.value_or(-1);
  out.degenerate_solver = r.degenerate_solver;
  out.consistent = r.consistent;
  return out;
}

RegionReport to_cpp(const isolens_region& r) {
  RegionReport out;
  out.w = to_cpp(r.w);
  out.on_curve = r.on_curve;
  out.curve_distance = r.curve_distance;
  if (r.has_prediction) {
    out.idx_minus = r.idx_minus;
    out.idx_plus = r.idx_plus;
    out.m_predicted = r.m_predicted;
    out.n_predicted = r.n_predicted;
  }
  if (r.has_solver) {
    out.m_solver = r.m_solver;
    out.n_solver = r.n_solver;
  }
  out.degenerate_solver = r.degenerate_solver;
  out.consistent = r.consistent;
  return out;
}

nlohmann::ordered_json with_provenance(nlohmann::ordered_json body, const isolens_provenance* p) {
  body["provenance"] = to_cpp(p).to_json();
  return body;
}

}  // namespace

extern "C" {

const char* isolens_version(void) { return kVersion; }

const char* isolens_last_error(void) { return last_error.c_str(); }

const char* isolens_status_name(isolens_status status) {
  switch (status) {
    case ISOLENS_OK: return "ok";
    case ISOLENS_E_INVALID_PARAM: return "invalid parameter";
    case ISOLENS_E_POLE: return "pole";
    case ISOLENS_E_ON_CURVE: return "on curve";
    case ISOLENS_E_BOUNDARY_CASE: return "boundary case";
    case ISOLENS_E_IO: return "i/o error";
    case ISOLENS_E_NULL_ARGUMENT: return "null argument";
    case ISOLENS_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void isolens_free(void* p) { std::free(p); }

isolens_status isolens_parse_complex(const char* text, isolens_complex* out) {
  if (!text || !out) return last_error = "text and out must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  return guard([&] { *out = to_c(parse_complex(text)); });
}

isolens_status isolens_format_complex(isolens_complex z, char** out) {
  if (!out) return last_error = "out must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  return guard([&] { *out = copy_string(format_complex(to_cpp(z))); });
}

isolens_status isolens_lens_create(double k, isolens_complex alpha, isolens_lens** out) {
  if (!out) return last_error = "out must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  *out = nullptr;
  return guard([&] { *out = new isolens_lens{LensParams::make(k, to_cpp(alpha))}; });
}

void isolens_lens_destroy(isolens_lens* lens) { delete lens; }

isolens_status isolens_eval(const isolens_lens* lens, isolens_complex z, isolens_complex* value, double* jacobian) {
  if (!lens) return last_error = "lens must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  return guard([&] {
    const MapJet j = jet(lens->params, to_cpp(z));
    if (value) *value = to_c(j.value);
    if (jacobian) *jacobian = j.jacobian;
  });
}

void isolens_solve_options_default(isolens_solve_options* out) {
  if (!out) return;
  const SolveOptions d;
  *out = {d.seed_cols, d.seed_rows, d.max_iter, d.rng_seed, d.reseed_budget};
}

isolens_status isolens_solve(const isolens_lens* lens, isolens_complex w, const isolens_solve_options* options,
                             int check_oracle, int oracle_density, isolens_solve_result** out) {
  if (!lens || !out) return last_error = "lens and out must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  *out = nullptr;
  return guard([&] {
    const SolveOptions o = options_or_default(options);
    const Complex target = to_cpp(w);
    SolveReport report =
        lens->params.has_shear() ? find_all_shear(lens->params, target, o) : find_all(lens->params, target, o);
    if (check_oracle) {
      report.oracle_agreement = same_roots(report.solutions, oracle_find_all(lens->params, target, oracle_density));
    }
    *out = new isolens_solve_result{lens->params, target, std::move(report)};
  });
}

isolens_status isolens_oracle(const isolens_lens* lens, isolens_complex w, int density, isolens_solve_result** out) {
  if (!lens || !out) return last_error = "lens and out must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  *out = nullptr;
  return guard([&] {
    SolveReport report;
    report.solutions = oracle_find_all(lens->params, to_cpp(w), density);
    *out = new isolens_solve_result{lens->params, to_cpp(w), std::move(report)};
  });
}

size_t isolens_solve_result_count(const isolens_solve_result* result) {
  return result ? result->report.solutions.size() : 0;
}

isolens_status isolens_solve_result_get(const isolens_solve_result* result, size_t index, isolens_solution* out) {
  if (!result || !out) return last_error = "result and out must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  return guard([&] {
    if (index >= result->report.solutions.size()) throw InvalidParam("solution index out of range");
    *out = to_c(result->report.solutions[index]);
  });
}

int isolens_solve_result_bound_violation(const isolens_solve_result* result) {
  return result ? result->report.bound_violation : 0;
}

int isolens_solve_result_oracle_agreement(const isolens_solve_result* result) {
  if (!result || !result->report.oracle_agreement) return -1;
  return *result->report.oracle_agreement ? 1 : 0;
}

isolens_status isolens_solve_result_json(const isolens_solve_result* result, const isolens_provenance* provenance,
                                         char** out) {
  if (!result || !out) return last_error = "result and out must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  return guard([&] {
    *out = copy_string(
        with_provenance(solve_report_json(result->params, result->w, result->report), provenance).dump(2) + "\n");
  });
}

void isolens_solve_result_destroy(isolens_solve_result* result) { delete result; }

isolens_status isolens_solutions_from_json(const char* json, isolens_solution** out, size_t* count) {
  if (!json || !out || !count) return last_error = "arguments must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  *out = nullptr;
  *count = 0;
  return guard([&] {
    const std::vector<Solution> solutions = solutions_from_report(nlohmann::ordered_json::parse(json));
    auto* buf = static_cast<isolens_solution*>(std::malloc(sizeof(isolens_solution) * (solutions.size() + 1)));
    if (!buf) throw std::bad_alloc();
    for (std::size_t i = 0; i < solutions.size(); ++i) buf[i] = to_c(solutions[i]);
    *out = buf;
    *count = solutions.size();
  });
}

isolens_status isolens_cusps_json(const isolens_lens* lens, const isolens_provenance* provenance, char** out) {
  if (!lens || !out) return last_error = "lens and out must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  return guard([&] {
    *out = copy_string(with_provenance(cusps_json(lens->params, find_cusps(lens->params)), provenance).dump(2) + "\n");
  });
}

isolens_status isolens_cusp_count(const isolens_lens* lens, size_t* out) {
  if (!lens || !out) return last_error = "lens and out must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  return guard([&] { *out = find_cusps(lens->params).size(); });
}

isolens_status isolens_critical_csv(const isolens_lens* lens, int samples_per_arc, const isolens_provenance* provenance,
                                    char** out) {
  if (!lens || !out) return last_error = "lens and out must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  return guard([&] {
    *out = copy_string(critical_csv(trace_critical(lens->params, samples_per_arc), to_cpp(provenance)));
  });
}

isolens_status isolens_caustic_csv(const isolens_lens* lens, int samples_per_arc, const isolens_provenance* provenance,
                                   char** out) {
  if (!lens || !out) return last_error = "lens and out must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  return guard([&] {
    *out = copy_string(caustic_csv(trace_caustic(lens->params, samples_per_arc), to_cpp(provenance)));
  });
}

isolens_status isolens_caustic_svg(const isolens_lens* lens, int samples_per_arc, isolens_window view,
                                   const isolens_provenance* provenance, char** out) {
  if (!lens || !out) return last_error = "lens and out must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  return guard([&] {
    const Window v = to_cpp(view);
    if (!(v.re_max > v.re_min) || !(v.im_max > v.im_min)) throw InvalidParam("view window is empty");
    *out = copy_string(
        caustic_svg(lens->params, trace_caustic(lens->params, samples_per_arc), v, to_cpp(provenance)));
  });
}

isolens_status isolens_index_dminus(const isolens_lens* lens, isolens_complex w, int* out) {
  if (!lens || !out) return last_error = "lens and out must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  return guard([&] { *out = index_dminus(lens->params, to_cpp(w)); });
}

isolens_status isolens_index_dplus(const isolens_lens* lens, isolens_complex w, double clip, int* out) {
  if (!lens || !out) return last_error = "lens and out must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  return guard([&] {
    const double c = clip > 0.0 ? clip : BoundaryIndex::default_clip(lens->params, to_cpp(w));
    *out = index_dplus(lens->params, to_cpp(w), c);
  });
}

isolens_status isolens_calibrate(isolens_calibration* out) {
  if (!out) return last_error = "out must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  return guard([&] {
    const Calibration c = calibrate_reversing_sign();
    *out = {c.k, to_c(c.w), c.idx_minus, c.m_solver, c.sign, kReversingSign};
  });
}

isolens_status isolens_classify(const isolens_lens* lens, isolens_complex w, int with_solver,
                                const isolens_solve_options* options, isolens_region* out) {
  if (!lens || !out) return last_error = "lens and out must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  return guard([&] {
    const Classifier c(lens->params);
    *out = to_c(with_solver ? c.classify(to_cpp(w), options_or_default(options)) : c.predict(to_cpp(w)));
  });
}

isolens_status isolens_region_json(const isolens_region* region, const isolens_provenance* provenance, char** out) {
  if (!region || !out) return last_error = "region and out must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  return guard([&] { *out = copy_string(with_provenance(region_report_json(to_cpp(*region)), provenance).dump(2) + "\n"); });
}

isolens_status isolens_sweep_run(const isolens_lens* lens, isolens_window window, int resolution, int threads,
                                 uint64_t seed, isolens_sweep** out) {
  if (!lens || !out) return last_error = "lens and out must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  *out = nullptr;
  return guard([&] {
    SweepOptions o;
    o.threads = threads;
    o.seed = seed;
    o.solve.rng_seed = seed;
    *out = new isolens_sweep{sweep(lens->params, to_cpp(window), resolution, o)};
  });
}

int isolens_sweep_resolution(const isolens_sweep* s) { return s ? s->result.resolution : 0; }

isolens_status isolens_sweep_cell(const isolens_sweep* s, int i, int j, isolens_complex* w, int* m, int* n,
                                  int* on_curve) {
  if (!s) return last_error = "sweep must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  return guard([&] {
    const int res = s->result.resolution;
    if (i < 0 || j < 0 || i >= res || j >= res) throw InvalidParam("sweep cell out of range");
    const SweepCell& c = s->result.at(i, j);
    if (w) *w = to_c(c.w);
    if (m) *m = c.m;
    if (n) *n = c.n;
    if (on_curve) *on_curve = c.on_curve;
  });
}

int isolens_sweep_spot_checks_consistent(const isolens_sweep* s) { return s ? s->result.spot_checks_consistent : 0; }

isolens_status isolens_sweep_spot_checks_json(const isolens_sweep* s, char** out) {
  if (!s || !out) return last_error = "sweep and out must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  return guard([&] {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : s->result.spot_checks) j.push_back(region_report_json(r));
    *out = copy_string(j.dump(2) + "\n");
  });
}

isolens_status isolens_sweep_csv(const isolens_sweep* s, const isolens_provenance* provenance, char** out) {
  if (!s || !out) return last_error = "sweep and out must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  return guard([&] { *out = copy_string(sweep_csv(s->result, to_cpp(provenance))); });
}

isolens_status isolens_sweep_svg(const isolens_sweep* s, const isolens_provenance* provenance, char** out) {
  if (!s || !out) return last_error = "sweep and out must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  return guard([&] { *out = copy_string(sweep_svg(s->result, to_cpp(provenance))); });
}

void isolens_sweep_destroy(isolens_sweep* s) { delete s; }

isolens_status isolens_basins_render(const isolens_lens* lens, isolens_complex w, isolens_window viewport, int width,
                                     int height, int max_iter, int threads, isolens_basins** out) {
  if (!lens || !out) return last_error = "lens and out must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  *out = nullptr;
  return guard([&] {
    BasinOptions o;
    if (max_iter > 0) o.max_iter = max_iter;
    o.threads = threads;
    *out = new isolens_basins{render_basins(lens->params, to_cpp(w), to_cpp(viewport), width, height, o)};
  });
}

double isolens_basins_resolved_fraction(const isolens_basins* b) { return b ? b->image.resolved_fraction() : 0.0; }

size_t isolens_basins_attractor_count(const isolens_basins* b) { return b ? b->image.attractors.size() : 0; }

isolens_status isolens_basins_attractor(const isolens_basins* b, size_t index, isolens_complex* out) {
  if (!b || !out) return last_error = "basins and out must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  return guard([&] {
    if (index >= b->image.attractors.size()) throw InvalidParam("attractor index out of range");
    *out = to_c(b->image.attractors[index]);
  });
}

int isolens_basins_label(const isolens_basins* b, int x, int y) {
  if (!b || x < 0 || y < 0 || x >= b->image.width || y >= b->image.height) return kUnresolved;
  return b->image.at(x, y);
}

isolens_status isolens_basins_ppm(const isolens_basins* b, uint8_t** data, size_t* size) {
  if (!b || !data || !size) return last_error = "arguments must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  return guard([&] {
    const std::string bytes = basins_ppm(b->image);
    auto* buf = static_cast<uint8_t*>(std::malloc(bytes.size()));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, bytes.data(), bytes.size());
    *data = buf;
    *size = bytes.size();
  });
}

void isolens_basins_destroy(isolens_basins* b) { delete b; }

isolens_status isolens_iterate_map(const isolens_basins* b, const isolens_lens* lens, isolens_complex w,
                                   isolens_complex z0, int max_iter, int* out) {
  if (!b || !lens || !out) return last_error = "arguments must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  return guard([&] {
    BasinOptions o;
    if (max_iter > 0) o.max_iter = max_iter;
    *out = iterate_map(lens->params, to_cpp(w), to_cpp(z0), b->image.attractors, o);
  });
}

isolens_status isolens_write_file(const char* path, const void* data, size_t size) {
  if (!path || (!data && size)) return last_error = "path and data must not be NULL", ISOLENS_E_NULL_ARGUMENT;
  return guard([&] { write_file(path, std::string(static_cast<const char*>(data), size)); });
}

isolens_status isolens_acceptance_run(const int* ids, size_t count, int threads, uint64_t seed,
                                      isolens_acceptance_callback callback, void* user, int* all_passed) {
  return guard([&] {
    AcceptanceOptions o;
    if (ids) o.criteria.assign(ids, ids + count);
    o.threads = threads;
    o.seed = seed;
    o.on_result = [&](const CriterionResult& r) {
      if (callback) callback(user, r.id, r.pass, format_result(r).c_str());
    };
    bool pass = true;
    for (const auto& r : run_acceptance(o)) pass = pass && r.pass;
    if (all_passed) *all_passed = pass;
  });
}

}  // extern "C"
