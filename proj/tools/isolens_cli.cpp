// Command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "isolens/isolens.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInconsistent = 1;
constexpr int kExitInvalid = 2;

// Raised for any failure; carries the exit status.
struct Failure {
  int code;
  std::string message;
};

void check(isolens_status s) {
  if (s == ISOLENS_OK) return;
  const int code = s == ISOLENS_E_INVALID_PARAM || s == ISOLENS_E_NULL_ARGUMENT ? kExitInvalid : kExitInconsistent;
  throw Failure{code, std::string(isolens_status_name(s)) + ": " + isolens_last_error()};
}

struct Freer {
  void operator()(void* p) const { isolens_free(p); }
};
using CString = std::unique_ptr<char, Freer>;

struct LensDeleter {
  void operator()(isolens_lens* p) const { isolens_lens_destroy(p); }
};
using Lens = std::unique_ptr<isolens_lens, LensDeleter>;

isolens_complex parse_complex_flag(const std::string& text, const char* flag) {
  isolens_complex z{};
  if (isolens_parse_complex(text.c_str(), &z) != ISOLENS_OK) {
    throw Failure{kExitInvalid, std::string("--") + flag + ": " + isolens_last_error()};
  }
  return z;
}

isolens_window parse_window(const std::string& text, const char* flag) {
  std::vector<double> v;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw Failure{kExitInvalid, std::string("--") + flag + ": '" + part + "' is not a number"};
    }
  }
  if (v.size() != 4 || !(v[1] > v[0]) || !(v[3] > v[2])) {
    throw Failure{kExitInvalid, std::string("--") + flag + " expects re_min,re_max,im_min,im_max with min < max"};
  }
  return {v[0], v[1], v[2], v[3]};
}

std::string format(isolens_complex z) {
  char* raw = nullptr;
  check(isolens_format_complex(z, &raw));
  return CString(raw).get();
}

Lens make_lens(double k, isolens_complex alpha) {
  isolens_lens* raw = nullptr;
  check(isolens_lens_create(k, alpha, &raw));
  return Lens(raw);
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  check(isolens_write_file(path.c_str(), text.data(), text.size()));
}

struct Provenance {
  std::string command;
  std::string inputs;
  isolens_provenance c_view() const { return {command.c_str(), inputs.c_str()}; }
};

// Common options shared by subcommands.
struct Common {
  double k = 0.0;
  std::string alpha = "0";
  std::string w;
  std::string out;
  std::string format;
  std::uint64_t seed = 42;
  int threads = 0;
};

void add_k(CLI::App* cmd, Common& c) {
  cmd->add_option("--k", c.k, "Lens parameter k > 0")->required()->check(CLI::PositiveNumber);
}

int run_solve(const Common& c, bool oracle_check, int oracle_density, int cols, int rows) {
  const isolens_complex alpha = parse_complex_flag(c.alpha, "alpha");
  const isolens_complex w = parse_complex_flag(c.w, "w");
  const Lens lens = make_lens(c.k, alpha);
  isolens_solve_options options;
  isolens_solve_options_default(&options);
  options.rng_seed = c.seed;
  options.seed_cols = cols;
  options.seed_rows = rows;

  isolens_solve_result* raw = nullptr;
  check(isolens_solve(lens.get(), w, &options, oracle_check, oracle_density, &raw));
  const std::unique_ptr<isolens_solve_result, void (*)(isolens_solve_result*)> result(raw,
                                                                                      isolens_solve_result_destroy);
  json inputs = {{"k", c.k}, {"alpha", format(alpha)}, {"w", format(w)}, {"seed", c.seed},
                 {"seed_cols", cols}, {"seed_rows", rows}};
  if (oracle_check) inputs["oracle_density"] = oracle_density;
  const Provenance prov{"solve", inputs.dump()};
  const isolens_provenance p = prov.c_view();

  if (c.format == "json") {
    char* text = nullptr;
    check(isolens_solve_result_json(result.get(), &p, &text));
    emit(CString(text).get(), c.out);
  } else {
    std::ostringstream out;
    const std::size_t n = isolens_solve_result_count(result.get());
    out << "k = " << c.k << ", w = " << format(w) << ": " << n << " solution" << (n == 1 ? "" : "s") << '\n';
    for (std::size_t i = 0; i < n; ++i) {
      isolens_solution s{};
      check(isolens_solve_result_get(result.get(), i, &s));
      const char* o = s.orientation == ISOLENS_PRESERVING ? "preserving"
                      : s.orientation == ISOLENS_REVERSING ? "reversing"
                                                            : "degenerate";
      char line[256];
      std::snprintf(line, sizeof line, "  z = %-44s %-11s residual %.2e  J = %+.6f\n", format(s.z).c_str(), o,
                    s.residual, s.jacobian);
      out << line;
    }
    if (oracle_check) {
      out << "oracle agreement: " << (isolens_solve_result_oracle_agreement(result.get()) == 1 ? "yes" : "no") << '\n';
    }
    emit(out.str(), c.out);
  }

  if (isolens_solve_result_bound_violation(result.get()) || isolens_solve_result_oracle_agreement(result.get()) == 0) {
    json diag = {{"error", "inconsistent solve"},
                 {"bound_violation", static_cast<bool>(isolens_solve_result_bound_violation(result.get()))},
                 {"oracle_agreement", isolens_solve_result_oracle_agreement(result.get())},
                 {"inputs", json::parse(prov.inputs)}};
    std::cerr << diag.dump(2) << '\n';
    return kExitInconsistent;
  }
  return kExitOk;
}

int run_oracle(const Common& c, int density) {
  const isolens_complex alpha = parse_complex_flag(c.alpha, "alpha");
  const isolens_complex w = parse_complex_flag(c.w, "w");
  const Lens lens = make_lens(c.k, alpha);
  isolens_solve_result* raw = nullptr;
  check(isolens_oracle(lens.get(), w, density, &raw));
  const std::unique_ptr<isolens_solve_result, void (*)(isolens_solve_result*)> result(raw,
                                                                                      isolens_solve_result_destroy);
  const Provenance prov{"oracle",
                        json{{"k", c.k}, {"alpha", format(alpha)}, {"w", format(w)}, {"density", density}}.dump()};
  const isolens_provenance p = prov.c_view();
  char* text = nullptr;
  check(isolens_solve_result_json(result.get(), &p, &text));
  emit(CString(text).get(), c.out);
  return kExitOk;
}

int run_caustic(const Common& c, int samples, const std::string& view_text) {
  const isolens_window view = parse_window(view_text, "view");
  const Lens lens = make_lens(c.k, {0.0, 0.0});
  const Provenance prov{"caustic", json{{"k", c.k}, {"samples", samples}, {"view", view_text}}.dump()};
  const isolens_provenance p = prov.c_view();
  char* text = nullptr;
  if (c.format == "csv") {
    check(isolens_caustic_csv(lens.get(), samples, &p, &text));
  } else {
    check(isolens_caustic_svg(lens.get(), samples, view, &p, &text));
  }
  emit(CString(text).get(), c.out);
  return kExitOk;
}

int run_cusps(const Common& c) {
  const Lens lens = make_lens(c.k, {0.0, 0.0});
  const Provenance prov{"cusps", json{{"k", c.k}}.dump()};
  const isolens_provenance p = prov.c_view();
  char* text = nullptr;
  check(isolens_cusps_json(lens.get(), &p, &text));
  emit(CString(text).get(), c.out);
  return kExitOk;
}

int run_critical(const Common& c, int samples) {
  const Lens lens = make_lens(c.k, {0.0, 0.0});
  const Provenance prov{"critical", json{{"k", c.k}, {"samples", samples}}.dump()};
  const isolens_provenance p = prov.c_view();
  char* text = nullptr;
  check(isolens_critical_csv(lens.get(), samples, &p, &text));
  emit(CString(text).get(), c.out);
  return kExitOk;
}

int run_classify(const Common& c, bool no_solver) {
  const isolens_complex w = parse_complex_flag(c.w, "w");
  const Lens lens = make_lens(c.k, {0.0, 0.0});
  isolens_solve_options options;
  isolens_solve_options_default(&options);
  options.rng_seed = c.seed;
  isolens_region region{};
  check(isolens_classify(lens.get(), w, no_solver ? 0 : 1, &options, &region));
  const Provenance prov{"classify", json{{"k", c.k}, {"w", format(w)}, {"solver", !no_solver}, {"seed", c.seed}}.dump()};
  const isolens_provenance p = prov.c_view();
  char* text = nullptr;
  check(isolens_region_json(&region, &p, &text));
  const std::string body = CString(text).get();
  emit(body, c.out);
  if (!region.consistent) {
    std::cerr << "classifier and solver disagree:\n" << body;
    return kExitInconsistent;
  }
  return kExitOk;
}

int run_sweep(const Common& c, const std::string& window_text, int resolution, const std::string& csv,
              const std::string& svg) {
  const isolens_window window = parse_window(window_text, "window");
  const Lens lens = make_lens(c.k, {0.0, 0.0});
  isolens_sweep* raw = nullptr;
  check(isolens_sweep_run(lens.get(), window, resolution, c.threads, c.seed, &raw));
  const std::unique_ptr<isolens_sweep, void (*)(isolens_sweep*)> sweep(raw, isolens_sweep_destroy);
  const Provenance prov{"sweep", json{{"k", c.k}, {"window", window_text}, {"resolution", resolution},
                                      {"seed", c.seed}}.dump()};
  const isolens_provenance p = prov.c_view();
  char* text = nullptr;
  check(isolens_sweep_csv(sweep.get(), &p, &text));
  emit(CString(text).get(), csv.empty() && svg.empty() ? c.out : csv);
  if (!svg.empty()) {
    check(isolens_sweep_svg(sweep.get(), &p, &text));
    emit(CString(text).get(), svg);
  }
  if (!isolens_sweep_spot_checks_consistent(sweep.get())) {
    check(isolens_sweep_spot_checks_json(sweep.get(), &text));
    std::cerr << "spot checks against the solver failed:\n" << CString(text).get();
    return kExitInconsistent;
  }
  return kExitOk;
}

int run_basins(const Common& c, const std::string& view_text, int width, int height, int max_iter) {
  const isolens_complex w = parse_complex_flag(c.w, "w");
  const isolens_window view = parse_window(view_text, "view");
  if (c.out.empty() || c.out == "-") throw Failure{kExitInvalid, "basins needs --out for the PPM file"};
  const Lens lens = make_lens(c.k, {0.0, 0.0});
  isolens_basins* raw = nullptr;
  check(isolens_basins_render(lens.get(), w, view, width, height, max_iter, c.threads, &raw));
  const std::unique_ptr<isolens_basins, void (*)(isolens_basins*)> basins(raw, isolens_basins_destroy);

  uint8_t* data = nullptr;
  std::size_t size = 0;
  check(isolens_basins_ppm(basins.get(), &data, &size));
  const std::unique_ptr<uint8_t, Freer> bytes(data);
  check(isolens_write_file(c.out.c_str(), bytes.get(), size));

  // PPM has no room for metadata; provenance goes to a sidecar.
  json attractors = json::array();
  for (std::size_t i = 0; i < isolens_basins_attractor_count(basins.get()); ++i) {
    isolens_complex z{};
    check(isolens_basins_attractor(basins.get(), i, &z));
    static const char* const kNames[] = {"white", "gray", "black"};
    attractors.push_back({{"z", format(z)}, {"colour", i < 3 ? kNames[i] : "extra"}});
  }
  json side = {{"provenance",
                {{"tool", "isolens"},
                 {"version", isolens_version()},
                 {"command", "basins"},
                 {"inputs",
                  {{"k", c.k}, {"w", format(w)}, {"view", view_text}, {"width", width}, {"height", height},
                   {"max_iter", max_iter}}}}},
               {"attractors", attractors},
               {"unresolved_colour", "red"},
               {"resolved_fraction", isolens_basins_resolved_fraction(basins.get())}};
  const std::string side_text = side.dump(2) + "\n";
  check(isolens_write_file((c.out + ".json").c_str(), side_text.data(), side_text.size()));
  std::cout << "wrote " << c.out << " (" << width << "x" << height << ", " << attractors.size() << " attractors, "
            << 100.0 * isolens_basins_resolved_fraction(basins.get()) << "% resolved)\n";
  return kExitOk;
}

int run_verify(const Common& c, const std::vector<int>& criteria) {
  int all = 0;
  const auto print = [](void*, int, int, const char* line) { std::cout << line << std::endl; };
  check(isolens_acceptance_run(criteria.empty() ? nullptr : criteria.data(), criteria.size(), c.threads, c.seed,
                               print, nullptr, &all));
  return all ? kExitOk : kExitInconsistent;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Image positions, caustics and basins for the lens equation z - k/sin(conj z) = w"};
  app.set_version_flag("--version", std::string(isolens_version()));
  app.require_subcommand(1);

  Common c;
  app.add_option("--seed", c.seed, "Seed for Newton jitter and sampling")->capture_default_str();
  app.add_option("--threads", c.threads, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);

  auto* solve = app.add_subcommand("solve", "All solutions of f(z) = w in the strip");
  add_k(solve, c);
  solve->add_option("--w", c.w, "Source position, e.g. 0+0.67i")->required();
  solve->add_option("--alpha", c.alpha, "Shear (complex)")->capture_default_str();
  solve->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}))->default_val("text");
  solve->add_option("--out", c.out, "Output file (default stdout)");
  bool oracle_check = false;
  int oracle_density = 400, cols = 61, rows = 121;
  solve->add_flag("--oracle", oracle_check, "Cross-check against the grid oracle");
  solve->add_option("--oracle-density", oracle_density, "Oracle grid columns")->check(CLI::Range(4, 20000));
  solve->add_option("--seed-cols", cols, "Seed grid columns")->check(CLI::Range(2, 10000));
  solve->add_option("--seed-rows", rows, "Seed grid rows")->check(CLI::Range(2, 10000));

  auto* oracle = app.add_subcommand("oracle", "Brute-force grid oracle for f(z) = w");
  add_k(oracle, c);
  oracle->add_option("--w", c.w, "Source position")->required();
  oracle->add_option("--alpha", c.alpha, "Shear (complex)")->capture_default_str();
  int density = 2000;
  oracle->add_option("--density", density, "Grid columns (rows are twice this)")->check(CLI::Range(4, 20000));
  oracle->add_option("--out", c.out, "Output file (default stdout)");

  auto* caustic = app.add_subcommand("caustic", "Caustic and strip-edge images");
  add_k(caustic, c);
  int samples = 2048;
  std::string view = "-3,3,-3,3";
  caustic->add_option("--samples", samples, "Samples per critical arc")->check(CLI::Range(16, 1000000));
  caustic->add_option("--format", c.format, "svg or csv")->check(CLI::IsMember({"svg", "csv"}))->default_val("svg");
  caustic->add_option("--view", view, "re_min,re_max,im_min,im_max")->capture_default_str();
  caustic->add_option("--out", c.out, "Output file (default stdout)");

  auto* cusps = app.add_subcommand("cusps", "Cusp points of the caustic");
  add_k(cusps, c);
  cusps->add_option("--out", c.out, "Output file (default stdout)");

  auto* critical = app.add_subcommand("critical", "Sampled critical curve");
  add_k(critical, c);
  critical->add_option("--samples", samples, "Samples per arc")->check(CLI::Range(16, 1000000));
  critical->add_option("--out", c.out, "Output file (default stdout)");

  auto* classify = app.add_subcommand("classify", "Predict (m, n) at w from curve indices");
  add_k(classify, c);
  classify->add_option("--w", c.w, "Source position")->required();
  bool no_solver = false;
  classify->add_flag("--no-solver", no_solver, "Skip the solver cross-check");
  classify->add_option("--out", c.out, "Output file (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "Grid of (m, n) labels");
  add_k(sweep, c);
  std::string window = "-2,2,-2,2", csv, svg;
  int resolution = 101;
  sweep->add_option("--window", window, "re_min,re_max,im_min,im_max")->capture_default_str();
  sweep->add_option("--resolution", resolution, "Cells per side")->check(CLI::Range(16, 4000))->capture_default_str();
  sweep->add_option("--csv", csv, "CSV output file");
  sweep->add_option("--svg", svg, "SVG output file");

  auto* basins = app.add_subcommand("basins", "Basins of attraction as a PPM image");
  add_k(basins, c);
  basins->add_option("--w", c.w, "Source position")->required();
  std::string bview = "-3,3,-3,3";
  int width = 400, height = 400, max_iter = 500;
  basins->add_option("--view", bview, "re_min,re_max,im_min,im_max")->capture_default_str();
  basins->add_option("--width", width, "Pixels")->check(CLI::Range(1, 20000));
  basins->add_option("--height", height, "Pixels")->check(CLI::Range(1, 20000));
  basins->add_option("--max-iter", max_iter, "Iteration cap")->check(CLI::Range(1, 1000000));
  basins->add_option("--out", c.out, "PPM file (a .json sidecar is written next to it)")->required();

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  std::vector<int> criteria;
  verify->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember({"acceptance"}));
  verify->add_option("--criteria", criteria, "Subset of criteria ids")->check(CLI::Range(1, 10))->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*solve) return run_solve(c, oracle_check, oracle_density, cols, rows);
    if (*oracle) return run_oracle(c, density);
    if (*caustic) return run_caustic(c, samples, view);
    if (*cusps) return run_cusps(c);
    if (*critical) return run_critical(c, samples);
    if (*classify) return run_classify(c, no_solver);
    if (*sweep) return run_sweep(c, window, resolution, csv, svg);
    if (*basins) return run_basins(c, bview, width, height, max_iter);
    if (*verify) return run_verify(c, criteria);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  }
  return kExitInvalid;
}
