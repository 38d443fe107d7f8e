#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "isolens/isolens.h"

namespace {

// Owns a malloc'd string returned by the library.
struct Text {
  char* p = nullptr;
  ~Text() { isolens_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct Lens {
  isolens_lens* p = nullptr;
  explicit Lens(double k, isolens_complex alpha = {0.0, 0.0}) { REQUIRE(isolens_lens_create(k, alpha, &p) == ISOLENS_OK); }
  ~Lens() { isolens_lens_destroy(p); }
};

bool contains(const std::string& haystack, const char* needle) { return haystack.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(isolens_version()) == "1.0.0");
  CHECK(std::string(isolens_status_name(ISOLENS_OK)) == "ok");
  CHECK(std::string(isolens_status_name(ISOLENS_E_ON_CURVE)).size() > 0);
}

TEST_CASE("complex text") {
  isolens_complex z{};
  REQUIRE(isolens_parse_complex("-1.5+0.25i", &z) == ISOLENS_OK);
  CHECK(z.re == -1.5);
  CHECK(z.im == 0.25);
  CHECK(isolens_parse_complex("abc", &z) == ISOLENS_E_INVALID_PARAM);
  CHECK(std::strlen(isolens_last_error()) > 0);
  CHECK(isolens_parse_complex(nullptr, &z) == ISOLENS_E_NULL_ARGUMENT);
  Text t;
  REQUIRE(isolens_format_complex({0.0, 0.67}, &t.p) == ISOLENS_OK);
  CHECK(t.str() == "0+0.67000000000000004i");
}

TEST_CASE("lens creation and evaluation") {
  isolens_lens* bad = nullptr;
  CHECK(isolens_lens_create(-1.0, {0, 0}, &bad) == ISOLENS_E_INVALID_PARAM);
  CHECK(bad == nullptr);
  CHECK(isolens_lens_create(1.0, {0.0, 1.0}, &bad) == ISOLENS_E_INVALID_PARAM);
  CHECK(isolens_lens_create(1.0, {0, 0}, nullptr) == ISOLENS_E_NULL_ARGUMENT);

  Lens lens(1.0);
  isolens_complex v{};
  double jac = 0.0;
  REQUIRE(isolens_eval(lens.p, {0.0, 1.0}, &v, &jac) == ISOLENS_OK);
  CHECK(std::abs(v.im - 0.149081871760678454866) < 1e-14);
  CHECK(jac == doctest::Approx(1.0 - std::pow(std::cosh(1.0), 2) / std::pow(std::sinh(1.0), 4)).epsilon(1e-13));
  CHECK(isolens_eval(lens.p, {0.0, 0.0}, &v, &jac) == ISOLENS_E_POLE);
}

TEST_CASE("solve, oracle and json round trip") {
  Lens lens(1.92);
  isolens_solve_options o;
  isolens_solve_options_default(&o);
  CHECK(o.seed_cols == 61);
  CHECK(o.seed_rows == 121);

  isolens_solve_result* r = nullptr;
  REQUIRE(isolens_solve(lens.p, {0.0, 0.67}, &o, 1, 400, &r) == ISOLENS_OK);
  REQUIRE(isolens_solve_result_count(r) == 6);
  CHECK(isolens_solve_result_bound_violation(r) == 0);
  CHECK(isolens_solve_result_oracle_agreement(r) == 1);
  isolens_solution s{};
  REQUIRE(isolens_solve_result_get(r, 0, &s) == ISOLENS_OK);
  CHECK(std::abs(s.z.im - 1.5363458140776685929) < 1e-12);
  CHECK(s.orientation == ISOLENS_PRESERVING);
  CHECK(isolens_solve_result_get(r, 6, &s) == ISOLENS_E_INVALID_PARAM);

  const char* inputs = "{\"k\": 1.92}";
  const isolens_provenance prov{"solve", inputs};
  Text json;
  REQUIRE(isolens_solve_result_json(r, &prov, &json.p) == ISOLENS_OK);
  CHECK(contains(json.str(), "\"count\": 6"));
  CHECK(contains(json.str(), "\"provenance\""));

  isolens_solution* back = nullptr;
  size_t n = 0;
  REQUIRE(isolens_solutions_from_json(json.p, &back, &n) == ISOLENS_OK);
  REQUIRE(n == 6);
  for (size_t i = 0; i < n; ++i) {
    isolens_solution orig{};
    isolens_solve_result_get(r, i, &orig);
    CHECK(back[i].z.re == orig.z.re);
    CHECK(back[i].z.im == orig.z.im);
    CHECK(back[i].orientation == orig.orientation);
  }
  isolens_free(back);
  CHECK(isolens_solutions_from_json("{not json", &back, &n) == ISOLENS_E_INVALID_PARAM);
  isolens_solve_result_destroy(r);

  isolens_solve_result* oracle = nullptr;
  REQUIRE(isolens_oracle(lens.p, {0.0, 0.67}, 400, &oracle) == ISOLENS_OK);
  CHECK(isolens_solve_result_count(oracle) == 6);
  CHECK(isolens_solve_result_oracle_agreement(oracle) == -1);
  isolens_solve_result_destroy(oracle);
}

TEST_CASE("caustic outputs") {
  Lens lens(1.5);
  size_t cusps = 0;
  REQUIRE(isolens_cusp_count(lens.p, &cusps) == ISOLENS_OK);
  CHECK(cusps == 8);
  Text cj, crit, csv, svg;
  REQUIRE(isolens_cusps_json(lens.p, nullptr, &cj.p) == ISOLENS_OK);
  CHECK(contains(cj.str(), "\"count\": 8"));
  REQUIRE(isolens_critical_csv(lens.p, 32, nullptr, &crit.p) == ISOLENS_OK);
  CHECK(contains(crit.str(), "t,re_z,im_z,arc_id"));
  REQUIRE(isolens_caustic_csv(lens.p, 32, nullptr, &csv.p) == ISOLENS_OK);
  CHECK(contains(csv.str(), "re_image,im_image,arc_id,is_cusp"));
  REQUIRE(isolens_caustic_svg(lens.p, 64, {-2, 2, -2, 2}, nullptr, &svg.p) == ISOLENS_OK);
  CHECK(contains(svg.str(), "<svg"));
  Text none;
  CHECK(isolens_critical_csv(lens.p, 4, nullptr, &none.p) == ISOLENS_E_INVALID_PARAM);
}

TEST_CASE("indices and classification") {
  Lens lens(1.92);
  int idx = 0;
  REQUIRE(isolens_index_dminus(lens.p, {0.0, 0.67}, &idx) == ISOLENS_OK);
  CHECK(idx == -2);
  REQUIRE(isolens_index_dplus(lens.p, {0.0, 0.67}, 0.0, &idx) == ISOLENS_OK);
  CHECK(idx == 3);
  CHECK(isolens_index_dplus(lens.p, {0.0, 0.67}, 1.0, &idx) == ISOLENS_E_INVALID_PARAM);

  isolens_calibration cal{};
  REQUIRE(isolens_calibrate(&cal) == ISOLENS_OK);
  CHECK(cal.sign == 1);
  CHECK(cal.frozen_sign == 1);

  isolens_region reg{};
  REQUIRE(isolens_classify(lens.p, {0.0, 0.67}, 1, nullptr, &reg) == ISOLENS_OK);
  CHECK(reg.has_prediction == 1);
  CHECK(reg.has_solver == 1);
  CHECK(reg.m_predicted == 3);
  CHECK(reg.n_solver == 3);
  CHECK(reg.consistent == 1);
  Text j;
  REQUIRE(isolens_region_json(&reg, nullptr, &j.p) == ISOLENS_OK);
  CHECK(contains(j.str(), "\"consistent\": true"));

  REQUIRE(isolens_classify(lens.p, {0.0, 0.67}, 0, nullptr, &reg) == ISOLENS_OK);
  CHECK(reg.has_solver == 0);

  Lens sheared(1.0, {0.1, 0.0});
  CHECK(isolens_classify(sheared.p, {0.0, 0.0}, 0, nullptr, &reg) == ISOLENS_E_INVALID_PARAM);
}

TEST_CASE("on-curve index reports its own status") {
  Lens lens(1.0);
  // w = pi/2 - k lies on the image of the strip edge Re z = pi/2.
  int idx = 0;
  CHECK(isolens_index_dplus(lens.p, {1.5707963267948966 - 1.0, 0.0}, 10.0, &idx) == ISOLENS_E_ON_CURVE);
}

TEST_CASE("sweep handle") {
  Lens lens(1.1);
  isolens_sweep* s = nullptr;
  CHECK(isolens_sweep_run(lens.p, {-1, 1, -1, 1}, 4, 1, 42, &s) == ISOLENS_E_INVALID_PARAM);
  REQUIRE(isolens_sweep_run(lens.p, {-0.1, 0.1, -0.1, 0.1}, 16, 1, 42, &s) == ISOLENS_OK);
  CHECK(isolens_sweep_resolution(s) == 16);
  isolens_complex w{};
  int m = 0, n = 0, on = 0;
  REQUIRE(isolens_sweep_cell(s, 0, 0, &w, &m, &n, &on) == ISOLENS_OK);
  CHECK(w.re == -0.1);
  CHECK(w.im == -0.1);
  CHECK(m == 2);
  CHECK(n == 2);
  CHECK(on == 0);
  CHECK(isolens_sweep_cell(s, 16, 0, &w, &m, &n, &on) == ISOLENS_E_INVALID_PARAM);
  CHECK(isolens_sweep_spot_checks_consistent(s) == 1);
  Text spots, csv, svg;
  REQUIRE(isolens_sweep_spot_checks_json(s, &spots.p) == ISOLENS_OK);
  REQUIRE(isolens_sweep_csv(s, nullptr, &csv.p) == ISOLENS_OK);
  CHECK(contains(csv.str(), "re_w,im_w,m,n,on_curve"));
  REQUIRE(isolens_sweep_svg(s, nullptr, &svg.p) == ISOLENS_OK);
  CHECK(contains(svg.str(), "m/n = 2/2"));
  isolens_sweep_destroy(s);
}

TEST_CASE("basins handle") {
  Lens lens(1.92);
  isolens_basins* b = nullptr;
  REQUIRE(isolens_basins_render(lens.p, {0.0, 0.67}, {-1.5, 1.5, -2, 2}, 16, 16, 0, 1, &b) == ISOLENS_OK);
  CHECK(isolens_basins_attractor_count(b) == 3);
  isolens_complex a{};
  REQUIRE(isolens_basins_attractor(b, 0, &a) == ISOLENS_OK);
  CHECK(std::abs(a.im - 1.5363458140776685929) < 1e-12);
  CHECK(isolens_basins_attractor(b, 3, &a) == ISOLENS_E_INVALID_PARAM);
  CHECK(isolens_basins_resolved_fraction(b) > 0.9);
  CHECK(isolens_basins_label(b, -1, 0) == -1);
  int label = 7;
  REQUIRE(isolens_iterate_map(b, lens.p, {0.0, 0.67}, {0.0, 1.4}, 0, &label) == ISOLENS_OK);
  CHECK(label == 0);

  uint8_t* data = nullptr;
  size_t size = 0;
  REQUIRE(isolens_basins_ppm(b, &data, &size) == ISOLENS_OK);
  CHECK(size == 13 + 16 * 16 * 3);
  CHECK(std::memcmp(data, "P6\n16 16\n255\n", 13) == 0);
  CHECK(isolens_write_file("/nonexistent-dir/a/b.ppm", data, size) == ISOLENS_E_IO);
  isolens_free(data);
  isolens_basins_destroy(b);

  Lens far(1.0);
  CHECK(isolens_basins_render(far.p, {100.0, 0.0}, {-1.5, 1.5, -2, 2}, 8, 8, 0, 1, &b) == ISOLENS_E_INVALID_PARAM);
}

TEST_CASE("acceptance entry point") {
  std::vector<std::string> lines;
  auto cb = [](void* user, int, int, const char* line) {
    static_cast<std::vector<std::string>*>(user)->push_back(line);
  };
  const int ids[] = {1, 3};
  int all = 0;
  REQUIRE(isolens_acceptance_run(ids, 2, 1, 42, cb, &lines, &all) == ISOLENS_OK);
  CHECK(all == 1);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].rfind("PASS  1", 0) == 0);
  CHECK(lines[1].rfind("PASS  3", 0) == 0);
  const int bad[] = {11};
  CHECK(isolens_acceptance_run(bad, 1, 1, 42, cb, &lines, &all) == ISOLENS_E_INVALID_PARAM);
}

TEST_CASE("null handles are rejected without crashing") {
  CHECK(isolens_solve(nullptr, {0, 0}, nullptr, 0, 0, nullptr) == ISOLENS_E_NULL_ARGUMENT);
  CHECK(isolens_solve_result_count(nullptr) == 0);
  CHECK(isolens_sweep_resolution(nullptr) == 0);
  CHECK(isolens_basins_attractor_count(nullptr) == 0);
  isolens_lens_destroy(nullptr);
  isolens_solve_result_destroy(nullptr);
  isolens_sweep_destroy(nullptr);
  isolens_basins_destroy(nullptr);
  isolens_free(nullptr);
}
