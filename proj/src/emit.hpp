#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "basins.hpp"
#include "caustic.hpp"
#include "classifier.hpp"
#include "solver.hpp"

namespace isolens {

inline constexpr const char* kVersion = "1.0.0";

/// Inputs echoed into every emitted file. No timestamps, so output bytes are
/// a function of the inputs alone.
struct Provenance {
  std::string command;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const;
};

nlohmann::ordered_json solution_json(const Solution& s);
Solution solution_from_json(const nlohmann::ordered_json& j);

/// {k, alpha, w, solutions, count, counts_by_orientation, ...}
nlohmann::ordered_json solve_report_json(const LensParams& params, Complex w, const SolveReport& report);
/// Inverse of the `solutions` member of solve_report_json.
std::vector<Solution> solutions_from_report(const nlohmann::ordered_json& report);

nlohmann::ordered_json cusps_json(const LensParams& params, const std::vector<Cusp>& cusps);
nlohmann::ordered_json region_report_json(const RegionReport& r);

std::string critical_csv(const CriticalCurve& curve, const Provenance& prov);
std::string caustic_csv(const Caustic& caustic, const Provenance& prov);
/// Columns re_w, im_w, m, n, on_curve; m and n are empty on the curve.
std::string sweep_csv(const SweepResult& sweep, const Provenance& prov);

/// Caustic as solid lines, images of the strip edges dotted, cusps as dots.
std::string caustic_svg(const LensParams& params, const Caustic& caustic, const Window& view, const Provenance& prov);
/// One rectangle per sweep cell, filled by its (m, n) label.
std::string sweep_svg(const SweepResult& sweep, const Provenance& prov);

/// Binary P6 with header "P6\n<w> <h>\n255\n".
std::string basins_ppm(const BasinImage& image);

/// Writes bytes to path; throws IoError.
void write_file(const std::string& path, const std::string& bytes);

}  // namespace isolens
