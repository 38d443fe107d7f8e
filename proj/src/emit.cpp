#include "emit.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "errors.hpp"

namespace isolens {

namespace {

using json = nlohmann::ordered_json;

std::string num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Orientation orientation_from_string(const std::string& s) {
  if (s == "preserving") return Orientation::Preserving;
  if (s == "reversing") return Orientation::Reversing;
  if (s == "degenerate") return Orientation::Degenerate;
  throw InvalidParam("unknown orientation '" + s + "'");
}

std::string csv_header(const Provenance& prov) { return "# " + prov.to_json().dump() + "\n"; }

// Escapes the provenance JSON for an SVG text node.
std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

// Maps the plane window onto a square canvas, Im up.
struct Canvas {
  Window view;
  double size = 800.0;
  double x(double re) const { return (re - view.re_min) / (view.re_max - view.re_min) * size; }
  double y(double im) const { return (view.im_max - im) / (view.im_max - view.im_min) * size; }
};

std::string svg_open(const Canvas& c, const Provenance& prov) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(c.size, 0) << "\" height=\"" << num(c.size, 0)
      << "\" viewBox=\"0 0 " << num(c.size, 0) << ' ' << num(c.size, 0) << "\">\n";
  out << "<metadata>" << xml_escape(prov.to_json().dump()) << "</metadata>\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return out.str();
}

std::string polyline(const Canvas& c, const std::vector<Complex>& pts, const std::string& style) {
  std::ostringstream out;
  out << "<polyline fill=\"none\" " << style << " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out << ' ';
    out << num(c.x(pts[i].real()), 2) << ',' << num(c.y(pts[i].imag()), 2);
  }
  out << "\"/>\n";
  return out.str();
}

}  // namespace

json Provenance::to_json() const {
  json j;
  j["tool"] = "isolens";
  j["version"] = kVersion;
  j["command"] = command;
  j["inputs"] = inputs;
  return j;
}

json solution_json(const Solution& s) {
  json j;
  j["z"] = format_complex(s.z);
  j["orientation"] = to_string(s.orientation);
  j["residual"] = s.residual;
  j["jacobian"] = s.jacobian;
  return j;
}

Solution solution_from_json(const json& j) {
  try {
    Solution s;
    s.z = parse_complex(j.at("z").get<std::string>());
    s.orientation = orientation_from_string(j.at("orientation").get<std::string>());
    s.residual = j.at("residual").get<double>();
    s.jacobian = j.at("jacobian").get<double>();
    return s;
  } catch (const json::exception& e) {
    throw InvalidParam(std::string("malformed solution record: ") + e.what());
  }
}

json solve_report_json(const LensParams& params, Complex w, const SolveReport& report) {
  json j;
  j["k"] = params.k;
  j["alpha"] = format_complex(params.alpha);
  j["w"] = format_complex(w);
  j["solutions"] = json::array();
  for (const auto& s : report.solutions) j["solutions"].push_back(solution_json(s));
  j["count"] = report.solutions.size();
  const OrientationCounts c = report.counts();
  j["counts_by_orientation"] = {{"preserving", c.preserving}, {"reversing", c.reversing}, {"degenerate", c.degenerate}};
  j["seeds_used"] = report.seeds_used;
  j["oracle_agreement"] = report.oracle_agreement ? json(*report.oracle_agreement) : json(nullptr);
  j["bound_violation"] = report.bound_violation;
  return j;
}

std::vector<Solution> solutions_from_report(const json& report) {
  if (!report.contains("solutions") || !report["solutions"].is_array()) {
    throw InvalidParam("report has no solutions array");
  }
  std::vector<Solution> out;
  for (const auto& s : report["solutions"]) out.push_back(solution_from_json(s));
  return out;
}

json cusps_json(const LensParams& params, const std::vector<Cusp>& cusps) {
  json j;
  j["k"] = params.k;
  j["count"] = cusps.size();
  j["cusps"] = json::array();
  for (const auto& c : cusps) {
    const char* family = c.family == CuspFamily::AxisReal ? "axis-real"
                         : c.family == CuspFamily::AxisImag ? "axis-imag"
                                                            : "oblique";
    j["cusps"].push_back({{"z", format_complex(c.z)},
                          {"image", format_complex(c.image)},
                          {"family", family},
                          {"t", c.t},
                          {"s", format_complex(c.s)},
                          {"r", c.r}});
  }
  return j;
}

json region_report_json(const RegionReport& r) {
  const auto opt = [](const std::optional<int>& v) { return v ? json(*v) : json(nullptr); };
  json j;
  j["w"] = format_complex(r.w);
  j["on_curve"] = r.on_curve;
  j["curve_distance"] = r.curve_distance;
  j["idx_minus"] = opt(r.idx_minus);
  j["idx_plus"] = opt(r.idx_plus);
  j["m_predicted"] = opt(r.m_predicted);
  j["n_predicted"] = opt(r.n_predicted);
  j["m_solver"] = opt(r.m_solver);
  j["n_solver"] = opt(r.n_solver);
  j["degenerate_solver"] = r.degenerate_solver;
  j["consistent"] = r.consistent;
  return j;
}

std::string critical_csv(const CriticalCurve& curve, const Provenance& prov) {
  std::string out = csv_header(prov) + "t,re_z,im_z,arc_id\n";
  for (std::size_t a = 0; a < curve.arcs.size(); ++a) {
    for (const auto& s : curve.arcs[a].samples) {
      out += full(s.t) + ',' + full(s.z.real()) + ',' + full(s.z.imag()) + ',' + std::to_string(a) + '\n';
    }
  }
  return out;
}

std::string caustic_csv(const Caustic& caustic, const Provenance& prov) {
  std::string out = csv_header(prov) + "t,re_z,im_z,re_image,im_image,arc_id,is_cusp\n";
  for (std::size_t a = 0; a < caustic.arcs.size(); ++a) {
    for (const auto& s : caustic.arcs[a].samples) {
      out += full(s.t) + ',' + full(s.z.real()) + ',' + full(s.z.imag()) + ',' + full(s.image.real()) + ',' +
             full(s.image.imag()) + ',' + std::to_string(a) + ',' + (s.is_cusp ? "1" : "0") + '\n';
    }
  }
  return out;
}

std::string sweep_csv(const SweepResult& sweep, const Provenance& prov) {
  std::string out = csv_header(prov) + "re_w,im_w,m,n,on_curve\n";
  for (const auto& c : sweep.cells) {
    out += full(c.w.real()) + ',' + full(c.w.imag()) + ',';
    out += c.on_curve ? std::string(",") : std::to_string(c.m) + ',' + std::to_string(c.n);
    out += c.on_curve ? ",1\n" : ",0\n";
  }
  return out;
}

std::string caustic_svg(const LensParams& params, const Caustic& caustic, const Window& view, const Provenance& prov) {
  const Canvas c{view};
  std::string out = svg_open(c, prov);
  const double im_limit = std::max(std::abs(view.im_min), std::abs(view.im_max)) + 1.0;
  const BoundaryImage edges = boundary_image(params, im_limit, 801);
  const std::string dotted = "stroke=\"#555\" stroke-width=\"1.5\" stroke-dasharray=\"2,4\"";
  out += polyline(c, edges.right, dotted);
  out += polyline(c, edges.left, dotted);
  for (const auto& arc : caustic.arcs) {
    std::vector<Complex> pts;
    pts.reserve(arc.samples.size());
    for (const auto& s : arc.samples) pts.push_back(s.image);
    out += polyline(c, pts, "stroke=\"black\" stroke-width=\"1.5\"");
  }
  for (const auto& cusp : caustic.cusps) {
    out += "<circle cx=\"" + num(c.x(cusp.image.real()), 2) + "\" cy=\"" + num(c.y(cusp.image.imag()), 2) +
           "\" r=\"3\" fill=\"#c03030\"/>\n";
  }
  out += "<text x=\"10\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">k = " + full(params.k) + "</text>\n";
  return out + "</svg>\n";
}

std::string sweep_svg(const SweepResult& sweep, const Provenance& prov) {
  // Hue by total count, lightness by the reversing share.
  static const std::map<int, std::string> kTotalColour = {
      {1, "#f2f0e6"}, {2, "#c8dcef"}, {3, "#9cc9a0"}, {4, "#f0c36d"}, {5, "#e07b54"}, {6, "#a23b72"}};
  const Canvas c{sweep.window};
  std::string out = svg_open(c, prov);
  const int res = sweep.resolution;
  const double cw = c.size / res;
  std::map<std::pair<int, int>, std::string> legend;
  for (int j = 0; j < res; ++j) {
    for (int i = 0; i < res; ++i) {
      const SweepCell& cell = sweep.at(i, j);
      std::string fill = "#000000";
      if (!cell.on_curve) {
        const auto it = kTotalColour.find(cell.m + cell.n);
        fill = it == kTotalColour.end() ? "#ff00ff" : it->second;
        legend[{cell.m, cell.n}] = fill;
      }
      // Row j sits at im_min + j*h, drawn with Im increasing upwards.
      out += "<rect x=\"" + num(i * cw, 2) + "\" y=\"" + num((res - 1 - j) * cw, 2) + "\" width=\"" + num(cw, 2) +
             "\" height=\"" + num(cw, 2) + "\" fill=\"" + fill + "\"/>\n";
    }
  }
  int row = 0;
  for (const auto& [mn, fill] : legend) {
    const double y = 20.0 + 18.0 * row++;
    out += "<rect x=\"10\" y=\"" + num(y - 11, 0) + "\" width=\"12\" height=\"12\" fill=\"" + fill +
           "\" stroke=\"black\"/>\n";
    out += "<text x=\"28\" y=\"" + num(y, 0) + "\" font-family=\"sans-serif\" font-size=\"13\">m/n = " +
           std::to_string(mn.first) + "/" + std::to_string(mn.second) + "</text>\n";
  }
  return out + "</svg>\n";
}

std::string basins_ppm(const BasinImage& image) {
  std::string out = "P6\n" + std::to_string(image.width) + ' ' + std::to_string(image.height) + "\n255\n";
  out.reserve(out.size() + image.labels.size() * 3);
  for (int label : image.labels) {
    const auto rgb = basin_colour(label);
    out.append(reinterpret_cast<const char*>(rgb.data()), 3);
  }
  return out;
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw IoError("failed writing '" + path + "'");
}

}  // namespace isolens
