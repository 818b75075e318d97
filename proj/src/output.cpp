// Copyright 2026 The quadref Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "quadref/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "quadref/error.hpp"

namespace quadref::output {
namespace {

std::ofstream Open(const std::string& path) {
  std::ofstream out(path, std::ios::out | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "output: cannot write " + path);
  return out;
}

void Close(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw Error(ErrorKind::kIo, "output: write failed for " + path);
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string Short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Series {
  std::string label;
  std::string color;
  std::vector<double> x, y;
};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void Add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void Pad() {
    if (!(hi > lo)) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double m = 0.05 * (hi - lo);
    lo -= m;
    hi += m;
  }
};

// Minimal line chart: frame, min/max tick labels, one polyline per series.
void LineChart(const std::string& path, const std::string& title, const std::string& xlabel,
               const std::string& ylabel, const std::vector<Series>& series) {
  constexpr double kW = 640, kH = 400, kL = 70, kR = 20, kT = 40, kB = 50;
  Range rx, ry;
  for (const auto& s : series) {
    for (double v : s.x) rx.Add(v);
    for (double v : s.y) ry.Add(v);
  }
  rx.Pad();
  ry.Pad();
  auto sx = [&](double v) { return kL + (v - rx.lo) / (rx.hi - rx.lo) * (kW - kL - kR); };
  auto sy = [&](double v) { return kH - kB - (v - ry.lo) / (ry.hi - ry.lo) * (kH - kT - kB); };

  std::ofstream out = Open(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << title << "</text>\n";
  out << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kW - kL - kR
      << "\" height=\"" << kH - kT - kB << "\" fill=\"none\" stroke=\"black\"/>\n";
  if (ry.lo < 0.0 && ry.hi > 0.0) {
    out << "<line x1=\"" << kL << "\" x2=\"" << kW - kR << "\" y1=\"" << sy(0.0)
        << "\" y2=\"" << sy(0.0) << "\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";
  }
  out << "<text x=\"" << kL << "\" y=\"" << kH - kB + 16 << "\" text-anchor=\"middle\">"
      << Short(rx.lo) << "</text>\n";
  out << "<text x=\"" << kW - kR << "\" y=\"" << kH - kB + 16 << "\" text-anchor=\"middle\">"
      << Short(rx.hi) << "</text>\n";
  out << "<text x=\"" << kL - 6 << "\" y=\"" << kH - kB << "\" text-anchor=\"end\">"
      << Short(ry.lo) << "</text>\n";
  out << "<text x=\"" << kL - 6 << "\" y=\"" << kT + 10 << "\" text-anchor=\"end\">"
      << Short(ry.hi) << "</text>\n";
  out << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12 << "\" text-anchor=\"middle\">"
      << xlabel << "</text>\n";
  out << "<text x=\"16\" y=\"" << kH / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << kH / 2 << ")\">" << ylabel << "</text>\n";
  double legend_y = kT + 16;
  for (const auto& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      out << Short(sx(s.x[i])) << ',' << Short(sy(s.y[i])) << ' ';
    }
    out << "\"/>\n";
    out << "<text x=\"" << kW - kR - 8 << "\" y=\"" << legend_y << "\" text-anchor=\"end\" fill=\""
        << s.color << "\">" << s.label << "</text>\n";
    legend_y += 16;
  }
  out << "</svg>\n";
  Close(out, path);
}

}  // namespace

const std::vector<std::string>& CsvColumns() {
  static const std::vector<std::string> kColumns = [] {
    std::vector<std::string> c = {"t",        "p_x",         "p_y",         "v_x",
                                  "v_y",      "ref_v_x",     "ref_v_y",     "zmp_x",
                                  "zmp_y",    "zmp_recon_x", "zmp_recon_y", "goal_x",
                                  "goal_y",   "status",      "window_M",    "slack_y_max"};
    for (const char* leg : {"LF", "RF", "LH", "RH"}) {
      for (const char* axis : {"x", "y", "z"}) {
        c.push_back(std::string("u_") + leg + "_" + axis);
      }
    }
    c.push_back("push_x");
    c.push_back("push_y");
    return c;
  }();
  return kColumns;
}

int StatusCode(governor::Emitted status) {
  switch (status) {
    case governor::Emitted::kHeuristic:
      return 0;
    case governor::Emitted::kOptimize:
      return 1;
    case governor::Emitted::kFallback:
      return 2;
  }
  return 2;
}

void WriteCsv(const std::vector<sim::TickRecord>& rows, const std::string& path) {
  std::ofstream out = Open(path);
  const auto& cols = CsvColumns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& r : rows) {
    out << Num(r.t) << ',' << Num(r.p.x()) << ',' << Num(r.p.y()) << ',' << Num(r.v.x())
        << ',' << Num(r.v.y()) << ',' << Num(r.ref_v.x()) << ',' << Num(r.ref_v.y()) << ','
        << Num(r.zmp.x()) << ',' << Num(r.zmp.y()) << ',' << Num(r.zmp_recon.x()) << ','
        << Num(r.zmp_recon.y()) << ',' << Num(r.goal.x()) << ',' << Num(r.goal.y()) << ','
        << StatusCode(r.status) << ',' << r.window_m << ',' << Num(r.slack_y_max);
    for (int i = 0; i < 12; ++i) out << ',' << Num(r.u(i));
    out << ',' << Num(r.push.x()) << ',' << Num(r.push.y()) << '\n';
  }
  Close(out, path);
}

void WriteMetrics(const sim::Metrics& m, const std::string& path) {
  nlohmann::ordered_json j;
  j["settling_time_s"] = m.settling_time_s ? nlohmann::ordered_json(*m.settling_time_s)
                                           : nlohmann::ordered_json(nullptr);
  j["steady_state_error_m"] = m.steady_state_error_m;
  j["max_slack_m"] = m.max_slack_m;
  j["fallback_ticks"] = m.fallback_ticks;
  j["mean_lip_solve_ms"] = m.mean_lip_solve_ms;
  j["mean_grf_solve_ms"] = m.mean_grf_solve_ms;
  j["settling_reference_s"] = m.settling_reference_s;
  j["settling_tol_m"] = m.settling_tol_m;
  std::ofstream out = Open(path);
  out << j.dump(2) << '\n';
  Close(out, path);
}

void WritePlots(const sim::TimeSeries& series, const std::string& out_dir) {
  const std::filesystem::path dir(out_dir);
  Series py{"p_y", "#1f77b4", {}, {}}, goal{"goal_y", "#d62728", {}, {}};
  Series vy{"v_y", "#1f77b4", {}, {}}, ref{"ref_v_y", "#ff7f0e", {}, {}};
  Series zmp{"ZMP", "#2ca02c", {}, {}}, com{"CoM", "#1f77b4", {}, {}};
  for (const auto& r : series.rows) {
    py.x.push_back(r.t);
    py.y.push_back(r.p.y());
    goal.x.push_back(r.t);
    goal.y.push_back(r.goal.y());
    vy.x.push_back(r.t);
    vy.y.push_back(r.v.y());
    ref.x.push_back(r.t);
    ref.y.push_back(r.ref_v.y());
    zmp.x.push_back(r.zmp.x());
    zmp.y.push_back(r.zmp.y());
    com.x.push_back(r.p.x());
    com.y.push_back(r.p.y());
  }
  LineChart((dir / "p_y.svg").string(), "Lateral CoM position", "t [s]", "p_y [m]",
            {py, goal});
  LineChart((dir / "v_y.svg").string(), "Lateral CoM velocity", "t [s]", "v_y [m/s]",
            {vy, ref});
  LineChart((dir / "zmp_xy.svg").string(), "ZMP and CoM in the plane", "x [m]", "y [m]",
            {zmp, com});
}

}  // namespace quadref::output
