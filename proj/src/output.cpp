#include "bicouple/output.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace bicouple {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps line endings platform-stable
  if (!out) throw std::runtime_error("cannot write \"" + path + "\"");
  return out;
}

}  // namespace

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_profile_csv(const std::string& path, const Grid& grid, const BiDomainState& state) {
  std::ofstream out = open_out(path);
  out << "x,value,side\n";
  const int m = grid.m;
  if (grid.kind == GridKind::Nodal) {
    for (int j = 0; j <= m; ++j)
      out << format_g17(grid.node_coord(j)) << ',' << format_g17(state.u[j]) << ",u\n";
    for (int j = 0; j <= m; ++j)
      out << format_g17(grid.node_coord(m + j)) << ',' << format_g17(state.v[j]) << ",v\n";
  } else {
    for (int j = 0; j < m; ++j)
      out << format_g17(grid.cell_center(j + 1)) << ',' << format_g17(state.u[j]) << ",u\n";
    for (int j = 0; j < m; ++j)
      out << format_g17(grid.cell_center(m + 1 + j)) << ',' << format_g17(state.v[j]) << ",v\n";
  }
}

void write_ledger_csv(const std::string& path, const MassLedger& ledger) {
  std::ofstream out = open_out(path);
  out << "step,t,C,Cbar,drift\n";
  const double c0bar = ledger.entries.empty() ? 0.0 : ledger.cbar(0);
  for (std::size_t i = 0; i < ledger.entries.size(); ++i) {
    const auto& e = ledger.entries[i];
    out << e.step << ',' << format_g17(e.t) << ',' << format_g17(e.C) << ','
        << format_g17(ledger.cbar(i)) << ',' << format_g17(ledger.cbar(i) - c0bar) << '\n';
  }
}

void write_summary_csv(const std::string& path, const std::vector<CouplingRun>& runs) {
  std::ofstream out = open_out(path);
  out << "coupling,C0bar,CTbar,abs_drift\n";
  for (const auto& r : runs)
    out << r.label << ',' << format_g17(r.c0bar) << ',' << format_g17(r.ctbar) << ','
        << format_g17(r.abs_drift) << '\n';
}

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};

struct Mapper {
  double xmin, xmax, ymin, ymax;
  double px0, px1, py0, py1;  // pixel box (py0 = top)
  double x(double v) const { return px0 + (v - xmin) / (xmax - xmin) * (px1 - px0); }
  double y(double v) const { return py1 - (v - ymin) / (ymax - ymin) * (py1 - py0); }
};

void polyline(std::ofstream& out, const Mapper& map, const std::vector<double>& xs,
              const std::vector<double>& ys, const char* color) {
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
  char buf[64];
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", map.x(xs[i]), map.y(ys[i]));
    out << buf;
  }
  out << "\"/>\n";
}

void field_coords(const CouplingRun& r, bool left, std::vector<double>& xs,
                  std::vector<double>& ys) {
  xs.clear();
  ys.clear();
  const Grid& g = r.grid;
  const auto& vals = left ? r.result.final_state.u : r.result.final_state.v;
  for (std::size_t j = 0; j < vals.size(); ++j) {
    if (g.kind == GridKind::Nodal)
      xs.push_back(g.node_coord(static_cast<int>(left ? j : g.m + j)));
    else
      xs.push_back(g.cell_center(static_cast<int>(left ? j + 1 : g.m + 1 + j)));
    ys.push_back(vals[j]);
  }
}

}  // namespace

void write_profile_svg(const std::string& path, const std::vector<CouplingRun>& runs) {
  std::ofstream out = open_out(path);
  const double W = 800, H = 520;
  Mapper map{0.0, 1.0, 0.0, 1.0, 60, W - 160, 20, H - 45};

  map.ymin = 1e300;
  map.ymax = -1e300;
  for (const auto& r : runs) {
    for (const auto* f : {&r.result.final_state.u, &r.result.final_state.v}) {
      auto [lo, hi] = std::minmax_element(f->begin(), f->end());
      map.ymin = std::min(map.ymin, *lo);
      map.ymax = std::max(map.ymax, *hi);
    }
  }
  if (map.ymin >= map.ymax) {
    map.ymin -= 0.5;
    map.ymax += 0.5;
  }
  const double pad = 0.05 * (map.ymax - map.ymin);
  map.ymin -= pad;
  map.ymax += pad;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";

  // axes and ticks
  char buf[128];
  out << "<g stroke=\"#333\" stroke-width=\"1\">\n";
  std::snprintf(buf, sizeof(buf), "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\"/>\n",
                map.px0, map.py1, map.px1, map.py1);
  out << buf;
  std::snprintf(buf, sizeof(buf), "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\"/>\n",
                map.px0, map.py0, map.px0, map.py1);
  out << buf;
  out << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = i / 4.0;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%g</text>\n", map.x(xv),
                  map.py1 + 16, xv);
    out << buf;
    const double yv = map.ymin + pad + (map.ymax - map.ymin - 2 * pad) * i / 4.0;
    std::snprintf(buf, sizeof(buf), "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">%.4g</text>\n",
                  map.px0 - 6, map.y(yv) + 4, yv);
    out << buf;
  }
  out << "</g>\n";
  // interface marker
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#bbb\" "
                "stroke-dasharray=\"4 3\"/>\n",
                map.x(0.5), map.py0, map.x(0.5), map.py1);
  out << buf;

  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
    field_coords(runs[i], true, xs, ys);
    polyline(out, map, xs, ys, color);
    field_coords(runs[i], false, xs, ys);
    polyline(out, map, xs, ys, color);
    std::snprintf(buf, sizeof(buf),
                  "<rect x=\"%.1f\" y=\"%.1f\" width=\"10\" height=\"10\" fill=\"%s\"/>\n",
                  map.px1 + 12, 24.0 + 16.0 * i, color);
    out << buf;
    out << "<text font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\" x=\""
        << map.px1 + 26 << "\" y=\"" << 33.0 + 16.0 * i << "\">" << runs[i].label << "</text>\n";
  }
  out << "</svg>\n";
}

void emit_outputs(const RunSetOutcome& outcome, const std::string& dir, bool plot) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  for (const auto& r : outcome.runs) {
    write_profile_csv((base / ("profile_" + r.label + ".csv")).string(), r.grid,
                      r.result.final_state);
    write_ledger_csv((base / ("ledger_" + r.label + ".csv")).string(), r.result.ledger);
  }
  write_summary_csv((base / "summary.csv").string(), outcome.runs);
  if (plot) write_profile_svg((base / "profile.svg").string(), outcome.runs);
}

}  // namespace bicouple
