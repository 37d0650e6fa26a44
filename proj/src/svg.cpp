// Copyright 2026 The psin Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "psin/sweep.hpp"

namespace psin {

namespace {

constexpr double kPanelWidth = 640.0;
constexpr double kPanelHeight = 400.0;
constexpr double kMargin = 56.0;
// Curves are clipped here; deep terms for large N fall far below anything readable.
constexpr double kLog10Floor = -40.0;
// Terms drawn for each N besides the last one.
constexpr std::uint32_t kLeadingTerms = 5;

constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct Point {
  double log_m;
  double log_value;
};

bool drawn(const std::string& series, std::uint32_t n) {
  if (!series.starts_with("term:")) return true;
  const auto k = static_cast<std::uint32_t>(std::stoul(series.substr(5)));
  return k <= kLeadingTerms || k == n;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

const char* colour_for(const std::string& series, std::size_t index) {
  if (series == "baseline:1_over_M") return "#000000";
  if (series == "baseline:N_over_M") return "#7f7f7f";
  return kPalette[index % kPalette.size()];
}

}  // namespace

void write_curves_svg(std::ostream& out, std::span<const CurveRow> rows) {
  // N -> series -> points, series kept in first-seen order.
  std::map<std::uint32_t, std::vector<std::pair<std::string, std::vector<Point>>>> panels;
  for (const auto& r : rows) {
    if (!drawn(r.series, r.n) || r.value.is_zero()) continue;
    auto& panel = panels[r.n];
    auto it = std::find_if(panel.begin(), panel.end(), [&](const auto& s) { return s.first == r.series; });
    if (it == panel.end()) {
      panel.emplace_back(r.series, std::vector<Point>{});
      it = std::prev(panel.end());
    }
    it->second.push_back({std::log10(static_cast<double>(r.m)), r.value.log10_value()});
  }

  const double height = kPanelHeight * static_cast<double>(std::max<std::size_t>(panels.size(), 1));
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kPanelWidth) << "\" height=\"" << num(height)
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  double top = 0.0;
  for (const auto& [n, series] : panels) {
    double x_lo = INFINITY, x_hi = -INFINITY, y_lo = 0.0, y_hi = -INFINITY;
    for (const auto& [name, points] : series) {
      for (const auto& p : points) {
        x_lo = std::min(x_lo, p.log_m);
        x_hi = std::max(x_hi, p.log_m);
        y_lo = std::min(y_lo, std::max(p.log_value, kLog10Floor));
        y_hi = std::max(y_hi, p.log_value);
      }
    }
    y_lo = std::floor(y_lo);
    y_hi = std::ceil(std::max(y_hi, y_lo + 1.0));
    if (x_hi <= x_lo) x_hi = x_lo + 1.0;
    const double plot_w = kPanelWidth - 2 * kMargin;
    const double plot_h = kPanelHeight - 2 * kMargin;
    const auto sx = [&](double x) { return kMargin + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    const auto sy = [&](double y) { return top + kMargin + (y_hi - std::max(y, y_lo)) / (y_hi - y_lo) * plot_h; };

    out << "<g>\n<text x=\"" << num(kMargin) << "\" y=\"" << num(top + kMargin - 16) << "\">N = " << n
        << " (log10 value vs log10 M)</text>\n";
    out << "<rect x=\"" << num(kMargin) << "\" y=\"" << num(top + kMargin) << "\" width=\"" << num(plot_w)
        << "\" height=\"" << num(plot_h) << "\" fill=\"none\" stroke=\"#000\"/>\n";
    for (double t = std::ceil(x_lo); t <= x_hi; t += 1.0) {
      out << "<text x=\"" << num(sx(t)) << "\" y=\"" << num(top + kPanelHeight - kMargin + 14)
          << "\" text-anchor=\"middle\">1e" << static_cast<int>(t) << "</text>\n";
    }
    const double y_step = std::max(1.0, std::ceil((y_hi - y_lo) / 8.0));
    for (double t = y_hi; t >= y_lo; t -= y_step) {
      out << "<text x=\"" << num(kMargin - 4) << "\" y=\"" << num(sy(t) + 4) << "\" text-anchor=\"end\">1e"
          << static_cast<int>(t) << "</text>\n";
    }
    std::size_t term_index = 0;
    for (const auto& [name, points] : series) {
      const bool is_term = name.starts_with("term:");
      out << "<polyline fill=\"none\" stroke=\"" << colour_for(name, is_term ? term_index++ : 0) << "\"";
      if (name.starts_with("baseline:")) out << " stroke-dasharray=\"4 3\"";
      if (name == "total") out << " stroke-width=\"2\"";
      out << " points=\"";
      for (const auto& p : points) out << num(sx(p.log_m)) << ',' << num(sy(p.log_value)) << ' ';
      out << "\"><title>" << name << "</title></polyline>\n";
    }
    out << "</g>\n";
    top += kPanelHeight;
  }
  out << "</svg>\n";
}

}  // namespace psin
