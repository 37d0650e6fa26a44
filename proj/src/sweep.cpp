// Copyright 2026 The psin Authors
// SPDX-License-Identifier: Apache-2.0

#include "psin/sweep.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

namespace psin {

namespace {

constexpr std::string_view kThermalPrefix = "thermal:";
constexpr std::string_view kTablePrefix = "table:";

double parse_double(std::string_view text, std::string_view what) {
  const std::string owned(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(owned.c_str(), &end);
  if (owned.empty() || end != owned.c_str() + owned.size() || errno == ERANGE) {
    throw std::invalid_argument("invalid " + std::string(what) + ": '" + owned + "'");
  }
  return v;
}

std::uint32_t checked_modes(std::uint64_t m) {
  if (m > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("M = " + std::to_string(m) + " is too large");
  }
  return static_cast<std::uint32_t>(m);
}

LogProb over_m(double numerator, std::uint64_t m) {
  return LogProb::from_value(numerator / static_cast<double>(m));
}

}  // namespace

std::vector<std::uint64_t> expand_grid(const ModeGrid& grid, std::uint32_t photons) {
  if (const auto* list = std::get_if<std::vector<std::uint64_t>>(&grid)) {
    if (list->empty()) throw std::invalid_argument("M list is empty");
    std::vector<std::uint64_t> out = *list;
    for (std::uint64_t m : out) {
      if (m < 1) throw std::invalid_argument("M values must be >= 1");
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  const auto& spec = std::get<LogGrid>(grid);
  const struct {
    std::uint64_t m_min, m_max;
    std::size_t points;
  } g{spec.m_min.value_or(std::max<std::uint64_t>(photons, 1)), spec.m_max, spec.points};
  if (g.m_min < 1) throw std::invalid_argument("m-min must be >= 1");
  if (g.points < 2) throw std::invalid_argument("m-points must be >= 2");
  if (g.m_max < g.m_min) throw std::invalid_argument("m-max must be >= m-min");
  const double lo = std::log(static_cast<double>(g.m_min));
  const double hi = std::log(static_cast<double>(g.m_max));
  std::vector<std::uint64_t> out;
  out.reserve(g.points);
  for (std::size_t i = 0; i < g.points; ++i) {
    std::uint64_t m = 0;
    if (i == 0) {
      m = g.m_min;
    } else if (i + 1 == g.points) {
      m = g.m_max;
    } else {
      const double t = static_cast<double>(i) / static_cast<double>(g.points - 1);
      m = static_cast<std::uint64_t>(std::llround(std::exp(lo + t * (hi - lo))));
      m = std::clamp(m, g.m_min, g.m_max);
    }
    if (out.empty() || out.back() != m) out.push_back(m);
  }
  return out;
}

NoiseSpec NoiseSpec::thermal(double mean_photons) {
  // Validate eagerly so bad input surfaces before any sweep runs.
  (void)NoiseModel::thermal(mean_photons, 1);
  NoiseSpec spec;
  spec.thermal_ = true;
  spec.mean_photons_ = mean_photons;
  return spec;
}

NoiseSpec NoiseSpec::table(std::vector<double> values) {
  (void)NoiseModel::table(values, 1);
  NoiseSpec spec;
  spec.thermal_ = false;
  spec.values_ = std::move(values);
  return spec;
}

NoiseSpec NoiseSpec::parse(std::string_view text) {
  if (text.starts_with(kThermalPrefix)) {
    return thermal(parse_double(text.substr(kThermalPrefix.size()), "thermal mean photon number"));
  }
  if (text.starts_with(kTablePrefix)) {
    const std::string path(text.substr(kTablePrefix.size()));
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open noise table '" + path + "'");
    return table(read_noise_values(in));
  }
  throw std::invalid_argument("noise must be thermal:<nbar> or table:<path>, got '" + std::string(text) + "'");
}

NoiseModel NoiseSpec::for_modes(std::size_t modes) const {
  return thermal_ ? NoiseModel::thermal(mean_photons_, modes) : NoiseModel::table(values_, modes);
}

std::vector<CurveRow> pfa_curves(const SweepConfig& config) {
  if (config.n_values.empty()) throw std::invalid_argument("at least one N is required");
  std::vector<CurveRow> rows;
  std::vector<std::uint32_t> n_values = config.n_values;
  std::sort(n_values.begin(), n_values.end());
  n_values.erase(std::unique(n_values.begin(), n_values.end()), n_values.end());
  for (std::uint32_t n : n_values) {
    if (n == 0) throw std::invalid_argument("pfa-curves needs N >= 1");
    for (std::uint64_t m : expand_grid(config.m_grid, n)) {
      const PsiParams psi{n, checked_modes(m)};
      const FalseAlarmBreakdown fa = p_fa_closed(psi, config.noise.for_modes(psi.modes));
      rows.push_back({"baseline:1_over_M", n, m, over_m(1.0, m)});
      rows.push_back({"baseline:N_over_M", n, m, over_m(static_cast<double>(n), m)});
      for (const auto& term : fa.terms) {
        rows.push_back({"term:" + std::to_string(term.photons), n, m, term.coefficient});
      }
      rows.push_back({"total", n, m, fa.total_log});
    }
  }
  return rows;
}

void write_curves_csv(std::ostream& out, std::span<const CurveRow> rows) {
  out << "series,N,M,value\n";
  for (const auto& r : rows) {
    out << r.series << ',' << r.n << ',' << r.m << ',' << format_probability(r.value) << '\n';
  }
}

std::vector<PmdRow> pmd_curve(std::span<const std::uint32_t> n_values, std::span<const double> etas) {
  if (n_values.empty() || etas.empty()) throw std::invalid_argument("pmd-curve needs at least one N and one eta");
  for (double eta : etas) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in [0, 1]");
  }
  std::vector<PmdRow> rows;
  rows.reserve(n_values.size() * etas.size());
  for (std::uint32_t n : n_values) {
    for (double eta : etas) {
      const double direct = p_md_closed({n, 1}, eta);
      LogProb p = LogProb::zero();
      if (direct >= std::numeric_limits<double>::min()) {
        p = LogProb::from_value(direct);
      } else if (eta < 1.0) {
        p = LogProb::from_log(static_cast<double>(n) * std::log1p(-eta));
      }
      rows.push_back({n, eta, p});
    }
  }
  return rows;
}

void write_pmd_csv(std::ostream& out, std::span<const PmdRow> rows) {
  out << "N,eta,p_md\n";
  for (const auto& r : rows) out << r.n << ',' << format_real(r.eta) << ',' << format_probability(r.p_md) << '\n';
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);
  return buf;
}

std::string format_probability(const LogProb& p) {
  if (p.is_zero()) return "0";
  if (p.representable()) return format_real(p.value());
  const double l10 = p.log10_value();
  double exponent = std::floor(l10);
  double mantissa = std::pow(10.0, l10 - exponent);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16f", mantissa);
  if (buf[0] == '1' && buf[1] == '0') {  // rounded up to 10.000...
    mantissa /= 10.0;
    exponent += 1.0;
    std::snprintf(buf, sizeof buf, "%.16f", mantissa);
  }
  char out[96];
  std::snprintf(out, sizeof out, "%se%.0f", buf, exponent);
  return out;
}

}  // namespace psin
