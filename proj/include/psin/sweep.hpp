// Copyright 2026 The psin Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file sweep.hpp
 * @brief Curve sweeps behind the `pfa-curves` and `pmd-curve` commands.
 *
 * Output is long-format CSV. Every floating value is written with 17
 * significant digits. Probabilities below the smallest normal double are
 * written from their log-space value as `d.dddddddddddddddde-XXXX`, so every
 * positive quantity stays positive in the file.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "psin/combinatorics.hpp"
#include "psin/detection.hpp"

namespace psin {

inline constexpr std::uint64_t kDefaultMMax = 100'000;
inline constexpr std::size_t kDefaultMPoints = 50;
inline constexpr double kDefaultThermalMean = 0.01;

/// Integer mode counts log-spaced between m_min and m_max (both included),
/// rounded to the nearest integer with duplicates removed. An unset m_min
/// starts the grid at max(N, 1).
struct LogGrid {
  std::optional<std::uint64_t> m_min;
  std::uint64_t m_max = kDefaultMMax;
  std::size_t points = kDefaultMPoints;
};

using ModeGrid = std::variant<LogGrid, std::vector<std::uint64_t>>;

/// Strictly increasing M values for photon number `photons`; throws
/// std::invalid_argument for an invalid grid.
std::vector<std::uint64_t> expand_grid(const ModeGrid& grid, std::uint32_t photons = 1);

/// Parsed `--noise` argument: `thermal:<nbar>` or `table:<path>`.
class NoiseSpec {
 public:
  static NoiseSpec thermal(double mean_photons);
  static NoiseSpec table(std::vector<double> values);
  /// Reads table files from disk; throws std::invalid_argument on bad syntax.
  static NoiseSpec parse(std::string_view text);

  [[nodiscard]] NoiseModel for_modes(std::size_t modes) const;
  [[nodiscard]] bool is_thermal() const noexcept { return thermal_; }

 private:
  bool thermal_ = true;
  double mean_photons_ = kDefaultThermalMean;
  std::vector<double> values_;
};

struct SweepConfig {
  std::vector<std::uint32_t> n_values;
  ModeGrid m_grid = LogGrid{};
  NoiseSpec noise = NoiseSpec::thermal(kDefaultThermalMean);
};

struct CurveRow {
  std::string series;
  std::uint32_t n;
  std::uint64_t m;
  LogProb value;
};

/// Rows ordered by N, then M, then series: baseline:1_over_M,
/// baseline:N_over_M, term:1..term:N, total.
std::vector<CurveRow> pfa_curves(const SweepConfig& config);

/// Header `series,N,M,value`.
void write_curves_csv(std::ostream& out, std::span<const CurveRow> rows);

struct PmdRow {
  std::uint32_t n;
  double eta;
  LogProb p_md;
};

/// (1 - η)^N for every (N, η) pair, ordered by N then η as given.
std::vector<PmdRow> pmd_curve(std::span<const std::uint32_t> n_values, std::span<const double> etas);

/// Header `N,eta,p_md`.
void write_pmd_csv(std::ostream& out, std::span<const PmdRow> rows);

/// 17 significant digits; values below the double normal range come from log space.
std::string format_probability(const LogProb& p);
std::string format_real(double v);

/// Minimal log-log chart of the curve rows, one panel per N.
void write_curves_svg(std::ostream& out, std::span<const CurveRow> rows);

}  // namespace psin
