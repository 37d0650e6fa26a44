// Copyright 2026 The psin Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file verify.hpp
 * @brief Self-check suite run by the `verify` command.
 *
 * Every check sweeps N = 0..max_n and M = 1..max_m and records the worst
 * residual it saw against a fixed tolerance.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace psin {

struct CheckResult {
  std::string name;
  std::size_t cases = 0;
  double worst = 0.0;
  double tolerance = 0.0;

  [[nodiscard]] bool passed() const noexcept { return worst < tolerance; }
  void record(double residual);
};

struct VerificationReport {
  std::uint32_t max_n = 0;
  std::uint32_t max_m = 1;
  std::vector<CheckResult> checks;

  [[nodiscard]] bool passed() const noexcept;
};

/// Throws CapExceeded naming the first (N, M), scanned N-major, whose states or
/// oracle ensembles would exceed kAmplitudeCap. Throws std::invalid_argument for max_m = 0.
void require_verifiable(std::uint32_t max_n, std::uint32_t max_m);

/// Runs every check. Calls require_verifiable first.
VerificationReport run_verification(std::uint32_t max_n, std::uint32_t max_m);

/// Fixed-width table, one row per check, then an overall line.
void write_report(std::ostream& out, const VerificationReport& report);

}  // namespace psin
