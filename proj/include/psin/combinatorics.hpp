// Copyright 2026 The psin Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file combinatorics.hpp
 * @brief Exact and log-space combinatorial kernels.
 *
 * Two evaluation paths are provided for the ratios that appear in the
 * detection formulas: an exact big-integer path and a log-space float path.
 * Below kExactCrossover (N + M <= 200) the exact path is always used and the
 * result converted once; above it the log-space path avoids big-integer cost
 * and keeps values representable far below the double underflow limit.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "psin/mode_vector.hpp"

namespace psin {

/// Exact non-negative integer backed by GMP.
class BigCount {
 public:
  BigCount() = default;
  explicit BigCount(unsigned long value) : value_(value) {}
  explicit BigCount(mpz_class value);

  [[nodiscard]] const mpz_class& raw() const noexcept { return value_; }
  [[nodiscard]] bool is_zero() const { return value_ == 0; }
  [[nodiscard]] std::string str() const { return value_.get_str(); }
  /// Nearest double; +inf when the value exceeds the double range.
  [[nodiscard]] double to_double() const;
  /// Natural log; -inf for zero. Accurate for values of any size.
  [[nodiscard]] double log() const;

  BigCount& operator+=(const BigCount& rhs) {
    value_ += rhs.value_;
    return *this;
  }
  BigCount& operator*=(const BigCount& rhs) {
    value_ *= rhs.value_;
    return *this;
  }
  friend BigCount operator+(BigCount a, const BigCount& b) { return a += b; }
  friend BigCount operator*(BigCount a, const BigCount& b) { return a *= b; }
  friend bool operator==(const BigCount& a, const BigCount& b) { return a.value_ == b.value_; }
  friend bool operator==(const BigCount& a, unsigned long b) { return a.value_ == b; }
  friend std::strong_ordering operator<=>(const BigCount& a, const BigCount& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpz_class value_{0};
};

/// Exact rational, always kept in canonical (reduced) form.
using BigRatio = mpq_class;

/// Exact ratio a / b of two counts; b must be non-zero.
BigRatio ratio(const BigCount& numerator, const BigCount& denominator);

/// Natural log of a positive exact rational without overflow.
double log_of(const BigRatio& r);

/// Probability stored as a natural log so that values far below the double
/// range stay representable. A linear double is tracked alongside so values
/// built from exact ratios or plain doubles keep full precision while they are
/// in the normal double range. is_zero() marks an exact zero.
class LogProb {
 public:
  static LogProb zero() noexcept { return LogProb(); }
  static LogProb one() noexcept { return from_log(0.0); }
  static LogProb from_log(double log_value) noexcept;
  /// From a non-negative double; 0 maps to zero().
  static LogProb from_value(double value);
  static LogProb from_ratio(const BigRatio& r);

  [[nodiscard]] bool is_zero() const noexcept { return zero_; }
  /// -inf when zero.
  [[nodiscard]] double log_value() const noexcept;
  [[nodiscard]] double log10_value() const noexcept;
  /// Linear value; underflows to a subnormal or 0 below the double range.
  [[nodiscard]] double value() const noexcept { return linear_; }
  /// True when value() is a normal double (or exact zero), i.e. carries full precision.
  [[nodiscard]] bool representable() const noexcept;

  friend LogProb operator*(const LogProb& a, const LogProb& b) noexcept;
  /// Log-sum-exp accumulation.
  LogProb& operator+=(const LogProb& rhs) noexcept;
  friend LogProb operator+(LogProb a, const LogProb& b) noexcept { return a += b; }

 private:
  LogProb() = default;
  void refresh_linear(double candidate) noexcept;

  double log_value_ = 0.0;
  double linear_ = 0.0;
  bool zero_ = true;
};

/// N + M at or below which ratios are always computed exactly.
inline constexpr std::uint64_t kExactCrossover = 200;

/// Exact C(n, k); 0 when k > n.
BigCount binomial(std::uint64_t n, std::uint64_t k);

/// Number of length-`parts` non-negative vectors summing to `total`,
/// C(total + parts - 1, parts - 1). Throws std::invalid_argument for parts = 0.
BigCount count_compositions(std::uint64_t total, std::uint64_t parts);

/// First vector in canonical order: all photons in mode 0.
ModeVector first_composition(std::uint32_t total, std::size_t parts);

/// Advances `v` to the next composition in canonical (descending
/// lexicographic) order. Returns false, leaving `v` unchanged, after the last.
bool next_composition(ModeVector& v);

/// Invokes `visit` on every composition of `total` into `parts` in canonical
/// order. Throws std::invalid_argument for parts = 0.
void for_each_composition(std::uint32_t total, std::size_t parts,
                          const std::function<void(const ModeVector&)>& visit);

/// All compositions of `total` into `parts`, canonical order.
std::vector<ModeVector> compositions(std::uint32_t total, std::size_t parts);

/// prod_{j<k} (N - j) / (N + M - 1 - j), which equals
/// C(N - k + M - 1, M - 1) / C(N + M - 1, M - 1). Requires 1 <= k <= N, M >= 1.
BigRatio falling_ratio_exact(std::uint64_t photons, std::uint64_t modes, std::uint64_t k);

/// The float path alone: a running product of double factors, valid for any N, M.
LogProb falling_ratio_float(std::uint64_t photons, std::uint64_t modes, std::uint64_t k);

/// Log-space falling_ratio_exact; uses the exact path when N + M <= kExactCrossover
/// and falling_ratio_float above it.
LogProb falling_ratio_term(std::uint64_t photons, std::uint64_t modes, std::uint64_t k);

/// falling_ratio_term for k = 1..N in one pass; element k-1 is bit-identical
/// to falling_ratio_term(N, M, k).
std::vector<LogProb> falling_ratio_series(std::uint64_t photons, std::uint64_t modes);

}  // namespace psin
