// Copyright 2026 The psin Authors
// SPDX-License-Identifier: Apache-2.0

#include "psin/combinatorics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "psin/errors.hpp"

namespace psin {

namespace {

// z ~= mantissa * 2^exponent with mantissa in [0.5, 1).
struct SplitDouble {
  double mantissa;
  long exponent;
};

SplitDouble split(const mpz_class& z) {
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, z.get_mpz_t());
  return {mantissa, exponent};
}

void require_term_range(std::uint64_t photons, std::uint64_t modes, std::uint64_t k) {
  if (modes == 0) throw std::invalid_argument("falling ratio requires M >= 1");
  if (k == 0 || k > photons) throw std::invalid_argument("falling ratio requires 1 <= k <= N");
}

// (N - j) / (N + M - 1 - j) in double precision.
LogProb float_factor(std::uint64_t photons, std::uint64_t top, std::uint64_t j) {
  return LogProb::from_value(static_cast<double>(photons - j) / static_cast<double>(top - j));
}

bool use_exact_path(std::uint64_t photons, std::uint64_t modes) {
  return photons + modes <= kExactCrossover;
}

}  // namespace

BigCount::BigCount(mpz_class value) : value_(std::move(value)) {
  if (value_ < 0) throw std::invalid_argument("BigCount must be non-negative");
}

double BigCount::to_double() const {
  const auto [mantissa, exponent] = split(value_);
  if (exponent > std::numeric_limits<double>::max_exponent) {
    return std::numeric_limits<double>::infinity();
  }
  return std::ldexp(mantissa, static_cast<int>(exponent));
}

double BigCount::log() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  const auto [mantissa, exponent] = split(value_);
  return std::log(mantissa) + static_cast<double>(exponent) * std::numbers::ln2;
}

BigRatio ratio(const BigCount& numerator, const BigCount& denominator) {
  if (denominator.is_zero()) throw std::domain_error("ratio with zero denominator");
  BigRatio r(numerator.raw(), denominator.raw());
  r.canonicalize();
  return r;
}

double log_of(const BigRatio& r) {
  if (r <= 0) throw std::domain_error("log of a non-positive ratio");
  const auto num = split(r.get_num());
  const auto den = split(r.get_den());
  // Subtract the binary exponents as integers so only the result's own
  // magnitude contributes rounding error.
  return std::log(num.mantissa / den.mantissa) +
         static_cast<double>(num.exponent - den.exponent) * std::numbers::ln2;
}

LogProb LogProb::from_log(double log_value) noexcept {
  LogProb p;
  if (std::isinf(log_value) && log_value < 0) return p;
  p.log_value_ = log_value;
  p.linear_ = std::exp(log_value);
  p.zero_ = false;
  return p;
}

LogProb LogProb::from_value(double value) {
  if (!(value >= 0.0) || std::isinf(value)) {
    throw std::invalid_argument("probability must be finite and non-negative");
  }
  if (value == 0.0) return zero();
  LogProb p = from_log(std::log(value));
  p.linear_ = value;
  return p;
}

LogProb LogProb::from_ratio(const BigRatio& r) {
  if (r < 0) throw std::invalid_argument("probability must be non-negative");
  if (r == 0) return zero();
  LogProb p = from_log(log_of(r));
  constexpr unsigned kExactBits = std::numeric_limits<double>::digits;
  if (mpz_sizeinbase(r.get_num_mpz_t(), 2) <= kExactBits &&
      mpz_sizeinbase(r.get_den_mpz_t(), 2) <= kExactBits) {
    // Both parts are exact doubles, so the quotient is correctly rounded.
    p.refresh_linear(r.get_num().get_d() / r.get_den().get_d());
  } else {
    p.refresh_linear(r.get_d());
  }
  return p;
}

void LogProb::refresh_linear(double candidate) noexcept {
  // Below the normal range the log value is the authority.
  linear_ = std::abs(candidate) >= std::numeric_limits<double>::min() ? candidate : std::exp(log_value_);
}

bool LogProb::representable() const noexcept {
  return zero_ || linear_ >= std::numeric_limits<double>::min();
}

double LogProb::log_value() const noexcept {
  return zero_ ? -std::numeric_limits<double>::infinity() : log_value_;
}

double LogProb::log10_value() const noexcept {
  return zero_ ? -std::numeric_limits<double>::infinity() : log_value_ / std::numbers::ln10;
}

LogProb operator*(const LogProb& a, const LogProb& b) noexcept {
  if (a.zero_ || b.zero_) return LogProb::zero();
  LogProb p = LogProb::from_log(a.log_value_ + b.log_value_);
  if (a.representable() && b.representable()) p.refresh_linear(a.linear_ * b.linear_);
  return p;
}

LogProb& LogProb::operator+=(const LogProb& rhs) noexcept {
  if (rhs.zero_) return *this;
  if (zero_) return *this = rhs;
  const bool linear_ok = representable() && rhs.representable();
  const double linear_sum = linear_ + rhs.linear_;
  const double hi = std::max(log_value_, rhs.log_value_);
  const double lo = std::min(log_value_, rhs.log_value_);
  log_value_ = hi + std::log1p(std::exp(lo - hi));
  linear_ = std::exp(log_value_);
  if (linear_ok) refresh_linear(linear_sum);
  return *this;
}

BigCount binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return BigCount{};
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return BigCount(std::move(out));
}

BigCount count_compositions(std::uint64_t total, std::uint64_t parts) {
  if (parts == 0) throw std::invalid_argument("compositions need at least one part");
  return binomial(total + parts - 1, parts - 1);
}

ModeVector first_composition(std::uint32_t total, std::size_t parts) {
  if (parts == 0) throw std::invalid_argument("compositions need at least one part");
  ModeVector v(parts);
  v[0] = total;
  return v;
}

bool next_composition(ModeVector& v) {
  if (v.size() < 2) return false;
  std::size_t i = v.size() - 1;
  while (i-- > 0) {
    if (v[i] == 0) continue;
    ModeVector::value_type tail = 0;
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      tail += v[j];
      v[j] = 0;
    }
    --v[i];
    v[i + 1] = tail + 1;
    return true;
  }
  return false;
}

void for_each_composition(std::uint32_t total, std::size_t parts,
                          const std::function<void(const ModeVector&)>& visit) {
  ModeVector v = first_composition(total, parts);
  do {
    visit(v);
  } while (next_composition(v));
}

std::vector<ModeVector> compositions(std::uint32_t total, std::size_t parts) {
  std::vector<ModeVector> out;
  const BigCount count = count_compositions(total, parts);
  if (count.raw() > kAmplitudeCap) {
    throw CapExceeded("composition set too large to list: " + count.str() + " vectors");
  }
  out.reserve(count.raw().get_ui());
  for_each_composition(total, parts, [&](const ModeVector& v) { out.push_back(v); });
  return out;
}

BigRatio falling_ratio_exact(std::uint64_t photons, std::uint64_t modes, std::uint64_t k) {
  require_term_range(photons, modes, k);
  return ratio(binomial(photons - k + modes - 1, modes - 1), binomial(photons + modes - 1, modes - 1));
}

std::vector<LogProb> falling_ratio_series(std::uint64_t photons, std::uint64_t modes) {
  if (modes == 0) throw std::invalid_argument("falling ratio requires M >= 1");
  std::vector<LogProb> out;
  out.reserve(photons);
  const std::uint64_t top = photons + modes - 1;
  if (use_exact_path(photons, modes)) {
    BigRatio acc(1);
    for (std::uint64_t j = 0; j < photons; ++j) {
      BigRatio factor(mpz_class(static_cast<unsigned long>(photons - j)),
                      mpz_class(static_cast<unsigned long>(top - j)));
      factor.canonicalize();
      acc *= factor;
      out.push_back(LogProb::from_ratio(acc));
    }
    return out;
  }
  LogProb acc = LogProb::one();
  for (std::uint64_t j = 0; j < photons; ++j) {
    acc = acc * float_factor(photons, top, j);
    out.push_back(acc);
  }
  return out;
}

LogProb falling_ratio_term(std::uint64_t photons, std::uint64_t modes, std::uint64_t k) {
  require_term_range(photons, modes, k);
  if (use_exact_path(photons, modes)) {
    return LogProb::from_ratio(falling_ratio_exact(photons, modes, k));
  }
  return falling_ratio_float(photons, modes, k);
}

LogProb falling_ratio_float(std::uint64_t photons, std::uint64_t modes, std::uint64_t k) {
  require_term_range(photons, modes, k);
  const std::uint64_t top = photons + modes - 1;
  LogProb acc = LogProb::one();
  for (std::uint64_t j = 0; j < k; ++j) acc = acc * float_factor(photons, top, j);
  return acc;
}

}  // namespace psin
