// Copyright 2026 The psin Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace psin {

/// Photon count per mode for one M-mode register.
class ModeVector {
 public:
  using value_type = std::uint32_t;

  ModeVector() = default;
  explicit ModeVector(std::size_t modes) : counts_(modes, 0) {}
  explicit ModeVector(std::vector<value_type> counts) : counts_(std::move(counts)) {}
  ModeVector(std::initializer_list<value_type> counts) : counts_(counts) {}

  /// Vector with a single photon in `mode`.
  static ModeVector unit(std::size_t modes, std::size_t mode);

  [[nodiscard]] std::size_t size() const noexcept { return counts_.size(); }
  [[nodiscard]] std::uint64_t total() const noexcept;

  value_type& operator[](std::size_t i) { return counts_[i]; }
  const value_type& operator[](std::size_t i) const { return counts_[i]; }

  [[nodiscard]] std::span<const value_type> counts() const noexcept { return counts_; }
  auto begin() const noexcept { return counts_.begin(); }
  auto end() const noexcept { return counts_.end(); }

  /// Comma-joined counts, e.g. "2,0,1".
  [[nodiscard]] std::string str() const;

  friend bool operator==(const ModeVector&, const ModeVector&) = default;
  friend auto operator<=>(const ModeVector&, const ModeVector&) = default;

 private:
  std::vector<value_type> counts_;
};

/// Canonical ordering: descending lexicographic, so (2,0) precedes (1,1)
/// precedes (0,2).
struct CanonicalOrder {
  bool operator()(const ModeVector& a, const ModeVector& b) const { return a > b; }
};

}  // namespace psin
