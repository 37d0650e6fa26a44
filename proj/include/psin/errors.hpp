// Copyright 2026 The psin Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace psin {

/// Upper bound on the number of amplitudes (or ensemble entries) any single
/// materialized object may hold.
inline constexpr std::size_t kAmplitudeCap = 10'000'000;

/// Thrown when an operation would materialize more than kAmplitudeCap entries.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace psin
