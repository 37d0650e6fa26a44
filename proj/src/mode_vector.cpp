// Copyright 2026 The psin Authors
// SPDX-License-Identifier: Apache-2.0

#include "psin/mode_vector.hpp"

#include <numeric>
#include <stdexcept>

namespace psin {

ModeVector ModeVector::unit(std::size_t modes, std::size_t mode) {
  if (mode >= modes) throw std::out_of_range("unit vector mode index out of range");
  ModeVector v(modes);
  v[mode] = 1;
  return v;
}

std::uint64_t ModeVector::total() const noexcept {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::string ModeVector::str() const {
  std::string out;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(counts_[i]);
  }
  return out;
}

}  // namespace psin
