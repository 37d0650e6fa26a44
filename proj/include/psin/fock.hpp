// Copyright 2026 The psin Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file fock.hpp
 * @brief Sparse multi-register photon-number states and ladder operators.
 *
 * A SparseState holds amplitudes over basis keys |n_I, n_S[, n_B]> with a
 * fixed number of modes M per register. Terms are stored sorted in canonical
 * key order (descending lexicographic over the concatenated register counts),
 * which makes iteration, dumps and floating-point reductions deterministic.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "psin/errors.hpp"
#include "psin/mode_vector.hpp"

namespace psin {

enum class Register : std::uint8_t { Idler = 0, Signal = 1, Background = 2 };

/// Registers present in a state, always in canonical order.
enum class RegisterSet : std::uint8_t { IdlerSignal = 2, IdlerSignalBackground = 3 };

constexpr std::size_t register_count(RegisterSet set) noexcept {
  return static_cast<std::size_t>(set);
}
constexpr bool has_register(RegisterSet set, Register r) noexcept {
  return static_cast<std::size_t>(r) < register_count(set);
}
std::string_view register_name(Register r) noexcept;

/// Amplitudes with magnitude below this are dropped after every linear operation.
inline constexpr double kPruneThreshold = 1e-15;

/// Largest per-mode occupancy a BasisKey can hold.
inline constexpr std::uint32_t kMaxModeCount = 0xFFFF;

/// Packed register-major photon counts: [I_0..I_{M-1}, S_0..S_{M-1}, (B_...)].
class BasisKey {
 public:
  BasisKey() = default;
  BasisKey(RegisterSet set, std::size_t modes)
      : counts_(register_count(set) * modes, 0) {}
  /// Builds a key from one ModeVector per register (all the same length).
  static BasisKey from_registers(std::span<const ModeVector> registers);
  static BasisKey from_registers(std::initializer_list<ModeVector> registers) {
    return from_registers(std::span<const ModeVector>(registers.begin(), registers.size()));
  }

  [[nodiscard]] std::uint16_t at(std::size_t slot) const { return counts_[slot]; }
  /// Throws std::overflow_error above kMaxModeCount.
  void set(std::size_t slot, std::uint32_t value);
  [[nodiscard]] std::size_t width() const noexcept { return counts_.size(); }
  [[nodiscard]] std::span<const std::uint16_t> packed() const noexcept { return counts_; }

  friend bool operator==(const BasisKey&, const BasisKey&) = default;
  friend auto operator<=>(const BasisKey&, const BasisKey&) = default;

 private:
  std::vector<std::uint16_t> counts_;
};

/// Canonical term order: descending lexicographic on packed counts.
inline bool canonical_before(const BasisKey& a, const BasisKey& b) { return a > b; }

class SparseState {
 public:
  using Amplitude = std::complex<double>;
  struct Term {
    BasisKey key;
    Amplitude amplitude;
  };

  /// The zero vector.
  SparseState(RegisterSet registers, std::size_t modes);

  static SparseState vacuum(RegisterSet registers, std::size_t modes);
  /// Single basis term; `registers` lists one ModeVector per register.
  static SparseState basis(std::initializer_list<ModeVector> registers, Amplitude amplitude = 1.0);
  /// Sorts, merges duplicate keys (summing in input order) and prunes.
  /// Throws CapExceeded beyond kAmplitudeCap terms.
  static SparseState from_terms(RegisterSet registers, std::size_t modes, std::vector<Term> terms);

  [[nodiscard]] RegisterSet registers() const noexcept { return registers_; }
  [[nodiscard]] std::size_t modes() const noexcept { return modes_; }
  [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
  [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }
  [[nodiscard]] std::span<const Term> terms() const noexcept { return terms_; }

  /// Amplitude stored for `key`, zero when absent.
  [[nodiscard]] Amplitude amplitude(const BasisKey& key) const;
  [[nodiscard]] Amplitude amplitude(std::initializer_list<ModeVector> registers) const {
    return amplitude(BasisKey::from_registers(registers));
  }
  [[nodiscard]] double norm_sq() const;
  [[nodiscard]] double norm() const;

  /// Slot of (register, mode) inside this state's keys.
  [[nodiscard]] std::size_t slot(Register r, std::size_t mode) const;
  [[nodiscard]] ModeVector register_counts(const BasisKey& key, Register r) const;

  /// Shape compatibility: same register set and mode count.
  [[nodiscard]] bool same_shape(const SparseState& other) const noexcept {
    return registers_ == other.registers_ && modes_ == other.modes_;
  }

 private:
  RegisterSet registers_;
  std::size_t modes_;
  std::vector<Term> terms_;
};

/// â†_{r,mode}: moves each term to n_mode + 1 scaled by sqrt(n_mode + 1).
SparseState apply_create(const SparseState& state, Register r, std::size_t mode);

/// â_{r,mode}: moves each term to n_mode - 1 scaled by sqrt(n_mode); n_mode = 0 terms vanish.
SparseState apply_annihilate(const SparseState& state, Register r, std::size_t mode);

/// <a|b>, conjugate-linear in `a`.
SparseState::Amplitude inner_product(const SparseState& a, const SparseState& b);

struct ScaledState {
  SparseState::Amplitude coefficient;
  const SparseState& state;
};

/// Σ coefficient_i |state_i>, pruned. All inputs must share one shape.
SparseState scale_add(std::span<const ScaledState> parts);
inline SparseState scale_add(std::initializer_list<ScaledState> parts) {
  return scale_add(std::span<const ScaledState>(parts.begin(), parts.size()));
}

/// ‖a - b‖.
double distance(const SparseState& a, const SparseState& b);

/// max over keys of |a(key) - b(key)|.
double max_amplitude_difference(const SparseState& a, const SparseState& b);

/// State divided by its norm; throws std::domain_error for the zero state.
SparseState normalized(const SparseState& state);

/// Groups a three-register state by its Background counts. Each value is the
/// (unnormalized) Idler-Signal state paired with that environment vector.
std::map<ModeVector, SparseState, CanonicalOrder> split_background(const SparseState& state);

/// One line per term: per-register comma-joined counts, real part, imaginary
/// part, tab-separated, 17 significant digits, canonical order.
void write_dump(std::ostream& out, const SparseState& state);

}  // namespace psin
