// Copyright 2026 The psin Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file detection.hpp
 * @brief Target-detection hypothesis test built on |psi_N>.
 *
 * The receiver applies the projector P = Σ_{|N_A| <= N-1} |phi_{N_A}><phi_{N_A}|
 * and declares the target present on a positive outcome. Closed forms:
 *
 *   P_MD = (1 - η)^N
 *   P_FA = Σ_{k=1..N} p̃_k · Π_{j<k} (N - j) / (N + M - 1 - j)
 *
 * where p̃_k is the probability of one specific environment arrangement
 * holding k noise photons. The oracles evaluate Tr[P ρ] directly from
 * materialized states and are limited to small N, M.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "psin/combinatorics.hpp"
#include "psin/fock.hpp"
#include "psin/loss_channel.hpp"
#include "psin/psi_family.hpp"

namespace psin {

/// Noise statistics in the returned signal register when no target is present.
/// Only the total photon number matters: every arrangement of k photons over
/// the M modes has the same probability p̃_k.
class NoiseModel {
 public:
  /// Identical thermal states with mean `mean_photons` per mode:
  /// p̃_k = (1 - x)^M x^k with x = n̄ / (1 + n̄).
  static NoiseModel thermal(double mean_photons, std::size_t modes);
  /// Explicit p̃_1, p̃_2, ...; entries past the end are zero.
  static NoiseModel table(std::vector<double> values, std::size_t modes);

  [[nodiscard]] bool is_thermal() const noexcept;
  [[nodiscard]] std::size_t modes() const noexcept { return modes_; }
  /// Thermal mean photon number; throws std::logic_error for tables.
  [[nodiscard]] double mean_photons() const;

  /// p̃_k. For tables p̃_0 is the leftover mass 1 - Σ_k C(k+M-1, k) p̃_k, clamped at 0.
  [[nodiscard]] LogProb log_ptilde(std::uint64_t k) const;
  [[nodiscard]] double ptilde(std::uint64_t k) const { return log_ptilde(k).value(); }

 private:
  struct Thermal {
    double mean_photons;
  };
  struct Table {
    std::vector<double> values;
  };
  NoiseModel(std::variant<Thermal, Table> kind, std::size_t modes);

  std::variant<Thermal, Table> kind_;
  std::size_t modes_;
};

/// p̃_k of a thermal model; throws std::invalid_argument for table models.
double thermal_ptilde(const NoiseModel& model, std::uint64_t k);

/// Reads a noise table: one float per line, line i holding p̃_i. Blank lines
/// and lines starting with '#' are skipped.
std::vector<double> read_noise_values(std::istream& in);
NoiseModel read_noise_table(std::istream& in, std::size_t modes);

/// Returned-photon range accepted by the projector. The default [1, N]
/// accepts any outcome with at least one returned photon.
struct PhotonWindow {
  std::uint32_t min_returned = 1;
  std::optional<std::uint32_t> max_returned;
};

class Projector {
 public:
  /// Components are built at `reference_eta`; the normalized states do not
  /// depend on it.
  explicit Projector(PsiParams psi, PhotonWindow window = {}, double reference_eta = 0.5);

  [[nodiscard]] std::size_t rank() const noexcept { return components_.size(); }
  [[nodiscard]] std::span<const MixtureComponent> components() const noexcept { return components_; }

  /// <x|P|x> = Σ |<phi|x>|².
  [[nodiscard]] double expectation(const SparseState& x) const;
  /// <key|P|key> for an Idler-Signal basis vector.
  [[nodiscard]] double expectation(const BasisKey& key) const;
  /// P|x>.
  [[nodiscard]] SparseState apply(const SparseState& x) const;

 private:
  std::vector<MixtureComponent> components_;
};

struct FalseAlarmTerm {
  std::uint32_t photons;  ///< k, number of noise photons picked up
  LogProb coefficient;    ///< multiplier of p̃_k
  LogProb contribution;   ///< coefficient · p̃_k
};

struct FalseAlarmBreakdown {
  double total = 0.0;  ///< Σ contributions
  LogProb total_log = LogProb::zero();
  std::vector<FalseAlarmTerm> terms;
};

struct DetectionReport {
  double p_fa_closed = 0.0;
  std::vector<FalseAlarmTerm> p_fa_terms;
  double p_md_closed = 0.0;
  std::optional<double> p_fa_oracle;
  std::optional<double> p_md_oracle;
};

struct Baselines {
  double single_copy;   ///< 1/M, one copy of psi_1
  double n_copies;      ///< N/M, N copies of psi_1 (valid for N << M)
  bool out_of_regime;   ///< N >= M, where N/M is no longer a probability estimate
};

/// (1 - η)^N.
double p_md_closed(PsiParams psi, double eta);

/// Closed-form P_FA with its per-photon-number breakdown.
FalseAlarmBreakdown p_fa_closed(PsiParams psi, const NoiseModel& noise, PhotonWindow window = {});

/// Tr[P ρ_abs] from the idler-uniform, noise-weighted ensemble.
double p_fa_oracle(PsiParams psi, const NoiseModel& noise, PhotonWindow window = {});

/// 1 - Tr[P ρ_pres] with ρ_pres taken from the beamsplitter oracle state.
double p_md_oracle(PsiParams psi, double eta);

Baselines single_photon_baselines(PsiParams psi);

/// Closed forms, plus oracles when `with_oracles` is set.
DetectionReport detection_report(PsiParams psi, double eta, const NoiseModel& noise,
                                 bool with_oracles = false);

}  // namespace psin
