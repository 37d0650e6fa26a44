// Copyright 2026 The psin Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file loss_channel.hpp
 * @brief Beamsplitter loss on the signal register and the resulting mixture.
 *
 * Sending the signal through a beamsplitter of reflectivity eta with a vacuum
 * environment B and tracing out B leaves an ensemble of mutually orthogonal
 * pure states |phi_{N_A}>, one per environment vector N_A with |N_A| <= N.
 * The normalized state is (â†_I)^{N_A} |psi_{N - |N_A|}> up to normalization
 * and does not depend on eta; eta enters only the weights.
 */

#pragma once

#include <utility>
#include <vector>

#include "psin/combinatorics.hpp"
#include "psin/fock.hpp"
#include "psin/psi_family.hpp"

namespace psin {

struct LossParams {
  double eta = 1.0;  ///< reflectivity in [0, 1]
  PsiParams psi;
};

/// Throws std::invalid_argument when eta is outside [0, 1] or NaN.
void require_valid(const LossParams& loss);

struct MixtureComponent {
  ModeVector absorbed;  ///< environment photon vector N_A
  double weight;        ///< probability the environment holds exactly N_A
  SparseState state;    ///< normalized Idler-Signal state
};

struct MixtureComponents {
  std::vector<MixtureComponent> components;

  [[nodiscard]] double total_weight() const;
};

/// Σ_{|n| = N - |N_A|} Π_i C(n_i + a_i, a_i), exactly.
BigCount arrangement_sum(PsiParams psi, const ModeVector& absorbed);

/// η^{N-|N_A|} (1-η)^{|N_A|} · arrangement_sum / C(N+M-1, N).
double phi_norm_sq(const LossParams& loss, const ModeVector& absorbed);

/// Normalized (â†_I)^{N_A} |psi_{N-|N_A|}>; independent of eta.
SparseState phi_state(PsiParams psi, const ModeVector& absorbed);

/// (phi_norm_sq, phi_state).
std::pair<double, SparseState> phi_component(const LossParams& loss, const ModeVector& absorbed);

/// Every component with |N_A| <= N, ordered by |N_A| then canonical order.
/// Throws CapExceeded when the total stored amplitudes exceed the cap.
MixtureComponents rho_pres_components(const LossParams& loss);

/// Tripartite pure state obtained by substituting
/// â†_{S_i} -> sqrt(η) â†_{S_i} + sqrt(1-η) â†_{B_i} in |psi_N>_{I,S} ⊗ |0>_B,
/// evaluated with ladder operators on vacuum.
SparseState beamsplitter_oracle(const LossParams& loss);

/// Groups a tripartite state by environment vector: weight is the group's
/// squared norm and state the normalized Idler-Signal remainder.
MixtureComponents decompose_by_environment(const SparseState& tripartite);

}  // namespace psin
