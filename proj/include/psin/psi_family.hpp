// Copyright 2026 The psin Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file psi_family.hpp
 * @brief The N-photon, two-register entangled state family |psi_N>.
 *
 * |psi_N> is the uniform superposition of |n, n>_{I,S} over every ModeVector
 * n with |n| = N. It is built either by enumerating compositions directly or
 * by repeated application of the pair-creation operator
 * A† = Σ_i â†_{S_i} â†_{I_i} starting from vacuum.
 */

#pragma once

#include <cstddef>
#include <cstdint>

#include "psin/combinatorics.hpp"
#include "psin/fock.hpp"

namespace psin {

struct PsiParams {
  std::uint32_t photons = 0;
  std::uint32_t modes = 1;
};

/// Number of terms in |psi_N>, C(N + M - 1, N).
BigCount psi_term_count(PsiParams params);

/// Throws CapExceeded when |psi_N> would exceed kAmplitudeCap terms and
/// std::invalid_argument for M = 0.
void require_materializable(PsiParams params);

/// C_N = N! (N + M - 1)! / (M - 1)!, the squared norm of (A†)^N |vac>.
BigCount normalization_c(PsiParams params);

/// |psi_N> by direct enumeration: amplitude C(N+M-1, N)^{-1/2} on every |n, n>.
SparseState build_psi_direct(PsiParams params);

/// |psi_N> via sqrt(n) sqrt(n + M - 1) |psi_n> = A† |psi_{n-1}>, from vacuum.
SparseState build_psi_recursive(PsiParams params);

/// A† |state> for an Idler-Signal state.
SparseState apply_pair_create(const SparseState& state);

/// â_{S_j} |psi_N>.
SparseState annihilate_signal(PsiParams params, std::size_t mode);

/// ‖ â_{S_j}|psi_N> - sqrt(N / (N + M - 1)) â†_{I_j}|psi_{N-1}> ‖. Requires N >= 1.
double annihilation_identity_residual(PsiParams params, std::size_t mode);

/// ‖ [â_{r,j}, A†]|state> - â†_{r',j}|state> ‖ where r' is the partner register
/// (Signal <-> Idler). Zero for every state by the pair-creation commutators.
double commutator_residual(const SparseState& state, Register r, std::size_t mode);

}  // namespace psin
