// Copyright 2026 The psin Authors
// SPDX-License-Identifier: Apache-2.0

#include "psin/psi_family.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace psin {

namespace {

Register partner(Register r) {
  switch (r) {
    case Register::Idler:
      return Register::Signal;
    case Register::Signal:
      return Register::Idler;
    case Register::Background:
      break;
  }
  throw std::invalid_argument("pair creation acts on the idler and signal registers only");
}

}  // namespace

BigCount psi_term_count(PsiParams params) {
  return count_compositions(params.photons, params.modes);
}

void require_materializable(PsiParams params) {
  const BigCount terms = psi_term_count(params);
  if (terms.raw() > kAmplitudeCap) {
    throw CapExceeded("psi_N with N=" + std::to_string(params.photons) + ", M=" +
                      std::to_string(params.modes) + " has " + terms.str() + " terms (cap " +
                      std::to_string(kAmplitudeCap) + ")");
  }
}

BigCount normalization_c(PsiParams params) {
  if (params.modes == 0) throw std::invalid_argument("M must be positive");
  // N! (N+M-1)! / (M-1)! = N! * prod_{i=M}^{N+M-1} i
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), params.photons);
  for (unsigned long i = params.modes; i < static_cast<unsigned long>(params.photons) + params.modes; ++i) {
    out *= i;
  }
  return BigCount(std::move(out));
}

SparseState build_psi_direct(PsiParams params) {
  require_materializable(params);
  const double amplitude = 1.0 / std::sqrt(psi_term_count(params).to_double());
  std::vector<SparseState::Term> terms;
  terms.reserve(psi_term_count(params).raw().get_ui());
  for_each_composition(params.photons, params.modes, [&](const ModeVector& n) {
    terms.push_back({BasisKey::from_registers({n, n}), amplitude});
  });
  return SparseState::from_terms(RegisterSet::IdlerSignal, params.modes, std::move(terms));
}

SparseState apply_pair_create(const SparseState& state) {
  if (state.registers() != RegisterSet::IdlerSignal) {
    throw std::invalid_argument("pair creation needs an idler-signal state");
  }
  std::vector<SparseState> pieces;
  pieces.reserve(state.modes());
  for (std::size_t i = 0; i < state.modes(); ++i) {
    pieces.push_back(apply_create(apply_create(state, Register::Idler, i), Register::Signal, i));
  }
  std::vector<ScaledState> parts;
  parts.reserve(pieces.size());
  for (const auto& p : pieces) parts.push_back({1.0, p});
  return scale_add(parts);
}

SparseState build_psi_recursive(PsiParams params) {
  require_materializable(params);
  SparseState psi = SparseState::vacuum(RegisterSet::IdlerSignal, params.modes);
  for (std::uint32_t n = 1; n <= params.photons; ++n) {
    const double scale = 1.0 / (std::sqrt(static_cast<double>(n)) *
                                std::sqrt(static_cast<double>(n) + params.modes - 1));
    psi = scale_add({{scale, apply_pair_create(psi)}});
  }
  return psi;
}

SparseState annihilate_signal(PsiParams params, std::size_t mode) {
  if (mode >= params.modes) throw std::out_of_range("signal mode index out of range");
  return apply_annihilate(build_psi_direct(params), Register::Signal, mode);
}

double annihilation_identity_residual(PsiParams params, std::size_t mode) {
  if (params.photons == 0) throw std::invalid_argument("annihilation identity needs N >= 1");
  const SparseState lhs = annihilate_signal(params, mode);
  const SparseState previous = build_psi_direct({params.photons - 1, params.modes});
  const double n = params.photons;
  const double factor = std::sqrt(n / (n + params.modes - 1));
  const SparseState rhs = apply_create(previous, Register::Idler, mode);
  return scale_add({{1.0, lhs}, {-factor, rhs}}).norm();
}

double commutator_residual(const SparseState& state, Register r, std::size_t mode) {
  const SparseState lowered_after = apply_annihilate(apply_pair_create(state), r, mode);
  const SparseState lowered_before = apply_pair_create(apply_annihilate(state, r, mode));
  const SparseState expected = apply_create(state, partner(r), mode);
  return scale_add({{1.0, lowered_after}, {-1.0, lowered_before}, {-1.0, expected}}).norm();
}

}  // namespace psin
