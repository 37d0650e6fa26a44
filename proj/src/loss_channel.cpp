// Copyright 2026 The psin Authors
// SPDX-License-Identifier: Apache-2.0

#include "psin/loss_channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace psin {

namespace {

void require_absorbed(PsiParams psi, const ModeVector& absorbed) {
  if (absorbed.size() != psi.modes) throw std::invalid_argument("N_A has the wrong number of modes");
  if (absorbed.total() > psi.photons) {
    throw std::invalid_argument("environment cannot hold more than N photons");
  }
}

// Σ_{a=0..N} C(a+M-1, a) C(N-a+M-1, N-a): amplitudes across all components.
BigCount component_amplitude_count(PsiParams psi) {
  BigCount total;
  for (std::uint32_t a = 0; a <= psi.photons; ++a) {
    total += count_compositions(a, psi.modes) * count_compositions(psi.photons - a, psi.modes);
  }
  return total;
}

}  // namespace

void require_valid(const LossParams& loss) {
  if (!(loss.eta >= 0.0 && loss.eta <= 1.0)) throw std::invalid_argument("eta must lie in [0, 1]");
  if (loss.psi.modes == 0) throw std::invalid_argument("M must be positive");
}

double MixtureComponents::total_weight() const {
  double acc = 0.0;
  for (const auto& c : components) acc += c.weight;
  return acc;
}

BigCount arrangement_sum(PsiParams psi, const ModeVector& absorbed) {
  require_absorbed(psi, absorbed);
  const auto remaining = static_cast<std::uint32_t>(psi.photons - absorbed.total());
  BigCount sum;
  for_each_composition(remaining, psi.modes, [&](const ModeVector& n) {
    BigCount term(1);
    for (std::size_t i = 0; i < n.size(); ++i) term *= binomial(n[i] + absorbed[i], absorbed[i]);
    sum += term;
  });
  return sum;
}

double phi_norm_sq(const LossParams& loss, const ModeVector& absorbed) {
  require_valid(loss);
  const BigRatio combinatorial = ratio(arrangement_sum(loss.psi, absorbed), psi_term_count(loss.psi));
  const auto lost = static_cast<double>(absorbed.total());
  const double kept = loss.psi.photons - lost;
  return std::pow(loss.eta, kept) * std::pow(1.0 - loss.eta, lost) * combinatorial.get_d();
}

SparseState phi_state(PsiParams psi, const ModeVector& absorbed) {
  require_absorbed(psi, absorbed);
  const auto remaining = static_cast<std::uint32_t>(psi.photons - absorbed.total());
  SparseState state = build_psi_direct({remaining, psi.modes});
  for (std::size_t i = 0; i < absorbed.size(); ++i) {
    for (std::uint32_t c = 0; c < absorbed[i]; ++c) state = apply_create(state, Register::Idler, i);
  }
  return normalized(state);
}

std::pair<double, SparseState> phi_component(const LossParams& loss, const ModeVector& absorbed) {
  return {phi_norm_sq(loss, absorbed), phi_state(loss.psi, absorbed)};
}

MixtureComponents rho_pres_components(const LossParams& loss) {
  require_valid(loss);
  const BigCount amplitudes = component_amplitude_count(loss.psi);
  if (amplitudes.raw() > kAmplitudeCap) {
    throw CapExceeded("returned-state mixture for N=" + std::to_string(loss.psi.photons) + ", M=" +
                      std::to_string(loss.psi.modes) + " needs " + amplitudes.str() + " amplitudes");
  }
  MixtureComponents out;
  for (std::uint32_t a = 0; a <= loss.psi.photons; ++a) {
    for_each_composition(a, loss.psi.modes, [&](const ModeVector& absorbed) {
      auto [weight, state] = phi_component(loss, absorbed);
      out.components.push_back({absorbed, weight, std::move(state)});
    });
  }
  return out;
}

SparseState beamsplitter_oracle(const LossParams& loss) {
  require_valid(loss);
  const PsiParams psi = loss.psi;
  // Stored terms: one per (returned, absorbed) split, C(N + 2M - 1, N).
  const BigCount size = binomial(psi.photons + 2 * static_cast<std::uint64_t>(psi.modes) - 1, psi.photons);
  if (size.raw() > kAmplitudeCap) {
    throw CapExceeded("beamsplitter oracle for N=" + std::to_string(psi.photons) + ", M=" +
                      std::to_string(psi.modes) + " needs " + size.str() + " amplitudes");
  }
  const double reflect = std::sqrt(loss.eta);
  const double leak = std::sqrt(1.0 - loss.eta);
  const SparseState source = build_psi_direct(psi);

  std::vector<SparseState::Term> terms;
  for (const auto& term : source.terms()) {
    const ModeVector idler = source.register_counts(term.key, Register::Idler);
    const ModeVector signal = source.register_counts(term.key, Register::Signal);
    // |n>_S = Π_i (â†_{S_i})^{n_i} / sqrt(n_i!) |0>; rebuild it with each
    // creation operator replaced by its beamsplitter image.
    double inv_sqrt_factorial = 1.0;
    for (std::size_t i = 0; i < signal.size(); ++i) {
      inv_sqrt_factorial /= std::sqrt(std::tgamma(signal[i] + 1.0));
    }
    SparseState branch = SparseState::basis({idler, ModeVector(psi.modes), ModeVector(psi.modes)},
                                            term.amplitude * inv_sqrt_factorial);
    for (std::size_t i = 0; i < signal.size(); ++i) {
      for (std::uint32_t c = 0; c < signal[i]; ++c) {
        branch = scale_add({{reflect, apply_create(branch, Register::Signal, i)},
                            {leak, apply_create(branch, Register::Background, i)}});
      }
    }
    terms.insert(terms.end(), branch.terms().begin(), branch.terms().end());
  }
  return SparseState::from_terms(RegisterSet::IdlerSignalBackground, psi.modes, std::move(terms));
}

MixtureComponents decompose_by_environment(const SparseState& tripartite) {
  MixtureComponents out;
  for (auto& [env, rest] : split_background(tripartite)) {
    const double weight = rest.norm_sq();
    out.components.push_back({env, weight, normalized(rest)});
  }
  return out;
}

}  // namespace psin
