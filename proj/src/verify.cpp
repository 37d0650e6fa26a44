// Copyright 2026 The psin Authors
// SPDX-License-Identifier: Apache-2.0

#include "psin/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>

#include "psin/combinatorics.hpp"
#include "psin/detection.hpp"
#include "psin/errors.hpp"
#include "psin/fock.hpp"
#include "psin/loss_channel.hpp"
#include "psin/psi_family.hpp"

namespace psin {

namespace {

constexpr std::array<double, 3> kEtas = {0.2, 0.5, 0.8};
constexpr std::uint64_t kSeed = 20260101;
constexpr double kIdentityTol = 1e-12;
constexpr double kSumTol = 1e-10;

// Arbitrary Idler-Signal state with at most two photons per slot.
SparseState random_state(std::size_t modes, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> count(0, 2);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::vector<SparseState::Term> terms;
  for (int t = 0; t < 6; ++t) {
    BasisKey key(RegisterSet::IdlerSignal, modes);
    for (std::size_t s = 0; s < key.width(); ++s) key.set(s, count(rng));
    terms.push_back({key, {amp(rng), amp(rng)}});
  }
  return SparseState::from_terms(RegisterSet::IdlerSignal, modes, std::move(terms));
}

std::vector<NoiseModel> noise_models(std::uint32_t photons, std::size_t modes, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> value(0.0, 0.05);
  std::vector<double> table(photons);
  for (double& v : table) v = value(rng);
  return {NoiseModel::thermal(0.1, modes), NoiseModel::thermal(1.0, modes), NoiseModel::table(table, modes)};
}

const MixtureComponent* find_component(const MixtureComponents& mix, const ModeVector& absorbed) {
  for (const auto& c : mix.components) {
    if (c.absorbed == absorbed) return &c;
  }
  return nullptr;
}

}  // namespace

void CheckResult::record(double residual) {
  ++cases;
  // NaN must fail the check.
  if (!(residual <= worst)) worst = std::isnan(residual) ? INFINITY : residual;
}

bool VerificationReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

void require_verifiable(std::uint32_t max_n, std::uint32_t max_m) {
  if (max_m == 0) throw std::invalid_argument("max-m must be >= 1");
  for (std::uint32_t n = 0; n <= max_n; ++n) {
    for (std::uint32_t m = 1; m <= max_m; ++m) {
      const BigCount psi_terms = count_compositions(n, m);
      const BigCount tripartite = count_compositions(n, 2ULL * m);
      const BigCount ensemble = psi_terms * count_compositions(n, m + 1ULL);
      const BigCount largest = std::max({psi_terms, tripartite, ensemble});
      if (largest.raw() > kAmplitudeCap) {
        throw CapExceeded("verification refused at N=" + std::to_string(n) + ", M=" + std::to_string(m) +
                          ": needs " + largest.str() + " amplitudes, cap is " + std::to_string(kAmplitudeCap));
      }
    }
  }
}

VerificationReport run_verification(std::uint32_t max_n, std::uint32_t max_m) {
  require_verifiable(max_n, max_m);
  CheckResult construction{"psi direct vs recursive, uniform amplitudes", 0, 0.0, kIdentityTol};
  CheckResult commutators{"pair-creation commutators", 0, 0.0, kIdentityTol};
  CheckResult annihilation{"signal annihilation identity", 0, 0.0, kIdentityTol};
  CheckResult decomposition{"beamsplitter decomposition vs components", 0, 0.0, kIdentityTol};
  CheckResult completeness{"component weights sum to 1", 0, 0.0, kSumTol};
  CheckResult orthonormality{"component Gram matrix is identity", 0, 0.0, kIdentityTol};
  CheckResult missed{"P_MD oracle vs closed form", 0, 0.0, kSumTol};
  CheckResult false_alarm{"P_FA oracle vs closed form", 0, 0.0, kSumTol};

  std::mt19937_64 rng(kSeed);
  for (std::uint32_t n = 0; n <= max_n; ++n) {
    for (std::uint32_t m = 1; m <= max_m; ++m) {
      const PsiParams psi{n, m};
      const SparseState direct = build_psi_direct(psi);
      const SparseState recursive = build_psi_recursive(psi);
      const double amplitude = 1.0 / std::sqrt(psi_term_count(psi).to_double());
      double uniform = std::abs(direct.norm() - 1.0);
      for (const auto& t : direct.terms()) uniform = std::max(uniform, std::abs(t.amplitude - amplitude));
      construction.record(std::max(uniform, max_amplitude_difference(direct, recursive)));

      const SparseState arbitrary = random_state(m, rng);
      for (std::size_t j = 0; j < m; ++j) {
        for (Register r : {Register::Signal, Register::Idler}) {
          commutators.record(commutator_residual(direct, r, j));
          commutators.record(commutator_residual(arbitrary, r, j));
        }
        if (n >= 1) annihilation.record(annihilation_identity_residual(psi, j));
      }

      for (double eta : kEtas) {
        const LossParams loss{eta, psi};
        const MixtureComponents expected = rho_pres_components(loss);
        const MixtureComponents grouped = decompose_by_environment(beamsplitter_oracle(loss));
        double worst = grouped.components.size() == expected.components.size() ? 0.0 : INFINITY;
        for (const auto& g : grouped.components) {
          const MixtureComponent* e = find_component(expected, g.absorbed);
          if (e == nullptr) {
            worst = INFINITY;
            continue;
          }
          worst = std::max({worst, std::abs(g.weight - e->weight), max_amplitude_difference(g.state, e->state)});
        }
        decomposition.record(worst);
        completeness.record(std::abs(expected.total_weight() - 1.0));

        double gram = 0.0;
        const auto& cs = expected.components;
        for (std::size_t a = 0; a < cs.size(); ++a) {
          for (std::size_t b = a; b < cs.size(); ++b) {
            const double delta = a == b ? 1.0 : 0.0;
            gram = std::max(gram, std::abs(inner_product(cs[a].state, cs[b].state) - delta));
          }
        }
        orthonormality.record(gram);
        missed.record(std::abs(p_md_oracle(psi, eta) - p_md_closed(psi, eta)));
      }

      for (const NoiseModel& noise : noise_models(n, m, rng)) {
        false_alarm.record(std::abs(p_fa_oracle(psi, noise) - p_fa_closed(psi, noise).total));
      }
    }
  }
  VerificationReport report;
  report.max_n = max_n;
  report.max_m = max_m;
  report.checks = {construction, commutators, annihilation, decomposition,
                   completeness, orthonormality, missed, false_alarm};
  return report;
}

void write_report(std::ostream& out, const VerificationReport& report) {
  char line[200];
  std::snprintf(line, sizeof line, "verify N=0..%u M=1..%u\n", report.max_n, report.max_m);
  out << line;
  std::snprintf(line, sizeof line, "%-46s %7s %12s %9s  %s\n", "check", "cases", "worst", "tol", "status");
  out << line;
  for (const auto& c : report.checks) {
    std::snprintf(line, sizeof line, "%-46s %7zu %12.3e %9.0e  %s\n", c.name.c_str(), c.cases, c.worst, c.tolerance,
                  c.passed() ? "PASS" : "FAIL");
    out << line;
  }
  out << (report.passed() ? "all checks passed\n" : "verification FAILED\n");
}

}  // namespace psin
