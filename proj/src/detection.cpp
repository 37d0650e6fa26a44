// Copyright 2026 The psin Authors
// SPDX-License-Identifier: Apache-2.0

#include "psin/detection.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace psin {

namespace {

struct ReturnedRange {
  std::uint32_t lo;
  std::uint32_t hi;
  [[nodiscard]] bool empty() const { return lo > hi; }
};

ReturnedRange resolve(PsiParams psi, PhotonWindow window) {
  if (psi.photons == 0) return {1, 0};
  const std::uint32_t hi = window.max_returned.value_or(psi.photons);
  if (window.min_returned < 1 || window.min_returned > hi || hi > psi.photons) {
    throw std::invalid_argument("photon window must satisfy 1 <= min <= max <= N");
  }
  return {window.min_returned, hi};
}

void require_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in [0, 1]");
}

void require_matching_modes(PsiParams psi, const NoiseModel& noise) {
  if (psi.modes == 0) throw std::invalid_argument("M must be positive");
  if (noise.modes() != psi.modes) throw std::invalid_argument("noise model has a different mode count");
}

}  // namespace

NoiseModel::NoiseModel(std::variant<Thermal, Table> kind, std::size_t modes)
    : kind_(std::move(kind)), modes_(modes) {
  if (modes == 0) throw std::invalid_argument("noise model needs at least one mode");
}

NoiseModel NoiseModel::thermal(double mean_photons, std::size_t modes) {
  if (!(mean_photons >= 0.0) || std::isinf(mean_photons)) {
    throw std::invalid_argument("thermal mean photon number must be finite and non-negative");
  }
  return NoiseModel(Thermal{mean_photons}, modes);
}

NoiseModel NoiseModel::table(std::vector<double> values, std::size_t modes) {
  for (double v : values) {
    if (!(v >= 0.0) || std::isinf(v)) throw std::invalid_argument("noise table entries must be finite and >= 0");
  }
  return NoiseModel(Table{std::move(values)}, modes);
}

bool NoiseModel::is_thermal() const noexcept { return std::holds_alternative<Thermal>(kind_); }

double NoiseModel::mean_photons() const {
  if (!is_thermal()) throw std::logic_error("table noise model has no mean photon parameter");
  return std::get<Thermal>(kind_).mean_photons;
}

LogProb NoiseModel::log_ptilde(std::uint64_t k) const {
  if (const auto* t = std::get_if<Thermal>(&kind_)) {
    const double nbar = t->mean_photons;
    // log(1 - x) = -log1p(n̄), log x = log n̄ - log1p(n̄)
    const double log_vacuum = -std::log1p(nbar) * static_cast<double>(modes_);
    if (k == 0) return LogProb::from_log(log_vacuum);
    if (nbar == 0.0) return LogProb::zero();
    return LogProb::from_log(log_vacuum + static_cast<double>(k) * (std::log(nbar) - std::log1p(nbar)));
  }
  const auto& values = std::get<Table>(kind_).values;
  if (k == 0) {
    double mass = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      mass += count_compositions(i + 1, modes_).to_double() * values[i];
    }
    return LogProb::from_value(std::max(0.0, 1.0 - mass));
  }
  if (k > values.size()) return LogProb::zero();
  return LogProb::from_value(values[k - 1]);
}

double thermal_ptilde(const NoiseModel& model, std::uint64_t k) {
  if (!model.is_thermal()) throw std::invalid_argument("thermal_ptilde needs a thermal noise model");
  return model.ptilde(k);
}

std::vector<double> read_noise_values(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream field(line);
    double v = 0.0;
    std::string trailing;
    if (!(field >> v) || (field >> trailing)) {
      throw std::invalid_argument("noise table line " + std::to_string(line_number) +
                                  ": expected a single number");
    }
    values.push_back(v);
  }
  return values;
}

NoiseModel read_noise_table(std::istream& in, std::size_t modes) {
  return NoiseModel::table(read_noise_values(in), modes);
}

Projector::Projector(PsiParams psi, PhotonWindow window, double reference_eta) {
  const ReturnedRange range = resolve(psi, window);
  if (range.empty()) return;
  const LossParams reference{reference_eta, psi};
  require_valid(reference);
  // Returned photon count k pairs with environment total N - k.
  for (std::uint32_t k = range.hi + 1; k-- > range.lo;) {
    for_each_composition(psi.photons - k, psi.modes, [&](const ModeVector& absorbed) {
      auto [weight, state] = phi_component(reference, absorbed);
      components_.push_back({absorbed, weight, std::move(state)});
    });
  }
}

double Projector::expectation(const SparseState& x) const {
  double acc = 0.0;
  for (const auto& c : components_) acc += std::norm(inner_product(c.state, x));
  return acc;
}

double Projector::expectation(const BasisKey& key) const {
  double acc = 0.0;
  for (const auto& c : components_) acc += std::norm(c.state.amplitude(key));
  return acc;
}

SparseState Projector::apply(const SparseState& x) const {
  std::vector<SparseState::Amplitude> overlaps;
  overlaps.reserve(components_.size());
  for (const auto& c : components_) overlaps.push_back(inner_product(c.state, x));
  std::vector<ScaledState> parts;
  parts.reserve(components_.size());
  for (std::size_t i = 0; i < components_.size(); ++i) parts.push_back({overlaps[i], components_[i].state});
  if (parts.empty()) return SparseState(x.registers(), x.modes());
  return scale_add(parts);
}

double p_md_closed(PsiParams psi, double eta) {
  require_eta(eta);
  return std::pow(1.0 - eta, static_cast<double>(psi.photons));
}

FalseAlarmBreakdown p_fa_closed(PsiParams psi, const NoiseModel& noise, PhotonWindow window) {
  require_matching_modes(psi, noise);
  const ReturnedRange range = resolve(psi, window);
  FalseAlarmBreakdown out;
  if (range.empty()) return out;
  const std::vector<LogProb> coefficients = falling_ratio_series(psi.photons, psi.modes);
  out.terms.reserve(range.hi - range.lo + 1);
  for (std::uint32_t k = range.lo; k <= range.hi; ++k) {
    const LogProb coefficient = coefficients[k - 1];
    const LogProb contribution = coefficient * noise.log_ptilde(k);
    out.terms.push_back({k, coefficient, contribution});
    out.total += contribution.value();
    out.total_log += contribution;
  }
  return out;
}

double p_fa_oracle(PsiParams psi, const NoiseModel& noise, PhotonWindow window) {
  require_matching_modes(psi, noise);
  const BigCount idlers = psi_term_count(psi);
  const BigCount environments = count_compositions(psi.photons, psi.modes + 1);  // all |n_B| <= N
  const BigCount ensemble = idlers * environments;
  if (ensemble.raw() > kAmplitudeCap) {
    throw CapExceeded("noise-only ensemble for N=" + std::to_string(psi.photons) + ", M=" +
                      std::to_string(psi.modes) + " has " + ensemble.str() + " members");
  }
  const Projector projector(psi, window);
  // Environment vectors with more than N photons have no overlap with any
  // projector component, so shells above N are skipped.
  double acc = 0.0;
  for_each_composition(psi.photons, psi.modes, [&](const ModeVector& idler) {
    for (std::uint32_t shell = 0; shell <= psi.photons; ++shell) {
      const double p = noise.ptilde(shell);
      if (p == 0.0) continue;
      for_each_composition(shell, psi.modes, [&](const ModeVector& environment) {
        acc += p * projector.expectation(BasisKey::from_registers({idler, environment}));
      });
    }
  });
  return acc / idlers.to_double();
}

double p_md_oracle(PsiParams psi, double eta) {
  require_eta(eta);
  const SparseState returned = beamsplitter_oracle({eta, psi});
  const Projector projector(psi);
  double detected = 0.0;
  for (const auto& [environment, branch] : split_background(returned)) {
    detected += projector.expectation(branch);
  }
  return 1.0 - detected;
}

Baselines single_photon_baselines(PsiParams psi) {
  if (psi.modes == 0) throw std::invalid_argument("M must be positive");
  const double m = psi.modes;
  return {1.0 / m, psi.photons / m, psi.photons >= psi.modes};
}

DetectionReport detection_report(PsiParams psi, double eta, const NoiseModel& noise, bool with_oracles) {
  DetectionReport report;
  FalseAlarmBreakdown fa = p_fa_closed(psi, noise);
  report.p_fa_closed = fa.total;
  report.p_fa_terms = std::move(fa.terms);
  report.p_md_closed = p_md_closed(psi, eta);
  if (with_oracles) {
    report.p_fa_oracle = p_fa_oracle(psi, noise);
    report.p_md_oracle = p_md_oracle(psi, eta);
  }
  return report;
}

}  // namespace psin
