// Copyright 2026 The psin Authors
// SPDX-License-Identifier: Apache-2.0

#include "psin/fock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace psin {

namespace {

void require_cap(std::size_t size) {
  if (size > kAmplitudeCap) {
    throw CapExceeded("state would hold " + std::to_string(size) + " amplitudes (cap " +
                      std::to_string(kAmplitudeCap) + ")");
  }
}

void require_same_shape(const SparseState& a, const SparseState& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("states differ in registers or mode count");
}

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);  // + 0.0 folds -0 into 0
  return buf;
}

}  // namespace

std::string_view register_name(Register r) noexcept {
  switch (r) {
    case Register::Idler:
      return "idler";
    case Register::Signal:
      return "signal";
    case Register::Background:
      return "background";
  }
  return "?";
}

BasisKey BasisKey::from_registers(std::span<const ModeVector> registers) {
  if (registers.size() != 2 && registers.size() != 3) {
    throw std::invalid_argument("a basis key needs two or three registers");
  }
  const std::size_t modes = registers.front().size();
  BasisKey key(static_cast<RegisterSet>(registers.size()), modes);
  for (std::size_t r = 0; r < registers.size(); ++r) {
    if (registers[r].size() != modes) {
      throw std::invalid_argument("all registers in a key must have the same mode count");
    }
    for (std::size_t i = 0; i < modes; ++i) key.set(r * modes + i, registers[r][i]);
  }
  return key;
}

void BasisKey::set(std::size_t slot, std::uint32_t value) {
  if (value > kMaxModeCount) throw std::overflow_error("mode occupancy exceeds key width");
  counts_.at(slot) = static_cast<std::uint16_t>(value);
}

SparseState::SparseState(RegisterSet registers, std::size_t modes)
    : registers_(registers), modes_(modes) {
  if (modes == 0) throw std::invalid_argument("a state needs at least one mode");
}

SparseState SparseState::vacuum(RegisterSet registers, std::size_t modes) {
  SparseState s(registers, modes);
  s.terms_.push_back({BasisKey(registers, modes), 1.0});
  return s;
}

SparseState SparseState::basis(std::initializer_list<ModeVector> registers, Amplitude amplitude) {
  const BasisKey key = BasisKey::from_registers(registers);
  SparseState s(static_cast<RegisterSet>(registers.size()), registers.begin()->size());
  return from_terms(s.registers_, s.modes_, {{key, amplitude}});
}

SparseState SparseState::from_terms(RegisterSet registers, std::size_t modes,
                                    std::vector<Term> terms) {
  SparseState s(registers, modes);
  const std::size_t width = register_count(registers) * modes;
  for (const Term& t : terms) {
    if (t.key.width() != width) throw std::invalid_argument("basis key does not match state shape");
  }
  const auto before = [](const Term& a, const Term& b) { return canonical_before(a.key, b.key); };
  if (!std::is_sorted(terms.begin(), terms.end(), before)) {
    std::stable_sort(terms.begin(), terms.end(), before);
  }
  s.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!s.terms_.empty() && s.terms_.back().key == t.key) {
      s.terms_.back().amplitude += t.amplitude;
    } else {
      s.terms_.push_back(std::move(t));
    }
  }
  std::erase_if(s.terms_, [](const Term& t) { return std::abs(t.amplitude) < kPruneThreshold; });
  require_cap(s.terms_.size());
  return s;
}

SparseState::Amplitude SparseState::amplitude(const BasisKey& key) const {
  const auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                                   [](const Term& t, const BasisKey& k) { return canonical_before(t.key, k); });
  if (it != terms_.end() && it->key == key) return it->amplitude;
  return 0.0;
}

double SparseState::norm_sq() const {
  double acc = 0.0;
  for (const Term& t : terms_) acc += std::norm(t.amplitude);
  return acc;
}

double SparseState::norm() const { return std::sqrt(norm_sq()); }

std::size_t SparseState::slot(Register r, std::size_t mode) const {
  if (!has_register(registers_, r)) {
    throw std::invalid_argument("register " + std::string(register_name(r)) + " not present in state");
  }
  if (mode >= modes_) throw std::out_of_range("mode index " + std::to_string(mode) + " out of range");
  return static_cast<std::size_t>(r) * modes_ + mode;
}

ModeVector SparseState::register_counts(const BasisKey& key, Register r) const {
  const std::size_t base = slot(r, 0);
  ModeVector v(modes_);
  for (std::size_t i = 0; i < modes_; ++i) v[i] = key.at(base + i);
  return v;
}

SparseState apply_create(const SparseState& state, Register r, std::size_t mode) {
  const std::size_t slot = state.slot(r, mode);
  // Adding the same unit vector to every key preserves canonical order.
  std::vector<SparseState::Term> out;
  out.reserve(state.size());
  for (const auto& t : state.terms()) {
    const std::uint32_t n = t.key.at(slot);
    SparseState::Term moved{t.key, t.amplitude * std::sqrt(static_cast<double>(n + 1))};
    moved.key.set(slot, n + 1);
    out.push_back(std::move(moved));
  }
  return SparseState::from_terms(state.registers(), state.modes(), std::move(out));
}

SparseState apply_annihilate(const SparseState& state, Register r, std::size_t mode) {
  const std::size_t slot = state.slot(r, mode);
  std::vector<SparseState::Term> out;
  out.reserve(state.size());
  for (const auto& t : state.terms()) {
    const std::uint32_t n = t.key.at(slot);
    if (n == 0) continue;
    SparseState::Term moved{t.key, t.amplitude * std::sqrt(static_cast<double>(n))};
    moved.key.set(slot, n - 1);
    out.push_back(std::move(moved));
  }
  return SparseState::from_terms(state.registers(), state.modes(), std::move(out));
}

SparseState::Amplitude inner_product(const SparseState& a, const SparseState& b) {
  require_same_shape(a, b);
  SparseState::Amplitude acc = 0.0;
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  while (ia != a.terms().end() && ib != b.terms().end()) {
    if (canonical_before(ia->key, ib->key)) {
      ++ia;
    } else if (canonical_before(ib->key, ia->key)) {
      ++ib;
    } else {
      acc += std::conj(ia->amplitude) * ib->amplitude;
      ++ia;
      ++ib;
    }
  }
  return acc;
}

SparseState scale_add(std::span<const ScaledState> parts) {
  if (parts.empty()) throw std::invalid_argument("scale_add needs at least one state");
  const SparseState& first = parts.front().state;
  std::size_t total = 0;
  for (const auto& p : parts) {
    require_same_shape(first, p.state);
    total += p.state.size();
  }
  std::vector<SparseState::Term> terms;
  terms.reserve(total);
  for (const auto& p : parts) {
    if (p.coefficient == SparseState::Amplitude(0.0)) continue;
    for (const auto& t : p.state.terms()) terms.push_back({t.key, p.coefficient * t.amplitude});
  }
  return SparseState::from_terms(first.registers(), first.modes(), std::move(terms));
}

double distance(const SparseState& a, const SparseState& b) {
  return scale_add({{1.0, a}, {-1.0, b}}).norm();
}

double max_amplitude_difference(const SparseState& a, const SparseState& b) {
  double worst = 0.0;
  for (const auto& t : scale_add({{1.0, a}, {-1.0, b}}).terms()) worst = std::max(worst, std::abs(t.amplitude));
  return worst;
}

SparseState normalized(const SparseState& state) {
  const double n = state.norm();
  if (n == 0.0) throw std::domain_error("cannot normalize the zero state");
  return scale_add({{1.0 / n, state}});
}

std::map<ModeVector, SparseState, CanonicalOrder> split_background(const SparseState& state) {
  if (state.registers() != RegisterSet::IdlerSignalBackground) {
    throw std::invalid_argument("split_background needs a three-register state");
  }
  const std::size_t modes = state.modes();
  const std::size_t kept = 2 * modes;
  std::map<ModeVector, std::vector<SparseState::Term>, CanonicalOrder> groups;
  for (const auto& t : state.terms()) {
    BasisKey reduced(RegisterSet::IdlerSignal, modes);
    for (std::size_t s = 0; s < kept; ++s) reduced.set(s, t.key.at(s));
    groups[state.register_counts(t.key, Register::Background)].push_back({std::move(reduced), t.amplitude});
  }
  std::map<ModeVector, SparseState, CanonicalOrder> out;
  for (auto& [env, terms] : groups) {
    out.emplace(env, SparseState::from_terms(RegisterSet::IdlerSignal, modes, std::move(terms)));
  }
  return out;
}

void write_dump(std::ostream& out, const SparseState& state) {
  const std::size_t registers = register_count(state.registers());
  for (const auto& t : state.terms()) {
    for (std::size_t r = 0; r < registers; ++r) {
      out << state.register_counts(t.key, static_cast<Register>(r)).str() << '\t';
    }
    out << format17(t.amplitude.real()) << '\t' << format17(t.amplitude.imag()) << '\n';
  }
}

}  // namespace psin
