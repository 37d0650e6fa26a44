// Copyright 2026 The psin Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "psin/detection.hpp"
#include "psin/errors.hpp"

namespace psin {
namespace {

std::vector<double> random_table(std::size_t length, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> value(0.0, 0.1);
  std::vector<double> out(length);
  for (double& v : out) v = value(rng);
  return out;
}

TEST(MissedDetection, ClosedFormExamples) {
  EXPECT_EQ(p_md_closed({1, 2}, 0.0), 1.0);
  EXPECT_EQ(p_md_closed({10, 2}, 0.5), 0.0009765625);
  EXPECT_EQ(p_md_closed({3, 2}, 1.0), 0.0);
  EXPECT_EQ(p_md_closed({0, 2}, 0.3), 1.0);
  EXPECT_THROW(p_md_closed({1, 1}, 1.2), std::invalid_argument);
}

TEST(MissedDetection, ClosedFormIgnoresModeCount) {
  for (std::uint32_t n = 0; n <= 20; ++n) {
    for (double eta : {0.1, 0.2, 0.5, 0.8, 0.99}) {
      const double reference = p_md_closed({n, 1}, eta);
      EXPECT_EQ(p_md_closed({n, 2}, eta), reference);
      EXPECT_EQ(p_md_closed({n, 5}, eta), reference);
    }
  }
}

TEST(MissedDetection, OracleMatchesClosedForm) {
  EXPECT_NEAR(p_md_oracle({1, 2}, 0.5), 0.5, 1e-12);
  EXPECT_NEAR(p_md_oracle({2, 2}, 0.0), 1.0, 1e-12);
  EXPECT_NEAR(p_md_oracle({3, 2}, 0.4), 0.216, 1e-12);
  for (std::uint32_t n = 0; n <= 3; ++n) {
    for (std::uint32_t m = 1; m <= 3; ++m) {
      for (double eta : {0.2, 0.5, 0.8}) {
        EXPECT_NEAR(p_md_oracle({n, m}, eta), p_md_closed({n, m}, eta), 1e-10);
      }
    }
  }
}

TEST(FalseAlarm, ClosedFormExamples) {
  const auto two = p_fa_closed({2, 2}, NoiseModel::table({0.1, 0.05}, 2));
  EXPECT_NEAR(two.total, 0.1 * 2.0 / 3.0 + 0.05 * (2.0 / 3.0) * 0.5, 1e-16);
  ASSERT_EQ(two.terms.size(), 2u);
  EXPECT_NEAR(two.terms[0].coefficient.value(), 2.0 / 3.0, 1e-16);
  EXPECT_NEAR(two.terms[1].coefficient.value(), 1.0 / 3.0, 1e-16);

  // M = 1: every coefficient is 1.
  const auto single_mode = p_fa_closed({3, 1}, NoiseModel::table({0.1, 0.02, 0.003}, 1));
  EXPECT_NEAR(single_mode.total, 0.123, 1e-15);

  for (std::uint32_t m = 1; m <= 50; ++m) {
    const auto one = p_fa_closed({1, m}, NoiseModel::table({0.3}, m));
    EXPECT_EQ(one.terms[0].coefficient.value(), 1.0 / m);
  }
}

TEST(FalseAlarm, ShortTablesAreZeroExtended) {
  const auto fa = p_fa_closed({4, 2}, NoiseModel::table({0.2}, 2));
  ASSERT_EQ(fa.terms.size(), 4u);
  EXPECT_TRUE(fa.terms[3].contribution.is_zero());
  EXPECT_NEAR(fa.total, 0.2 * 4.0 / 5.0, 1e-16);
}

TEST(FalseAlarm, OracleExamples) {
  EXPECT_EQ(p_fa_oracle({2, 2}, NoiseModel::table({}, 2)), 0.0);
  EXPECT_NEAR(p_fa_oracle({1, 2}, NoiseModel::table({0.2}, 2)), 0.1, 1e-15);
  EXPECT_NEAR(p_fa_oracle({2, 2}, NoiseModel::table({0.1, 0.05}, 2)),
              p_fa_closed({2, 2}, NoiseModel::table({0.1, 0.05}, 2)).total, 1e-12);
}

TEST(FalseAlarmProperty, OracleMatchesClosedFormOnRandomTables) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    for (std::uint32_t n = 1; n <= 3; ++n) {
      for (std::uint32_t m = 1; m <= 3; ++m) {
        const NoiseModel noise = NoiseModel::table(random_table(n, rng), m);
        EXPECT_NEAR(p_fa_oracle({n, m}, noise), p_fa_closed({n, m}, noise).total, 1e-10);
      }
    }
  }
  for (double nbar : {0.1, 1.0}) {
    for (std::uint32_t n = 1; n <= 3; ++n) {
      for (std::uint32_t m = 1; m <= 3; ++m) {
        const NoiseModel noise = NoiseModel::thermal(nbar, m);
        EXPECT_NEAR(p_fa_oracle({n, m}, noise), p_fa_closed({n, m}, noise).total, 1e-10);
      }
    }
  }
}

TEST(FalseAlarm, NarrowWindowOracleMatchesRestrictedSum) {
  std::mt19937_64 rng(29);
  for (std::uint32_t n = 2; n <= 3; ++n) {
    for (std::uint32_t m = 1; m <= 3; ++m) {
      const NoiseModel noise = NoiseModel::table(random_table(n, rng), m);
      for (std::uint32_t lo = 1; lo <= n; ++lo) {
        for (std::uint32_t hi = lo; hi <= n; ++hi) {
          const PhotonWindow window{lo, hi};
          const auto closed = p_fa_closed({n, m}, noise, window);
          EXPECT_EQ(closed.terms.size(), hi - lo + 1);
          EXPECT_NEAR(p_fa_oracle({n, m}, noise, window), closed.total, 1e-10);
        }
      }
    }
  }
  EXPECT_THROW(p_fa_closed({2, 2}, NoiseModel::table({}, 2), PhotonWindow{0, 2}), std::invalid_argument);
  EXPECT_THROW(p_fa_closed({2, 2}, NoiseModel::table({}, 2), PhotonWindow{1, 3}), std::invalid_argument);
}

TEST(FalseAlarm, OracleRefusesLargeInstances) {
  EXPECT_THROW(p_fa_oracle({10, 10}, NoiseModel::thermal(0.1, 10)), CapExceeded);
  EXPECT_THROW(p_fa_closed({2, 3}, NoiseModel::thermal(0.1, 2)), std::invalid_argument);
}

TEST(ProjectorTest, RankMatchesComponentCount) {
  for (std::uint32_t n = 0; n <= 4; ++n) {
    for (std::uint32_t m = 1; m <= 3; ++m) {
      std::size_t expected = 0;
      for (std::uint32_t k = 0; k < n; ++k) expected += count_compositions(k, m).raw().get_ui();
      EXPECT_EQ(Projector({n, m}).rank(), expected);
    }
  }
}

TEST(ProjectorProperty, IsIdempotentOnArbitraryStates) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::uint32_t> count(0, 2);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  for (std::uint32_t n = 1; n <= 3; ++n) {
    for (std::uint32_t m = 1; m <= 3; ++m) {
      const Projector p({n, m});
      std::vector<SparseState::Term> terms;
      // Bias towards the projector's support: copy keys of its components.
      for (const auto& c : p.components()) {
        for (const auto& t : c.state.terms()) terms.push_back({t.key, {amp(rng), amp(rng)}});
      }
      for (int t = 0; t < 10; ++t) {
        BasisKey key(RegisterSet::IdlerSignal, m);
        for (std::size_t s = 0; s < key.width(); ++s) key.set(s, count(rng));
        terms.push_back({key, {amp(rng), amp(rng)}});
      }
      const SparseState x = SparseState::from_terms(RegisterSet::IdlerSignal, m, std::move(terms));
      const SparseState px = p.apply(x);
      EXPECT_LT(distance(p.apply(px), px), 1e-12);
      EXPECT_NEAR(p.expectation(x), inner_product(x, px).real(), 1e-12);
    }
  }
}

TEST(Noise, ThermalDistributionIsNormalized) {
  for (std::size_t m : {1, 2, 5}) {
    for (double nbar : {0.01, 0.1, 1.0}) {
      const NoiseModel noise = NoiseModel::thermal(nbar, m);
      double mass = 0.0;
      for (std::uint64_t k = 0; k < 400; ++k) mass += count_compositions(k, m).to_double() * noise.ptilde(k);
      EXPECT_NEAR(mass, 1.0, 1e-12) << m << " " << nbar;
      const double x = nbar / (1.0 + nbar);
      EXPECT_NEAR(noise.ptilde(3), std::pow(1.0 - x, static_cast<double>(m)) * x * x * x, 1e-15);
    }
  }
  EXPECT_TRUE(NoiseModel::thermal(0.0, 3).log_ptilde(1).is_zero());
  EXPECT_EQ(NoiseModel::thermal(0.0, 3).ptilde(0), 1.0);
  EXPECT_THROW(NoiseModel::thermal(-0.1, 2), std::invalid_argument);
  EXPECT_THROW(thermal_ptilde(NoiseModel::table({0.1}, 2), 1), std::invalid_argument);
}

TEST(Noise, ThermalStaysInLogSpaceForManyModes) {
  const NoiseModel noise = NoiseModel::thermal(0.01, 100000);
  const LogProb p = noise.log_ptilde(1000);
  EXPECT_FALSE(p.is_zero());
  EXPECT_TRUE(std::isfinite(p.log_value()));
  const double x = 0.01 / 1.01;
  EXPECT_NEAR(p.log_value(), 100000 * std::log(1 - x) + 1000 * std::log(x), 1e-8);
}

TEST(Noise, TableLeftoverVacuumMass) {
  const NoiseModel noise = NoiseModel::table({0.1, 0.02}, 2);
  // 1 - (2 * 0.1 + 3 * 0.02)
  EXPECT_NEAR(noise.ptilde(0), 0.74, 1e-15);
  EXPECT_EQ(noise.ptilde(3), 0.0);
  EXPECT_EQ(NoiseModel::table({0.9}, 2).ptilde(0), 0.0);
  EXPECT_THROW(NoiseModel::table({-0.1}, 2), std::invalid_argument);
  EXPECT_THROW((void)NoiseModel::table({0.1}, 2).mean_photons(), std::logic_error);
}

TEST(Noise, ReadsTableFiles) {
  std::istringstream good("# header\n0.1\n\n  0.02\n0.003\n");
  const NoiseModel noise = read_noise_table(good, 2);
  EXPECT_EQ(noise.ptilde(1), 0.1);
  EXPECT_EQ(noise.ptilde(2), 0.02);
  EXPECT_EQ(noise.ptilde(3), 0.003);
  std::istringstream bad("0.1\n0.2 0.3\n");
  try {
    read_noise_table(bad, 2);
    FAIL() << "expected a parse error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  std::istringstream word("abc\n");
  EXPECT_THROW(read_noise_table(word, 2), std::invalid_argument);
}

TEST(Baselines, Examples) {
  const Baselines b = single_photon_baselines({10, 100});
  EXPECT_EQ(b.single_copy, 0.01);
  EXPECT_EQ(b.n_copies, 0.1);
  EXPECT_FALSE(b.out_of_regime);
  const Baselines one = single_photon_baselines({1, 7});
  EXPECT_EQ(one.single_copy, one.n_copies);
  const Baselines big = single_photon_baselines({1000, 500});
  EXPECT_EQ(big.n_copies, 2.0);
  EXPECT_TRUE(big.out_of_regime);
  EXPECT_THROW(single_photon_baselines({1, 0}), std::invalid_argument);
}

TEST(Report, CarriesClosedFormsAndOracles) {
  const DetectionReport r = detection_report({2, 2}, 0.5, NoiseModel::table({0.1, 0.05}, 2), true);
  EXPECT_EQ(r.p_md_closed, 0.25);
  ASSERT_TRUE(r.p_fa_oracle.has_value());
  ASSERT_TRUE(r.p_md_oracle.has_value());
  EXPECT_NEAR(*r.p_fa_oracle, r.p_fa_closed, 1e-12);
  EXPECT_NEAR(*r.p_md_oracle, r.p_md_closed, 1e-12);
  EXPECT_EQ(r.p_fa_terms.size(), 2u);
  EXPECT_FALSE(detection_report({2, 2}, 0.5, NoiseModel::thermal(0.1, 2)).p_fa_oracle.has_value());
}

}  // namespace
}  // namespace psin
