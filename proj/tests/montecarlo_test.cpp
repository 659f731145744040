// Copyright 2026 The hmux Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "hmux/montecarlo.hpp"

#include <cmath>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "hmux/efficiency.hpp"
#include "hmux/errors.hpp"

namespace hmux {
namespace {

SourceParams ideal() {
  SourceParams p;
  p.eta_f = p.eta_c = p.eta_sw = 1.0;
  p.eta_det_single = p.eta_det_array = p.eta_conv = 1.0;
  p.array.blanking = 1.0;
  p.alpha_inc_db = 0.0;
  return p;
}

McOptions options(std::uint64_t seed, std::uint64_t trials) {
  McOptions o;
  o.seed = seed;
  o.n_trials = trials;
  return o;
}

TEST(RandomStream, ReproducibleAndDistinctPerPartition) {
  RandomStream a(7, 0), b(7, 0), c(7, 1), d(8, 0);
  bool differs_c = false, differs_d = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
    differs_c |= x != c.uniform();
    differs_d |= x != d.uniform();
  }
  EXPECT_TRUE(differs_c);
  EXPECT_TRUE(differs_d);
}

TEST(RandomStream, BelowStaysInRange) {
  RandomStream r(3, 0);
  std::vector<int> seen(7);
  for (int i = 0; i < 7000; ++i) {
    const auto v = r.below(7);
    ASSERT_LT(v, 7u);
    ++seen[v];
  }
  for (int c : seen) EXPECT_GT(c, 800);
}

TEST(PairSampler, RejectsBadPmf) {
  EXPECT_THROW(PairSampler::from_pmf({}), DomainError);
  EXPECT_THROW(PairSampler::from_pmf({0.5, 0.4}), DomainError);
  EXPECT_THROW(PairSampler::from_pmf({1.5, -0.5}), DomainError);
}

TEST(PairSampler, MatchesPmfFrequencies) {
  const SourceParams p;
  const auto sampler = PairSampler::from_params(p);
  RandomStream rng(11, 0);
  std::vector<int> counts(4);
  const int n = 400000;
  for (int i = 0; i < n; ++i) ++counts[std::min(sampler.sample(rng), 3)];
  for (int k = 0; k < 3; ++k) {
    const double expected = pair_count_distribution(p, k);
    EXPECT_NEAR(counts[k] / static_cast<double>(n), expected,
                5 * std::sqrt(expected * (1 - expected) / n));
  }
}

TEST(RunFrame, VacuumWithoutPumping) {
  SourceParams p;
  p.lambda = 0.0;
  const SchemeConfig s(8, Topology::BinaryDelay, Detection::SingleDetector);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto rec = run_frame(p, s, seed);
    EXPECT_EQ(rec.outcome, Outcome::Vacuum);
    EXPECT_FALSE(rec.selected_bin.has_value());
  }
  EXPECT_EQ(estimate_eta(p, s, options(1, 10000)).eta_hat, 0.0);
}

TEST(RunFrame, ForcedSinglePairAlwaysSingle) {
  const SourceParams p = ideal();
  for (auto det : {Detection::SingleDetector, Detection::DetectorArray}) {
    const SchemeConfig s(8, Topology::BinaryDelay, det);
    const FrameSimulator sim(p, s, PairSampler::from_pmf({0.0, 1.0}));
    RandomStream rng(5, 0);
    for (int i = 0; i < 1000; ++i) {
      const auto rec = sim.run(rng);
      EXPECT_EQ(rec.outcome, Outcome::Single);
      EXPECT_EQ(rec.selected_bin, det == Detection::SingleDetector ? 1 : 8);
    }
  }
}

TEST(RunFrame, SameSeedReplaysRecord) {
  const SourceParams p;
  const SchemeConfig s(16, Topology::BinaryDelay, Detection::DetectorArray);
  for (std::uint64_t seed : {1ull, 42ull, 0xdeadbeefull}) {
    const auto a = run_frame(p, s, seed);
    const auto b = run_frame(p, s, seed);
    EXPECT_EQ(a.pair_counts, b.pair_counts);
    EXPECT_EQ(a.herald_bits, b.herald_bits);
    EXPECT_EQ(a.selected_bin, b.selected_bin);
    EXPECT_EQ(a.gate_passed, b.gate_passed);
    EXPECT_EQ(a.photons_surviving, b.photons_surviving);
    EXPECT_EQ(a.outcome, b.outcome);
  }
}

TEST(RunFrame, RecordInvariants) {
  SourceParams p;
  p.lambda = 0.5;
  for (auto det : {Detection::SingleDetector, Detection::DetectorArray}) {
    const SchemeConfig s(12, Topology::SingleDelayLine, det);
    const FrameSimulator sim(p, s);
    RandomStream rng(9, 0);
    for (int i = 0; i < 5000; ++i) {
      const auto rec = sim.run(rng);
      ASSERT_EQ(rec.herald_bits.size(), 12);
      EXPECT_EQ(rec.selected_bin.has_value(), rec.herald_bits.any());
      EXPECT_EQ(rec.outcome == Outcome::Single, rec.photons_surviving == 1);
      EXPECT_EQ(rec.outcome == Outcome::Multi, rec.photons_surviving > 1);
      if (rec.selected_bin) {
        EXPECT_TRUE(rec.herald_bits.test(*rec.selected_bin));
        EXPECT_LE(rec.photons_surviving, rec.pair_counts[*rec.selected_bin - 1]);
        for (int r = 1; r <= 12; ++r) {
          if (rec.pair_counts[r - 1] == 0) {
            EXPECT_FALSE(rec.herald_bits.test(r));
          }
        }
      }
    }
  }
}

TEST(EstimateEta, IndependentOfThreadCount) {
  const SourceParams p;
  const SchemeConfig s(31, Topology::BinaryDelay, Detection::SingleDetector);
  auto o = options(123, 200000);
  o.threads = 1;
  const auto a = estimate_eta(p, s, o);
  o.threads = 4;
  const auto b = estimate_eta(p, s, o);
  EXPECT_EQ(a.singles, b.singles);
  EXPECT_EQ(a.multis, b.multis);
  EXPECT_EQ(a.per_bin_hist, b.per_bin_hist);
  EXPECT_EQ(a.rng_algorithm, std::string(kRngAlgorithm));
  EXPECT_DOUBLE_EQ(a.std_err,
                   std::sqrt(a.eta_hat * (1 - a.eta_hat) / a.n_trials));
}

TEST(EstimateEta, AgreesWithAnalyticOnSmallGrid) {
  for (auto dist : {PairDistribution::Poisson, PairDistribution::ThermalApprox}) {
    for (bool filter : {true, false}) {
      SourceParams p;
      p.pair_dist = dist;
      p.filter_in_d0 = filter;
      for (const auto& s :
           {SchemeConfig(20, Topology::BinaryDelay, Detection::SingleDetector),
            SchemeConfig(20, Topology::SingleDelayLine, Detection::DetectorArray)}) {
        const auto mc = estimate_eta(p, s, options(77, 300000));
        const double eta = total_efficiency(p, s).eta_total;
        EXPECT_LT(std::abs(mc.eta_hat - eta), 3.5 * mc.std_err)
            << to_string(dist) << " filter=" << filter << " "
            << to_string(s.topology());
      }
    }
  }
}

TEST(EstimateEta, PerBinHistogramChiSquared) {
  const SourceParams p;
  const SchemeConfig s(8, Topology::BinaryDelay, Detection::SingleDetector);
  const auto mc = estimate_eta(p, s, options(2024, 1000000));
  const auto b = total_efficiency(p, s);
  const double n = static_cast<double>(mc.n_trials);
  double chi2 = 0.0;
  double other_observed = n;
  double other_expected = n;
  for (int r = 0; r < 8; ++r) {
    const double e = n * b.per_bin_success[r];
    const double o = static_cast<double>(mc.per_bin_hist[r]);
    chi2 += (o - e) * (o - e) / e;
    other_observed -= o;
    other_expected -= e;
  }
  chi2 += (other_observed - other_expected) * (other_observed - other_expected) /
          other_expected;
  const boost::math::chi_squared dist(8);
  const double p_value = boost::math::cdf(boost::math::complement(dist, chi2));
  EXPECT_GT(p_value, 0.001) << "chi2=" << chi2;
}

TEST(EstimateEta, UnbiasedOverSeeds) {
  const SourceParams p;
  const SchemeConfig s(8, Topology::BinaryDelay, Detection::DetectorArray);
  const double eta = total_efficiency(p, s).eta_total;
  const std::uint64_t trials = 100000;
  double sum = 0.0;
  for (std::uint64_t seed = 1000; seed < 1050; ++seed) {
    sum += estimate_eta(p, s, options(seed, trials)).eta_hat;
  }
  const double mean = sum / 50.0;
  const double sigma = std::sqrt(eta * (1 - eta) / trials);
  EXPECT_LT(std::abs(mean - eta), 3.0 * sigma / std::sqrt(50.0));
}

TEST(EstimateEta, MultiPhotonFractionBelowSixPercent) {
  const SourceParams p = ideal();
  const SchemeConfig s(16, Topology::BinaryDelay, Detection::SingleDetector);
  const auto mc = estimate_eta(p, s, options(3, 500000));
  EXPECT_LE(mc.multi_fraction_of_emitted(), 0.06);
  EXPECT_NEAR(mc.multi_fraction_of_emitted(), conditional_multiphoton(p), 0.003);
}

TEST(EstimateAvgLin, NoLossIsOne) {
  SourceParams p;
  p.alpha_inc_db = 0.0;
  const auto m = estimate_avg_lin(p, 40, 0.1, options(1, 10000));
  EXPECT_DOUBLE_EQ(m.mean, 1.0);
}

TEST(EstimateAvgLin, SingleBinMatchesUniformAverage) {
  const SourceParams p;
  const int n = 50;
  double expected = 0.0;
  for (int i = 1; i <= n; ++i) {
    expected += std::pow(10.0, -p.alpha_inc_db * (n - i) / 10.0) / n;
  }
  const auto m =
      estimate_avg_lin(p, n, 0.1, options(5, 400000), Occupancy::SingleBin);
  EXPECT_LT(std::abs(m.mean - expected), 3.0 * m.std_err);
}

TEST(EstimateAvgLin, FixedOccupancyMatchesLastBinWeights) {
  const SourceParams p;
  const int n = 60;
  const double analytic =
      avg_linear_transmission(p, n, Selection::LastPhoton, 0.1);
  const auto m = estimate_avg_lin(p, n, 0.1, options(6, 400000));
  EXPECT_EQ(expected_occupied_bins(0.1, n), 6);
  EXPECT_LT(std::abs(m.mean - analytic), 3.0 * m.std_err);
}

TEST(EstimateAvgLin, SampledOccupancyRuns) {
  const SourceParams p;
  const auto m =
      estimate_avg_lin(p, 60, 0.1, options(7, 20000), Occupancy::Sampled);
  EXPECT_GT(m.n_samples, 19000u);
  EXPECT_GT(m.mean, avg_linear_transmission(p, 60, Selection::FirstPhoton, 0.1));
  EXPECT_LE(m.mean, 1.0);
}

}  // namespace
}  // namespace hmux
