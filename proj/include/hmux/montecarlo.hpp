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

#ifndef HMUX_MONTECARLO_HPP
#define HMUX_MONTECARLO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hmux/control.hpp"
#include "hmux/model.hpp"
#include "hmux/rng.hpp"

namespace hmux {

enum class Outcome { Vacuum, Single, Multi };

/// One simulated output period.
struct TrialRecord {
  std::vector<int> pair_counts;
  HeraldFrame herald_bits{1};
  /// Set iff herald_bits has any bit set.
  std::optional<int> selected_bin;
  /// Result of the per-idle-bin η_f gate that realizes the filter factor of
  /// D0 (always true when that factor is disabled).
  bool gate_passed = true;
  int photons_surviving = 0;
  Outcome outcome = Outcome::Vacuum;
};

/// Inverse-CDF sampler over a truncated photon-number pmf.
class PairSampler {
 public:
  static PairSampler from_params(const SourceParams& params);
  /// pmf[n] = P(n pairs); must be non-negative and sum to 1 within 1e-9.
  static PairSampler from_pmf(std::vector<double> pmf);

  int sample(RandomStream& rng) const;

 private:
  explicit PairSampler(std::vector<double> cdf) : cdf_(std::move(cdf)) {}
  std::vector<double> cdf_;
};

/// Samples frames of one scheme. Immutable after construction; one
/// simulator may serve many threads, each with its own RandomStream.
class FrameSimulator {
 public:
  FrameSimulator(const SourceParams& params, const SchemeConfig& scheme);
  FrameSimulator(const SourceParams& params, const SchemeConfig& scheme,
                 PairSampler sampler);

  const SchemeConfig& scheme() const { return scheme_; }

  TrialRecord run(RandomStream& rng) const;
  /// Reuses `record`'s storage.
  void run_into(RandomStream& rng, TrialRecord& record) const;

 private:
  SchemeConfig scheme_;
  PairSampler sampler_;
  double eta_d_;
  double gate_pass_;
  std::vector<double> pic_;
};

/// Simulates one frame from stream (seed, partition 0).
TrialRecord run_frame(const SourceParams& params, const SchemeConfig& scheme,
                      std::uint64_t seed);

struct McOptions {
  std::uint64_t seed = 1;
  std::uint64_t n_trials = 1'000'000;
  /// Trials are split into this many independently seeded partitions. The
  /// result depends on the partition count but not on `threads`.
  int partitions = 16;
  /// 0 = std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct EstimatorResult {
  double eta_hat = 0.0;
  /// sqrt(eta_hat (1 - eta_hat) / n_trials).
  double std_err = 0.0;
  std::uint64_t n_trials = 0;
  /// Single-photon successes by selected bin, index r-1.
  std::vector<std::uint64_t> per_bin_hist;
  std::uint64_t singles = 0;
  std::uint64_t multis = 0;
  std::string rng_algorithm;

  /// Multi-photon outcomes among frames that emitted anything.
  double multi_fraction_of_emitted() const;
};

EstimatorResult estimate_eta(const SourceParams& params,
                             const SchemeConfig& scheme,
                             const McOptions& options);

/// Occupancy model for the ⟨η_lin⟩ estimator.
enum class Occupancy {
  /// Exactly ⌈λN⌉ distinct bins, uniformly at random.
  FixedExpected,
  /// Exactly one bin, uniformly at random (the control curve).
  SingleBin,
  /// Each bin's pair count drawn from the pmf; frames with no pair are
  /// discarded.
  Sampled,
};

struct MeanEstimate {
  double mean = 0.0;
  double std_err = 0.0;
  std::uint64_t n_samples = 0;
};

/// Empirical mean of 10^(-α_inc (N - p)/10) over the last occupied bin p.
MeanEstimate estimate_avg_lin(const SourceParams& params, int n_bins,
                              double lambda, const McOptions& options,
                              Occupancy occupancy = Occupancy::FixedExpected);

}  // namespace hmux

#endif  // HMUX_MONTECARLO_HPP
