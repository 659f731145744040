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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "hmux/efficiency.hpp"
#include "hmux/errors.hpp"

namespace hmux {

PairSampler PairSampler::from_params(const SourceParams& params) {
  return from_pmf(pair_pmf(params));
}

PairSampler PairSampler::from_pmf(std::vector<double> pmf) {
  if (pmf.empty()) throw DomainError("empty pmf");
  double total = 0.0;
  for (double p : pmf) {
    if (p < 0.0) throw DomainError("negative pmf entry");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw DomainError("pmf does not sum to 1");
  std::partial_sum(pmf.begin(), pmf.end(), pmf.begin());
  pmf.back() = 1.0;
  return PairSampler(std::move(pmf));
}

int PairSampler::sample(RandomStream& rng) const {
  const double u = rng.uniform();
  int n = 0;
  while (u >= cdf_[n]) ++n;
  return n;
}

FrameSimulator::FrameSimulator(const SourceParams& params,
                               const SchemeConfig& scheme)
    : FrameSimulator(params, scheme, PairSampler::from_params(params)) {}

FrameSimulator::FrameSimulator(const SourceParams& params,
                               const SchemeConfig& scheme, PairSampler sampler)
    : scheme_(scheme),
      sampler_(std::move(sampler)),
      eta_d_(detection_efficiency(params, scheme.detection())),
      gate_pass_(params.filter_in_d0 ? params.eta_f : 1.0) {
  params.validate();
  pic_.reserve(scheme.n_bins());
  for (int r = 1; r <= scheme.n_bins(); ++r) {
    pic_.push_back(pic_transmission(params, scheme, r));
  }
}

TrialRecord FrameSimulator::run(RandomStream& rng) const {
  TrialRecord record;
  run_into(rng, record);
  return record;
}

void FrameSimulator::run_into(RandomStream& rng, TrialRecord& record) const {
  const int n = scheme_.n_bins();
  record.pair_counts.assign(n, 0);
  if (record.herald_bits.size() != n) record.herald_bits = HeraldFrame(n);
  for (int r = 1; r <= n; ++r) {
    const int pairs = sampler_.sample(rng);
    record.pair_counts[r - 1] = pairs;
    bool heralded = false;
    for (int k = 0; k < pairs; ++k) heralded |= rng.bernoulli(eta_d_);
    record.herald_bits.set(r, heralded);
  }

  record.selected_bin = scheme_.selection() == Selection::FirstPhoton
                            ? select_first(record.herald_bits)
                            : select_last(record.herald_bits).bin;
  record.gate_passed = true;
  record.photons_surviving = 0;
  record.outcome = Outcome::Vacuum;
  if (!record.selected_bin) return;

  const int r = *record.selected_bin;
  if (gate_pass_ < 1.0) {
    const int idle =
        scheme_.selection() == Selection::FirstPhoton ? r - 1 : n - r;
    for (int k = 0; k < idle && record.gate_passed; ++k) {
      record.gate_passed = rng.bernoulli(gate_pass_);
    }
  }
  if (!record.gate_passed) return;

  const double pic = pic_[r - 1];
  for (int k = 0; k < record.pair_counts[r - 1]; ++k) {
    record.photons_surviving += rng.bernoulli(pic) ? 1 : 0;
  }
  if (record.photons_surviving == 1) {
    record.outcome = Outcome::Single;
  } else if (record.photons_surviving > 1) {
    record.outcome = Outcome::Multi;
  }
}

TrialRecord run_frame(const SourceParams& params, const SchemeConfig& scheme,
                      std::uint64_t seed) {
  RandomStream rng(seed, 0);
  return FrameSimulator(params, scheme).run(rng);
}

double EstimatorResult::multi_fraction_of_emitted() const {
  const auto emitted = singles + multis;
  return emitted == 0 ? 0.0 : static_cast<double>(multis) / emitted;
}

namespace {

std::uint64_t partition_size(const McOptions& o, int p) {
  const auto parts = static_cast<std::uint64_t>(o.partitions);
  return o.n_trials / parts +
         (static_cast<std::uint64_t>(p) < o.n_trials % parts ? 1 : 0);
}

/// Runs `work(p)` for every partition on a small worker pool. Each call
/// writes only its own slot of the caller's result vector.
template <typename Work>
void for_each_partition(const McOptions& o, Work work) {
  if (o.partitions < 1) throw DomainError("partitions must be >= 1");
  unsigned threads = o.threads == 0 ? std::thread::hardware_concurrency()
                                    : o.threads;
  threads = std::clamp(threads, 1u, static_cast<unsigned>(o.partitions));
  if (threads == 1) {
    for (int p = 0; p < o.partitions; ++p) work(p);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int p = next++; p < o.partitions; p = next++) work(p);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

EstimatorResult estimate_eta(const SourceParams& params,
                             const SchemeConfig& scheme,
                             const McOptions& options) {
  if (options.n_trials < 1) throw DomainError("n_trials must be >= 1");
  const FrameSimulator sim(params, scheme);
  const int n = scheme.n_bins();

  struct Partial {
    std::vector<std::uint64_t> hist;
    std::uint64_t singles = 0;
    std::uint64_t multis = 0;
  };
  std::vector<Partial> partials(options.partitions);
  for_each_partition(options, [&](int p) {
    Partial& acc = partials[p];
    acc.hist.assign(n, 0);
    RandomStream rng(options.seed, static_cast<std::uint64_t>(p));
    TrialRecord record;
    const auto trials = partition_size(options, p);
    for (std::uint64_t t = 0; t < trials; ++t) {
      sim.run_into(rng, record);
      if (record.outcome == Outcome::Single) {
        ++acc.singles;
        ++acc.hist[*record.selected_bin - 1];
      } else if (record.outcome == Outcome::Multi) {
        ++acc.multis;
      }
    }
  });

  EstimatorResult out;
  out.n_trials = options.n_trials;
  out.per_bin_hist.assign(n, 0);
  out.rng_algorithm = std::string(kRngAlgorithm);
  for (const auto& acc : partials) {
    out.singles += acc.singles;
    out.multis += acc.multis;
    for (int r = 0; r < n; ++r) out.per_bin_hist[r] += acc.hist[r];
  }
  out.eta_hat = static_cast<double>(out.singles) / out.n_trials;
  out.std_err = std::sqrt(out.eta_hat * (1.0 - out.eta_hat) / out.n_trials);
  return out;
}

MeanEstimate estimate_avg_lin(const SourceParams& params, int n_bins,
                              double lambda, const McOptions& options,
                              Occupancy occupancy) {
  if (n_bins < 1) throw DomainError("N must be >= 1");
  if (!(lambda > 0.0)) throw DomainError("lambda must be > 0");
  if (options.n_trials < 1) throw DomainError("n_trials must be >= 1");
  const int n_bar = occupancy == Occupancy::SingleBin
                        ? 1
                        : expected_occupied_bins(lambda, n_bins);
  if (occupancy == Occupancy::FixedExpected && n_bar > n_bins) {
    throw DomainError("ceil(lambda N) exceeds N");
  }
  std::vector<double> transmission(n_bins);
  for (int p = 1; p <= n_bins; ++p) {
    transmission[p - 1] =
        std::pow(10.0, -params.alpha_inc_db * (n_bins - p) / 10.0);
  }
  SourceParams at_lambda = params;
  at_lambda.lambda = lambda;
  const PairSampler sampler = PairSampler::from_params(at_lambda);

  struct Partial {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::uint64_t count = 0;
  };
  std::vector<Partial> partials(options.partitions);
  for_each_partition(options, [&](int p) {
    Partial& acc = partials[p];
    RandomStream rng(options.seed, static_cast<std::uint64_t>(p));
    std::vector<bool> taken(n_bins + 1);
    const auto trials = partition_size(options, p);
    for (std::uint64_t t = 0; t < trials; ++t) {
      int last = 0;
      if (occupancy == Occupancy::Sampled) {
        for (int r = 1; r <= n_bins; ++r) {
          if (sampler.sample(rng) > 0) last = r;
        }
        if (last == 0) continue;
      } else {
        // Floyd's sampling of n̄ distinct bins from 1..N.
        std::fill(taken.begin(), taken.end(), false);
        for (int j = n_bins - n_bar + 1; j <= n_bins; ++j) {
          int pick = 1 + static_cast<int>(rng.below(j));
          if (taken[pick]) pick = j;
          taken[pick] = true;
          last = std::max(last, pick);
        }
      }
      const double v = transmission[last - 1];
      acc.sum += v;
      acc.sum_sq += v * v;
      ++acc.count;
    }
  });

  Partial total;
  for (const auto& acc : partials) {
    total.sum += acc.sum;
    total.sum_sq += acc.sum_sq;
    total.count += acc.count;
  }
  MeanEstimate out;
  out.n_samples = total.count;
  if (total.count == 0) return out;
  out.mean = total.sum / total.count;
  const double var =
      std::max(0.0, total.sum_sq / total.count - out.mean * out.mean);
  out.std_err = std::sqrt(var / total.count);
  return out;
}

}  // namespace hmux
