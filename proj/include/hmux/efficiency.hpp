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

#ifndef HMUX_EFFICIENCY_HPP
#define HMUX_EFFICIENCY_HPP

#include <vector>

#include "hmux/model.hpp"

namespace hmux {

/// Closed-form generation efficiency of a multiplexed source.
///
/// Notation (per time bin, N bins per output period):
///   D0     probability that no idler is detected,
///   H_i    probability that i pairs are generated and at least one idler
///          is detected,
///   F(r,i) probability that exactly one of i signal photons from bin r
///          survives the chip,
///   B(r)   probability that the emitted photon comes from bin r.
/// The total efficiency η is Σ_r B(r).
struct EfficiencyBreakdown {
  double eta_total = 0.0;
  /// B(r) for r = 1..N, stored at index r-1.
  std::vector<double> per_bin_success;
  /// [PIC]^(r) for r = 1..N.
  std::vector<double> pic_transmission;
  double d0 = 0.0;
  double eta_d = 0.0;
  /// H_i for i = 0..truncation.
  std::vector<double> heralded_series;
};

/// Effective heralding efficiency η_d of the detection unit.
double detection_efficiency(const SourceParams& params, Detection detection);

double d0(const SourceParams& params, double eta_d);

/// H_i. Throws DomainError for i < 0.
double h_i(const SourceParams& params, double eta_d, int i);

/// H_0..H_k, stopping once H_i < 1e-15 past the mode, or at i = 200.
std::vector<double> heralded_series(const SourceParams& params, double eta_d);

/// F(r,i) = i (1 - p)^(i-1) p. Throws DomainError for i < 1.
double f_loss(int i, double pic_r);

/// Number of switch passes seen by a photon heralded in bin r.
int switch_passes(const SchemeConfig& scheme, int r);

/// [PIC]^(r). Throws DomainError unless 1 <= r <= N.
double pic_transmission(const SourceParams& params, const SchemeConfig& scheme,
                        int r);

/// B(r) under the scheme's selection policy.
double bin_success(const SourceParams& params, const SchemeConfig& scheme,
                   int r);

EfficiencyBreakdown total_efficiency(const SourceParams& params,
                                     const SchemeConfig& scheme);

/// n̄ = ⌈λN⌉, evaluated so that products that are integral in exact
/// arithmetic (0.1 * 30) are not pushed up by rounding error.
int expected_occupied_bins(double lambda, int n_bins);

/// Weights w_p, p = 1..N, of the last occupied bin when n̄ of N bins are
/// occupied: w_p ∝ Π_{j=1}^{n̄-1} (p - j). Zero for p < n̄.
std::vector<double> last_bin_weights(int n_bins, int n_occupied);

/// Average delay-line transmission ⟨η_lin⟩ = Σ_p w_p 10^(-α_inc (N-p)/10).
/// FirstPhoton gives the control curve (uniform weights). Throws
/// DomainError for λ <= 0, N < 1 or n̄ > N.
double avg_linear_transmission(const SourceParams& params, int n_bins,
                               Selection selection, double lambda);

/// Output rate 1/(N T) in Hz.
double generation_rate_hz(const SourceParams& params,
                          const SchemeConfig& scheme);

}  // namespace hmux

#endif  // HMUX_EFFICIENCY_HPP
