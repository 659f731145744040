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

#ifndef HMUX_MODEL_HPP
#define HMUX_MODEL_HPP

#include <optional>
#include <string_view>
#include <vector>

namespace hmux {

/// Photon-number statistics of one pumped time bin.
enum class PairDistribution {
  Poisson,
  /// (n+1)(λ/2)^n e^{-λ}, renormalized to (n+1) x^n (1-x)^2 with x = λ/2.
  ThermalApprox,
};

enum class Topology { BinaryDelay, SingleDelayLine };
enum class Detection { SingleDetector, DetectorArray };
enum class Selection { FirstPhoton, LastPhoton };

std::string_view to_string(PairDistribution d);
std::string_view to_string(Topology t);
std::string_view to_string(Detection d);
std::string_view to_string(Selection s);

/// Pmf series are truncated here.
inline constexpr int kMaxPhotonNumber = 200;

/// Geometry of the heralding detector array. The array is reached through
/// on-chip routing: `four_switch_paths` detectors sit behind four switch
/// passes and `five_switch_paths` behind five. `blanking` is the fraction of
/// detectors available after post-fire blanking.
struct DetectorArrayGeometry {
  int array_size = 25;
  int four_switch_paths = 7;
  int five_switch_paths = 18;
  double blanking = 24.0 / 25.0;
};

/// Physical parameters of the multiplexed source. Defaults are the
/// "current fabrication" operating point (switch transmission 0.87,
/// 40 ps bins, λ = 0.1).
struct SourceParams {
  /// Mean-pair parameter per bin, upstream of every loss.
  double lambda = 0.1;
  /// Pump period T in seconds.
  double period_s = 40e-12;
  double eta_f = 0.99;
  /// Composite chip coupling; already includes fiber coupling and fiber
  /// delay transmission.
  double eta_c = 0.84;
  double eta_sw = 0.87;
  /// Raw detector efficiency used with a single heralding detector.
  double eta_det_single = 0.7;
  /// Raw detector efficiency used with the blanked detector array.
  double eta_det_array = 0.8;
  double eta_conv = 0.85;
  /// Incremental waveguide loss per bin of delay, dB.
  double alpha_inc_db;
  PairDistribution pair_dist = PairDistribution::Poisson;
  DetectorArrayGeometry array;
  /// Multiply the no-detection probability D0 by η_f.
  bool filter_in_d0 = true;
  /// Use 10^(-α_inc (N-r)) instead of the dB form in the binary-delay
  /// transmission.
  bool strict_delay_exponent = false;

  SourceParams();

  /// Throws DomainError when any field is outside its physical range.
  void validate() const;
};

/// Per-bin delay loss in dB from a linear propagation loss, a group index
/// and the bin period: α_lin · (c / n_g) · T.
double alpha_inc_from_linear_loss(double alpha_lin_db_per_cm,
                                  double group_index, double period_s);

inline constexpr double kDefaultAlphaLinDbPerCm = 0.1;
inline constexpr double kDefaultGroupIndex = 4.0;

/// Delay topology × detection protocol × selection policy. Single-detector
/// heralding implies first-photon selection and the detector array implies
/// last-photon selection unless `allow_decoupled` is given.
class SchemeConfig {
 public:
  SchemeConfig(int n_bins, Topology topology, Detection detection,
               std::optional<Selection> selection = std::nullopt,
               bool allow_decoupled = false);

  int n_bins() const { return n_bins_; }
  Topology topology() const { return topology_; }
  Detection detection() const { return detection_; }
  Selection selection() const { return selection_; }
  bool decoupled() const { return decoupled_; }

  SchemeConfig with_n_bins(int n_bins) const;

  static Selection paired_selection(Detection d) {
    return d == Detection::SingleDetector ? Selection::FirstPhoton
                                          : Selection::LastPhoton;
  }

 private:
  int n_bins_;
  Topology topology_;
  Detection detection_;
  Selection selection_;
  bool decoupled_;
};

/// P(n pairs in one bin). Throws DomainError for n < 0.
double pair_count_distribution(const SourceParams& params, int n);

/// pmf for n = 0..n_max inclusive.
std::vector<double> pair_pmf(const SourceParams& params,
                             int n_max = kMaxPhotonNumber);

/// P(n >= 2 | n >= 1). Zero when λ = 0.
double conditional_multiphoton(const SourceParams& params);

/// λ = 2 tanh²(χt).
double lambda_from_interaction(double chi_t);

}  // namespace hmux

#endif  // HMUX_MODEL_HPP
