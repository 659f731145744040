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

#include "hmux/model.hpp"

#include <cmath>
#include <string>

#include "hmux/errors.hpp"

namespace hmux {

namespace {

constexpr double kSpeedOfLightCmPerS = 2.99792458e10;

void require_probability(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0, 1], got " +
                      std::to_string(v));
  }
}

}  // namespace

std::string_view to_string(PairDistribution d) {
  return d == PairDistribution::Poisson ? "poisson" : "thermal";
}

std::string_view to_string(Topology t) {
  return t == Topology::BinaryDelay ? "binary" : "single_line";
}

std::string_view to_string(Detection d) {
  return d == Detection::SingleDetector ? "single" : "array";
}

std::string_view to_string(Selection s) {
  return s == Selection::FirstPhoton ? "first" : "last";
}

double alpha_inc_from_linear_loss(double alpha_lin_db_per_cm,
                                  double group_index, double period_s) {
  if (alpha_lin_db_per_cm < 0.0 || group_index <= 0.0 || period_s <= 0.0) {
    throw DomainError("alpha_inc_from_linear_loss: invalid argument");
  }
  const double bin_length_cm = kSpeedOfLightCmPerS / group_index * period_s;
  return alpha_lin_db_per_cm * bin_length_cm;
}

SourceParams::SourceParams()
    : alpha_inc_db(alpha_inc_from_linear_loss(kDefaultAlphaLinDbPerCm,
                                              kDefaultGroupIndex, 40e-12)) {}

void SourceParams::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw DomainError("lambda must be >= 0");
  }
  if (pair_dist == PairDistribution::ThermalApprox && lambda >= 2.0) {
    throw DomainError("thermal pair distribution requires lambda < 2");
  }
  if (!(period_s > 0.0)) throw DomainError("period must be > 0");
  if (!(alpha_inc_db >= 0.0)) throw DomainError("alpha_inc must be >= 0");
  require_probability(eta_f, "eta_f");
  require_probability(eta_c, "eta_c");
  require_probability(eta_sw, "eta_sw");
  require_probability(eta_det_single, "eta_det_single");
  require_probability(eta_det_array, "eta_det_array");
  require_probability(eta_conv, "eta_conv");
  require_probability(array.blanking, "blanking");
  if (array.array_size < 1 || array.four_switch_paths < 0 ||
      array.five_switch_paths < 0 ||
      array.four_switch_paths + array.five_switch_paths > array.array_size) {
    throw DomainError("detector array geometry is inconsistent");
  }
}

SchemeConfig::SchemeConfig(int n_bins, Topology topology, Detection detection,
                           std::optional<Selection> selection,
                           bool allow_decoupled)
    : n_bins_(n_bins),
      topology_(topology),
      detection_(detection),
      selection_(selection.value_or(paired_selection(detection))),
      decoupled_(selection_ != paired_selection(detection)) {
  if (n_bins < 1) throw DomainError("n_bins must be >= 1");
  if (decoupled_ && !allow_decoupled) {
    throw DomainError(
        "selection policy does not match detection protocol; pass "
        "allow_decoupled to override");
  }
}

SchemeConfig SchemeConfig::with_n_bins(int n_bins) const {
  return SchemeConfig(n_bins, topology_, detection_, selection_, true);
}

double pair_count_distribution(const SourceParams& params, int n) {
  if (n < 0) throw DomainError("photon number must be >= 0");
  const double lambda = params.lambda;
  if (lambda == 0.0) return n == 0 ? 1.0 : 0.0;
  switch (params.pair_dist) {
    case PairDistribution::Poisson:
      return std::exp(n * std::log(lambda) - lambda - std::lgamma(n + 1.0));
    case PairDistribution::ThermalApprox: {
      // Σ (n+1) x^n = 1/(1-x)^2, so the e^{-λ} prefactor cancels.
      const double x = lambda / 2.0;
      if (x >= 1.0) throw DomainError("thermal distribution requires lambda < 2");
      return (n + 1.0) * std::pow(x, n) * (1.0 - x) * (1.0 - x);
    }
  }
  return 0.0;
}

std::vector<double> pair_pmf(const SourceParams& params, int n_max) {
  std::vector<double> pmf(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) pmf[n] = pair_count_distribution(params, n);
  return pmf;
}

double conditional_multiphoton(const SourceParams& params) {
  if (params.lambda == 0.0) return 0.0;
  const auto pmf = pair_pmf(params);
  // Sum tails smallest-first.
  double multi = 0.0;
  for (int n = kMaxPhotonNumber; n >= 2; --n) multi += pmf[n];
  return multi / (multi + pmf[1]);
}

double lambda_from_interaction(double chi_t) {
  if (chi_t < 0.0) throw DomainError("chi_t must be >= 0");
  const double t = std::tanh(chi_t);
  return 2.0 * t * t;
}

}  // namespace hmux
