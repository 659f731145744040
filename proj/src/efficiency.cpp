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

#include "hmux/efficiency.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "hmux/errors.hpp"

namespace hmux {

namespace {

constexpr double kSeriesCutoff = 1e-15;

double db_transmission(double db) { return std::pow(10.0, -db / 10.0); }

int floor_log2(int n) { return std::bit_width(static_cast<unsigned>(n)) - 1; }

}  // namespace

double detection_efficiency(const SourceParams& params, Detection detection) {
  if (detection == Detection::SingleDetector) {
    return params.eta_conv * params.eta_det_single;
  }
  const auto& g = params.array;
  const double sw = params.eta_sw;
  const double routing = (g.four_switch_paths * std::pow(sw, 4) +
                          g.five_switch_paths * std::pow(sw, 5)) /
                         g.array_size;
  return params.eta_conv * params.eta_det_array * routing * params.eta_c *
         params.eta_c * g.blanking;
}

double d0(const SourceParams& params, double eta_d) {
  const double prefactor = params.filter_in_d0 ? params.eta_f : 1.0;
  const double lambda = params.lambda;
  // Σ_i P_i (1-η_d)^i in closed form for both distributions.
  switch (params.pair_dist) {
    case PairDistribution::Poisson:
      return prefactor * std::exp(-lambda * eta_d);
    case PairDistribution::ThermalApprox: {
      const double x = lambda / 2.0;
      const double ratio = (1.0 - x) / (1.0 - x * (1.0 - eta_d));
      return prefactor * ratio * ratio;
    }
  }
  return prefactor;
}

double h_i(const SourceParams& params, double eta_d, int i) {
  if (i < 0) throw DomainError("h_i: i must be >= 0");
  if (i == 0) return 0.0;
  return pair_count_distribution(params, i) *
         -std::expm1(i * std::log1p(-eta_d));
}

std::vector<double> heralded_series(const SourceParams& params, double eta_d) {
  std::vector<double> series{0.0};
  for (int i = 1; i <= kMaxPhotonNumber; ++i) {
    const double h = eta_d >= 1.0 ? pair_count_distribution(params, i)
                                  : h_i(params, eta_d, i);
    if (i > params.lambda && h < kSeriesCutoff) break;
    series.push_back(h);
  }
  return series;
}

double f_loss(int i, double pic_r) {
  if (i < 1) throw DomainError("f_loss: i must be >= 1");
  if (i == 1) return pic_r;
  return i * std::pow(1.0 - pic_r, i - 1) * pic_r;
}

int switch_passes(const SchemeConfig& scheme, int r) {
  if (scheme.topology() == Topology::BinaryDelay) {
    return floor_log2(scheme.n_bins()) + 1;
  }
  return scheme.n_bins() - r;
}

double pic_transmission(const SourceParams& params, const SchemeConfig& scheme,
                        int r) {
  const int n = scheme.n_bins();
  if (r < 1 || r > n) throw DomainError("bin index out of range");
  const double delay_db = params.alpha_inc_db * (n - r);
  const double delay =
      (scheme.topology() == Topology::BinaryDelay && params.strict_delay_exponent)
          ? std::pow(10.0, -delay_db)
          : db_transmission(delay_db);
  return params.eta_f * params.eta_c *
         std::pow(params.eta_sw, switch_passes(scheme, r)) * delay;
}

namespace {

double single_survivor_sum(const std::vector<double>& series, double pic) {
  double sum = 0.0;
  for (std::size_t i = 1; i < series.size(); ++i) {
    sum += series[i] * f_loss(static_cast<int>(i), pic);
  }
  return sum;
}

int idle_bins_before(const SchemeConfig& scheme, int r) {
  return scheme.selection() == Selection::FirstPhoton ? r - 1
                                                       : scheme.n_bins() - r;
}

}  // namespace

double bin_success(const SourceParams& params, const SchemeConfig& scheme,
                   int r) {
  const double eta_d = detection_efficiency(params, scheme.detection());
  const auto series = heralded_series(params, eta_d);
  const double pic = pic_transmission(params, scheme, r);
  return std::pow(d0(params, eta_d), idle_bins_before(scheme, r)) *
         single_survivor_sum(series, pic);
}

EfficiencyBreakdown total_efficiency(const SourceParams& params,
                                     const SchemeConfig& scheme) {
  params.validate();
  EfficiencyBreakdown out;
  out.eta_d = detection_efficiency(params, scheme.detection());
  out.d0 = d0(params, out.eta_d);
  out.heralded_series = heralded_series(params, out.eta_d);
  const int n = scheme.n_bins();
  out.per_bin_success.reserve(n);
  out.pic_transmission.reserve(n);
  for (int r = 1; r <= n; ++r) {
    const double pic = pic_transmission(params, scheme, r);
    const double b = std::pow(out.d0, idle_bins_before(scheme, r)) *
                     single_survivor_sum(out.heralded_series, pic);
    out.pic_transmission.push_back(pic);
    out.per_bin_success.push_back(b);
    out.eta_total += b;
  }
  return out;
}

int expected_occupied_bins(double lambda, int n_bins) {
  const double x = lambda * n_bins;
  return static_cast<int>(std::ceil(x - 1e-9 * std::max(1.0, x)));
}

std::vector<double> last_bin_weights(int n_bins, int n_occupied) {
  if (n_bins < 1 || n_occupied < 1 || n_occupied > n_bins) {
    throw DomainError("last_bin_weights: need 1 <= occupied <= N");
  }
  // log Π_{j=1}^{n̄-1} (p-j) = lgamma(p) - lgamma(p - n̄ + 1).
  std::vector<double> log_w(n_bins, -INFINITY);
  for (int p = n_occupied; p <= n_bins; ++p) {
    log_w[p - 1] = std::lgamma(static_cast<double>(p)) -
                   std::lgamma(static_cast<double>(p - n_occupied + 1));
  }
  const double top = log_w.back();
  std::vector<double> w(n_bins, 0.0);
  double total = 0.0;
  for (int p = n_occupied; p <= n_bins; ++p) {
    w[p - 1] = std::exp(log_w[p - 1] - top);
    total += w[p - 1];
  }
  for (double& v : w) v /= total;
  return w;
}

double avg_linear_transmission(const SourceParams& params, int n_bins,
                               Selection selection, double lambda) {
  if (n_bins < 1) throw DomainError("avg_linear_transmission: N must be >= 1");
  if (!(lambda > 0.0)) {
    throw DomainError("avg_linear_transmission: lambda must be > 0");
  }
  const int n_bar = selection == Selection::FirstPhoton
                        ? 1
                        : expected_occupied_bins(lambda, n_bins);
  if (n_bar > n_bins) {
    throw DomainError("avg_linear_transmission: ceil(lambda N) exceeds N");
  }
  const auto w = last_bin_weights(n_bins, n_bar);
  double avg = 0.0;
  for (int p = 1; p <= n_bins; ++p) {
    avg += w[p - 1] * db_transmission(params.alpha_inc_db * (n_bins - p));
  }
  return avg;
}

double generation_rate_hz(const SourceParams& params,
                          const SchemeConfig& scheme) {
  return 1.0 / (scheme.n_bins() * params.period_s);
}

}  // namespace hmux
