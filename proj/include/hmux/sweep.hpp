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


#ifndef HMUX_SWEEP_HPP
#define HMUX_SWEEP_HPP

#include <string>
#include <vector>

#include "hmux/config.hpp"

namespace hmux {

/// One numeric configuration key evaluated at a list of values; every
/// other setting comes from the baseline.
struct SweepSpec {
  std::string parameter;
  std::vector<double> values;
  RunConfig baseline;

  /// min, min + step, ... up to max inclusive (within step * 1e-9).
  static SweepSpec range(std::string parameter, double min, double max,
                         double step, RunConfig baseline);
  /// n_bins = 1..n_max.
  static SweepSpec over_bins(RunConfig baseline, int n_max = 128);
};

struct CurvePoint {
  double x = 0.0;
  double eta = 0.0;
};

struct EfficiencyCurve {
  /// "<topology>/<detection>/<selection>".
  std::string label;
  std::string parameter;
  std::vector<CurvePoint> points;
  /// Point attaining eta_max; ties go to the smallest x.
  double arg_max = 0.0;
  double eta_max = 0.0;
};

std::string scheme_label(const SchemeConfig& scheme);

/// Total efficiency at every value. Points are evaluated concurrently and
/// returned in the order of spec.values. Throws ConfigError for a parameter
/// that is not a numeric key, DomainError for a value outside its domain.
EfficiencyCurve sweep(const SweepSpec& spec, unsigned threads = 0);

/// Argmax over n_bins ∈ [1, n_max].
EfficiencyCurve optimize_bins(const RunConfig& baseline, int n_max = 128,
                              unsigned threads = 0);

/// max_N η(single detector) - max_N η(detector array), binary delay, each
/// protocol with its paired selection, at the given switch transmission.
double crossing_gap(const RunConfig& baseline, double eta_sw, int n_max = 128);

/// η_sw in [lo, hi] where crossing_gap changes sign, found by bisection
/// to `tol`. Throws DomainError when the gap has the same sign at both
/// ends (or lo == hi with a nonzero gap).
double find_crossing(const RunConfig& baseline, double lo, double hi,
                     double tol = 1e-6, int n_max = 128);

}  // namespace hmux

#endif  // HMUX_SWEEP_HPP
