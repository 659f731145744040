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


#include "hmux/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "hmux/efficiency.hpp"
#include "hmux/errors.hpp"

namespace hmux {

namespace {

double eta_at(const RunConfig& config) {
  return total_efficiency(config.params, config.scheme()).eta_total;
}

/// Calls work(i) for i in [0, n) on a small pool; rethrows the first
/// exception after all workers finish.
template <typename Work>
void parallel_for(std::size_t n, unsigned threads, Work work) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          work(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

SweepSpec SweepSpec::range(std::string parameter, double min, double max,
                           double step, RunConfig baseline) {
  if (!(step > 0.0) || !(max >= min)) {
    throw ConfigError(
        fmt::format("sweep range for '{}' needs step > 0 and max >= min",
                    parameter),
        parameter);
  }
  SweepSpec spec{std::move(parameter), {}, std::move(baseline)};
  const auto count =
      static_cast<long>(std::floor((max - min) / step * (1.0 + 1e-9))) + 1;
  for (long i = 0; i < count; ++i) spec.values.push_back(min + i * step);
  return spec;
}

SweepSpec SweepSpec::over_bins(RunConfig baseline, int n_max) {
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  SweepSpec spec{"n_bins", {}, std::move(baseline)};
  for (int n = 1; n <= n_max; ++n) spec.values.push_back(n);
  return spec;
}

std::string scheme_label(const SchemeConfig& scheme) {
  return fmt::format("{}/{}/{}", to_string(scheme.topology()),
                     to_string(scheme.detection()),
                     to_string(scheme.selection()));
}

EfficiencyCurve sweep(const SweepSpec& spec, unsigned threads) {
  if (!is_numeric_key(spec.parameter)) {
    throw ConfigError(
        fmt::format("'{}' is not a sweepable parameter", spec.parameter),
        spec.parameter);
  }
  EfficiencyCurve curve;
  curve.parameter = spec.parameter;
  curve.label = scheme_label(spec.baseline.scheme());
  curve.points.resize(spec.values.size());
  parallel_for(spec.values.size(), threads, [&](std::size_t i) {
    RunConfig point = spec.baseline;
    set_numeric(point, spec.parameter, spec.values[i]);
    curve.points[i] = {spec.values[i], eta_at(point)};
  });
  for (const auto& p : curve.points) {
    if (p.eta > curve.eta_max || &p == curve.points.data()) {
      curve.eta_max = p.eta;
      curve.arg_max = p.x;
    }
  }
  return curve;
}

EfficiencyCurve optimize_bins(const RunConfig& baseline, int n_max,
                              unsigned threads) {
  return sweep(SweepSpec::over_bins(baseline, n_max), threads);
}

double crossing_gap(const RunConfig& baseline, double eta_sw, int n_max) {
  RunConfig config = baseline;
  config.params.eta_sw = eta_sw;
  config.topology = Topology::BinaryDelay;
  config.selection.reset();
  config.decouple_selection = false;
  config.detection = Detection::SingleDetector;
  const double single = optimize_bins(config, n_max, 1).eta_max;
  config.detection = Detection::DetectorArray;
  const double array = optimize_bins(config, n_max, 1).eta_max;
  return single - array;
}

double find_crossing(const RunConfig& baseline, double lo, double hi,
                     double tol, int n_max) {
  if (!(lo <= hi) || !(tol > 0.0)) {
    throw DomainError("find_crossing needs lo <= hi and tol > 0");
  }
  const auto g = [&](double x) { return crossing_gap(baseline, x, n_max); };
  const double g_lo = g(lo);
  if (g_lo == 0.0) return lo;
  const double g_hi = lo == hi ? g_lo : g(hi);
  if (g_hi == 0.0) return hi;
  if ((g_lo > 0.0) == (g_hi > 0.0)) {
    throw DomainError(fmt::format(
        "no crossing in [{}, {}]: gap is {} at lo and {} at hi", lo, hi, g_lo,
        g_hi));
  }
  const auto done = [tol](double a, double b) { return std::abs(b - a) <= tol; };
  const auto [a, b] = boost::math::tools::bisect(g, lo, hi, done);
  return 0.5 * (a + b);
}

}  // namespace hmux
