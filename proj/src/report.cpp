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


#include "hmux/report.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "hmux/rng.hpp"

#ifndef HMUX_VERSION
#define HMUX_VERSION "unknown"
#endif

namespace hmux {

namespace {

constexpr double kFig3aSwitch = 0.87;
constexpr double kFig3bSwitch = 0.98;
constexpr double kFig3cLambdas[] = {0.02, 0.06, 0.10};

double eta_for(RunConfig config, Topology topology, Detection detection,
               int n_bins) {
  config.topology = topology;
  config.detection = detection;
  config.selection.reset();
  config.decouple_selection = false;
  config.n_bins = n_bins;
  return total_efficiency(config.params, config.scheme()).eta_total;
}

}  // namespace

std::string code_version() { return HMUX_VERSION; }

std::string format_number(double v) { return fmt::format("{}", v); }

nlohmann::json to_json(const RunConfig& c) {
  const SourceParams& p = c.params;
  nlohmann::json j;
  j["lambda"] = p.lambda;
  j["period_s"] = p.period_s;
  j["eta_f"] = p.eta_f;
  j["eta_c"] = p.eta_c;
  j["eta_sw"] = p.eta_sw;
  j["eta_det_single"] = p.eta_det_single;
  j["eta_det_array"] = p.eta_det_array;
  j["eta_conv"] = p.eta_conv;
  j["alpha_inc_db"] = p.alpha_inc_db;
  j["alpha_lin_db_per_cm"] = c.alpha_lin_db_per_cm;
  j["group_index"] = c.group_index;
  j["pair_dist"] = to_string(p.pair_dist);
  j["array_size"] = p.array.array_size;
  j["four_switch_paths"] = p.array.four_switch_paths;
  j["five_switch_paths"] = p.array.five_switch_paths;
  j["blanking"] = p.array.blanking;
  j["strict_delay_exponent"] = p.strict_delay_exponent;
  j["filter_in_d0"] = p.filter_in_d0;
  j["n_bins"] = c.n_bins;
  j["topology"] = to_string(c.topology);
  j["detection"] = to_string(c.detection);
  j["selection"] = to_string(
      c.selection.value_or(SchemeConfig::paired_selection(c.detection)));
  j["seed"] = c.seed;
  j["trials"] = c.trials;
  j["mc_partitions"] = c.mc_partitions;
  return j;
}

nlohmann::json to_json(const EfficiencyBreakdown& b) {
  return {{"eta_total", b.eta_total},
          {"eta_d", b.eta_d},
          {"d0", b.d0},
          {"per_bin_success", b.per_bin_success},
          {"pic_transmission", b.pic_transmission},
          {"heralded_series", b.heralded_series}};
}

nlohmann::json to_json(const EfficiencyCurve& curve) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : curve.points) points.push_back({p.x, p.eta});
  return {{"label", curve.label},
          {"parameter", curve.parameter},
          {"arg_max", curve.arg_max},
          {"eta_max", curve.eta_max},
          {"points", points}};
}

nlohmann::json to_json(const EstimatorResult& r) {
  return {{"eta_hat", r.eta_hat},
          {"std_err", r.std_err},
          {"n_trials", r.n_trials},
          {"singles", r.singles},
          {"multis", r.multis},
          {"multi_fraction_of_emitted", r.multi_fraction_of_emitted()},
          {"per_bin_hist", r.per_bin_hist},
          {"rng_algorithm", r.rng_algorithm}};
}

void write_curve_csv(std::ostream& os, const EfficiencyCurve& curve) {
  os << curve.parameter << ",eta\n";
  for (const auto& p : curve.points) {
    os << format_number(p.x) << ',' << format_number(p.eta) << '\n';
  }
}

void write_mc_csv(std::ostream& os, const EstimatorResult& result,
                  const std::vector<double>& analytic) {
  if (analytic.size() != result.per_bin_hist.size()) {
    throw std::invalid_argument("write_mc_csv: bin count mismatch");
  }
  os << "bin,singles,mc_fraction,analytic_b\n";
  for (std::size_t r = 0; r < analytic.size(); ++r) {
    const auto count = result.per_bin_hist[r];
    os << r + 1 << ',' << count << ','
       << format_number(static_cast<double>(count) / result.n_trials) << ','
       << format_number(analytic[r]) << '\n';
  }
}

void write_fig3ab_csv(std::ostream& os, const RunConfig& baseline,
                      double eta_sw, int n_max) {
  RunConfig config = baseline;
  config.params.eta_sw = eta_sw;
  os << kFig3abHeader << '\n';
  for (int n = 1; n <= n_max; ++n) {
    os << n;
    for (Topology t : {Topology::BinaryDelay, Topology::SingleDelayLine}) {
      for (Detection d : {Detection::SingleDetector, Detection::DetectorArray}) {
        os << ',' << format_number(eta_for(config, t, d, n));
      }
    }
    os << '\n';
  }
}

void write_fig3c_csv(std::ostream& os, const RunConfig& baseline, int n_max) {
  const SourceParams& p = baseline.params;
  os << kFig3cHeader << '\n';
  for (int n = 1; n <= n_max; ++n) {
    os << n;
    for (double lambda : kFig3cLambdas) {
      os << ','
         << format_number(
                avg_linear_transmission(p, n, Selection::LastPhoton, lambda));
    }
    os << ','
       << format_number(
              avg_linear_transmission(p, n, Selection::FirstPhoton, p.lambda))
       << '\n';
  }
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error(
        fmt::format("cannot open '{}' for writing", path.string()));
  }
  out << contents;
  out.close();
  if (!out) {
    throw std::runtime_error(fmt::format("failed writing '{}'", path.string()));
  }
}

Fig3Files emit_fig3(const std::filesystem::path& out_dir,
                    const RunConfig& baseline, int n_max) {
  baseline.params.validate();
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw std::runtime_error(fmt::format("cannot create directory '{}': {}",
                                         out_dir.string(), ec.message()));
  }
  Fig3Files files{out_dir / "fig3a.csv", out_dir / "fig3b.csv",
                  out_dir / "fig3c.csv", out_dir / "fig3.json"};

  std::ostringstream a, b, c;
  write_fig3ab_csv(a, baseline, kFig3aSwitch, n_max);
  write_fig3ab_csv(b, baseline, kFig3bSwitch, n_max);
  write_fig3c_csv(c, baseline, n_max);
  write_text_file(files.fig3a, a.str());
  write_text_file(files.fig3b, b.str());
  write_text_file(files.fig3c, c.str());

  nlohmann::json meta;
  meta["code_version"] = code_version();
  meta["rng_algorithm"] = std::string(kRngAlgorithm);
  meta["parameters"] = to_json(baseline);
  meta["n_range"] = {1, n_max};
  meta["fig3a"] = {{"file", "fig3a.csv"}, {"eta_sw", kFig3aSwitch}};
  meta["fig3b"] = {{"file", "fig3b.csv"}, {"eta_sw", kFig3bSwitch}};
  meta["fig3c"] = {{"file", "fig3c.csv"},
                   {"lambdas", kFig3cLambdas},
                   {"control", "first-photon selection, uniform bin"}};
  for (const auto& [key, eta_sw] :
       {std::pair{"fig3a", kFig3aSwitch}, std::pair{"fig3b", kFig3bSwitch}}) {
    RunConfig point = baseline;
    point.params.eta_sw = eta_sw;
    nlohmann::json maxima;
    for (Detection d : {Detection::SingleDetector, Detection::DetectorArray}) {
      point.topology = Topology::BinaryDelay;
      point.detection = d;
      point.selection.reset();
      point.decouple_selection = false;
      const auto curve = optimize_bins(point, n_max, 1);
      maxima[std::string(to_string(d))] = {
          {"n_star", static_cast<int>(curve.arg_max)},
                                           {"eta_max", curve.eta_max}};
    }
    meta[key]["binary_maxima"] = maxima;
  }
  write_text_file(files.metadata, meta.dump(2) + "\n");
  return files;
}

}  // namespace hmux
