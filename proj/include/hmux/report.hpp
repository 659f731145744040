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


#ifndef HMUX_REPORT_HPP
#define HMUX_REPORT_HPP

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hmux/config.hpp"
#include "hmux/efficiency.hpp"
#include "hmux/montecarlo.hpp"
#include "hmux/sweep.hpp"

namespace hmux {

/// Version string recorded in every metadata file.
std::string code_version();

/// Shortest text that parses back to the same double.
std::string format_number(double v);

nlohmann::json to_json(const RunConfig& config);
nlohmann::json to_json(const EfficiencyBreakdown& breakdown);
nlohmann::json to_json(const EfficiencyCurve& curve);
nlohmann::json to_json(const EstimatorResult& result);

/// Columns: <parameter>,eta.
void write_curve_csv(std::ostream& os, const EfficiencyCurve& curve);

/// Columns: bin,singles,mc_fraction,analytic_b. `analytic` is B(r) per bin.
void write_mc_csv(std::ostream& os, const EstimatorResult& result,
                  const std::vector<double>& analytic);

inline constexpr const char* kFig3abHeader =
    "N,eta_binary_single,eta_binary_array,eta_singleline_single,"
    "eta_singleline_array";
inline constexpr const char* kFig3cHeader =
    "N,avglin_lambda0.02,avglin_lambda0.06,avglin_lambda0.10,avglin_control";

/// Total efficiency of the four topology/protocol combinations (each with
/// its paired selection) at switch transmission `eta_sw`, N = 1..n_max.
void write_fig3ab_csv(std::ostream& os, const RunConfig& baseline,
                      double eta_sw, int n_max = 128);

/// ⟨η_lin⟩ under last-photon selection at λ = 0.02, 0.06, 0.10, and the
/// first-photon control curve, N = 1..n_max.
void write_fig3c_csv(std::ostream& os, const RunConfig& baseline,
                     int n_max = 128);

struct Fig3Files {
  std::filesystem::path fig3a;
  std::filesystem::path fig3b;
  std::filesystem::path fig3c;
  std::filesystem::path metadata;
};

/// Writes fig3a.csv (η_sw = 0.87), fig3b.csv (η_sw = 0.98), fig3c.csv and
/// fig3.json into `out_dir`, creating it if needed. Throws
/// std::runtime_error naming the path on I/O failure.
Fig3Files emit_fig3(const std::filesystem::path& out_dir,
                    const RunConfig& baseline, int n_max = 128);

/// Opens `path` for writing; throws std::runtime_error naming the path.
void write_text_file(const std::filesystem::path& path,
                     const std::string& contents);

}  // namespace hmux

#endif  // HMUX_REPORT_HPP
