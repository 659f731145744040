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


#ifndef HMUX_CONFIG_HPP
#define HMUX_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hmux/model.hpp"

namespace hmux {

/// Everything a run needs: the physical point, the scheme and the Monte
/// Carlo settings.
///
/// Text form: one `key = value` per line, `#` starts a comment, blank lines
/// are ignored. Keys:
///
///   lambda, period_s, eta_f, eta_c, eta_sw, eta_det_single, eta_det_array,
///   eta_conv                      real numbers
///   alpha_inc_db                  per-bin delay loss in dB; overrides the
///                                 two keys below
///   alpha_lin_db_per_cm, group_index
///                                 derive alpha_inc_db with period_s
///   pair_dist                     poisson | thermal
///   array_size, four_switch_paths, five_switch_paths, blanking
///   n_bins                        integer >= 1
///   topology                      binary | single_line
///   detection                     single | array
///   selection                     first | last (default: paired with
///                                 detection)
///   decouple_selection, strict_delay_exponent, filter_in_d0
///                                 true | false
///   seed, trials, mc_partitions   Monte Carlo settings
///
/// Unknown keys, repeated keys and malformed values raise ConfigError.
struct RunConfig {
  SourceParams params;
  double alpha_lin_db_per_cm = kDefaultAlphaLinDbPerCm;
  double group_index = kDefaultGroupIndex;
  /// Set once alpha_inc_db is given directly; it then no longer follows
  /// the derivation inputs.
  bool alpha_inc_explicit = false;
  int n_bins = 31;
  Topology topology = Topology::BinaryDelay;
  Detection detection = Detection::SingleDetector;
  std::optional<Selection> selection;
  bool decouple_selection = false;
  std::uint64_t seed = 1;
  std::uint64_t trials = 1'000'000;
  int mc_partitions = 16;

  SchemeConfig scheme() const;
};

/// Every key accepted by the text form, in documentation order.
const std::vector<std::string_view>& config_keys();

/// Keys holding a single real or integer value; these can be swept.
bool is_numeric_key(std::string_view key);

/// Sets one key from its text value. Changing period_s, alpha_lin_db_per_cm
/// or group_index re-derives alpha_inc_db.
void apply_setting(RunConfig& config, std::string_view key,
                   std::string_view value);

/// Sets a numeric key. Integer keys reject non-integral values.
void set_numeric(RunConfig& config, std::string_view key, double value);
double get_numeric(const RunConfig& config, std::string_view key);

/// `origin` names the source in error messages.
RunConfig parse_config(std::istream& in, std::string_view origin = "<input>");
RunConfig load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(to_config_text(c)) reproduces c.
std::string to_config_text(const RunConfig& config);

}  // namespace hmux

#endif  // HMUX_CONFIG_HPP
