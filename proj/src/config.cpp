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


#include "hmux/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "hmux/errors.hpp"

namespace hmux {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError(fmt::format("{}: expected a number, got '{}'", key, text),
                      std::string(key));
  }
  return v;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(
        fmt::format("{}: expected a non-negative integer, got '{}'", key, text),
        std::string(key));
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError(fmt::format("{}: expected true or false, got '{}'", key, text),
                    std::string(key));
}

template <typename Enum>
Enum parse_enum(std::string_view key, std::string_view text,
                std::initializer_list<Enum> options) {
  std::string allowed;
  for (Enum e : options) {
    if (to_string(e) == text) return e;
    if (!allowed.empty()) allowed += ", ";
    allowed += to_string(e);
  }
  throw ConfigError(
      fmt::format("{}: expected one of {}, got '{}'", key, allowed, text),
      std::string(key));
}

int to_int(std::string_view key, double v) {
  if (v != std::floor(v) || std::abs(v) > std::numeric_limits<int>::max()) {
    throw ConfigError(fmt::format("{}: expected an integer, got {}", key, v),
                      std::string(key));
  }
  return static_cast<int>(v);
}

std::uint64_t to_u64(std::string_view key, double v) {
  if (v != std::floor(v) || v < 0.0 || v >= 0x1.0p64) {
    throw ConfigError(
        fmt::format("{}: expected a non-negative integer, got {}", key, v),
        std::string(key));
  }
  return static_cast<std::uint64_t>(v);
}

void rederive_alpha(RunConfig& c) {
  if (c.alpha_inc_explicit) return;
  c.params.alpha_inc_db = alpha_inc_from_linear_loss(
      c.alpha_lin_db_per_cm, c.group_index, c.params.period_s);
}

/// Integer keys whose text value must not go through double.
bool is_u64_key(std::string_view key) { return key == "seed" || key == "trials"; }

}  // namespace

SchemeConfig RunConfig::scheme() const {
  return SchemeConfig(n_bins, topology, detection, selection,
                      decouple_selection);
}

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys = {
      "lambda", "period_s", "eta_f", "eta_c", "eta_sw", "eta_det_single",
      "eta_det_array", "eta_conv", "alpha_inc_db", "alpha_lin_db_per_cm",
      "group_index", "pair_dist", "array_size", "four_switch_paths",
      "five_switch_paths", "blanking", "n_bins", "topology", "detection",
      "selection", "decouple_selection", "strict_delay_exponent",
      "filter_in_d0", "seed", "trials", "mc_partitions"};
  return keys;
}

bool is_numeric_key(std::string_view key) {
  static const std::set<std::string_view> numeric = {
      "lambda", "period_s", "eta_f", "eta_c", "eta_sw", "eta_det_single",
      "eta_det_array", "eta_conv", "alpha_inc_db", "alpha_lin_db_per_cm",
      "group_index", "array_size", "four_switch_paths", "five_switch_paths",
      "blanking", "n_bins", "seed", "trials", "mc_partitions"};
  return numeric.contains(key);
}

void set_numeric(RunConfig& c, std::string_view key, double v) {
  SourceParams& p = c.params;
  if (key == "lambda") {
    p.lambda = v;
  } else if (key == "period_s") {
    p.period_s = v;
    rederive_alpha(c);
  } else if (key == "eta_f") {
    p.eta_f = v;
  } else if (key == "eta_c") {
    p.eta_c = v;
  } else if (key == "eta_sw") {
    p.eta_sw = v;
  } else if (key == "eta_det_single") {
    p.eta_det_single = v;
  } else if (key == "eta_det_array") {
    p.eta_det_array = v;
  } else if (key == "eta_conv") {
    p.eta_conv = v;
  } else if (key == "alpha_inc_db") {
    p.alpha_inc_db = v;
    c.alpha_inc_explicit = true;
  } else if (key == "alpha_lin_db_per_cm") {
    c.alpha_lin_db_per_cm = v;
    rederive_alpha(c);
  } else if (key == "group_index") {
    c.group_index = v;
    rederive_alpha(c);
  } else if (key == "array_size") {
    p.array.array_size = to_int(key, v);
  } else if (key == "four_switch_paths") {
    p.array.four_switch_paths = to_int(key, v);
  } else if (key == "five_switch_paths") {
    p.array.five_switch_paths = to_int(key, v);
  } else if (key == "blanking") {
    p.array.blanking = v;
  } else if (key == "n_bins") {
    c.n_bins = to_int(key, v);
  } else if (key == "seed") {
    c.seed = to_u64(key, v);
  } else if (key == "trials") {
    c.trials = to_u64(key, v);
  } else if (key == "mc_partitions") {
    c.mc_partitions = to_int(key, v);
  } else {
    throw ConfigError(fmt::format("unknown numeric parameter '{}'", key),
                      std::string(key));
  }
}

double get_numeric(const RunConfig& c, std::string_view key) {
  const SourceParams& p = c.params;
  if (key == "lambda") return p.lambda;
  if (key == "period_s") return p.period_s;
  if (key == "eta_f") return p.eta_f;
  if (key == "eta_c") return p.eta_c;
  if (key == "eta_sw") return p.eta_sw;
  if (key == "eta_det_single") return p.eta_det_single;
  if (key == "eta_det_array") return p.eta_det_array;
  if (key == "eta_conv") return p.eta_conv;
  if (key == "alpha_inc_db") return p.alpha_inc_db;
  if (key == "alpha_lin_db_per_cm") return c.alpha_lin_db_per_cm;
  if (key == "group_index") return c.group_index;
  if (key == "array_size") return p.array.array_size;
  if (key == "four_switch_paths") return p.array.four_switch_paths;
  if (key == "five_switch_paths") return p.array.five_switch_paths;
  if (key == "blanking") return p.array.blanking;
  if (key == "n_bins") return c.n_bins;
  if (key == "seed") return static_cast<double>(c.seed);
  if (key == "trials") return static_cast<double>(c.trials);
  if (key == "mc_partitions") return c.mc_partitions;
  throw ConfigError(fmt::format("unknown numeric parameter '{}'", key),
                    std::string(key));
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view value) {
  if (key == "pair_dist") {
    c.params.pair_dist =
        parse_enum(key, value,
                   {PairDistribution::Poisson, PairDistribution::ThermalApprox});
  } else if (key == "topology") {
    c.topology = parse_enum(
        key, value, {Topology::BinaryDelay, Topology::SingleDelayLine});
  } else if (key == "detection") {
    c.detection = parse_enum(
        key, value, {Detection::SingleDetector, Detection::DetectorArray});
  } else if (key == "selection") {
    c.selection = parse_enum(key, value,
                             {Selection::FirstPhoton, Selection::LastPhoton});
  } else if (key == "decouple_selection") {
    c.decouple_selection = parse_bool(key, value);
  } else if (key == "strict_delay_exponent") {
    c.params.strict_delay_exponent = parse_bool(key, value);
  } else if (key == "filter_in_d0") {
    c.params.filter_in_d0 = parse_bool(key, value);
  } else if (is_u64_key(key)) {
    (key == "seed" ? c.seed : c.trials) = parse_unsigned(key, value);
  } else if (is_numeric_key(key)) {
    set_numeric(c, key, parse_real(key, value));
  } else {
    throw ConfigError(fmt::format("unknown configuration key '{}'", key),
                      std::string(key));
  }
}

RunConfig parse_config(std::istream& in, std::string_view origin) {
  RunConfig c;
  std::set<std::string, std::less<>> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(
          fmt::format("{}:{}: expected 'key = value'", origin, line_no));
    }
    const auto key = trim(view.substr(0, eq));
    const auto value = trim(view.substr(eq + 1));
    if (!seen.emplace(key).second) {
      throw ConfigError(
          fmt::format("{}:{}: duplicate key '{}'", origin, line_no, key),
          std::string(key));
    }
    try {
      apply_setting(c, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("{}:{}: {}", origin, line_no, e.what()),
                        e.key());
    }
  }
  // An explicit alpha_inc_db wins regardless of where it appears.
  if (!c.alpha_inc_explicit) rederive_alpha(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
  }
  return parse_config(in, path.string());
}

std::string to_config_text(const RunConfig& c) {
  const SourceParams& p = c.params;
  std::string out;
  const auto put = [&out](std::string_view key, const auto& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  put("lambda", p.lambda);
  put("period_s", p.period_s);
  put("eta_f", p.eta_f);
  put("eta_c", p.eta_c);
  put("eta_sw", p.eta_sw);
  put("eta_det_single", p.eta_det_single);
  put("eta_det_array", p.eta_det_array);
  put("eta_conv", p.eta_conv);
  if (c.alpha_inc_explicit) {
    put("alpha_inc_db", p.alpha_inc_db);
  } else {
    put("alpha_lin_db_per_cm", c.alpha_lin_db_per_cm);
    put("group_index", c.group_index);
  }
  put("pair_dist", to_string(p.pair_dist));
  put("array_size", p.array.array_size);
  put("four_switch_paths", p.array.four_switch_paths);
  put("five_switch_paths", p.array.five_switch_paths);
  put("blanking", p.array.blanking);
  put("n_bins", c.n_bins);
  put("topology", to_string(c.topology));
  put("detection", to_string(c.detection));
  if (c.selection) put("selection", to_string(*c.selection));
  put("decouple_selection", c.decouple_selection);
  put("strict_delay_exponent", p.strict_delay_exponent);
  put("filter_in_d0", p.filter_in_d0);
  put("seed", c.seed);
  put("trials", c.trials);
  put("mc_partitions", c.mc_partitions);
  return out;
}

}  // namespace hmux
