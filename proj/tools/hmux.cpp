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


// Command-line front end: evaluation, sweeps, Monte Carlo validation,
// Bell-state enumeration and figure data.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "hmux/bell.hpp"
#include "hmux/config.hpp"
#include "hmux/efficiency.hpp"
#include "hmux/errors.hpp"
#include "hmux/montecarlo.hpp"
#include "hmux/report.hpp"
#include "hmux/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;
constexpr int kExitOther = 1;

struct GlobalOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  bool strict_delay_exponent = false;
  bool json = false;
  std::vector<std::string> overrides;
  unsigned threads = 0;
};

hmux::RunConfig build_config(const GlobalOptions& g) {
  hmux::RunConfig c =
      g.config_path.empty() ? hmux::RunConfig{} : hmux::load_config(g.config_path);
  for (const auto& kv : g.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw hmux::ConfigError("--set expects key=value, got '" + kv + "'");
    }
    hmux::apply_setting(c, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (g.seed) c.seed = *g.seed;
  if (g.trials) c.trials = *g.trials;
  if (g.strict_delay_exponent) c.params.strict_delay_exponent = true;
  c.params.validate();
  return c;
}

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

int run_eval(const GlobalOptions& g) {
  const auto c = build_config(g);
  const auto scheme = c.scheme();
  const auto b = hmux::total_efficiency(c.params, scheme);
  if (g.json) {
    print_json({{"config", hmux::to_json(c)},
                {"scheme", hmux::scheme_label(scheme)},
                {"breakdown", hmux::to_json(b)},
                {"rate_hz", hmux::generation_rate_hz(c.params, scheme)}});
    return kExitOk;
  }
  fmt::print("scheme      {}\n", hmux::scheme_label(scheme));
  fmt::print("N           {}\n", scheme.n_bins());
  fmt::print("eta         {:.6f}\n", b.eta_total);
  fmt::print("eta_d       {:.6f}\n", b.eta_d);
  fmt::print("D0          {:.6f}\n", b.d0);
  fmt::print("rate        {:.6g} Hz\n",
             hmux::generation_rate_hz(c.params, scheme));
  fmt::print("bin  B(r)        PIC(r)\n");
  for (std::size_t r = 0; r < b.per_bin_success.size(); ++r) {
    fmt::print("{:<4} {:.6e}  {:.6f}\n", r + 1, b.per_bin_success[r],
               b.pic_transmission[r]);
  }
  return kExitOk;
}

void emit_curve(const GlobalOptions& g, const hmux::EfficiencyCurve& curve,
                const std::string& stem) {
  if (!g.out_dir.empty()) {
    std::filesystem::create_directories(g.out_dir);
    std::ostringstream csv;
    hmux::write_curve_csv(csv, curve);
    hmux::write_text_file(std::filesystem::path(g.out_dir) / (stem + ".csv"),
                          csv.str());
  }
  if (g.json) {
    print_json(hmux::to_json(curve));
  } else if (g.out_dir.empty()) {
    hmux::write_curve_csv(std::cout, curve);
  } else {
    fmt::print("{}: max eta {:.6f} at {} = {}\n", curve.label, curve.eta_max,
               curve.parameter, hmux::format_number(curve.arg_max));
  }
}

struct SweepArgs {
  std::string parameter = "n_bins";
  std::vector<double> values;
  double min = 1, max = 128, step = 1;
};

int run_sweep(const GlobalOptions& g, const SweepArgs& a) {
  const auto c = build_config(g);
  hmux::SweepSpec spec =
      a.values.empty()
          ? hmux::SweepSpec::range(a.parameter, a.min, a.max, a.step, c)
          : hmux::SweepSpec{a.parameter, a.values, c};
  emit_curve(g, hmux::sweep(spec, g.threads), "sweep_" + a.parameter);
  return kExitOk;
}

int run_optimize(const GlobalOptions& g, int n_max) {
  const auto c = build_config(g);
  const auto curve = hmux::optimize_bins(c, n_max, g.threads);
  if (g.json) {
    print_json({{"label", curve.label},
                {"n_star", curve.arg_max},
                {"eta_max", curve.eta_max}});
  } else {
    fmt::print("{}: N* = {}, eta_max = {:.6f}\n", curve.label,
               hmux::format_number(curve.arg_max), curve.eta_max);
  }
  return kExitOk;
}

int run_crossing(const GlobalOptions& g, double lo, double hi, double tol) {
  const auto c = build_config(g);
  const double x = hmux::find_crossing(c, lo, hi, tol);
  if (g.json) {
    print_json({{"eta_sw", x}, {"lo", lo}, {"hi", hi}, {"tol", tol}});
  } else {
    fmt::print("crossing eta_sw = {:.6f}\n", x);
  }
  return kExitOk;
}

int run_mc(const GlobalOptions& g) {
  const auto c = build_config(g);
  const auto scheme = c.scheme();
  hmux::McOptions options;
  options.seed = c.seed;
  options.n_trials = c.trials;
  options.partitions = c.mc_partitions;
  options.threads = g.threads;
  const auto mc = hmux::estimate_eta(c.params, scheme, options);
  const auto analytic = hmux::total_efficiency(c.params, scheme);
  const double z = mc.std_err > 0.0
                       ? (mc.eta_hat - analytic.eta_total) / mc.std_err
                       : 0.0;
  if (!g.out_dir.empty()) {
    const std::filesystem::path dir(g.out_dir);
    std::filesystem::create_directories(dir);
    std::ostringstream csv;
    hmux::write_mc_csv(csv, mc, analytic.per_bin_success);
    hmux::write_text_file(dir / "mc.csv", csv.str());
    nlohmann::json meta{{"code_version", hmux::code_version()},
                        {"config", hmux::to_json(c)},
                        {"result", hmux::to_json(mc)},
                        {"analytic_eta", analytic.eta_total}};
    hmux::write_text_file(dir / "mc.json", meta.dump(2) + "\n");
  }
  if (g.json) {
    print_json({{"scheme", hmux::scheme_label(scheme)},
                {"result", hmux::to_json(mc)},
                {"analytic_eta", analytic.eta_total},
                {"z", z}});
  } else {
    fmt::print("scheme        {}\n", hmux::scheme_label(scheme));
    fmt::print("trials        {}\n", mc.n_trials);
    fmt::print("eta_hat       {:.6f} +- {:.6f}\n", mc.eta_hat, mc.std_err);
    fmt::print("analytic eta  {:.6f}\n", analytic.eta_total);
    fmt::print("z             {:.3f}\n", z);
    fmt::print("multi frac    {:.4f}\n", mc.multi_fraction_of_emitted());
  }
  return kExitOk;
}

int run_bell(const GlobalOptions& g, std::optional<double> eta) {
  const auto hbs = hmux::hbs_herald_probability();
  const auto two = hmux::two_source_probability();
  if (g.json) {
    nlohmann::json patterns = nlohmann::json::array();
    for (const auto& p : hbs.patterns) {
      patterns.push_back({{"label", p.label},
                          {"target", p.target},
                          {"probability", p.probability},
                          {"fidelity", p.fidelity}});
    }
    nlohmann::json j{{"hbs",
                      {{"success_probability", hbs.success_probability},
                       {"success_exact", hbs.success_exact.to_string()},
                       {"patterns", patterns}}},
                     {"two_source",
                      {{"coincidence_probability", two.coincidence_probability},
                       {"exact", two.exact.to_string()},
                       {"singlet_fidelity", two.singlet_fidelity}}}};
    if (eta) {
      j["composed"] = {
          {"eta", *eta},
          {"hbs4", hmux::composed_success(*eta, hmux::BellScheme::HBS4)},
          {"post_selected2",
           hmux::composed_success(*eta, hmux::BellScheme::PostSelected2)}};
    }
    print_json(j);
    return kExitOk;
  }
  fmt::print("four-source heralded Bell state\n");
  for (const auto& p : hbs.patterns) {
    fmt::print("  {:<10} -> {:<6} p = {:.6f}  fidelity = {:.6f}\n", p.label,
               p.target, p.probability, p.fidelity);
  }
  fmt::print("  success = {:.10f} ({})\n", hbs.success_probability,
             hbs.success_exact.to_string());
  fmt::print("two-source post-selected singlet\n");
  fmt::print("  coincidence = {:.10f} ({}), singlet fidelity = {:.10f}\n",
             two.coincidence_probability, two.exact.to_string(),
             two.singlet_fidelity);
  if (eta) {
    fmt::print("composed at eta = {}: hbs4 = {:.6f}, post_selected2 = {:.6f}\n",
               *eta, hmux::composed_success(*eta, hmux::BellScheme::HBS4),
               hmux::composed_success(*eta, hmux::BellScheme::PostSelected2));
  }
  return kExitOk;
}

int run_fig3(const GlobalOptions& g, int n_max) {
  const auto c = build_config(g);
  const auto dir = g.out_dir.empty() ? std::string("fig3") : g.out_dir;
  const auto files = hmux::emit_fig3(dir, c, n_max);
  if (g.json) {
    print_json({{"fig3a", files.fig3a.string()},
                {"fig3b", files.fig3b.string()},
                {"fig3c", files.fig3c.string()},
                {"metadata", files.metadata.string()}});
  } else {
    fmt::print("wrote {}, {}, {}, {}\n", files.fig3a.string(),
               files.fig3b.string(), files.fig3c.string(),
               files.metadata.string());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-multiplexed heralded single-photon source model"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", hmux::code_version());

  GlobalOptions g;
  app.add_option("--config", g.config_path, "key = value configuration file")
      ->check(CLI::ExistingFile);
  app.add_option("--out", g.out_dir, "Output directory");
  app.add_option("--seed", g.seed, "Monte Carlo seed");
  app.add_option("--trials", g.trials, "Monte Carlo trials");
  app.add_flag("--strict-eq6", g.strict_delay_exponent,
               "Use 10^(-alpha (N-r)) for the binary-delay waveguide loss");
  app.add_flag("--json", g.json, "Machine-readable results on stdout");
  app.add_option("--set", g.overrides, "Override a configuration key (key=value)");
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");

  auto* eval = app.add_subcommand("eval", "Efficiency breakdown at one point");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Sweep one numeric parameter");
  sweep->add_option("--param", sweep_args.parameter, "Parameter key");
  sweep->add_option("--values", sweep_args.values, "Explicit values");
  sweep->add_option("--min", sweep_args.min, "Range start");
  sweep->add_option("--max", sweep_args.max, "Range end (inclusive)");
  sweep->add_option("--step", sweep_args.step, "Range step");

  int n_max = 128;
  auto* optimize = app.add_subcommand("optimize", "Argmax of eta over N");
  optimize->add_option("--n-max", n_max, "Largest N")->check(CLI::PositiveNumber);

  double lo = 0.85, hi = 0.99, tol = 1e-6;
  auto* crossing = app.add_subcommand(
      "crossing", "Switch transmission where both protocols peak equally");
  crossing->add_option("--lo", lo, "Bracket start");
  crossing->add_option("--hi", hi, "Bracket end");
  crossing->add_option("--tol", tol, "Bisection tolerance");

  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate versus analytic eta");

  std::optional<double> bell_eta;
  auto* bell = app.add_subcommand("bell", "Bell-state success probabilities");
  bell->add_option("--eta", bell_eta, "Single-photon efficiency to compose");

  int fig3_n_max = 128;
  auto* fig3 = app.add_subcommand("fig3", "Write fig3a, fig3b and fig3c CSV files with a JSON summary");
  fig3->add_option("--n-max", fig3_n_max, "Largest N")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*eval) return run_eval(g);
    if (*sweep) return run_sweep(g, sweep_args);
    if (*optimize) return run_optimize(g, n_max);
    if (*crossing) return run_crossing(g, lo, hi, tol);
    if (*mc) return run_mc(g);
    if (*bell) return run_bell(g, bell_eta);
    if (*fig3) return run_fig3(g, fig3_n_max);
  } catch (const hmux::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const hmux::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOther;
  }
  return kExitOther;
}
