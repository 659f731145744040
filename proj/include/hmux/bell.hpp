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

#ifndef HMUX_BELL_HPP
#define HMUX_BELL_HPP

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "hmux/fock.hpp"

namespace hmux {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / den; }
  std::string to_string() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Best continued-fraction approximation with denominator <= max_den.
Rational to_rational(double x, std::int64_t max_den = 1 << 20);

/// Four-photon heralded Bell state circuit.
///
/// Rails: 0 = output port 1, 1 = port 2 (becomes detector D1),
/// 2 = port 3 (becomes detector D2), 3 = output port 4. Each rail starts
/// with one |H⟩ photon and a rotator; PDCs join rails (0,1) and (2,3); a
/// third PDC joins (1,2) between rotators that turn its basis. The last
/// PDC level in front of the detectors is the H/V-resolved readout of
/// rails 1 and 2.
struct HbsCircuitOptions {
  double input_rotation = std::numbers::pi / 4;
  bool middle_rotation = true;
  double middle_angle = std::numbers::pi / 4;
  Complex pdc_reflection = 1.0;
  /// Mirror the circuit top-to-bottom (exchanges the two source pairs and
  /// the two detectors).
  bool mirror = false;
  /// Global phase applied to the input state.
  double global_phase = 0.0;
};

struct HeraldPattern {
  std::string label;
  /// "HH+VV" or "HV+VH" in output ports (1, 4).
  std::string target;
  /// P(pattern, exactly one photon in each output port).
  double probability = 0.0;
  /// |⟨target|ψ_out⟩|² of the conditional output state; 0 when the pattern
  /// never occurs.
  double fidelity = 0.0;
};

struct HbsResult {
  /// Accepted patterns: D1-H&D2-H, D1-V&D2-V, D1-H&D2-V, D1-V&D2-H.
  std::vector<HeraldPattern> patterns;
  /// Σ accepted-pattern probability.
  double herald_probability = 0.0;
  /// Σ over accepted patterns whose conditional state is the target Bell
  /// state (fidelity 1 within 1e-10).
  double success_probability = 0.0;
  Rational success_exact;
  /// Σ over every number-resolved outcome; 1 for a normalized state.
  double total_probability = 0.0;
};

std::vector<CircuitElement> hbs_circuit(const HbsCircuitOptions& options = {});
FockState hbs_input(const HbsCircuitOptions& options = {});
HbsResult hbs_herald_probability(const HbsCircuitOptions& options = {});

struct TwoSourceResult {
  double coincidence_probability = 0.0;
  Rational exact;
  /// Fidelity of the coincidence-conditioned state with (|HV⟩ - |VH⟩)/√2.
  double singlet_fidelity = 0.0;
};

/// Two |H⟩ photons; one is turned to |V⟩ (unless `orthogonal` is false)
/// and both meet on a 50/50 nonpolarizing coupler.
TwoSourceResult two_source_probability(bool orthogonal = true);

enum class BellScheme { HBS4, PostSelected2 };

/// (3/16) η⁴ for the four-source scheme, (1/2) η² for two sources.
double composed_success(double eta, BellScheme scheme);

}  // namespace hmux

#endif  // HMUX_BELL_HPP
