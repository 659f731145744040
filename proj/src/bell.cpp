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

#include "hmux/bell.hpp"

#include <array>
#include <cmath>

#include "hmux/errors.hpp"

namespace hmux {

namespace {

constexpr int kHbsRails = 4;
constexpr int kHbsModes = 2 * kHbsRails;
constexpr double kBellTolerance = 1e-10;

int rail_of(const HbsCircuitOptions& o, int k) {
  return o.mirror ? kHbsRails - 1 - k : k;
}

/// |⟨target|ψ⟩|² for a two-rail, one-photon-per-rail state given as
/// amplitudes m[pol_a][pol_b].
double bell_fidelity(const std::array<std::array<Complex, 2>, 2>& m,
                     bool same_polarization) {
  double norm = 0.0;
  for (const auto& row : m) {
    for (const auto& a : row) norm += std::norm(a);
  }
  if (norm == 0.0) return 0.0;
  const Complex overlap = same_polarization ? m[0][0] + m[1][1]
                                            : m[0][1] + m[1][0];
  return std::norm(overlap) / (2.0 * norm);
}

}  // namespace

std::string Rational::to_string() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational to_rational(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw DomainError("to_rational: non-finite value");
  // Convergents h/k of the continued fraction of x.
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double rest = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_real = std::floor(rest);
    const auto a = static_cast<std::int64_t>(a_real);
    const std::int64_t k2 = a * k1 + k0;
    if (k2 > max_den) break;
    const std::int64_t h2 = a * h1 + h0;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const double frac = rest - a_real;
    if (std::abs(static_cast<double>(h1) / k1 - x) < 1e-15 || frac < 1e-15) {
      break;
    }
    rest = 1.0 / frac;
  }
  return {h1, k1};
}

std::vector<CircuitElement> hbs_circuit(const HbsCircuitOptions& o) {
  std::vector<CircuitElement> c;
  for (int k = 0; k < kHbsRails; ++k) {
    c.push_back(CircuitElement::rotator(rail_of(o, k), o.input_rotation));
  }
  c.push_back(CircuitElement::polarizing_coupler(rail_of(o, 0), rail_of(o, 1),
                                                 o.pdc_reflection));
  c.push_back(CircuitElement::polarizing_coupler(rail_of(o, 2), rail_of(o, 3),
                                                 o.pdc_reflection));
  const int d1 = rail_of(o, 1);
  const int d2 = rail_of(o, 2);
  if (o.middle_rotation) {
    c.push_back(CircuitElement::rotator(d1, o.middle_angle));
    c.push_back(CircuitElement::rotator(d2, o.middle_angle));
  }
  c.push_back(CircuitElement::polarizing_coupler(d1, d2, o.pdc_reflection));
  if (o.middle_rotation) {
    c.push_back(CircuitElement::rotator(d1, -o.middle_angle));
    c.push_back(CircuitElement::rotator(d2, -o.middle_angle));
  }
  return c;
}

FockState hbs_input(const HbsCircuitOptions& o) {
  std::vector<int> modes;
  for (int k = 0; k < kHbsRails; ++k) {
    modes.push_back(mode_index(rail_of(o, k), Polarization::H));
  }
  FockState s = FockState::from_creations(kHbsModes, modes);
  s *= std::polar(1.0, o.global_phase);
  return s;
}

HbsResult hbs_herald_probability(const HbsCircuitOptions& o) {
  const FockState out = apply_circuit(hbs_input(o), hbs_circuit(o));
  const int port1 = rail_of(o, 0);
  const int port4 = rail_of(o, 3);
  const int d1 = rail_of(o, 1);
  const int d2 = rail_of(o, 2);

  HbsResult result;
  for (const auto& [occ, p] : detection_distribution(out)) {
    result.total_probability += p;
  }

  constexpr std::array<Polarization, 2> kPols{Polarization::H, Polarization::V};
  for (Polarization p1 : kPols) {
    for (Polarization p2 : kPols) {
      HeraldPattern pat;
      pat.label = std::string("D1-") + (p1 == Polarization::H ? "H" : "V") +
                  "&D2-" + (p2 == Polarization::H ? "H" : "V");
      const bool same = p1 == p2;
      pat.target = same ? "HH+VV" : "HV+VH";
      std::array<std::array<Complex, 2>, 2> m{};
      for (const auto& [occ, amp] : out.terms()) {
        const auto n = [&](int rail, Polarization pol) {
          return static_cast<int>(occ[mode_index(rail, pol)]);
        };
        const bool herald = n(d1, p1) == 1 && n(d1, p1 == Polarization::H
                                                        ? Polarization::V
                                                        : Polarization::H) == 0 &&
                            n(d2, p2) == 1 && n(d2, p2 == Polarization::H
                                                        ? Polarization::V
                                                        : Polarization::H) == 0;
        const int in1 = n(port1, Polarization::H) + n(port1, Polarization::V);
        const int in4 = n(port4, Polarization::H) + n(port4, Polarization::V);
        if (!herald || in1 != 1 || in4 != 1) continue;
        m[n(port1, Polarization::V)][n(port4, Polarization::V)] += amp;
      }
      for (const auto& row : m) {
        for (const auto& a : row) pat.probability += std::norm(a);
      }
      pat.fidelity = bell_fidelity(m, same);
      result.herald_probability += pat.probability;
      if (pat.probability > 0.0 && pat.fidelity > 1.0 - kBellTolerance) {
        result.success_probability += pat.probability;
      }
      result.patterns.push_back(pat);
    }
  }
  result.success_exact = to_rational(result.success_probability, 1 << 12);
  return result;
}

TwoSourceResult two_source_probability(bool orthogonal) {
  FockState in = FockState::from_creations(
      4, {mode_index(0, Polarization::H), mode_index(1, Polarization::H)});
  std::vector<CircuitElement> circuit;
  if (orthogonal) {
    circuit.push_back(CircuitElement::rotator(1, std::numbers::pi / 2));
  }
  circuit.push_back(CircuitElement::nonpolarizing_coupler(0, 1));
  const FockState out = apply_circuit(std::move(in), circuit);

  std::array<std::array<Complex, 2>, 2> m{};
  for (const auto& [occ, amp] : out.terms()) {
    const int n0 = occ[0] + occ[1];
    const int n1 = occ[2] + occ[3];
    if (n0 != 1 || n1 != 1) continue;
    m[occ[1]][occ[3]] += amp;
  }
  TwoSourceResult r;
  for (const auto& row : m) {
    for (const auto& a : row) r.coincidence_probability += std::norm(a);
  }
  if (r.coincidence_probability > 0.0) {
    // Singlet (|HV⟩ - |VH⟩)/√2.
    const Complex overlap = m[0][1] - m[1][0];
    r.singlet_fidelity =
        std::norm(overlap) / (2.0 * r.coincidence_probability);
  }
  r.exact = to_rational(r.coincidence_probability, 1 << 12);
  return r;
}

double composed_success(double eta, BellScheme scheme) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw DomainError("composed_success: eta must lie in [0, 1]");
  }
  return scheme == BellScheme::HBS4 ? 3.0 / 16.0 * std::pow(eta, 4)
                                    : 0.5 * eta * eta;
}

}  // namespace hmux
