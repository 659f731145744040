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

#ifndef HMUX_FOCK_HPP
#define HMUX_FOCK_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace hmux {

using Complex = std::complex<double>;
using Occupation = std::vector<std::uint8_t>;

enum class Polarization { H = 0, V = 1 };

/// Polarization-resolved mode index: two modes per spatial rail.
constexpr int mode_index(int rail, Polarization pol) {
  return 2 * rail + static_cast<int>(pol);
}

/// Sparse superposition of Fock basis states over a fixed set of modes.
class FockState {
 public:
  explicit FockState(int n_modes);

  /// Π a†_m |0⟩ over `modes` (repeats allowed), normalized.
  static FockState from_creations(int n_modes, const std::vector<int>& modes);

  int n_modes() const { return n_modes_; }
  const std::map<Occupation, Complex>& terms() const { return terms_; }
  Complex amplitude(const Occupation& occ) const;

  void add(const Occupation& occ, Complex amp);
  /// Drops terms with |amplitude| below `eps`.
  void prune(double eps = 1e-14);

  double norm_squared() const;
  /// Photon numbers present in the support (one value for a number
  /// eigenstate).
  std::vector<int> photon_numbers() const;

  FockState& operator*=(Complex c);

 private:
  int n_modes_;
  std::map<Occupation, Complex> terms_;
};

/// Linear-optics element acting on a subset of modes. The local matrix maps
/// input mode j to Σ_i U(i, j) a†_{modes[i]}.
class CircuitElement {
 public:
  enum class Kind { PolarizationRotator, PolarizingCoupler, NonpolarizingCoupler, Custom };

  /// H → cos θ H + sin θ V, V → -sin θ H + cos θ V on `rail`.
  static CircuitElement rotator(int rail, double angle);
  /// Transmits H on each rail; V crosses between the rails with the given
  /// phase.
  static CircuitElement polarizing_coupler(int rail_a, int rail_b,
                                           Complex reflection = 1.0);
  /// 50/50 coupler, identical for both polarizations, i on cross.
  static CircuitElement nonpolarizing_coupler(int rail_a, int rail_b);
  /// Throws DomainError unless `local` is unitary to 1e-12.
  static CircuitElement custom(std::vector<int> modes, Eigen::MatrixXcd local);

  Kind kind() const { return kind_; }
  const std::vector<int>& modes() const { return modes_; }
  const Eigen::MatrixXcd& local() const { return local_; }

 private:
  CircuitElement(Kind kind, std::vector<int> modes, Eigen::MatrixXcd local);
  Kind kind_;
  std::vector<int> modes_;
  Eigen::MatrixXcd local_;
};

/// Second-quantized action of the element's mode transformation.
FockState apply_element(const FockState& state, const CircuitElement& elem);

FockState apply_circuit(FockState state,
                        const std::vector<CircuitElement>& circuit);

/// Probability of every number-resolved outcome over all modes.
std::map<Occupation, double> detection_distribution(const FockState& state);

}  // namespace hmux

#endif  // HMUX_FOCK_HPP
