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

#include "hmux/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "hmux/errors.hpp"

namespace hmux {

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

double sqrt_factorial_product(const Occupation& occ) {
  double p = 1.0;
  for (auto n : occ) p *= factorial(n);
  return std::sqrt(p);
}

constexpr Complex kI{0.0, 1.0};

}  // namespace

FockState::FockState(int n_modes) : n_modes_(n_modes) {
  if (n_modes < 1) throw DomainError("FockState needs at least one mode");
}

FockState FockState::from_creations(int n_modes,
                                    const std::vector<int>& modes) {
  FockState s(n_modes);
  Occupation occ(n_modes, 0);
  for (int m : modes) {
    if (m < 0 || m >= n_modes) throw DomainError("mode index out of range");
    ++occ[m];
  }
  // Π a† |0⟩ = Π √(n!) |n⟩; normalize away the factor.
  s.add(occ, 1.0);
  return s;
}

Complex FockState::amplitude(const Occupation& occ) const {
  const auto it = terms_.find(occ);
  return it == terms_.end() ? Complex{} : it->second;
}

void FockState::add(const Occupation& occ, Complex amp) {
  if (static_cast<int>(occ.size()) != n_modes_) {
    throw DomainError("occupation size does not match mode count");
  }
  terms_[occ] += amp;
}

void FockState::prune(double eps) {
  std::erase_if(terms_, [eps](const auto& kv) { return std::abs(kv.second) < eps; });
}

double FockState::norm_squared() const {
  double n = 0.0;
  for (const auto& [occ, amp] : terms_) n += std::norm(amp);
  return n;
}

std::vector<int> FockState::photon_numbers() const {
  std::set<int> seen;
  for (const auto& [occ, amp] : terms_) {
    seen.insert(std::accumulate(occ.begin(), occ.end(), 0));
  }
  return {seen.begin(), seen.end()};
}

FockState& FockState::operator*=(Complex c) {
  for (auto& [occ, amp] : terms_) amp *= c;
  return *this;
}

CircuitElement::CircuitElement(Kind kind, std::vector<int> modes,
                               Eigen::MatrixXcd local)
    : kind_(kind), modes_(std::move(modes)), local_(std::move(local)) {
  const auto k = static_cast<Eigen::Index>(modes_.size());
  if (local_.rows() != k || local_.cols() != k) {
    throw DomainError("element matrix does not match its mode list");
  }
  std::set<int> distinct(modes_.begin(), modes_.end());
  if (distinct.size() != modes_.size() || (k > 0 && *distinct.begin() < 0)) {
    throw DomainError("element modes must be distinct and non-negative");
  }
  const Eigen::MatrixXcd gram = local_.adjoint() * local_;
  if (k > 0 &&
      (gram - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff() > 1e-12) {
    throw DomainError("circuit element is not unitary");
  }
}

CircuitElement CircuitElement::rotator(int rail, double angle) {
  Eigen::MatrixXcd u(2, 2);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  u << c, -s, s, c;
  return CircuitElement(Kind::PolarizationRotator,
                        {mode_index(rail, Polarization::H),
                         mode_index(rail, Polarization::V)},
                        u);
}

CircuitElement CircuitElement::polarizing_coupler(int rail_a, int rail_b,
                                                  Complex reflection) {
  // Basis: aH, aV, bH, bV.
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
  u(0, 0) = 1.0;
  u(2, 2) = 1.0;
  u(3, 1) = reflection;
  u(1, 3) = reflection;
  return CircuitElement(Kind::PolarizingCoupler,
                        {mode_index(rail_a, Polarization::H),
                         mode_index(rail_a, Polarization::V),
                         mode_index(rail_b, Polarization::H),
                         mode_index(rail_b, Polarization::V)},
                        u);
}

CircuitElement CircuitElement::nonpolarizing_coupler(int rail_a, int rail_b) {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
  for (int pol = 0; pol < 2; ++pol) {
    const int a = pol;
    const int b = 2 + pol;
    u(a, a) = r;
    u(b, b) = r;
    u(b, a) = kI * r;
    u(a, b) = kI * r;
  }
  return CircuitElement(Kind::NonpolarizingCoupler,
                        {mode_index(rail_a, Polarization::H),
                         mode_index(rail_a, Polarization::V),
                         mode_index(rail_b, Polarization::H),
                         mode_index(rail_b, Polarization::V)},
                        u);
}

CircuitElement CircuitElement::custom(std::vector<int> modes,
                                      Eigen::MatrixXcd local) {
  return CircuitElement(Kind::Custom, std::move(modes), std::move(local));
}

FockState apply_element(const FockState& state, const CircuitElement& elem) {
  const auto& modes = elem.modes();
  const auto& u = elem.local();
  const int k = static_cast<int>(modes.size());
  for (int m : modes) {
    if (m >= state.n_modes()) throw DomainError("element port outside state");
  }

  FockState out(state.n_modes());
  for (const auto& [occ, amp] : state.terms()) {
    Occupation local_in(k);
    Occupation base = occ;
    for (int j = 0; j < k; ++j) {
      local_in[j] = occ[modes[j]];
      base[modes[j]] = 0;
    }
    // Expand Π_j (Σ_i U(i,j) a†_i)^{n_j} / √(n_j!) as a polynomial in the
    // output creation operators.
    std::map<Occupation, Complex> poly{
        {Occupation(k, 0), amp / sqrt_factorial_product(local_in)}};
    for (int j = 0; j < k; ++j) {
      for (int rep = 0; rep < local_in[j]; ++rep) {
        std::map<Occupation, Complex> next;
        for (const auto& [mono, coeff] : poly) {
          for (int i = 0; i < k; ++i) {
            if (u(i, j) == Complex{}) continue;
            Occupation m2 = mono;
            ++m2[i];
            next[m2] += coeff * u(i, j);
          }
        }
        poly = std::move(next);
      }
    }
    for (const auto& [mono, coeff] : poly) {
      Occupation full = base;
      for (int i = 0; i < k; ++i) full[modes[i]] += mono[i];
      out.add(full, coeff * sqrt_factorial_product(mono));
    }
  }
  out.prune();
  return out;
}

FockState apply_circuit(FockState state,
                        const std::vector<CircuitElement>& circuit) {
  for (const auto& elem : circuit) state = apply_element(state, elem);
  return state;
}

std::map<Occupation, double> detection_distribution(const FockState& state) {
  std::map<Occupation, double> dist;
  for (const auto& [occ, amp] : state.terms()) dist[occ] += std::norm(amp);
  return dist;
}

}  // namespace hmux
