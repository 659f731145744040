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

#include "hmux/control.hpp"

#include <algorithm>
#include <bit>

#include "hmux/errors.hpp"

namespace hmux {

namespace {

Phase to_phase(bool pi) { return pi ? Phase::Pi : Phase::Zero; }

int log2_exact(int n_bins) {
  if (n_bins < 2 || !std::has_single_bit(static_cast<unsigned>(n_bins))) {
    throw DomainError("phase schedule needs N a power of two >= 2, got " +
                      std::to_string(n_bins));
  }
  return std::countr_zero(static_cast<unsigned>(n_bins));
}

}  // namespace

std::vector<int> delay_decompose(int delay_bins, int n_bins) {
  if (n_bins < 1 || delay_bins < 0 || delay_bins > n_bins - 1) {
    throw DomainError("delay out of range [0, N-1]");
  }
  const int width = std::bit_width(static_cast<unsigned>(n_bins - 1));
  std::vector<int> c(width);
  for (int j = 0; j < width; ++j) c[j] = (delay_bins >> j) & 1;
  return c;
}

PhaseSchedule::PhaseSchedule(int n_bins, std::vector<Phase> phases)
    : n_bins_(n_bins),
      n_stages_(n_bins > 0 ? static_cast<int>(phases.size()) / n_bins : 0),
      phases_(std::move(phases)) {
  if (n_bins < 1 || phases_.size() != static_cast<std::size_t>(n_bins_) *
                                          static_cast<std::size_t>(n_stages_)) {
    throw DomainError("phase matrix shape mismatch");
  }
}

Phase PhaseSchedule::at(int bin, int stage) const {
  if (bin < 1 || bin > n_bins_ || stage < 0 || stage >= n_stages_) {
    throw DomainError("phase schedule index out of range");
  }
  return phases_[static_cast<std::size_t>(bin - 1) * n_stages_ + stage];
}

std::vector<Phase> PhaseSchedule::row(int bin) const {
  std::vector<Phase> r(n_stages_);
  for (int s = 0; s < n_stages_; ++s) r[s] = at(bin, s);
  return r;
}

PhaseSchedule phase_schedule(int n_bins) {
  const int m = log2_exact(n_bins);
  std::vector<Phase> phases;
  phases.reserve(static_cast<std::size_t>(n_bins) * (m + 1));
  for (int bin = 1; bin <= n_bins; ++bin) {
    const auto c = delay_decompose(n_bins - bin, n_bins);
    phases.push_back(to_phase(c[m - 1] == 1));
    int rail = 0;
    for (int s = 1; s < m; ++s) {
      const int want = c[m - 1 - s] == 1 ? 0 : 1;
      phases.push_back(to_phase(rail != want));
      rail = want;
    }
    phases.push_back(to_phase(rail != 1));
  }
  return PhaseSchedule(n_bins, std::move(phases));
}

RouteResult decode_route(const PhaseSchedule& schedule, int bin) {
  const int m = schedule.n_stages() - 1;
  RouteResult out;
  if (schedule.at(bin, 0) == Phase::Pi) out.delay_bins += 1 << (m - 1);
  int rail = 0;
  for (int s = 1; s < m; ++s) {
    if (schedule.at(bin, s) == Phase::Pi) rail ^= 1;
    if (rail == 0) out.delay_bins += 1 << (m - 1 - s);
  }
  if (schedule.at(bin, m) == Phase::Pi) rail ^= 1;
  out.exit_rail = rail;
  return out;
}

HeraldFrame::HeraldFrame(int n_bins) {
  if (n_bins < 1) throw DomainError("herald frame needs at least one bin");
  bits_.assign(n_bins, false);
}

HeraldFrame::HeraldFrame(std::vector<bool> bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw DomainError("herald frame needs at least one bin");
}

HeraldFrame HeraldFrame::from_string(std::string_view bits) {
  std::vector<bool> v;
  v.reserve(bits.size());
  for (char ch : bits) {
    if (ch != '0' && ch != '1') {
      throw DomainError("herald frame string must contain only 0 and 1");
    }
    v.push_back(ch == '1');
  }
  return HeraldFrame(std::move(v));
}

bool HeraldFrame::any() const {
  return std::find(bits_.begin(), bits_.end(), true) != bits_.end();
}

HeraldFrame HeraldFrame::reversed() const {
  return HeraldFrame(std::vector<bool>(bits_.rbegin(), bits_.rend()));
}

std::string HeraldFrame::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (bool b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::optional<int> select_first(const HeraldFrame& frame) {
  for (int r = 1; r <= frame.size(); ++r) {
    if (frame.test(r)) return r;
  }
  return std::nullopt;
}

LastPhotonChoice select_last(const HeraldFrame& frame) {
  LastPhotonChoice out{HeraldFrame(frame.size()), std::nullopt};
  for (int r = frame.size(); r >= 1; --r) {
    if (frame.test(r)) {
      out.output.set(r);
      out.bin = r;
      break;
    }
  }
  return out;
}

Phase ClockDivider::level(long slot) const {
  if (half_period == 0) return start;
  const bool toggled = ((slot + offset) / half_period) % 2 == 1;
  return start ^ to_phase(toggled);
}

std::vector<ClockDivider> clock_dividers(int n_bins) {
  const int m = log2_exact(n_bins);
  // Stage levels as functions of the bin counter k = bin - 1:
  //   entry ¬k_{m-1}, first inner k_{m-2}, later inner k_{j+1} ⊕ k_j
  //   (a Gray-code bit), exit ¬k_0.
  std::vector<ClockDivider> d;
  d.push_back({n_bins / 2, 0, Phase::Pi});
  if (m == 1) {
    d.push_back({0, 0, Phase::Pi});
    return d;
  }
  d.push_back({n_bins / 4, 0, Phase::Zero});
  for (int s = 2; s < m; ++s) {
    const int j = m - s - 1;
    d.push_back({1 << (j + 1), 1 << j, Phase::Zero});
  }
  d.push_back({1, 0, Phase::Pi});
  return d;
}

std::vector<std::vector<Phase>> drive_waveforms(int n_bins, int n_frames) {
  if (n_frames < 0) throw DomainError("n_frames must be >= 0");
  const auto dividers = clock_dividers(n_bins);
  const long slots = static_cast<long>(n_bins) * n_frames;
  std::vector<std::vector<Phase>> waves(dividers.size());
  for (std::size_t s = 0; s < dividers.size(); ++s) {
    waves[s].reserve(slots);
    for (long t = 0; t < slots; ++t) waves[s].push_back(dividers[s].level(t));
  }
  return waves;
}

void write_schedule_csv(std::ostream& os, const PhaseSchedule& schedule) {
  os << "bin,delay_bins";
  for (int s = 0; s < schedule.n_stages(); ++s) os << ",phi_s" << s;
  os << '\n';
  for (int bin = 1; bin <= schedule.n_bins(); ++bin) {
    os << bin << ',' << decode_route(schedule, bin).delay_bins;
    for (int s = 0; s < schedule.n_stages(); ++s) {
      os << ',' << (schedule.at(bin, s) == Phase::Pi ? "pi" : "0");
    }
    os << '\n';
  }
}

}  // namespace hmux
