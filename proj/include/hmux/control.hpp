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

#ifndef HMUX_CONTROL_HPP
#define HMUX_CONTROL_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace hmux {

/// MZI drive phase. Zero = bar, Pi = cross.
enum class Phase : std::uint8_t { Zero, Pi };

inline Phase operator^(Phase a, Phase b) {
  return a == b ? Phase::Zero : Phase::Pi;
}

/// Binary coefficients c_j (least significant first) with
/// Σ c_j 2^j = delay_bins. The list has bit_width(N-1) entries, one per
/// delay stage. Throws DomainError unless 0 <= delay_bins < N.
std::vector<int> delay_decompose(int delay_bins, int n_bins);

/// Switch phases of the variable delay network for one frame.
///
/// The network for N = 2^m has m delay stages (2^{m-1} T, ..., 2T, T) and
/// m + 1 clocked MZIs. Stage 0 is the entry switch of the coarsest delay,
/// stage m the exit switch. Routing model:
///   - the entry switch sends the photon into the coarsest delay on Pi,
///     and that stage returns the photon to rail 0;
///   - each following switch toggles the rail on Pi; the photon takes the
///     next delay when it leaves the switch on rail 0;
///   - the exit switch toggles the rail once more; every photon must leave
///     on rail 1.
/// For N = 8 this reproduces the reference eight-bin schedule exactly.
class PhaseSchedule {
 public:
  PhaseSchedule(int n_bins, std::vector<Phase> phases);

  int n_bins() const { return n_bins_; }
  int n_stages() const { return n_stages_; }
  /// bin is 1-based, stage 0-based.
  Phase at(int bin, int stage) const;
  std::vector<Phase> row(int bin) const;

  friend bool operator==(const PhaseSchedule&, const PhaseSchedule&) = default;

 private:
  int n_bins_;
  int n_stages_;
  std::vector<Phase> phases_;
};

/// Throws DomainError unless N is a power of two >= 2.
PhaseSchedule phase_schedule(int n_bins);

struct RouteResult {
  int delay_bins = 0;
  int exit_rail = 0;
};

/// Propagates a token from `bin` through switches set by the schedule row.
RouteResult decode_route(const PhaseSchedule& schedule, int bin);

/// Serial N-bit herald record; bin r (1-based) is character r-1 of the
/// string form.
class HeraldFrame {
 public:
  explicit HeraldFrame(int n_bins);
  explicit HeraldFrame(std::vector<bool> bits);
  /// Parses a string of '0'/'1' characters. Throws DomainError otherwise.
  static HeraldFrame from_string(std::string_view bits);

  int size() const { return static_cast<int>(bits_.size()); }
  bool test(int bin) const { return bits_[bin - 1]; }
  void set(int bin, bool value = true) { bits_[bin - 1] = value; }
  bool any() const;
  HeraldFrame reversed() const;
  std::string to_string() const;

  friend bool operator==(const HeraldFrame&, const HeraldFrame&) = default;

 private:
  std::vector<bool> bits_;
};

/// Earliest heralded bin, or nullopt for an idle frame.
std::optional<int> select_first(const HeraldFrame& frame);

struct LastPhotonChoice {
  /// One-hot decision-switch pattern; all zero for an idle frame.
  HeraldFrame output;
  std::optional<int> bin;
};

/// Lookup-table last-photon selection: the output keeps only the latest
/// set bit of the input.
LastPhotonChoice select_last(const HeraldFrame& frame);

/// Square-wave drive derived from the 1/T clock: the level starts at
/// `start`, and toggles every `half_period` slots after shifting time by
/// `offset`. `half_period == 0` means a constant level. The clock division
/// factor is 2 * half_period.
struct ClockDivider {
  int half_period = 0;
  int offset = 0;
  Phase start = Phase::Zero;

  Phase level(long slot) const;
  int division() const { return 2 * half_period; }
};

/// Dividers for the m + 1 clocked stages of an N-bin network.
std::vector<ClockDivider> clock_dividers(int n_bins);

/// Per-stage waveforms over n_frames * N consecutive slots; slot t belongs
/// to bin (t mod N) + 1.
std::vector<std::vector<Phase>> drive_waveforms(int n_bins, int n_frames);

/// CSV with columns bin, delay_bins, phi_s0..phi_s{m}; phases as 0 / pi.
void write_schedule_csv(std::ostream& os, const PhaseSchedule& schedule);

}  // namespace hmux

#endif  // HMUX_CONTROL_HPP
