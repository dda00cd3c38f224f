// Copyright 2026 The Heraldic Authors
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

#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heraldic/types.hpp"

namespace heraldic {

/// Photon-number basis state: one non-negative occupation per optical mode.
class FockState {
 public:
  FockState() = default;
  explicit FockState(std::vector<int> occupations);
  FockState(std::initializer_list<int> occupations);

  int modes() const { return static_cast<int>(occupations_.size()); }
  int photons() const { return photons_; }
  int operator[](int mode) const { return occupations_[static_cast<std::size_t>(mode)]; }
  const std::vector<int>& occupations() const { return occupations_; }

  /// Concatenation: this state's modes followed by `tail`'s modes.
  FockState concat(const FockState& tail) const;
  /// Sub-state over modes [first, first + count).
  FockState slice(int first, int count) const;

  std::string to_string() const;

  friend bool operator==(const FockState& a, const FockState& b) {
    return a.occupations_ == b.occupations_;
  }
  friend std::strong_ordering operator<=>(const FockState& a, const FockState& b) {
    return a.occupations_ <=> b.occupations_;
  }

 private:
  std::vector<int> occupations_;
  int photons_ = 0;
};

/// All states with `n_photons` photons in `n_modes` modes, lexicographically
/// descending (e.g. (1,0) before (0,1)).
std::vector<FockState> enumerate_fock_states(int n_modes, int n_photons);

/// Binomial coefficient C(n, k) as a size; 0 for k outside [0, n].
std::size_t binomial(int n, int k);

/// Indexed enumeration of one (modes, photons) sector.
class FockBasis {
 public:
  FockBasis(int n_modes, int n_photons);

  int modes() const { return modes_; }
  int photons() const { return photons_; }
  std::size_t size() const { return states_.size(); }
  const FockState& operator[](std::size_t i) const { return states_[i]; }
  const std::vector<FockState>& states() const { return states_; }

  /// Index of `state`, or -1 when it is not in this sector.
  long index_of(const FockState& state) const;

 private:
  int modes_;
  int photons_;
  std::vector<FockState> states_;
  std::map<FockState, std::size_t> index_;
};

/// Permanent of a square matrix, Gray-code Ryser iteration, O(2^n n).
/// The empty matrix has permanent 1.
Complex permanent(const CMatrix& matrix);

/// Same, on a row-major n x n buffer.
Complex permanent(std::span<const Complex> row_major, int n);

/// <output| U |input> for the Fock-space operator induced by the mode
/// unitary U. Zero when photon totals differ.
Complex transition_amplitude(const CMatrix& u, const FockState& input, const FockState& output);

/// Normalized superposition of distinct Fock states over the target modes.
class TargetState {
 public:
  using Term = std::pair<FockState, Complex>;

  TargetState() = default;
  /// Validates: non-empty, equal mode and photon counts, distinct states,
  /// sum |amplitude|^2 = 1 within 1e-12.
  explicit TargetState(std::vector<Term> terms, std::string label = {});
  /// Normalizes the given amplitudes before validating.
  static TargetState normalized(std::vector<Term> terms, std::string label = {});

  const std::vector<Term>& terms() const { return terms_; }
  const std::string& label() const { return label_; }
  int modes() const { return terms_.empty() ? 0 : terms_.front().first.modes(); }
  int photons() const { return terms_.empty() ? 0 : terms_.front().first.photons(); }

 private:
  std::vector<Term> terms_;
  std::string label_;
};

/// The heralding problem: an N + M mode interferometer fed with `input`,
/// ancilla modes N..N+M-1 measured against `ancilla_patterns`.
struct ProblemSpec {
  int n_target_modes = 0;
  int n_ancilla_modes = 0;
  FockState input;
  std::vector<FockState> ancilla_patterns;
  std::vector<TargetState> targets;

  int modes() const { return n_target_modes + n_ancilla_modes; }
  int ancilla_photons() const;
  /// N_ph - M_ph, the photon count left in the target modes.
  int target_photons() const;

  /// Structural checks (mode counts, equal pattern photon counts).
  /// Throws DimensionError / ValidationError.
  void validate() const;
  /// validate() plus: every target carries target_photons() photons.
  void validate_photon_balance() const;
};

struct HeraldedPattern {
  FockState pattern;
  double probability = 0.0;
  /// Normalized amplitudes over HeraldReport::target_basis; all zeros when
  /// the pattern never fires.
  std::vector<Complex> state;
};

struct HeraldReport {
  FockBasis target_basis{1, 0};
  std::vector<HeraldedPattern> patterns;
  /// overlaps(t, a) = M_{t,a}; rows are targets, columns are patterns.
  Eigen::MatrixXd overlaps;
};

/// Probabilities below this are treated as "pattern never fires".
inline constexpr double kZeroProbability = 1e-14;
/// Unitarity tolerance applied to user-supplied interferometers.
inline constexpr double kUnitarityTolerance = 1e-8;

/// P_a, M_{t,a} and heralded states for every ancilla pattern of `spec`.
HeraldReport herald_analysis(const CMatrix& u, const ProblemSpec& spec);

/// |<target|state>|^2 for a normalized amplitude vector over `basis`.
double state_fidelity(const FockBasis& basis, std::span<const Complex> state,
                      const TargetState& target);

}  // namespace heraldic
