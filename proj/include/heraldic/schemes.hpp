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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "heraldic/circuit.hpp"
#include "heraldic/fock.hpp"

namespace heraldic {

/// Coefficients over (w0, w1) of a linear form.
using LinearForm = std::array<Complex, 2>;
/// Coefficients over (w0^2, w0 w1, w1^2) of a quadratic form.
using QuadraticForm = std::array<Complex, 3>;

/// Action of a three-mode block on the creation operators w0 and w1^2/2,
/// split by powers of the measured mode w2:
///   w0      -> alpha w2 + beta
///   w1^2/2  -> A w2^2 + 2 B w2 + C
/// D = alpha C + 2 B beta is the coefficient of w2 in w0 w1^2/2.
struct OmegaCoefficients {
  Complex alpha;
  Complex A;
  LinearForm beta;
  LinearForm B;
  QuadraticForm C;
  QuadraticForm D;
};

/// The 3x3 block of the GHZ and Bell schemes (port 2 is measured).
CMatrix omega_block();
/// The same block without its output 30 degree splitter.
CMatrix omega_prime_block();
/// Throws NotUnitaryError unless `block` is a 3x3 unitary within 1e-10.
OmegaCoefficients omega_coefficients(const CMatrix& block);

/// Ten-mode 1/54 GHZ source, twelve two-mode elements. Modes 0-5 carry the
/// state, 6-9 are measured; fed with one photon in each of modes 0-5.
CircuitSpec ghz_scheme();
FockState ghz_input();
/// Same source written as diag[U_T, U_B] followed by two output 45 degree
/// splitters. Fed with ghz_block_input().
CircuitSpec ghz_scheme_block_form();
FockState ghz_block_input();
/// The two 5x5 arms of the block form.
CMatrix ghz_top_block();
CMatrix ghz_bottom_block();
/// Heralding patterns (1,1,1,0) and (1,1,0,1) on modes 6-9.
std::vector<FockState> ghz_patterns();
/// All four zero/one patterns with three photons in four modes.
std::vector<FockState> ghz_all_patterns();

/// (|x> +- |not x>)/sqrt(2) over 3-photon zero/one states of six modes; 20 states.
std::vector<TargetState> ghz_targets();
/// (|101010> + |010101>)/sqrt(2) and the minus combination, labelled
/// "ghz+" and "ghz-".
std::vector<TargetState> ghz_pair();

/// Problem around ghz_scheme(); `full_family` selects all 20 GHZ targets and
/// all four patterns instead of the canonical pair and the two heralds.
ProblemSpec ghz_problem(bool full_family = false);

/// Six-mode Bell source. Modes (a0, a1, b0, b1, a2, b2); a2, b2 are measured.
/// s = -1 inserts a pi/2 phase on b1 after the input splitter.
CircuitSpec bell_scheme(int s, const CMatrix& block);
FockState bell_input();
/// Patterns (1,1), (2,0), (0,2) on (a2, b2).
std::vector<FockState> bell_patterns();

struct NamedBellState {
  std::string label;
  TargetState state;
};
/// phi+-, psi+-, chi+- over (a0, a1, b0, b1), labelled "phi+", "phi-", ...
std::vector<NamedBellState> bell_targets();
/// The same six superpositions built from the 60 degree rotated operators
/// a~0 = a0/2 + a1 sqrt(3)/2, a~1 = a1/2 - a0 sqrt(3)/2 (likewise for b);
/// labelled "phi~+", ...
std::vector<NamedBellState> rotated_bell_targets();
ProblemSpec bell_problem(bool with_rotated = false);

/// A checkable statement about a scheme.
struct Claim {
  enum class Kind { PatternProbability, TotalProbability, HeraldedFidelity, ElementCount };
  Kind kind = Kind::PatternProbability;
  std::optional<FockState> pattern;
  std::vector<FockState> patterns;  // TotalProbability
  std::optional<std::string> target;  // label or decimal index
  double expected = 0.0;
  double tolerance = 1e-9;
};

std::string to_string(Claim::Kind kind);

struct ClaimResult {
  Claim claim;
  std::string description;
  double measured = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::vector<ClaimResult> results;
  HeraldReport herald;
  ProblemSpec problem;
  int nontrivial_elements = 0;
  bool passed() const;
};

/// Runs every claim against `problem` simulated through compose(spec).
/// Claims are validated before any simulation; a malformed claim throws
/// ValidationError. Patterns named by claims but absent from `problem` are
/// added to the analysis.
VerificationReport verify_scheme(const CircuitSpec& spec, const ProblemSpec& problem,
                                 const std::vector<Claim>& claims);

/// A named built-in scheme with its problem and the published numbers.
struct BuiltinScheme {
  std::string name;
  CircuitSpec circuit;
  ProblemSpec problem;
  std::vector<Claim> claims;
};

/// "ghz54", "ghz54-blocks", "bell-omega", "bell-omega-prime". `sign` selects
/// s for the Bell schemes and is ignored otherwise. Unknown names throw
/// ValidationError.
BuiltinScheme builtin_scheme(const std::string& name, int sign = 1);
std::vector<std::string> builtin_scheme_names();

}  // namespace heraldic
