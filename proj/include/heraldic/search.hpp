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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heraldic/fock.hpp"

namespace heraldic {

struct Stage1Config {
  ProblemSpec spec;
  /// Exponent of the relaxed objective sum P_a M_{t,a}^p.
  int p = 4;
  /// Optional larger exponents applied in turn after the p stage, each
  /// warm-started from the previous optimum. Pushes overlaps of the relaxed
  /// optimum onto exactly 0 or 1. Empty by default.
  std::vector<int> sharpening;
  int restarts = 1;
  std::uint64_t master_seed = 0;
  double gradient_tolerance = 1e-9;
  /// BFGS iteration budget per restart, summed over re-anchored charts.
  int max_iterations = 2000;
  /// Iterations spent in one chart before it is re-centred.
  int anchor_iterations = 200;
  /// Admissible patterns match one target within this of 1 and the others
  /// within this of 0.
  double filter_tolerance = 1e-6;
  /// A run whose non-admissible patterns reach this overlap with some target
  /// stopped at an improper stationary point and is discarded.
  double improper_overlap = 0.5;
  /// Replaces the Haar draw of every restart (for tests and warm starts).
  std::optional<CMatrix> chart_base;

  /// Throws ValidationError / DimensionError.
  void validate() const;
};

/// A locally optimal interferometer that passed the filter.
struct Candidate {
  CMatrix unitary;
  /// Admissible pattern indices into the problem's ancilla_patterns, ascending.
  std::vector<int> ancilla_set;
  /// pattern index -> matched target index
  std::map<int, int> matched_targets;
  /// pattern index -> P_a
  std::map<int, double> probabilities;
  double objective_value = 0.0;
  int restart = -1;
  std::uint64_t seed = 0;
  /// rho_distance(unitary, starting point)
  double rho = 0.0;
  int iterations = 0;

  double total_probability() const;
};

struct RestartOutcome {
  int restart = 0;
  std::uint64_t seed = 0;
  double objective_value = 0.0;
  int iterations = 0;
  bool accepted = false;
  /// "accepted", "improper", "no admissible pattern"
  std::string verdict;
  double rho = 0.0;
  /// Final point of the local maximization.
  CMatrix unitary;
};

struct Stage1Result {
  /// Sorted by total admissible probability (descending), then restart.
  std::vector<Candidate> candidates;
  /// One entry per restart, in restart order.
  std::vector<RestartOutcome> runs;
};

/// Filters a point: the admissible set, matches and probabilities, or nullopt
/// with `verdict` explaining the rejection.
std::optional<Candidate> classify_point(const CMatrix& u, const ProblemSpec& spec, double filter_tolerance,
                                        double improper_overlap, std::string* verdict = nullptr);

/// Multi-start maximization of the stage-1 objective. `workers` <= 0 uses the
/// hardware concurrency; the result does not depend on it.
Stage1Result stage1_search(const Stage1Config& config, int workers = 0);

}  // namespace heraldic
