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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heraldic/circuit.hpp"
#include "heraldic/search.hpp"

namespace heraldic {

struct Stage2Config {
  CostParams cost;
  /// pattern index -> lower bound P_a*. Patterns of the candidate's admissible
  /// set without an entry use the candidate's own probability.
  std::map<int, double> probability_floor;
  double constraint_tolerance = 1e-8;
  /// Penalty weights of the augmented Lagrangian, increasing.
  std::vector<double> penalty_schedule = {1e2, 1e3, 1e4, 1e5, 1e6, 1e7};
  int max_outer_iterations = 30;
  int max_inner_iterations = 2000;
  /// Element angles this close to 0 or pi/2 are set exactly after the solve.
  double snap_tolerance = 1e-3;

  void validate() const;
};

struct ConstraintResidual {
  /// "probability" (P_a >= floor) or "overlap" (M_{t*,a} >= 1).
  std::string kind;
  int pattern = 0;
  int target = -1;
  double value = 0.0;
  double bound = 0.0;
  /// max(0, bound - value)
  double violation = 0.0;
  bool satisfied = false;
};

struct Stage2Result {
  CircuitSpec circuit;
  bool feasible = false;
  std::string status;
  std::vector<ConstraintResidual> residuals;
  double cost = 0.0;
  double initial_cost = 0.0;
  int nontrivial = 0;
  int initial_nontrivial = 0;
  /// Violated-constraint count after every accepted outer iteration.
  std::vector<int> violation_history;
  int outer_iterations = 0;
};

/// Minimizes simplicity_cost over the element angles and output phases of
/// `initial` (default: clements_decompose(candidate.unitary)) subject to
/// P_a >= P_a* and M_{t*,a} = 1 for every admissible pattern a, both within
/// constraint_tolerance. Never returns more nontrivial elements than it was
/// given; `feasible` is false when the constraints could not be met.
Stage2Result stage2_refine(const Candidate& candidate, const ProblemSpec& problem, const Stage2Config& config,
                           const std::optional<CircuitSpec>& initial = std::nullopt);

/// Gradient of f with respect to (theta_1..theta_Q, phi_1..phi_Q, alpha_1..alpha_d),
/// D = diag(exp(i alpha)), given G with df = 2 Re sum G_jk dU_jk at U = compose(spec).
RVector circuit_gradient(const CircuitSpec& spec, const CMatrix& euclidean);

}  // namespace heraldic
