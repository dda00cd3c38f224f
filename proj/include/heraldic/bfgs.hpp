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

#include <functional>
#include <string>

#include "heraldic/types.hpp"

namespace heraldic {

/// Value of f at x; writes the gradient into `grad` (already sized).
using Objective = std::function<double(const RVector& x, RVector& grad)>;

struct BfgsOptions {
  double gradient_tolerance = 1e-9;
  int max_iterations = 2000;
  /// Sufficient-decrease and curvature constants of the strong Wolfe test.
  double c1 = 1e-4;
  double c2 = 0.9;
  int max_line_search_steps = 40;
  /// Powell damping threshold: updates keep s'r >= damping * s'Bs.
  double damping = 0.2;
  /// Stop after this many consecutive steps each lowering f by less than
  /// stall_tolerance * (1 + |f|).
  int stall_iterations = 10;
  double stall_tolerance = 1e-15;
};

enum class BfgsStatus { Converged, MaxIterations, LineSearchFailed, Stalled };

std::string to_string(BfgsStatus status);

struct BfgsResult {
  RVector x;
  double f = 0.0;
  RVector gradient;
  int iterations = 0;
  int evaluations = 0;
  BfgsStatus status = BfgsStatus::MaxIterations;
};

/// Damped BFGS on a direct Hessian approximation, strong Wolfe line search.
/// Throws ValidationError when f or its gradient is not finite at x0.
BfgsResult bfgs_minimize(const Objective& f, const RVector& x0, const BfgsOptions& options = {});

}  // namespace heraldic
