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

#include <utility>
#include <vector>

#include "heraldic/amplitudes.hpp"
#include "heraldic/circuit.hpp"

namespace heraldic {

/// Relaxed search objective sum_{t,a} P_a M_{t,a}^p (to be maximized).
/// Patterns with P_a below kZeroProbability contribute nothing.
class Stage1Objective {
 public:
  /// `patterns` restricts the sum over a (indices into spec.ancilla_patterns);
  /// empty means all.
  Stage1Objective(const ProblemSpec& spec, int p, std::vector<int> patterns = {});

  int dim() const { return engine_.dim(); }
  int exponent() const { return p_; }

  /// f(U). With `euclidean` non-null also G such that df = 2 Re sum G_jk dU_jk.
  double value(const CMatrix& u, CMatrix* euclidean = nullptr) const;

  /// f at chart_point({base, H(params)}) with the gradient over the d^2 chart
  /// parameters (layout of hermitian_from_params).
  double at_chart(const CMatrix& base, const RVector& params, RVector* grad = nullptr) const;

 private:
  int p_;
  HeraldAmplitudes engine_;
  /// Dense targets over engine_.basis(); sector mismatches are all-zero.
  std::vector<CVector> targets_;
};

/// Pulls a Euclidean gradient G (df = 2 Re sum G_jk dU_jk) at
/// U = chart_point({base, h}) back to the d^2 parameters of h.
RVector chart_gradient(const CMatrix& base, const CMatrix& h, const CMatrix& euclidean);

/// Functional form: value and parameter gradient at chart_point({base, h}).
std::pair<double, RVector> stage1_objective(const CMatrix& h, const CMatrix& base,
                                            const ProblemSpec& spec, int p);

}  // namespace heraldic
