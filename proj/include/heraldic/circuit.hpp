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

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "heraldic/types.hpp"

namespace heraldic {

/// Two-mode U(2) rotation
///   [[e^{i phi} cos theta, -sin theta],
///    [e^{i phi} sin theta,  cos theta]]
/// embedded in rows/columns (n, m).
struct TwoModeElement {
  double theta = 0.0;
  double phi = 0.0;
  int n = 0;
  int m = 1;
};

/// U = D * T_1 * ... * T_Q. `elements[0]` is T_1, the left-most factor, so the
/// last element of the list is the first one light passes through.
struct CircuitSpec {
  int dim = 0;
  std::vector<TwoModeElement> elements;
  /// Diagonal of D; unit modulus.
  std::vector<Complex> phases;

  static CircuitSpec identity(int dim);
  /// Throws DimensionError / ValidationError on bad mode indices or phases.
  void validate() const;
};

struct CostParams {
  double epsilon = 0.01;
  double delta = 0.01;
};

/// Local chart U = base * (iI - H)(iI + H)^{-1} around `base`.
struct CayleyChart {
  CMatrix base;
  CMatrix coordinate;
};

/// Default tolerance (radians) below which an element counts as trivial.
inline constexpr double kTrivialAngle = 1e-6;

Eigen::Matrix2cd element_block(const TwoModeElement& e);
CMatrix element_matrix(const TwoModeElement& e, int dim);

/// Left-multiplies rows (n, m) of `target` by the 2x2 `block`.
void apply_rows(CMatrix& target, int n, int m, const Eigen::Matrix2cd& block);
/// Right-multiplies columns (n, m) of `target` by the 2x2 `block`.
void apply_cols(CMatrix& target, int n, int m, const Eigen::Matrix2cd& block);

CMatrix compose(const CircuitSpec& spec);

/// Rectangular-mesh factorization: exactly dim(dim-1)/2 elements in nulling
/// order plus the output phase layer, canonical angle ranges.
CircuitSpec clements_decompose(const CMatrix& u);

double simplicity_cost(const CircuitSpec& spec, const CostParams& params = {});

int count_nontrivial(const CircuitSpec& spec, double tolerance = kTrivialAngle);

CMatrix chart_point(const CayleyChart& chart);

/// 1 - Re Tr[U V^dagger] / d.
double rho_distance(const CMatrix& u, const CMatrix& v);

/// Hermitian matrix from d^2 reals: d diagonal entries, then (re, im) of each
/// strictly upper entry in row-major order.
CMatrix hermitian_from_params(std::span<const double> params, int dim);
RVector params_from_hermitian(const CMatrix& h);

/// Builds canonical circuits from operations listed in the order light meets
/// them. Phases met along the way are pushed through later elements to the
/// output phase layer, and every element is brought to theta in [0, pi/2],
/// phi in [-pi, pi].
class CircuitBuilder {
 public:
  explicit CircuitBuilder(int dim);

  int dim() const { return dim_; }

  CircuitBuilder& splitter(int n, int m, double theta, double phi = 0.0);
  CircuitBuilder& two_mode(int n, int m, const Eigen::Matrix2cd& block);
  CircuitBuilder& phase(int mode, Complex factor);
  CircuitBuilder& phase_angle(int mode, double angle);
  /// Embeds `sub` with its mode k placed on line lines[k].
  CircuitBuilder& append(const CircuitSpec& sub, std::span<const int> lines);
  /// Decomposes `block` and embeds it on `lines`.
  CircuitBuilder& unitary(const CMatrix& block, std::span<const int> lines);

  CircuitSpec build() const;

 private:
  void check_pair(int n, int m) const;

  int dim_;
  std::vector<TwoModeElement> applied_;  // in light order
  std::vector<Complex> pending_;
};

}  // namespace heraldic
