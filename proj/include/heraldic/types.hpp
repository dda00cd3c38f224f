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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace heraldic {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes or mode counts that do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input that is not a shape problem (bad claims, bad configs, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A matrix that was required to be unitary is not.
class NotUnitaryError : public Error {
 public:
  using Error::Error;
};

/// Frobenius norm of U^dagger U - I.
double unitarity_defect(const CMatrix& u);

/// Throws NotUnitaryError (or DimensionError for non-square input) when
/// unitarity_defect(u) exceeds `tolerance`. `what` names the offending object.
void require_unitary(const CMatrix& u, double tolerance, const std::string& what);

}  // namespace heraldic
