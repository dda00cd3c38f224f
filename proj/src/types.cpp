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

#include "heraldic/types.hpp"

#include <sstream>

namespace heraldic {

double unitarity_defect(const CMatrix& u) {
  const auto n = u.rows();
  return (u.adjoint() * u - CMatrix::Identity(n, n)).norm();
}

void require_unitary(const CMatrix& u, double tolerance, const std::string& what) {
  if (u.rows() != u.cols()) {
    std::ostringstream msg;
    msg << what << ": matrix is " << u.rows() << "x" << u.cols() << ", expected square";
    throw DimensionError(msg.str());
  }
  const double defect = unitarity_defect(u);
  if (!(defect <= tolerance)) {
    std::ostringstream msg;
    msg << what << ": not unitary (||U^H U - I||_F = " << defect << " > " << tolerance << ")";
    throw NotUnitaryError(msg.str());
  }
}

}  // namespace heraldic
