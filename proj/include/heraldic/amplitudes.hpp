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

#include <cstddef>
#include <span>
#include <vector>

#include "heraldic/fock.hpp"

namespace heraldic {

/// Precomputed amplitude layout for a ProblemSpec: the amplitudes
/// <m, a| U |input> for a selection of ancilla patterns a and every state m of
/// the target sector, together with their derivatives dpsi/dU_jk.
///
/// Derivatives use the minor expansion of the permanent: the entry U_jk sits
/// out_j * in_k times in the repeated submatrix and every occurrence has the
/// same minor.
class HeraldAmplitudes {
 public:
  struct Derivative {
    int row;
    int col;
    Complex value;
  };

  struct Table {
    /// amplitudes[slot * basis_size + m], slot indexing patterns().
    std::vector<Complex> amplitudes;
    /// derivatives of amplitude i live in [offsets[i], offsets[i+1]).
    std::vector<std::size_t> offsets;
    std::vector<Derivative> derivatives;
  };

  /// `patterns` selects indices into spec.ancilla_patterns; empty means all.
  explicit HeraldAmplitudes(const ProblemSpec& spec, std::vector<int> patterns = {});

  const FockBasis& basis() const { return basis_; }
  const std::vector<int>& patterns() const { return patterns_; }
  int dim() const { return dim_; }
  std::size_t amplitude_count() const { return layouts_.size(); }

  Table evaluate(const CMatrix& u, bool with_derivatives) const;

  /// Given weights w_i = df/d conj(psi_i) of a real function f, returns G
  /// with df = 2 Re sum_jk G_jk dU_jk.
  CMatrix pullback(const Table& table, std::span<const Complex> weights) const;

 private:
  struct Layout {
    std::vector<int> rows;  // output mode of each submatrix row (repeated)
    std::vector<int> distinct_rows;
    std::vector<int> row_multiplicity;
    double norm = 1.0;  // 1 / sqrt(prod in! prod out!)
  };

  int dim_ = 0;
  int photons_ = 0;
  FockBasis basis_;
  std::vector<int> patterns_;
  std::vector<int> cols_;  // input mode of each submatrix column (repeated)
  std::vector<int> distinct_cols_;
  std::vector<int> col_multiplicity_;
  std::vector<Layout> layouts_;
};

}  // namespace heraldic
