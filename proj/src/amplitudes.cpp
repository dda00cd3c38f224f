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

#include "heraldic/amplitudes.hpp"

#include <cmath>

namespace heraldic {

namespace {

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

void split_modes(const FockState& s, std::vector<int>& repeated, std::vector<int>& distinct,
                 std::vector<int>& multiplicity) {
  for (int mode = 0; mode < s.modes(); ++mode) {
    if (s[mode] == 0) continue;
    distinct.push_back(mode);
    multiplicity.push_back(s[mode]);
    for (int k = 0; k < s[mode]; ++k) repeated.push_back(mode);
  }
}

}  // namespace

HeraldAmplitudes::HeraldAmplitudes(const ProblemSpec& spec, std::vector<int> patterns)
    : dim_(spec.modes()),
      photons_(spec.input.photons()),
      basis_(spec.n_target_modes, std::max(spec.target_photons(), 0)),
      patterns_(std::move(patterns)) {
  spec.validate();
  if (patterns_.empty()) {
    for (std::size_t a = 0; a < spec.ancilla_patterns.size(); ++a)
      patterns_.push_back(static_cast<int>(a));
  }
  split_modes(spec.input, cols_, distinct_cols_, col_multiplicity_);
  double in_norm = 1.0;
  for (int k : spec.input.occupations()) in_norm *= factorial(k);

  for (int a : patterns_) {
    if (a < 0 || a >= static_cast<int>(spec.ancilla_patterns.size())) {
      throw DimensionError("HeraldAmplitudes: pattern index out of range");
    }
    const auto& pattern = spec.ancilla_patterns[static_cast<std::size_t>(a)];
    for (const auto& m : basis_.states()) {
      const FockState out = m.concat(pattern);
      Layout layout;
      split_modes(out, layout.rows, layout.distinct_rows, layout.row_multiplicity);
      double out_norm = 1.0;
      for (int k : out.occupations()) out_norm *= factorial(k);
      layout.norm = 1.0 / std::sqrt(in_norm * out_norm);
      if (static_cast<int>(layout.rows.size()) != photons_) layout.rows.clear();
      layouts_.push_back(std::move(layout));
    }
  }
}

HeraldAmplitudes::Table HeraldAmplitudes::evaluate(const CMatrix& u, bool with_derivatives) const {
  if (u.rows() != dim_ || u.cols() != dim_) {
    throw DimensionError("HeraldAmplitudes: unitary has wrong dimension");
  }
  Table table;
  table.amplitudes.resize(layouts_.size());
  table.offsets.assign(layouts_.size() + 1, 0);
  const int n = photons_;
  std::vector<Complex> sub(static_cast<std::size_t>(n * n));
  std::vector<Complex> minor(static_cast<std::size_t>(n > 0 ? (n - 1) * (n - 1) : 0));

  for (std::size_t i = 0; i < layouts_.size(); ++i) {
    const Layout& layout = layouts_[i];
    table.offsets[i] = table.derivatives.size();
    // Sector mismatch (target photons differ): amplitude is identically zero.
    if (layout.rows.empty() && n > 0) continue;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        sub[static_cast<std::size_t>(r * n + c)] =
            u(layout.rows[static_cast<std::size_t>(r)], cols_[static_cast<std::size_t>(c)]);
    table.amplitudes[i] = permanent(sub, n) * layout.norm;
    if (!with_derivatives || n == 0) continue;

    // First submatrix row/column of each distinct output/input mode.
    int row_start = 0;
    for (std::size_t jr = 0; jr < layout.distinct_rows.size(); ++jr) {
      int col_start = 0;
      for (std::size_t kc = 0; kc < distinct_cols_.size(); ++kc) {
        int w = 0;
        for (int r = 0; r < n; ++r) {
          if (r == row_start) continue;
          for (int c = 0; c < n; ++c) {
            if (c == col_start) continue;
            minor[static_cast<std::size_t>(w++)] = sub[static_cast<std::size_t>(r * n + c)];
          }
        }
        const double mult = static_cast<double>(layout.row_multiplicity[jr] * col_multiplicity_[kc]);
        table.derivatives.push_back({layout.distinct_rows[jr], distinct_cols_[kc],
                                     permanent(minor, n - 1) * (mult * layout.norm)});
        col_start += col_multiplicity_[kc];
      }
      row_start += layout.row_multiplicity[jr];
    }
  }
  table.offsets[layouts_.size()] = table.derivatives.size();
  return table;
}

CMatrix HeraldAmplitudes::pullback(const Table& table, std::span<const Complex> weights) const {
  if (weights.size() != layouts_.size()) {
    throw DimensionError("HeraldAmplitudes::pullback: weight count mismatch");
  }
  CMatrix g = CMatrix::Zero(dim_, dim_);
  for (std::size_t i = 0; i < layouts_.size(); ++i) {
    const Complex w = std::conj(weights[i]);
    if (w == Complex{}) continue;
    for (std::size_t k = table.offsets[i]; k < table.offsets[i + 1]; ++k) {
      const auto& d = table.derivatives[k];
      g(d.row, d.col) += w * d.value;
    }
  }
  return g;
}

}  // namespace heraldic
