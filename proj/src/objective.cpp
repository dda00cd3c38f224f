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

#include "heraldic/objective.hpp"

#include <cmath>

namespace heraldic {

Stage1Objective::Stage1Objective(const ProblemSpec& spec, int p, std::vector<int> patterns)
    : p_(p), engine_(spec, std::move(patterns)) {
  if (p < 1) throw ValidationError("stage-1 objective: exponent p must be >= 1");
  const auto& basis = engine_.basis();
  for (const auto& t : spec.targets) {
    CVector v = CVector::Zero(static_cast<Eigen::Index>(basis.size()));
    if (t.modes() == basis.modes() && t.photons() == basis.photons() &&
        spec.target_photons() == basis.photons()) {
      for (const auto& [state, amp] : t.terms()) v(basis.index_of(state)) = amp;
    }
    targets_.push_back(std::move(v));
  }
}

double Stage1Objective::value(const CMatrix& u, CMatrix* euclidean) const {
  const auto table = engine_.evaluate(u, euclidean != nullptr);
  const auto nb = static_cast<Eigen::Index>(engine_.basis().size());
  const std::size_t slots = engine_.patterns().size();
  std::vector<Complex> weights(euclidean ? table.amplitudes.size() : 0);
  const double p = p_;
  double f = 0.0;
  for (std::size_t a = 0; a < slots; ++a) {
    Eigen::Map<const CVector> psi(table.amplitudes.data() + a * static_cast<std::size_t>(nb), nb);
    const double prob = psi.squaredNorm();
    if (prob < kZeroProbability) continue;
    CVector w = CVector::Zero(nb);
    for (const auto& t : targets_) {
      const Complex o = t.dot(psi);  // conjugates t
      const double o2 = std::norm(o);
      if (o2 == 0.0) continue;
      // P^{1-p} |o|^{2p} written as P M^p, which stays finite for large p.
      const double term = prob * std::pow(o2 / prob, p);
      f += term;
      if (euclidean) {
        // d/d conj(psi) of P^{1-p} |o|^{2p}.
        w += ((1.0 - p) * term / prob) * psi + (p * term / o2 * o) * t;
      }
    }
    if (euclidean) {
      for (Eigen::Index m = 0; m < nb; ++m) weights[a * static_cast<std::size_t>(nb) + static_cast<std::size_t>(m)] = w(m);
    }
  }
  if (euclidean) *euclidean = engine_.pullback(table, weights);
  return f;
}

RVector chart_gradient(const CMatrix& base, const CMatrix& h, const CMatrix& euclidean) {
  const Eigen::Index d = h.rows();
  const Complex i(0.0, 1.0);
  const CMatrix k = (i * CMatrix::Identity(d, d) + h).inverse();
  const CMatrix x = (-2.0 * i) * (k * euclidean.transpose() * base * k);
  RVector g(d * d);
  Eigen::Index idx = 0;
  for (Eigen::Index j = 0; j < d; ++j) g(idx++) = 2.0 * x(j, j).real();
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index l = j + 1; l < d; ++l) {
      g(idx++) = 2.0 * (x(l, j) + x(j, l)).real();
      g(idx++) = 2.0 * (x(j, l).imag() - x(l, j).imag());
    }
  }
  return g;
}

double Stage1Objective::at_chart(const CMatrix& base, const RVector& params, RVector* grad) const {
  const int d = dim();
  const CMatrix h = hermitian_from_params({params.data(), static_cast<std::size_t>(params.size())}, d);
  const CMatrix u = chart_point({base, h});
  if (!grad) return value(u);
  CMatrix g;
  const double f = value(u, &g);
  *grad = chart_gradient(base, h, g);
  return f;
}

std::pair<double, RVector> stage1_objective(const CMatrix& h, const CMatrix& base,
                                            const ProblemSpec& spec, int p) {
  if (h.rows() != spec.modes() || h.cols() != spec.modes() || base.rows() != spec.modes() ||
      base.cols() != spec.modes()) {
    throw DimensionError("stage1_objective: chart dimension differs from the problem's mode count");
  }
  if ((h - h.adjoint()).norm() > 1e-12 * std::max(1.0, h.norm())) {
    throw ValidationError("stage1_objective: coordinate is not Hermitian");
  }
  Stage1Objective obj(spec, p);
  RVector grad;
  const double f = obj.at_chart(base, params_from_hermitian(h), &grad);
  return {f, grad};
}

}  // namespace heraldic
