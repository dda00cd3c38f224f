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

#include "heraldic/refine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "heraldic/amplitudes.hpp"
#include "heraldic/bfgs.hpp"

namespace heraldic {

void Stage2Config::validate() const {
  if (cost.epsilon < 0.0 || cost.delta < 0.0) throw ValidationError("refine: cost parameters must be >= 0");
  for (const auto& [a, p] : probability_floor) {
    if (!(p > 0.0) || p > 1.0) {
      throw ValidationError("refine: probability floor for pattern " + std::to_string(a) + " must lie in (0, 1]");
    }
  }
  if (!(constraint_tolerance > 0.0)) throw ValidationError("refine: constraint_tolerance must be > 0");
  if (penalty_schedule.empty()) throw ValidationError("refine: penalty_schedule is empty");
  for (std::size_t k = 0; k < penalty_schedule.size(); ++k) {
    if (!(penalty_schedule[k] > 0.0) || (k > 0 && penalty_schedule[k] <= penalty_schedule[k - 1])) {
      throw ValidationError("refine: penalty_schedule must be positive and increasing");
    }
  }
  if (max_outer_iterations < 1 || max_inner_iterations < 1) {
    throw ValidationError("refine: iteration budgets must be >= 1");
  }
  if (snap_tolerance < 0.0) throw ValidationError("refine: snap_tolerance must be >= 0");
}

RVector circuit_gradient(const CircuitSpec& spec, const CMatrix& euclidean) {
  const int d = spec.dim;
  const auto q = static_cast<Eigen::Index>(spec.elements.size());
  RVector grad = RVector::Zero(2 * q + d);
  // V = T_1 ... T_Q, so U = D V.
  CMatrix v = CMatrix::Identity(d, d);
  for (auto it = spec.elements.rbegin(); it != spec.elements.rend(); ++it) apply_rows(v, it->n, it->m, element_block(*it));
  const CMatrix w = euclidean.transpose();
  const CMatrix vw = v * w;
  const Complex i(0.0, 1.0);
  for (int k = 0; k < d; ++k) grad(2 * q + k) = 2.0 * (i * spec.phases[static_cast<std::size_t>(k)] * vw(k, k)).real();
  if (q == 0) return grad;

  // Z_1 = T_1^dagger V W D, Z_{i+1} = T_{i+1}^dagger Z_i T_i.
  CMatrix z = vw;
  for (int k = 0; k < d; ++k) z.col(k) *= spec.phases[static_cast<std::size_t>(k)];
  apply_rows(z, spec.elements[0].n, spec.elements[0].m, element_block(spec.elements[0]).adjoint());
  for (Eigen::Index e = 0; e < q; ++e) {
    const auto& el = spec.elements[static_cast<std::size_t>(e)];
    const double c = std::cos(el.theta), s = std::sin(el.theta);
    const Complex ph = std::polar(1.0, el.phi);
    Eigen::Matrix2cd dtheta, dphi;
    dtheta << -ph * s, -c, ph * c, -s;
    dphi << i * ph * c, 0.0, i * ph * s, 0.0;
    const int modes[2] = {el.n, el.m};
    Complex gt = 0.0, gp = 0.0;
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const Complex zba = z(modes[b], modes[a]);
        gt += zba * dtheta(a, b);
        gp += zba * dphi(a, b);
      }
    }
    grad(e) = 2.0 * gt.real();
    grad(q + e) = 2.0 * gp.real();
    if (e + 1 < q) {
      apply_cols(z, el.n, el.m, element_block(el));
      const auto& nx = spec.elements[static_cast<std::size_t>(e + 1)];
      apply_rows(z, nx.n, nx.m, element_block(nx).adjoint());
    }
  }
  return grad;
}

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

class Refiner {
 public:
  Refiner(const Candidate& cand, const ProblemSpec& problem, const Stage2Config& cfg, const CircuitSpec& layout)
      : cfg_(cfg), layout_(layout), engine_(problem, cand.ancilla_set) {
    const auto& basis = engine_.basis();
    for (int a : cand.ancilla_set) {
      const auto mt = cand.matched_targets.find(a);
      if (mt == cand.matched_targets.end() || mt->second < 0 ||
          mt->second >= static_cast<int>(problem.targets.size())) {
        throw ValidationError("refine: candidate has no valid matched target for pattern " + std::to_string(a));
      }
      const auto& t = problem.targets[static_cast<std::size_t>(mt->second)];
      CVector tv = CVector::Zero(static_cast<Eigen::Index>(basis.size()));
      if (t.photons() == basis.photons()) {
        for (const auto& [state, amp] : t.terms()) tv(basis.index_of(state)) = amp;
      }
      targets_.push_back(tv);
      target_index_.push_back(mt->second);
      const auto fl = cfg.probability_floor.find(a);
      floors_.push_back(fl != cfg.probability_floor.end() ? fl->second : cand.probabilities.at(a));
    }
    // Leakage 1 - M <= tol/2 becomes sqrt(1 - M + eta^2) - eta <= leak_bound_.
    eta_ = 1e-6;
    leak_bound_ = std::sqrt(cfg.constraint_tolerance / 2 + eta_ * eta_) - eta_;
    lambda_.assign(2 * floors_.size(), 0.0);
  }

  std::size_t q() const { return layout_.elements.size(); }
  std::size_t size() const { return 2 * q() + static_cast<std::size_t>(layout_.dim); }

  RVector params_of(const CircuitSpec& s) const {
    RVector x(static_cast<Eigen::Index>(size()));
    const auto nq = static_cast<Eigen::Index>(q());
    for (Eigen::Index e = 0; e < nq; ++e) {
      x(e) = s.elements[static_cast<std::size_t>(e)].theta;
      x(nq + e) = s.elements[static_cast<std::size_t>(e)].phi;
    }
    for (int k = 0; k < s.dim; ++k) x(2 * nq + k) = std::arg(s.phases[static_cast<std::size_t>(k)]);
    return x;
  }

  CircuitSpec spec_of(const RVector& x) const {
    CircuitSpec s = layout_;
    const auto nq = static_cast<Eigen::Index>(q());
    for (Eigen::Index e = 0; e < nq; ++e) {
      s.elements[static_cast<std::size_t>(e)].theta = x(e);
      s.elements[static_cast<std::size_t>(e)].phi = x(nq + e);
    }
    for (int k = 0; k < s.dim; ++k) s.phases[static_cast<std::size_t>(k)] = std::polar(1.0, x(2 * nq + k));
    return s;
  }

  double cost(const RVector& x, RVector* grad) const {
    const auto nq = static_cast<Eigen::Index>(q());
    double f = 0.0;
    for (Eigen::Index e = 0; e < nq; ++e) {
      f += (1.0 - std::cos(4.0 * x(e))) + cfg_.cost.epsilon * (1.0 - std::cos(2.0 * x(nq + e)));
      if (grad) {
        (*grad)(e) += 4.0 * std::sin(4.0 * x(e));
        (*grad)(nq + e) += 2.0 * cfg_.cost.epsilon * std::sin(2.0 * x(nq + e));
      }
    }
    for (Eigen::Index k = 0; k < layout_.dim; ++k) {
      const double a = x(2 * nq + k);
      f += cfg_.cost.delta * 2.0 * (1.0 - std::cos(a));
      if (grad) (*grad)(2 * nq + k) += 2.0 * cfg_.cost.delta * std::sin(a);
    }
    return f;
  }

  struct Measured {
    std::vector<double> prob;
    std::vector<double> overlap;
    std::vector<double> c;  // scaled constraint values, >= 0 when satisfied with margin
  };

  /// Constraint values; with `weights` non-null also d c_i / d conj(psi) per slot.
  Measured measure(const HeraldAmplitudes::Table& table, std::vector<std::vector<CVector>>* weights) const {
    const auto nb = static_cast<Eigen::Index>(engine_.basis().size());
    Measured m;
    const double tol = cfg_.constraint_tolerance;
    for (std::size_t a = 0; a < floors_.size(); ++a) {
      Eigen::Map<const CVector> psi(table.amplitudes.data() + a * static_cast<std::size_t>(nb), nb);
      const double prob = psi.squaredNorm();
      const Complex o = targets_[a].dot(psi);
      const double o2 = std::norm(o);
      const double overlap = prob > kZeroProbability ? std::min(o2 / prob, 1.0) : 0.0;
      const double root = std::sqrt(1.0 - overlap + eta_ * eta_);
      m.prob.push_back(prob);
      m.overlap.push_back(prob > kZeroProbability ? o2 / prob : 0.0);
      m.c.push_back((prob - floors_[a] + tol / 2) / floors_[a]);
      m.c.push_back(leak_bound_ - (root - eta_));
      if (weights) {
        CVector gp = psi / floors_[a];
        CVector gm = CVector::Zero(nb);
        if (prob > kZeroProbability) {
          gm = ((o / prob) * targets_[a] - (o2 / (prob * prob)) * psi) / (2.0 * root);
        }
        weights->push_back({gp, gm});
      }
    }
    return m;
  }

  Measured measure_spec(const CircuitSpec& s) const {
    const auto table = engine_.evaluate(compose(s), false);
    return measure(table, nullptr);
  }

  int violated(const Measured& m) const {
    int n = 0;
    for (std::size_t a = 0; a < floors_.size(); ++a) {
      if (m.prob[a] < floors_[a] - cfg_.constraint_tolerance) ++n;
      if (m.overlap[a] < 1.0 - cfg_.constraint_tolerance) ++n;
    }
    return n;
  }

  std::vector<ConstraintResidual> residuals(const Measured& m, const std::vector<int>& patterns) const {
    std::vector<ConstraintResidual> out;
    for (std::size_t a = 0; a < floors_.size(); ++a) {
      const double tol = cfg_.constraint_tolerance;
      ConstraintResidual p{"probability", patterns[a], -1, m.prob[a], floors_[a],
                           std::max(0.0, floors_[a] - m.prob[a]), m.prob[a] >= floors_[a] - tol};
      ConstraintResidual o{"overlap", patterns[a], target_index_[a], m.overlap[a], 1.0,
                           std::max(0.0, 1.0 - m.overlap[a]), m.overlap[a] >= 1.0 - tol};
      out.push_back(p);
      out.push_back(o);
    }
    return out;
  }

  /// Augmented Lagrangian value and gradient over the full parameter vector.
  double lagrangian(const RVector& x, double mu, RVector* grad) const {
    const CircuitSpec s = spec_of(x);
    const auto table = engine_.evaluate(compose(s), grad != nullptr);
    std::vector<std::vector<CVector>> w;
    const Measured m = measure(table, grad ? &w : nullptr);
    if (grad) grad->setZero(static_cast<Eigen::Index>(size()));
    double f = cost(x, grad);
    const auto nb = static_cast<Eigen::Index>(engine_.basis().size());
    std::vector<Complex> weights(grad ? table.amplitudes.size() : 0);
    for (std::size_t i = 0; i < m.c.size(); ++i) {
      const double shifted = std::max(0.0, lambda_[i] - mu * m.c[i]);
      f += (shifted * shifted - lambda_[i] * lambda_[i]) / (2.0 * mu);
      if (grad && shifted > 0.0) {
        const std::size_t a = i / 2;
        const CVector& g = w[a][i % 2];
        for (Eigen::Index k = 0; k < nb; ++k) weights[a * static_cast<std::size_t>(nb) + static_cast<std::size_t>(k)] -= shifted * g(k);
      }
    }
    if (grad) *grad += circuit_gradient(s, engine_.pullback(table, weights));
    return f;
  }

  void update_multipliers(const Measured& m, double mu) {
    for (std::size_t i = 0; i < m.c.size(); ++i) lambda_[i] = std::max(0.0, lambda_[i] - mu * m.c[i]);
  }

  static double max_violation(const Measured& m) {
    double v = 0.0;
    for (double c : m.c) v = std::max(v, -c);
    return v;
  }

  /// Inner solve over the free coordinates.
  RVector solve(const RVector& x, const std::vector<Eigen::Index>& free, double mu) const {
    Objective f = [&](const RVector& y, RVector& g) {
      RVector full = x;
      for (std::size_t k = 0; k < free.size(); ++k) full(free[k]) = y(static_cast<Eigen::Index>(k));
      RVector gf;
      const double v = lagrangian(full, mu, &gf);
      for (std::size_t k = 0; k < free.size(); ++k) g(static_cast<Eigen::Index>(k)) = gf(free[k]);
      return v;
    };
    RVector y(static_cast<Eigen::Index>(free.size()));
    for (std::size_t k = 0; k < free.size(); ++k) y(static_cast<Eigen::Index>(k)) = x(free[k]);
    BfgsOptions opts;
    opts.max_iterations = cfg_.max_inner_iterations;
    opts.gradient_tolerance = 1e-10;
    const auto r = bfgs_minimize(f, y, opts);
    RVector out = x;
    for (std::size_t k = 0; k < free.size(); ++k) out(free[k]) = r.x(static_cast<Eigen::Index>(k));
    return out;
  }

  const std::vector<int>& target_index() const { return target_index_; }

 private:
  const Stage2Config& cfg_;
  CircuitSpec layout_;
  HeraldAmplitudes engine_;
  std::vector<CVector> targets_;
  std::vector<int> target_index_;
  std::vector<double> floors_;
  std::vector<double> lambda_;
  double eta_ = 0.0;
  double leak_bound_ = 0.0;
};

/// Same unitary with every element in canonical range and phases pushed out.
CircuitSpec canonicalize(const CircuitSpec& s) {
  CircuitBuilder b(s.dim);
  for (auto it = s.elements.rbegin(); it != s.elements.rend(); ++it) b.two_mode(it->n, it->m, element_block(*it));
  for (int k = 0; k < s.dim; ++k) b.phase(k, s.phases[static_cast<std::size_t>(k)]);
  return b.build();
}

}  // namespace

Stage2Result stage2_refine(const Candidate& candidate, const ProblemSpec& problem, const Stage2Config& config,
                           const std::optional<CircuitSpec>& initial) {
  config.validate();
  problem.validate();
  if (candidate.ancilla_set.empty()) throw ValidationError("refine: candidate has an empty admissible set");
  for (const auto& [a, p] : config.probability_floor) {
    if (std::find(candidate.ancilla_set.begin(), candidate.ancilla_set.end(), a) == candidate.ancilla_set.end()) {
      throw ValidationError("refine: probability floor given for pattern " + std::to_string(a) +
                            " outside the candidate's admissible set");
    }
  }
  CircuitSpec start;
  if (initial) {
    start = *initial;
    start.validate();
    if (start.dim != problem.modes()) throw DimensionError("refine: initial circuit dimension differs from the problem");
  } else {
    if (candidate.unitary.rows() != problem.modes()) throw DimensionError("refine: candidate dimension differs from the problem");
    start = clements_decompose(candidate.unitary);
  }

  Refiner rf(candidate, problem, config, start);
  Stage2Result res;
  res.initial_cost = simplicity_cost(start, config.cost);
  res.initial_nontrivial = count_nontrivial(start);

  const auto initial_measure = rf.measure_spec(start);
  const int initial_violations = rf.violated(initial_measure);
  auto finish = [&](const CircuitSpec& s, const std::string& status) {
    const auto m = rf.measure_spec(s);
    res.circuit = s;
    res.cost = simplicity_cost(s, config.cost);
    res.nontrivial = count_nontrivial(s);
    res.residuals = rf.residuals(m, candidate.ancilla_set);
    res.feasible = rf.violated(m) == 0;
    res.status = res.feasible ? status : "infeasible";
    return res;
  };
  res.violation_history.push_back(initial_violations);
  if (initial_violations == 0 && res.initial_cost <= 1e-14) return finish(start, "unchanged");

  std::vector<Eigen::Index> free(rf.size());
  for (std::size_t k = 0; k < free.size(); ++k) free[k] = static_cast<Eigen::Index>(k);

  RVector x = rf.params_of(start);
  std::size_t mu_index = 0;
  int current_violations = initial_violations;
  double prev_violation = Refiner::max_violation(initial_measure);
  double prev_cost = res.initial_cost;
  int calm = 0;
  int rejected_at_max = 0;

  auto outer_loop = [&](int budget) {
    for (int outer = 0; outer < budget; ++outer) {
      const double mu = config.penalty_schedule[mu_index];
      const RVector trial = rf.solve(x, free, mu);
      const auto m = rf.measure_spec(rf.spec_of(trial));
      const int v = rf.violated(m);
      ++res.outer_iterations;
      rf.update_multipliers(m, mu);
      if (v > current_violations) {
        // Repeated rejection at the largest penalty: the floors are not reachable from here.
        if (mu_index + 1 == config.penalty_schedule.size() && ++rejected_at_max >= 5) break;
        mu_index = std::min(mu_index + 1, config.penalty_schedule.size() - 1);
        continue;
      }
      rejected_at_max = 0;
      x = trial;
      current_violations = v;
      res.violation_history.push_back(v);
      const double viol = Refiner::max_violation(m);
      if (viol > 0.25 * prev_violation) mu_index = std::min(mu_index + 1, config.penalty_schedule.size() - 1);
      prev_violation = viol;
      const double c = rf.cost(x, nullptr);
      calm = (v == 0 && std::abs(c - prev_cost) <= 1e-10 * (1.0 + c)) ? calm + 1 : 0;
      prev_cost = c;
      if (calm >= 2) break;
    }
  };
  outer_loop(config.max_outer_iterations);

  // Snap near-trivial angles, freeze them and polish the rest.
  if (current_violations == 0 && config.snap_tolerance > 0.0) {
    for (int round = 0; round < 5; ++round) {
      RVector snapped = x;
      std::vector<Eigen::Index> still_free;
      bool changed = false;
      for (Eigen::Index k : free) {
        if (k < static_cast<Eigen::Index>(rf.q())) {
          const double nearest = kHalfPi * std::round(x(k) / kHalfPi);
          if (std::abs(x(k) - nearest) < config.snap_tolerance) {
            snapped(k) = nearest;
            changed = changed || snapped(k) != x(k);
            continue;
          }
        }
        still_free.push_back(k);
      }
      if (still_free.size() == free.size()) break;
      const RVector before = x;
      const auto saved_free = free;
      const int saved_violations = current_violations;
      x = snapped;
      free = still_free;
      current_violations = rf.violated(rf.measure_spec(rf.spec_of(x)));
      calm = 0;
      rejected_at_max = 0;
      outer_loop(std::max(3, config.max_outer_iterations / 3));
      if (current_violations != 0) {
        x = before;
        free = saved_free;
        current_violations = saved_violations;
        break;
      }
      if (!changed) break;
    }
  }

  const CircuitSpec refined = canonicalize(rf.spec_of(x));
  finish(refined, "refined");
  if (res.nontrivial > res.initial_nontrivial || (!res.feasible && initial_violations == 0)) {
    const auto history = res.violation_history;
    const int outers = res.outer_iterations;
    finish(start, "kept input");
    res.violation_history = history;
    res.outer_iterations = outers;
  }
  return res;
}

}  // namespace heraldic
