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


#include <cmath>

#include "doctest.h"
#include "heraldic/random.hpp"
#include "heraldic/refine.hpp"
#include "heraldic/schemes.hpp"

using namespace heraldic;

namespace {

ProblemSpec bell_11() {
  ProblemSpec p = bell_problem(false);
  p.ancilla_patterns = {FockState{1, 1}};
  return p;
}

Candidate bell_candidate(const ProblemSpec& p) {
  auto c = classify_point(compose(bell_scheme(1, omega_block())), p, 1e-6, 0.5);
  REQUIRE(c.has_value());
  return *c;
}

}  // namespace

TEST_CASE("circuit_gradient matches central differences") {
  const CircuitSpec s = clements_decompose(haar_random_unitary(5, 3));
  const CMatrix g = haar_random_unitary(5, 9);
  auto f = [&](const CircuitSpec& c) { return 2.0 * g.cwiseProduct(compose(c)).sum().real(); };
  const RVector grad = circuit_gradient(s, g);
  const auto q = static_cast<Eigen::Index>(s.elements.size());
  REQUIRE(grad.size() == 2 * q + 5);
  const double h = 1e-6;
  for (Eigen::Index k = 0; k < grad.size(); ++k) {
    CircuitSpec a = s, b = s;
    if (k < q) {
      a.elements[k].theta += h;
      b.elements[k].theta -= h;
    } else if (k < 2 * q) {
      a.elements[k - q].phi += h;
      b.elements[k - q].phi -= h;
    } else {
      a.phases[k - 2 * q] *= std::polar(1.0, h);
      b.phases[k - 2 * q] *= std::polar(1.0, -h);
    }
    CHECK(grad(k) == doctest::Approx((f(a) - f(b)) / (2 * h)).epsilon(1e-6));
  }
}

TEST_CASE("stage2 on the Bell scheme stays feasible and does not add elements") {
  const ProblemSpec p = bell_11();
  const Candidate c = bell_candidate(p);
  Stage2Config cfg;
  cfg.probability_floor[0] = 2.0 / 27;
  const auto r = stage2_refine(c, p, cfg);
  CHECK(r.feasible);
  CHECK(r.nontrivial <= r.initial_nontrivial);
  CHECK(r.cost <= r.initial_cost + 1e-9);
  for (const auto& res : r.residuals) CHECK(res.satisfied);
  for (std::size_t k = 1; k < r.violation_history.size(); ++k) {
    CHECK(r.violation_history[k] <= r.violation_history[k - 1]);
  }
  // Residuals are recomputed from the returned circuit.
  const auto again = classify_point(compose(r.circuit), p, 1e-6, 0.5);
  REQUIRE(again.has_value());
  CHECK(again->probabilities.at(0) >= 2.0 / 27 - 1e-8);
  CHECK(again->matched_targets.at(0) == c.matched_targets.at(0));
}

TEST_CASE("stage2 reports an unreachable floor instead of failing") {
  const ProblemSpec p = bell_11();
  const Candidate c = bell_candidate(p);
  Stage2Config cfg;
  cfg.probability_floor[0] = 1.0;
  cfg.max_outer_iterations = 4;
  const auto r = stage2_refine(c, p, cfg);
  CHECK_FALSE(r.feasible);
  CHECK(r.status == "infeasible");
  CHECK(r.nontrivial <= r.initial_nontrivial);
  bool violated = false;
  for (const auto& res : r.residuals) violated = violated || (res.kind == "probability" && !res.satisfied);
  CHECK(violated);
}

TEST_CASE("stage2 leaves a zero-cost feasible circuit alone") {
  ProblemSpec p;
  p.n_target_modes = 1;
  p.n_ancilla_modes = 1;
  p.input = FockState{1, 1};
  p.ancilla_patterns = {FockState{1}};
  p.targets = {TargetState({{FockState{1}, 1.0}}, "one")};
  CircuitSpec id;
  id.dim = 2;
  id.phases = {1.0, 1.0};
  auto c = classify_point(compose(id), p, 1e-6, 0.5);
  REQUIRE(c.has_value());
  const auto r = stage2_refine(*c, p, Stage2Config{}, id);
  CHECK(r.status == "unchanged");
  CHECK(r.feasible);
  CHECK(r.circuit.elements.empty());
  CHECK(r.cost == 0.0);
}

TEST_CASE("stage2 input validation") {
  const ProblemSpec p = bell_11();
  const Candidate c = bell_candidate(p);
  Stage2Config cfg;
  cfg.probability_floor[2] = 0.1;
  CHECK_THROWS_AS(stage2_refine(c, p, cfg), ValidationError);
  cfg = Stage2Config{};
  cfg.probability_floor[0] = 0.0;
  CHECK_THROWS_AS(stage2_refine(c, p, cfg), ValidationError);
  cfg = Stage2Config{};
  cfg.penalty_schedule = {10, 5};
  CHECK_THROWS_AS(stage2_refine(c, p, cfg), ValidationError);
  Candidate empty = c;
  empty.ancilla_set.clear();
  CHECK_THROWS_AS(stage2_refine(empty, p, Stage2Config{}), ValidationError);
  CircuitSpec wrong = clements_decompose(haar_random_unitary(4, 1));
  CHECK_THROWS_AS(stage2_refine(c, p, Stage2Config{}, wrong), DimensionError);
}
