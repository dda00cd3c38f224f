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

#include "heraldic/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "heraldic/bfgs.hpp"
#include "heraldic/circuit.hpp"
#include "heraldic/objective.hpp"
#include "heraldic/random.hpp"

namespace heraldic {

void Stage1Config::validate() const {
  spec.validate_photon_balance();
  if (p < 1) throw ValidationError("search: p must be >= 1");
  for (int q : sharpening) {
    if (q < 1) throw ValidationError("search: sharpening exponents must be >= 1");
  }
  if (restarts < 1) throw ValidationError("search: restarts must be >= 1");
  if (!(gradient_tolerance > 0.0)) throw ValidationError("search: gradient_tolerance must be > 0");
  if (!(filter_tolerance > 0.0) || filter_tolerance >= 0.5) {
    throw ValidationError("search: filter_tolerance must lie in (0, 0.5)");
  }
  if (!(improper_overlap > filter_tolerance) || improper_overlap > 1.0) {
    throw ValidationError("search: improper_overlap must lie in (filter_tolerance, 1]");
  }
  if (max_iterations < 1 || anchor_iterations < 1) {
    throw ValidationError("search: iteration budgets must be >= 1");
  }
  if (chart_base) {
    if (chart_base->rows() != spec.modes() || chart_base->cols() != spec.modes()) {
      throw DimensionError("search: chart_base dimension differs from the problem's mode count");
    }
    require_unitary(*chart_base, kUnitarityTolerance, "search chart_base");
  }
}

double Candidate::total_probability() const {
  double s = 0.0;
  for (int a : ancilla_set) s += probabilities.at(a);
  return s;
}

std::optional<Candidate> classify_point(const CMatrix& u, const ProblemSpec& spec, double tol,
                                        double improper_overlap, std::string* verdict) {
  const auto report = herald_analysis(u, spec);
  Candidate c;
  c.unitary = u;
  bool improper = false;
  for (std::size_t a = 0; a < report.patterns.size(); ++a) {
    const double prob = report.patterns[a].probability;
    if (prob < kZeroProbability || report.overlaps.rows() == 0) continue;
    const auto col = report.overlaps.col(static_cast<Eigen::Index>(a));
    Eigen::Index best = 0;
    const double top = col.maxCoeff(&best);
    int near_one = 0;
    bool others_zero = true;
    for (Eigen::Index t = 0; t < col.size(); ++t) {
      if (col(t) >= 1.0 - tol) {
        ++near_one;
      } else if (col(t) > tol) {
        others_zero = false;
      }
    }
    if (near_one == 1 && others_zero) {
      const int ai = static_cast<int>(a);
      c.ancilla_set.push_back(ai);
      c.matched_targets[ai] = static_cast<int>(best);
      c.probabilities[ai] = prob;
    } else if (top > improper_overlap) {
      improper = true;
    }
  }
  if (c.ancilla_set.empty()) {
    if (verdict) *verdict = "no admissible pattern";
    return std::nullopt;
  }
  if (improper) {
    if (verdict) *verdict = "improper";
    return std::nullopt;
  }
  if (verdict) *verdict = "accepted";
  return c;
}

namespace {

/// Nearest unitary (polar factor); removes drift accumulated over re-anchors.
CMatrix reunitarize(const CMatrix& u) {
  Eigen::JacobiSVD<CMatrix> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

struct LocalResult {
  CMatrix unitary;
  double value = 0.0;
  int iterations = 0;
};

LocalResult maximize(const Stage1Objective& obj, CMatrix base, const Stage1Config& cfg) {
  const int d = obj.dim();
  BfgsOptions opts;
  opts.gradient_tolerance = cfg.gradient_tolerance;
  LocalResult out;
  out.value = obj.value(base);
  for (;;) {
    opts.max_iterations = std::min(cfg.anchor_iterations, cfg.max_iterations - out.iterations);
    Objective f = [&](const RVector& x, RVector& g) {
      const double v = obj.at_chart(base, x, &g);
      g = -g;
      return -v;
    };
    const auto r = bfgs_minimize(f, RVector::Zero(d * d), opts);
    out.iterations += r.iterations;
    const double gained = -r.f - out.value;
    if (r.iterations > 0 && gained >= 0.0) {
      base = reunitarize(chart_point({base, hermitian_from_params({r.x.data(), static_cast<std::size_t>(r.x.size())}, d)}));
      out.value = obj.value(base);
    }
    if (r.status == BfgsStatus::Converged || out.iterations >= cfg.max_iterations) break;
    if (r.status != BfgsStatus::MaxIterations && gained <= 1e-14 * (1.0 + std::abs(out.value))) break;
    if (r.iterations == 0) break;
  }
  out.unitary = std::move(base);
  return out;
}

}  // namespace

Stage1Result stage1_search(const Stage1Config& config, int workers) {
  config.validate();
  Stage1Result result;
  if (config.spec.targets.empty()) return result;

  const Stage1Objective objective(config.spec, config.p);
  std::vector<Stage1Objective> sharpen;
  for (int q : config.sharpening) sharpen.emplace_back(config.spec, q);
  const int n = config.restarts;
  result.runs.resize(static_cast<std::size_t>(n));
  std::vector<std::optional<Candidate>> found(static_cast<std::size_t>(n));

  auto run_one = [&](int r) {
    const std::uint64_t seed = derive_seed(config.master_seed, static_cast<std::uint64_t>(r));
    const CMatrix start = config.chart_base ? *config.chart_base : haar_random_unitary(config.spec.modes(), seed);
    LocalResult local = maximize(objective, start, config);
    for (const auto& obj : sharpen) {
      const LocalResult next = maximize(obj, local.unitary, config);
      local.unitary = next.unitary;
      local.iterations += next.iterations;
    }
    if (!sharpen.empty()) local.value = objective.value(local.unitary);
    RestartOutcome& o = result.runs[static_cast<std::size_t>(r)];
    o.restart = r;
    o.seed = seed;
    o.objective_value = local.value;
    o.iterations = local.iterations;
    o.rho = rho_distance(local.unitary, start);
    o.unitary = local.unitary;
    auto cand = classify_point(local.unitary, config.spec, config.filter_tolerance, config.improper_overlap, &o.verdict);
    if (cand) {
      o.accepted = true;
      cand->objective_value = local.value;
      cand->restart = r;
      cand->seed = seed;
      cand->rho = o.rho;
      cand->iterations = local.iterations;
      found[static_cast<std::size_t>(r)] = std::move(cand);
    }
  };

  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, n);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int r = next++; r < n; r = next++) {
      try {
        run_one(r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (auto& c : found)
    if (c) result.candidates.push_back(std::move(*c));
  std::stable_sort(result.candidates.begin(), result.candidates.end(), [](const Candidate& a, const Candidate& b) {
    const double pa = a.total_probability(), pb = b.total_probability();
    if (pa != pb) return pa > pb;
    return a.restart < b.restart;
  });
  return result;
}

}  // namespace heraldic
