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

#include "heraldic/bfgs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace heraldic {

std::string to_string(BfgsStatus status) {
  switch (status) {
    case BfgsStatus::Converged: return "converged";
    case BfgsStatus::MaxIterations: return "max_iterations";
    case BfgsStatus::LineSearchFailed: return "line_search_failed";
    case BfgsStatus::Stalled: return "stalled";
  }
  return "unknown";
}

namespace {

struct Sample {
  double alpha = 0.0;
  double f = 0.0;
  double slope = 0.0;  // directional derivative
  RVector x;
  RVector g;
};

/// Minimizer of the cubic through (a, fa, da) and (b, fb, db), clamped to the
/// inner part of [a, b]; bisection when the cubic is unusable.
double interpolate(const Sample& lo, const Sample& hi) {
  const double a = lo.alpha, b = hi.alpha;
  const double d1 = lo.slope + hi.slope - 3.0 * (lo.f - hi.f) / (a - b);
  const double disc = d1 * d1 - lo.slope * hi.slope;
  double t = 0.5 * (a + b);
  if (disc >= 0.0) {
    const double d2 = std::copysign(std::sqrt(disc), b - a);
    const double denom = hi.slope - lo.slope + 2.0 * d2;
    if (denom != 0.0) t = b - (b - a) * (hi.slope + d2 - d1) / denom;
  }
  const double left = std::min(a, b), right = std::max(a, b);
  const double margin = 0.1 * (right - left);
  if (!std::isfinite(t) || t < left + margin || t > right - margin) t = 0.5 * (a + b);
  return t;
}

class LineSearch {
 public:
  LineSearch(const Objective& f, const RVector& x, const RVector& p, double f0, double slope0,
             const BfgsOptions& o, int& evaluations)
      : f_(f), x_(x), p_(p), f0_(f0), d0_(slope0), o_(o), evals_(evaluations) {}

  /// Returns true with `out` satisfying the strong Wolfe conditions; false with
  /// `out` the best sufficient-decrease point found (alpha = 0 if none).
  bool run(double alpha, Sample& out) {
    Sample prev{0.0, f0_, d0_, x_, {}};
    best_ = prev;
    for (int k = 0; k < o_.max_line_search_steps; ++k) {
      Sample cur = eval(alpha);
      if (!std::isfinite(cur.f) || cur.f > f0_ + o_.c1 * alpha * d0_ || (k > 0 && cur.f >= prev.f)) {
        if (!std::isfinite(cur.f)) cur.f = std::numeric_limits<double>::infinity();
        return zoom(prev, cur, out);
      }
      if (std::abs(cur.slope) <= -o_.c2 * d0_) {
        out = std::move(cur);
        return true;
      }
      if (cur.slope >= 0.0) return zoom(cur, prev, out);
      prev = std::move(cur);
      alpha *= 2.0;
    }
    out = best_;
    return false;
  }

 private:
  Sample eval(double alpha) {
    Sample s;
    s.alpha = alpha;
    s.x = x_ + alpha * p_;
    s.g.resize(x_.size());
    s.f = f_(s.x, s.g);
    ++evals_;
    s.slope = s.g.dot(p_);
    if (!std::isfinite(s.slope)) s.f = std::numeric_limits<double>::infinity();
    if (std::isfinite(s.f) && s.f <= f0_ + o_.c1 * alpha * d0_ && s.f < best_.f) best_ = s;
    return s;
  }

  bool zoom(Sample lo, Sample hi, Sample& out) {
    for (int k = 0; k < o_.max_line_search_steps; ++k) {
      double alpha;
      if (std::isfinite(hi.f)) {
        alpha = interpolate(lo, hi);
      } else {
        alpha = 0.5 * (lo.alpha + hi.alpha);
      }
      if (std::abs(hi.alpha - lo.alpha) < 1e-16 * std::max(1.0, std::abs(lo.alpha))) break;
      Sample cur = eval(alpha);
      if (!std::isfinite(cur.f) || cur.f > f0_ + o_.c1 * alpha * d0_ || cur.f >= lo.f) {
        hi = std::move(cur);
        continue;
      }
      if (std::abs(cur.slope) <= -o_.c2 * d0_) {
        out = std::move(cur);
        return true;
      }
      if (cur.slope * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
      lo = std::move(cur);
    }
    out = best_;
    return false;
  }

  const Objective& f_;
  const RVector& x_;
  const RVector& p_;
  double f0_;
  double d0_;
  const BfgsOptions& o_;
  int& evals_;
  Sample best_;
};

}  // namespace

BfgsResult bfgs_minimize(const Objective& f, const RVector& x0, const BfgsOptions& options) {
  const Eigen::Index n = x0.size();
  BfgsResult r;
  r.x = x0;
  r.gradient = RVector::Zero(n);
  r.f = f(r.x, r.gradient);
  r.evaluations = 1;
  if (!std::isfinite(r.f) || !r.gradient.allFinite()) {
    throw ValidationError("bfgs_minimize: objective or gradient not finite at the starting point");
  }
  Eigen::MatrixXd b = Eigen::MatrixXd::Identity(n, n);
  bool scaled = false;
  int stalled = 0;

  for (;;) {
    if (stalled >= options.stall_iterations) {
      r.status = BfgsStatus::Stalled;
      return r;
    }
    if (r.gradient.norm() <= options.gradient_tolerance) {
      r.status = BfgsStatus::Converged;
      return r;
    }
    if (r.iterations >= options.max_iterations) {
      r.status = BfgsStatus::MaxIterations;
      return r;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(b);
    RVector p;
    if (llt.info() == Eigen::Success) p = -llt.solve(r.gradient);
    double slope = p.size() ? p.dot(r.gradient) : 0.0;
    if (llt.info() != Eigen::Success || !p.allFinite() || !(slope < 0.0)) {
      b.setIdentity();
      scaled = false;
      p = -r.gradient;
      slope = p.dot(r.gradient);
    }
    const double alpha0 = scaled ? 1.0 : std::min(1.0, 1.0 / r.gradient.norm());

    Sample next;
    LineSearch ls(f, r.x, p, r.f, slope, options, r.evaluations);
    const bool ok = ls.run(alpha0, next);
    if (!ok && next.alpha == 0.0) {
      if (scaled) {
        // Retry once along steepest descent before giving up.
        b.setIdentity();
        scaled = false;
        continue;
      }
      r.status = BfgsStatus::LineSearchFailed;
      return r;
    }
    ++r.iterations;
    const double decrease = r.f - next.f;
    stalled = decrease <= options.stall_tolerance * (1.0 + std::abs(r.f)) ? stalled + 1 : 0;
    const RVector s = next.x - r.x;
    const RVector y = next.g - r.gradient;
    r.x = std::move(next.x);
    r.f = next.f;
    r.gradient = std::move(next.g);

    double sy = s.dot(y);
    if (!scaled) {
      const double yy = y.dot(y);
      if (sy > 0.0 && yy > 0.0) b = (yy / sy) * Eigen::MatrixXd::Identity(n, n);
      scaled = true;
    }
    const RVector bs = b * s;
    const double sbs = s.dot(bs);
    if (!(sbs > 0.0)) continue;
    RVector rr = y;
    if (sy < options.damping * sbs) {
      const double theta = (1.0 - options.damping) * sbs / (sbs - sy);
      rr = theta * y + (1.0 - theta) * bs;
      sy = s.dot(rr);
    }
    if (!(sy > 0.0)) continue;
    b += (rr * rr.transpose()) / sy - (bs * bs.transpose()) / sbs;
  }
}

}  // namespace heraldic
