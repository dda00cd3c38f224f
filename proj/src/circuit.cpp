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

#include "heraldic/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace heraldic {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) { return std::remainder(a, 2.0 * kPi); }

}  // namespace

CircuitSpec CircuitSpec::identity(int dim) {
  return CircuitSpec{dim, {}, std::vector<Complex>(static_cast<std::size_t>(dim), Complex{1.0, 0.0})};
}

void CircuitSpec::validate() const {
  if (dim < 1) throw ValidationError("circuit: dim must be >= 1");
  if (static_cast<int>(phases.size()) != dim) {
    throw DimensionError("circuit: phases has " + std::to_string(phases.size()) +
                         " entries, expected dim = " + std::to_string(dim));
  }
  for (const auto& p : phases) {
    if (std::abs(std::abs(p) - 1.0) > 1e-12) {
      throw ValidationError("circuit: phase entry without unit modulus");
    }
  }
  for (const auto& e : elements) {
    if (e.n < 0 || e.m < 0 || e.n >= dim || e.m >= dim) {
      throw DimensionError("circuit: element modes (" + std::to_string(e.n) + ", " +
                           std::to_string(e.m) + ") outside dim " + std::to_string(dim));
    }
    if (e.n == e.m) throw ValidationError("circuit: element acts on a single mode");
    if (!std::isfinite(e.theta) || !std::isfinite(e.phi)) {
      throw ValidationError("circuit: non-finite element angle");
    }
  }
}

Eigen::Matrix2cd element_block(const TwoModeElement& e) {
  const double c = std::cos(e.theta);
  const double s = std::sin(e.theta);
  const Complex ph = std::polar(1.0, e.phi);
  Eigen::Matrix2cd t;
  t << ph * c, -s, ph * s, c;
  return t;
}

CMatrix element_matrix(const TwoModeElement& e, int dim) {
  if (e.n < 0 || e.m < 0 || e.n >= dim || e.m >= dim) {
    throw DimensionError("element_matrix: mode index outside dim " + std::to_string(dim));
  }
  if (e.n == e.m) throw ValidationError("element_matrix: n == m");
  CMatrix u = CMatrix::Identity(dim, dim);
  const auto t = element_block(e);
  u(e.n, e.n) = t(0, 0);
  u(e.n, e.m) = t(0, 1);
  u(e.m, e.n) = t(1, 0);
  u(e.m, e.m) = t(1, 1);
  return u;
}

void apply_rows(CMatrix& target, int n, int m, const Eigen::Matrix2cd& b) {
  for (Eigen::Index c = 0; c < target.cols(); ++c) {
    const Complex x = target(n, c);
    const Complex y = target(m, c);
    target(n, c) = b(0, 0) * x + b(0, 1) * y;
    target(m, c) = b(1, 0) * x + b(1, 1) * y;
  }
}

void apply_cols(CMatrix& target, int n, int m, const Eigen::Matrix2cd& b) {
  for (Eigen::Index r = 0; r < target.rows(); ++r) {
    const Complex x = target(r, n);
    const Complex y = target(r, m);
    target(r, n) = x * b(0, 0) + y * b(1, 0);
    target(r, m) = x * b(0, 1) + y * b(1, 1);
  }
}

CMatrix compose(const CircuitSpec& spec) {
  spec.validate();
  CMatrix u = CMatrix::Identity(spec.dim, spec.dim);
  for (auto it = spec.elements.rbegin(); it != spec.elements.rend(); ++it) {
    apply_rows(u, it->n, it->m, element_block(*it));
  }
  for (int r = 0; r < spec.dim; ++r) u.row(r) *= spec.phases[static_cast<std::size_t>(r)];
  return u;
}

// ---------------------------------------------------------------------------

CircuitBuilder::CircuitBuilder(int dim)
    : dim_(dim), pending_(static_cast<std::size_t>(std::max(dim, 0)), Complex{1.0, 0.0}) {
  if (dim < 1) throw ValidationError("CircuitBuilder: dim must be >= 1");
}

void CircuitBuilder::check_pair(int n, int m) const {
  if (n < 0 || m < 0 || n >= dim_ || m >= dim_ || n == m) {
    throw DimensionError("CircuitBuilder: bad mode pair (" + std::to_string(n) + ", " +
                         std::to_string(m) + ") for dim " + std::to_string(dim_));
  }
}

CircuitBuilder& CircuitBuilder::splitter(int n, int m, double theta, double phi) {
  return two_mode(n, m, element_block({theta, phi, n, m}));
}

CircuitBuilder& CircuitBuilder::two_mode(int n, int m, const Eigen::Matrix2cd& block) {
  check_pair(n, m);
  auto& pn = pending_[static_cast<std::size_t>(n)];
  auto& pm = pending_[static_cast<std::size_t>(m)];
  // Absorb the phases accumulated so far on the two input lines.
  Eigen::Matrix2cd v = block;
  v.col(0) *= pn;
  v.col(1) *= pm;

  // v = diag(e^{ia}, e^{ib}) * T(theta, phi).
  const double c = std::abs(v(1, 1));
  const double s = std::abs(v(1, 0));
  const double theta = std::atan2(s, c);
  double a = 0.0, b = 0.0, phi = 0.0;
  if (c >= s) {
    b = std::arg(v(1, 1));
    phi = s > 0.0 ? std::arg(v(1, 0)) - b : 0.0;
    a = std::arg(v(0, 0)) - phi;
  } else {
    a = std::arg(-v(0, 1));
    phi = c > 0.0 ? std::arg(v(0, 0)) - a : 0.0;
    b = std::arg(v(1, 0)) - phi;
  }
  applied_.push_back({theta, wrap_angle(phi), n, m});
  pn = std::polar(1.0, a);
  pm = std::polar(1.0, b);
  return *this;
}

CircuitBuilder& CircuitBuilder::phase(int mode, Complex factor) {
  if (mode < 0 || mode >= dim_) throw DimensionError("CircuitBuilder: phase mode out of range");
  auto& p = pending_[static_cast<std::size_t>(mode)];
  p *= factor / std::abs(factor);
  return *this;
}

CircuitBuilder& CircuitBuilder::phase_angle(int mode, double angle) {
  return phase(mode, std::polar(1.0, angle));
}

CircuitBuilder& CircuitBuilder::append(const CircuitSpec& sub, std::span<const int> lines) {
  sub.validate();
  if (static_cast<int>(lines.size()) != sub.dim) {
    throw DimensionError("CircuitBuilder::append: line map size differs from sub-circuit dim");
  }
  for (auto it = sub.elements.rbegin(); it != sub.elements.rend(); ++it) {
    splitter(lines[static_cast<std::size_t>(it->n)], lines[static_cast<std::size_t>(it->m)],
             it->theta, it->phi);
  }
  for (int k = 0; k < sub.dim; ++k) phase(lines[static_cast<std::size_t>(k)], sub.phases[static_cast<std::size_t>(k)]);
  return *this;
}

CircuitBuilder& CircuitBuilder::unitary(const CMatrix& block, std::span<const int> lines) {
  return append(clements_decompose(block), lines);
}

CircuitSpec CircuitBuilder::build() const {
  CircuitSpec out{dim_, {applied_.rbegin(), applied_.rend()}, pending_};
  return out;
}

// ---------------------------------------------------------------------------

CircuitSpec clements_decompose(const CMatrix& u) {
  require_unitary(u, 1e-10, "clements_decompose");
  const int d = static_cast<int>(u.rows());
  if (d < 1) throw DimensionError("clements_decompose: empty matrix");

  struct Op {
    int n;
    Eigen::Matrix2cd block;  // operation on modes (n, n+1) as seen by light
  };
  std::vector<Op> right;  // U <- U G; contributes G^dagger, applied first
  std::vector<Op> left;   // U <- G U; contributes G^dagger, applied last
  CMatrix w = u;

  auto null_right = [&](int r, int c) {
    const Complex a = w(r, c);
    const Complex b = w(r, c + 1);
    const double rho = std::hypot(std::abs(a), std::abs(b));
    Eigen::Matrix2cd g = Eigen::Matrix2cd::Identity();
    if (rho > 0.0) g << b / rho, std::conj(a) / rho, -a / rho, std::conj(b) / rho;
    apply_cols(w, c, c + 1, g);
    w(r, c) = 0.0;
    right.push_back({c, g.adjoint()});
  };
  auto null_left = [&](int r, int c) {
    const Complex a = w(r - 1, c);
    const Complex b = w(r, c);
    const double rho = std::hypot(std::abs(a), std::abs(b));
    Eigen::Matrix2cd g = Eigen::Matrix2cd::Identity();
    if (rho > 0.0) g << std::conj(a) / rho, std::conj(b) / rho, -b / rho, a / rho;
    apply_rows(w, r - 1, r, g);
    w(r, c) = 0.0;
    left.push_back({r - 1, g.adjoint()});
  };

  for (int i = 1; i < d; ++i) {
    if (i % 2 == 1) {
      for (int j = 0; j < i; ++j) null_right(d - 1 - j, i - 1 - j);
    } else {
      for (int j = 1; j <= i; ++j) null_left(d + j - i - 1, j - 1);
    }
  }

  CircuitBuilder builder(d);
  for (const auto& op : right) builder.two_mode(op.n, op.n + 1, op.block);
  for (int k = 0; k < d; ++k) builder.phase(k, w(k, k));
  for (auto it = left.rbegin(); it != left.rend(); ++it) builder.two_mode(it->n, it->n + 1, it->block);
  return builder.build();
}

// ---------------------------------------------------------------------------

double simplicity_cost(const CircuitSpec& spec, const CostParams& params) {
  double cost = 0.0;
  for (const auto& e : spec.elements) {
    cost += (1.0 - std::cos(4.0 * e.theta)) + params.epsilon * (1.0 - std::cos(2.0 * e.phi));
  }
  for (const auto& p : spec.phases) cost += params.delta * std::norm(p - 1.0);
  return cost;
}

int count_nontrivial(const CircuitSpec& spec, double tolerance) {
  int count = 0;
  for (const auto& e : spec.elements) {
    if (std::min(std::abs(e.theta), std::abs(e.theta - kPi / 2)) > tolerance) ++count;
  }
  return count;
}

CMatrix chart_point(const CayleyChart& chart) {
  const auto d = chart.base.rows();
  if (chart.base.cols() != d || chart.coordinate.rows() != d || chart.coordinate.cols() != d) {
    throw DimensionError("chart_point: base and coordinate dimensions differ");
  }
  if (chart.coordinate.isZero(0.0)) return chart.base;
  // (i - h)/(i + h) on the eigenvalues keeps the result unitary to rounding.
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(chart.coordinate);
  const auto& vals = eig.eigenvalues();
  CVector ratio(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const Complex i{0.0, 1.0};
    ratio(k) = (i - vals(k)) / (i + vals(k));
  }
  const CMatrix& vecs = eig.eigenvectors();
  return chart.base * (vecs * ratio.asDiagonal() * vecs.adjoint());
}

double rho_distance(const CMatrix& u, const CMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols()) {
    throw DimensionError("rho_distance: dimension mismatch");
  }
  return 1.0 - (u * v.adjoint()).trace().real() / static_cast<double>(u.rows());
}

CMatrix hermitian_from_params(std::span<const double> params, int dim) {
  if (params.size() != static_cast<std::size_t>(dim * dim)) {
    throw DimensionError("hermitian_from_params: expected dim^2 parameters");
  }
  CMatrix h = CMatrix::Zero(dim, dim);
  std::size_t k = 0;
  for (int i = 0; i < dim; ++i) h(i, i) = params[k++];
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      h(i, j) = Complex(params[k], params[k + 1]);
      h(j, i) = std::conj(h(i, j));
      k += 2;
    }
  }
  return h;
}

RVector params_from_hermitian(const CMatrix& h) {
  const int dim = static_cast<int>(h.rows());
  RVector p(dim * dim);
  Eigen::Index k = 0;
  for (int i = 0; i < dim; ++i) p(k++) = h(i, i).real();
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      p(k++) = h(i, j).real();
      p(k++) = h(i, j).imag();
    }
  }
  return p;
}

}  // namespace heraldic
