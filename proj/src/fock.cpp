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

#include "heraldic/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <sstream>

namespace heraldic {

FockState::FockState(std::vector<int> occupations) : occupations_(std::move(occupations)) {
  for (int n : occupations_) {
    if (n < 0) throw ValidationError("FockState: negative occupation " + std::to_string(n));
    photons_ += n;
  }
}

FockState::FockState(std::initializer_list<int> occupations)
    : FockState(std::vector<int>(occupations)) {}

FockState FockState::concat(const FockState& tail) const {
  std::vector<int> joined = occupations_;
  joined.insert(joined.end(), tail.occupations_.begin(), tail.occupations_.end());
  return FockState(std::move(joined));
}

FockState FockState::slice(int first, int count) const {
  if (first < 0 || count < 0 || first + count > modes()) {
    throw DimensionError("FockState::slice out of range");
  }
  return FockState(std::vector<int>(occupations_.begin() + first,
                                    occupations_.begin() + first + count));
}

std::string FockState::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < occupations_.size(); ++i) {
    if (i) out << ',';
    out << occupations_[i];
  }
  out << ')';
  return out.str();
}

namespace {

void enumerate_into(int mode, int remaining, std::vector<int>& current,
                    std::vector<FockState>& out) {
  const int n_modes = static_cast<int>(current.size());
  if (mode == n_modes - 1) {
    current[static_cast<std::size_t>(mode)] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    current[static_cast<std::size_t>(mode)] = k;
    enumerate_into(mode + 1, remaining - k, current, out);
  }
}

}  // namespace

std::vector<FockState> enumerate_fock_states(int n_modes, int n_photons) {
  if (n_modes < 0 || n_photons < 0) {
    throw ValidationError("enumerate_fock_states: negative mode or photon count");
  }
  std::vector<FockState> out;
  if (n_modes == 0) {
    if (n_photons == 0) out.emplace_back(std::vector<int>{});
    return out;
  }
  out.reserve(binomial(n_modes + n_photons - 1, n_photons));
  std::vector<int> current(static_cast<std::size_t>(n_modes), 0);
  enumerate_into(0, n_photons, current, out);
  return out;
}

std::size_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

FockBasis::FockBasis(int n_modes, int n_photons)
    : modes_(n_modes), photons_(n_photons), states_(enumerate_fock_states(n_modes, n_photons)) {
  for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i], i);
}

long FockBasis::index_of(const FockState& state) const {
  auto it = index_.find(state);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

Complex permanent(std::span<const Complex> a, int n) {
  if (n < 0 || a.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw DimensionError("permanent: buffer is not n x n");
  }
  if (n == 0) return {1.0, 0.0};
  if (n == 1) return a[0];
  if (n > 30) throw DimensionError("permanent: matrix too large");

  // perm(A) = (-1)^n sum_{S} (-1)^{|S|} prod_i sum_{j in S} a_ij, visiting the
  // column subsets S in Gray-code order so each step adds or removes a column.
  std::vector<Complex> row_sums(static_cast<std::size_t>(n), Complex{});
  Complex total{};
  const std::uint64_t count = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < count; ++k) {
    const int j = std::countr_zero(k);
    const std::uint64_t bit = std::uint64_t{1} << j;
    gray ^= bit;
    const double sign = (gray & bit) ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i) {
      row_sums[static_cast<std::size_t>(i)] += sign * a[static_cast<std::size_t>(i * n + j)];
    }
    Complex prod = row_sums[0];
    for (int i = 1; i < n; ++i) prod *= row_sums[static_cast<std::size_t>(i)];
    if (std::popcount(gray) % 2 == n % 2) {
      total += prod;
    } else {
      total -= prod;
    }
  }
  return total;
}

Complex permanent(const CMatrix& matrix) {
  if (matrix.rows() != matrix.cols()) {
    throw DimensionError("permanent: matrix is " + std::to_string(matrix.rows()) + "x" +
                         std::to_string(matrix.cols()) + ", expected square");
  }
  const int n = static_cast<int>(matrix.rows());
  std::vector<Complex> buffer(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) buffer[static_cast<std::size_t>(i * n + j)] = matrix(i, j);
  return permanent(buffer, n);
}

namespace {

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

std::vector<int> repeated_indices(const FockState& s) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(s.photons()));
  for (int mode = 0; mode < s.modes(); ++mode)
    for (int k = 0; k < s[mode]; ++k) out.push_back(mode);
  return out;
}

}  // namespace

Complex transition_amplitude(const CMatrix& u, const FockState& input, const FockState& output) {
  if (u.rows() != u.cols()) throw DimensionError("transition_amplitude: U is not square");
  const int dim = static_cast<int>(u.rows());
  if (input.modes() != dim || output.modes() != dim) {
    throw DimensionError("transition_amplitude: U has " + std::to_string(dim) +
                         " modes, input has " + std::to_string(input.modes()) +
                         ", output has " + std::to_string(output.modes()));
  }
  if (input.photons() != output.photons()) return {};
  const auto cols = repeated_indices(input);
  const auto rows = repeated_indices(output);
  const int n = static_cast<int>(rows.size());
  std::vector<Complex> sub(static_cast<std::size_t>(n * n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      sub[static_cast<std::size_t>(r * n + c)] = u(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
  double norm = 1.0;
  for (int k : input.occupations()) norm *= factorial(k);
  for (int k : output.occupations()) norm *= factorial(k);
  return permanent(sub, n) / std::sqrt(norm);
}

TargetState::TargetState(std::vector<Term> terms, std::string label)
    : terms_(std::move(terms)), label_(std::move(label)) {
  if (terms_.empty()) throw ValidationError("TargetState: no terms");
  std::set<FockState> seen;
  double norm2 = 0.0;
  for (const auto& [state, amp] : terms_) {
    if (state.modes() != terms_.front().first.modes()) {
      throw DimensionError("TargetState: terms over different mode counts");
    }
    if (state.photons() != terms_.front().first.photons()) {
      throw ValidationError("TargetState: terms with different photon numbers");
    }
    if (!seen.insert(state).second) {
      throw ValidationError("TargetState: duplicate component " + state.to_string());
    }
    norm2 += std::norm(amp);
  }
  if (std::abs(norm2 - 1.0) > 1e-12) {
    throw ValidationError("TargetState: squared norm " + std::to_string(norm2) + " != 1");
  }
}

TargetState TargetState::normalized(std::vector<Term> terms, std::string label) {
  double norm2 = 0.0;
  for (const auto& t : terms) norm2 += std::norm(t.second);
  if (norm2 <= 0.0) throw ValidationError("TargetState: zero vector");
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& t : terms) t.second *= scale;
  return TargetState(std::move(terms), std::move(label));
}

int ProblemSpec::ancilla_photons() const {
  return ancilla_patterns.empty() ? 0 : ancilla_patterns.front().photons();
}

int ProblemSpec::target_photons() const { return input.photons() - ancilla_photons(); }

void ProblemSpec::validate() const {
  if (n_target_modes < 1) throw ValidationError("problem: n_target_modes must be >= 1");
  if (n_ancilla_modes < 0) throw ValidationError("problem: n_ancilla_modes must be >= 0");
  if (input.modes() != modes()) {
    throw DimensionError("problem: input has " + std::to_string(input.modes()) +
                         " modes, expected n_target_modes + n_ancilla_modes = " +
                         std::to_string(modes()));
  }
  for (const auto& a : ancilla_patterns) {
    if (a.modes() != n_ancilla_modes) {
      throw DimensionError("problem: ancilla pattern " + a.to_string() + " has " +
                           std::to_string(a.modes()) + " modes, expected " +
                           std::to_string(n_ancilla_modes));
    }
    if (a.photons() != ancilla_photons()) {
      throw ValidationError("problem: ancilla patterns carry different photon counts");
    }
  }
  if (!ancilla_patterns.empty() && ancilla_photons() > input.photons()) {
    throw ValidationError("problem: ancilla patterns need more photons than the input has");
  }
  for (const auto& t : targets) {
    if (t.modes() != n_target_modes) {
      throw DimensionError("problem: target has " + std::to_string(t.modes()) +
                           " modes, expected " + std::to_string(n_target_modes));
    }
  }
}

void ProblemSpec::validate_photon_balance() const {
  validate();
  for (const auto& t : targets) {
    if (t.photons() != target_photons()) {
      throw ValidationError("problem: target carries " + std::to_string(t.photons()) +
                            " photons, expected input - ancilla = " +
                            std::to_string(target_photons()));
    }
  }
}

namespace {

/// <target|v> over `basis`; zero when the target lives in another sector.
Complex project(const FockBasis& basis, std::span<const Complex> v, const TargetState& target) {
  Complex overlap{};
  if (target.modes() != basis.modes() || target.photons() != basis.photons()) return overlap;
  for (const auto& [state, amp] : target.terms()) {
    const long idx = basis.index_of(state);
    if (idx >= 0) overlap += std::conj(amp) * v[static_cast<std::size_t>(idx)];
  }
  return overlap;
}

}  // namespace

HeraldReport herald_analysis(const CMatrix& u, const ProblemSpec& spec) {
  spec.validate();
  if (u.rows() != spec.modes() || u.cols() != spec.modes()) {
    throw DimensionError("herald_analysis: unitary is " + std::to_string(u.rows()) + "x" +
                         std::to_string(u.cols()) + ", problem has " +
                         std::to_string(spec.modes()) + " modes");
  }
  require_unitary(u, kUnitarityTolerance, "herald_analysis");

  const int target_photons = std::max(spec.target_photons(), 0);
  HeraldReport report{FockBasis(spec.n_target_modes, target_photons), {}, {}};
  const auto& basis = report.target_basis;
  report.overlaps = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(spec.targets.size()),
                                          static_cast<Eigen::Index>(spec.ancilla_patterns.size()));

  for (std::size_t a = 0; a < spec.ancilla_patterns.size(); ++a) {
    const auto& pattern = spec.ancilla_patterns[a];
    HeraldedPattern entry{pattern, 0.0, std::vector<Complex>(basis.size())};
    double prob = 0.0;
    for (std::size_t m = 0; m < basis.size(); ++m) {
      const Complex amp = transition_amplitude(u, spec.input, basis[m].concat(pattern));
      entry.state[m] = amp;
      prob += std::norm(amp);
    }
    entry.probability = prob;
    if (prob < kZeroProbability) {
      std::fill(entry.state.begin(), entry.state.end(), Complex{});
    } else {
      const double scale = 1.0 / std::sqrt(prob);
      for (auto& x : entry.state) x *= scale;
      for (std::size_t t = 0; t < spec.targets.size(); ++t) {
        report.overlaps(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(a)) =
            std::norm(project(basis, entry.state, spec.targets[t]));
      }
    }
    report.patterns.push_back(std::move(entry));
  }
  return report;
}

double state_fidelity(const FockBasis& basis, std::span<const Complex> state,
                      const TargetState& target) {
  if (state.size() != basis.size()) {
    throw DimensionError("state_fidelity: state has " + std::to_string(state.size()) +
                         " amplitudes, basis has " + std::to_string(basis.size()));
  }
  if (target.modes() != basis.modes() || target.photons() != basis.photons()) {
    throw DimensionError("state_fidelity: target sector (" + std::to_string(target.modes()) +
                         " modes, " + std::to_string(target.photons()) +
                         " photons) differs from the state's");
  }
  return std::norm(project(basis, state, target));
}

}  // namespace heraldic
