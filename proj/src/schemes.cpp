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

#include "heraldic/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace heraldic {

namespace {

constexpr double kQuarter = std::numbers::pi / 4;
const double kS2 = std::sqrt(2.0);
const double kS3 = std::sqrt(3.0);
const double kS6 = std::sqrt(6.0);

/// Product of creation-operator polynomials turned into a Fock-basis
/// superposition. Each factor is a list of (mode, coefficient).
using OperatorForm = std::vector<std::pair<int, double>>;

std::map<std::vector<int>, Complex> expand(const std::vector<OperatorForm>& factors, int modes) {
  std::map<std::vector<int>, Complex> poly{{std::vector<int>(static_cast<std::size_t>(modes), 0), 1.0}};
  for (const auto& factor : factors) {
    std::map<std::vector<int>, Complex> next;
    for (const auto& [mono, c] : poly) {
      for (const auto& [mode, k] : factor) {
        auto m = mono;
        ++m[static_cast<std::size_t>(mode)];
        next[m] += c * k;
      }
    }
    poly = std::move(next);
  }
  return poly;
}

/// sum_i sign_i * prod(factors_i) |0>, normalized.
TargetState polynomial_state(const std::vector<std::pair<double, std::vector<OperatorForm>>>& sum,
                             int modes, const std::string& label) {
  std::map<std::vector<int>, Complex> total;
  for (const auto& [sign, factors] : sum) {
    for (const auto& [mono, c] : expand(factors, modes)) total[mono] += sign * c;
  }
  std::vector<TargetState::Term> terms;
  // Descending order matches the basis enumeration.
  for (auto it = total.rbegin(); it != total.rend(); ++it) {
    double fact = 1.0;
    for (int n : it->first) fact *= std::tgamma(n + 1.0);
    const Complex amp = it->second * std::sqrt(fact);
    if (std::abs(amp) > 1e-14) terms.emplace_back(FockState(it->first), amp);
  }
  return TargetState::normalized(std::move(terms), label);
}

std::vector<NamedBellState> bell_family(const OperatorForm& a0, const OperatorForm& a1,
                                        const OperatorForm& b0, const OperatorForm& b1,
                                        const std::string& mark) {
  std::vector<NamedBellState> out;
  auto add = [&](const std::string& name, const OperatorForm& x0, const OperatorForm& y0,
                 const OperatorForm& x1, const OperatorForm& y1) {
    for (double s : {1.0, -1.0}) {
      const std::string label = name + mark + (s > 0 ? "+" : "-");
      out.push_back({label, polynomial_state({{1.0, {x0, y0}}, {s, {x1, y1}}}, 4, label)});
    }
  };
  add("phi", a0, b0, a1, b1);
  add("psi", a0, b1, a1, b0);
  add("chi", a0, a1, b0, b1);
  return out;
}

}  // namespace

CMatrix omega_block() {
  CMatrix u(3, 3);
  u << -std::sqrt(2.0 / 3.0), 1 / kS6, 1 / kS6,
       0.0, 1 / kS2, -1 / kS2,
       1 / kS3, 1 / kS3, 1 / kS3;
  return u;
}

CMatrix omega_prime_block() {
  CMatrix u(3, 3);
  u << 1 / kS2, -1 / kS2, 0.0,
       1 / kS6, 1 / kS6, -std::sqrt(2.0 / 3.0),
       1 / kS3, 1 / kS3, 1 / kS3;
  return u;
}

OmegaCoefficients omega_coefficients(const CMatrix& block) {
  if (block.rows() != 3 || block.cols() != 3) {
    throw DimensionError("omega_coefficients: expected a 3x3 block");
  }
  require_unitary(block, 1e-10, "omega_coefficients");
  // Input mode k maps to sum_j U_jk w_j.
  OmegaCoefficients c;
  c.alpha = block(2, 0);
  c.beta = {block(0, 0), block(1, 0)};
  const Complex g = block(2, 1);
  const LinearForm b = {block(0, 1), block(1, 1)};
  c.A = g * g / 2.0;
  c.B = {g * b[0] / 2.0, g * b[1] / 2.0};
  c.C = {b[0] * b[0] / 2.0, b[0] * b[1], b[1] * b[1] / 2.0};
  c.D = {c.alpha * c.C[0] + 2.0 * c.B[0] * c.beta[0],
         c.alpha * c.C[1] + 2.0 * (c.B[0] * c.beta[1] + c.B[1] * c.beta[0]),
         c.alpha * c.C[2] + 2.0 * c.B[1] * c.beta[1]};
  return c;
}

CircuitSpec ghz_scheme() {
  CMatrix flipped = omega_block();
  flipped.col(0) *= -1.0;
  const std::vector<int> top = {0, 1, 6};
  const std::vector<int> bottom = {3, 4, 7};
  CircuitBuilder b(10);
  b.splitter(1, 2, kQuarter)
      .unitary(omega_block(), top)
      .splitter(2, 9, kQuarter)
      .splitter(4, 5, kQuarter)
      .unitary(flipped, bottom)
      .splitter(5, 8, kQuarter)
      .splitter(6, 7, kQuarter)
      .splitter(8, 9, kQuarter);
  return b.build();
}

FockState ghz_input() { return FockState{1, 1, 1, 1, 1, 1, 0, 0, 0, 0}; }

CMatrix ghz_top_block() {
  const double q = 1 / (2 * kS3);
  CMatrix u(5, 5);
  u << -std::sqrt(2.0 / 3.0), 1 / kS6, q, -q, 0.0,
       0.0, -1 / kS2, 0.5, -0.5, 0.0,
       1 / kS3, 1 / kS3, 1 / kS6, -1 / kS6, 0.0,
       0.0, 0.0, 0.5, 0.5, -1 / kS2,
       0.0, 0.0, 0.5, 0.5, 1 / kS2;
  return u;
}

CMatrix ghz_bottom_block() {
  const double q = 1 / (2 * kS3);
  CMatrix u(5, 5);
  u << std::sqrt(2.0 / 3.0), 1 / kS6, -q, q, 0.0,
       0.0, -1 / kS2, -0.5, 0.5, 0.0,
       -1 / kS3, 1 / kS3, -1 / kS6, 1 / kS6, 0.0,
       0.0, 0.0, 0.5, 0.5, -1 / kS2,
       0.0, 0.0, 0.5, 0.5, 1 / kS2;
  return u;
}

CircuitSpec ghz_scheme_block_form() {
  const std::vector<int> top = {0, 1, 6, 2, 9};
  const std::vector<int> bottom = {3, 4, 7, 5, 8};
  CircuitBuilder b(10);
  b.unitary(ghz_top_block(), top)
      .unitary(ghz_bottom_block(), bottom)
      .splitter(6, 7, kQuarter)
      .splitter(8, 9, kQuarter);
  return b.build();
}

FockState ghz_block_input() { return FockState{1, 0, 1, 1, 0, 1, 1, 1, 0, 0}; }

std::vector<FockState> ghz_patterns() { return {FockState{1, 1, 1, 0}, FockState{1, 1, 0, 1}}; }

std::vector<FockState> ghz_all_patterns() {
  return {FockState{1, 1, 1, 0}, FockState{1, 1, 0, 1}, FockState{1, 0, 1, 1},
          FockState{0, 1, 1, 1}};
}

std::vector<TargetState> ghz_targets() {
  std::vector<TargetState> out;
  const double r = 1 / kS2;
  for (const auto& x : enumerate_fock_states(6, 3)) {
    const auto& o = x.occupations();
    if (o[0] != 1 || std::any_of(o.begin(), o.end(), [](int n) { return n > 1; })) continue;
    std::vector<int> complement(6);
    for (int k = 0; k < 6; ++k) complement[static_cast<std::size_t>(k)] = 1 - o[static_cast<std::size_t>(k)];
    const FockState xbar(complement);
    for (double s : {1.0, -1.0}) {
      std::string label;
      for (int n : o) label += static_cast<char>('0' + n);
      label += s > 0 ? "+" : "-";
      for (int n : complement) label += static_cast<char>('0' + n);
      out.emplace_back(std::vector<TargetState::Term>{{x, r}, {xbar, s * r}}, label);
    }
  }
  return out;
}

std::vector<TargetState> ghz_pair() {
  const double r = 1 / kS2;
  const FockState x{1, 0, 1, 0, 1, 0};
  const FockState xbar{0, 1, 0, 1, 0, 1};
  return {TargetState({{x, r}, {xbar, r}}, "ghz+"), TargetState({{x, r}, {xbar, -r}}, "ghz-")};
}

ProblemSpec ghz_problem(bool full_family) {
  ProblemSpec p;
  p.n_target_modes = 6;
  p.n_ancilla_modes = 4;
  p.input = ghz_input();
  p.ancilla_patterns = full_family ? ghz_all_patterns() : ghz_patterns();
  p.targets = full_family ? ghz_targets() : ghz_pair();
  return p;
}

CircuitSpec bell_scheme(int s, const CMatrix& block) {
  if (s != 1 && s != -1) throw ValidationError("bell_scheme: s must be +1 or -1");
  if (block.rows() != 3 || block.cols() != 3) throw DimensionError("bell_scheme: block must be 3x3");
  require_unitary(block, 1e-10, "bell_scheme block");
  const std::vector<int> top = {0, 1, 4};
  const std::vector<int> bottom = {2, 3, 5};
  CircuitBuilder b(6);
  b.splitter(1, 3, kQuarter);
  // Two photons pick up e^{i pi} from a pi/2 shifter.
  if (s < 0) b.phase_angle(3, std::numbers::pi / 2);
  b.unitary(block, top).unitary(block, bottom).splitter(4, 5, kQuarter);
  return b.build();
}

FockState bell_input() { return FockState{1, 1, 1, 1, 0, 0}; }

std::vector<FockState> bell_patterns() { return {FockState{1, 1}, FockState{2, 0}, FockState{0, 2}}; }

std::vector<NamedBellState> bell_targets() {
  return bell_family({{0, 1.0}}, {{1, 1.0}}, {{2, 1.0}}, {{3, 1.0}}, "");
}

std::vector<NamedBellState> rotated_bell_targets() {
  const double h = 0.5;
  const double r = kS3 / 2;
  return bell_family({{0, h}, {1, r}}, {{1, h}, {0, -r}}, {{2, h}, {3, r}}, {{3, h}, {2, -r}}, "~");
}

ProblemSpec bell_problem(bool with_rotated) {
  ProblemSpec p;
  p.n_target_modes = 4;
  p.n_ancilla_modes = 2;
  p.input = bell_input();
  p.ancilla_patterns = bell_patterns();
  for (auto& b : bell_targets()) p.targets.push_back(b.state);
  if (with_rotated) {
    for (auto& b : rotated_bell_targets()) p.targets.push_back(b.state);
  }
  return p;
}

// ---------------------------------------------------------------------------

std::string to_string(Claim::Kind kind) {
  switch (kind) {
    case Claim::Kind::PatternProbability: return "pattern_probability";
    case Claim::Kind::TotalProbability: return "total_probability";
    case Claim::Kind::HeraldedFidelity: return "heralded_fidelity";
    case Claim::Kind::ElementCount: return "element_count";
  }
  return "unknown";
}

bool VerificationReport::passed() const {
  return std::all_of(results.begin(), results.end(), [](const ClaimResult& r) { return r.pass; });
}

namespace {

long resolve_target(const ProblemSpec& problem, const std::string& name) {
  for (std::size_t t = 0; t < problem.targets.size(); ++t) {
    if (problem.targets[t].label() == name) return static_cast<long>(t);
  }
  if (!name.empty() && std::all_of(name.begin(), name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    const long idx = std::stol(name);
    if (idx < static_cast<long>(problem.targets.size())) return idx;
  }
  return -1;
}

void check_pattern(const ProblemSpec& problem, const FockState& pattern) {
  if (pattern.modes() != problem.n_ancilla_modes) {
    throw ValidationError("claim: pattern " + pattern.to_string() + " has " +
                          std::to_string(pattern.modes()) + " modes, expected " +
                          std::to_string(problem.n_ancilla_modes));
  }
  if (!problem.ancilla_patterns.empty() && pattern.photons() != problem.ancilla_photons()) {
    throw ValidationError("claim: pattern " + pattern.to_string() + " carries " +
                          std::to_string(pattern.photons()) + " photons, expected " +
                          std::to_string(problem.ancilla_photons()));
  }
}

std::string pattern_list(const std::vector<FockState>& ps) {
  std::string s;
  for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? "," : "") + ps[i].to_string();
  return s;
}

}  // namespace

VerificationReport verify_scheme(const CircuitSpec& spec, const ProblemSpec& problem,
                                 const std::vector<Claim>& claims) {
  spec.validate();
  problem.validate();
  if (spec.dim != problem.modes()) {
    throw DimensionError("verify: circuit has " + std::to_string(spec.dim) + " modes, problem has " +
                         std::to_string(problem.modes()));
  }

  ProblemSpec extended = problem;
  auto ensure = [&](const FockState& p) {
    check_pattern(extended, p);
    if (std::find(extended.ancilla_patterns.begin(), extended.ancilla_patterns.end(), p) ==
        extended.ancilla_patterns.end()) {
      extended.ancilla_patterns.push_back(p);
    }
  };
  for (const auto& c : claims) {
    if (!std::isfinite(c.expected) || !std::isfinite(c.tolerance) || c.tolerance < 0.0) {
      throw ValidationError("claim: expected and tolerance must be finite, tolerance >= 0");
    }
    switch (c.kind) {
      case Claim::Kind::PatternProbability:
        if (!c.pattern) throw ValidationError("claim: pattern_probability needs a pattern");
        ensure(*c.pattern);
        break;
      case Claim::Kind::TotalProbability:
        if (c.patterns.empty()) throw ValidationError("claim: total_probability needs patterns");
        for (const auto& p : c.patterns) ensure(p);
        break;
      case Claim::Kind::HeraldedFidelity:
        if (!c.pattern || !c.target) {
          throw ValidationError("claim: heralded_fidelity needs a pattern and a target");
        }
        ensure(*c.pattern);
        if (resolve_target(extended, *c.target) < 0) {
          throw ValidationError("claim: unknown target '" + *c.target + "'");
        }
        break;
      case Claim::Kind::ElementCount:
        break;
    }
  }

  VerificationReport report;
  report.problem = extended;
  report.nontrivial_elements = count_nontrivial(spec);
  report.herald = herald_analysis(compose(spec), extended);

  auto index_of = [&](const FockState& p) {
    const auto& ps = extended.ancilla_patterns;
    return static_cast<Eigen::Index>(std::find(ps.begin(), ps.end(), p) - ps.begin());
  };
  for (const auto& c : claims) {
    ClaimResult r{c, {}, 0.0, false};
    switch (c.kind) {
      case Claim::Kind::PatternProbability:
        r.description = "P" + c.pattern->to_string();
        r.measured = report.herald.patterns[static_cast<std::size_t>(index_of(*c.pattern))].probability;
        break;
      case Claim::Kind::TotalProbability:
        r.description = "sum P[" + pattern_list(c.patterns) + "]";
        for (const auto& p : c.patterns) {
          r.measured += report.herald.patterns[static_cast<std::size_t>(index_of(p))].probability;
        }
        break;
      case Claim::Kind::HeraldedFidelity: {
        const long t = resolve_target(extended, *c.target);
        r.description = "F" + c.pattern->to_string() + " vs " + extended.targets[static_cast<std::size_t>(t)].label();
        r.measured = report.herald.overlaps(t, index_of(*c.pattern));
        break;
      }
      case Claim::Kind::ElementCount:
        r.description = "nontrivial elements";
        r.measured = report.nontrivial_elements;
        break;
    }
    r.pass = std::abs(r.measured - c.expected) <= c.tolerance;
    report.results.push_back(std::move(r));
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

Claim probability(const FockState& p, double expected) {
  Claim c;
  c.kind = Claim::Kind::PatternProbability;
  c.pattern = p;
  c.expected = expected;
  return c;
}

Claim total(const std::vector<FockState>& ps, double expected) {
  Claim c;
  c.kind = Claim::Kind::TotalProbability;
  c.patterns = ps;
  c.expected = expected;
  return c;
}

Claim fidelity(const FockState& p, const std::string& target, double expected) {
  Claim c;
  c.kind = Claim::Kind::HeraldedFidelity;
  c.pattern = p;
  c.target = target;
  c.expected = expected;
  return c;
}

std::vector<Claim> ghz_claims() {
  const auto ps = ghz_patterns();
  return {probability(ps[0], 1.0 / 108), probability(ps[1], 1.0 / 108), total(ps, 1.0 / 54),
          fidelity(ps[0], "ghz+", 1.0), fidelity(ps[1], "ghz-", 1.0)};
}

}  // namespace

std::vector<std::string> builtin_scheme_names() {
  return {"ghz54", "ghz54-blocks", "bell-omega", "bell-omega-prime"};
}

BuiltinScheme builtin_scheme(const std::string& name, int sign) {
  if (name == "ghz54") {
    auto claims = ghz_claims();
    Claim count;
    count.kind = Claim::Kind::ElementCount;
    count.expected = 12;
    count.tolerance = 0.0;
    claims.push_back(count);
    return {name, ghz_scheme(), ghz_problem(false), claims};
  }
  if (name == "ghz54-blocks") {
    auto problem = ghz_problem(false);
    problem.input = ghz_block_input();
    return {name, ghz_scheme_block_form(), problem, ghz_claims()};
  }
  const bool prime = name == "bell-omega-prime";
  if (name == "bell-omega" || prime) {
    if (sign != 1 && sign != -1) throw ValidationError("sign must be +1 or -1");
    const std::string tag = sign > 0 ? "+" : "-";
    const FockState p{1, 1};
    std::vector<Claim> claims = {probability(p, 2.0 / 27)};
    if (prime && sign > 0) {
      claims.push_back(fidelity(p, "psi+", 0.25));
      claims.push_back(fidelity(p, "phi-", 0.75));
    } else {
      claims.push_back(fidelity(p, "psi" + tag, 1.0));
    }
    return {name, bell_scheme(sign, prime ? omega_prime_block() : omega_block()), bell_problem(true), claims};
  }
  throw ValidationError("unknown scheme '" + name + "' (known: ghz54, ghz54-blocks, bell-omega, bell-omega-prime)");
}

}  // namespace heraldic
