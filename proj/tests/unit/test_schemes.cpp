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
#include <numbers>

#include "doctest.h"
#include "heraldic/random.hpp"
#include "heraldic/schemes.hpp"

using namespace heraldic;

namespace {

const FockState kP1110{1, 1, 1, 0};
const FockState kP1101{1, 1, 0, 1};

double overlap_of(const HeraldReport& r, const ProblemSpec& p, const std::string& label, std::size_t pattern) {
  for (std::size_t t = 0; t < p.targets.size(); ++t) {
    if (p.targets[t].label() == label) {
      return r.overlaps(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(pattern));
    }
  }
  FAIL("no target " << label);
  return 0.0;
}

}  // namespace

TEST_CASE("ghz scheme probabilities and states") {
  const CircuitSpec spec = ghz_scheme();
  CHECK(count_nontrivial(spec) == 12);
  const CMatrix u = compose(spec);
  CHECK(unitarity_defect(u) < 1e-12);
  const ProblemSpec problem = ghz_problem(false);
  const auto report = herald_analysis(u, problem);
  CHECK(std::abs(report.patterns[0].probability - 1.0 / 108) < 1e-12);
  CHECK(std::abs(report.patterns[1].probability - 1.0 / 108) < 1e-12);
  CHECK(std::abs(report.overlaps(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(report.overlaps(1, 1) - 1.0) < 1e-12);
  CHECK(report.overlaps(1, 0) < 1e-12);
  CHECK(report.overlaps(0, 1) < 1e-12);

  const Complex amp = transition_amplitude(u, ghz_input(), FockState{1, 0, 1, 0, 1, 0, 1, 1, 1, 0});
  CHECK(std::abs(std::norm(amp) - 1.0 / 216) < 1e-12);
}

TEST_CASE("ghz non-heralding patterns stay improper") {
  const auto report = herald_analysis(compose(ghz_scheme()), ghz_problem(true));
  REQUIRE(report.patterns.size() == 4);
  for (std::size_t a = 2; a < 4; ++a) {
    CHECK(report.patterns[a].probability > 1e-3);
    CHECK(report.overlaps.col(static_cast<Eigen::Index>(a)).maxCoeff() < 0.5);
  }
  CHECK(report.overlaps.col(0).maxCoeff() > 1.0 - 1e-12);
  CHECK(report.overlaps.col(1).maxCoeff() > 1.0 - 1e-12);
}

TEST_CASE("ghz block form matches") {
  const CMatrix top = ghz_top_block();
  const CMatrix bottom = ghz_bottom_block();
  CHECK((top.adjoint() * top - CMatrix::Identity(5, 5)).norm() < 1e-12);
  CHECK((bottom.adjoint() * bottom - CMatrix::Identity(5, 5)).norm() < 1e-12);

  auto problem = ghz_problem(true);
  const auto a = herald_analysis(compose(ghz_scheme()), problem);
  problem.input = ghz_block_input();
  const auto b = herald_analysis(compose(ghz_scheme_block_form()), problem);
  for (std::size_t k = 0; k < a.patterns.size(); ++k) {
    CHECK(std::abs(a.patterns[k].probability - b.patterns[k].probability) < 1e-12);
    const Eigen::Index ki = static_cast<Eigen::Index>(k);
    CHECK((a.overlaps.col(ki) - b.overlaps.col(ki)).cwiseAbs().maxCoeff() < 1e-12);
    Complex inner = 0.0;
    for (std::size_t m = 0; m < a.patterns[k].state.size(); ++m) {
      inner += std::conj(a.patterns[k].state[m]) * b.patterns[k].state[m];
    }
    CHECK(std::abs(std::norm(inner) - 1.0) < 1e-12);
  }
}

TEST_CASE("ghz mixed-sign monomials vanish") {
  // Undo the two output splitters; the measured modes then carry A+-.
  CMatrix u = compose(ghz_scheme());
  const double q = std::numbers::pi / 4;
  u = element_matrix({q, 0.0, 6, 7}, 10).adjoint() * u;
  u = element_matrix({q, 0.0, 8, 9}, 10).adjoint() * u;
  ProblemSpec p = ghz_problem(false);
  p.ancilla_patterns = {FockState{2, 0, 0, 1}, FockState{0, 2, 1, 0}, FockState{2, 0, 1, 0},
                        FockState{0, 2, 0, 1}};
  const auto r = herald_analysis(u, p);
  CHECK(r.patterns[0].probability < 1e-18);
  CHECK(r.patterns[1].probability < 1e-18);
  CHECK(r.patterns[2].probability > 1e-3);
  CHECK(r.patterns[3].probability > 1e-3);
}

TEST_CASE("ghz target family") {
  const auto targets = ghz_targets();
  CHECK(targets.size() == 20);
  bool found = false;
  for (const auto& t : targets) {
    CHECK(t.photons() == 3);
    CHECK(t.modes() == 6);
    double n = 0.0;
    for (const auto& [s, a] : t.terms()) n += std::norm(a);
    CHECK(std::abs(n - 1.0) < 1e-14);
    if (t.terms()[0].first == FockState{1, 0, 0, 1, 1, 0} && t.terms()[1].first == FockState{0, 1, 1, 0, 0, 1} &&
        std::abs(t.terms()[1].second - t.terms()[0].second) < 1e-15) {
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("omega blocks") {
  const CMatrix om = omega_block();
  const CMatrix omp = omega_prime_block();
  CHECK(unitarity_defect(om) < 1e-15);
  CHECK(unitarity_defect(omp) < 1e-15);
  CHECK(std::abs(omp(0, 0) - 1 / std::sqrt(2.0)) < 1e-16);
  CHECK(std::abs(omp(0, 1) + 1 / std::sqrt(2.0)) < 1e-16);
  CHECK(std::abs(omp(0, 2)) == 0.0);

  const CMatrix r = om * omp.adjoint();
  const CircuitSpec rs = clements_decompose(r);
  CHECK(count_nontrivial(rs) == 1);
  for (const auto& e : rs.elements) {
    if (std::min(e.theta, std::numbers::pi / 2 - e.theta) > 1e-6) {
      CHECK(std::abs(e.theta - std::numbers::pi / 6) < 1e-12);
    }
  }

  const auto c = omega_coefficients(om);
  CHECK(std::abs(c.alpha - 1 / std::sqrt(3.0)) < 1e-15);
  CHECK(std::abs(c.A - 1.0 / 6) < 1e-15);
  CHECK(std::abs(c.beta[0] + std::sqrt(2.0 / 3.0)) < 1e-15);
  CHECK(std::abs(c.beta[1]) < 1e-15);
  // B = a~0 / (3 sqrt 2), a~0 = a0/2 + a1 sqrt(3)/2.
  const double k = 1 / (3 * std::sqrt(2.0));
  CHECK(std::abs(c.B[0] - k * 0.5) < 1e-15);
  CHECK(std::abs(c.B[1] - k * std::sqrt(3.0) / 2) < 1e-15);
  // C = a~0^2 / 3 and D = a~0 a~1 / 3 with a~1 = a1/2 - a0 sqrt(3)/2.
  const double h = 0.5, s = std::sqrt(3.0) / 2;
  CHECK(std::abs(c.C[0] - h * h / 3) < 1e-15);
  CHECK(std::abs(c.C[1] - 2 * h * s / 3) < 1e-15);
  CHECK(std::abs(c.C[2] - s * s / 3) < 1e-15);
  CHECK(std::abs(c.D[0] - (h * -s) / 3) < 1e-15);
  CHECK(std::abs(c.D[1] - (h * h - s * s) / 3) < 1e-15);
  CHECK(std::abs(c.D[2] - (s * h) / 3) < 1e-15);

  const auto id = omega_coefficients(CMatrix::Identity(3, 3));
  CHECK(std::abs(id.alpha) == 0.0);
  CHECK(id.beta[0] == Complex(1.0));
  CHECK(std::abs(id.A) == 0.0);
  CHECK(id.C[2] == Complex(0.5));
  CHECK_THROWS_AS(omega_coefficients(2.0 * CMatrix::Identity(3, 3)), NotUnitaryError);
}

TEST_CASE("omega coefficients reconstruct the block action") {
  // Oracle: Fock amplitudes of the block acting on |1,0,0> and |0,2,0>, and
  // on |1,2,0> for the w2-linear term. A monomial prod w^n / sqrt(n!) has
  // coefficient amp / sqrt(prod n!).
  auto coeff = [](const CMatrix& u, const FockState& in, const FockState& out, double in_norm) {
    double f = 1.0;
    for (int n : out.occupations()) f *= std::tgamma(n + 1.0);
    return transition_amplitude(u, in, out) / std::sqrt(f) * in_norm;
  };
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const CMatrix u = haar_random_unitary(3, seed);
    const auto c = omega_coefficients(u);
    const double tol = 1e-12;
    CHECK(std::abs(coeff(u, {1, 0, 0}, {0, 0, 1}, 1.0) - c.alpha) < tol);
    CHECK(std::abs(coeff(u, {1, 0, 0}, {1, 0, 0}, 1.0) - c.beta[0]) < tol);
    CHECK(std::abs(coeff(u, {1, 0, 0}, {0, 1, 0}, 1.0) - c.beta[1]) < tol);
    // w1^2/2 = |0,2,0> / sqrt(2).
    const double h = 1 / std::sqrt(2.0);
    CHECK(std::abs(coeff(u, {0, 2, 0}, {0, 0, 2}, h) - c.A) < tol);
    CHECK(std::abs(coeff(u, {0, 2, 0}, {1, 0, 1}, h) - 2.0 * c.B[0]) < tol);
    CHECK(std::abs(coeff(u, {0, 2, 0}, {0, 1, 1}, h) - 2.0 * c.B[1]) < tol);
    CHECK(std::abs(coeff(u, {0, 2, 0}, {2, 0, 0}, h) - c.C[0]) < tol);
    CHECK(std::abs(coeff(u, {0, 2, 0}, {1, 1, 0}, h) - c.C[1]) < tol);
    CHECK(std::abs(coeff(u, {0, 2, 0}, {0, 2, 0}, h) - c.C[2]) < tol);
    // w0 w1^2/2 = |1,2,0> / sqrt(2).
    CHECK(std::abs(coeff(u, {1, 2, 0}, {2, 0, 1}, h) - c.D[0]) < tol);
    CHECK(std::abs(coeff(u, {1, 2, 0}, {1, 1, 1}, h) - c.D[1]) < tol);
    CHECK(std::abs(coeff(u, {1, 2, 0}, {0, 2, 1}, h) - c.D[2]) < tol);
  }
}

TEST_CASE("bell targets") {
  const auto bt = bell_targets();
  REQUIRE(bt.size() == 6);
  const double r = 1 / std::sqrt(2.0);
  auto find = [&](const std::string& l) {
    for (const auto& b : bt)
      if (b.label == l) return b.state;
    FAIL("missing " << l);
    return bt[0].state;
  };
  const auto psip = find("psi+");
  REQUIRE(psip.terms().size() == 2);
  CHECK(psip.terms()[0].first == FockState{1, 0, 0, 1});
  CHECK(std::abs(psip.terms()[0].second - r) < 1e-15);
  CHECK(psip.terms()[1].first == FockState{0, 1, 1, 0});
  CHECK(std::abs(psip.terms()[1].second - r) < 1e-15);
  const auto chim = find("chi-");
  CHECK(chim.terms()[0].first == FockState{1, 1, 0, 0});
  CHECK(chim.terms()[1].first == FockState{0, 0, 1, 1});
  CHECK(std::abs(chim.terms()[1].second + r) < 1e-15);

  FockBasis basis(4, 2);
  for (std::size_t i = 0; i < bt.size(); ++i) {
    std::vector<Complex> v(basis.size());
    for (const auto& [s, a] : bt[i].state.terms()) v[static_cast<std::size_t>(basis.index_of(s))] = a;
    for (std::size_t j = 0; j < bt.size(); ++j) {
      const double f = state_fidelity(basis, v, bt[j].state);
      CHECK(std::abs(f - (i == j ? 1.0 : 0.0)) < 1e-14);
    }
  }
}

TEST_CASE("bell schemes") {
  const ProblemSpec problem = bell_problem(false);
  for (int s : {1, -1}) {
    const auto r = herald_analysis(compose(bell_scheme(s, omega_block())), problem);
    CHECK(std::abs(r.patterns[0].probability - 2.0 / 27) < 1e-12);
    CHECK(std::abs(overlap_of(r, problem, s > 0 ? "psi+" : "psi-", 0) - 1.0) < 1e-12);
  }
  const auto rp = herald_analysis(compose(bell_scheme(1, omega_prime_block())), problem);
  CHECK(std::abs(rp.patterns[0].probability - 2.0 / 27) < 1e-12);
  CHECK(std::abs(overlap_of(rp, problem, "psi+", 0) - 0.25) < 1e-12);
  CHECK(std::abs(overlap_of(rp, problem, "phi-", 0) - 0.75) < 1e-12);
  const auto rm = herald_analysis(compose(bell_scheme(-1, omega_prime_block())), problem);
  CHECK(std::abs(overlap_of(rm, problem, "psi-", 0) - 1.0) < 1e-12);
  CHECK_THROWS_AS(bell_scheme(0, omega_block()), ValidationError);
}

TEST_CASE("builtin schemes verify") {
  for (const auto& name : builtin_scheme_names()) {
    for (int s : {1, -1}) {
      const auto scheme = builtin_scheme(name, s);
      const auto report = verify_scheme(scheme.circuit, scheme.problem, scheme.claims);
      CHECK_MESSAGE(report.passed(), name << " s=" << s);
      CHECK(report.results.size() == scheme.claims.size());
    }
  }
  CHECK_THROWS_AS(builtin_scheme("nosuch"), ValidationError);
}

TEST_CASE("verify reports failures and rejects malformed claims") {
  const auto scheme = builtin_scheme("ghz54");
  Claim wrong;
  wrong.kind = Claim::Kind::PatternProbability;
  wrong.pattern = kP1110;
  wrong.expected = 0.5;
  const auto report = verify_scheme(scheme.circuit, scheme.problem, {wrong});
  REQUIRE(report.results.size() == 1);
  CHECK(!report.passed());
  CHECK(std::abs(report.results[0].measured - 1.0 / 108) < 1e-12);

  CHECK(verify_scheme(scheme.circuit, scheme.problem, {}).passed());

  Claim bad = wrong;
  bad.pattern = FockState{1, 1, 1};
  CHECK_THROWS_AS(verify_scheme(scheme.circuit, scheme.problem, {bad}), ValidationError);
  bad.pattern = FockState{1, 1, 1, 1};
  CHECK_THROWS_AS(verify_scheme(scheme.circuit, scheme.problem, {bad}), ValidationError);
  Claim fid;
  fid.kind = Claim::Kind::HeraldedFidelity;
  fid.pattern = kP1101;
  fid.target = "nosuch";
  CHECK_THROWS_AS(verify_scheme(scheme.circuit, scheme.problem, {fid}), ValidationError);
  fid.target = "1";
  fid.expected = 1.0;
  CHECK(verify_scheme(scheme.circuit, scheme.problem, {fid}).passed());

  // A pattern outside the problem's list is simulated on demand.
  Claim extra = wrong;
  extra.pattern = FockState{1, 0, 1, 1};
  extra.expected = 0.0;
  extra.tolerance = 1.0;
  const auto r2 = verify_scheme(scheme.circuit, scheme.problem, {extra});
  CHECK(r2.results[0].measured > 1e-3);
}

TEST_CASE("rotated bell basis is orthonormal") {
  const auto rt = rotated_bell_targets();
  FockBasis basis(4, 2);
  for (std::size_t i = 0; i < rt.size(); ++i) {
    std::vector<Complex> v(basis.size());
    for (const auto& [s, a] : rt[i].state.terms()) v[static_cast<std::size_t>(basis.index_of(s))] = a;
    for (std::size_t j = 0; j < rt.size(); ++j) {
      CHECK(std::abs(state_fidelity(basis, v, rt[j].state) - (i == j ? 1.0 : 0.0)) < 1e-12);
    }
  }
}
