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


#include "heraldic/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>

namespace heraldic::io {

namespace {

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& what) {
  if (!j.is_object()) throw ValidationError(what + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ValidationError(what + ": unknown field '" + key + "'");
  }
}

const Json& field(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(what + ": missing field '" + key + "'");
  return j.at(key);
}

template <typename T>
T as(const Json& j, const std::string& what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(what + ": wrong type (" + std::string(j.type_name()) + ")");
  }
}

int as_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) throw ValidationError(what + ": expected an integer");
  return as<int>(j, what);
}

template <typename T>
T optional_field(const Json& j, const char* key, T fallback, const std::string& what) {
  if (!j.contains(key)) return fallback;
  if constexpr (std::is_same_v<T, int>) {
    return as_int(j.at(key), what + "." + key);
  } else if constexpr (std::is_same_v<T, double>) {
    return parse_real(j.at(key), what + "." + key);
  } else {
    return as<T>(j.at(key), what + "." + key);
  }
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ValidationError(what + ": expected a number or [re, im]");
}

int pattern_index(const Json& j, const ProblemSpec& p, const std::string& what) {
  if (j.is_number_integer()) {
    const int a = j.get<int>();
    if (a < 0 || a >= static_cast<int>(p.ancilla_patterns.size())) {
      throw ValidationError(what + ": pattern index " + std::to_string(a) + " out of range");
    }
    return a;
  }
  const FockState s = fock_state_from_json(j);
  for (std::size_t a = 0; a < p.ancilla_patterns.size(); ++a) {
    if (p.ancilla_patterns[a] == s) return static_cast<int>(a);
  }
  throw ValidationError(what + ": pattern " + s.to_string() + " is not in the problem");
}

std::string target_name(const ProblemSpec& p, int t) {
  const auto& label = p.targets[static_cast<std::size_t>(t)].label();
  return label.empty() ? std::to_string(t) : label;
}

}  // namespace

std::optional<std::pair<long, long>> nearest_rational(double x, long max_denominator, double tolerance) {
  if (!std::isfinite(x)) return std::nullopt;
  for (long q = 1; q <= max_denominator; ++q) {
    const double pq = std::round(x * static_cast<double>(q));
    if (std::abs(x - pq / static_cast<double>(q)) <= tolerance) return std::make_pair(static_cast<long>(pq), q);
  }
  return std::nullopt;
}

Json probability(double p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", p);
  Json j{{"value", p}, {"decimal", std::string(buf)}};
  if (const auto r = nearest_rational(p)) {
    j["rational"] = r->second == 1 ? std::to_string(r->first) : std::to_string(r->first) + "/" + std::to_string(r->second);
  }
  return j;
}

double parse_real(const Json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    double num = 0.0, den = 1.0;
    char slash = 0, extra = 0;
    if (std::sscanf(s.c_str(), "%lf %c %lf %c", &num, &slash, &den, &extra) == 3 && slash == '/' && den != 0.0) {
      return num / den;
    }
    if (std::sscanf(s.c_str(), "%lf %c", &num, &extra) == 1) return num;
  }
  throw ValidationError(what + ": expected a number or a \"p/q\" string");
}

Json to_json(const FockState& s) { return s.occupations(); }

FockState fock_state_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("Fock state: expected an array of occupations");
  std::vector<int> occ;
  for (const auto& v : j) occ.push_back(as_int(v, "Fock state"));
  return FockState(std::move(occ));
}

FockState parse_fock_state(const std::string& text) {
  std::string s = text;
  if (!s.empty() && s.front() != '[') s = "[" + s + "]";
  try {
    return fock_state_from_json(Json::parse(s));
  } catch (const nlohmann::json::exception&) {
    throw ValidationError("Fock state: cannot parse '" + text + "'");
  }
}

Json to_json(const TargetState& t) {
  Json terms = Json::array();
  for (const auto& [state, amp] : t.terms()) terms.push_back({{"state", to_json(state)}, {"amplitude", complex_json(amp)}});
  return {{"label", t.label()}, {"terms", terms}};
}

TargetState target_from_json(const Json& j) {
  check_keys(j, {"label", "terms"}, "target");
  std::vector<TargetState::Term> terms;
  const auto& list = field(j, "terms", "target");
  if (!list.is_array()) throw ValidationError("target.terms: expected an array");
  for (const auto& term : list) {
    check_keys(term, {"state", "amplitude"}, "target term");
    terms.emplace_back(fock_state_from_json(field(term, "state", "target term")),
                       complex_from_json(field(term, "amplitude", "target term"), "target term amplitude"));
  }
  double norm2 = 0.0;
  for (const auto& t : terms) norm2 += std::norm(t.second);
  auto label = optional_field<std::string>(j, "label", "", "target");
  // Already-normalized amplitudes are kept bit-for-bit.
  if (std::abs(norm2 - 1.0) <= 1e-12) return TargetState(std::move(terms), std::move(label));
  return TargetState::normalized(std::move(terms), std::move(label));
}

Json to_json(const ProblemSpec& p) {
  Json patterns = Json::array(), targets = Json::array();
  for (const auto& a : p.ancilla_patterns) patterns.push_back(to_json(a));
  for (const auto& t : p.targets) targets.push_back(to_json(t));
  return {{"n_target_modes", p.n_target_modes},
          {"n_ancilla_modes", p.n_ancilla_modes},
          {"input", to_json(p.input)},
          {"ancilla_patterns", patterns},
          {"targets", targets}};
}

ProblemSpec problem_from_json(const Json& j) {
  check_keys(j, {"n_target_modes", "n_ancilla_modes", "input", "ancilla_patterns", "targets"}, "problem");
  ProblemSpec p;
  p.n_target_modes = as_int(field(j, "n_target_modes", "problem"), "problem.n_target_modes");
  p.n_ancilla_modes = as_int(field(j, "n_ancilla_modes", "problem"), "problem.n_ancilla_modes");
  p.input = fock_state_from_json(field(j, "input", "problem"));
  for (const auto& a : field(j, "ancilla_patterns", "problem")) p.ancilla_patterns.push_back(fock_state_from_json(a));
  if (j.contains("targets")) {
    for (const auto& t : j.at("targets")) p.targets.push_back(target_from_json(t));
  }
  p.validate_photon_balance();
  return p;
}

Json to_json(const CircuitSpec& c) {
  Json elements = Json::array(), phases = Json::array();
  for (const auto& e : c.elements) elements.push_back({{"theta", e.theta}, {"phi", e.phi}, {"modes", {e.n, e.m}}});
  for (const auto& z : c.phases) phases.push_back(complex_json(z));
  return {{"dim", c.dim}, {"elements", elements}, {"phases", phases}};
}

CircuitSpec circuit_from_json(const Json& j) {
  check_keys(j, {"dim", "elements", "phases"}, "circuit");
  CircuitSpec c;
  c.dim = as_int(field(j, "dim", "circuit"), "circuit.dim");
  for (const auto& e : field(j, "elements", "circuit")) {
    check_keys(e, {"theta", "phi", "modes"}, "circuit element");
    TwoModeElement el;
    el.theta = parse_real(field(e, "theta", "circuit element"), "circuit element theta");
    el.phi = optional_field<double>(e, "phi", 0.0, "circuit element");
    const auto& modes = field(e, "modes", "circuit element");
    if (!modes.is_array() || modes.size() != 2) throw ValidationError("circuit element modes: expected [n, m]");
    el.n = as_int(modes[0], "circuit element modes");
    el.m = as_int(modes[1], "circuit element modes");
    c.elements.push_back(el);
  }
  if (j.contains("phases")) {
    for (const auto& z : j.at("phases")) c.phases.push_back(complex_from_json(z, "circuit phase"));
  } else {
    c.phases.assign(static_cast<std::size_t>(std::max(c.dim, 0)), Complex(1.0, 0.0));
  }
  c.validate();
  return c;
}

Json unitary_to_json(const CMatrix& u) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < u.cols(); ++c) row.push_back(complex_json(u(r, c)));
    rows.push_back(row);
  }
  return {{"dim", u.rows()}, {"matrix", rows}};
}

CMatrix matrix_from_json(const Json& j) {
  const Json& rows = j.is_object() ? field(j, "matrix", "matrix") : j;
  if (j.is_object()) check_keys(j, {"dim", "matrix"}, "matrix");
  if (!rows.is_array() || rows.empty()) throw ValidationError("matrix: expected a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (j.is_object() && j.contains("dim") && as_int(j.at("dim"), "matrix.dim") != n) {
    throw DimensionError("matrix.dim: " + std::to_string(as_int(j.at("dim"), "matrix.dim")) + " but " +
                         std::to_string(n) + " rows given");
  }
  CMatrix u(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw DimensionError("matrix: row " + std::to_string(r) + " does not have " + std::to_string(n) + " entries");
    }
    for (Eigen::Index c = 0; c < n; ++c) u(r, c) = complex_from_json(row[static_cast<std::size_t>(c)], "matrix entry");
  }
  return u;
}

Json to_json(const HeraldReport& r, const ProblemSpec& p) {
  Json patterns = Json::array();
  for (const auto& hp : r.patterns) {
    Json state = Json::array();
    for (std::size_t k = 0; k < hp.state.size(); ++k) {
      if (std::abs(hp.state[k]) > 1e-12) {
        state.push_back({{"state", to_json(r.target_basis[k])}, {"amplitude", complex_json(hp.state[k])}});
      }
    }
    patterns.push_back({{"pattern", to_json(hp.pattern)}, {"probability", probability(hp.probability)}, {"heralded_state", state}});
  }
  Json overlaps = Json::array();
  for (Eigen::Index t = 0; t < r.overlaps.rows(); ++t) {
    Json values = Json::array();
    for (Eigen::Index a = 0; a < r.overlaps.cols(); ++a) values.push_back(r.overlaps(t, a));
    overlaps.push_back({{"target", t < static_cast<Eigen::Index>(p.targets.size()) ? target_name(p, static_cast<int>(t)) : std::to_string(t)},
                        {"values", values}});
  }
  double total = 0.0;
  for (const auto& hp : r.patterns) total += hp.probability;
  return {{"target_modes", r.target_basis.modes()},
          {"target_photons", r.target_basis.photons()},
          {"patterns", patterns},
          {"total_probability", probability(total)},
          {"overlaps", overlaps}};
}

Json to_json(const Candidate& c, const ProblemSpec& p) {
  Json admissible = Json::array();
  for (int a : c.ancilla_set) {
    const int t = c.matched_targets.at(a);
    admissible.push_back({{"index", a},
                          {"pattern", to_json(p.ancilla_patterns[static_cast<std::size_t>(a)])},
                          {"target", t},
                          {"target_label", target_name(p, t)},
                          {"probability", probability(c.probabilities.at(a))}});
  }
  return {{"restart", c.restart},
          {"seed", c.seed},
          {"objective_value", c.objective_value},
          {"iterations", c.iterations},
          {"rho", c.rho},
          {"total_probability", probability(c.total_probability())},
          {"admissible", admissible},
          {"unitary", unitary_to_json(c.unitary)}};
}

Candidate candidate_from_json(const Json& j, const ProblemSpec& p) {
  check_keys(j, {"restart", "seed", "objective_value", "iterations", "rho", "total_probability", "admissible", "unitary"},
             "candidate");
  Candidate c;
  c.unitary = matrix_from_json(field(j, "unitary", "candidate"));
  if (c.unitary.rows() != p.modes()) {
    throw DimensionError("candidate.unitary: dimension " + std::to_string(c.unitary.rows()) + ", problem has " +
                         std::to_string(p.modes()) + " modes");
  }
  for (const auto& a : field(j, "admissible", "candidate")) {
    const int idx = a.contains("index") ? pattern_index(a.at("index"), p, "candidate.admissible")
                                        : pattern_index(field(a, "pattern", "candidate.admissible"), p, "candidate.admissible");
    const int t = as_int(field(a, "target", "candidate.admissible"), "candidate.admissible.target");
    if (t < 0 || t >= static_cast<int>(p.targets.size())) throw ValidationError("candidate.admissible.target: out of range");
    const Json& prob = field(a, "probability", "candidate.admissible");
    c.ancilla_set.push_back(idx);
    c.matched_targets[idx] = t;
    c.probabilities[idx] = prob.is_object() ? parse_real(field(prob, "value", "probability"), "probability") : parse_real(prob, "probability");
  }
  std::sort(c.ancilla_set.begin(), c.ancilla_set.end());
  c.restart = optional_field<int>(j, "restart", -1, "candidate");
  c.seed = optional_field<std::uint64_t>(j, "seed", 0, "candidate");
  c.objective_value = optional_field<double>(j, "objective_value", 0.0, "candidate");
  c.iterations = optional_field<int>(j, "iterations", 0, "candidate");
  c.rho = optional_field<double>(j, "rho", 0.0, "candidate");
  return c;
}

Json to_json(const Stage1Config& c) {
  Json j{{"problem", to_json(c.spec)},
         {"p", c.p},
         {"sharpening", c.sharpening},
         {"restarts", c.restarts},
         {"master_seed", c.master_seed},
         {"gradient_tolerance", c.gradient_tolerance},
         {"max_iterations", c.max_iterations},
         {"anchor_iterations", c.anchor_iterations},
         {"filter_tolerance", c.filter_tolerance},
         {"improper_overlap", c.improper_overlap}};
  if (c.chart_base) j["chart_base"] = unitary_to_json(*c.chart_base);
  return j;
}

Stage1Config stage1_config_from_json(const Json& j) {
  check_keys(j, {"problem", "p", "sharpening", "restarts", "master_seed", "gradient_tolerance", "max_iterations",
                 "anchor_iterations", "filter_tolerance", "improper_overlap", "chart_base"},
             "search config");
  Stage1Config c;
  c.spec = problem_from_json(field(j, "problem", "search config"));
  c.p = optional_field<int>(j, "p", c.p, "search config");
  if (j.contains("sharpening")) {
    for (const auto& v : j.at("sharpening")) c.sharpening.push_back(as_int(v, "search config.sharpening"));
  }
  c.restarts = optional_field<int>(j, "restarts", c.restarts, "search config");
  if (j.contains("master_seed")) {
    if (!j.at("master_seed").is_number_integer() || j.at("master_seed").is_number_float()) {
      throw ValidationError("search config.master_seed: expected an unsigned integer");
    }
    c.master_seed = j.at("master_seed").get<std::uint64_t>();
  }
  c.gradient_tolerance = optional_field<double>(j, "gradient_tolerance", c.gradient_tolerance, "search config");
  c.max_iterations = optional_field<int>(j, "max_iterations", c.max_iterations, "search config");
  c.anchor_iterations = optional_field<int>(j, "anchor_iterations", c.anchor_iterations, "search config");
  c.filter_tolerance = optional_field<double>(j, "filter_tolerance", c.filter_tolerance, "search config");
  c.improper_overlap = optional_field<double>(j, "improper_overlap", c.improper_overlap, "search config");
  if (j.contains("chart_base")) c.chart_base = matrix_from_json(j.at("chart_base"));
  c.validate();
  return c;
}

Json to_json(const Stage2Config& c) {
  Json floors = Json::array();
  for (const auto& [a, f] : c.probability_floor) floors.push_back({{"pattern", a}, {"floor", f}});
  return {{"cost", {{"epsilon", c.cost.epsilon}, {"delta", c.cost.delta}}},
          {"probability_floor", floors},
          {"constraint_tolerance", c.constraint_tolerance},
          {"penalty_schedule", c.penalty_schedule},
          {"max_outer_iterations", c.max_outer_iterations},
          {"max_inner_iterations", c.max_inner_iterations},
          {"snap_tolerance", c.snap_tolerance}};
}

Stage2Config stage2_config_from_json(const Json& j, const ProblemSpec& p, const std::vector<int>& admissible) {
  check_keys(j, {"cost", "probability_floor", "constraint_tolerance", "penalty_schedule", "max_outer_iterations",
                 "max_inner_iterations", "snap_tolerance"},
             "refine config");
  Stage2Config c;
  if (j.contains("cost")) {
    check_keys(j.at("cost"), {"epsilon", "delta"}, "refine config.cost");
    c.cost.epsilon = optional_field<double>(j.at("cost"), "epsilon", c.cost.epsilon, "refine config.cost");
    c.cost.delta = optional_field<double>(j.at("cost"), "delta", c.cost.delta, "refine config.cost");
  }
  if (j.contains("probability_floor")) {
    const Json& f = j.at("probability_floor");
    if (f.is_number() || f.is_string()) {
      const double v = parse_real(f, "refine config.probability_floor");
      for (int a : admissible) c.probability_floor[a] = v;
    } else if (f.is_array()) {
      for (const auto& e : f) {
        check_keys(e, {"pattern", "floor"}, "refine config.probability_floor");
        const int a = pattern_index(field(e, "pattern", "refine config.probability_floor"), p, "refine config.probability_floor");
        c.probability_floor[a] = parse_real(field(e, "floor", "refine config.probability_floor"), "refine config.probability_floor");
      }
    } else {
      throw ValidationError("refine config.probability_floor: expected a number or a list");
    }
  }
  c.constraint_tolerance = optional_field<double>(j, "constraint_tolerance", c.constraint_tolerance, "refine config");
  if (j.contains("penalty_schedule")) {
    c.penalty_schedule.clear();
    for (const auto& v : j.at("penalty_schedule")) c.penalty_schedule.push_back(parse_real(v, "refine config.penalty_schedule"));
  }
  c.max_outer_iterations = optional_field<int>(j, "max_outer_iterations", c.max_outer_iterations, "refine config");
  c.max_inner_iterations = optional_field<int>(j, "max_inner_iterations", c.max_inner_iterations, "refine config");
  c.snap_tolerance = optional_field<double>(j, "snap_tolerance", c.snap_tolerance, "refine config");
  c.validate();
  return c;
}

Json to_json(const Stage2Result& r, const ProblemSpec& p) {
  Json residuals = Json::array();
  for (const auto& res : r.residuals) {
    Json e{{"kind", res.kind},
           {"pattern", to_json(p.ancilla_patterns[static_cast<std::size_t>(res.pattern)])},
           {"value", res.value},
           {"bound", res.bound},
           {"violation", res.violation},
           {"satisfied", res.satisfied}};
    if (res.target >= 0) e["target"] = target_name(p, res.target);
    residuals.push_back(e);
  }
  return {{"status", r.status},
          {"feasible", r.feasible},
          {"cost", r.cost},
          {"initial_cost", r.initial_cost},
          {"nontrivial_elements", r.nontrivial},
          {"initial_nontrivial_elements", r.initial_nontrivial},
          {"outer_iterations", r.outer_iterations},
          {"violation_history", r.violation_history},
          {"residuals", residuals},
          {"circuit", to_json(r.circuit)}};
}

Json to_json(const Claim& c) {
  Json j{{"type", to_string(c.kind)}, {"expected", c.expected}, {"tolerance", c.tolerance}};
  if (c.pattern) j["pattern"] = to_json(*c.pattern);
  if (!c.patterns.empty()) {
    Json ps = Json::array();
    for (const auto& s : c.patterns) ps.push_back(to_json(s));
    j["patterns"] = ps;
  }
  if (c.target) j["target"] = *c.target;
  return j;
}

Claim claim_from_json(const Json& j) {
  check_keys(j, {"type", "pattern", "patterns", "target", "expected", "tolerance"}, "claim");
  Claim c;
  const auto type = as<std::string>(field(j, "type", "claim"), "claim.type");
  if (type == "pattern_probability") {
    c.kind = Claim::Kind::PatternProbability;
  } else if (type == "total_probability") {
    c.kind = Claim::Kind::TotalProbability;
  } else if (type == "heralded_fidelity") {
    c.kind = Claim::Kind::HeraldedFidelity;
  } else if (type == "element_count") {
    c.kind = Claim::Kind::ElementCount;
  } else {
    throw ValidationError("claim.type: unknown type '" + type + "'");
  }
  if (j.contains("pattern")) c.pattern = fock_state_from_json(j.at("pattern"));
  if (j.contains("patterns")) {
    for (const auto& s : j.at("patterns")) c.patterns.push_back(fock_state_from_json(s));
  }
  if (j.contains("target")) {
    const Json& t = j.at("target");
    if (t.is_number_integer()) {
      c.target = std::to_string(t.get<long>());
    } else if (t.is_string()) {
      c.target = t.get<std::string>();
    } else {
      throw ValidationError("claim.target: expected a label or an index");
    }
  }
  c.expected = parse_real(field(j, "expected", "claim"), "claim.expected");
  c.tolerance = optional_field<double>(j, "tolerance", c.tolerance, "claim");
  return c;
}

std::vector<Claim> claims_from_json(const Json& j) {
  const Json& list = j.is_object() ? field(j, "claims", "claims file") : j;
  if (!list.is_array()) throw ValidationError("claims file: expected an array of claims");
  std::vector<Claim> claims;
  for (const auto& c : list) claims.push_back(claim_from_json(c));
  return claims;
}

Json to_json(const VerificationReport& r) {
  Json claims = Json::array();
  for (const auto& cr : r.results) {
    Json e = to_json(cr.claim);
    e["description"] = cr.description;
    e["measured"] = cr.claim.kind == Claim::Kind::ElementCount || cr.claim.kind == Claim::Kind::HeraldedFidelity
                        ? Json(cr.measured)
                        : probability(cr.measured);
    e["pass"] = cr.pass;
    claims.push_back(e);
  }
  return {{"passed", r.passed()},
          {"claims", claims},
          {"nontrivial_elements", r.nontrivial_elements},
          {"problem", to_json(r.problem)},
          {"herald", to_json(r.herald, r.problem)}};
}

Json to_json(const RunManifest& m) {
  return {{"command", m.command},
          {"config_digest", m.config_digest},
          {"master_seed", m.master_seed},
          {"artifact_version", m.artifact_version},
          {"timings", m.timings}};
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_digest(const Json& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(config.dump())));
  return buf;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path + ": malformed JSON (" + e.what() + ")");
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError(path + ": cannot write");
  out << text;
  if (!out) throw ValidationError(path + ": write failed");
}

}  // namespace heraldic::io
