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


#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <ostream>
#include <thread>

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "heraldic/io.hpp"

namespace heraldic::cli {

namespace {

using io::Json;

class Infeasible : public Error {
 public:
  using Error::Error;
};

class ClaimsFailed : public Error {
 public:
  using Error::Error;
};

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

struct Context {
  std::ostream& out;
  std::shared_ptr<spdlog::logger> log;
  std::string out_path;
  std::string format = "json";
};

io::RunManifest manifest(const std::string& command, const Json& config, std::uint64_t seed) {
  io::RunManifest m;
  m.command = command;
  m.config_digest = io::config_digest(config);
  m.master_seed = seed;
  m.artifact_version = HERALDIC_VERSION;
  return m;
}

void emit(Context& ctx, const Json& doc) {
  const std::string text = doc.dump(2) + "\n";
  if (ctx.out_path.empty()) {
    ctx.out << text;
  } else {
    io::write_text_file(ctx.out_path, text);
    ctx.log->info("wrote {}", ctx.out_path);
  }
}

/// Candidate files hold a problem plus either "candidates" (search output) or one "candidate".
std::pair<ProblemSpec, std::vector<Candidate>> load_candidates(const std::string& path) {
  const Json j = io::read_json_file(path);
  if (!j.is_object()) throw ValidationError(path + ": expected a JSON object");
  if (!j.contains("problem")) throw ValidationError(path + ": missing field 'problem'");
  ProblemSpec problem = io::problem_from_json(j.at("problem"));
  std::vector<Candidate> out;
  if (j.contains("candidates")) {
    for (const auto& c : j.at("candidates")) out.push_back(io::candidate_from_json(c, problem));
  } else if (j.contains("candidate")) {
    out.push_back(io::candidate_from_json(j.at("candidate"), problem));
  } else {
    throw ValidationError(path + ": no 'candidates' or 'candidate' field");
  }
  return {problem, out};
}

Json search_statistics(const Stage1Result& r) {
  std::map<std::string, int> verdicts;
  for (const auto& run : r.runs) ++verdicts[run.verdict];
  const int restarts = static_cast<int>(r.runs.size());
  const int accepted = static_cast<int>(r.candidates.size());
  constexpr int kBins = 20;
  constexpr double kWidth = 0.1;
  std::vector<int> counts(kBins, 0);
  double mean = 0.0, sq = 0.0;
  for (const auto& c : r.candidates) {
    const int bin = std::clamp(static_cast<int>(std::floor(c.rho / kWidth)), 0, kBins - 1);
    ++counts[static_cast<std::size_t>(bin)];
    mean += c.rho;
    sq += c.rho * c.rho;
  }
  Json stats{{"restarts", restarts},
             {"accepted", accepted},
             {"acceptance_rate", restarts > 0 ? static_cast<double>(accepted) / restarts : 0.0},
             {"verdicts", verdicts}};
  std::vector<double> edges;
  for (int k = 0; k <= kBins; ++k) edges.push_back(static_cast<double>(k) / 10.0);
  Json rho{{"bin_edges", edges}, {"counts", counts}};
  if (accepted > 0) {
    mean /= accepted;
    rho["mean"] = mean;
    rho["std"] = std::sqrt(std::max(0.0, sq / accepted - mean * mean));
  }
  stats["rho_histogram"] = rho;
  if (accepted > 0) stats["best_total_probability"] = io::probability(r.candidates.front().total_probability());
  return stats;
}

/// The scheme's problem cut down to the patterns and targets of its unit-fidelity claims.
ProblemSpec candidate_problem(const BuiltinScheme& scheme) {
  ProblemSpec p = scheme.problem;
  p.ancilla_patterns.clear();
  p.targets.clear();
  for (const auto& c : scheme.claims) {
    if (c.kind != Claim::Kind::HeraldedFidelity || c.expected < 1 - 1e-9 || !c.pattern || !c.target) continue;
    if (std::find(p.ancilla_patterns.begin(), p.ancilla_patterns.end(), *c.pattern) == p.ancilla_patterns.end()) {
      p.ancilla_patterns.push_back(*c.pattern);
    }
    for (std::size_t t = 0; t < scheme.problem.targets.size(); ++t) {
      const auto& target = scheme.problem.targets[t];
      if (target.label() == *c.target || std::to_string(t) == *c.target) {
        const bool seen = std::any_of(p.targets.begin(), p.targets.end(),
                                      [&](const TargetState& x) { return x.label() == target.label(); });
        if (!seen) p.targets.push_back(target);
      }
    }
  }
  if (p.ancilla_patterns.empty()) throw ValidationError("verify: " + scheme.name + " has no unit-fidelity heralding claim to export");
  return p;
}

// --- commands ---------------------------------------------------------------

struct VerifyArgs {
  std::string scheme;
  int sign = 1;
  std::string claims;
  std::string export_circuit;
  std::string export_candidate;
};

int cmd_verify(Context& ctx, const VerifyArgs& a) {
  Stopwatch sw;
  BuiltinScheme scheme = builtin_scheme(a.scheme, a.sign);
  if (!a.claims.empty()) scheme.claims = io::claims_from_json(io::read_json_file(a.claims));
  Json claims = Json::array();
  for (const auto& c : scheme.claims) claims.push_back(io::to_json(c));
  const Json config{{"scheme", a.scheme}, {"sign", a.sign}, {"claims", claims}};
  auto m = manifest("verify", config, 0);
  const VerificationReport report = verify_scheme(scheme.circuit, scheme.problem, scheme.claims);
  m.timings["verify"] = sw.lap();
  if (!a.export_circuit.empty()) io::write_text_file(a.export_circuit, io::to_json(scheme.circuit).dump(2) + "\n");
  if (!a.export_candidate.empty()) {
    const ProblemSpec problem = candidate_problem(scheme);
    std::string verdict;
    const auto cand = classify_point(compose(scheme.circuit), problem, 1e-6, 0.5, &verdict);
    if (!cand) throw ValidationError("verify: scheme unitary does not pass the candidate filter (" + verdict + ")");
    const Json doc{{"problem", io::to_json(problem)}, {"candidates", Json::array({io::to_json(*cand, problem)})}};
    io::write_text_file(a.export_candidate, doc.dump(2) + "\n");
  }
  for (const auto& r : report.results) {
    ctx.log->info("{} {}: measured {:.15g}, expected {:.15g}", r.pass ? "PASS" : "FAIL", r.description, r.measured,
                  r.claim.expected);
  }
  emit(ctx, {{"manifest", io::to_json(m)}, {"scheme", a.scheme}, {"sign", a.sign}, {"report", io::to_json(report)}});
  if (!report.passed()) throw ClaimsFailed("verify: " + a.scheme + " failed at least one claim");
  return kSuccess;
}

struct SimulateArgs {
  std::string circuit;
  std::string input;
  std::string patterns;
  std::string targets;
};

int cmd_simulate(Context& ctx, const SimulateArgs& a) {
  Stopwatch sw;
  const Json cj = io::read_json_file(a.circuit);
  CMatrix u;
  if (cj.is_object() && cj.contains("elements")) {
    u = compose(io::circuit_from_json(cj));
  } else {
    u = io::matrix_from_json(cj);
    require_unitary(u, kUnitarityTolerance, "simulate: " + a.circuit);
  }
  ProblemSpec problem;
  problem.input = io::parse_fock_state(a.input);
  const Json pj = io::read_json_file(a.patterns);
  if (!pj.is_array()) throw ValidationError(a.patterns + ": expected an array of ancilla patterns");
  for (const auto& p : pj) problem.ancilla_patterns.push_back(io::fock_state_from_json(p));
  if (problem.ancilla_patterns.empty()) problem.ancilla_patterns.push_back(FockState(std::vector<int>{}));
  problem.n_ancilla_modes = problem.ancilla_patterns.front().modes();
  problem.n_target_modes = static_cast<int>(u.rows()) - problem.n_ancilla_modes;
  if (problem.input.modes() != u.rows()) {
    throw DimensionError("input: " + std::to_string(problem.input.modes()) + " modes, circuit has " +
                         std::to_string(u.rows()));
  }
  if (problem.n_target_modes < 1) {
    throw DimensionError("patterns: " + std::to_string(problem.n_ancilla_modes) + " ancilla modes leave no target modes in a " +
                         std::to_string(u.rows()) + "-mode circuit");
  }
  if (!a.targets.empty()) {
    const Json tj = io::read_json_file(a.targets);
    if (!tj.is_array()) throw ValidationError(a.targets + ": expected an array of targets");
    for (const auto& t : tj) problem.targets.push_back(io::target_from_json(t));
  }
  problem.validate();
  const Json config{{"circuit", cj}, {"problem", io::to_json(problem)}};
  auto m = manifest("simulate", config, 0);
  const HeraldReport report = herald_analysis(u, problem);
  m.timings["simulate"] = sw.lap();
  emit(ctx, {{"manifest", io::to_json(m)}, {"problem", io::to_json(problem)}, {"report", io::to_json(report, problem)}});
  return kSuccess;
}

struct SearchArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> p;
  int workers = 0;
};

int cmd_search(Context& ctx, const SearchArgs& a) {
  Stopwatch sw;
  const Json cj = io::read_json_file(a.config);
  Stage1Config cfg = io::stage1_config_from_json(cj);
  if (a.seed) cfg.master_seed = *a.seed;
  if (a.p) cfg.p = *a.p;
  cfg.validate();
  cfg.spec.validate_photon_balance();
  const Json resolved = io::to_json(cfg);
  auto m = manifest("search", resolved, cfg.master_seed);
  m.timings["setup"] = sw.lap();
  const int workers = a.workers > 0 ? a.workers : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  ctx.log->info("search: {} restarts, seed {}, {} workers", cfg.restarts, cfg.master_seed, workers);
  const Stage1Result r = stage1_search(cfg, workers);
  m.timings["search"] = sw.lap();
  Json candidates = Json::array(), runs = Json::array();
  for (const auto& c : r.candidates) candidates.push_back(io::to_json(c, cfg.spec));
  for (const auto& run : r.runs) {
    runs.push_back({{"restart", run.restart},
                    {"seed", run.seed},
                    {"verdict", run.verdict},
                    {"objective_value", run.objective_value},
                    {"iterations", run.iterations},
                    {"rho", run.rho}});
  }
  ctx.log->info("search: {} of {} restarts accepted", r.candidates.size(), r.runs.size());
  emit(ctx, {{"manifest", io::to_json(m)},
             {"config", resolved},
             {"problem", io::to_json(cfg.spec)},
             {"statistics", search_statistics(r)},
             {"candidates", candidates},
             {"runs", runs}});
  return kSuccess;
}

struct RefineArgs {
  std::string candidates;
  std::string config;
  std::string initial;
  int index = 0;
};

int cmd_refine(Context& ctx, const RefineArgs& a) {
  Stopwatch sw;
  auto [problem, candidates] = load_candidates(a.candidates);
  if (a.index < 0 || a.index >= static_cast<int>(candidates.size())) {
    throw ValidationError("refine: candidate index " + std::to_string(a.index) + " out of range (file has " +
                          std::to_string(candidates.size()) + ")");
  }
  const Candidate& cand = candidates[static_cast<std::size_t>(a.index)];
  const Json cj = a.config.empty() ? Json::object() : io::read_json_file(a.config);
  const Stage2Config cfg = io::stage2_config_from_json(cj, problem, cand.ancilla_set);
  std::optional<CircuitSpec> initial;
  if (!a.initial.empty()) initial = io::circuit_from_json(io::read_json_file(a.initial));
  Json resolved{{"config", io::to_json(cfg)}, {"candidate", io::to_json(cand, problem)}};
  if (initial) resolved["initial"] = io::to_json(*initial);
  auto m = manifest("refine", resolved, cand.seed);
  m.timings["setup"] = sw.lap();
  const Stage2Result r = stage2_refine(cand, problem, cfg, initial);
  m.timings["refine"] = sw.lap();
  ctx.log->info("refine: {} -> {} nontrivial elements, cost {:.6g} -> {:.6g}, {}", r.initial_nontrivial, r.nontrivial,
                r.initial_cost, r.cost, r.status);
  emit(ctx, {{"manifest", io::to_json(m)},
             {"candidate_index", a.index},
             {"config", io::to_json(cfg)},
             {"result", io::to_json(r, problem)}});
  if (!r.feasible) {
    for (const auto& res : r.residuals) {
      if (!res.satisfied) {
        ctx.log->error("refine: {} constraint on pattern {} violated by {:.3g}", res.kind,
                       problem.ancilla_patterns[static_cast<std::size_t>(res.pattern)].to_string(), res.violation);
      }
    }
    throw Infeasible("refine: constraints could not be met");
  }
  return kSuccess;
}

int cmd_decompose(Context& ctx, const std::string& path) {
  Stopwatch sw;
  const Json mj = io::read_json_file(path);
  const CMatrix u = io::matrix_from_json(mj);
  require_unitary(u, kUnitarityTolerance, "decompose: " + path);
  auto m = manifest("decompose", io::unitary_to_json(u), 0);
  const CircuitSpec spec = clements_decompose(u);
  const double residual = (u - compose(spec)).norm();
  m.timings["decompose"] = sw.lap();
  emit(ctx, {{"manifest", io::to_json(m)},
             {"circuit", io::to_json(spec)},
             {"nontrivial_elements", count_nontrivial(spec)},
             {"residual", residual}});
  return kSuccess;
}

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto log = std::make_shared<spdlog::logger>("heraldic", sink);
  log->set_pattern("[%l] %v");
  log->set_level(spdlog::level::warn);
  if (const char* env = std::getenv("HERALDIC_LOG")) log->set_level(spdlog::level::from_str(env));
  return log;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx{out, make_logger(err), {}};
  CLI::App app{"Heralded linear-optical scheme toolkit", "heraldic"};
  app.set_version_flag("--version", std::string(HERALDIC_VERSION));
  app.require_subcommand(1);
  app.add_option("--out", ctx.out_path, "Write the JSON document to this file");
  app.add_option("--format", ctx.format, "Output format")->check(CLI::IsMember({"json"}));

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check a built-in scheme against its published numbers");
  verify->add_option("scheme", va.scheme, "ghz54 | ghz54-blocks | bell-omega | bell-omega-prime")->required();
  verify->add_option("--sign", va.sign, "Bell scheme sign s")->check(CLI::IsMember({-1, 1}));
  verify->add_option("--claims", va.claims, "JSON claim file replacing the default claims");
  verify->add_option("--export", va.export_circuit, "Also write the scheme circuit as JSON");
  verify->add_option("--export-candidate", va.export_candidate, "Also write the scheme unitary as a refine candidate");

  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "Herald analysis of a circuit or unitary");
  simulate->add_option("circuit", sa.circuit, "Circuit JSON or unitary matrix JSON")->required();
  simulate->add_option("--input", sa.input, "Input occupations, e.g. 1,1,0,1")->required();
  simulate->add_option("--patterns", sa.patterns, "JSON array of ancilla patterns")->required();
  simulate->add_option("--targets", sa.targets, "JSON array of target states");

  SearchArgs sea;
  auto* search = app.add_subcommand("search", "Multi-start stage-1 search");
  search->add_option("config", sea.config, "Search config JSON")->required();
  search->add_option("--seed", sea.seed, "Override the master seed");
  search->add_option("--p", sea.p, "Override the objective exponent");
  search->add_option("--workers", sea.workers, "Worker threads (default: all cores)");

  RefineArgs ra;
  auto* refine = app.add_subcommand("refine", "Stage-2 refinement of a candidate");
  refine->add_option("candidates", ra.candidates, "Search output or candidate file")->required();
  refine->add_option("--config", ra.config, "Refinement config JSON");
  refine->add_option("--index", ra.index, "Candidate index in the file");
  refine->add_option("--initial", ra.initial, "Start from this circuit instead of the Clements decomposition");

  std::string matrix_path;
  auto* decompose = app.add_subcommand("decompose", "Clements decomposition of a unitary");
  decompose->add_option("matrix", matrix_path, "Unitary matrix JSON")->required();

  for (auto* sub : {verify, simulate, search, refine, decompose}) {
    sub->add_option("--out", ctx.out_path, "Write the JSON document to this file");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsage;
  }

  try {
    if (*verify) return cmd_verify(ctx, va);
    if (*simulate) return cmd_simulate(ctx, sa);
    if (*search) return cmd_search(ctx, sea);
    if (*refine) return cmd_refine(ctx, ra);
    return cmd_decompose(ctx, matrix_path);
  } catch (const ClaimsFailed& e) {
    ctx.log->error("{}", e.what());
    return kClaimFailed;
  } catch (const Infeasible& e) {
    ctx.log->error("{}", e.what());
    return kInfeasible;
  } catch (const NotUnitaryError& e) {
    ctx.log->error("{}", e.what());
    return kNotUnitary;
  } catch (const Error& e) {
    ctx.log->error("{}", e.what());
    return kUsage;
  }
}

}  // namespace heraldic::cli
