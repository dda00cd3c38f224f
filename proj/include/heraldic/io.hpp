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


#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heraldic/circuit.hpp"
#include "heraldic/fock.hpp"
#include "heraldic/refine.hpp"
#include "heraldic/schemes.hpp"
#include "heraldic/search.hpp"
#include "json.hpp"

namespace heraldic::io {

using Json = nlohmann::json;

/// p/q with q <= max_denominator and |x - p/q| <= tolerance, smallest q first.
std::optional<std::pair<long, long>> nearest_rational(double x, long max_denominator = 1000,
                                                      double tolerance = 1e-9);
/// {"value", "decimal" (15 significant digits), "rational"?}
Json probability(double p);
/// Accepts a number or a "p/q" string.
double parse_real(const Json& j, const std::string& what);

Json to_json(const FockState& s);
FockState fock_state_from_json(const Json& j);
/// "1,0,1" or "[1,0,1]".
FockState parse_fock_state(const std::string& text);

Json to_json(const TargetState& t);
/// Amplitudes are normalized on load unless they already are.
TargetState target_from_json(const Json& j);

Json to_json(const ProblemSpec& p);
ProblemSpec problem_from_json(const Json& j);

Json to_json(const CircuitSpec& c);
CircuitSpec circuit_from_json(const Json& j);

Json unitary_to_json(const CMatrix& u);
/// Rows of [re, im] pairs; does not check unitarity.
CMatrix matrix_from_json(const Json& j);

Json to_json(const HeraldReport& r, const ProblemSpec& p);

Json to_json(const Candidate& c, const ProblemSpec& p);
Candidate candidate_from_json(const Json& j, const ProblemSpec& p);

Json to_json(const Stage1Config& c);
Stage1Config stage1_config_from_json(const Json& j);

Json to_json(const Stage2Config& c);
/// Floors are given per pattern ({"pattern": [occupations] or index, "floor": x})
/// or as a single number applied to every pattern in `admissible`.
Stage2Config stage2_config_from_json(const Json& j, const ProblemSpec& p, const std::vector<int>& admissible);

Json to_json(const Stage2Result& r, const ProblemSpec& p);

Json to_json(const Claim& c);
Claim claim_from_json(const Json& j);
std::vector<Claim> claims_from_json(const Json& j);

Json to_json(const VerificationReport& r);

struct RunManifest {
  std::string command;
  std::string config_digest;
  std::uint64_t master_seed = 0;
  std::string artifact_version;
  std::map<std::string, double> timings;
};
Json to_json(const RunManifest& m);

std::uint64_t fnv1a64(const std::string& bytes);
/// 16 hex digits of fnv1a64 over the compact dump (keys sorted).
std::string config_digest(const Json& config);

/// Throws ValidationError naming the file on read or parse failure.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace heraldic::io
