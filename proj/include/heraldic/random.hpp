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

#include "heraldic/types.hpp"

namespace heraldic {

/// One step of the splitmix64 mixer; also used to derive independent seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for restart `index` of a search seeded with `master_seed`.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of
/// R's diagonal moved into Q. Deterministic for a given seed.
CMatrix haar_random_unitary(int dim, std::uint64_t seed);

}  // namespace heraldic
