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

#include "heraldic/random.hpp"

#include <random>

namespace heraldic {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  return splitmix64(splitmix64(master_seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

CMatrix haar_random_unitary(int dim, std::uint64_t seed) {
  if (dim < 1) throw DimensionError("haar_random_unitary: dim must be >= 1");
  std::mt19937_64 rng(seed);
  // std::normal_distribution is implementation-defined; Box-Muller over the raw
  // engine output keeps samples identical across standard libraries.
  auto uniform = [&rng] {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  };
  CMatrix z(dim, dim);
  for (int c = 0; c < dim; ++c) {
    for (int r = 0; r < dim; ++r) {
      const double radius = std::sqrt(-std::log(uniform()));
      const double angle = 2.0 * M_PI * uniform();
      z(r, c) = std::polar(radius, angle);
    }
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix& packed = qr.matrixQR();
  for (int k = 0; k < dim; ++k) {
    const Complex d = packed(k, k);
    const double mag = std::abs(d);
    q.col(k) *= mag > 0.0 ? d / mag : Complex{1.0, 0.0};
  }
  return q;
}

}  // namespace heraldic
