/* Copyright 2026 the simplexhh authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

namespace simplexhh {

/// Philox4x32-10, the counter-based generator of the Random123 family.
///
/// A 128-bit counter and a 64-bit key are hashed into a 128-bit block.
/// Because the output is a pure function of (counter, key), any sample can
/// be produced out of order: the same (seed, stream, index) triple always
/// yields the same draw, regardless of how work is split across threads.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key) {
    constexpr std::uint32_t mul_a = 0xD2511F53u;
    constexpr std::uint32_t mul_b = 0xCD9E8D57u;
    constexpr std::uint32_t weyl_a = 0x9E3779B9u;
    constexpr std::uint32_t weyl_b = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = std::uint64_t(mul_a) * ctr[0];
      const std::uint64_t p1 = std::uint64_t(mul_b) * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
             static_cast<std::uint32_t>(p0)};
      key[0] += weyl_a;
      key[1] += weyl_b;
    }
    return ctr;
  }
};

/// The index-th 64-bit word of the stream identified by (seed, stream).
inline std::uint64_t philox_u64(std::uint64_t seed, std::uint64_t stream,
                                std::uint64_t index) {
  const std::uint64_t block_index = index >> 1;
  const Philox4x32::Counter out = Philox4x32::block(
      {static_cast<std::uint32_t>(block_index),
       static_cast<std::uint32_t>(block_index >> 32),
       static_cast<std::uint32_t>(stream),
       static_cast<std::uint32_t>(stream >> 32)},
      {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
  const int half = static_cast<int>(index & 1) * 2;
  return out[half] | (std::uint64_t(out[half + 1]) << 32);
}

/// Uniform double in the open interval (0,1); safe as a log() argument.
inline double unit_double(std::uint64_t bits) {
  // m + 0.5 with m < 2^52 is exactly representable, so the result lies in
  // [2^-53, 1 - 2^-53] with no rounding onto either endpoint.
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

/// FNV-1a over the label bytes; stable across platforms.
inline std::uint64_t hash_label(std::string_view label) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : label) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// Labeled sub-seed derivation: one user-facing seed fans out into
/// independent, non-overlapping streams ("simplex"/3, "convexity"/0, ...).
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label,
                                 std::uint64_t index = 0) {
  return philox_u64(seed, hash_label(label), index);
}

/// Sequential adapter over the counter-based generator.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64() { return philox_u64(seed_, stream_, index_++); }
  double next_unit() { return unit_double(next_u64()); }
  double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t index_ = 0;
};

/// One draw from Dirichlet(1,...,1) with m components: m normalized
/// exponential variates, uniform on the simplex of barycentric weights.
inline std::vector<double> dirichlet_uniform(CounterRng& rng, int m) {
  std::vector<double> w(static_cast<std::size_t>(m));
  double total = 0;
  for (int i = 0; i < m; ++i) {
    w[static_cast<std::size_t>(i)] = -std::log(rng.next_unit());
    total += w[static_cast<std::size_t>(i)];
  }
  for (double& x : w) x /= total;
  return w;
}

}  // namespace simplexhh
