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

#include <cstdint>
#include <vector>

#include "simplexhh/errors.hpp"

namespace simplexhh {

inline double factorial(int n) {
  if (n < 0) throw Error("factorial of negative argument");
  if (n > 170) throw Overflow("factorial overflows binary64");
  double r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline long long binomial_count(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Integer power by repeated multiplication; exact for small exponents.
inline double ipow(double x, int e) {
  double r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

/// Visit every k-element subset of {0,...,m-1} in lexicographic order.
template <typename Fn>
void for_each_combination(int m, int k, Fn&& fn) {
  if (k < 0 || k > m) return;
  std::vector<int> ix(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) ix[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(const_cast<const std::vector<int>&>(ix));
    int i = k - 1;
    while (i >= 0 && ix[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) break;
    ++ix[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      ix[static_cast<std::size_t>(j)] = ix[static_cast<std::size_t>(j - 1)] + 1;
  }
}

/// Visit every way of writing `total` as an ordered sum of `parts`
/// nonnegative integers.
template <typename Fn>
void for_each_composition(int total, int parts, Fn&& fn) {
  if (parts <= 0) {
    if (total == 0) {
      std::vector<int> empty;
      fn(const_cast<const std::vector<int>&>(empty));
    }
    return;
  }
  std::vector<int> c(static_cast<std::size_t>(parts), 0);
  c[0] = total;
  while (true) {
    fn(const_cast<const std::vector<int>&>(c));
    // next composition in colex-style order
    int i = 0;
    while (i < parts - 1 && c[static_cast<std::size_t>(i)] == 0) ++i;
    if (i == parts - 1) break;
    const int v = c[static_cast<std::size_t>(i)];
    c[static_cast<std::size_t>(i)] = 0;
    c[0] = v - 1;
    ++c[static_cast<std::size_t>(i + 1)];
  }
}

}  // namespace simplexhh
