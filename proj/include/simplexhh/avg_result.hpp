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
#include <string>

namespace simplexhh {

enum class AvgMethod { Exact, Quadrature, MonteCarlo };

inline std::string method_name(AvgMethod m) {
  switch (m) {
    case AvgMethod::Exact:
      return "exact";
    case AvgMethod::Quadrature:
      return "quadrature";
    case AvgMethod::MonteCarlo:
      return "monte_carlo";
  }
  return "unknown";
}

/// Average of a function over a simplex together with how it was obtained.
/// error_estimate is 0 for the exact path, a rule-difference estimate for
/// quadrature, and the standard error for Monte Carlo.
struct AvgResult {
  double value = 0;
  AvgMethod method = AvgMethod::Exact;
  double error_estimate = 0;
  std::int64_t samples_or_degree = 0;
  std::uint64_t seed = 0;  // meaningful for MonteCarlo only
};

}  // namespace simplexhh
