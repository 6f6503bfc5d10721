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

#include <variant>

#include "simplexhh/avg_result.hpp"
#include "simplexhh/errors.hpp"
#include "simplexhh/exact_poly.hpp"
#include "simplexhh/functions.hpp"
#include "simplexhh/geometry.hpp"
#include "simplexhh/monte_carlo.hpp"
#include "simplexhh/quadrature.hpp"

namespace simplexhh {

struct AvgOptions {
  AvgMethod method = AvgMethod::Exact;
  int degree = 0;  // 0 picks the default for the function
  std::int64_t samples = 100000;
  std::uint64_t seed = 0;
  int threads = 1;
};

/// Dispatch to the chosen integration backend.
inline AvgResult avg(const Simplex& s, const ConvexFunctionSpec& f,
                     const AvgOptions& opt) {
  switch (opt.method) {
    case AvgMethod::Exact:
      return avg_polynomial_exact(s, f);
    case AvgMethod::Quadrature:
      if (opt.degree > 0) return avg_quadrature(s, f, opt.degree);
      return avg_quadrature_converged(s, f);
    case AvgMethod::MonteCarlo:
      return avg_monte_carlo(s, f, opt.samples, opt.seed, opt.threads);
  }
  throw Error("unknown integration method");
}

inline bool has_exact_path(const ConvexFunctionSpec& f) {
  return std::holds_alternative<Polynomial>(f.fn) ||
         std::holds_alternative<Affine>(f.fn);
}

/// Deterministic default integrator: exact for polynomials, converged
/// quadrature otherwise.
inline AvgResult best_avg(const Simplex& s, const ConvexFunctionSpec& f) {
  if (has_exact_path(f)) {
    try {
      return avg_polynomial_exact(s, f);
    } catch (const UnsupportedDegree&) {
      // fall through to quadrature
    }
  }
  return avg_quadrature_converged(s, f);
}

}  // namespace simplexhh
