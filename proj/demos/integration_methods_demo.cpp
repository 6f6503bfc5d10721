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

// Compares the three integration backends on the same averages: the exact
// rational path, simplex quadrature, and seeded Monte Carlo.

#include <cstdio>

#include "simplexhh/simplexhh.hpp"

int main() {
  using namespace simplexhh;

  const Simplex triangle = standard_simplex(2);
  ConvexFunctionSpec poly;
  poly.name = "x^2 + y^2";
  poly.dim = 2;
  poly.fn = Polynomial{{{1.0, {2, 0}}, {1.0, {0, 2}}}};

  const AvgResult exact = avg_polynomial_exact(triangle, poly);
  const AvgResult quad = avg_quadrature(triangle, poly, 4);
  const AvgResult mc = avg_monte_carlo(triangle, poly, 200000, 42);
  std::printf("avg(x^2+y^2, standard triangle)\n");
  std::printf("  exact       %.17g\n", exact.value);
  std::printf("  quadrature  %.17g  (err est %.3g)\n", quad.value,
              quad.error_estimate);
  std::printf("  monte carlo %.17g  (std err %.3g, seed %llu)\n", mc.value,
              mc.error_estimate, static_cast<unsigned long long>(mc.seed));

  ConvexFunctionSpec expf;
  expf.name = "exp(x+y)";
  expf.dim = 2;
  expf.fn = ExpAffine{{1.0, 1.0}, 0.0};
  expf.convexity_certified = true;
  const AvgResult conv = avg_quadrature_converged(triangle, expf);
  const AvgResult mc2 = avg_monte_carlo(triangle, expf, 200000, 42);
  std::printf("\navg(exp(x+y), standard triangle)\n");
  std::printf("  quadrature  %.17g  (degree %lld)\n", conv.value,
              static_cast<long long>(conv.samples_or_degree));
  std::printf("  monte carlo %.17g  (std err %.3g)\n", mc2.value,
              mc2.error_estimate);
  return 0;
}
