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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "simplexhh/exact_poly.hpp"
#include "simplexhh/geometry.hpp"
#include "simplexhh/monte_carlo.hpp"
#include "simplexhh/quadrature.hpp"
#include "simplexhh/rng.hpp"

namespace simplexhh {
namespace {

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("constant functions average to themselves at every degree") {
  ConvexFunctionSpec one;
  one.dim = 3;
  one.fn = Polynomial{{{1.0, {0, 0, 0}}}};
  const Simplex tet = standard_simplex(3);
  for (int degree : {1, 3, 7})
    CHECK_THAT(avg_quadrature(tet, one, degree).value,
               WithinAbs(1.0, 1e-13));
  // High-index rules have large alternating weights, so the rounded
  // weight sum drifts from 1 by roughly eps times the absolute weight sum.
  for (int degree : {15, 25})
    CHECK_THAT(avg_quadrature(tet, one, degree).value,
               WithinAbs(1.0, 1e-9));
}

TEST_CASE("rules integrate polynomials up to their stated exactness") {
  // Random polynomials checked against the exact rational path.
  for (int k = 1; k <= 4; ++k) {
    const Simplex s = random_simplex(k, 500 + static_cast<unsigned>(k));
    CounterRng rng(31, static_cast<std::uint64_t>(k));
    for (int degree = 1; degree <= 8; ++degree) {
      Polynomial p;
      for (int t = 0; t < 5; ++t) {
        PolynomialTerm term;
        term.coeff = rng.next_in(-2, 2);
        int remaining = degree;
        for (int v = 0; v < k; ++v) {
          const int e = static_cast<int>(rng.next_u64() %
                                         static_cast<std::uint64_t>(remaining + 1));
          term.exponents.push_back(e);
          remaining -= e;
        }
        p.terms.push_back(std::move(term));
      }
      ConvexFunctionSpec f;
      f.dim = k;
      f.fn = std::move(p);
      const double exact = avg_polynomial_exact(s, f).value;
      const double quad = avg_quadrature(s, f, degree).value;
      INFO("k=" << k << " degree=" << degree);
      CHECK_THAT(quad, WithinAbs(exact, 1e-12 * std::max(1.0, std::abs(exact))));
    }
  }
}

TEST_CASE("one-dimensional exponential anchor") {
  // Avg of e^t on [0,1] is e - 1.
  ConvexFunctionSpec f;
  f.dim = 1;
  f.fn = ExpAffine{{1.0}, 0.0};
  const AvgResult r = avg_quadrature(standard_simplex(1), f, 15);
  CHECK_THAT(r.value, WithinAbs(std::exp(1.0) - 1.0, 1e-12));
  CHECK(r.method == AvgMethod::Quadrature);
  CHECK(r.error_estimate >= 0.0);
}

TEST_CASE("lowest rule reports a zero error estimate") {
  ConvexFunctionSpec f;
  f.dim = 2;
  f.fn = ExpAffine{{1.0, 1.0}, 0.0};
  CHECK(avg_quadrature(standard_simplex(2), f, 1).error_estimate == 0.0);
}

TEST_CASE("degree bounds are enforced") {
  ConvexFunctionSpec f;
  f.dim = 1;
  f.fn = ExpAffine{{1.0}, 0.0};
  const Simplex seg = standard_simplex(1);
  CHECK_THROWS_AS(avg_quadrature(seg, f, 0), UnsupportedDegree);
  CHECK_THROWS_AS(avg_quadrature(seg, f, 26), UnsupportedDegree);
  CHECK_NOTHROW(avg_quadrature(seg, f, 25));
}

TEST_CASE("subdivision cells tile the simplex") {
  for (int k = 1; k <= 4; ++k) {
    for (int m = 1; m <= 4; ++m) {
      long long cells = 0;
      detail::for_each_subdivision_cell(
          k, m, [&](const std::vector<std::vector<double>>& verts) {
            REQUIRE(static_cast<int>(verts.size()) == k + 1);
            for (const auto& v : verts) {
              double sum = 0;
              for (double c : v) {
                CHECK(c >= -1e-15);
                sum += c;
              }
              CHECK(sum <= 1.0 + 1e-15);
            }
            ++cells;
          });
      long long want = 1;
      for (int i = 0; i < k; ++i) want *= m;
      CHECK(cells == want);
    }
  }
}

TEST_CASE("composite ladder converges on smooth integrands") {
  // Avg of e^{x+y} over the standard triangle: the integral is
  // int_0^1 (e - e^x) dx = 1, and the area is 1/2, so the average is 2.
  ConvexFunctionSpec f;
  f.dim = 2;
  f.fn = ExpAffine{{1.0, 1.0}, 0.0};
  const AvgResult r = avg_quadrature_converged(standard_simplex(2), f);
  CHECK_THAT(r.value, WithinAbs(2.0, 1e-10));
  CHECK(r.error_estimate < 1e-9);
}

TEST_CASE("composite ladder is honest on kinked integrands") {
  // Avg of |t - 1/3| on [0,1] is (1/18 + 2/9) = 5/18.
  ConvexFunctionSpec kink;
  kink.dim = 1;
  kink.fn = MaxAffine{{{{1.0}, -1.0 / 3}, {{-1.0}, 1.0 / 3}}};
  const AvgResult r1 = avg_quadrature_converged(standard_simplex(1), kink);
  CHECK(std::abs(r1.value - 5.0 / 18) <= r1.error_estimate + 1e-9);
  CHECK_THAT(r1.value, WithinAbs(5.0 / 18, 1e-6));

  // Avg of max(x, y) over the standard triangle is 1/2: by symmetry it is
  // twice int over {x <= y} of y, and that integral is 1/8.
  ConvexFunctionSpec mx;
  mx.dim = 2;
  mx.fn = MaxAffine{{{{1.0, 0.0}, 0.0}, {{0.0, 1.0}, 0.0}}};
  const AvgResult r2 = avg_quadrature_converged(standard_simplex(2), mx);
  CHECK(std::abs(r2.value - 0.5) <= r2.error_estimate + 1e-9);
  CHECK_THAT(r2.value, WithinAbs(0.5, 1e-4));
}

TEST_CASE("composite ladder is exact for low-degree polynomials") {
  ConvexFunctionSpec f;
  f.dim = 2;
  f.fn = Polynomial{{{1.0, {2, 0}}, {1.0, {0, 2}}}};
  const AvgResult r = avg_quadrature_converged(standard_simplex(2), f);
  CHECK_THAT(r.value, WithinAbs(1.0 / 3, 1e-13));
  CHECK(r.error_estimate < 1e-13);
}

TEST_CASE("thin faces integrate through their intrinsic dimension") {
  // Average of x^2 + y^2 on the hypotenuse of the standard triangle is
  // int_0^1 ((1-t)^2 + t^2) dt = 2/3.
  ConvexFunctionSpec f;
  f.dim = 2;
  f.fn = Polynomial{{{1.0, {2, 0}}, {1.0, {0, 2}}}};
  const Simplex edge = make_simplex({{1, 0}, {0, 1}});
  CHECK_THAT(avg_quadrature(edge, f, 5).value, WithinAbs(2.0 / 3, 1e-13));
  CHECK_THAT(avg_quadrature_converged(edge, f).value,
             WithinAbs(2.0 / 3, 1e-12));
}

TEST_CASE("zero-dimensional simplices evaluate at the vertex") {
  ConvexFunctionSpec f;
  f.dim = 2;
  f.fn = Polynomial{{{1.0, {2, 0}}, {1.0, {0, 2}}}};
  const Simplex pt = make_simplex({{0.5, 0.5}});
  CHECK(avg_quadrature(pt, f, 3).value == 0.5);
  CHECK(avg_quadrature_converged(pt, f).value == 0.5);
}

}  // namespace
}  // namespace simplexhh
