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

#include "simplexhh/functions.hpp"
#include "simplexhh/geometry.hpp"
#include "simplexhh/monte_carlo.hpp"

namespace simplexhh {
namespace {

using Catch::Matchers::WithinAbs;

Eigen::VectorXd vec2(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

TEST_CASE("evaluate matches hand values for each variant") {
  ConvexFunctionSpec f;
  f.dim = 2;

  f.fn = Polynomial{{{3.0, {2, 1}}, {-1.0, {0, 0}}}};
  CHECK_THAT(evaluate(f, vec2(2, 3)), WithinAbs(35.0, 1e-12));

  f.fn = Affine{{2.0, -1.0}, 0.5};
  CHECK_THAT(evaluate(f, vec2(1, 1)), WithinAbs(1.5, 1e-12));

  f.fn = ExpAffine{{1.0, 1.0}, 0.0};
  CHECK_THAT(evaluate(f, vec2(1, 1)), WithinAbs(std::exp(2.0), 1e-12));

  f.fn = MaxAffine{{{{1.0, 0.0}, 0.0}, {{0.0, 1.0}, 0.0}}};
  CHECK_THAT(evaluate(f, vec2(0.2, 0.7)), WithinAbs(0.7, 1e-15));

  f.fn = NormPower{3.0};
  CHECK_THAT(evaluate(f, vec2(3, 4)), WithinAbs(125.0, 1e-9));

  // log(e^0 + e^x + e^y) at the origin.
  f.fn = LogSumExp{{{{0.0, 0.0}, 0.0},
                    {{1.0, 0.0}, 0.0},
                    {{0.0, 1.0}, 0.0}}};
  CHECK_THAT(evaluate(f, vec2(0, 0)), WithinAbs(std::log(3.0), 1e-12));

  CHECK_THROWS_AS(evaluate(f, Eigen::VectorXd::Zero(3)), DimensionMismatch);

  f.fn = ExpAffine{{1000.0, 0.0}, 0.0};
  CHECK_THROWS_AS(evaluate(f, vec2(1e6, 0)), Overflow);
}

TEST_CASE("log-sum-exp dominates its max-affine core") {
  const ConvexFunctionSpec lse{
      "lse", 2,
      LogSumExp{{{{1.0, 0.0}, 0.1}, {{-1.0, 0.5}, 0.0}, {{0.0, -1.0}, -0.2}}},
      true};
  const ConvexFunctionSpec mx{
      "mx", 2,
      MaxAffine{{{{1.0, 0.0}, 0.1}, {{-1.0, 0.5}, 0.0}, {{0.0, -1.0}, -0.2}}},
      true};
  CounterRng rng(5, 0);
  for (int i = 0; i < 200; ++i) {
    const Eigen::VectorXd x = vec2(rng.next_in(-3, 3), rng.next_in(-3, 3));
    const double a = evaluate(mx, x);
    const double b = evaluate(lse, x);
    CHECK(b >= a - 1e-12);
    CHECK(b <= a + std::log(3.0) + 1e-12);
  }
}

TEST_CASE("spec validation rejects malformed descriptions") {
  ConvexFunctionSpec f;
  f.dim = 2;
  f.fn = Polynomial{{{1.0, {2}}}};
  CHECK_THROWS_AS(validate_spec(f), DimensionMismatch);
  f.fn = Polynomial{{{1.0, {2, -1}}}};
  CHECK_THROWS_AS(validate_spec(f), Error);
  f.fn = MaxAffine{};
  CHECK_THROWS_AS(validate_spec(f), Error);
  f.fn = NormPower{0.5};
  CHECK_THROWS_AS(validate_spec(f), Error);
  f.fn = Affine{{1.0}, 0.0};
  CHECK_THROWS_AS(validate_spec(f), DimensionMismatch);
  f.fn = Affine{{1.0, 2.0}, 0.0};
  CHECK_NOTHROW(validate_spec(f));
}

TEST_CASE("sampling convexity check accepts the catalog") {
  for (int dim : {1, 2, 3}) {
    const auto catalog = convex_catalog(dim);
    REQUIRE(catalog.size() >= 5);
    for (const auto& f : catalog) {
      CHECK(f.convexity_certified);
      CHECK(f.dim == dim);
      for (int t = 0; t < 10; ++t) {
        const Simplex s = random_simplex(dim, 1000 + t);
        const auto res = convexity_sample_check(f, s, 1000, 77 + t);
        INFO(f.name << " on trial simplex " << t);
        CHECK(res.passed);
      }
    }
  }
}

TEST_CASE("sampling convexity check rejects a concave function") {
  const ConvexFunctionSpec f = concave_quadratic(2);
  CHECK(!f.convexity_certified);
  const auto res = convexity_sample_check(f, standard_simplex(2), 500, 3);
  REQUIRE(!res.passed);
  REQUIRE(res.witness.has_value());
  const auto& w = *res.witness;
  CHECK(w.violation > 1e-9);
  // Recompute the reported violation from the witness points.
  const Eigen::VectorXd z = w.lambda * w.x + (1 - w.lambda) * w.y;
  const double gap = evaluate(f, z) -
                     (w.lambda * evaluate(f, w.x) +
                      (1 - w.lambda) * evaluate(f, w.y));
  CHECK_THAT(gap, WithinAbs(w.violation, 1e-12));
}

TEST_CASE("catalog names are distinct and stable") {
  const auto catalog = convex_catalog(2);
  std::set<std::string> names;
  for (const auto& f : catalog) names.insert(f.name);
  CHECK(names.size() == catalog.size());
  CHECK(names.count("sum_of_squares") == 1);
  CHECK(names.count("max_coordinate") == 1);
}

TEST_CASE("random affine functions are seeded and bounded") {
  const ConvexFunctionSpec a = random_affine(3, 9);
  const ConvexFunctionSpec b = random_affine(3, 9);
  const ConvexFunctionSpec c = random_affine(3, 10);
  const auto& aa = std::get<Affine>(a.fn);
  const auto& bb = std::get<Affine>(b.fn);
  const auto& cc = std::get<Affine>(c.fn);
  CHECK(aa.a == bb.a);
  CHECK(aa.c == bb.c);
  CHECK(aa.a != cc.a);
  for (double x : aa.a) {
    CHECK(x >= -1.0);
    CHECK(x <= 1.0);
  }
  CHECK(a.convexity_certified);
}

}  // namespace
}  // namespace simplexhh
