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

#include "simplexhh/bounds.hpp"
#include "simplexhh/monte_carlo.hpp"

namespace simplexhh {
namespace {

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

ConvexFunctionSpec square_norm(int dim) {
  ConvexFunctionSpec f;
  f.name = "sq";
  f.dim = dim;
  Polynomial p;
  for (int i = 0; i < dim; ++i) {
    PolynomialTerm t;
    t.coeff = 1;
    t.exponents.assign(static_cast<std::size_t>(dim), 0);
    t.exponents[static_cast<std::size_t>(i)] = 2;
    p.terms.push_back(std::move(t));
  }
  f.fn = std::move(p);
  f.convexity_certified = true;
  return f;
}

const BoundEntry& entry_named(const BoundReport& rep, const std::string& name) {
  for (const auto& e : rep.entries)
    if (e.name == name) return e;
  FAIL("missing entry " + name);
  throw std::logic_error("unreachable");
}

// Every bound value below is hand-derived for x^2 + y^2 on the standard
// triangle: the face averages are 2/3 on the hypotenuse and 1/3 on each
// leg, so the opposite-face mean is 4/9; the vertex mean is 2/3; the
// barycenter value is 2/9; the card-2 barycenter mean (edge midpoints
// 1/4, 1/4, 1/2) is 1/3.
TEST_CASE("worked example on the standard triangle") {
  const Simplex tri = standard_simplex(2);
  const ConvexFunctionSpec f = square_norm(2);

  const HHClassic hh = hh_classic(tri, f);
  CHECK_THAT(hh.lower, WithinAbs(2.0 / 9, 1e-14));
  CHECK_THAT(hh.upper, WithinAbs(2.0 / 3, 1e-14));

  CHECK_THAT(vertex_face_bound(tri, f).value, WithinAbs(14.0 / 27, 1e-12));
  CHECK_THAT(barycenter_face_bound(tri, f).value, WithinAbs(10.0 / 27, 1e-12));
  CHECK_THAT(barycenter_vertex_bound(tri, f), WithinAbs(14.0 / 27, 1e-12));
  CHECK_THAT(all_faces_barycenter_bound(tri, f), WithinAbs(11.0 / 27, 1e-12));
  CHECK_THAT(mixed_group_bound(tri, f, 2), WithinAbs(5.0 / 9, 1e-12));

  // Divisor means: single vertices give the vertex mean, the whole set
  // gives the plain average.
  CHECK_THAT(divisor_bound(tri, f, 1).value, WithinAbs(2.0 / 3, 1e-12));
  CHECK_THAT(divisor_bound(tri, f, 3).value, WithinAbs(1.0 / 3, 1e-12));
  CHECK_THROWS_AS(divisor_bound(tri, f, 2), NotADivisor);
}

TEST_CASE("partition functional values on the standard triangle") {
  const Simplex tri = standard_simplex(2);
  const ConvexFunctionSpec f = square_norm(2);
  FaceAverager faces(tri, f);

  // F = sum of card * face average: 3 * 1/3, then 1*0 + 2*(2/3),
  // then 2*(1/3) + 1*1, then the vertex values alone.
  CHECK_THAT(F_functional(faces, trivial_partition(2)).value,
             WithinAbs(1.0, 1e-12));
  CHECK_THAT(F_functional(faces, parse_partition("0|1,2", 2)).value,
             WithinAbs(4.0 / 3, 1e-12));
  CHECK_THAT(F_functional(faces, parse_partition("0,1|2", 2)).value,
             WithinAbs(5.0 / 3, 1e-12));
  CHECK_THAT(F_functional(faces, singleton_partition(2)).value,
             WithinAbs(2.0, 1e-12));

  CHECK_THROWS_AS(F_functional(faces, trivial_partition(3)),
                  GroundSetMismatch);

  const ChainResult mono = check_refinement_monotonicity(
      faces, trivial_partition(2), parse_partition("0|1,2", 2));
  CHECK(mono.pass);
  CHECK_THAT(mono.lhs, WithinAbs(1.0, 1e-12));
  CHECK_THAT(mono.rhs, WithinAbs(4.0 / 3, 1e-12));

  CHECK_THROWS_AS(
      check_refinement_monotonicity(faces, parse_partition("0,1|2", 2),
                                    parse_partition("0,2|1", 2)),
      NotARefinement);
}

TEST_CASE("combine rule dominates the joined-face average") {
  const Simplex tri = standard_simplex(2);
  const ConvexFunctionSpec f = square_norm(2);
  FaceAverager faces(tri, f);

  // (1 * f(v0) + 2 * Avg over {1,2}) / 3 = (0 + 4/3) / 3 = 4/9 >= 1/3.
  const double combined =
      lemma_combine(1, 2, faces.value(FaceSet({0})).value,
                    faces.value(FaceSet({1, 2})).value);
  CHECK_THAT(combined, WithinAbs(4.0 / 9, 1e-12));
  CHECK(combined >= faces.value(FaceSet({0, 1, 2})).value - 1e-12);

  CHECK_THROWS_AS(lemma_combine(0, 2, 0.0, 0.0), Error);
}

TEST_CASE("interval anchor: every mixed bound equals 3/8 for t^2") {
  const Simplex seg = standard_simplex(1);
  ConvexFunctionSpec f;
  f.name = "t_squared";
  f.dim = 1;
  f.fn = Polynomial{{{1.0, {2}}}};
  f.convexity_certified = true;

  CHECK_THAT(barycenter_face_bound(seg, f).value, WithinAbs(3.0 / 8, 1e-12));
  CHECK_THAT(barycenter_vertex_bound(seg, f), WithinAbs(3.0 / 8, 1e-12));
  CHECK_THAT(all_faces_barycenter_bound(seg, f), WithinAbs(3.0 / 8, 1e-12));
  CHECK_THAT(mixed_group_bound(seg, f, 2), WithinAbs(3.0 / 8, 1e-12));

  const HHClassic hh = hh_classic(seg, f);
  CHECK(hh.lower <= 3.0 / 8);
  CHECK(3.0 / 8 <= hh.upper);
  CHECK_THAT(hh.upper, WithinAbs(0.5, 1e-15));
}

TEST_CASE("mixed weights floor and ceil add up") {
  for (int n = 1; n <= 6; ++n) {
    const MixedWeights w = mixed_weights(n, 2);
    CHECK(w.floor_part == (n + 1) / 2);
    CHECK(w.floor_part + w.ceil_part == n + 1);
    CHECK_THAT(w.alpha() + w.beta(), WithinAbs(1.0, 1e-15));
  }
  CHECK_THROWS_AS(mixed_weights(2, 0), Error);
  CHECK_THROWS_AS(mixed_weights(2, 4), Error);
}

TEST_CASE("regular-simplex face-sum constants") {
  // n=1, d=1: 1 * 1/1! * sqrt(1/(2*2)) = 1/2.
  CHECK_THAT(regular_face_sum_constant(1, 1), WithinAbs(0.5, 1e-15));
  // n=2, d=1: 1/2! * sqrt(1/12) = sqrt(3)/12.
  CHECK_THAT(regular_face_sum_constant(2, 1),
             WithinAbs(std::sqrt(3.0) / 12, 1e-15));
  CHECK_THROWS_AS(regular_face_sum_constant(2, 2), NotADivisor);

  // For a constant function the scaled face sum reproduces the volume:
  // each of the three vertices contributes integral 1, and
  // 3 * sqrt(3)/12 is the area sqrt(3)/4 of the unit-edge triangle.
  const std::vector<double> ones = {1.0, 1.0, 1.0};
  CHECK_THAT(regular_simplex_integral_bound(2, 1, ones),
             WithinRel(regular_simplex(2).volume(), 1e-12));

  const std::vector<double> wrong = {1.0, 1.0};
  CHECK_THROWS_AS(regular_simplex_integral_bound(2, 1, wrong), WrongCount);
}

TEST_CASE("face-sum bound matches the divisor mean on regular simplices") {
  // c(n,d) * sum of face integrals == mean of face averages * Vol, since
  // every card-d face of the unit-edge regular simplex has the same
  // volume.  Checked for a genuinely curved integrand.
  for (auto [n, d] : {std::pair{2, 1}, std::pair{3, 2}}) {
    const Simplex reg = regular_simplex(n);
    const ConvexFunctionSpec f = square_norm(n + 1);
    FaceAverager faces(reg, f);
    std::vector<double> integrals;
    for_each_combination(n + 1, d, [&](const std::vector<int>& ix) {
      const FaceSet k(ix);
      const double face_vol = face(reg, k).volume();
      integrals.push_back(face_vol * faces.value(k).value);
    });
    const double lhs = regular_simplex_integral_bound(n, d, integrals);
    const double rhs = divisor_bound(faces, d).value * reg.volume();
    INFO("n=" << n << " d=" << d);
    CHECK_THAT(lhs, WithinRel(rhs, 1e-9));
  }
}

TEST_CASE("full report on the worked example") {
  const Simplex tri = standard_simplex(2);
  const ConvexFunctionSpec f = square_norm(2);
  ReportOptions opt;
  opt.partitions = enumerate_partitions(2);
  const BoundReport rep = full_report(tri, f, opt);

  CHECK_THAT(rep.avg.value, WithinAbs(1.0 / 3, 1e-12));
  CHECK_THAT(rep.barycenter_value, WithinAbs(2.0 / 9, 1e-14));
  CHECK_THAT(rep.vertex_mean, WithinAbs(2.0 / 3, 1e-14));
  CHECK(rep.all_pass);
  CHECK(!rep.convexity_warning);

  CHECK_THAT(entry_named(rep, "vertex_face").value,
             WithinAbs(14.0 / 27, 1e-12));
  CHECK_THAT(entry_named(rep, "barycenter_face").value,
             WithinAbs(10.0 / 27, 1e-12));
  CHECK_THAT(entry_named(rep, "all_faces_barycenter").value,
             WithinAbs(11.0 / 27, 1e-12));
  CHECK_THAT(entry_named(rep, "mixed_group_k2").value,
             WithinAbs(5.0 / 9, 1e-12));
  CHECK_THAT(entry_named(rep, "partition[0|1,2]").value,
             WithinAbs(4.0 / 9, 1e-12));
  REQUIRE(entry_named(rep, "partition[0|1,2]").raw.has_value());
  CHECK_THAT(*entry_named(rep, "partition[0|1,2]").raw,
             WithinAbs(4.0 / 3, 1e-12));

  for (const auto& c : rep.chains) {
    INFO(c.relation);
    CHECK(c.pass);
  }
  // Margins are bound minus average, nonnegative for convex f.
  for (const auto& e : rep.entries) {
    INFO(e.name);
    REQUIRE(!e.error.has_value());
    CHECK(e.margin >= -1e-9);
  }
}

TEST_CASE("full report flags a concave function") {
  const BoundReport rep =
      full_report(standard_simplex(2), concave_quadratic(2));
  CHECK(rep.convexity_warning);
  CHECK(!rep.all_pass);
  int failed = 0;
  for (const auto& c : rep.chains) failed += c.pass ? 0 : 1;
  CHECK(failed >= 1);
}

TEST_CASE("report values are invariant under rigid motions") {
  // max(|x|, |y|) style pieces rotate with the frame, so the report on a
  // rotated and shifted copy must match entry by entry.
  const Simplex s = make_simplex({{0.1, -0.3}, {1.2, 0.4}, {-0.5, 0.9}});
  ConvexFunctionSpec f;
  f.name = "ma";
  f.dim = 2;
  f.fn = MaxAffine{{{{1.0, 0.2}, 0.1}, {{-0.7, 0.5}, 0.0}, {{0.0, -1.0}, 0.2}}};
  f.convexity_certified = true;

  const double a = 0.6;
  const double ca = std::cos(a);
  const double sa = std::sin(a);
  const double tx = 2.5;
  const double ty = -1.0;
  std::vector<Eigen::VectorXd> moved;
  for (int i = 0; i < 3; ++i) {
    const Eigen::VectorXd& v = s.vertex(i);
    Eigen::VectorXd w(2);
    w << ca * v[0] - sa * v[1] + tx, sa * v[0] + ca * v[1] + ty;
    moved.push_back(w);
  }
  // Each piece a . x + c becomes (Ra) . y + c - (Ra) . t under y = Rx + t.
  MaxAffine rotated;
  for (const auto& pc : std::get<MaxAffine>(f.fn).pieces) {
    AffinePiece q;
    q.a = {ca * pc.a[0] - sa * pc.a[1], sa * pc.a[0] + ca * pc.a[1]};
    q.c = pc.c - (q.a[0] * tx + q.a[1] * ty);
    rotated.pieces.push_back(q);
  }
  ConvexFunctionSpec g;
  g.name = "ma_moved";
  g.dim = 2;
  g.fn = rotated;
  g.convexity_certified = true;

  const BoundReport ra = full_report(s, f);
  const BoundReport rb = full_report(Simplex(moved), g);
  REQUIRE(ra.entries.size() == rb.entries.size());
  for (std::size_t i = 0; i < ra.entries.size(); ++i) {
    INFO(ra.entries[i].name);
    const double budget =
        ra.entries[i].error_budget + rb.entries[i].error_budget;
    CHECK_THAT(rb.entries[i].value,
               WithinAbs(ra.entries[i].value, budget + 1e-9));
  }
  CHECK_THAT(rb.avg.value,
             WithinAbs(ra.avg.value,
                       ra.avg.error_estimate + rb.avg.error_estimate + 1e-9));
}

TEST_CASE("embedded faces still get divisor bounds") {
  // A triangle living in R^3: full-dimensional-only entries are skipped,
  // divisor means still appear.
  const Simplex tri3 = make_simplex({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const ConvexFunctionSpec f = square_norm(3);
  const BoundReport rep = full_report(tri3, f);
  CHECK_THAT(entry_named(rep, "face_mean_card1").value,
             WithinAbs(1.0, 1e-12));
  bool skipped_note = false;
  for (const auto& note : rep.notes)
    skipped_note |= note.find("embedded") != std::string::npos;
  CHECK(skipped_note);
  CHECK_THROWS_AS(vertex_face_bound(tri3, f), NotFullDimensional);
  CHECK_THROWS_AS(hh_classic(tri3, f), NotFullDimensional);
}

TEST_CASE("tolerance policy arithmetic") {
  const TolerancePolicy tol;
  const ChainResult ok = make_chain("a <= b", 1.0, 1.0 - 5e-10, 0.0, tol);
  CHECK(ok.pass);
  const ChainResult bad = make_chain("a <= b", 1.0, 1.0 - 5e-9, 0.0, tol);
  CHECK(!bad.pass);
  // A budget widens the acceptance band.
  const ChainResult budgeted = make_chain("a <= b", 1.0, 0.99, 0.02, tol);
  CHECK(budgeted.pass);
  CHECK_THAT(budgeted.slack, WithinAbs(-0.01, 1e-15));
}

}  // namespace
}  // namespace simplexhh
