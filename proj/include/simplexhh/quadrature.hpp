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

#include <cmath>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "simplexhh/avg_result.hpp"
#include "simplexhh/errors.hpp"
#include "simplexhh/functions.hpp"
#include "simplexhh/geometry.hpp"
#include "simplexhh/util.hpp"

namespace simplexhh {

namespace detail {

// Highest supported polynomial exactness; the rule index s gives
// exactness 2s+1.
constexpr int kMaxExactness = 25;

/// Grundmann-Moller rule on a k-simplex in barycentric form.  Weights are
/// normalized to sum to 1, so the weighted sum of values is the average.
struct QuadRule {
  int exactness = 0;
  std::vector<double> weights;
  std::vector<std::vector<double>> bary;  // k+1 coordinates per point
};

inline QuadRule build_gm_rule(int k, int s_index) {
  const int d = 2 * s_index + 1;
  QuadRule rule;
  rule.exactness = d;
  std::vector<long double> w;
  for (int i = 0; i <= s_index; ++i) {
    // (-1)^i 2^{-2s} (d+k-2i)^d / (i! (d+k-i)!)
    long double c = (i % 2 == 0) ? 1.0L : -1.0L;
    c *= powl(2.0L, -2.0L * s_index);
    c *= powl(static_cast<long double>(d + k - 2 * i), d);
    for (int j = 2; j <= i; ++j) c /= j;
    for (int j = 2; j <= d + k - i; ++j) c /= j;
    const long double denom = d + k - 2 * i;
    for_each_composition(s_index - i, k + 1, [&](const std::vector<int>& beta) {
      std::vector<double> pt(static_cast<std::size_t>(k + 1));
      for (int j = 0; j <= k; ++j)
        pt[static_cast<std::size_t>(j)] = static_cast<double>(
            (2 * beta[static_cast<std::size_t>(j)] + 1) / denom);
      rule.bary.push_back(std::move(pt));
      w.push_back(c);
    });
  }
  long double sum = 0;
  for (long double x : w) sum += x;  // equals Vol E_k = 1/k!
  rule.weights.reserve(w.size());
  for (long double x : w) rule.weights.push_back(static_cast<double>(x / sum));
  return rule;
}

inline const QuadRule& gm_rule(int k, int s_index) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, QuadRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto [it, inserted] = cache.try_emplace({k, s_index});
  if (inserted) it->second = build_gm_rule(k, s_index);
  return it->second;
}

inline double apply_rule(const QuadRule& rule, const Simplex& s,
                         const ConvexFunctionSpec& f) {
  double v = 0;
  Eigen::VectorXd x(s.ambient_dim());
  for (std::size_t p = 0; p < rule.bary.size(); ++p) {
    x.setZero();
    for (int j = 0; j < s.num_vertices(); ++j)
      x += rule.bary[p][static_cast<std::size_t>(j)] * s.vertex(j);
    v += rule.weights[p] * evaluate(f, x);
  }
  return v;
}

// Subdivision of the standard k-simplex into m^k equal-volume cells.
// Cells are found through the order simplex 0 <= y_1 <= ... <= y_k <= 1,
// which the map x_i = y_i - y_{i-1} carries onto the standard simplex
// with unit Jacobian.  Scaled by m, the order simplex is a union of
// whole cells of the Kuhn triangulation of the integer grid, so each
// cell is a lattice corner g plus a coordinate-increment path that keeps
// every intermediate vertex monotone.  fn receives the k+1 cell vertices
// in reference coordinates.
template <typename Fn>
inline void for_each_subdivision_cell(int k, int m, Fn&& fn) {
  std::vector<int> g(static_cast<std::size_t>(k), 0);
  std::vector<std::vector<int>> chain;
  std::vector<bool> used(static_cast<std::size_t>(k), false);
  std::vector<std::vector<double>> verts(
      static_cast<std::size_t>(k + 1),
      std::vector<double>(static_cast<std::size_t>(k)));
  auto emit = [&]() {
    for (std::size_t j = 0; j < chain.size(); ++j) {
      const std::vector<int>& w = chain[j];
      for (int i = 0; i < k; ++i) {
        const int prev = (i == 0) ? 0 : w[static_cast<std::size_t>(i - 1)];
        verts[j][static_cast<std::size_t>(i)] =
            static_cast<double>(w[static_cast<std::size_t>(i)] - prev) / m;
      }
    }
    fn(verts);
  };
  auto walk = [&](auto&& self, int depth) -> void {
    if (depth == k) {
      emit();
      return;
    }
    std::vector<int> w = chain.back();
    for (int c = 0; c < k; ++c) {
      if (used[static_cast<std::size_t>(c)]) continue;
      if (c + 1 < k &&
          w[static_cast<std::size_t>(c)] + 1 > w[static_cast<std::size_t>(c + 1)])
        continue;
      ++w[static_cast<std::size_t>(c)];
      used[static_cast<std::size_t>(c)] = true;
      chain.push_back(w);
      self(self, depth + 1);
      chain.pop_back();
      used[static_cast<std::size_t>(c)] = false;
      --w[static_cast<std::size_t>(c)];
    }
  };
  auto corners = [&](auto&& self, int i) -> void {
    if (i == k) {
      chain.assign(1, g);
      walk(walk, 0);
      return;
    }
    const int lo = (i == 0) ? 0 : g[static_cast<std::size_t>(i - 1)];
    for (int v = lo; v < m; ++v) {
      g[static_cast<std::size_t>(i)] = v;
      self(self, i + 1);
    }
  };
  corners(corners, 0);
}

// Exactness of the per-cell rule inside the composite ladder.
constexpr int kCompositeCellDegree = 7;
// Per-rung budget of function evaluations for the composite ladder.
constexpr int kMaxCompositeEvals = 500000;

// One composite pass: the base rule applied on every cell of the level-m
// subdivision.  Cells share the same volume, so the composite average is
// the plain mean of the cell averages.
inline double composite_pass(const Simplex& s, const ConvexFunctionSpec& f,
                             const QuadRule& rule, int m) {
  const int k = s.intrinsic_dim();
  double total = 0;
  long long cells = 0;
  Eigen::VectorXd x(s.ambient_dim());
  std::vector<double> ref(static_cast<std::size_t>(k));
  for_each_subdivision_cell(k, m, [&](const std::vector<std::vector<double>>& vs) {
    double cell = 0;
    for (std::size_t p = 0; p < rule.bary.size(); ++p) {
      for (int i = 0; i < k; ++i) {
        double c = 0;
        for (int j = 0; j <= k; ++j)
          c += rule.bary[p][static_cast<std::size_t>(j)] *
               vs[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        ref[static_cast<std::size_t>(i)] = c;
      }
      x = phi_map(s, ref);
      cell += rule.weights[p] * evaluate(f, x);
    }
    total += cell;
    ++cells;
  });
  return total / static_cast<double>(cells);
}

}  // namespace detail

/// Average by a simplex rule of at least the requested polynomial
/// exactness.  The error estimate compares against the next rule down.
inline AvgResult avg_quadrature(const Simplex& s, const ConvexFunctionSpec& f,
                                int degree) {
  if (degree < 1) throw UnsupportedDegree("quadrature degree must be >= 1");
  if (degree > detail::kMaxExactness)
    throw UnsupportedDegree("quadrature degree beyond rule table");
  if (f.dim != s.ambient_dim())
    throw DimensionMismatch("function arity does not match simplex");
  AvgResult res;
  res.method = AvgMethod::Quadrature;
  const int k = s.intrinsic_dim();
  if (k == 0) {
    res.value = evaluate(f, s.vertex(0));
    res.samples_or_degree = degree;
    return res;
  }
  const int s_index = degree / 2;
  const auto& rule = detail::gm_rule(k, s_index);
  res.value = detail::apply_rule(rule, s, f);
  res.samples_or_degree = rule.exactness;
  if (s_index > 0) {
    const double prev =
        detail::apply_rule(detail::gm_rule(k, s_index - 1), s, f);
    res.error_estimate = std::abs(res.value - prev);
  }
  return res;
}

/// Composite quadrature: a fixed moderate-degree rule on every cell of a
/// uniform subdivision, with the subdivision level doubling until two
/// successive levels agree to 1e-10 relative or the per-level evaluation
/// budget runs out.  High-index simplex rules carry large alternating
/// weights that amplify the error of integrands with kinks, so refinement
/// happens in the mesh, where convergence is geometric and the last
/// successive difference bounds the remaining error.
inline AvgResult avg_quadrature_converged(const Simplex& s,
                                          const ConvexFunctionSpec& f) {
  if (f.dim != s.ambient_dim())
    throw DimensionMismatch("function arity does not match simplex");
  AvgResult res;
  res.method = AvgMethod::Quadrature;
  res.samples_or_degree = detail::kCompositeCellDegree;
  const int k = s.intrinsic_dim();
  if (k == 0) {
    res.value = evaluate(f, s.vertex(0));
    return res;
  }
  const auto& rule =
      detail::gm_rule(k, detail::kCompositeCellDegree / 2);
  const auto evals_at = [&](int m) {
    double e = static_cast<double>(rule.bary.size());
    for (int i = 0; i < k; ++i) e *= m;
    return e;
  };
  res.value = detail::composite_pass(s, f, rule, 1);
  double prev = res.value;
  // Always run at least the first refinement so the estimate is real.
  for (int m = 2;
       m == 2 || evals_at(m) <= detail::kMaxCompositeEvals; m *= 2) {
    res.value = detail::composite_pass(s, f, rule, m);
    const double diff = std::abs(res.value - prev);
    res.error_estimate = diff;
    if (diff < 1e-10 * std::max(1.0, std::abs(res.value))) break;
    prev = res.value;
  }
  return res;
}

}  // namespace simplexhh
