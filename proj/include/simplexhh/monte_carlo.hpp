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

#include <Eigen/Dense>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "simplexhh/avg_result.hpp"
#include "simplexhh/errors.hpp"
#include "simplexhh/faceset.hpp"
#include "simplexhh/functions.hpp"
#include "simplexhh/geometry.hpp"
#include "simplexhh/rng.hpp"

namespace simplexhh {

namespace detail {

// Samples are drawn statelessly by sample index and reduced in fixed-size
// blocks, so the result is bit-identical for any worker count.
constexpr std::int64_t kMcBlock = 16384;

struct BlockSums {
  double sum = 0;
  double sumsq = 0;
};

template <typename PerSample>
std::vector<BlockSums> blockwise(std::int64_t n_samples, int threads,
                                 PerSample&& per_sample) {
  const std::int64_t n_blocks = (n_samples + kMcBlock - 1) / kMcBlock;
  std::vector<BlockSums> blocks(static_cast<std::size_t>(n_blocks));
  std::atomic<std::int64_t> next{0};
  auto work = [&]() {
    while (true) {
      const std::int64_t b = next.fetch_add(1);
      if (b >= n_blocks) break;
      BlockSums acc;
      const std::int64_t lo = b * kMcBlock;
      const std::int64_t hi = std::min(n_samples, lo + kMcBlock);
      for (std::int64_t i = lo; i < hi; ++i) {
        const double v = per_sample(i);
        acc.sum += v;
        acc.sumsq += v * v;
      }
      blocks[static_cast<std::size_t>(b)] = acc;
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return blocks;
}

inline AvgResult reduce_blocks(const std::vector<BlockSums>& blocks,
                               std::int64_t n_samples) {
  double sum = 0;
  double sumsq = 0;
  for (const auto& b : blocks) {
    sum += b.sum;
    sumsq += b.sumsq;
  }
  const double n = static_cast<double>(n_samples);
  const double mean = sum / n;
  const double var = std::max(0.0, sumsq / n - mean * mean);
  AvgResult res;
  res.method = AvgMethod::MonteCarlo;
  res.value = mean;
  res.error_estimate = std::sqrt(var / n);
  res.samples_or_degree = n_samples;
  return res;
}

}  // namespace detail

/// Average by uniform sampling of the simplex (flat Dirichlet weights over
/// the vertices).  Deterministic per seed independent of thread count.
inline AvgResult avg_monte_carlo(const Simplex& s, const ConvexFunctionSpec& f,
                                 std::int64_t n_samples, std::uint64_t seed,
                                 int threads = 1) {
  if (n_samples < 2) throw Error("monte carlo needs at least 2 samples");
  if (f.dim != s.ambient_dim())
    throw DimensionMismatch("function arity does not match simplex");
  const int m = s.num_vertices();
  const auto per_sample = [&](std::int64_t i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    const std::vector<double> w = dirichlet_uniform(rng, m);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(s.ambient_dim());
    for (int j = 0; j < m; ++j)
      x += w[static_cast<std::size_t>(j)] * s.vertex(j);
    return evaluate(f, x);
  };
  auto blocks = detail::blockwise(n_samples, threads, per_sample);
  AvgResult res = detail::reduce_blocks(blocks, n_samples);
  res.seed = seed;
  return res;
}

/// Seeded nondegenerate simplex with n+1 vertices in [-1,1]^n.
inline Simplex random_simplex(int n, std::uint64_t seed) {
  if (n < 1) throw DimensionMismatch("random simplex needs n >= 1");
  CounterRng rng(derive_seed(seed, "random_simplex"));
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Eigen::VectorXd> v;
    v.reserve(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) {
      Eigen::VectorXd x(n);
      for (int j = 0; j < n; ++j) x[j] = rng.next_in(-1, 1);
      v.push_back(std::move(x));
    }
    try {
      return Simplex(std::move(v));
    } catch (const DegenerateSimplex&) {
      continue;  // fresh draws on the next attempt
    }
  }
  throw DegenerateSimplex("no nondegenerate simplex after 100 attempts");
}

struct JacobianCheckResult {
  double lhs = 0;       // Monte Carlo integral of |det DPhi|
  double rhs = 0;       // volume of the joined face
  double std_error = 0; // standard error of lhs
  bool pass = false;
};

/// Checks that the blending map (t, alpha, beta) -> t phi_K + (1-t) phi_L
/// transports the product domain onto the joined face: the integral of its
/// Jacobian determinant must equal the face volume.
inline JacobianCheckResult jacobian_identity_check(const Simplex& s,
                                                   const FaceSet& K,
                                                   const FaceSet& L,
                                                   std::int64_t n_samples,
                                                   std::uint64_t seed) {
  if (K.empty() || L.empty()) throw Error("face sets must be nonempty");
  if (!K.disjoint_with(L)) throw Error("face sets must be disjoint");
  const Simplex fK = face(s, K);
  const Simplex fL = face(s, L);
  const Simplex fU = face(s, K.united(L));
  const int k = fK.intrinsic_dim();
  const int l = fL.intrinsic_dim();
  const int dim = k + l + 1;  // intrinsic dimension of the joined face
  const Eigen::MatrixXd q = orthonormal_edge_basis(fU);

  const std::uint64_t sub_seed = derive_seed(seed, "jacobian_identity");
  const auto per_sample = [&](std::int64_t i) {
    CounterRng rng(sub_seed, static_cast<std::uint64_t>(i));
    const double t = rng.next_unit();
    const std::vector<double> wa = dirichlet_uniform(rng, k + 1);
    const std::vector<double> wb = dirichlet_uniform(rng, l + 1);
    Eigen::VectorXd pK = Eigen::VectorXd::Zero(s.ambient_dim());
    for (int j = 0; j <= k; ++j)
      pK += wa[static_cast<std::size_t>(j)] * fK.vertex(j);
    Eigen::VectorXd pL = Eigen::VectorXd::Zero(s.ambient_dim());
    for (int j = 0; j <= l; ++j)
      pL += wb[static_cast<std::size_t>(j)] * fL.vertex(j);
    Eigen::MatrixXd jac(s.ambient_dim(), dim);
    jac.col(0) = pK - pL;
    for (int j = 0; j < k; ++j)
      jac.col(1 + j) = t * (fK.vertex(j + 1) - fK.vertex(0));
    for (int j = 0; j < l; ++j)
      jac.col(1 + k + j) = (1 - t) * (fL.vertex(j + 1) - fL.vertex(0));
    return std::abs((q.transpose() * jac).determinant());
  };
  auto blocks = detail::blockwise(n_samples, 1, per_sample);
  const AvgResult mean = detail::reduce_blocks(blocks, n_samples);

  // Product domain [0,1] x E_k x E_l has measure 1/(k! l!).
  const double measure = 1.0 / (factorial(k) * factorial(l));
  JacobianCheckResult res;
  res.lhs = mean.value * measure;
  res.rhs = fU.volume();
  res.std_error = mean.error_estimate * measure;
  res.pass = std::abs(res.lhs - res.rhs) <=
             5 * res.std_error + 1e-12 * (1 + std::abs(res.rhs));
  return res;
}

}  // namespace simplexhh
