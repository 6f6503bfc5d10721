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

#include <atomic>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "simplexhh/bounds.hpp"
#include "simplexhh/functions.hpp"
#include "simplexhh/monte_carlo.hpp"
#include "simplexhh/partitions.hpp"

namespace simplexhh {

/// Partition list plus the refinement pairs to sweep.  Pure combinatorics:
/// shared across every trial and function of a campaign.
struct PartitionUniverse {
  std::vector<Partition> parts;
  std::vector<std::pair<int, int>> refining_pairs;  // (coarse, fine) indices
  bool sampled_partitions = false;
  bool sampled_pairs = false;
};

inline PartitionUniverse build_partition_universe(int n, std::uint64_t seed) {
  PartitionUniverse u;
  const int m = n + 1;
  if (m <= detail::kMaxEnumerationGround) {
    u.parts = enumerate_partitions(n);
  } else {
    u.parts = sample_partitions(n, 20, derive_seed(seed, "universe_parts"));
    u.parts.push_back(singleton_partition(n));
    u.parts.push_back(trivial_partition(n));
    u.sampled_partitions = true;
  }
  const int count = static_cast<int>(u.parts.size());

  // owner[p][i] = block of element i; rep[p][b] = smallest element of block b
  std::vector<std::vector<int>> owner;
  owner.reserve(u.parts.size());
  for (const auto& p : u.parts) owner.push_back(p.element_to_block());
  const auto refines_fast = [&](int fine, int coarse) {
    const auto& oc = owner[static_cast<std::size_t>(coarse)];
    const auto& fine_blocks = u.parts[static_cast<std::size_t>(fine)].blocks();
    for (const auto& block : fine_blocks) {
      const int home = oc[static_cast<std::size_t>(block.indices()[0])];
      for (int i : block.indices())
        if (oc[static_cast<std::size_t>(i)] != home) return false;
    }
    return true;
  };

  // Exhaustive pair sweep while the quadratic scan stays cheap; beyond
  // that, a seeded sample of ordered pairs.
  if (static_cast<long long>(count) * count <= 25'000'000LL) {
    for (int k = 0; k < count; ++k)
      for (int l = 0; l < count; ++l)
        if (k != l && refines_fast(l, k)) u.refining_pairs.emplace_back(k, l);
  } else {
    u.sampled_pairs = true;
    CounterRng rng(derive_seed(seed, "universe_pairs"));
    for (int draw = 0; draw < 4000; ++draw) {
      const int k = static_cast<int>(rng.next_u64() %
                                     static_cast<std::uint64_t>(count));
      const int l = static_cast<int>(rng.next_u64() %
                                     static_cast<std::uint64_t>(count));
      if (k != l && refines_fast(l, k)) u.refining_pairs.emplace_back(k, l);
    }
    // growth-string lex order puts {N} first and the singletons last
    u.refining_pairs.emplace_back(0, count - 1);
  }
  return u;
}

struct ChainFailure {
  std::string relation;
  double lhs = 0;
  double rhs = 0;
  double slack = 0;
};

struct FunctionVerifyResult {
  std::string function;
  AvgResult avg;
  bool convexity_warning = false;
  long long checked = 0;
  long long failed = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  std::vector<ChainFailure> failures;
};

struct TrialResult {
  int trial = 0;
  std::vector<std::vector<double>> simplex_vertices;
  std::vector<FunctionVerifyResult> functions;
};

struct VerifyConfig {
  int n = 2;
  int trials = 10;
  std::uint64_t seed = 0;
  bool inject_nonconvex = false;
  int threads = 1;
  TolerancePolicy tol{};
};

struct VerifySummary {
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  bool inject_nonconvex = false;
  bool sampled_partitions = false;
  bool sampled_pairs = false;
  std::size_t partition_count = 0;
  std::size_t pair_count = 0;
  long long checked = 0;
  long long failed = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  std::vector<TrialResult> trials_detail;
};

namespace detail {

struct ChainTally {
  const TolerancePolicy& tol;
  FunctionVerifyResult& out;
  // keeps pathological campaigns (injected non-convex f) from flooding
  // the summary
  static constexpr std::size_t kMaxStoredFailures = 100;

  template <typename NameFn>
  void check(NameFn&& name, double lhs, double rhs, double budget) {
    const double slack = rhs - lhs;
    ++out.checked;
    out.min_slack = std::min(out.min_slack, slack);
    if (slack < -tol.epsilon(budget)) {
      ++out.failed;
      if (out.failures.size() < kMaxStoredFailures)
        out.failures.push_back({name(), lhs, rhs, slack});
    }
  }
};

/// Every face the campaign will average: all nonempty subsets when the
/// ground set is small, otherwise just the faces actually referenced.
inline std::vector<FaceSet> campaign_faces(int m,
                                           const PartitionUniverse& u) {
  std::vector<FaceSet> out;
  if (m <= 9) {
    std::vector<int> members;
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
      members.clear();
      for (int i = 0; i < m; ++i)
        if (mask & (1u << i)) members.push_back(i);
      out.emplace_back(members);
    }
    return out;
  }
  out.push_back(FaceSet::full(m));
  for (int i = 0; i < m; ++i) out.push_back(FaceSet{i}.complement(m));
  for (int d = 2; d < m; ++d)
    if (m % d == 0)
      for_each_combination(m, d, [&](const std::vector<int>& ix) {
        out.emplace_back(ix);
      });
  for (const auto& p : u.parts)
    for (const auto& b : p.blocks()) out.push_back(b);
  return out;
}

inline FunctionVerifyResult verify_one(const Simplex& s,
                                       const ConvexFunctionSpec& f,
                                       const PartitionUniverse& u,
                                       const VerifyConfig& cfg, int trial) {
  FunctionVerifyResult out;
  out.function = f.name;
  const int m = s.num_vertices();
  const int n = s.intrinsic_dim();
  FaceAverager faces(s, f);
  faces.precompute(campaign_faces(m, u), 1);
  ChainTally tally{cfg.tol, out};

  if (!f.convexity_certified) {
    out.convexity_warning =
        !convexity_sample_check(
             f, s, 200, derive_seed(cfg.seed, "verify_convexity", trial))
             .passed;
  }

  out.avg = faces.at(FaceSet::full(m));
  const double avg_v = out.avg.value;
  const double avg_b = out.avg.error_estimate;
  const double fb = evaluate(f, barycenter(s));
  const double vmean = detail::vertex_mean(s, f);

  tally.check([] { return std::string("f(barycenter) <= avg"); }, fb, avg_v,
              avg_b);
  tally.check([] { return std::string("avg <= vertex_mean"); }, avg_v, vmean,
              avg_b);
  {
    const ValueWithBudget b = vertex_face_bound(faces);
    tally.check([] { return std::string("avg <= vertex_face"); }, avg_v,
                b.value, avg_b + b.budget);
  }
  {
    const ValueWithBudget b = barycenter_face_bound(faces);
    tally.check([] { return std::string("avg <= barycenter_face"); }, avg_v,
                b.value, avg_b + b.budget);
  }
  {
    const double b = barycenter_vertex_bound(s, f);
    tally.check([] { return std::string("avg <= barycenter_vertex"); }, avg_v,
                b, avg_b);
    tally.check([] { return std::string("barycenter_vertex <= vertex_mean"); },
                b, vmean, 0);
  }
  tally.check([] { return std::string("avg <= all_faces_barycenter"); }, avg_v,
              all_faces_barycenter_bound(s, f), avg_b);
  for (int k = 2; k <= m; ++k) {
    tally.check(
        [k] { return "avg <= mixed_group_k" + std::to_string(k); }, avg_v,
        mixed_group_bound(s, f, k), avg_b);
  }
  for (int d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    const ValueWithBudget b = divisor_bound(faces, d);
    tally.check([d] { return "avg <= face_mean_card" + std::to_string(d); },
                avg_v, b.value, avg_b + b.budget);
  }

  // partition sandwich and refinement monotonicity
  std::vector<ValueWithBudget> F(u.parts.size());
  double vsum = 0;
  for (int i = 0; i < m; ++i) vsum += evaluate(f, s.vertex(i));
  for (std::size_t p = 0; p < u.parts.size(); ++p) {
    F[p] = F_functional(faces, u.parts[p]);
    tally.check(
        [&, p] { return "(n+1) avg <= F(" + to_text(u.parts[p]) + ")"; },
        m * avg_v, F[p].value, m * avg_b + F[p].budget);
    tally.check(
        [&, p] {
          return "F(" + to_text(u.parts[p]) + ") <= sum of vertex values";
        },
        F[p].value, vsum, F[p].budget);
  }
  for (const auto& [k, l] : u.refining_pairs) {
    tally.check(
        [&, k, l] {
          return "F(" + to_text(u.parts[static_cast<std::size_t>(k)]) +
                 ") <= F(" + to_text(u.parts[static_cast<std::size_t>(l)]) +
                 ")";
        },
        F[static_cast<std::size_t>(k)].value,
        F[static_cast<std::size_t>(l)].value,
        F[static_cast<std::size_t>(k)].budget +
            F[static_cast<std::size_t>(l)].budget);
  }

  // pairwise combine bound across all disjoint face pairs
  if (n <= 4) {
    for (unsigned ka = 1; ka < (1u << m); ++ka) {
      std::vector<int> kv;
      for (int i = 0; i < m; ++i)
        if (ka & (1u << i)) kv.push_back(i);
      const unsigned rest = ((1u << m) - 1u) & ~ka;
      for (unsigned lb = rest; lb; lb = (lb - 1) & rest) {
        if (lb < ka) continue;  // unordered pairs once
        std::vector<int> lv;
        for (int i = 0; i < m; ++i)
          if (lb & (1u << i)) lv.push_back(i);
        const FaceSet K(kv);
        const FaceSet L(lv);
        const ValueWithBudget aK = faces.value(K);
        const ValueWithBudget aL = faces.value(L);
        const ValueWithBudget aU = faces.value(K.united(L));
        const double comb =
            lemma_combine(K.card(), L.card(), aK.value, aL.value);
        tally.check(
            [&] {
              return "avg(" + K.to_string() + " u " + L.to_string() +
                     ") <= combine";
            },
            aU.value, comb, aU.budget + aK.budget + aL.budget);
      }
    }
  }
  return out;
}

}  // namespace detail

/// Seeded verification campaign: random simplices x catalog functions,
/// every inequality chain checked.  Identical results for any thread
/// count; trial order is by index.
inline VerifySummary run_verify(const VerifyConfig& cfg) {
  if (cfg.n < 1) throw Error("verify needs n >= 1");
  if (cfg.trials < 1) throw Error("verify needs trials >= 1");
  const PartitionUniverse u = build_partition_universe(cfg.n, cfg.seed);

  std::vector<ConvexFunctionSpec> functions = convex_catalog(cfg.n);
  if (cfg.inject_nonconvex) functions.push_back(concave_quadratic(cfg.n));

  std::vector<Simplex> simplices;
  simplices.reserve(static_cast<std::size_t>(cfg.trials));
  for (int t = 0; t < cfg.trials; ++t)
    simplices.push_back(
        random_simplex(cfg.n, derive_seed(cfg.seed, "trial_simplex",
                                          static_cast<std::uint64_t>(t))));

  const std::size_t per_trial = functions.size();
  const std::size_t n_tasks = per_trial * static_cast<std::size_t>(cfg.trials);
  std::vector<FunctionVerifyResult> results(n_tasks);
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    while (true) {
      const std::size_t task = next.fetch_add(1);
      if (task >= n_tasks) break;
      const int t = static_cast<int>(task / per_trial);
      const std::size_t fi = task % per_trial;
      results[task] = detail::verify_one(
          simplices[static_cast<std::size_t>(t)], functions[fi], u, cfg, t);
    }
  };
  if (cfg.threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < cfg.threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  VerifySummary sum;
  sum.n = cfg.n;
  sum.trials = cfg.trials;
  sum.seed = cfg.seed;
  sum.inject_nonconvex = cfg.inject_nonconvex;
  sum.sampled_partitions = u.sampled_partitions;
  sum.sampled_pairs = u.sampled_pairs;
  sum.partition_count = u.parts.size();
  sum.pair_count = u.refining_pairs.size();
  for (int t = 0; t < cfg.trials; ++t) {
    TrialResult tr;
    tr.trial = t;
    const Simplex& s = simplices[static_cast<std::size_t>(t)];
    for (int i = 0; i < s.num_vertices(); ++i) {
      std::vector<double> row;
      for (int j = 0; j < s.ambient_dim(); ++j)
        row.push_back(s.vertex(i)[j]);
      tr.simplex_vertices.push_back(std::move(row));
    }
    for (std::size_t fi = 0; fi < per_trial; ++fi) {
      FunctionVerifyResult& r =
          results[static_cast<std::size_t>(t) * per_trial + fi];
      sum.checked += r.checked;
      sum.failed += r.failed;
      sum.min_slack = std::min(sum.min_slack, r.min_slack);
      tr.functions.push_back(std::move(r));
    }
    sum.trials_detail.push_back(std::move(tr));
  }
  return sum;
}

}  // namespace simplexhh
