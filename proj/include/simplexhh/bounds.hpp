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
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "simplexhh/errors.hpp"
#include "simplexhh/faceset.hpp"
#include "simplexhh/functions.hpp"
#include "simplexhh/geometry.hpp"
#include "simplexhh/integrate.hpp"
#include "simplexhh/partitions.hpp"

namespace simplexhh {

/// An inequality "lhs <= rhs" passes iff rhs - lhs >= -(abs_tol + the
/// integration error budgets of both sides).  The theorems are exact; the
/// slack only absorbs evaluator error, so affine equality cases pass.
struct TolerancePolicy {
  double abs_tol = 1e-9;
  double epsilon(double budget) const { return abs_tol + budget; }
};

/// A computed number together with the integration error it inherited.
struct ValueWithBudget {
  double value = 0;
  double budget = 0;
};

/// Caches face averages of one function over one simplex.  Values do not
/// depend on evaluation order, so parallel precomputation is safe.
class FaceAverager {
 public:
  FaceAverager(const Simplex& s, const ConvexFunctionSpec& f)
      : s_(s), f_(f) {}

  const Simplex& simplex() const { return s_; }
  const ConvexFunctionSpec& function() const { return f_; }

  const AvgResult& at(const FaceSet& K) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(K);
      if (it != cache_.end()) return it->second;
    }
    AvgResult r = best_avg(face(s_, K), f_);
    std::lock_guard<std::mutex> lock(mu_);
    return cache_.emplace(K, r).first->second;
  }

  ValueWithBudget value(const FaceSet& K) {
    const AvgResult& r = at(K);
    return {r.value, r.error_estimate};
  }

  void precompute(const std::vector<FaceSet>& faces, int threads) {
    if (threads <= 1 || faces.size() < 2) {
      for (const auto& K : faces) at(K);
      return;
    }
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= faces.size()) break;
        at(faces[i]);
      }
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(threads, static_cast<int>(faces.size()));
    for (int t = 0; t < n; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

 private:
  const Simplex& s_;
  const ConvexFunctionSpec& f_;
  std::map<FaceSet, AvgResult> cache_;
  std::mutex mu_;
};

namespace detail {

inline void require_full_dimensional(const Simplex& s) {
  if (s.intrinsic_dim() != s.ambient_dim())
    throw NotFullDimensional("operation requires a full n-simplex");
}

inline double vertex_mean(const Simplex& s, const ConvexFunctionSpec& f) {
  double m = 0;
  for (int i = 0; i < s.num_vertices(); ++i) m += evaluate(f, s.vertex(i));
  return m / s.num_vertices();
}

/// Barycenter of the vertex subset K, without building the face.
inline Eigen::VectorXd subset_barycenter(const Simplex& s, const FaceSet& K) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(s.ambient_dim());
  for (int i : K.indices()) b += s.vertex(i);
  return b / K.card();
}

/// Mean of f over the barycenters of all card-k vertex subsets.
inline double barycenter_level_mean(const Simplex& s,
                                    const ConvexFunctionSpec& f, int k) {
  double sum = 0;
  long long count = 0;
  for_each_combination(s.num_vertices(), k, [&](const std::vector<int>& ix) {
    Eigen::VectorXd b = Eigen::VectorXd::Zero(s.ambient_dim());
    for (int i : ix) b += s.vertex(i);
    sum += evaluate(f, b / k);
    ++count;
  });
  return sum / static_cast<double>(count);
}

}  // namespace detail

struct HHClassic {
  double lower = 0;  // value at the barycenter
  double upper = 0;  // mean of the vertex values
};

/// The two ends of the classical estimate: f(b) <= Avg <= vertex mean.
inline HHClassic hh_classic(const Simplex& s, const ConvexFunctionSpec& f) {
  detail::require_full_dimensional(s);
  HHClassic r;
  r.lower = evaluate(f, barycenter(s));
  r.upper = detail::vertex_mean(s, f);
  return r;
}

/// Partition functional: sum over blocks of card(block) * Avg(f, face).
/// Decreases under partition refinement for convex f.
inline ValueWithBudget F_functional(FaceAverager& faces, const Partition& P) {
  if (P.ground_size() != faces.simplex().num_vertices())
    throw GroundSetMismatch("partition does not match the vertex set");
  ValueWithBudget out;
  for (const auto& block : P.blocks()) {
    const ValueWithBudget a = faces.value(block);
    out.value += block.card() * a.value;
    out.budget += block.card() * a.budget;
  }
  return out;
}

inline ValueWithBudget F_functional(const Simplex& s,
                                    const ConvexFunctionSpec& f,
                                    const Partition& P) {
  FaceAverager faces(s, f);
  return F_functional(faces, P);
}

/// Weighted-mean upper bound for the average over the joined face given
/// the averages over two disjoint faces with k_card and l_card vertices.
inline double lemma_combine(int k_card, int l_card, double avg_K,
                            double avg_L) {
  if (k_card < 1 || l_card < 1) throw Error("face cardinalities must be >= 1");
  return (k_card * avg_K + l_card * avg_L) / (k_card + l_card);
}

/// One verified inequality lhs <= rhs.
struct ChainResult {
  std::string relation;
  double lhs = 0;
  double rhs = 0;
  double slack = 0;  // rhs - lhs
  bool pass = false;
};

inline ChainResult make_chain(std::string relation, double lhs, double rhs,
                              double budget, const TolerancePolicy& tol) {
  ChainResult c;
  c.relation = std::move(relation);
  c.lhs = lhs;
  c.rhs = rhs;
  c.slack = rhs - lhs;
  c.pass = c.slack >= -tol.epsilon(budget);
  return c;
}

/// F(K) <= F(L) whenever L refines K.
inline ChainResult check_refinement_monotonicity(FaceAverager& faces,
                                                 const Partition& K,
                                                 const Partition& L,
                                                 const TolerancePolicy& tol = {}) {
  if (!refines(L, K))
    throw NotARefinement("second partition must refine the first");
  const ValueWithBudget fk = F_functional(faces, K);
  const ValueWithBudget fl = F_functional(faces, L);
  return make_chain("F(" + to_text(K) + ") <= F(" + to_text(L) + ")", fk.value,
                    fl.value, fk.budget + fl.budget, tol);
}

inline ChainResult check_refinement_monotonicity(const Simplex& s,
                                                 const ConvexFunctionSpec& f,
                                                 const Partition& K,
                                                 const Partition& L,
                                                 const TolerancePolicy& tol = {}) {
  FaceAverager faces(s, f);
  return check_refinement_monotonicity(faces, K, L, tol);
}

/// Mix of the vertex mean and the mean of averages over the n+1 faces
/// opposite each vertex: (1/(n+1)) vertex mean + (n/(n+1)) face-avg mean.
inline ValueWithBudget vertex_face_bound(FaceAverager& faces) {
  const Simplex& s = faces.simplex();
  detail::require_full_dimensional(s);
  const int n = s.intrinsic_dim();
  if (n < 1) throw NotFullDimensional("needs n >= 1");
  ValueWithBudget sum;
  for (int i = 0; i <= n; ++i) {
    const ValueWithBudget a = faces.value(FaceSet{i}.complement(n + 1));
    sum.value += a.value;
    sum.budget += a.budget;
  }
  const double np1 = n + 1;
  ValueWithBudget out;
  out.value = detail::vertex_mean(s, faces.function()) / np1 +
              (n / np1) * sum.value / np1;
  out.budget = (n / np1) * sum.budget / np1;
  return out;
}

inline ValueWithBudget vertex_face_bound(const Simplex& s,
                                         const ConvexFunctionSpec& f) {
  FaceAverager faces(s, f);
  return vertex_face_bound(faces);
}

/// Mean of Avg(f, face) over all faces with d vertices, d a divisor of the
/// vertex count.  Works for embedded simplices as well.
inline ValueWithBudget divisor_bound(FaceAverager& faces, int d) {
  const Simplex& s = faces.simplex();
  const int m = s.num_vertices();
  if (d < 1 || m % d != 0)
    throw NotADivisor("face cardinality must divide the vertex count");
  ValueWithBudget out;
  long long count = 0;
  for_each_combination(m, d, [&](const std::vector<int>& ix) {
    const ValueWithBudget a = faces.value(FaceSet(ix));
    out.value += a.value;
    out.budget += a.budget;
    ++count;
  });
  out.value /= static_cast<double>(count);
  out.budget /= static_cast<double>(count);
  return out;
}

inline ValueWithBudget divisor_bound(const Simplex& s,
                                     const ConvexFunctionSpec& f, int d) {
  FaceAverager faces(s, f);
  return divisor_bound(faces, d);
}

/// Closed-form constant for the unit-edge regular n-simplex: the sum of
/// raw integrals over all card-d faces, scaled by this constant, bounds
/// the integral over the whole simplex.
inline double regular_face_sum_constant(int n, int d) {
  if (d < 1 || (n + 1) % d != 0)
    throw NotADivisor("face cardinality must divide n+1");
  const double c = binomial(n, d - 1);
  return (1.0 / (c * c)) / factorial(n + 1 - d) *
         std::sqrt(static_cast<double>(d) / (n + 1) /
                   ipow(2.0, n + 1 - d));
}

inline double regular_simplex_integral_bound(
    int n, int d, std::span<const double> face_integrals) {
  const double c = regular_face_sum_constant(n, d);
  const long long expected = binomial_count(n + 1, d);
  if (static_cast<long long>(face_integrals.size()) != expected)
    throw WrongCount("one integral per card-d face required");
  double sum = 0;
  for (double v : face_integrals) sum += v;
  return c * sum;
}

/// Mix of the barycenter value and the mean of averages over the n+1
/// faces opposite each vertex.
inline ValueWithBudget barycenter_face_bound(FaceAverager& faces) {
  const Simplex& s = faces.simplex();
  detail::require_full_dimensional(s);
  const int n = s.intrinsic_dim();
  if (n < 1) throw NotFullDimensional("needs n >= 1");
  ValueWithBudget sum;
  for (int i = 0; i <= n; ++i) {
    const ValueWithBudget a = faces.value(FaceSet{i}.complement(n + 1));
    sum.value += a.value;
    sum.budget += a.budget;
  }
  const double np1 = n + 1;
  ValueWithBudget out;
  out.value = evaluate(faces.function(), barycenter(s)) / np1 +
              (n / np1) * sum.value / np1;
  out.budget = (n / np1) * sum.budget / np1;
  return out;
}

inline ValueWithBudget barycenter_face_bound(const Simplex& s,
                                             const ConvexFunctionSpec& f) {
  FaceAverager faces(s, f);
  return barycenter_face_bound(faces);
}

/// Mix of the barycenter value and the vertex mean:
/// (1/(n+1)) f(b) + (n/(n+1)) vertex mean.
inline double barycenter_vertex_bound(const Simplex& s,
                                      const ConvexFunctionSpec& f) {
  detail::require_full_dimensional(s);
  const double np1 = s.num_vertices();
  return evaluate(f, barycenter(s)) / np1 +
         (s.intrinsic_dim() / np1) * detail::vertex_mean(s, f);
}

/// Average of f over the barycenters of every nonempty vertex subset,
/// weighted uniformly across subset cardinalities.
inline double all_faces_barycenter_bound(const Simplex& s,
                                         const ConvexFunctionSpec& f) {
  detail::require_full_dimensional(s);
  const int m = s.num_vertices();
  double total = 0;
  for (int k = 1; k <= m; ++k)
    total += detail::barycenter_level_mean(s, f, k);
  return total / m;
}

/// Exact mixing weights for the grouped bound: alpha = floor((n+1)/k)/(n+1)
/// multiplies the card-k barycenter mean, 1 - alpha the vertex mean.  For
/// k = 2 the complement is ceil((n+1)/2)/(n+1).
struct MixedWeights {
  int floor_part = 0;
  int ceil_part = 0;
  int denom = 1;
  double alpha() const { return static_cast<double>(floor_part) / denom; }
  double beta() const { return static_cast<double>(ceil_part) / denom; }
};

inline MixedWeights mixed_weights(int n, int k) {
  if (k < 1 || k > n + 1) throw Error("group size must lie in 1..n+1");
  MixedWeights w;
  w.denom = n + 1;
  w.floor_part = (n + 1) / k;
  w.ceil_part = (n + 1) - (n + 1) / 2;  // ceil((n+1)/2)
  return w;
}

/// Grouped bound: alpha (mean of f over card-k barycenters) + (1 - alpha)
/// (vertex mean).
inline double mixed_group_bound(const Simplex& s, const ConvexFunctionSpec& f,
                                int k) {
  const int n = s.intrinsic_dim();
  const MixedWeights w = mixed_weights(n, k);
  const double level = detail::barycenter_level_mean(s, f, k);
  return w.alpha() * level + (1 - w.alpha()) * detail::vertex_mean(s, f);
}

struct BoundEntry {
  std::string name;
  std::string rule;  // human description of the formula
  double value = 0;
  double margin = 0;  // value - avg
  double error_budget = 0;
  std::optional<double> raw;  // unnormalized companion value, when distinct
  std::optional<std::string> error;
};

struct BoundReport {
  AvgResult avg;
  double barycenter_value = 0;
  double vertex_mean = 0;
  std::vector<BoundEntry> entries;
  std::vector<ChainResult> chains;
  std::vector<std::string> notes;
  bool convexity_warning = false;
  bool all_pass = true;
};

struct ReportOptions {
  std::vector<Partition> partitions;
  bool check_convexity = true;
  int convexity_trials = 200;
  std::uint64_t seed = 0;
  int threads = 1;
  TolerancePolicy tol{};
};

/// Evaluates every applicable bound and inequality for one function on one
/// simplex.  Individual failures are recorded, never thrown.
inline BoundReport full_report(const Simplex& s, const ConvexFunctionSpec& f,
                               const ReportOptions& opt = {}) {
  BoundReport rep;
  const int n = s.intrinsic_dim();
  const int m = s.num_vertices();
  const bool full_dim = (n == s.ambient_dim());
  FaceAverager faces(s, f);

  if (opt.check_convexity && !f.convexity_certified) {
    const auto check = convexity_sample_check(
        f, s, opt.convexity_trials, derive_seed(opt.seed, "report_convexity"));
    if (!check.passed) {
      rep.convexity_warning = true;
      rep.notes.push_back(
          "WARNING: function failed the convexity sampling check; "
          "inequalities below are not guaranteed");
    }
  }

  // Parallel warm-up of every face average the entries will request.
  {
    std::vector<FaceSet> wanted;
    wanted.push_back(FaceSet::full(m));
    if (n >= 1 && full_dim)
      for (int i = 0; i <= n; ++i)
        wanted.push_back(FaceSet{i}.complement(n + 1));
    for (int d = 1; d <= m; ++d)
      if (m % d == 0)
        for_each_combination(m, d, [&](const std::vector<int>& ix) {
          wanted.push_back(FaceSet(ix));
        });
    for (const auto& P : opt.partitions)
      if (P.ground_size() == m)
        for (const auto& b : P.blocks()) wanted.push_back(b);
    faces.precompute(wanted, opt.threads);
  }

  rep.avg = faces.at(FaceSet::full(m));
  const double avg_v = rep.avg.value;
  const double avg_b = rep.avg.error_estimate;
  rep.barycenter_value = evaluate(f, barycenter(s));
  rep.vertex_mean = detail::vertex_mean(s, f);

  const auto add_entry = [&](const std::string& name, const std::string& rule,
                             ValueWithBudget v,
                             std::optional<double> raw = std::nullopt) {
    BoundEntry e;
    e.name = name;
    e.rule = rule;
    e.value = v.value;
    e.margin = v.value - avg_v;
    e.error_budget = v.budget;
    e.raw = raw;
    rep.entries.push_back(e);
    rep.chains.push_back(make_chain("avg <= " + name, avg_v, v.value,
                                    avg_b + v.budget, opt.tol));
  };
  const auto add_failed_entry = [&](const std::string& name,
                                    const std::string& rule,
                                    const std::exception& err) {
    BoundEntry e;
    e.name = name;
    e.rule = rule;
    e.error = err.what();
    rep.entries.push_back(e);
  };

  rep.chains.push_back(make_chain("f(barycenter) <= avg", rep.barycenter_value,
                                  avg_v, avg_b, opt.tol));
  add_entry("vertex_mean", "mean of vertex values",
            {rep.vertex_mean, 0});

  if (full_dim && n >= 1) {
    try {
      add_entry("vertex_face",
                "vertex mean and opposite-face averages, mixed 1:n",
                vertex_face_bound(faces));
    } catch (const Error& e) {
      add_failed_entry("vertex_face", "vertex-face mix", e);
    }
    try {
      add_entry("barycenter_face",
                "barycenter value and opposite-face averages, mixed 1:n",
                barycenter_face_bound(faces));
    } catch (const Error& e) {
      add_failed_entry("barycenter_face", "barycenter-face mix", e);
    }
    try {
      const double bv = barycenter_vertex_bound(s, f);
      add_entry("barycenter_vertex",
                "barycenter value and vertex mean, mixed 1:n", {bv, 0});
      rep.chains.push_back(make_chain("barycenter_vertex <= vertex_mean", bv,
                                      rep.vertex_mean, 0, opt.tol));
    } catch (const Error& e) {
      add_failed_entry("barycenter_vertex", "barycenter-vertex mix", e);
    }
    try {
      add_entry("all_faces_barycenter",
                "mean of f over every face barycenter",
                {all_faces_barycenter_bound(s, f), 0});
    } catch (const Error& e) {
      add_failed_entry("all_faces_barycenter", "face-barycenter mean", e);
    }
    for (int k = 2; k <= m; ++k) {
      const std::string name = "mixed_group_k" + std::to_string(k);
      try {
        add_entry(name,
                  "card-k barycenter mean and vertex mean, floor-weighted",
                  {mixed_group_bound(s, f, k), 0});
      } catch (const Error& e) {
        add_failed_entry(name, "grouped mix", e);
      }
    }
  } else {
    rep.notes.push_back(
        "embedded simplex: bounds requiring a full-dimensional simplex "
        "were skipped");
  }

  for (int d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    const std::string name = "face_mean_card" + std::to_string(d);
    try {
      add_entry(name, "mean of averages over all card-" + std::to_string(d) +
                          " faces",
                divisor_bound(faces, d));
    } catch (const Error& e) {
      add_failed_entry(name, "divisor-face mean", e);
    }
  }

  for (const auto& P : opt.partitions) {
    const std::string text = to_text(P);
    try {
      const ValueWithBudget F = F_functional(faces, P);
      add_entry("partition[" + text + "]",
                "partition functional over " + text + ", divided by n+1",
                {F.value / m, F.budget / m}, F.value);
      double vsum = 0;
      for (int i = 0; i < m; ++i) vsum += evaluate(f, s.vertex(i));
      rep.chains.push_back(make_chain("F(" + text + ") <= sum of vertex values",
                                      F.value, vsum, F.budget, opt.tol));
    } catch (const Error& e) {
      add_failed_entry("partition[" + text + "]", "partition functional", e);
    }
  }
  for (std::size_t i = 0; i < opt.partitions.size(); ++i)
    for (std::size_t j = 0; j < opt.partitions.size(); ++j) {
      if (i == j) continue;
      const Partition& K = opt.partitions[i];
      const Partition& L = opt.partitions[j];
      if (K.ground_size() != m || L.ground_size() != m) continue;
      if (!refines(L, K)) continue;
      try {
        rep.chains.push_back(
            check_refinement_monotonicity(faces, K, L, opt.tol));
      } catch (const Error&) {
        // partition errors already surfaced by the entry pass
      }
    }

  // Observed (not asserted) tightness orderings.
  if (full_dim && n >= 1) {
    const auto find_entry = [&](const std::string& name) -> const BoundEntry* {
      for (const auto& e : rep.entries)
        if (e.name == name && !e.error) return &e;
      return nullptr;
    };
    const BoundEntry* bv = find_entry("barycenter_vertex");
    const BoundEntry* vf = find_entry("vertex_face");
    if (bv && vf)
      rep.notes.push_back(
          std::string("tighter of vertex mixes: ") +
          (bv->value <= vf->value ? "barycenter_vertex" : "vertex_face"));
    const BoundEntry* af = find_entry("all_faces_barycenter");
    if (bv && af)
      rep.notes.push_back(
          std::string("tighter of barycenter bounds: ") +
          (af->value <= bv->value ? "all_faces_barycenter"
                                  : "barycenter_vertex"));
  }

  for (const auto& c : rep.chains)
    if (!c.pass) rep.all_pass = false;
  return rep;
}

}  // namespace simplexhh
