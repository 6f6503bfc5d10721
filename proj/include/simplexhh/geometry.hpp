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
#include <cmath>
#include <span>
#include <vector>

#include "simplexhh/errors.hpp"
#include "simplexhh/faceset.hpp"
#include "simplexhh/util.hpp"

namespace simplexhh {

namespace detail {

/// Unnormalized k-volume sqrt(det(M^T M)) of the edge matrix M, together
/// with the longest pairwise vertex distance.  Both are 0/0 for a single
/// vertex.
struct GramInfo {
  double sqrt_gram = 0;
  double max_edge = 0;
};

inline GramInfo gram_info(const std::vector<Eigen::VectorXd>& v) {
  GramInfo info;
  const int k = static_cast<int>(v.size()) - 1;
  if (k <= 0) return info;
  const auto d = v[0].size();
  Eigen::MatrixXd m(d, k);
  for (int i = 0; i < k; ++i)
    m.col(i) = v[static_cast<std::size_t>(i + 1)] - v[0];
  const Eigen::MatrixXd gram = m.transpose() * m;
  info.sqrt_gram = std::sqrt(std::max(0.0, gram.determinant()));
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      info.max_edge = std::max(info.max_edge, (v[i] - v[j]).norm());
  return info;
}

}  // namespace detail

/// k-simplex given by k+1 affinely independent vertices in R^d, k <= d.
/// Construction rejects degenerate vertex lists; the k-volume is cached.
class Simplex {
 public:
  explicit Simplex(std::vector<Eigen::VectorXd> vertices)
      : v_(std::move(vertices)) {
    if (v_.empty()) throw DimensionMismatch("simplex needs at least 1 vertex");
    const auto d = v_[0].size();
    for (const auto& x : v_)
      if (x.size() != d)
        throw DimensionMismatch("simplex vertices of mixed dimension");
    const int k = intrinsic_dim();
    if (k > ambient_dim())
      throw DegenerateSimplex("more vertices than ambient dimension allows");
    if (k == 0) {
      volume_ = 1;  // counting measure on a point
      return;
    }
    const auto info = detail::gram_info(v_);
    if (info.sqrt_gram < 1e-10 * ipow(info.max_edge, k))
      throw DegenerateSimplex("affinely dependent vertices");
    volume_ = info.sqrt_gram / factorial(k);
  }

  int ambient_dim() const { return static_cast<int>(v_[0].size()); }
  int num_vertices() const { return static_cast<int>(v_.size()); }
  int intrinsic_dim() const { return num_vertices() - 1; }

  const Eigen::VectorXd& vertex(int i) const {
    if (i < 0 || i >= num_vertices())
      throw IndexOutOfRange("vertex index out of range");
    return v_[static_cast<std::size_t>(i)];
  }
  const std::vector<Eigen::VectorXd>& vertices() const { return v_; }

  /// Intrinsic k-volume (1 for a single vertex).
  double volume() const { return volume_; }

 private:
  std::vector<Eigen::VectorXd> v_;
  double volume_ = 0;
};

inline Simplex make_simplex(const std::vector<std::vector<double>>& vertices) {
  std::vector<Eigen::VectorXd> v;
  v.reserve(vertices.size());
  for (const auto& row : vertices) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(row.size()));
    for (std::size_t j = 0; j < row.size(); ++j)
      x[static_cast<Eigen::Index>(j)] = row[j];
    v.push_back(std::move(x));
  }
  return Simplex(std::move(v));
}

/// Sub-simplex spanned by the vertices selected by K.
inline Simplex face(const Simplex& s, const FaceSet& K) {
  if (K.empty()) throw IndexOutOfRange("face of empty vertex set");
  std::vector<Eigen::VectorXd> v;
  v.reserve(static_cast<std::size_t>(K.card()));
  for (int i : K.indices()) v.push_back(s.vertex(i));
  try {
    return Simplex(std::move(v));
  } catch (const DegenerateSimplex& e) {
    throw DegenerateFace(e.what());
  }
}

inline Eigen::VectorXd barycenter(const Simplex& s) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(s.ambient_dim());
  for (const auto& x : s.vertices()) b += x;
  return b / s.num_vertices();
}

inline double volume(const Simplex& s) { return s.volume(); }

/// Affine parametrization y_0 + sum alpha_i (y_i - y_0) of the simplex over
/// the corner region E_k = {alpha >= 0, sum alpha <= 1}.
inline Eigen::VectorXd phi_map(const Simplex& s, std::span<const double> alpha) {
  const int k = s.intrinsic_dim();
  if (static_cast<int>(alpha.size()) != k)
    throw DimensionMismatch("phi_map expects one coordinate per edge");
  Eigen::VectorXd y = s.vertex(0);
  for (int i = 0; i < k; ++i)
    y += alpha[static_cast<std::size_t>(i)] * (s.vertex(i + 1) - s.vertex(0));
  return y;
}

/// Simplex with vertices 0, e_1, ..., e_k in R^k.  k = 0 gives the single
/// point of R^0.
inline Simplex standard_simplex(int k) {
  if (k < 0) throw DimensionMismatch("negative dimension");
  std::vector<Eigen::VectorXd> v;
  v.reserve(static_cast<std::size_t>(k + 1));
  v.push_back(Eigen::VectorXd::Zero(k));
  for (int i = 0; i < k; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(k);
    e[i] = 1;
    v.push_back(std::move(e));
  }
  return Simplex(std::move(v));
}

/// Regular n-simplex with unit edge length, embedded in R^{n+1} with
/// vertices e_i / sqrt(2).
inline Simplex regular_simplex(int n) {
  if (n < 0) throw DimensionMismatch("negative dimension");
  std::vector<Eigen::VectorXd> v;
  v.reserve(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n + 1);
    e[i] = 1 / std::sqrt(2.0);
    v.push_back(std::move(e));
  }
  return Simplex(std::move(v));
}

/// The n+1 subsimplices obtained by moving one vertex to the barycenter.
/// Entry i replaces vertex i.
inline std::vector<Simplex> split_at_barycenter(const Simplex& s) {
  if (s.intrinsic_dim() < 1)
    throw DegenerateSimplex("cannot split a single vertex");
  const Eigen::VectorXd b = barycenter(s);
  std::vector<Simplex> parts;
  parts.reserve(static_cast<std::size_t>(s.num_vertices()));
  for (int i = 0; i < s.num_vertices(); ++i) {
    std::vector<Eigen::VectorXd> v = s.vertices();
    v[static_cast<std::size_t>(i)] = b;
    parts.emplace_back(std::move(v));
  }
  return parts;
}

/// Convex weights over the vertices of a simplex.
struct BarycentricPoint {
  std::vector<double> weights;
};

inline Eigen::VectorXd point_at(const Simplex& s, const BarycentricPoint& p) {
  if (static_cast<int>(p.weights.size()) != s.num_vertices())
    throw DimensionMismatch("one barycentric weight per vertex required");
  double sum = 0;
  for (double w : p.weights) {
    if (w < -1e-12) throw Error("negative barycentric weight");
    sum += w;
  }
  if (std::abs(sum - 1) > 1e-9)
    throw Error("barycentric weights must sum to 1");
  Eigen::VectorXd y = Eigen::VectorXd::Zero(s.ambient_dim());
  for (int i = 0; i < s.num_vertices(); ++i)
    y += p.weights[static_cast<std::size_t>(i)] * s.vertex(i);
  return y;
}

/// Orthonormal basis of the edge span, as columns of a d x k matrix.  Maps
/// intrinsic coordinates to ambient displacements from vertex 0.
inline Eigen::MatrixXd orthonormal_edge_basis(const Simplex& s) {
  const int k = s.intrinsic_dim();
  const int d = s.ambient_dim();
  Eigen::MatrixXd m(d, k);
  for (int i = 0; i < k; ++i) m.col(i) = s.vertex(i + 1) - s.vertex(0);
  if (k == 0) return m;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, k);
  return q;
}

}  // namespace simplexhh
