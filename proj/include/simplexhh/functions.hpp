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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "simplexhh/errors.hpp"
#include "simplexhh/geometry.hpp"
#include "simplexhh/rng.hpp"
#include "simplexhh/util.hpp"

namespace simplexhh {

struct PolynomialTerm {
  double coeff = 0;
  std::vector<int> exponents;
};

/// Sum of coeff * prod x_i^e_i terms.
struct Polynomial {
  std::vector<PolynomialTerm> terms;
};

/// x -> exp(a.x + c).
struct ExpAffine {
  std::vector<double> a;
  double c = 0;
};

struct AffinePiece {
  std::vector<double> a;
  double c = 0;
};

/// x -> max over pieces of (a.x + c).
struct MaxAffine {
  std::vector<AffinePiece> pieces;
};

/// x -> |x|_2 ^ p with p >= 1.
struct NormPower {
  double p = 2;
};

/// x -> log sum over pieces of exp(a.x + c).
struct LogSumExp {
  std::vector<AffinePiece> pieces;
};

/// x -> a.x + c.
struct Affine {
  std::vector<double> a;
  double c = 0;
};

/// Test function over R^dim with a convexity certificate.  Non-polynomial
/// variants are convex by construction; polynomials carry the flag only
/// after passing the sampling check.
struct ConvexFunctionSpec {
  std::string name;
  int dim = 0;
  std::variant<Polynomial, ExpAffine, MaxAffine, NormPower, LogSumExp, Affine>
      fn;
  bool convexity_certified = false;
};

namespace detail {

inline double dot_affine(const std::vector<double>& a, double c,
                         const Eigen::VectorXd& x) {
  double v = c;
  for (std::size_t i = 0; i < a.size(); ++i)
    v += a[i] * x[static_cast<Eigen::Index>(i)];
  return v;
}

}  // namespace detail

inline void validate_spec(const ConvexFunctionSpec& f) {
  if (f.dim < 0) throw DimensionMismatch("negative function arity");
  if (const auto* p = std::get_if<Polynomial>(&f.fn)) {
    for (const auto& t : p->terms) {
      if (static_cast<int>(t.exponents.size()) != f.dim)
        throw DimensionMismatch("polynomial term arity mismatch");
      for (int e : t.exponents)
        if (e < 0) throw Error("negative exponent in polynomial");
    }
  } else if (const auto* e = std::get_if<ExpAffine>(&f.fn)) {
    if (static_cast<int>(e->a.size()) != f.dim)
      throw DimensionMismatch("direction arity mismatch");
  } else if (const auto* m = std::get_if<MaxAffine>(&f.fn)) {
    if (m->pieces.empty()) throw Error("max of zero affine pieces");
    for (const auto& pc : m->pieces)
      if (static_cast<int>(pc.a.size()) != f.dim)
        throw DimensionMismatch("piece arity mismatch");
  } else if (const auto* n = std::get_if<NormPower>(&f.fn)) {
    if (!(n->p >= 1)) throw Error("norm power requires p >= 1");
  } else if (const auto* l = std::get_if<LogSumExp>(&f.fn)) {
    if (l->pieces.empty()) throw Error("log-sum-exp of zero pieces");
    for (const auto& pc : l->pieces)
      if (static_cast<int>(pc.a.size()) != f.dim)
        throw DimensionMismatch("piece arity mismatch");
  } else if (const auto* a = std::get_if<Affine>(&f.fn)) {
    if (static_cast<int>(a->a.size()) != f.dim)
      throw DimensionMismatch("direction arity mismatch");
  }
}

inline double evaluate(const ConvexFunctionSpec& f, const Eigen::VectorXd& x) {
  if (static_cast<int>(x.size()) != f.dim)
    throw DimensionMismatch("point dimension does not match function arity");
  double v = 0;
  if (const auto* p = std::get_if<Polynomial>(&f.fn)) {
    for (const auto& t : p->terms) {
      double m = t.coeff;
      for (std::size_t i = 0; i < t.exponents.size(); ++i)
        m *= ipow(x[static_cast<Eigen::Index>(i)], t.exponents[i]);
      v += m;
    }
  } else if (const auto* e = std::get_if<ExpAffine>(&f.fn)) {
    v = std::exp(detail::dot_affine(e->a, e->c, x));
  } else if (const auto* m = std::get_if<MaxAffine>(&f.fn)) {
    v = detail::dot_affine(m->pieces[0].a, m->pieces[0].c, x);
    for (std::size_t i = 1; i < m->pieces.size(); ++i)
      v = std::max(v, detail::dot_affine(m->pieces[i].a, m->pieces[i].c, x));
  } else if (const auto* n = std::get_if<NormPower>(&f.fn)) {
    v = std::pow(x.norm(), n->p);
  } else if (const auto* l = std::get_if<LogSumExp>(&f.fn)) {
    double zmax = detail::dot_affine(l->pieces[0].a, l->pieces[0].c, x);
    for (std::size_t i = 1; i < l->pieces.size(); ++i)
      zmax =
          std::max(zmax, detail::dot_affine(l->pieces[i].a, l->pieces[i].c, x));
    double s = 0;
    for (const auto& pc : l->pieces)
      s += std::exp(detail::dot_affine(pc.a, pc.c, x) - zmax);
    v = zmax + std::log(s);
  } else if (const auto* a = std::get_if<Affine>(&f.fn)) {
    v = detail::dot_affine(a->a, a->c, x);
  }
  if (!std::isfinite(v)) throw Overflow("function value is not finite");
  return v;
}

struct ConvexityWitness {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  double lambda = 0;
  double violation = 0;
};

struct ConvexityCheckResult {
  bool passed = true;
  std::optional<ConvexityWitness> witness;
  explicit operator bool() const { return passed; }
};

/// Midpoint-style convexity test on sampled point pairs of the simplex.
/// Tolerance 1e-9 absorbs rounding near affine regions.
inline ConvexityCheckResult convexity_sample_check(const ConvexFunctionSpec& f,
                                                   const Simplex& s,
                                                   int trials,
                                                   std::uint64_t seed) {
  if (trials < 1) throw Error("convexity check needs at least one trial");
  if (f.dim != s.ambient_dim())
    throw DimensionMismatch("function arity does not match simplex");
  CounterRng rng(seed, hash_label("convexity_sample_check"));
  const int m = s.num_vertices();
  const auto sample_point = [&]() {
    const std::vector<double> w = dirichlet_uniform(rng, m);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(s.ambient_dim());
    for (int i = 0; i < m; ++i)
      x += w[static_cast<std::size_t>(i)] * s.vertex(i);
    return x;
  };
  ConvexityCheckResult res;
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXd x = sample_point();
    const Eigen::VectorXd y = sample_point();
    const double fx = evaluate(f, x);
    const double fy = evaluate(f, y);
    for (double lambda : {0.25, 0.5, 0.75}) {
      const Eigen::VectorXd z = lambda * x + (1 - lambda) * y;
      const double fz = evaluate(f, z);
      const double gap = fz - (lambda * fx + (1 - lambda) * fy);
      if (gap > 1e-9) {
        res.passed = false;
        res.witness = ConvexityWitness{x, y, lambda, gap};
        return res;
      }
    }
  }
  return res;
}

/// Fixed catalog of convex test functions over R^dim, one per variant;
/// the polynomial entry earns its certificate from the sampling check.
inline std::vector<ConvexFunctionSpec> convex_catalog(int dim) {
  if (dim < 1) throw DimensionMismatch("catalog needs dim >= 1");
  std::vector<ConvexFunctionSpec> out;

  {
    ConvexFunctionSpec f;
    f.name = "sum_of_squares";
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
    out.push_back(std::move(f));
  }
  {
    ConvexFunctionSpec f;
    f.name = "affine_ramp";
    f.dim = dim;
    Affine a;
    a.c = 0.5;
    for (int i = 0; i < dim; ++i) a.a.push_back(1.0 + 0.5 * i);
    f.fn = std::move(a);
    f.convexity_certified = true;
    out.push_back(std::move(f));
  }
  {
    ConvexFunctionSpec f;
    f.name = "exp_ramp";
    f.dim = dim;
    ExpAffine e;
    e.c = 0;
    for (int i = 0; i < dim; ++i)
      e.a.push_back(0.5 / std::sqrt(static_cast<double>(dim)));
    f.fn = std::move(e);
    f.convexity_certified = true;
    out.push_back(std::move(f));
  }
  {
    ConvexFunctionSpec f;
    f.name = "max_coordinate";
    f.dim = dim;
    MaxAffine m;
    for (int i = 0; i < dim; ++i) {
      for (double sign : {1.0, -1.0}) {
        AffinePiece pc;
        pc.a.assign(static_cast<std::size_t>(dim), 0.0);
        pc.a[static_cast<std::size_t>(i)] = sign;
        m.pieces.push_back(std::move(pc));
      }
    }
    f.fn = std::move(m);
    f.convexity_certified = true;
    out.push_back(std::move(f));
  }
  {
    ConvexFunctionSpec f;
    f.name = "norm_cubed";
    f.dim = dim;
    f.fn = NormPower{3.0};
    f.convexity_certified = true;
    out.push_back(std::move(f));
  }
  {
    ConvexFunctionSpec f;
    f.name = "soft_max";
    f.dim = dim;
    LogSumExp l;
    {
      AffinePiece zero;
      zero.a.assign(static_cast<std::size_t>(dim), 0.0);
      l.pieces.push_back(std::move(zero));
    }
    for (int i = 0; i < dim; ++i) {
      AffinePiece pc;
      pc.a.assign(static_cast<std::size_t>(dim), 0.0);
      pc.a[static_cast<std::size_t>(i)] = 1;
      l.pieces.push_back(std::move(pc));
    }
    f.fn = std::move(l);
    f.convexity_certified = true;
    out.push_back(std::move(f));
  }

  for (auto& f : out) {
    validate_spec(f);
    if (std::holds_alternative<Polynomial>(f.fn))
      f.convexity_certified =
          convexity_sample_check(f, standard_simplex(dim), 1000, 0x5ca1ab1e)
              .passed;
  }
  return out;
}

/// Concave control function -|x|^2; certificate deliberately absent.
inline ConvexFunctionSpec concave_quadratic(int dim) {
  ConvexFunctionSpec f;
  f.name = "negated_square_norm";
  f.dim = dim;
  Polynomial p;
  for (int i = 0; i < dim; ++i) {
    PolynomialTerm t;
    t.coeff = -1;
    t.exponents.assign(static_cast<std::size_t>(dim), 0);
    t.exponents[static_cast<std::size_t>(i)] = 2;
    p.terms.push_back(std::move(t));
  }
  f.fn = std::move(p);
  f.convexity_certified = false;
  return f;
}

/// Seeded affine function with coefficients in [-1, 1].
inline ConvexFunctionSpec random_affine(int dim, std::uint64_t seed) {
  CounterRng rng(seed, hash_label("random_affine"));
  ConvexFunctionSpec f;
  f.name = "random_affine";
  f.dim = dim;
  Affine a;
  for (int i = 0; i < dim; ++i) a.a.push_back(rng.next_in(-1, 1));
  a.c = rng.next_in(-1, 1);
  f.fn = std::move(a);
  f.convexity_certified = true;
  return f;
}

}  // namespace simplexhh
