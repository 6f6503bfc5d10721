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

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "simplexhh/avg_result.hpp"
#include "simplexhh/errors.hpp"
#include "simplexhh/functions.hpp"
#include "simplexhh/geometry.hpp"

namespace simplexhh {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt factorial_big(int n) {
  if (n < 0) throw Error("factorial of negative argument");
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

/// Exact integral of the monomial prod alpha_i^{a_i} over the corner
/// region E_k: (prod a_i!)/(k + sum a_i)!.
inline BigRat monomial_integral_standard(std::span<const int> exponents) {
  const int k = static_cast<int>(exponents.size());
  if (k < 1) throw Error("monomial integral needs at least one variable");
  BigInt num = 1;
  int total = 0;
  for (int a : exponents) {
    if (a < 0) throw Error("negative exponent");
    num *= factorial_big(a);
    total += a;
  }
  return BigRat(num, factorial_big(k + total));
}

namespace detail {

// Exact-path budget: total degree and intrinsic-variable caps keep the
// multinomial expansion and the packed exponent key (6 bits per variable)
// within bounds.
constexpr int kExactMaxDegree = 16;
constexpr int kExactMaxVars = 10;

/// Sparse polynomial in up to kExactMaxVars variables with exact rational
/// coefficients.  Exponent vectors pack into one 64-bit key, 6 bits per
/// variable, so products combine keys by plain addition.
struct RationalPoly {
  std::map<std::uint64_t, BigRat> terms;

  static std::uint64_t pack_one(int var) {
    return std::uint64_t(1) << (6 * var);
  }

  void add(std::uint64_t key, const BigRat& c) {
    auto [it, inserted] = terms.emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  RationalPoly times(const RationalPoly& other) const {
    RationalPoly prod;
    for (const auto& [ka, ca] : terms)
      for (const auto& [kb, cb] : other.terms) prod.add(ka + kb, ca * cb);
    return prod;
  }
};

inline std::vector<int> unpack_exponents(std::uint64_t key, int n_vars) {
  std::vector<int> e(static_cast<std::size_t>(n_vars));
  for (int i = 0; i < n_vars; ++i)
    e[static_cast<std::size_t>(i)] = static_cast<int>((key >> (6 * i)) & 63u);
  return e;
}

inline const Polynomial* as_polynomial(const ConvexFunctionSpec& f,
                                       Polynomial& storage) {
  if (const auto* p = std::get_if<Polynomial>(&f.fn)) return p;
  if (const auto* a = std::get_if<Affine>(&f.fn)) {
    storage.terms.clear();
    PolynomialTerm c0;
    c0.coeff = a->c;
    c0.exponents.assign(static_cast<std::size_t>(f.dim), 0);
    storage.terms.push_back(std::move(c0));
    for (int i = 0; i < f.dim; ++i) {
      PolynomialTerm t;
      t.coeff = a->a[static_cast<std::size_t>(i)];
      t.exponents.assign(static_cast<std::size_t>(f.dim), 0);
      t.exponents[static_cast<std::size_t>(i)] = 1;
      storage.terms.push_back(std::move(t));
    }
    return &storage;
  }
  return nullptr;
}

}  // namespace detail

/// Exact average of a polynomial (or affine) function over a simplex.
/// The affine pullback through the simplex parametrization is expanded
/// with exact rational coefficients; one double conversion at the end.
inline AvgResult avg_polynomial_exact(const Simplex& s,
                                      const ConvexFunctionSpec& f) {
  Polynomial affine_storage;
  const Polynomial* poly = detail::as_polynomial(f, affine_storage);
  if (!poly) throw NotPolynomial("exact path requires a polynomial function");
  if (f.dim != s.ambient_dim())
    throw DimensionMismatch("function arity does not match simplex");

  int degree = 0;
  for (const auto& t : poly->terms) {
    int d = 0;
    for (int e : t.exponents) d += e;
    degree = std::max(degree, d);
  }
  if (degree > detail::kExactMaxDegree)
    throw UnsupportedDegree("polynomial degree beyond exact-path budget");

  AvgResult res;
  res.method = AvgMethod::Exact;
  res.error_estimate = 0;
  res.samples_or_degree = degree;

  const int k = s.intrinsic_dim();
  if (k == 0) {
    res.value = evaluate(f, s.vertex(0));
    return res;
  }
  if (k > detail::kExactMaxVars)
    throw UnsupportedDegree("intrinsic dimension beyond exact-path budget");

  // Coordinate j of the parametrization as an exact-rational affine form
  // c_0 + sum_i c_i alpha_i.  Doubles convert to rationals exactly.
  const int d = s.ambient_dim();
  std::vector<BigRat> base(static_cast<std::size_t>(d));
  std::vector<std::vector<BigRat>> slope(
      static_cast<std::size_t>(d),
      std::vector<BigRat>(static_cast<std::size_t>(k)));
  for (int j = 0; j < d; ++j) {
    base[static_cast<std::size_t>(j)] = BigRat(s.vertex(0)[j]);
    for (int i = 0; i < k; ++i)
      slope[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
          BigRat(s.vertex(i + 1)[j]) - BigRat(s.vertex(0)[j]);
  }

  detail::RationalPoly total;
  for (const auto& t : poly->terms) {
    detail::RationalPoly term;
    term.add(0, BigRat(t.coeff));
    for (int j = 0; j < d; ++j) {
      detail::RationalPoly lin;
      lin.add(0, base[static_cast<std::size_t>(j)]);
      for (int i = 0; i < k; ++i) {
        const BigRat& c =
            slope[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        if (c != 0) lin.add(detail::RationalPoly::pack_one(i), c);
      }
      for (int rep = 0; rep < t.exponents[static_cast<std::size_t>(j)]; ++rep)
        term = term.times(lin);
    }
    for (const auto& [key, c] : term.terms) total.add(key, c);
  }

  BigRat integral = 0;
  for (const auto& [key, c] : total.terms) {
    const std::vector<int> e = detail::unpack_exponents(key, k);
    integral += c * monomial_integral_standard(e);
  }
  const BigRat avg = integral * BigRat(factorial_big(k));
  res.value = avg.convert_to<double>();
  return res;
}

}  // namespace simplexhh
