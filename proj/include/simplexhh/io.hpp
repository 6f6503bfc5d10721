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

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "simplexhh/bounds.hpp"
#include "simplexhh/errors.hpp"
#include "simplexhh/functions.hpp"
#include "simplexhh/geometry.hpp"
#include "simplexhh/verify.hpp"

namespace simplexhh {

using Json = nlohmann::ordered_json;

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
}

/// Schema: {"vertices": [[x, ...], ...]}.
inline Simplex parse_simplex(const Json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
    throw ParseError("simplex JSON needs a \"vertices\" array");
  std::vector<std::vector<double>> rows;
  for (const auto& row : j["vertices"]) {
    if (!row.is_array()) throw ParseError("each vertex must be an array");
    std::vector<double> v;
    for (const auto& x : row) {
      if (!x.is_number()) throw ParseError("vertex coordinates must be numbers");
      v.push_back(x.get<double>());
    }
    rows.push_back(std::move(v));
  }
  if (rows.empty()) throw ParseError("simplex needs at least one vertex");
  return make_simplex(rows);
}

namespace detail {

inline std::vector<double> parse_vector(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    throw ParseError(std::string("function JSON needs array \"") + key + "\"");
  std::vector<double> v;
  for (const auto& x : j[key]) {
    if (!x.is_number()) throw ParseError("coefficients must be numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

inline std::vector<AffinePiece> parse_pieces(const Json& j) {
  if (!j.contains("pieces") || !j["pieces"].is_array())
    throw ParseError("function JSON needs a \"pieces\" array");
  std::vector<AffinePiece> out;
  for (const auto& pj : j["pieces"]) {
    AffinePiece p;
    p.a = parse_vector(pj, "a");
    p.c = pj.value("c", 0.0);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace detail

/// Schema: {"type": ..., "dim": ..., variant fields}, types polynomial,
/// exp_affine, max_affine, norm_power, log_sum_exp, affine.
inline ConvexFunctionSpec parse_function(const Json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw ParseError("function JSON needs a \"type\" string");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw ParseError("function JSON needs an integer \"dim\"");
  ConvexFunctionSpec f;
  f.dim = j["dim"].get<int>();
  const std::string type = j["type"].get<std::string>();
  f.name = j.value("name", type);
  if (type == "polynomial") {
    if (!j.contains("terms") || !j["terms"].is_array())
      throw ParseError("polynomial needs a \"terms\" array");
    Polynomial p;
    for (const auto& tj : j["terms"]) {
      PolynomialTerm t;
      if (!tj.contains("coeff") || !tj["coeff"].is_number())
        throw ParseError("each term needs a numeric \"coeff\"");
      t.coeff = tj["coeff"].get<double>();
      if (!tj.contains("exponents") || !tj["exponents"].is_array())
        throw ParseError("each term needs an \"exponents\" array");
      for (const auto& e : tj["exponents"]) {
        if (!e.is_number_integer() || e.get<int>() < 0)
          throw ParseError("exponents must be nonnegative integers");
        t.exponents.push_back(e.get<int>());
      }
      p.terms.push_back(std::move(t));
    }
    f.fn = std::move(p);
    f.convexity_certified = false;  // earned via the sampling check
  } else if (type == "exp_affine") {
    ExpAffine e;
    e.a = detail::parse_vector(j, "a");
    e.c = j.value("c", 0.0);
    f.fn = std::move(e);
    f.convexity_certified = true;
  } else if (type == "max_affine") {
    MaxAffine m;
    m.pieces = detail::parse_pieces(j);
    f.fn = std::move(m);
    f.convexity_certified = true;
  } else if (type == "norm_power") {
    NormPower n;
    if (!j.contains("p") || !j["p"].is_number())
      throw ParseError("norm_power needs numeric \"p\"");
    n.p = j["p"].get<double>();
    f.fn = n;
    f.convexity_certified = true;
  } else if (type == "log_sum_exp") {
    LogSumExp l;
    l.pieces = detail::parse_pieces(j);
    f.fn = std::move(l);
    f.convexity_certified = true;
  } else if (type == "affine") {
    Affine a;
    a.a = detail::parse_vector(j, "a");
    a.c = j.value("c", 0.0);
    f.fn = std::move(a);
    f.convexity_certified = true;
  } else {
    throw ParseError("unknown function type: " + type);
  }
  try {
    validate_spec(f);
  } catch (const Error& e) {
    throw ParseError(std::string("invalid function: ") + e.what());
  }
  return f;
}

inline Json avg_result_json(const AvgResult& r) {
  Json j;
  j["value"] = r.value;
  j["method"] = method_name(r.method);
  j["error_estimate"] = r.error_estimate;
  j["samples_or_degree"] = r.samples_or_degree;
  if (r.method == AvgMethod::MonteCarlo) j["seed"] = r.seed;
  return j;
}

inline Json chain_json(const ChainResult& c) {
  Json j;
  j["relation"] = c.relation;
  j["lhs"] = c.lhs;
  j["rhs"] = c.rhs;
  j["slack"] = c.slack;
  j["pass"] = c.pass;
  return j;
}

inline Json report_json(const BoundReport& r) {
  Json j;
  j["avg"] = avg_result_json(r.avg);
  j["barycenter_value"] = r.barycenter_value;
  j["vertex_mean"] = r.vertex_mean;
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json ej;
    ej["name"] = e.name;
    ej["rule"] = e.rule;
    if (e.error) {
      ej["error"] = *e.error;
    } else {
      ej["value"] = e.value;
      ej["margin"] = e.margin;
      ej["error_budget"] = e.error_budget;
      if (e.raw) ej["raw"] = *e.raw;
    }
    entries.push_back(std::move(ej));
  }
  j["entries"] = std::move(entries);
  Json chains = Json::array();
  for (const auto& c : r.chains) chains.push_back(chain_json(c));
  j["chains"] = std::move(chains);
  j["notes"] = r.notes;
  j["convexity_warning"] = r.convexity_warning;
  j["all_pass"] = r.all_pass;
  return j;
}

namespace detail {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

/// One row per entry: name, value, margin, pass of the matching
/// "avg <= name" chain.
inline std::string report_csv(const BoundReport& r) {
  std::string out = "name,value,margin,pass\n";
  for (const auto& e : r.entries) {
    if (e.error) {
      out += e.name + ",error,error,false\n";
      continue;
    }
    bool pass = true;
    for (const auto& c : r.chains)
      if (c.relation == "avg <= " + e.name) pass = c.pass;
    out += e.name + "," + detail::fmt17(e.value) + "," +
           detail::fmt17(e.margin) + "," + (pass ? "true" : "false") + "\n";
  }
  return out;
}

inline std::string report_text(const BoundReport& r) {
  std::string out;
  out += "avg = " + detail::fmt17(r.avg.value) + "  (" +
         method_name(r.avg.method) +
         ", err <= " + detail::fmt17(r.avg.error_estimate) + ")\n";
  out += "f(barycenter) = " + detail::fmt17(r.barycenter_value) + "\n";
  out += "vertex mean  = " + detail::fmt17(r.vertex_mean) + "\n";
  out += "bounds:\n";
  for (const auto& e : r.entries) {
    if (e.error) {
      out += "  " + e.name + ": ERROR " + *e.error + "\n";
    } else {
      out += "  " + e.name + " = " + detail::fmt17(e.value) +
             "  (margin " + detail::fmt17(e.margin) + ")\n";
    }
  }
  out += "chains:\n";
  for (const auto& c : r.chains)
    out += std::string("  [") + (c.pass ? "pass" : "FAIL") + "] " +
           c.relation + "  (slack " + detail::fmt17(c.slack) + ")\n";
  for (const auto& n : r.notes) out += "note: " + n + "\n";
  return out;
}

inline Json verify_json(const VerifySummary& s) {
  Json j;
  Json cfg;
  cfg["n"] = s.n;
  cfg["trials"] = s.trials;
  cfg["seed"] = s.seed;
  cfg["inject_nonconvex"] = s.inject_nonconvex;
  j["config"] = std::move(cfg);
  Json parts;
  parts["count"] = s.partition_count;
  parts["sampled"] = s.sampled_partitions;
  parts["refining_pairs"] = s.pair_count;
  parts["pairs_sampled"] = s.sampled_pairs;
  j["partitions"] = std::move(parts);
  Json totals;
  totals["checked"] = s.checked;
  totals["passed"] = s.checked - s.failed;
  totals["failed"] = s.failed;
  totals["min_slack"] = s.min_slack;
  j["totals"] = std::move(totals);
  Json trials = Json::array();
  for (const auto& t : s.trials_detail) {
    Json tj;
    tj["trial"] = t.trial;
    tj["simplex"] = t.simplex_vertices;
    Json fns = Json::array();
    for (const auto& f : t.functions) {
      Json fj;
      fj["name"] = f.function;
      fj["avg"] = avg_result_json(f.avg);
      fj["convexity_warning"] = f.convexity_warning;
      fj["checked"] = f.checked;
      fj["failed"] = f.failed;
      fj["min_slack"] = f.min_slack;
      Json fails = Json::array();
      for (const auto& fail : f.failures) {
        Json xj;
        xj["relation"] = fail.relation;
        xj["lhs"] = fail.lhs;
        xj["rhs"] = fail.rhs;
        xj["slack"] = fail.slack;
        fails.push_back(std::move(xj));
      }
      fj["failures"] = std::move(fails);
      fns.push_back(std::move(fj));
    }
    tj["functions"] = std::move(fns);
    trials.push_back(std::move(tj));
  }
  j["trials"] = std::move(trials);
  return j;
}

}  // namespace simplexhh
