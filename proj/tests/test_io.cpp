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

#include <cstdio>
#include <fstream>

#include "simplexhh/io.hpp"

namespace simplexhh {
namespace {

using Catch::Matchers::WithinAbs;

TEST_CASE("simplex JSON round trip") {
  const Json j = Json::parse(R"({"vertices": [[0,0],[1,0],[0,1]]})");
  const Simplex s = parse_simplex(j);
  REQUIRE(s.num_vertices() == 3);
  CHECK(s.vertex(1)[0] == 1.0);
  CHECK_THAT(s.volume(), WithinAbs(0.5, 1e-15));

  CHECK_THROWS_AS(parse_simplex(Json::parse(R"({"points": []})")), ParseError);
  CHECK_THROWS_AS(parse_simplex(Json::parse(R"({"vertices": "x"})")),
                  ParseError);
  CHECK_THROWS_AS(parse_simplex(Json::parse(R"({"vertices": [[0],["a"]]})")),
                  ParseError);
}

TEST_CASE("function JSON covers every variant") {
  const ConvexFunctionSpec poly = parse_function(Json::parse(
      R"({"type":"polynomial","dim":2,
          "terms":[{"coeff":1,"exponents":[2,0]},
                   {"coeff":1,"exponents":[0,2]}]})"));
  CHECK(poly.name == "polynomial");
  CHECK(!poly.convexity_certified);
  CHECK(std::holds_alternative<Polynomial>(poly.fn));

  const ConvexFunctionSpec named = parse_function(Json::parse(
      R"({"type":"affine","dim":2,"name":"ramp","a":[1,2],"c":0.5})"));
  CHECK(named.name == "ramp");
  CHECK(named.convexity_certified);

  CHECK(std::holds_alternative<ExpAffine>(
      parse_function(
          Json::parse(R"({"type":"exp_affine","dim":1,"a":[1]})"))
          .fn));
  CHECK(std::holds_alternative<MaxAffine>(
      parse_function(Json::parse(
                         R"({"type":"max_affine","dim":1,
                             "pieces":[{"a":[1],"c":0},{"a":[-1],"c":0}]})"))
          .fn));
  CHECK(std::holds_alternative<NormPower>(
      parse_function(Json::parse(R"({"type":"norm_power","dim":3,"p":3})"))
          .fn));
  CHECK(std::holds_alternative<LogSumExp>(
      parse_function(Json::parse(
                         R"({"type":"log_sum_exp","dim":1,
                             "pieces":[{"a":[0],"c":0},{"a":[1],"c":0}]})"))
          .fn));
}

TEST_CASE("function JSON rejects malformed input") {
  CHECK_THROWS_AS(parse_function(Json::parse(R"({"dim":1})")), ParseError);
  CHECK_THROWS_AS(parse_function(Json::parse(R"({"type":"spline","dim":1})")),
                  ParseError);
  CHECK_THROWS_AS(
      parse_function(Json::parse(R"({"type":"polynomial","dim":1})")),
      ParseError);
  CHECK_THROWS_AS(
      parse_function(Json::parse(
          R"({"type":"polynomial","dim":2,
              "terms":[{"coeff":1,"exponents":[1]}]})")),
      ParseError);
  CHECK_THROWS_AS(
      parse_function(Json::parse(R"({"type":"norm_power","dim":1,"p":0.5})")),
      ParseError);
  CHECK_THROWS_AS(
      parse_function(Json::parse(R"({"type":"max_affine","dim":1,
                                     "pieces":[]})")),
      ParseError);
}

TEST_CASE("file loading reports missing and invalid files") {
  CHECK_THROWS_AS(load_json_file("/nonexistent/path.json"), ParseError);
  const std::string path = "/tmp/simplexhh_io_test_bad.json";
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(load_json_file(path), ParseError);
  std::remove(path.c_str());
}

TEST_CASE("avg result JSON carries the seed only for sampling") {
  AvgResult r;
  r.value = 1.5;
  r.method = AvgMethod::Exact;
  r.seed = 42;
  CHECK(!avg_result_json(r).contains("seed"));
  r.method = AvgMethod::MonteCarlo;
  CHECK(avg_result_json(r)["seed"] == 42);
}

TEST_CASE("report serializations agree with the report") {
  const Simplex tri = standard_simplex(2);
  ConvexFunctionSpec f;
  f.name = "sq";
  f.dim = 2;
  f.fn = Polynomial{{{1.0, {2, 0}}, {1.0, {0, 2}}}};
  f.convexity_certified = true;
  ReportOptions opt;
  opt.partitions = {trivial_partition(2), singleton_partition(2)};
  const BoundReport rep = full_report(tri, f, opt);

  const Json j = report_json(rep);
  CHECK(j["all_pass"] == true);
  CHECK(j["entries"].size() == rep.entries.size());
  CHECK(j["chains"].size() == rep.chains.size());
  CHECK_THAT(j["avg"]["value"].get<double>(),
             WithinAbs(rep.avg.value, 0.0));
  // Ordered keys keep the layout stable for byte comparisons.
  CHECK(j.dump() == report_json(rep).dump());

  const std::string csv = report_csv(rep);
  CHECK(csv.rfind("name,value,margin,pass\n", 0) == 0);
  std::size_t rows = 0;
  for (char c : csv) rows += (c == '\n') ? 1 : 0;
  CHECK(rows == rep.entries.size() + 1);

  const std::string text = report_text(rep);
  CHECK(text.find("avg = ") != std::string::npos);
  CHECK(text.find("chains:") != std::string::npos);
  CHECK(text.find("[FAIL]") == std::string::npos);
}

TEST_CASE("seventeen digit formatting round trips doubles") {
  for (double v : {1.0 / 3, 5.0 / 9, 1e-300, 12345.6789}) {
    const std::string s = detail::fmt17(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("verify JSON never mentions threads") {
  VerifyConfig cfg;
  cfg.n = 1;
  cfg.trials = 1;
  cfg.seed = 3;
  cfg.threads = 4;
  const VerifySummary sum = run_verify(cfg);
  const Json j = verify_json(sum);
  CHECK(j["config"]["n"] == 1);
  CHECK(j["config"]["seed"] == 3);
  CHECK(!j["config"].contains("threads"));
  CHECK(j.dump().find("thread") == std::string::npos);
  CHECK(j["totals"]["failed"] == 0);
}

}  // namespace
}  // namespace simplexhh
