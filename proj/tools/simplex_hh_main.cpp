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

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "simplexhh/simplexhh.hpp"

namespace {

using namespace simplexhh;

// Exit codes: 0 success, 1 inequality-chain failure, 2 input error,
// 3 geometric degeneracy.
constexpr int kExitOk = 0;
constexpr int kExitChainFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitDegenerate = 3;

int resolve_threads(int requested) {
  int t = requested > 0
              ? requested
              : static_cast<int>(std::thread::hardware_concurrency());
  if (t < 1) t = 1;
  if (const char* cap = std::getenv("SIMPLEX_HH_THREADS")) {
    const int c = std::atoi(cap);
    if (c >= 1) t = std::min(t, c);
  }
  return t;
}

struct Args {
  std::string simplex_path;
  std::string function_path;
  std::string method = "exact";
  std::string format = "json";
  std::vector<std::string> partition_tokens;
  std::vector<std::string> refines_args;
  bool allow_nonconvex = false;
  bool inject_nonconvex = false;
  int degree = 0;
  std::int64_t samples = 100000;
  std::uint64_t seed = 0;
  int threads = 0;
  int n = 2;
  int trials = 10;
};

int cmd_integrate(const Args& a) {
  const Simplex s = parse_simplex(load_json_file(a.simplex_path));
  const ConvexFunctionSpec f = parse_function(load_json_file(a.function_path));
  AvgOptions opt;
  if (a.method == "exact") {
    opt.method = AvgMethod::Exact;
  } else if (a.method == "quad") {
    opt.method = AvgMethod::Quadrature;
  } else {
    opt.method = AvgMethod::MonteCarlo;
  }
  opt.degree = a.degree;
  opt.samples = a.samples;
  opt.seed = a.seed;
  opt.threads = resolve_threads(a.threads);
  const AvgResult r = avg(s, f, opt);
  std::cout << avg_result_json(r).dump(2) << "\n";
  return kExitOk;
}

std::vector<Partition> collect_partitions(
    const std::vector<std::string>& tokens, int n) {
  std::vector<Partition> out;
  for (const auto& tok : tokens) {
    if (tok == "all") {
      for (auto& p : enumerate_partitions(n)) out.push_back(std::move(p));
    } else if (tok == "singletons") {
      out.push_back(singleton_partition(n));
    } else if (tok == "trivial") {
      out.push_back(trivial_partition(n));
    } else if (tok.rfind("divisor=", 0) == 0) {
      const int d = std::atoi(tok.c_str() + 8);
      for (auto& p : equal_block_partitions(n, d)) out.push_back(std::move(p));
    } else {
      out.push_back(parse_partition(tok, n));
    }
  }
  return out;
}

int cmd_bounds(const Args& a) {
  const Simplex s = parse_simplex(load_json_file(a.simplex_path));
  ConvexFunctionSpec f = parse_function(load_json_file(a.function_path));
  if (!f.convexity_certified) {
    const auto check = convexity_sample_check(
        f, s, 1000, derive_seed(a.seed, "cli_convexity"));
    if (check.passed) {
      f.convexity_certified = true;
    } else if (!a.allow_nonconvex) {
      std::cerr << "error: function failed the convexity sampling check; "
                   "pass --allow-nonconvex to evaluate anyway\n";
      return kExitInputError;
    }
  }
  ReportOptions opt;
  opt.partitions = collect_partitions(a.partition_tokens, s.intrinsic_dim());
  opt.seed = a.seed;
  opt.threads = resolve_threads(a.threads);
  const BoundReport rep = full_report(s, f, opt);
  if (a.format == "json") {
    std::cout << report_json(rep).dump(2) << "\n";
  } else if (a.format == "csv") {
    std::cout << report_csv(rep);
  } else {
    std::cout << report_text(rep);
  }
  return rep.all_pass ? kExitOk : kExitChainFailure;
}

int cmd_verify(const Args& a) {
  VerifyConfig cfg;
  cfg.n = a.n;
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.inject_nonconvex = a.inject_nonconvex;
  cfg.threads = resolve_threads(a.threads);
  const VerifySummary sum = run_verify(cfg);
  std::cout << verify_json(sum).dump(2) << "\n";
  return sum.failed == 0 ? kExitOk : kExitChainFailure;
}

int cmd_partitions(const Args& a) {
  if (!a.refines_args.empty()) {
    const Partition fine = parse_partition(a.refines_args[0], a.n);
    const Partition coarse = parse_partition(a.refines_args[1], a.n);
    std::cout << (refines(fine, coarse) ? "true" : "false") << "\n";
    return kExitOk;
  }
  for (const auto& p : enumerate_partitions(a.n))
    std::cout << to_text(p) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  Args a;
  CLI::App app{
      "Averages of convex functions over simplices, with Hermite-Hadamard "
      "style upper bounds and seeded verification campaigns"};
  app.require_subcommand(1);

  auto* ci = app.add_subcommand("integrate", "Average a function over a simplex");
  ci->add_option("--simplex", a.simplex_path, "simplex JSON file")->required();
  ci->add_option("--function", a.function_path, "function JSON file")
      ->required();
  ci->add_option("--method", a.method, "integration backend")
      ->check(CLI::IsMember({"exact", "quad", "mc"}));
  ci->add_option("--degree", a.degree, "quadrature exactness (0 = default)");
  ci->add_option("--samples", a.samples, "Monte Carlo sample count");
  ci->add_option("--seed", a.seed, "Monte Carlo seed");
  ci->add_option("--threads", a.threads, "worker threads (0 = auto)");

  auto* cb = app.add_subcommand("bounds", "Evaluate every applicable bound");
  cb->add_option("--simplex", a.simplex_path, "simplex JSON file")->required();
  cb->add_option("--function", a.function_path, "function JSON file")
      ->required();
  cb->add_option("--partitions", a.partition_tokens,
                 "partition specs: all | divisor=d | singletons | trivial | "
                 "explicit text like 0,1|2");
  cb->add_flag("--allow-nonconvex", a.allow_nonconvex,
               "evaluate even if the convexity check fails");
  cb->add_option("--format", a.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cb->add_option("--seed", a.seed, "seed for the convexity sampling check");
  cb->add_option("--threads", a.threads, "worker threads (0 = auto)");

  auto* cv = app.add_subcommand("verify", "Seeded verification campaign");
  cv->add_option("--n", a.n, "simplex dimension")->required();
  cv->add_option("--trials", a.trials, "random simplices per campaign")
      ->required();
  cv->add_option("--seed", a.seed, "campaign seed");
  cv->add_flag("--inject-nonconvex", a.inject_nonconvex,
               "add a concave control function (expects failures)");
  cv->add_option("--threads", a.threads, "worker threads (0 = auto)");

  auto* cp = app.add_subcommand("partitions", "List or compare partitions");
  cp->add_option("--n", a.n, "ground set is {0,...,n}")->required();
  cp->add_option("--refines", a.refines_args,
                 "two partitions A B; prints whether A refines B")
      ->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (ci->parsed()) return cmd_integrate(a);
    if (cb->parsed()) return cmd_bounds(a);
    if (cv->parsed()) return cmd_verify(a);
    if (cp->parsed()) return cmd_partitions(a);
  } catch (const DegenerateSimplex& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const DegenerateFace& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
