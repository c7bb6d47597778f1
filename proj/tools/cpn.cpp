// Copyright 2026 The cpnkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "cpn/cli.hpp"

int main(int argc, char** argv) {
  using cpn::cli::CommandRequest;

  CLI::App app{"cpn: completely n-positive maps, dilations and Radon-Nikodym operators"};
  app.set_version_flag("--version", std::string(cpn::kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  CommandRequest req;
  req.tol = cpn::cli::default_tolerance();
  double rank_tol = 0.0;
  std::string output;
  app.add_option("--tol", req.tol, "relative tolerance (default 1e-9, or CPN_TOL)");
  auto* rank_opt = app.add_option("--rank-tol", rank_tol, "rank cutoff tolerance (defaults to --tol)");
  app.add_option("-o,--output", output, "write the report here instead of stdout");

  const struct {
    const char* name;
    const char* help;
    int inputs;
  } file_commands[] = {
      {"check", "test complete n-positivity of a map", 1},
      {"dilate", "minimal Stinespring dilation of a map", 1},
      {"rn", "Radon-Nikodym operator of theta with respect to rho", 2},
      {"pure", "purity via the commutant of the dilation", 1},
      {"extreme", "extremality in the unital set", 1},
      {"disjoint", "disjointness of two maps, with a witness when not disjoint", 2},
  };
  for (const auto& c : file_commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("inputs", req.inputs, c.inputs == 1 ? "map.json" : "first.json second.json")
        ->required()
        ->expected(c.inputs);
  }

  auto* random = app.add_subcommand("random", "seeded random completely n-positive map");
  random->add_option("--d", req.d, "matrix size of the domain")->required();
  random->add_option("--m", req.m, "codomain dimension")->required();
  random->add_option("--n", req.n, "order n")->required();
  random->add_option("--rank", req.rank, "Choi rank per block")->required();
  random->add_option("--seed", req.seed, "random seed")->required();

  auto* suite = app.add_subcommand("suite", "run the property suites");
  suite->add_option("--seed", req.seed, "random seed");
  suite->add_option("--count", req.count, "instance budget (200 = full size)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  req.command = app.get_subcommands().front()->get_name();
  if (*rank_opt) req.rank_tol = rank_tol;

  const cpn::cli::CommandResult result = cpn::cli::run_command(req);
  const std::string text = result.report.dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << output << "\n";
      return 2;
    }
    out << text;
  }
  return result.exit_code;
}
