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

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cpn/cli.hpp"
#include "cpn/io.hpp"
#include "cpn/random.hpp"

namespace cpn {
namespace {

namespace fs = std::filesystem;

const std::string kSamples = CPNKIT_SAMPLES_DIR;

std::string sample(const std::string& name) { return kSamples + "/" + name; }

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("cpnkit-" + std::to_string(std::rand()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

cli::CommandResult run(const std::string& command, std::vector<std::string> inputs) {
  cli::CommandRequest req;
  req.command = command;
  req.inputs = std::move(inputs);
  return cli::run_command(req);
}

void expect_envelope(const json& report) {
  for (const char* key : {"verdict", "certificates", "tol", "version"}) EXPECT_TRUE(report.contains(key)) << key;
}

TEST(Io, ComplexAndMatrix) {
  EXPECT_EQ(complex_from_json(json::parse("[1.5, -2]")), cplx(1.5, -2.0));
  EXPECT_EQ(complex_from_json(json::parse("3")), cplx(3.0, 0.0));
  EXPECT_THROW(complex_from_json(json::parse("[1, 2, 3]")), ValidationError);
  EXPECT_THROW(complex_from_json(json::parse("\"x\"")), ValidationError);

  Rng rng(51);
  const Matrix m = gaussian_matrix(2, 3, rng);
  EXPECT_EQ(distance(matrix_from_json(matrix_to_json(m)), m), 0.0);
  EXPECT_THROW(matrix_from_json(json::parse("[[1, 2], [3]]")), ValidationError);
  // Row-major.
  EXPECT_EQ(matrix_from_json(json::parse("[[1, 2], [3, 4]]"))(0, 1), cplx(2.0));
}

TEST(Io, AlgebraAndElement) {
  const CStarAlgebra a = algebra_from_json(json::parse(R"({"blocks": [2, 1]})"));
  EXPECT_EQ(a.dimension(), 5);
  EXPECT_THROW(algebra_from_json(json::parse(R"({"blocks": []})")), ValidationError);
  EXPECT_THROW(algebra_from_json(json::parse(R"({"dims": [2]})")), ValidationError);
  Rng rng(52);
  const AlgebraElement x = random_element(a, rng);
  EXPECT_EQ(distance(element_from_json(a, to_json(x)), x), 0.0);
}

TEST(Io, MapRoundTrip) {
  Rng rng(53);
  const CPnMap rho = random_cpn_map(CStarAlgebra({2, 1}), 2, 3, 2, rng);
  EXPECT_EQ(distance(cpn_map_from_json(to_json(rho)), rho), 0.0);
  // Bitwise round trip through text.
  EXPECT_EQ(distance(cpn_map_from_json(json::parse(to_json(rho).dump())), rho), 0.0);
}

TEST(Io, MapSchemaErrors) {
  json j = to_json(CPnMap(identity_map(2)));
  json missing = j;
  missing.erase("entries");
  EXPECT_THROW(cpn_map_from_json(missing), ValidationError);
  json wrong_n = j;
  wrong_n["n"] = 2;
  EXPECT_THROW(cpn_map_from_json(wrong_n), ValidationError);
  json wrong_shape = j;
  wrong_shape["codomain_dim"] = 3;
  EXPECT_THROW(cpn_map_from_json(wrong_shape), ValidationError);
  EXPECT_THROW(parse_json("{not json"), ValidationError);
}

TEST(Io, DilationAndTower) {
  const StinespringDilation d = dilate(CPnMap(depolarizing_map(2)));
  const json j = to_json(d);
  EXPECT_EQ(j["space_dim"], 8);
  EXPECT_EQ(j["multiplicities"], json::array({4}));
  EXPECT_EQ(j["images"].size(), 4u);
  EXPECT_EQ(j["isometries"].size(), 1u);

  const Tower t = projection_tower(2);
  const Tower back = tower_from_json(to_json(t));
  EXPECT_EQ(back.depth(), 2);
  EXPECT_EQ(distance(back.connecting()[0], t.connecting()[0]), 0.0);

  const ContinuousCPnMap m = make_continuous_map(t, 1, CPnMap(identity_map(2)));
  const ContinuousCPnMap mb = continuous_map_from_json(to_json(m));
  EXPECT_EQ(mb.level, 1);
  EXPECT_EQ(distance(mb.base, m.base), 0.0);

  json bad = to_json(t);
  bad["connecting"][0][0][4] = json::array({1.0, 0.0});
  EXPECT_THROW(tower_from_json(bad), ValidationError);
}

TEST(Io, SampleTower) {
  const ContinuousCPnMap m = continuous_map_from_json(read_json_file(sample("continuous_depolarizing.json")));
  EXPECT_EQ(m.tower.depth(), 2);
  EXPECT_EQ(m.level, 1);
}

TEST(Cli, CheckAllIdentity) {
  const cli::CommandResult r = run("check", {sample("all_id_cp2.json")});
  EXPECT_EQ(r.exit_code, 0);
  expect_envelope(r.report);
  EXPECT_EQ(r.report["cpn"], true);
  EXPECT_NEAR(r.report["min_eig"].get<double>(), 0.0, 1e-12);
}

TEST(Cli, CheckNegative) {
  const cli::CommandResult r = run("check", {sample("not_cp2.json")});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(r.report["cpn"], false);
  EXPECT_LT(r.report["min_eig"].get<double>(), 0.0);
}

TEST(Cli, RnNotDominated) {
  TempDir tmp;
  const CPnMap rho = read_cpn_map(sample("depolarizing_m2.json"));
  write(tmp.file("double.json"), to_json(2.0 * rho).dump());
  const cli::CommandResult r = run("rn", {sample("depolarizing_m2.json"), tmp.file("double.json")});
  EXPECT_EQ(r.exit_code, 1);
  expect_envelope(r.report);
  EXPECT_EQ(r.report["error"]["type"], "domination");
  EXPECT_LT(r.report["error"]["min_eig"].get<double>(), 0.0);
}

TEST(Cli, RnHalf) {
  TempDir tmp;
  const CPnMap rho = read_cpn_map(sample("depolarizing_m2.json"));
  write(tmp.file("half.json"), to_json(0.5 * rho).dump());
  const cli::CommandResult r = run("rn", {sample("depolarizing_m2.json"), tmp.file("half.json")});
  ASSERT_EQ(r.exit_code, 0) << r.report.dump();
  const Matrix t = matrix_from_json(r.report["T"]);
  EXPECT_NEAR(distance(t, 0.5 * Matrix::Identity(8, 8)), 0.0, 1e-10);
  const json& c = r.report["certificates"];
  EXPECT_NEAR(c["spectrum"][0].get<double>(), 0.5, 1e-10);
  EXPECT_LE(c["reconstruction"].get<double>(), 1e-10);
}

TEST(Cli, DilateMalformed) {
  TempDir tmp;
  write(tmp.file("bad.json"), "{\"n\": 1, ");
  const cli::CommandResult r = run("dilate", {tmp.file("bad.json")});
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_EQ(r.report["error"]["type"], "validation");
  expect_envelope(r.report);
}

TEST(Cli, DilateSample) {
  const cli::CommandResult r = run("dilate", {sample("depolarizing_m2.json")});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.report["dilation"]["space_dim"], 8);
  EXPECT_EQ(r.report["certificates"]["minimal"], true);
}

TEST(Cli, DilateNotPositive) {
  EXPECT_EQ(run("dilate", {sample("not_cp2.json")}).exit_code, 1);
}

TEST(Cli, StructureVerdicts) {
  const cli::CommandResult pure = run("pure", {sample("depolarizing_m2.json")});
  EXPECT_EQ(pure.exit_code, 0);
  EXPECT_EQ(pure.report["pure"], false);
  EXPECT_EQ(pure.report["commutant_dim"], 16);
  expect_envelope(pure.report);

  const cli::CommandResult ext = run("extreme", {sample("block_diagonal_cp2.json")});
  EXPECT_EQ(ext.exit_code, 0);
  EXPECT_EQ(ext.report["extreme"], true);
  EXPECT_EQ(ext.report["commutant_dim"], 2);
  expect_envelope(ext.report);

  const cli::CommandResult dis = run("disjoint", {sample("block1_compression.json"), sample("block2_compression.json")});
  EXPECT_EQ(dis.exit_code, 0);
  EXPECT_EQ(dis.report["disjoint"], true);
  EXPECT_EQ(dis.report["intertwiner_dim"], 0);
  EXPECT_TRUE(dis.report["witness"].is_null());

  const cli::CommandResult not_dis = run("disjoint", {sample("identity_m2.json"), sample("depolarizing_m2.json")});
  EXPECT_EQ(not_dis.report["disjoint"], false);
  EXPECT_EQ(not_dis.report["intertwiner_dim"], 4);
  EXPECT_EQ(not_dis.report["witness"]["n"], 2);
}

TEST(Cli, ExtremeOutsideUnitalSet) {
  const cli::CommandResult r = run("extreme", {sample("not_unital.json")});
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.report["error"]["message"].get<std::string>().find("(0,0)"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("frobnicate", {}).exit_code, 2);
  EXPECT_EQ(run("check", {}).exit_code, 2);
  EXPECT_EQ(run("rn", {sample("identity_m2.json")}).exit_code, 2);
  EXPECT_EQ(run("check", {sample("does_not_exist.json")}).exit_code, 2);
  cli::CommandRequest req;
  req.command = "random";
  req.d = 2;
  req.m = 0;
  req.n = 1;
  EXPECT_EQ(cli::run_command(req).exit_code, 2);
}

TEST(Cli, RandomIsDeterministicAndPositive) {
  cli::CommandRequest req;
  req.command = "random";
  req.d = 2;
  req.m = 2;
  req.n = 2;
  req.rank = 3;
  req.seed = 99;
  const std::string a = cli::run_command(req).report.dump();
  const std::string b = cli::run_command(req).report.dump();
  EXPECT_EQ(a, b);
  const CPnMap rho = cpn_map_from_json(json::parse(a));
  EXPECT_TRUE(is_completely_n_positive(rho, 1e-9));
  EXPECT_TRUE(check_hermitian_symmetry(rho, 1e-9));

  req.rank = 0;
  EXPECT_EQ(map_scale(cpn_map_from_json(cli::run_command(req).report)), 0.0);
}

TEST(Cli, EnvironmentTolerance) {
  ::setenv("CPN_TOL", "1e-6", 1);
  EXPECT_EQ(cli::default_tolerance(), 1e-6);
  ::setenv("CPN_TOL", "garbage", 1);
  EXPECT_EQ(cli::default_tolerance(), cli::kDefaultTol);
  ::unsetenv("CPN_TOL");
  EXPECT_EQ(cli::default_tolerance(), cli::kDefaultTol);
}

// The executable itself: exit codes and byte-identical random output.
int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Executable, ExitCodes) {
  const std::string bin = CPNKIT_CPN_BIN;
  TempDir tmp;
  const std::string quiet = " > " + tmp.file("out.txt") + " 2>&1";
  EXPECT_EQ(shell(bin + " check " + sample("all_id_cp2.json") + quiet), 0);
  EXPECT_EQ(shell(bin + " check " + sample("not_cp2.json") + quiet), 1);
  EXPECT_EQ(shell(bin + " frobnicate" + quiet), 2);
  EXPECT_EQ(shell(bin + quiet), 2);
  EXPECT_EQ(shell(bin + " random --d 2 --m 2 --n 0 --rank 1 --seed 1" + quiet), 2);

  const std::string gen = bin + " random --d 3 --m 2 --n 2 --rank 4 --seed 7 -o ";
  ASSERT_EQ(shell(gen + tmp.file("a.json") + quiet), 0);
  ASSERT_EQ(shell(gen + tmp.file("b.json") + quiet), 0);
  EXPECT_EQ(slurp(tmp.file("a.json")), slurp(tmp.file("b.json")));
  EXPECT_EQ(shell(bin + " check " + tmp.file("a.json") + quiet), 0);

  EXPECT_EQ(shell("CPN_TOL=1e-7 " + bin + " check " + sample("identity_m2.json") + " -o " + tmp.file("c.json")), 0);
  EXPECT_EQ(json::parse(slurp(tmp.file("c.json")))["tol"], 1e-7);
}

TEST(Executable, SuiteSmoke) {
  const std::string bin = CPNKIT_CPN_BIN;
  TempDir tmp;
  EXPECT_EQ(shell(bin + " suite --seed 3 --count 10 -o " + tmp.file("s.json")), 0);
  const json s = json::parse(slurp(tmp.file("s.json")));
  EXPECT_EQ(s["verdict"], true);
  EXPECT_EQ(s["certificates"]["criteria"].size(), 10u);
}

}  // namespace
}  // namespace cpn
