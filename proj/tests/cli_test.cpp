// Copyright 2026 The stabgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>

#include "stabgen/cli.hpp"

using namespace stabgen;
using Json = nlohmann::ordered_json;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream o, e;
  int c = cli::run(args, o, e);
  return {c, o.str(), e.str()};
}

std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("stabgen_cli_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

class FixtureDir {
 public:
  explicit FixtureDir(const std::filesystem::path& p) {
    setenv("STABGEN_FIXTURE_DIR", p.c_str(), 1);
  }
  ~FixtureDir() { unsetenv("STABGEN_FIXTURE_DIR"); }
};

}  // namespace

TEST(cli, verify_five_qubit_xy) {
  Outcome r = run({"verify", "--code", "five-qubit", "--kind", "XY"});
  EXPECT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  EXPECT_TRUE(j["all_matched"].get<bool>());
  EXPECT_EQ(j["chains"][0]["matched"].get<int>(), 10);
}

TEST(cli, verify_all_chains_aggregates) {
  Outcome r = run({"verify"});
  Json j = Json::parse(r.out);
  ASSERT_EQ(j["chains"].size(), 6U);
  bool all = true;
  for (const auto& c : j["chains"]) all = all && c["all_matched"].get<bool>();
  EXPECT_EQ(j["all_matched"].get<bool>(), all);
  EXPECT_EQ(r.code, all ? 0 : 1);
}

TEST(cli, verify_corrupted_fixture_names_offending_term) {
  auto dir = temp_dir("corrupt");
  std::filesystem::create_directories(dir / "codes");
  for (const char* f : {"nine_qubit.code", "five_qubit.code", "steane.code"}) {
    std::filesystem::copy_file(std::filesystem::path(STABGEN_DEFAULT_DATA_DIR) / "codes" / f, dir / "codes" / f);
  }
  std::ifstream in(dir / "codes" / "five_qubit.code");
  std::string text((std::istreambuf_iterator<char>(in)), {});
  in.close();
  auto pos = text.find("Z2Y3 + Y1Y2Z3Z4X5");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 4, "Z2X3");
  std::ofstream(dir / "codes" / "five_qubit.code") << text;
  FixtureDir env(dir);
  Outcome r = run({"verify", "--code", "five-qubit", "--kind", "XY", "--format", "text"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("X3"), std::string::npos) << r.out;
}

TEST(cli, usage_errors_exit_2) {
  EXPECT_EQ(run({"verify", "--code", "bogus"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"compile", "--code", "steane"}).code, 2);
  EXPECT_EQ(run({"tables", "--format", "yaml"}).code, 2);
  EXPECT_EQ(run({"tables", "--j-hz", "-5"}).code, 2);
  EXPECT_EQ(run({"fidelity", "--code", "five", "--kind", "XY", "--distribution", "cauchy"}).code, 2);
}

TEST(cli, tables_rows) {
  Outcome r = run({"tables"});
  ASSERT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  int with_notes = 0;
  for (const auto& row : j["rows"]) {
    if (row["code"] == "steane" && row["kind"] == "XY") {
      EXPECT_EQ(row["previous"]["ns"].get<double>(), 563.0);
      EXPECT_EQ(row["new"]["ns"].get<double>(), 257.0);
      EXPECT_EQ(row["improvement_pct"].get<double>(), 54.4);
    }
    if (row["code"] == "five-qubit" && row["kind"] == "Ising") {
      EXPECT_EQ(row["previous"]["ns"].get<double>(), 184.5);
      EXPECT_EQ(row["new"]["ns"].get<double>(), 151.0);
      EXPECT_EQ(row["improvement_pct"].get<double>(), 18.2);
    }
    with_notes += !row["discrepancies"].empty();
  }
  EXPECT_EQ(with_notes, 2);
  Json z = Json::parse(run({"tables", "--tau-rot-ns", "0"}).out);
  for (const auto& row : z["rows"]) {
    double prev = row["previous"]["n_op"].get<int>(), now = row["new"]["n_op"].get<int>();
    EXPECT_NEAR(row["improvement_pct"].get<double>(), std::round(1000.0 * (prev - now) / prev) / 10.0, 1e-9);
  }
}

TEST(cli, tables_csv_header_is_stable) {
  Outcome r = run({"tables", "--format", "csv"});
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')),
            "table,code,kind,previous_op,previous_rot,previous_ns,new_op,new_rot,new_ns,improvement_pct,discrepancies");
}

TEST(cli, prepare_codes) {
  Json steane = Json::parse(run({"prepare", "--code", "steane", "--logical", "0"}).out);
  EXPECT_EQ(steane[0]["generators"].size(), 6U);
  for (const auto& g : steane[0]["generators"]) EXPECT_EQ(g["eigenvalue"].get<double>(), 1.0);
  Outcome five = run({"prepare", "--code", "five", "--logical", "1"});
  EXPECT_EQ(five.code, 0);
  EXPECT_EQ(Json::parse(five.out)[0]["logical_z"].get<double>(), -1.0);
  Json nine = Json::parse(run({"prepare", "--code", "nine", "--logical", "0"}).out);
  EXPECT_EQ(nine[0]["generators"].size(), 8U);
  EXPECT_TRUE(nine[0]["passed"].get<bool>());
}

TEST(cli, compile_and_census) {
  Outcome r = run({"compile", "--code", "five", "--kind", "XY"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["cost"]["total_ns"].get<double>(), 127.5);
  Outcome slow = run({"compile", "--code", "five", "--kind", "XY", "--j-hz", "10e6", "--tau-rot-ns", "2"});
  EXPECT_EQ(Json::parse(slow.out)["cost"]["total_ns"].get<double>(), 10 * 12.5 + 65 * 2);
  Json c = Json::parse(run({"census", "--code", "steane", "--kind", "XY"}).out);
  EXPECT_EQ(c[0]["n_op_units"].get<int>(), 20);
  EXPECT_EQ(c[0]["n_rot_units"].get<int>(), 132);
}

TEST(cli, extract_edge_and_zero_coupling) {
  Json e = Json::parse(run({"extract", "--kind", "Ising", "--pattern", "edge", "--edge", "2"}).out);
  EXPECT_EQ(e["ideal"].get<std::string>(), "4*Z2Z3");
  EXPECT_LT(e["ratio"].get<double>(), 2.0);
  Json z = Json::parse(run({"extract", "--kind", "XY", "--J", "0"}).out);
  EXPECT_LT(z["error_norm"].get<double>(), 1e-12);
  auto dir = temp_dir("cfg");
  std::ofstream(dir / "lat.cfg") << "n_logical = 2\nn_phys = 5\ncoupling_kind = XY\ntau = 0.01\n";
  Outcome two = run({"extract", "--config", (dir / "lat.cfg").string(), "--no-dense"});
  EXPECT_EQ(two.code, 0);
  Json t = Json::parse(two.out);
  EXPECT_TRUE(t["realizable"].get<bool>());
  EXPECT_EQ(t["ideal"].get<std::string>().find("X5X10"), std::string::npos);
  std::ofstream(dir / "bad.cfg") << "n_logical = 2\nflux = 3\n";
  EXPECT_EQ(run({"extract", "--config", (dir / "bad.cfg").string()}).code, 2);
}

TEST(cli, fidelity_runs) {
  Json z = Json::parse(run({"fidelity", "--code", "five", "--kind", "XY", "--sigma", "0", "--trials", "5"}).out);
  EXPECT_NEAR(z["mean_F"].get<double>(), 1.0, 1e-10);
  Outcome a = run({"fidelity", "--code", "five", "--kind", "XY", "--trials", "100", "--seed", "4"});
  Outcome b = run({"fidelity", "--code", "five", "--kind", "XY", "--trials", "100", "--seed", "4"});
  Outcome c = run({"fidelity", "--code", "five", "--kind", "XY", "--trials", "100", "--seed", "5"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  Outcome w = run({"fidelity", "--code", "five", "--kind", "XY", "--trials", "2", "--sigma", "0.6"});
  EXPECT_NE(w.err.find("warning"), std::string::npos);
}

TEST(cli, out_flag_writes_file) {
  auto dir = temp_dir("out");
  auto f = dir / "tables.json";
  Outcome r = run({"tables", "--out", f.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(f);
  Json j = Json::parse(in);
  EXPECT_EQ(j["rows"].size(), 6U);
}
