#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(BFT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("bft_cli_test_" + name)).string();
}

}  // namespace

TEST(Cli, SpaceCounts) {
  auto r = cli("space --n 2 --q 2");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["counts"]["points"], 7);
  EXPECT_EQ(j["counts"]["chambers"], 21);
  EXPECT_EQ(j["counts"]["apartments"], 28);
  r = cli("space --n 3 --q 2");
  EXPECT_EQ(json::parse(r.out)["counts"]["chambers"], 315);
  EXPECT_EQ(json::parse(r.out)["counts"]["apartments"], 840);
}

TEST(Cli, UnsupportedFieldExitsTwo) {
  const std::string cmd = std::string(BFT_CLI_PATH) + " space --n 2 --q 11 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 512> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int status = pclose(p);
  EXPECT_EQ(WEXITSTATUS(status), 2);
  EXPECT_NE(out.find("2, 3, 4, 5, 7, 8, 9"), std::string::npos) << out;
}

TEST(Cli, ParseErrorsExitTwo) {
  EXPECT_EQ(cli("space --n 2").code, 2);
  EXPECT_EQ(cli("bogus").code, 2);
  EXPECT_EQ(cli("space --n 2 --q 2 --format xml").code, 2);
  EXPECT_EQ(cli("lemmas --n 2 --q 2 --case 7").code, 2);
  EXPECT_EQ(cli("map analyze /nonexistent/file.json").code, 2);
}

TEST(Cli, LemmaCases) {
  auto r = cli("lemmas --n 2 --q 2 --case 6");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["checks"][0]["actual"], "undefined");
  EXPECT_NE(j["notes"][0].get<std::string>().find("undefined at n = 2"), std::string::npos);
  r = cli("lemmas --n 5 --q 2 --case 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["checks"][0]["actual"], 240);
  EXPECT_EQ(cli("lemmas --n 6 --q 2 --case 2").code, 2);
}

TEST(Cli, LemmaSweepAtN2PassesAndCsvHasTable) {
  auto r = cli("lemmas --n 2 --q 2 --all --format csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("check,n,expected,actual,pass\n", 0), 0u);
  EXPECT_NE(r.out.find("n2,2,2,2,true"), std::string::npos);
}

TEST(Cli, LemmaSweepAtN3ReportsCaseSixMismatch) {
  const auto r = cli("lemmas --n 3 --q 2 --all");
  EXPECT_EQ(r.code, 1);
  const json j = json::parse(r.out);
  for (const json& c : j["checks"]) {
    if (c["name"] == "n2") EXPECT_EQ(c["actual"], 8);
    if (c["name"] == "n4") EXPECT_EQ(c["actual"], 4);
    if (c["name"] == "n6") {
      EXPECT_EQ(c["expected"], 10);
      EXPECT_EQ(c["actual"], 6);
    }
  }
}

TEST(Cli, InduceAnalyzePipeline) {
  const std::string id = tmp("id.json"), dual = tmp("dual.json"), bad = tmp("bad.json");
  ASSERT_EQ(cli("map induce --n 2 --q 2 --matrix '1,0,0;0,1,0;0,0,1' --out " + id).code, 0);
  std::ifstream in(id);
  json j = json::parse(in);
  EXPECT_EQ(j["pairs"].size(), 21u);

  auto r = cli("map analyze " + id);
  ASSERT_EQ(r.code, 0);
  json rep = json::parse(r.out);
  EXPECT_EQ(rep["classification"], "collineation-direct");
  for (const json& row : rep["decomposition"]["g"]) EXPECT_EQ(row[0], row[1]);

  ASSERT_EQ(cli("map induce --n 2 --q 2 --matrix '1,0,0;0,1,0;0,0,1' --dual --out " + dual).code, 0);
  EXPECT_EQ(json::parse(cli("map analyze " + dual).out)["classification"], "collineation-dual");

  std::swap(j["pairs"][0][1], j["pairs"][1][1]);
  std::ofstream(bad) << j.dump();
  r = cli("map analyze " + bad);
  EXPECT_EQ(r.code, 1);
  rep = json::parse(r.out);
  EXPECT_EQ(rep["classification"], "not-apartment-preserving");
  EXPECT_TRUE(rep["preservation"].contains("witness"));

  j["pairs"].erase(j["pairs"].begin());
  std::ofstream(bad) << j.dump();
  EXPECT_EQ(cli("map analyze " + bad).code, 2);
  for (const auto& f : {id, dual, bad}) std::filesystem::remove(f);
}

TEST(Cli, InduceErrors) {
  EXPECT_EQ(cli("map induce --n 2 --q 2 --matrix '1,0,0;0,1,0;1,1,0'").code, 1);
  EXPECT_EQ(cli("map induce --n 2 --q 2 --matrix '1,0,0;0,1'").code, 2);
  EXPECT_EQ(cli("map induce --n 2 --q 2 --matrix '1,0,0;0,1,0;0,0,1' --target-q 3").code, 2);
}

TEST(Cli, EmbeddingIntoLargerField) {
  const std::string e = tmp("emb.json");
  ASSERT_EQ(cli("map induce --n 2 --q 2 --target-q 4 --matrix '1,0,0;0,1,0;0,0,1' --out " + e).code, 0);
  const auto r = cli("map analyze " + e);
  ASSERT_EQ(r.code, 0);
  const json rep = json::parse(r.out);
  EXPECT_EQ(rep["classification"], "strong-embedding-direct");
  EXPECT_EQ(rep["image_points"], 7);
  EXPECT_EQ(rep["target_points"], 21);
  std::filesystem::remove(e);
}

TEST(Cli, ReportsAreByteIdentical) {
  const std::string f = tmp("det.json");
  ASSERT_EQ(cli("map induce --n 3 --q 2 --matrix '0,1,0,0;1,1,0,0;0,0,1,0;0,0,1,1' --out " + f).code, 0);
  const auto a = cli("map analyze " + f + " --mode sample --k 30 --seed 5");
  const auto b = cli("map analyze " + f + " --mode sample --k 30 --seed 5");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto c = cli("map induce --n 3 --q 2 --matrix '0,1,0,0;1,1,0,0;0,0,1,0;0,0,1,1'");
  const auto d = cli("map induce --n 3 --q 2 --matrix '0,1,0,0;1,1,0,0;0,0,1,0;0,0,1,1'");
  EXPECT_EQ(c.out, d.out);
  EXPECT_EQ(cli("lemmas --n 4 --q 2 --all").out, cli("lemmas --n 4 --q 2 --all").out);
  std::filesystem::remove(f);
}

TEST(Cli, ApartmentListing) {
  const auto r = cli("apartment --n 2 --q 3 --base '1,1,0;0,1,0;0,0,1'");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["chambers"].size(), 6u);
  EXPECT_EQ(j["chambers"][0]["perm"], json::parse("[1,2,3]"));
  EXPECT_EQ(cli("apartment --n 2 --q 3 --base '1,1,0;0,1,0;1,0,0'").code, 2);
}
