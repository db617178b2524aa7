#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fixtures.hpp"

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

// stdout only; stderr goes to the named file when given, else is dropped.
CliResult run_cli(const std::string& args, const std::string& err = "/dev/null") {
  const std::string cmd = std::string(HCLP_CLI) + " " + args + " 2>" + err;
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const char* name) {
  return hclp::testing::fixture_path(name);
}

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() /
             ("hclp-cli-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(CliSolve, FiveEvaluationsInconsistent) {
  const CliResult r = run_cli("solve " + fixture("five_evaluations.hclp") + " --algorithm pc --t 3");
  EXPECT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verdict"], "inconsistent");
  EXPECT_EQ(j["t"], 3);
  EXPECT_FALSE(j.contains("witness"));
}

TEST(CliSolve, DessertC1Witness) {
  const CliResult r = run_cli("solve " + fixture("dessert.hclp") + " --algorithm c1");
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verdict"], "consistent");
  EXPECT_EQ(j["witness"], "[s] [f] [c]");
  EXPECT_EQ(j["witness_levels"], nlohmann::json::parse("[[1],[2],[0]]"));
  EXPECT_EQ(j["instance"], "dessert");
}

TEST(CliSolve, DessertOracle) {
  const CliResult r = run_cli("solve " + fixture("dessert.hclp") + " --algorithm oracle --t 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["verdict"], "consistent");
}

TEST(CliSolve, ConflictsReportSkips) {
  const CliResult r = run_cli("solve " + fixture("five_evaluations.hclp") +
                    " --algorithm pc-conflicts --t 3");
  EXPECT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["stats"]["candidates_skipped"], 1);
  EXPECT_EQ(j["stats"]["conflicts_learned"], 1);
}

TEST(CliSolve, Errors) {
  EXPECT_EQ(run_cli("solve /nonexistent.hclp").code, 2);
  EXPECT_EQ(run_cli("solve " + fixture("dessert.hclp") + " --algorithm magic").code, 2);
  EXPECT_EQ(run_cli("solve " + fixture("dessert.hclp") + " --s 1").code, 2);
  EXPECT_EQ(run_cli("").code, 2);
  const auto dir = temp_dir();
  std::ofstream(dir / "bad.hclp") << "hclp 1\n1 2 0\n0 -1\n";
  const auto err = (dir / "err.txt").string();
  EXPECT_EQ(run_cli("solve " + (dir / "bad.hclp").string(), err).code, 2);
  EXPECT_NE(slurp(err).find("3:3"), std::string::npos) << slurp(err);
}

TEST(CliDeduce, Examples) {
  CliResult r = run_cli("deduce " + fixture("ic_before_ap.hclp") + " --statement \"IC <= AP\"");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["result"], "deduced");

  r = run_cli("deduce " + fixture("no_statements.hclp") + " --statement \"IC < AP\"");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(nlohmann::json::parse(r.out)["result"], "not-deduced");

  r = run_cli("deduce " + fixture("five_evaluations.hclp") + " --statement \"3 < 0\" --t 3");
  EXPECT_EQ(r.code, 0);
  r = run_cli("deduce " + fixture("five_evaluations.hclp") +
          " --statement \"3 < 0\" --t 3 --conflicts");
  EXPECT_EQ(r.code, 0);

  EXPECT_EQ(run_cli("deduce " + fixture("dessert.hclp") + " --statement \"IC < ZZ\"").code, 2);
  EXPECT_EQ(run_cli("deduce " + fixture("dessert.hclp") + " --statement \"2 < 0\"").code, 2);
  EXPECT_EQ(run_cli("deduce " + fixture("dessert.hclp") + " --statement \"2 > 0\"").code, 2);
}

TEST(CliGenerate, Examples) {
  const CliResult a = run_cli("generate --n 10 --m 25 --g 10 --seed 1");
  ASSERT_EQ(a.code, 0);
  std::istringstream in(a.out);
  std::string line;
  std::vector<std::string> statements;
  while (std::getline(in, line)) {
    if (line.find('<') != std::string::npos && line[0] != '#') statements.push_back(line);
  }
  ASSERT_EQ(statements.size(), 10u);
  for (std::size_t k = 0; k < 10; ++k) {
    EXPECT_EQ(statements[k].find("<=") == std::string::npos, k < 5) << statements[k];
  }
  EXPECT_EQ(run_cli("generate --n 10 --m 25 --g 10 --seed 1").out, a.out);
  EXPECT_NE(run_cli("generate --n 10 --m 25 --g 10 --seed 2").out, a.out);

  const auto dir = temp_dir();
  const auto path = (dir / "gen.hclp").string();
  ASSERT_EQ(run_cli("generate --n 10 --m 25 --g 10 --seed 1 --out " + path).code, 0);
  EXPECT_EQ(slurp(path), a.out);
  EXPECT_EQ(run_cli("solve " + path).code == 2, false);

  EXPECT_EQ(run_cli("generate --n 10 --m 25 --g 400").code, 2);
  EXPECT_EQ(run_cli("generate --n 10").code, 2);
}

TEST(CliExportLp, Counts) {
  const auto dir = temp_dir();
  const auto err = (dir / "lp-err.txt").string();
  CliResult r = run_cli("export-lp " + fixture("dessert.hclp"), err);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(slurp(err).find("variables: 33, constraints: 49"), std::string::npos);
  EXPECT_NE(r.out.find("Subject To"), std::string::npos);

  r = run_cli("export-lp " + fixture("five_evaluations.hclp") + " --t 3", err);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(slurp(err).find("variables: 85, constraints: 116"), std::string::npos);

  const auto path = (dir / "empty.lp").string();
  r = run_cli("export-lp " + fixture("no_statements.hclp") + " --out " + path, err);
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  const std::string lp = slurp(path);
  EXPECT_EQ(lp.find("General\nEnd\n") != std::string::npos, true);
  EXPECT_NE(lp.find(" c5: "), std::string::npos);
  EXPECT_EQ(lp.find(" c6: "), std::string::npos);
}

TEST(CliBench, Examples) {
  const auto dir = temp_dir();
  const auto summary = (dir / "summary.csv").string();
  CliResult r = run_cli("bench --sizes \"10,10\" --per-size 50 --algorithms pc,pc-conflicts --summary " +
              summary);
  EXPECT_EQ(r.code, 0);
  std::istringstream rows(r.out);
  std::string line;
  std::getline(rows, line);
  EXPECT_EQ(line, "instance_id,n,m,g,t,s,algorithm,verdict,class,nodes,skipped,time_ms,timeout");
  std::size_t count = 0;
  while (std::getline(rows, line)) ++count;
  EXPECT_EQ(count, 100u);
  std::istringstream sum(slurp(summary));
  std::getline(sum, line);
  count = 0;
  while (std::getline(sum, line)) ++count;
  EXPECT_EQ(count, 2u);

  r = run_cli("bench --sizes \"10,10\" --per-size 0");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "instance_id,n,m,g,t,s,algorithm,verdict,class,nodes,skipped,time_ms,timeout\n");

  EXPECT_EQ(run_cli("bench --sizes \"10\"").code, 2);
  EXPECT_EQ(run_cli("bench --sizes \"10,10\" --algorithms pc,nope").code, 2);
}

}  // namespace
