#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "report/report.hpp"

using namespace rank1lab;
using namespace rank1lab::report;

namespace {

RunConfig small_config() {
  return parse_config(
      "scan.n_F = 20\nscan.n_dir = 10\nscan.n_refine = 2\n"
      "scan.n_search_F = 1\nscan.n_starts = 6\n"
      "suite.identity.n = 50\nsuite.gradient.n = 5\nsuite.theorem.n = 50\n"
      "suite.twins.n = 200\nsuite.twins.n_det = 50\nthreads = 1\n");
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Report, Commands) {
  EXPECT_TRUE(is_command("all"));
  EXPECT_TRUE(is_command("blatzko-scan"));
  EXPECT_FALSE(is_command("everything"));
  EXPECT_TRUE(command_takes_model("pc-check"));
  EXPECT_FALSE(command_takes_model("twins"));
  const RunConfig c = small_config();
  EXPECT_THROW(run_command("everything", "", c), ConfigError);
  EXPECT_THROW(run_command("ellipticity", "", c), ConfigError);
  EXPECT_THROW(run_command("twins", "svk", c), ConfigError);
  EXPECT_THROW(run_command("ellipticity", "mooney", c), ConfigError);
}

TEST(Report, ExitCodes) {
  const RunConfig c = small_config();
  EXPECT_EQ(run_command("ellipticity", "blatz-ko", c).exit_code, 0);
  EXPECT_EQ(run_command("ellipticity", "svk", c).exit_code, 1);
  EXPECT_EQ(run_command("pc-check", "neo-hooke", c).exit_code, 0);
  EXPECT_EQ(run_command("pc-check", "volumetric-cubic", c).exit_code, 1);
  EXPECT_EQ(run_command("identities", "", c).exit_code, 0);
  EXPECT_EQ(run_command("twins", "", c).exit_code, 0);
}

TEST(Report, AllSeparatesFindingsFromInconsistencies) {
  const auto out = run_command("all", "", small_config());
  const Json& j = out.report;
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_TRUE(j["violations_found"].get<bool>());
  EXPECT_EQ(j["schema"], kSchemaName);
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_TRUE(j["target"].is_null());
  const Json& ell = j["suites"]["ellipticity"];
  EXPECT_EQ(ell["blatz-ko"]["violation_count"], 0);
  EXPECT_GT(ell["svk"]["violation_count"].get<int>(), 0);
  EXPECT_TRUE(ell["svk"]["consistent"].get<bool>());
  EXPECT_FALSE(ell["svk"]["model"]["declared_rank_one_convex"].get<bool>());
  EXPECT_GT(j["suites"]["injectivity"]["volumetric-cubic"]["certificate_count"].get<int>(), 0);
  EXPECT_EQ(j["suites"]["injectivity"]["blatz-ko"]["certificate_count"], 0);
  EXPECT_FALSE(j["suites"]["blatzko_scan"]["is_monotone"].get<bool>());
  EXPECT_FALSE(j["suites"]["pc_check"]["volumetric-cubic"]["verdict"].get<bool>());
  for (const char* f : {"ellipticity_violations.csv", "pressure_scan.csv", "dilation_scan.csv"})
    EXPECT_EQ(out.files.count(f), 1u) << f;
  EXPECT_EQ(out.files.at("pressure_scan.csv").rfind("alpha,spherical\n", 0), 0u);
}

TEST(Report, DeterministicModuloMeta) {
  const RunConfig c = small_config();
  const auto a = run_command("injectivity", "svk", c);
  RunConfig c2 = c;
  c2.threads = 3;
  const auto b = run_command("injectivity", "svk", c2);
  EXPECT_EQ(dump(strip_meta(a.report)), dump(strip_meta(b.report)));
  EXPECT_TRUE(a.report.contains("meta"));
  EXPECT_FALSE(strip_meta(a.report).contains("meta"));
  EXPECT_EQ(a.report["target"], "svk");
}

TEST(Report, FormatNumber) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(-2.0), "-2");
  EXPECT_EQ(format_number(1e-300), "1e-300");
  EXPECT_EQ(std::stod(format_number(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Report, WriteOutputs) {
  const auto dir = std::filesystem::temp_directory_path() / "rank1lab_test_out" / "nested";
  std::filesystem::remove_all(dir.parent_path());
  RunOutcome o;
  o.report = Json{{"schema", kSchemaName}};
  o.files["a.csv"] = "x\n1\n";
  write_outputs(o, dir);
  EXPECT_EQ(slurp(dir / "report.json"), dump(o.report));
  EXPECT_EQ(slurp(dir / "a.csv"), "x\n1\n");
  for (const auto& e : std::filesystem::directory_iterator(dir))
    EXPECT_EQ(e.path().filename().string().find(".tmp"), std::string::npos);
  std::filesystem::remove_all(dir.parent_path());
}

TEST(Report, UnwritableOutputDirectory) {
  const auto file = std::filesystem::temp_directory_path() / "rank1lab_test_blocker";
  { std::ofstream(file) << "x"; }
  RunOutcome o;
  o.report = Json::object();
  EXPECT_THROW(write_outputs(o, file / "sub"), OutputError);
  std::filesystem::remove(file);
}
