#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

const std::string kCli = FIBERPLAN_CLI_PATH;
const std::string kConfig = FIBERPLAN_TEST_DATA_DIR "/fixture30/scenario.cfg";

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("fiberplan_cli_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

int run(const std::string& args, const std::filesystem::path& stderr_file = "/dev/null") {
  const std::string cmd = "\"" + kCli + "\" " + args + " >/dev/null 2>\"" + stderr_file.string() + "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("subcommands succeed on the fixture") {
  const auto out = scratch("ok");
  CHECK(run("validate --config " + kConfig) == 0);
  CHECK(run("design --config " + kConfig + " --out " + out.string()) == 0);
  CHECK(std::filesystem::exists(out / "design_access_mst.geojson"));
  CHECK(run("report --config " + kConfig + " --algorithm mst --out " + out.string()) == 0);
  CHECK(std::filesystem::exists(out / "report.csv"));
  CHECK(run("mc --config " + kConfig + " --draws 30 --seed 5 --out " + out.string()) == 0);
  CHECK(std::filesystem::exists(out / "mc_summary.csv"));
  std::filesystem::remove_all(out);
}

TEST_CASE("three settlements with MST only") {
  const auto out = scratch("minimal");
  REQUIRE(run("report --config " FIBERPLAN_TEST_DATA_DIR "/minimal3/scenario.cfg --out " + out.string()) == 0);
  const auto access = slurp(out / "design_access_mst.geojson");
  std::size_t edges = 0;
  for (auto pos = access.find("LineString"); pos != std::string::npos; pos = access.find("LineString", pos + 1)) ++edges;
  CHECK(edges == 2);
  const auto report = slurp(out / "report.csv");
  CHECK(report.find("\n1,access,MST,4000,0,2.25041e+06,") != std::string::npos);
  CHECK(report.find("\n2,access,MST,500,12.4293,") != std::string::npos);
  CHECK_FALSE(std::filesystem::exists(out / "design_access_pcst_gw.geojson"));
  std::filesystem::remove_all(out);
}

TEST_CASE("seeded runs are reproducible from the command line") {
  const auto a = scratch("seed_a"), b = scratch("seed_b");
  REQUIRE(run("mc --config " + kConfig + " --draws 50 --seed 11 --out " + a.string()) == 0);
  REQUIRE(run("mc --config " + kConfig + " --draws 50 --seed 11 --out " + b.string()) == 0);
  CHECK(slurp(a / "mc_summary.csv") == slurp(b / "mc_summary.csv"));
  CHECK(slurp(a / "report.csv") == slurp(b / "report.csv"));
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
}

TEST_CASE("exit codes follow the error category") {
  const auto out = scratch("errors");
  const auto err = std::filesystem::temp_directory_path() / "fiberplan_cli_stderr.txt";

  CHECK(run("report --config " + kConfig + " --set adoption_rate=0 --out " + out.string(), err) == 2);
  CHECK(slurp(err).find("\"kind\"") != std::string::npos);
  CHECK_FALSE(std::filesystem::exists(out));

  CHECK(run("report --config " + kConfig + " --set bogus=1 --out " + out.string()) == 2);
  CHECK(run("report --config " + kConfig + " --set 'mc.cost.c_olt=uniform(5,1)' --out " + out.string()) == 2);
  CHECK(run("report --config " + kConfig + " --set settlements=" FIBERPLAN_TEST_DATA_DIR
            "/bad/duplicate_settlements.csv --out " + out.string(), err) == 3);
  CHECK(slurp(err).find("DuplicateId") != std::string::npos);
  CHECK_FALSE(std::filesystem::exists(out));

  CHECK(run("report --config /nonexistent/scenario.cfg") == 5);
  CHECK(run("report") != 0);
  std::filesystem::remove(err);
}
