#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rss/sample_set.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kWorkDir = fs::temp_directory_path() / "rss_cli_test";

int run_cli(const std::string& args) {
  const std::string cmd = std::string(RSS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  return std::system(cmd.c_str());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) ++n;
  return n;
}

struct Workspace {
  Workspace() {
    fs::remove_all(kWorkDir);
    fs::create_directories(kWorkDir);
  }
};

}  // namespace

TEST_CASE("sample, extend, and reload round trip through the file formats") {
  const Workspace ws;
  const fs::path csv = kWorkDir / "set.csv";
  const fs::path design = kWorkDir / "set.design";

  REQUIRE(run_cli("sample -d \"U(0,1)\" -d \"N(0,1)\" -g rss -n 20 --seed 7 -o " +
                  csv.string() + " --design-out " + design.string()) == 0);
  REQUIRE(fs::exists(csv));
  REQUIRE(fs::exists(design));
  CHECK(line_count(csv) == 21);  // header + 20 records

  const std::vector<rss::Distribution> marginals = {
      rss::Distribution::uniform(0, 1), rss::Distribution::normal(0, 1)};
  rss::SampleSet loaded = rss::load_samples_file(csv.string(), marginals);
  CHECK(loaded.size() == 20);
  CHECK(loaded.weight_sum() == rss::Weight::one());
  loaded.design = rss::load_design_file(design.string());
  CHECK(loaded.design->size() == 20);
  CHECK(validate(*loaded.design).clean());

  const fs::path out2 = kWorkDir / "set2.csv";
  REQUIRE(run_cli("extend -d \"U(0,1)\" -d \"N(0,1)\" -m rss -k 5 --seed 8 -i " +
                  csv.string() + " --design " + design.string() + " -o " +
                  out2.string()) == 0);
  CHECK(line_count(out2) == 26);
  rss::SampleSet extended = rss::load_samples_file(out2.string(), marginals);
  CHECK(extended.weight_sum() == rss::Weight::one());
  // the original records survive the round trip bit-for-bit in u and x
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    CHECK(extended.records[i].u == loaded.records[i].u);
    CHECK(extended.records[i].x == loaded.records[i].x);
  }
}

TEST_CASE("hlhs extension through the CLI") {
  const Workspace ws;
  const fs::path csv = kWorkDir / "lhs.csv";
  REQUIRE(run_cli("sample -d \"U(0,1)\" -d \"U(0,1)\" -g lhs -n 10 --seed 3 -o " +
                  csv.string()) == 0);
  const fs::path out = kWorkDir / "lhs2.csv";
  REQUIRE(run_cli("extend -d \"U(0,1)\" -d \"U(0,1)\" -m hlhs -t 1 --seed 4 -i " +
                  csv.string() + " -o " + out.string()) == 0);
  CHECK(line_count(out) == 21);  // 10 -> 20 records
}

TEST_CASE("metrics sweep and optimize-z run end to end") {
  const Workspace ws;
  const fs::path csv = kWorkDir / "metrics.csv";
  REQUIRE(run_cli("metrics --generators srs,lhs --sizes 64 --dims 2 --trials 2 "
                  "--n-probe 10000 --seed 5 -o " +
                  csv.string()) == 0);
  CHECK(line_count(csv) == 5);  // header + 2x2 cells
  CHECK(slurp(csv).rfind("generator,N,n,seed,v_metric,wd2,max_rho,cond", 0) == 0);

  REQUIRE(run_cli("optimize-z -d \"N(0,1)\" --sweep-out " +
                  (kWorkDir / "sweep.csv").string()) == 0);
  CHECK(line_count(kWorkDir / "sweep.csv") == 98);  // header + 97 rows
}

TEST_CASE("adaptive run accepts a config file with flag overrides") {
  const Workspace ws;
  const fs::path cfg = kWorkDir / "run.cfg";
  {
    std::ofstream out(cfg);
    out << "model=cubic-A\n"
           "generator=rss\n"
           "n0=20\n"
           "statistic=variance\n"
           "criterion=analytic\n"
           "threshold=0.05\n"
           "max-samples=50000\n";
  }
  const fs::path out_csv = kWorkDir / "run.csv";
  // seed comes from the command line (mandatory); threshold overridden
  REQUIRE(run_cli("run --config " + cfg.string() + " --threshold 0.1 --seed 12 -o " +
                  out_csv.string()) == 0);
  REQUIRE(fs::exists(out_csv));
  CHECK(slurp(out_csv).rfind("N,statistic,value,ci_lo,ci_hi,metric,converged", 0) == 0);
  // the run must end on a converged row
  std::istringstream in(slurp(out_csv));
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  CHECK(last.back() == '1');
}

TEST_CASE("run without --seed is rejected") {
  const Workspace ws;
  CHECK(run_cli("run -o " + (kWorkDir / "x.csv").string()) != 0);
}
