// End-to-end tests of the sheetwalk executable: flag handling, exit codes,
// output layout, file schemas, and byte-level determinism. The binary path
// arrives via the SHEETWALK_BIN environment variable.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string binary_path() {
  const char* bin = std::getenv("SHEETWALK_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "SHEETWALK_BIN must point at the sheetwalk binary");
  return bin;
}

int run_command(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

fs::path fresh_dir(const std::string& tag) {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() /
                       ("sheetwalk_cli_" + tag + "_" +
                        std::to_string(::getpid()) + "_" +
                        std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file: " << path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// The run directory created under <root>/<subcommand>/; tests run one
// experiment per root so there is exactly one.
fs::path only_run_dir(const fs::path& root, const std::string& subcommand) {
  const fs::path base = root / subcommand;
  REQUIRE(fs::exists(base));
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(base)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  REQUIRE(dirs.size() == 1);
  return dirs.front();
}

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

}  // namespace

TEST_CASE("help and version exit zero") {
  CHECK(run_command(binary_path() + " --help > /dev/null 2>&1") == 0);
  CHECK(run_command(binary_path() + " --version > /dev/null 2>&1") == 0);
  CHECK(run_command(binary_path() + " bm-rate --help > /dev/null 2>&1") == 0);
}

TEST_CASE("unknown subcommand prints usage and exits 2") {
  const fs::path dir = fresh_dir("usage");
  const fs::path log = dir / "log.txt";
  const int code =
      run_command(binary_path() + " frobnicate > " + log.string() + " 2>&1");
  CHECK(code == 2);
  const std::string text = slurp(log);
  CHECK(text.find("Usage") != std::string::npos);
  CHECK(text.find("bm-rate") != std::string::npos);
}

TEST_CASE("missing subcommand exits 2") {
  CHECK(run_command(binary_path() + " > /dev/null 2>&1") == 2);
}

TEST_CASE("lambda outside the open interval is a config error naming lambda") {
  const fs::path dir = fresh_dir("lambda");
  const fs::path log = dir / "log.txt";
  const int code = run_command(binary_path() + " sheet-rate --lambda 0.3 --out " +
                               (dir / "runs").string() + " > " + log.string() +
                               " 2>&1");
  CHECK(code == 2);
  const std::string text = slurp(log);
  CHECK(text.find("lambda") != std::string::npos);
  // Config errors must not leave a partial run directory behind.
  CHECK(!fs::exists(dir / "runs" / "sheet-rate"));

  const int code2 = run_command(binary_path() + " covariance --lambda 0 --out " +
                                (dir / "runs").string() + " > /dev/null 2>&1");
  CHECK(code2 == 2);
}

TEST_CASE("bad thread spec is a config error") {
  CHECK(run_command(binary_path() +
                    " orlicz --threads noodles > /dev/null 2>&1") == 2);
}

TEST_CASE("orlicz writes the root with a small residual") {
  const fs::path root = fresh_dir("orlicz");
  CHECK(run_command(binary_path() + " orlicz --tol 1e-6 --out " +
                    root.string() + " > /dev/null 2>&1") == 0);
  const fs::path run = only_run_dir(root, "orlicz");

  const json summary = json::parse(slurp(run / "summary.json"));
  CHECK(summary.at("mu_star").get<double>() ==
        doctest::Approx(1.3706397).epsilon(1e-6));
  CHECK(std::abs(summary.at("residual").get<double>()) <= 1e-6);
  CHECK(summary.at("method").get<std::string>() == "quadrature");

  const std::string csv = slurp(run / "results.csv");
  CHECK(first_line(csv) == "mu_star,residual,method,tolerance");

  const json manifest = json::parse(slurp(run / "manifest.json"));
  CHECK(manifest.at("subcommand").get<std::string>() == "orlicz");
  CHECK(manifest.at("master_seed").get<std::uint64_t>() == 42);
  CHECK(manifest.at("config").at("tol").get<double>() == 1e-6);
}

TEST_CASE("bm-rate emits the documented schema and is thread-invariant") {
  const std::string flags = " bm-rate --n 256,512 --replicas 12 --t-grid 64 --seed 7 ";
  const fs::path root1 = fresh_dir("bm1");
  const fs::path root2 = fresh_dir("bm2");
  CHECK(run_command(binary_path() + flags + "--threads 1 --out " +
                    root1.string() + " > /dev/null 2>&1") == 0);
  CHECK(run_command(binary_path() + flags + "--threads 3 --out " +
                    root2.string() + " > /dev/null 2>&1") == 0);

  const std::string csv1 = slurp(only_run_dir(root1, "bm-rate") / "results.csv");
  const std::string csv2 = slurp(only_run_dir(root2, "bm-rate") / "results.csv");
  CHECK(csv1 == csv2);
  CHECK(first_line(csv1) == "n,replicas,median,q90,q99,seed");

  std::istringstream lines(csv1);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 3);  // header + one row per n
  CHECK(csv1.find("256,12,") != std::string::npos);
  CHECK(csv1.find(",7\n") != std::string::npos);
  CHECK(csv1.find("\r") == std::string::npos);
}

TEST_CASE("sheet-rate emits per-replica rows plus rates.csv") {
  const fs::path root = fresh_dir("sheet");
  CHECK(run_command(binary_path() +
                    " sheet-rate --n 256,1024 --replicas 6 --m 3 --t-grid 64"
                    " --seed 11 --out " +
                    root.string() + " > /dev/null 2>&1") == 0);
  const fs::path run = only_run_dir(root, "sheet-rate");

  const std::string results = slurp(run / "results.csv");
  CHECK(first_line(results) ==
        "n,lambda,m,replica,sup_error,p1,p2,p3,seed");
  std::istringstream lines(results);
  std::string line;
  int rows = -1;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 12);  // 2 n-values x 6 replicas

  const std::string rates = slurp(run / "rates.csv");
  CHECK(first_line(rates) ==
        "n,lambda,beta,alpha,threshold,tail,stderr,median_sup,q90_sup,"
        "median_p1,median_p2,median_p3");

  const json summary = json::parse(slurp(run / "summary.json"));
  CHECK(summary.at("alpha").get<double>() > 0.0);
  CHECK(summary.at("tails").size() == 2);
  CHECK(summary.at("rows").size() == 2);
}

TEST_CASE("covariance and maximal emit their schemas") {
  const fs::path root = fresh_dir("covmax");
  CHECK(run_command(binary_path() +
                    " covariance --n 512 --replicas 40 --m 4 --t-grid 64 --out " +
                    root.string() + " > /dev/null 2>&1") == 0);
  const fs::path cov = only_run_dir(root, "covariance");
  CHECK(first_line(slurp(cov / "results.csv")) ==
        "n,s1,t1,s2,t2,empirical,exact,stderr,seed");
  const json cov_summary = json::parse(slurp(cov / "summary.json"));
  CHECK(cov_summary.at("rows").size() == 10);

  CHECK(run_command(binary_path() +
                    " maximal --beta 2,4 --replicas 60 --t-grid 16 --out " +
                    root.string() + " > /dev/null 2>&1") == 0);
  const fs::path maxi = only_run_dir(root, "maximal");
  CHECK(first_line(slurp(maxi / "results.csv")) ==
        "beta,tail,ratio,stderr,seed");
  const json summary = json::parse(slurp(maxi / "summary.json"));
  CHECK(summary.contains("mu_star"));
  CHECK(summary.contains("residual"));
  REQUIRE(summary.at("ratios").size() == 2);
  for (const auto& row : summary.at("ratios")) {
    CHECK(row.contains("beta"));
    CHECK(row.contains("tail"));
    CHECK(row.contains("ratio"));
  }
  CHECK(summary.at("mean_identity").size() == 5);
}

TEST_CASE("rerun reproduces a run byte for byte from its manifest") {
  const fs::path root = fresh_dir("rerun_src");
  CHECK(run_command(binary_path() +
                    " sheet-rate --n 256,512 --replicas 5 --m 2 --t-grid 32"
                    " --seed 99 --threads 2 --out " +
                    root.string() + " > /dev/null 2>&1") == 0);
  const fs::path run = only_run_dir(root, "sheet-rate");

  const fs::path root2 = fresh_dir("rerun_dst");
  CHECK(run_command(binary_path() + " rerun " +
                    (run / "manifest.json").string() + " --threads 1 --out " +
                    root2.string() + " > /dev/null 2>&1") == 0);
  const fs::path rerun = only_run_dir(root2, "sheet-rate");

  CHECK(slurp(run / "results.csv") == slurp(rerun / "results.csv"));
  CHECK(slurp(run / "rates.csv") == slurp(rerun / "rates.csv"));
  CHECK(slurp(run / "summary.json") == slurp(rerun / "summary.json"));

  CHECK(run_command(binary_path() + " rerun /no/such/manifest.json"
                    " > /dev/null 2>&1") == 2);
}
