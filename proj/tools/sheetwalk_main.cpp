// sheetwalk: experiment driver for the telegraph-walk / Brownian-sheet
// simulation library. Subcommands run one experiment each and persist
// plot-ready CSV plus a JSON summary and a manifest that allows exact reruns.

#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sheetwalk/coupling.hpp"
#include "sheetwalk/csv.hpp"
#include "sheetwalk/maximal.hpp"
#include "sheetwalk/rates.hpp"
#include "sheetwalk/rng.hpp"
#include "sheetwalk/sheet.hpp"
#include "sheetwalk/stats.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace sheetwalk;

namespace {

constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Shared plumbing

struct CommonArgs {
  std::uint64_t seed = 42;
  std::string out = "runs";
  std::string threads = "auto";
};

int parse_threads(const std::string& spec) {
  if (spec == "auto") return 0;
  try {
    std::size_t used = 0;
    const int v = std::stoi(spec, &used);
    if (used != spec.size() || v < 0) throw std::invalid_argument(spec);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(
        "--threads expects a non-negative integer or 'auto', got '" + spec + "'");
  }
}

std::string utc_timestamp(std::chrono::system_clock::time_point tp,
                          const char* fmt) {
  const std::time_t t = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::strftime(buf, sizeof(buf), fmt, &tm);
  return buf;
}

// <out>/<subcommand>/<timestamp>[-k]/ — the suffix disambiguates runs that
// start within the same second.
fs::path make_run_dir(const std::string& out, const std::string& subcommand) {
  const std::string stamp =
      utc_timestamp(std::chrono::system_clock::now(), "%Y%m%dT%H%M%SZ");
  static std::atomic<int> counter{0};
  const fs::path base = fs::path(out) / subcommand;
  fs::create_directories(base);
  for (;;) {
    const int k = counter.fetch_add(1);
    fs::path dir = base / (k == 0 ? stamp : stamp + "-" + std::to_string(k));
    std::error_code ec;
    if (fs::create_directory(dir, ec)) return dir;
    if (ec && !fs::exists(dir)) {
      throw std::runtime_error("cannot create run directory " + dir.string());
    }
  }
}

void write_json_file(const fs::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << j.dump(2) << '\n';
}

struct RunContext {
  fs::path dir;
  std::chrono::system_clock::time_point started;
  std::vector<std::string> outputs;
};

RunContext begin_run(const CommonArgs& common, const std::string& subcommand) {
  RunContext ctx;
  ctx.dir = make_run_dir(common.out, subcommand);
  ctx.started = std::chrono::system_clock::now();
  return ctx;
}

void finish_run(const RunContext& ctx, const CommonArgs& common,
                const std::string& subcommand, const json& config) {
  json manifest;
  manifest["subcommand"] = subcommand;
  manifest["version"] = kVersion;
  manifest["master_seed"] = common.seed;
  manifest["config"] = config;
  manifest["threads_requested"] = common.threads;
  manifest["started_utc"] = utc_timestamp(ctx.started, "%Y-%m-%dT%H:%M:%SZ");
  manifest["finished_utc"] = utc_timestamp(std::chrono::system_clock::now(),
                                           "%Y-%m-%dT%H:%M:%SZ");
  manifest["outputs"] = ctx.outputs;
  write_json_file(ctx.dir / "manifest.json", manifest);
  std::cout << ctx.dir.string() << "\n";
}

json fit_to_json(double slope, double intercept, double stderr_slope,
                 double r_squared) {
  json j;
  j["slope"] = slope;
  j["intercept"] = intercept;
  j["stderr_slope"] = stderr_slope;
  j["r_squared"] = r_squared;
  return j;
}

// ---------------------------------------------------------------------------
// bm-rate

struct BmRateArgs {
  std::vector<std::uint64_t> n_list = {256,  512,   1024,  2048, 4096,
                                       8192, 16384, 32768, 65536};
  int replicas = 500;
  int t_grid = 2048;
};

void run_bm_rate(const BmRateArgs& args, const CommonArgs& common) {
  if (args.replicas < 1) {
    throw std::invalid_argument("bm-rate: replicas must be >= 1");
  }
  if (args.t_grid < 2) {
    throw std::invalid_argument("bm-rate: t-grid must be >= 2");
  }
  const int threads = parse_threads(common.threads);
  const auto rows = bm_rate_experiment(args.n_list, args.replicas, common.seed,
                                       args.t_grid, threads);

  RunContext ctx = begin_run(common, "bm-rate");
  {
    CsvWriter csv((ctx.dir / "results.csv").string(),
                  {"n", "replicas", "median", "q90", "q99", "seed"});
    for (const auto& r : rows) {
      csv.write_row({format_u64(r.n), format_i64(r.replicas),
                     format_double(r.median), format_double(r.q90),
                     format_double(r.q99), format_u64(common.seed)});
    }
  }
  ctx.outputs.push_back("results.csv");

  json summary;
  summary["subcommand"] = "bm-rate";
  summary["rows"] = json::array();
  for (const auto& r : rows) {
    json row;
    row["n"] = r.n;
    row["replicas"] = r.replicas;
    row["median"] = r.median;
    row["q90"] = r.q90;
    row["q99"] = r.q99;
    summary["rows"].push_back(row);
  }
  if (rows.size() >= 3) {
    std::vector<std::pair<std::uint64_t, double>> pts;
    for (const auto& r : rows) pts.emplace_back(r.n, r.median);
    const RateFit fit = fit_rate(pts);
    summary["median_fit"] =
        fit_to_json(fit.slope, fit.intercept, fit.stderr_slope, fit.r_squared);
  }
  write_json_file(ctx.dir / "summary.json", summary);
  ctx.outputs.push_back("summary.json");

  json config;
  config["n"] = args.n_list;
  config["replicas"] = args.replicas;
  config["t_grid"] = args.t_grid;
  finish_run(ctx, common, "bm-rate", config);
}

// ---------------------------------------------------------------------------
// sheet-rate

struct SheetRateArgs {
  std::vector<std::uint64_t> n_list = {1024, 4096, 16384, 65536};
  double lambda = 0.19;
  double beta = 0.08;
  double alpha = 0.0;  // <= 0: auto (2x median sup-error at the smallest n)
  int replicas = 200;
  int m = 8;
  int t_grid = 1024;
};

void run_sheet_rate(const SheetRateArgs& args, const CommonArgs& common) {
  RateExperimentConfig config;
  config.lambda = args.lambda;
  config.beta = args.beta;
  config.alpha = args.alpha;
  config.n_list = args.n_list;
  config.replicas = args.replicas;
  config.m = args.m;
  config.t_grid_size = args.t_grid;
  config.master_seed = common.seed;
  config.validate();

  const int threads = parse_threads(common.threads);
  const SheetRateResult res = sheet_rate_experiment(config, threads);

  RunContext ctx = begin_run(common, "sheet-rate");
  {
    CsvWriter csv((ctx.dir / "results.csv").string(),
                  {"n", "lambda", "m", "replica", "sup_error", "p1", "p2",
                   "p3", "seed"});
    for (const auto& r : res.records) {
      csv.write_row({format_u64(r.n), format_double(config.lambda),
                     format_i64(config.m), format_i64(r.replica),
                     format_double(r.sup_error), format_double(r.p1),
                     format_double(r.p2), format_double(r.p3),
                     format_u64(common.seed)});
    }
  }
  ctx.outputs.push_back("results.csv");
  {
    CsvWriter csv((ctx.dir / "rates.csv").string(),
                  {"n", "lambda", "beta", "alpha", "threshold", "tail",
                   "stderr", "median_sup", "q90_sup", "median_p1", "median_p2",
                   "median_p3"});
    for (std::size_t i = 0; i < res.tails.size(); ++i) {
      const TailEstimate& t = res.tails[i];
      const SheetRateSummaryRow& s = res.summary[i];
      csv.write_row({format_u64(t.n), format_double(config.lambda),
                     format_double(config.beta),
                     format_double(res.alpha_resolved),
                     format_double(t.threshold), format_double(t.tail),
                     format_double(t.stderr_), format_double(s.median_sup),
                     format_double(s.q90_sup), format_double(s.median_p1),
                     format_double(s.median_p2), format_double(s.median_p3)});
    }
  }
  ctx.outputs.push_back("rates.csv");

  json summary;
  summary["subcommand"] = "sheet-rate";
  summary["alpha"] = res.alpha_resolved;
  summary["fit"] = fit_to_json(res.fit.slope, res.fit.intercept,
                               res.fit.stderr_slope, res.fit.r_squared);
  summary["tails"] = json::array();
  for (const auto& t : res.tails) {
    json row;
    row["n"] = t.n;
    row["threshold"] = t.threshold;
    row["tail"] = t.tail;
    row["stderr"] = t.stderr_;
    summary["tails"].push_back(row);
  }
  summary["rows"] = json::array();
  for (const auto& s : res.summary) {
    json row;
    row["n"] = s.n;
    row["median_sup"] = s.median_sup;
    row["q90_sup"] = s.q90_sup;
    row["median_p1"] = s.median_p1;
    row["median_p2"] = s.median_p2;
    row["median_p3"] = s.median_p3;
    summary["rows"].push_back(row);
  }
  write_json_file(ctx.dir / "summary.json", summary);
  ctx.outputs.push_back("summary.json");

  json cfg;
  cfg["n"] = args.n_list;
  cfg["lambda"] = args.lambda;
  cfg["beta"] = args.beta;
  cfg["alpha"] = args.alpha;
  cfg["replicas"] = args.replicas;
  cfg["m"] = args.m;
  cfg["t_grid"] = args.t_grid;
  finish_run(ctx, common, "sheet-rate", cfg);
}

// ---------------------------------------------------------------------------
// covariance

struct CovarianceArgs {
  std::vector<std::uint64_t> n_list = {16384};
  double lambda = 0.19;
  int m = 8;
  int t_grid = 1024;
  int replicas = 2000;
};

void run_covariance(const CovarianceArgs& args, const CommonArgs& common) {
  if (args.n_list.empty()) {
    throw std::invalid_argument("covariance: need at least one n");
  }
  const int threads = parse_threads(common.threads);
  std::vector<std::pair<std::uint64_t, std::vector<CovarianceRow>>> per_n;
  for (const std::uint64_t n : args.n_list) {
    SheetConfig config;
    config.n = n;
    config.lambda = args.lambda;
    config.m = args.m;
    config.t_grid_size = args.t_grid;
    config.validate();
    // Streams are keyed by n itself, so a given n reproduces the same rows
    // whether it is run alone or as part of a longer list.
    per_n.emplace_back(n, covariance_check(config, args.replicas,
                                           default_covariance_pairs(),
                                           derive_stream(common.seed, {3, n}),
                                           threads));
  }

  RunContext ctx = begin_run(common, "covariance");
  {
    CsvWriter csv((ctx.dir / "results.csv").string(),
                  {"n", "s1", "t1", "s2", "t2", "empirical", "exact", "stderr",
                   "seed"});
    for (const auto& [n, rows] : per_n) {
      for (const auto& r : rows) {
        csv.write_row({format_u64(n), format_double(r.s1),
                       format_double(r.t1), format_double(r.s2),
                       format_double(r.t2), format_double(r.empirical),
                       format_double(r.exact), format_double(r.stderr_),
                       format_u64(common.seed)});
      }
    }
  }
  ctx.outputs.push_back("results.csv");

  json summary;
  summary["subcommand"] = "covariance";
  summary["rows"] = json::array();
  double max_abs_z = 0.0;
  for (const auto& [n, rows] : per_n) {
    for (const auto& r : rows) {
      const double z =
          r.stderr_ > 0.0 ? (r.empirical - r.exact) / r.stderr_ : 0.0;
      max_abs_z = std::max(max_abs_z, std::abs(z));
      json row;
      row["n"] = n;
      row["s1"] = r.s1;
      row["t1"] = r.t1;
      row["s2"] = r.s2;
      row["t2"] = r.t2;
      row["empirical"] = r.empirical;
      row["exact"] = r.exact;
      row["stderr"] = r.stderr_;
      row["z"] = z;
      summary["rows"].push_back(row);
    }
  }
  summary["max_abs_z"] = max_abs_z;
  write_json_file(ctx.dir / "summary.json", summary);
  ctx.outputs.push_back("summary.json");

  json cfg;
  cfg["n"] = args.n_list;
  cfg["lambda"] = args.lambda;
  cfg["m"] = args.m;
  cfg["t_grid"] = args.t_grid;
  cfg["replicas"] = args.replicas;
  finish_run(ctx, common, "covariance", cfg);
}

// ---------------------------------------------------------------------------
// orlicz

struct OrliczArgs {
  double tol = 1e-6;
  std::uint64_t mc_samples = 0;  // 0: skip the Monte Carlo companion
};

void run_orlicz(const OrliczArgs& args, const CommonArgs& common) {
  if (args.tol <= 0.0) {
    throw std::invalid_argument("orlicz: --tol must be positive");
  }
  (void)parse_threads(common.threads);  // reject malformed specs up front
  const OrliczNormResult res = orlicz_norm_exp_gaussian(args.tol);

  RunContext ctx = begin_run(common, "orlicz");
  {
    CsvWriter csv((ctx.dir / "results.csv").string(),
                  {"mu_star", "residual", "method", "tolerance"});
    csv.write_row({format_double(res.mu_star), format_double(res.residual),
                   res.method, format_double(res.tolerance)});
  }
  ctx.outputs.push_back("results.csv");

  json summary;
  summary["subcommand"] = "orlicz";
  summary["mu_star"] = res.mu_star;
  summary["residual"] = res.residual;
  summary["method"] = res.method;
  summary["tolerance"] = res.tolerance;
  if (args.mc_samples > 0) {
    RngStream stream = derive_stream(common.seed, {6});
    const MonteCarloEstimate mc =
        monte_carlo_expected_psi(res.mu_star, args.mc_samples, stream);
    json mcj;
    mcj["samples"] = mc.samples;
    mcj["estimate"] = mc.estimate;
    mcj["stderr"] = mc.stderr_;
    mcj["z_against_one"] =
        mc.stderr_ > 0.0 ? (mc.estimate - 1.0) / mc.stderr_ : 0.0;
    summary["monte_carlo"] = mcj;
  }
  write_json_file(ctx.dir / "summary.json", summary);
  ctx.outputs.push_back("summary.json");

  json cfg;
  cfg["tol"] = args.tol;
  cfg["mc_samples"] = args.mc_samples;
  finish_run(ctx, common, "orlicz", cfg);
}

// ---------------------------------------------------------------------------
// maximal

struct MaximalArgs {
  std::vector<double> betas = {2.0, 4.0, 8.0, 16.0};
  int replicas = 10000;
  int grid = 256;
};

// The five rectangles used by the mean-identity diagnostic: (s,t) vs (s2,t2)
// spanning the full square, a nested square, asymmetric strips, and the
// degenerate case.
const std::vector<std::array<double, 4>>& mean_identity_rectangles() {
  static const std::vector<std::array<double, 4>> kRects = {
      {1.0, 1.0, 0.0, 0.0},
      {1.0, 1.0, 0.5, 0.5},
      {0.75, 1.0, 0.25, 0.5},
      {1.0, 0.5, 0.5, 0.25},
      {0.7, 0.6, 0.7, 0.6},
  };
  return kRects;
}

void run_maximal(const MaximalArgs& args, const CommonArgs& common) {
  if (args.betas.empty()) {
    throw std::invalid_argument("maximal: need at least one beta");
  }
  if (args.replicas < 2 || args.grid < 2) {
    throw std::invalid_argument("maximal: need replicas >= 2 and grid >= 2");
  }
  const int threads = parse_threads(common.threads);
  const ImkellerResult res = imkeller_ratio_experiment(
      args.betas, args.replicas, args.grid, derive_stream(common.seed, {4}),
      threads);

  constexpr int kMeanReplicas = 1000000;
  std::vector<ExpMeanCheck> means;
  const auto& rects = mean_identity_rectangles();
  for (std::size_t i = 0; i < rects.size(); ++i) {
    means.push_back(exp_sheet_mean_check(rects[i][0], rects[i][1], rects[i][2],
                                         rects[i][3], kMeanReplicas,
                                         derive_stream(common.seed, {5, i}),
                                         threads));
  }

  RunContext ctx = begin_run(common, "maximal");
  {
    CsvWriter csv((ctx.dir / "results.csv").string(),
                  {"beta", "tail", "ratio", "stderr", "seed"});
    for (const auto& r : res.rows) {
      csv.write_row({format_double(r.beta), format_double(r.tail),
                     format_double(r.ratio), format_double(r.stderr_),
                     format_u64(common.seed)});
    }
  }
  ctx.outputs.push_back("results.csv");

  json summary;
  summary["subcommand"] = "maximal";
  summary["mu_star"] = res.mu_star;
  summary["residual"] = orlicz_norm_exp_gaussian(1e-9).residual;
  summary["ratios"] = json::array();
  double max_ratio = 0.0;
  for (const auto& r : res.rows) {
    max_ratio = std::max(max_ratio, r.ratio);
    json row;
    row["beta"] = r.beta;
    row["tail"] = r.tail;
    row["ratio"] = r.ratio;
    row["stderr"] = r.stderr_;
    summary["ratios"].push_back(row);
  }
  summary["max_ratio"] = max_ratio;
  summary["mean_identity"] = json::array();
  for (std::size_t i = 0; i < means.size(); ++i) {
    const auto& rect = mean_identity_rectangles()[i];
    const ExpMeanCheck& c = means[i];
    json row;
    row["s"] = rect[0];
    row["t"] = rect[1];
    row["s2"] = rect[2];
    row["t2"] = rect[3];
    row["replicas"] = kMeanReplicas;
    row["empirical"] = c.empirical;
    row["stderr"] = c.stderr_;
    row["target"] = c.target;
    row["alternate_display"] = c.alternate;
    row["z_target"] =
        c.stderr_ > 0.0 ? (c.empirical - c.target) / c.stderr_ : 0.0;
    summary["mean_identity"].push_back(row);
  }
  write_json_file(ctx.dir / "summary.json", summary);
  ctx.outputs.push_back("summary.json");

  json cfg;
  cfg["betas"] = args.betas;
  cfg["replicas"] = args.replicas;
  cfg["grid"] = args.grid;
  finish_run(ctx, common, "maximal", cfg);
}

// ---------------------------------------------------------------------------
// rerun: re-ingest a manifest and reproduce the run it describes.

void run_from_manifest(const std::string& manifest_path,
                       const std::string& out_override,
                       const std::string& threads_override) {
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("rerun: cannot open manifest " + manifest_path);
  }
  json manifest;
  try {
    in >> manifest;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("rerun: manifest is not valid JSON: ") +
                                e.what());
  }
  for (const char* key : {"subcommand", "master_seed", "config"}) {
    if (!manifest.contains(key)) {
      throw std::invalid_argument(std::string("rerun: manifest lacks '") + key +
                                  "'");
    }
  }
  CommonArgs common;
  common.seed = manifest["master_seed"].get<std::uint64_t>();
  common.out = out_override;
  common.threads = threads_override;
  const std::string sub = manifest["subcommand"].get<std::string>();
  const json& cfg = manifest["config"];

  if (sub == "bm-rate") {
    BmRateArgs args;
    args.n_list = cfg.at("n").get<std::vector<std::uint64_t>>();
    args.replicas = cfg.at("replicas").get<int>();
    args.t_grid = cfg.at("t_grid").get<int>();
    run_bm_rate(args, common);
  } else if (sub == "sheet-rate") {
    SheetRateArgs args;
    args.n_list = cfg.at("n").get<std::vector<std::uint64_t>>();
    args.lambda = cfg.at("lambda").get<double>();
    args.beta = cfg.at("beta").get<double>();
    args.alpha = cfg.at("alpha").get<double>();
    args.replicas = cfg.at("replicas").get<int>();
    args.m = cfg.at("m").get<int>();
    args.t_grid = cfg.at("t_grid").get<int>();
    run_sheet_rate(args, common);
  } else if (sub == "covariance") {
    CovarianceArgs args;
    args.n_list = cfg.at("n").get<std::vector<std::uint64_t>>();
    args.lambda = cfg.at("lambda").get<double>();
    args.m = cfg.at("m").get<int>();
    args.t_grid = cfg.at("t_grid").get<int>();
    args.replicas = cfg.at("replicas").get<int>();
    run_covariance(args, common);
  } else if (sub == "orlicz") {
    OrliczArgs args;
    args.tol = cfg.at("tol").get<double>();
    args.mc_samples = cfg.at("mc_samples").get<std::uint64_t>();
    run_orlicz(args, common);
  } else if (sub == "maximal") {
    MaximalArgs args;
    args.betas = cfg.at("betas").get<std::vector<double>>();
    args.replicas = cfg.at("replicas").get<int>();
    args.grid = cfg.at("grid").get<int>();
    run_maximal(args, common);
  } else {
    throw std::invalid_argument("rerun: unknown subcommand '" + sub +
                                "' in manifest");
  }
}

void add_common_flags(CLI::App* sub, CommonArgs& common) {
  sub->add_option("--seed", common.seed, "Master seed")->capture_default_str();
  sub->add_option("--out", common.out, "Output directory root")
      ->capture_default_str();
  sub->add_option("--threads", common.threads,
                  "Worker threads (integer or 'auto')")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "sheetwalk: uniform-transport approximations of the Brownian sheet\n"
      "and their empirical convergence diagnostics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("sheetwalk ") + kVersion);
  app.failure_message(CLI::FailureMessage::help);

  CommonArgs common_bm, common_sheet, common_cov, common_orl, common_max;
  BmRateArgs bm_args;
  SheetRateArgs sheet_args;
  CovarianceArgs cov_args;
  OrliczArgs orl_args;
  MaximalArgs max_args;
  std::string rerun_manifest;
  std::string rerun_out = "runs";
  std::string rerun_threads = "auto";

  CLI::App* bm = app.add_subcommand(
      "bm-rate", "Sup-distance quantiles of the coupled walk/BM pair vs n");
  bm->add_option("--n", bm_args.n_list, "Comma-separated list of n values")
      ->delimiter(',')
      ->capture_default_str();
  bm->add_option("--replicas", bm_args.replicas, "Replicas per n")
      ->capture_default_str();
  bm->add_option("--t-grid", bm_args.t_grid, "Uniform time-grid points")
      ->capture_default_str();
  add_common_flags(bm, common_bm);

  CLI::App* sheet = app.add_subcommand(
      "sheet-rate", "Sheet sup-error rate sweep with tail estimates");
  sheet->add_option("--n", sheet_args.n_list, "Comma-separated list of n values")
      ->delimiter(',')
      ->capture_default_str();
  sheet->add_option("--lambda", sheet_args.lambda,
                    "Strip exponent, in (0, 1/5)")
      ->capture_default_str();
  sheet->add_option("--beta", sheet_args.beta, "Tail exponent, in (0, lambda/2)")
      ->capture_default_str();
  sheet->add_option("--alpha", sheet_args.alpha,
                    "Tail threshold constant; <= 0 resolves to 2x the median "
                    "sup-error at the smallest n")
      ->capture_default_str();
  sheet->add_option("--replicas", sheet_args.replicas, "Replicas per n")
      ->capture_default_str();
  sheet->add_option("--m", sheet_args.m, "Sub-strips per strip")
      ->capture_default_str();
  sheet->add_option("--t-grid", sheet_args.t_grid, "Time-grid intervals")
      ->capture_default_str();
  add_common_flags(sheet, common_sheet);

  CLI::App* cov = app.add_subcommand(
      "covariance", "Empirical covariance of the approximating sheet");
  cov->add_option("--n", cov_args.n_list, "Comma-separated list of n values")
      ->delimiter(',')
      ->capture_default_str();
  cov->add_option("--lambda", cov_args.lambda, "Strip exponent, in (0, 1/5)")
      ->capture_default_str();
  cov->add_option("--m", cov_args.m, "Sub-strips per strip")
      ->capture_default_str();
  cov->add_option("--t-grid", cov_args.t_grid, "Time-grid intervals")
      ->capture_default_str();
  cov->add_option("--replicas", cov_args.replicas, "Replicas")
      ->capture_default_str();
  add_common_flags(cov, common_cov);

  CLI::App* orl = app.add_subcommand(
      "orlicz", "Orlicz norm of exp(B(1,1)) by deterministic quadrature");
  orl->add_option("--tol", orl_args.tol, "Residual tolerance of the root")
      ->capture_default_str();
  orl->add_option("--mc-samples", orl_args.mc_samples,
                  "Optional Monte Carlo cross-check sample count")
      ->capture_default_str();
  add_common_flags(orl, common_orl);

  CLI::App* maxi = app.add_subcommand(
      "maximal", "Normalized tail ratios of max exp(B) plus mean identities");
  maxi->add_option("--beta", max_args.betas,
                   "Comma-separated tail levels beta")
      ->delimiter(',')
      ->capture_default_str();
  maxi->add_option("--replicas", max_args.replicas, "Replicas")
      ->capture_default_str();
  maxi->add_option("--t-grid", max_args.grid, "Sheet grid size per axis")
      ->capture_default_str();
  add_common_flags(maxi, common_max);

  CLI::App* rerun = app.add_subcommand(
      "rerun", "Reproduce a run exactly from its manifest.json");
  rerun->add_option("manifest", rerun_manifest, "Path to manifest.json")
      ->required();
  rerun->add_option("--out", rerun_out, "Output directory root")
      ->capture_default_str();
  rerun->add_option("--threads", rerun_threads,
                    "Worker threads (integer or 'auto')")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
    if (bm->parsed()) run_bm_rate(bm_args, common_bm);
    if (sheet->parsed()) run_sheet_rate(sheet_args, common_sheet);
    if (cov->parsed()) run_covariance(cov_args, common_cov);
    if (orl->parsed()) run_orlicz(orl_args, common_orl);
    if (maxi->parsed()) run_maximal(max_args, common_max);
    if (rerun->parsed()) run_from_manifest(rerun_manifest, rerun_out, rerun_threads);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
