#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"

namespace {

using kra::cli::RunConfig;

struct FlagBuffer {
  std::string input;
  std::string grid;
  std::string labels;
};

void add_preprocess_flags(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option("--timeout-min", cfg.timeout_min, "Inactivity timeout between views, minutes")
      ->capture_default_str();
  cmd.add_option("--max-session-hours", cfg.max_session_hours, "Drop sessions longer than this")
      ->capture_default_str();
  cmd.add_option("--min-views", cfg.min_views, "Drop sessions with fewer page views")
      ->capture_default_str();
  cmd.add_option("--min-page-freq", cfg.min_frequency, "Drop pages viewed fewer times")
      ->capture_default_str();
}

void add_run_flags(CLI::App& cmd, RunConfig& cfg, FlagBuffer& buf) {
  const std::map<std::string, kra::cli::Algorithm> algorithms{
      {"kmeans", kra::cli::Algorithm::kmeans}, {"som", kra::cli::Algorithm::som}};
  const std::map<std::string, kra::Linkage> linkages{{"average", kra::Linkage::average},
                                                      {"centroid", kra::Linkage::centroid}};
  cmd.add_option("--algorithm", cfg.algorithm, "kmeans or som")
      ->transform(CLI::CheckedTransformer(algorithms, CLI::ignore_case))
      ->default_str("kmeans");
  cmd.add_option("--k", cfg.k, "Number of clusters")->capture_default_str();
  cmd.add_option("--grid", buf.grid, "SOM grid shape ROWSxCOLS (default 5x(k/5) or 1xk)");
  cmd.add_option("--seed", cfg.seed, "Random seed")->envname("KRA_SEED")->capture_default_str();
  cmd.add_option("--threshold", cfg.threshold, "Knockout dissimilarity threshold")
      ->capture_default_str();
  cmd.add_option("--count-limit", cfg.count_limit, "Knock out sessions with more over-threshold pairs")
      ->capture_default_str();
  cmd.add_option("--labels", buf.labels, "CSV session_id,class for precision/recall/F");
  cmd.add_option("--max-iter", cfg.max_iter, "K-Means iteration cap")->capture_default_str();
  cmd.add_option("--linkage", cfg.linkage, "Davies-Bouldin inter-cluster distance")
      ->transform(CLI::CheckedTransformer(linkages, CLI::ignore_case))
      ->default_str("average");
  cmd.add_flag("--dump-sdm", cfg.dump_sdm, "Write each cluster's dissimilarity matrix");
  cmd.add_flag("--sweep", cfg.sweep, "Run k = 10, 15 and 20");
}

void finish(RunConfig& cfg, const FlagBuffer& buf) {
  cfg.input = buf.input;
  if (!buf.grid.empty()) cfg.grid = kra::cli::parse_grid(buf.grid);
  if (!buf.labels.empty()) cfg.labels = buf.labels;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cluster web sessions, refine clusters by knockout and compare quality metrics"};
  app.set_config("--config", "", "Read flags from a TOML/INI file (command-line flags win)");
  app.require_subcommand(1);

  RunConfig cfg;
  FlagBuffer buf;
  std::string synth_out = "data";

  auto* pre = app.add_subcommand("preprocess", "Sessionize a log and build the session matrix");
  pre->add_option("--input", buf.input, "Access log CSV (timestamp,visitor_id,url)")->required();
  pre->add_option("--out", cfg.out, "Output directory")->capture_default_str();
  add_preprocess_flags(*pre, cfg);

  auto* run = app.add_subcommand("run", "Cluster, refine and evaluate a session matrix");
  run->add_option("--input", buf.input, "Matrix CSV (default <out>/matrix.csv)");
  run->add_option("--out", cfg.out, "Output directory")->capture_default_str();
  add_run_flags(*run, cfg, buf);

  auto* pipeline = app.add_subcommand("pipeline", "preprocess followed by run");
  pipeline->add_option("--input", buf.input, "Access log CSV")->required();
  pipeline->add_option("--out", cfg.out, "Output directory")->capture_default_str();
  add_preprocess_flags(*pipeline, cfg);
  add_run_flags(*pipeline, cfg, buf);

  auto* synth = app.add_subcommand("synth", "Write the synthetic fixtures");
  synth->add_option("--out", synth_out, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kra::cli::kExitOk : kra::cli::kExitUsage;
  }

  return kra::cli::guarded(
      [&] {
        finish(cfg, buf);
        if (*pre) {
          kra::cli::cmd_preprocess(cfg, std::cout);
        } else if (*run) {
          kra::cli::cmd_run(cfg, std::cout);
        } else if (*pipeline) {
          kra::cli::cmd_preprocess(cfg, std::cout);
          RunConfig run_cfg = cfg;
          run_cfg.input.clear();
          kra::cli::cmd_run(run_cfg, std::cout);
        } else if (*synth) {
          kra::cli::cmd_synth(synth_out, std::cout);
        }
      },
      std::cerr);
}
