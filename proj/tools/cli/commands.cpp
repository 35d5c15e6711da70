#include "cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include <fmt/format.h>
#include <json.hpp>

#include "kra/error.hpp"
#include "kra/ingest.hpp"
#include "kra/kmeans.hpp"
#include "kra/matrix.hpp"
#include "kra/refine.hpp"
#include "kra/report.hpp"
#include "kra/som.hpp"
#include "kra/synthetic.hpp"

namespace kra::cli {
namespace fs = std::filesystem;

namespace {

using Artifacts = std::vector<std::pair<fs::path, std::string>>;

// Everything is rendered in memory first, so a failure earlier in the
// command leaves the output directory untouched.
void write_artifacts(const fs::path& dir, const Artifacts& artifacts) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory " + dir.string() + ": " + ec.message());
  for (const auto& [name, content] : artifacts) {
    const fs::path target = dir / name;
    const fs::path tmp = fs::path(target).concat(".tmp");
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << content;
      if (!out) throw DataError("cannot write " + tmp.string());
    }
    fs::rename(tmp, target, ec);
    if (ec) throw DataError("cannot rename " + tmp.string() + ": " + ec.message());
  }
}

std::ifstream open_input(const fs::path& path, const char* what) {
  if (!fs::is_regular_file(path)) throw UsageError(std::string(what) + " not found: " + path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError(std::string("cannot open ") + what + ": " + path.string());
  return in;
}

std::int64_t to_seconds(double value, double unit) {
  return static_cast<std::int64_t>(std::llround(value * unit));
}

std::string algorithm_name(Algorithm a) { return a == Algorithm::kmeans ? "kmeans" : "som"; }

}  // namespace

GridShape parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw UsageError("--grid expects ROWSxCOLS, got '" + text + "'");
  try {
    std::size_t used_r = 0;
    std::size_t used_c = 0;
    const auto rows_text = text.substr(0, x);
    const auto cols_text = text.substr(x + 1);
    // stoul accepts signs and leading blanks; a shape is digits only.
    const auto digits = [](const std::string& t) {
      return !t.empty() && t.find_first_not_of("0123456789") == std::string::npos;
    };
    if (!digits(rows_text) || !digits(cols_text)) throw std::invalid_argument(text);
    const auto rows = std::stoul(rows_text, &used_r);
    const auto cols = std::stoul(cols_text, &used_c);
    if (used_r != rows_text.size() || used_c != cols_text.size() || rows == 0 || cols == 0)
      throw std::invalid_argument(text);
    return {rows, cols};
  } catch (const std::exception&) {
    throw UsageError("--grid expects ROWSxCOLS with positive integers, got '" + text + "'");
  }
}

GridShape default_grid(std::size_t k) {
  if (k % 5 == 0) return {5, k / 5};
  return {1, k};
}

void RunConfig::validate() const {
  if (k < 1) throw UsageError("--k must be >= 1");
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw UsageError("--threshold must be in [0, 1]");
  if (!(timeout_min > 0.0) || to_seconds(timeout_min, 60.0) < 1)
    throw UsageError("--timeout-min must be positive");
  if (!(max_session_hours > 0.0) || to_seconds(max_session_hours, 3600.0) < 1)
    throw UsageError("--max-session-hours must be positive");
  if (min_views < 1) throw UsageError("--min-views must be >= 1");
  if (min_frequency < 1) throw UsageError("--min-page-freq must be >= 1");
  if (max_iter < 1) throw UsageError("--max-iter must be >= 1");
  if (sweep && grid) throw UsageError("--sweep and --grid cannot be combined");
}

std::vector<std::size_t> run_cluster_counts(const RunConfig& config) {
  if (config.sweep) return {10, 15, 20};
  if (config.algorithm == Algorithm::som && config.grid) return {config.grid->rows * config.grid->cols};
  return {config.k};
}

void cmd_preprocess(const RunConfig& config, std::ostream& log) {
  config.validate();
  if (config.input.empty()) throw UsageError("preprocess needs --input");
  auto in = open_input(config.input, "input log");

  ParseResult parsed;
  try {
    parsed = parse_log(in);
  } catch (const DataError& e) {
    throw DataError(config.input.string() + ": " + e.what());
  }

  const PreprocessOptions opts{to_seconds(config.timeout_min, 60.0),
                               to_seconds(config.max_session_hours, 3600.0), config.min_views,
                               config.min_frequency};
  auto sessions = sessionize(parsed.records, opts.timeout, opts.max_duration);
  const std::size_t formed = sessions.size();
  sessions = filter_sessions(std::move(sessions), opts.min_views);
  const std::size_t after_views = sessions.size();
  std::set<std::string> urls_before;
  for (const auto& s : sessions)
    for (const auto& v : s.views) urls_before.insert(v.url);
  auto filtered = filter_pages(std::move(sessions), opts.min_frequency);
  const auto matrix = build_matrix(filtered.sessions, filtered.catalog);

  std::ostringstream matrix_csv;
  write_matrix_csv(matrix_csv, matrix);
  std::ostringstream sessions_csv;
  write_sessions_csv(sessions_csv, filtered.sessions);

  nlohmann::ordered_json stats;
  stats["input"] = config.input.filename().string();
  stats["records"] = parsed.records.size();
  stats["skipped_rows"] = parsed.skipped.size();
  stats["sessions_formed"] = formed;
  stats["sessions_after_min_views"] = after_views;
  stats["sessions_kept"] = filtered.sessions.size();
  stats["pages_seen"] = urls_before.size();
  stats["pages_kept"] = filtered.catalog.size();
  stats["timeout_seconds"] = opts.timeout;
  stats["max_duration_seconds"] = opts.max_duration;
  stats["min_views"] = opts.min_views;
  stats["min_page_frequency"] = opts.min_frequency;

  write_artifacts(config.out, {{"matrix.csv", matrix_csv.str()},
                               {"sessions.csv", sessions_csv.str()},
                               {"preprocess.json", stats.dump(2) + "\n"}});

  for (const auto& w : parsed.skipped)
    log << fmt::format("warning: {}:{}: skipped row: {}\n", config.input.string(), w.line, w.reason);
  log << fmt::format("records: {} parsed, {} skipped\n", parsed.records.size(), parsed.skipped.size());
  log << fmt::format("sessions: {} formed, {} with >= {} views, {} after page filter\n", formed,
                     after_views, opts.min_views, filtered.sessions.size());
  log << fmt::format("pages: {} seen, {} viewed >= {} times\n", urls_before.size(),
                     filtered.catalog.size(), opts.min_frequency);
  log << fmt::format("matrix: {} x {} -> {}\n", matrix.rows(), matrix.cols(),
                     (config.out / "matrix.csv").string());
  if (matrix.rows() == 0) log << "warning: no sessions survived preprocessing; matrix is empty\n";
}

void cmd_run(const RunConfig& config, std::ostream& log) {
  config.validate();
  const fs::path matrix_path = config.input.empty() ? config.out / "matrix.csv" : config.input;
  auto matrix_in = open_input(matrix_path, "matrix");
  SessionMatrix matrix;
  try {
    matrix = read_matrix_csv(matrix_in);
  } catch (const DataError& e) {
    throw DataError(matrix_path.string() + ": " + e.what());
  }
  if (matrix.rows() == 0) throw DataError(matrix_path.string() + ": matrix has no sessions");

  std::optional<ClassLabels> labels;
  if (config.labels) {
    auto in = open_input(*config.labels, "labels file");
    try {
      labels = read_labels_csv(in, matrix);
    } catch (const DataError& e) {
      throw DataError(config.labels->string() + ": " + e.what());
    }
  }

  const KnockoutParams params{config.threshold, config.count_limit};
  const std::string alg = algorithm_name(config.algorithm);
  Artifacts artifacts;

  for (const std::size_t k : run_cluster_counts(config)) {
    const std::string tag = fmt::format("{}-k{}", alg, k);
    Clustering original;
    std::string title;
    if (config.algorithm == Algorithm::kmeans) {
      KMeansResult result;
      try {
        result = kmeans_run(matrix, k, config.seed, config.max_iter);
      } catch (const std::invalid_argument& e) {
        throw DataError(e.what());
      }
      original = result.clustering;
      artifacts.emplace_back(fmt::format("assignments-{}.json", tag),
                             kmeans_sidecar_json(result, config.seed));
      title = fmt::format("K-MEANS ({} Clusters), J = {:.4f}, {} iterations{}", k,
                          result.final_objective(), result.iterations,
                          result.converged ? "" : " (max-iter reached)");
    } else {
      const GridShape shape = config.grid && !config.sweep ? *config.grid : default_grid(k);
      const auto schedule = SomSchedule::defaults(shape.rows, shape.cols, matrix.rows());
      const auto grid = train(init_grid(shape.rows, shape.cols, matrix.cols(), config.seed), matrix,
                              schedule, config.seed + 1);
      original = som_clustering(grid, matrix).clustering;
      artifacts.emplace_back(fmt::format("som-grid-{}.json", tag),
                             som_grid_json(grid, schedule, config.seed));
      title = fmt::format("SOM ({} Clusters, {}x{} grid)", k, shape.rows, shape.cols);
    }

    const auto refined = refine(matrix, original, params);
    const ClassLabels* label_ptr = labels ? &*labels : nullptr;
    const auto oc = evaluate(matrix, original, label_ptr, config.linkage);
    const auto rc = evaluate(matrix, refined.refined, label_ptr, config.linkage);

    std::ostringstream assignments;
    write_assignments_csv(assignments, matrix, original);
    std::ostringstream comparison;
    write_comparison_csv(comparison, oc, rc);
    artifacts.emplace_back(fmt::format("assignments-{}.csv", tag), assignments.str());
    artifacts.emplace_back(fmt::format("refinement-{}.json", tag), refinement_report_json(refined.report));
    artifacts.emplace_back(fmt::format("metrics-{}.csv", tag), comparison.str());
    artifacts.emplace_back(fmt::format("metrics-{}.json", tag), metrics_json(oc, rc));

    if (config.dump_sdm) {
      for (std::size_t c = 0; c < original.k(); ++c) {
        const auto members = original.members(c);
        std::vector<std::int64_t> ids;
        for (const auto row : members) ids.push_back(matrix.row_ids()[row]);
        std::ostringstream sdm;
        write_sdm_csv(sdm, build_sdm(matrix, members), ids);
        artifacts.emplace_back(fmt::format("sdm-{}-c{}.csv", tag, c), sdm.str());
      }
    }

    log << format_comparison_table(title, oc, rc);
    log << fmt::format("knockout: removed {} of {} sessions (threshold {}, count limit {})\n\n",
                       refined.report.removed_total(), matrix.rows(), params.threshold,
                       params.count_limit);
  }

  write_artifacts(config.out, artifacts);
}

void cmd_synth(const fs::path& out, std::ostream& log) {
  const auto fixture = planted_noise_fixture();
  std::ostringstream matrix_csv;
  write_matrix_csv(matrix_csv, fixture.matrix);
  std::ostringstream labels_csv;
  write_labels_csv(labels_csv, fixture.matrix, fixture.labels);
  write_artifacts(out, {{"synthetic_log.csv", synthetic_log_csv()},
                        {"planted_matrix.csv", matrix_csv.str()},
                        {"planted_labels.csv", labels_csv.str()}});
  log << "wrote synthetic_log.csv, planted_matrix.csv, planted_labels.csv to " << out.string() << '\n';
}

int guarded(const std::function<void()>& body, std::ostream& err) {
  try {
    body();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace kra::cli
