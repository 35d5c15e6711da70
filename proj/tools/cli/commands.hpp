#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kra/metrics.hpp"

namespace kra::cli {

/// Bad flags or configuration; exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

struct GridShape {
  std::size_t rows = 1;
  std::size_t cols = 1;
};

/// Parses "ROWSxCOLS", e.g. "5x3". Throws UsageError.
GridShape parse_grid(const std::string& text);

/// SOM grid for a target cluster count when no --grid is given:
/// 5 x (k / 5) when k is a multiple of 5, otherwise 1 x k.
GridShape default_grid(std::size_t k);

enum class Algorithm { kmeans, som };

struct RunConfig {
  std::filesystem::path input;
  std::filesystem::path out = "out";
  Algorithm algorithm = Algorithm::kmeans;
  std::size_t k = 10;
  std::optional<GridShape> grid;
  std::uint64_t seed = 42;
  double threshold = 0.3;
  std::size_t count_limit = 2;
  double timeout_min = 30.0;
  double max_session_hours = 2.0;
  std::size_t min_views = 3;
  std::size_t min_frequency = 6;
  std::optional<std::filesystem::path> labels;
  bool dump_sdm = false;
  bool sweep = false;
  std::size_t max_iter = 100;
  Linkage linkage = Linkage::average;

  /// Throws UsageError when a value is outside the range its consumer accepts.
  void validate() const;
};

/// The k values (or grid shapes) a run covers: {k} or the 10/15/20 sweep.
std::vector<std::size_t> run_cluster_counts(const RunConfig& config);

/// log -> sessions -> filtered sessions -> pages -> matrix. Writes
/// matrix.csv, sessions.csv and preprocess.json under config.out and prints
/// survival statistics to `log`. Nothing is written if any step fails.
void cmd_preprocess(const RunConfig& config, std::ostream& log);

/// Clusters the matrix, refines with knockout, scores both and writes
/// assignments-<alg>-k<k>.csv, refinement-<alg>-k<k>.json,
/// metrics-<alg>-k<k>.csv and metrics-<alg>-k<k>.json (plus the k-means
/// sidecar or SOM grid dump) for every k of the run.
void cmd_run(const RunConfig& config, std::ostream& log);

/// Writes the bundled fixtures (synthetic log, planted matrix and labels).
void cmd_synth(const std::filesystem::path& out, std::ostream& log);

/// Runs `body` and maps exceptions to exit codes, printing the message to `err`.
int guarded(const std::function<void()>& body, std::ostream& err);

}  // namespace kra::cli
