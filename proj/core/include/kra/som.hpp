#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "kra/clustering.hpp"
#include "kra/matrix.hpp"

namespace kra {

struct GridPosition {
  std::size_t row = 0;
  std::size_t col = 0;
};

/// Rectangular lattice of neurons, numbered row-major, each with a weight
/// vector of dimension dim.
class SomGrid {
 public:
  SomGrid() = default;
  /// Throws std::invalid_argument on a zero extent or a weights size other
  /// than rows * cols * dim, or on non-finite weights.
  SomGrid(std::size_t rows, std::size_t cols, std::size_t dim, std::vector<double> weights);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t dim() const { return dim_; }
  std::size_t neuron_count() const { return rows_ * cols_; }

  GridPosition position(std::size_t neuron) const { return {neuron / cols_, neuron % cols_}; }
  double grid_distance_sq(std::size_t a, std::size_t b) const;

  std::span<const double> weights(std::size_t neuron) const {
    return {weights_.data() + neuron * dim_, dim_};
  }
  std::span<double> weights(std::size_t neuron) {
    return {weights_.data() + neuron * dim_, dim_};
  }
  const std::vector<double>& all_weights() const { return weights_; }

  friend bool operator==(const SomGrid&, const SomGrid&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> weights_;
};

/// Learning-rate and radius schedule, both decaying as exp(-t / lambda):
///   alpha(t) = alpha0 * exp(-t / lambda)
///   sigma(t) = sigma0 * exp(-t / lambda)
struct SomSchedule {
  std::size_t lambda = 1;  ///< number of presentations
  double alpha0 = 0.5;
  double sigma0 = 1.0;

  /// alpha0 = 0.5, sigma0 = max(rows, cols) / 2, lambda = 500 * samples.
  static SomSchedule defaults(std::size_t rows, std::size_t cols, std::size_t samples);

  /// Throws std::invalid_argument unless lambda >= 1, alpha0 in (0, 1] and
  /// sigma0 > 0.
  void validate() const;

  double alpha(std::size_t t) const;
  double sigma(std::size_t t) const;
};

/// Gaussian neighbourhood exp(-g^2 / (2 sigma^2)) for squared grid distance g^2.
double neighborhood(double grid_distance_sq, double sigma);

/// Weights i.i.d. uniform in [0, 1), reproducible for a given seed.
SomGrid init_grid(std::size_t rows, std::size_t cols, std::size_t dim, std::uint64_t seed);

/// Neuron nearest to `input`; ties go to the lowest row-major index. Throws
/// std::invalid_argument on a dimension mismatch.
std::size_t find_bmu(const SomGrid& grid, std::span<const double> input);
std::size_t find_bmu(const SomGrid& grid, std::span<const std::uint8_t> input);

/// One update around `bmu`: W += theta * alpha * (input - W) for every neuron.
void apply_update(SomGrid& grid, std::span<const double> input, std::size_t bmu,
                  double alpha, double sigma);

/// Snapshot handed to a training observer after each presentation.
struct SomStep {
  std::size_t t = 0;
  std::size_t row = 0;  ///< matrix row presented
  std::size_t bmu = 0;
  double alpha = 0.0;
  double sigma = 0.0;
  const SomGrid* before = nullptr;
  const SomGrid* after = nullptr;
};

using SomObserver = std::function<void(const SomStep&)>;

/// Online training for schedule.lambda presentations. Rows are presented in
/// a seeded shuffled order, reshuffled at the start of every sweep. When an
/// observer is given the grid is copied before each step so the observer can
/// compare both states.
SomGrid train(SomGrid grid, const SessionMatrix& matrix, const SomSchedule& schedule,
              std::uint64_t seed, const SomObserver& observer = {});

struct SomClustering {
  Clustering clustering;
  std::vector<std::size_t> bmu_of_row;
  /// Neuron index behind each dense cluster index.
  std::vector<std::size_t> neuron_of_cluster;
};

/// Labels each row by its BMU; neurons that win no row are dropped and the
/// rest renumbered densely in neuron order.
SomClustering som_clustering(const SomGrid& grid, const SessionMatrix& matrix);

}  // namespace kra
