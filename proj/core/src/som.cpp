#include "kra/som.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "kra/distance.hpp"
#include "kra/random.hpp"

namespace kra {

SomGrid::SomGrid(std::size_t rows, std::size_t cols, std::size_t dim, std::vector<double> weights)
    : rows_(rows), cols_(cols), dim_(dim), weights_(std::move(weights)) {
  if (rows_ == 0 || cols_ == 0 || dim_ == 0)
    throw std::invalid_argument("SomGrid: rows, cols and dim must be >= 1");
  if (weights_.size() != rows_ * cols_ * dim_)
    throw std::invalid_argument("SomGrid: weight count must be rows * cols * dim");
  if (!std::ranges::all_of(weights_, [](double w) { return std::isfinite(w); }))
    throw std::invalid_argument("SomGrid: weights must be finite");
}

double SomGrid::grid_distance_sq(std::size_t a, std::size_t b) const {
  const auto pa = position(a);
  const auto pb = position(b);
  const double dr = static_cast<double>(pa.row) - static_cast<double>(pb.row);
  const double dc = static_cast<double>(pa.col) - static_cast<double>(pb.col);
  return dr * dr + dc * dc;
}

SomSchedule SomSchedule::defaults(std::size_t rows, std::size_t cols, std::size_t samples) {
  SomSchedule s;
  s.lambda = std::max<std::size_t>(1, 500 * samples);
  s.alpha0 = 0.5;
  s.sigma0 = static_cast<double>(std::max(rows, cols)) / 2.0;
  return s;
}

void SomSchedule::validate() const {
  if (lambda < 1) throw std::invalid_argument("SomSchedule: lambda must be >= 1");
  if (!(alpha0 > 0.0 && alpha0 <= 1.0)) throw std::invalid_argument("SomSchedule: alpha0 must be in (0, 1]");
  if (!(sigma0 > 0.0)) throw std::invalid_argument("SomSchedule: sigma0 must be > 0");
}

double SomSchedule::alpha(std::size_t t) const {
  return alpha0 * std::exp(-static_cast<double>(t) / static_cast<double>(lambda));
}

double SomSchedule::sigma(std::size_t t) const {
  return sigma0 * std::exp(-static_cast<double>(t) / static_cast<double>(lambda));
}

double neighborhood(double grid_distance_sq, double sigma) {
  return std::exp(-grid_distance_sq / (2.0 * sigma * sigma));
}

SomGrid init_grid(std::size_t rows, std::size_t cols, std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> weights(rows * cols * dim);
  for (auto& w : weights) w = uniform_unit(rng);
  return SomGrid(rows, cols, dim, std::move(weights));
}

namespace {

template <typename T>
std::size_t nearest_neuron(const SomGrid& grid, std::span<const T> input) {
  if (input.size() != grid.dim()) {
    throw std::invalid_argument("find_bmu: input dimension " + std::to_string(input.size()) +
                                " != grid dimension " + std::to_string(grid.dim()));
  }
  std::size_t best = 0;
  double best_d = squared_euclidean(input, grid.weights(0));
  for (std::size_t v = 1; v < grid.neuron_count(); ++v) {
    const double d = squared_euclidean(input, grid.weights(v));
    if (d < best_d) {
      best_d = d;
      best = v;
    }
  }
  return best;
}

}  // namespace

std::size_t find_bmu(const SomGrid& grid, std::span<const double> input) {
  return nearest_neuron(grid, input);
}

std::size_t find_bmu(const SomGrid& grid, std::span<const std::uint8_t> input) {
  return nearest_neuron(grid, input);
}

void apply_update(SomGrid& grid, std::span<const double> input, std::size_t bmu, double alpha,
                  double sigma) {
  if (input.size() != grid.dim()) throw std::invalid_argument("apply_update: dimension mismatch");
  for (std::size_t v = 0; v < grid.neuron_count(); ++v) {
    const double rate = neighborhood(grid.grid_distance_sq(v, bmu), sigma) * alpha;
    auto w = grid.weights(v);
    for (std::size_t c = 0; c < w.size(); ++c) w[c] += rate * (input[c] - w[c]);
  }
}

SomGrid train(SomGrid grid, const SessionMatrix& matrix, const SomSchedule& schedule,
              std::uint64_t seed, const SomObserver& observer) {
  schedule.validate();
  if (matrix.rows() == 0) throw std::invalid_argument("train: matrix has no rows");
  if (matrix.cols() != grid.dim()) throw std::invalid_argument("train: dimension mismatch");

  Rng rng(seed);
  std::vector<std::size_t> order(matrix.rows());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> input(matrix.cols());

  for (std::size_t t = 0; t < schedule.lambda; ++t) {
    const std::size_t pos = t % order.size();
    if (pos == 0) shuffle(std::span(order), rng);
    const std::size_t row = order[pos];
    const auto cells = matrix.row(row);
    std::copy(cells.begin(), cells.end(), input.begin());

    const std::size_t bmu = find_bmu(grid, std::span<const double>(input));
    const double alpha = schedule.alpha(t);
    const double sigma = schedule.sigma(t);
    if (observer) {
      const SomGrid before = grid;
      apply_update(grid, input, bmu, alpha, sigma);
      observer(SomStep{t, row, bmu, alpha, sigma, &before, &grid});
    } else {
      apply_update(grid, input, bmu, alpha, sigma);
    }
  }
  return grid;
}

SomClustering som_clustering(const SomGrid& grid, const SessionMatrix& matrix) {
  SomClustering out;
  out.bmu_of_row.reserve(matrix.rows());
  std::vector<bool> used(grid.neuron_count(), false);
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    const std::size_t bmu = find_bmu(grid, matrix.row(i));
    out.bmu_of_row.push_back(bmu);
    used[bmu] = true;
  }

  std::vector<std::size_t> dense(grid.neuron_count(), Clustering::kUnassigned);
  for (std::size_t v = 0; v < grid.neuron_count(); ++v) {
    if (!used[v]) continue;
    dense[v] = out.neuron_of_cluster.size();
    out.neuron_of_cluster.push_back(v);
  }

  std::vector<std::size_t> labels;
  labels.reserve(matrix.rows());
  for (const std::size_t bmu : out.bmu_of_row) labels.push_back(dense[bmu]);
  out.clustering = Clustering(out.neuron_of_cluster.size(), std::move(labels), Method::som);
  return out;
}

}  // namespace kra
