#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace emoco {

struct TsneParams {
  double perplexity = 5.0;
  int iterations = 1000;
  std::uint64_t seed = 42;
  double learning_rate = 100.0;
  double exaggeration = 12.0;
  int exaggeration_iterations = 100;
  double initial_momentum = 0.5;
  double final_momentum = 0.8;
  int momentum_switch_iteration = 250;
  double init_sigma = 1e-4;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Row-conditional Gaussian affinities with per-point precision solved to a
/// target perplexity by bisection.
struct Affinities {
  std::size_t n = 0;
  std::vector<double> conditional;  // n*n, row i holds p(j|i), diagonal 0
  std::vector<double> beta;         // precision 1/(2 sigma^2) per point
  std::vector<double> entropy;      // achieved Shannon entropy per point, nats
};

struct TsneResult {
  std::vector<Point2> coords;
  double perplexity = 0.0;  // value actually used after clamping
  /// KL(P || Q) after 50 iterations and at the final iterate; zero when the
  /// optimizer was skipped (n <= 3).
  double kl_at_50 = 0.0;
  double kl_final = 0.0;
  /// |log2(effective perplexity) - log2(target)| per point.
  std::vector<double> perplexity_residuals;
};

std::vector<double> squared_distances(std::span<const std::vector<double>> vectors);

Affinities gaussian_affinities(std::span<const double> sq_distances, std::size_t n,
                               double perplexity);

/// Symmetric joint probabilities P = (P_cond + P_cond^T) / 2n.
std::vector<double> joint_probabilities(const Affinities& affinities);

/// Seeded isotropic Gaussian starting layout.
std::vector<Point2> initial_layout(std::size_t n, std::uint64_t seed, double sigma);

double kl_divergence(std::span<const double> joint_p, std::span<const Point2> layout);

/// Exact O(n^2) t-SNE into two dimensions. Output is centered at the origin.
/// n <= 3 skips optimization and returns a fixed template. Throws
/// Error{kDegenerateInput} on non-finite input or ragged dimensions.
TsneResult tsne(std::span<const std::vector<double>> vectors, const TsneParams& params = {});

/// Same, starting from an explicit layout instead of the seeded one.
TsneResult tsne(std::span<const std::vector<double>> vectors, std::vector<Point2> init,
                const TsneParams& params);

}  // namespace emoco
