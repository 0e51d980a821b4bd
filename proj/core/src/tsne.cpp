#include "emoco/tsne.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "emoco/errors.hpp"

namespace emoco {

namespace {

// Sums in ascending order so results do not depend on input labeling.
double canonical_sum(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  double total = 0.0;
  for (double t : terms) total += t;
  return total;
}

struct RowEntropy {
  double entropy;
  double sum;
};

// Entropy of the kernel row exp(-beta * (d - d_min)); `sorted` ascending.
RowEntropy row_entropy(const std::vector<double>& sorted, double beta,
                       std::vector<double>& scratch_p, std::vector<double>& scratch_dp) {
  const double d_min = sorted.front();
  scratch_p.clear();
  scratch_dp.clear();
  for (double d : sorted) {
    double p = std::exp(-beta * (d - d_min));
    scratch_p.push_back(p);
    scratch_dp.push_back((d - d_min) * p);
  }
  double sum = canonical_sum(scratch_p);
  double weighted = canonical_sum(scratch_dp);
  return {std::log(sum) + beta * weighted / sum, sum};
}

std::vector<Point2> template_layout(std::size_t n) {
  switch (n) {
    case 0: return {};
    case 1: return {{0.0, 0.0}};
    case 2: return {{-0.5, 0.0}, {0.5, 0.0}};
    default: {
      const double r = 1.0 / std::sqrt(3.0);
      const double pi = std::acos(-1.0);
      std::vector<Point2> pts;
      for (int k = 0; k < 3; ++k) {
        double angle = pi / 2.0 + 2.0 * pi * k / 3.0;
        pts.push_back({r * std::cos(angle), r * std::sin(angle)});
      }
      // Snap the apex x to an exact zero.
      pts[0].x = 0.0;
      return pts;
    }
  }
}

void center(std::vector<Point2>& y) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& p : y) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  const double n = static_cast<double>(y.size());
  const double mx = canonical_sum(xs) / n;
  const double my = canonical_sum(ys) / n;
  for (auto& p : y) {
    p.x -= mx;
    p.y -= my;
  }
}

void check_input(std::span<const std::vector<double>> vectors) {
  if (vectors.empty()) return;
  const std::size_t dim = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != dim) throw Error(ErrorCode::kDegenerateInput, "vectors have mixed dimensions");
    for (double x : v) {
      if (!std::isfinite(x)) throw Error(ErrorCode::kDegenerateInput, "non-finite input value");
    }
  }
}

}  // namespace

std::vector<double> squared_distances(std::span<const std::vector<double>> vectors) {
  const std::size_t n = vectors.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < vectors[i].size(); ++k) {
        double diff = vectors[i][k] - vectors[j][k];
        s += diff * diff;
      }
      d[i * n + j] = s;
      d[j * n + i] = s;
    }
  }
  return d;
}

Affinities gaussian_affinities(std::span<const double> sq_distances, std::size_t n,
                               double perplexity) {
  Affinities a;
  a.n = n;
  a.conditional.assign(n * n, 0.0);
  a.beta.assign(n, 1.0);
  a.entropy.assign(n, 0.0);
  if (n < 2) return a;

  const double target = std::log(perplexity);
  constexpr double kTolerance = 1e-12;
  constexpr int kMaxSteps = 500;

  std::vector<double> row;
  std::vector<double> scratch_p;
  std::vector<double> scratch_dp;
  for (std::size_t i = 0; i < n; ++i) {
    row.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) row.push_back(sq_distances[i * n + j]);
    }
    std::sort(row.begin(), row.end());

    double beta = 1.0;
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    RowEntropy h{};
    for (int step = 0; step < kMaxSteps; ++step) {
      h = row_entropy(row, beta, scratch_p, scratch_dp);
      const double diff = h.entropy - target;
      if (std::abs(diff) < kTolerance) break;
      if (diff > 0.0) {
        lo = beta;
        beta = std::isinf(hi) ? beta * 2.0 : 0.5 * (beta + hi);
      } else {
        hi = beta;
        beta = 0.5 * (beta + lo);
      }
    }
    a.beta[i] = beta;
    a.entropy[i] = h.entropy;

    const double d_min = row.front();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      a.conditional[i * n + j] = std::exp(-beta * (sq_distances[i * n + j] - d_min)) / h.sum;
    }
  }
  return a;
}

std::vector<double> joint_probabilities(const Affinities& affinities) {
  const std::size_t n = affinities.n;
  std::vector<double> p(n * n, 0.0);
  const double scale = 1.0 / (2.0 * static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) {
        p[i * n + j] = (affinities.conditional[i * n + j] + affinities.conditional[j * n + i]) * scale;
      }
    }
  }
  return p;
}

std::vector<Point2> initial_layout(std::size_t n, std::uint64_t seed, double sigma) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, sigma);
  std::vector<Point2> y(n);
  for (auto& p : y) {
    p.x = gauss(rng);
    p.y = gauss(rng);
  }
  return y;
}

double kl_divergence(std::span<const double> joint_p, std::span<const Point2> layout) {
  const std::size_t n = layout.size();
  std::vector<double> num(n * n, 0.0);
  std::vector<double> row_sums(n);
  std::vector<double> row;
  for (std::size_t i = 0; i < n; ++i) {
    row.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double dx = layout[i].x - layout[j].x;
      double dy = layout[i].y - layout[j].y;
      num[i * n + j] = 1.0 / (1.0 + dx * dx + dy * dy);
      row.push_back(num[i * n + j]);
    }
    row_sums[i] = canonical_sum(row);
  }
  const double z = canonical_sum(row_sums);
  std::vector<double> terms;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double p = joint_p[i * n + j];
      if (i == j || p <= 0.0) continue;
      double q = std::max(num[i * n + j] / z, std::numeric_limits<double>::min());
      terms.push_back(p * std::log(p / q));
    }
  }
  return canonical_sum(terms);
}

TsneResult tsne(std::span<const std::vector<double>> vectors, const TsneParams& params) {
  return tsne(vectors, initial_layout(vectors.size(), params.seed, params.init_sigma), params);
}

TsneResult tsne(std::span<const std::vector<double>> vectors, std::vector<Point2> init,
                const TsneParams& params) {
  check_input(vectors);
  const std::size_t n = vectors.size();
  TsneResult result;
  result.perplexity = params.perplexity;
  if (n <= 3) {
    result.coords = template_layout(n);
    return result;
  }
  if (init.size() != n) throw Error(ErrorCode::kUsage, "initial layout size mismatch");
  if (!(params.perplexity > 0.0)) throw Error(ErrorCode::kUsage, "perplexity must be positive");
  if (params.perplexity >= static_cast<double>(n)) {
    result.perplexity = std::max(1.0, static_cast<double>(n - 1) / 3.0);
  }

  const auto dist = squared_distances(vectors);
  const auto affinities = gaussian_affinities(dist, n, result.perplexity);
  const double log2_target = std::log2(result.perplexity);
  for (double h : affinities.entropy) {
    result.perplexity_residuals.push_back(std::abs(h / std::log(2.0) - log2_target));
  }
  const auto p = joint_probabilities(affinities);

  std::vector<Point2> y = std::move(init);
  std::vector<Point2> velocity(n);
  std::vector<Point2> gains(n, {1.0, 1.0});
  std::vector<Point2> grad(n);
  std::vector<double> num(n * n, 0.0);
  std::vector<double> row_sums(n);
  std::vector<double> row;
  std::vector<double> gx;
  std::vector<double> gy;

  auto update_gain = [](double gain, double g, double v) {
    return std::max(0.01, (g > 0.0) != (v > 0.0) ? gain + 0.2 : gain * 0.8);
  };

  for (int iter = 0; iter < params.iterations; ++iter) {
    const double exaggeration = iter < params.exaggeration_iterations ? params.exaggeration : 1.0;
    const double momentum = iter < params.momentum_switch_iteration ? params.initial_momentum
                                                                     : params.final_momentum;

    for (std::size_t i = 0; i < n; ++i) {
      row.clear();
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        double dx = y[i].x - y[j].x;
        double dy = y[i].y - y[j].y;
        num[i * n + j] = 1.0 / (1.0 + dx * dx + dy * dy);
        row.push_back(num[i * n + j]);
      }
      row_sums[i] = canonical_sum(row);
    }
    const double z = canonical_sum(row_sums);

    for (std::size_t i = 0; i < n; ++i) {
      gx.clear();
      gy.clear();
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const double w = num[i * n + j];
        const double mult = (exaggeration * p[i * n + j] - w / z) * w;
        gx.push_back(mult * (y[i].x - y[j].x));
        gy.push_back(mult * (y[i].y - y[j].y));
      }
      grad[i] = {4.0 * canonical_sum(gx), 4.0 * canonical_sum(gy)};
    }

    for (std::size_t i = 0; i < n; ++i) {
      gains[i].x = update_gain(gains[i].x, grad[i].x, velocity[i].x);
      gains[i].y = update_gain(gains[i].y, grad[i].y, velocity[i].y);
      velocity[i].x = momentum * velocity[i].x - params.learning_rate * gains[i].x * grad[i].x;
      velocity[i].y = momentum * velocity[i].y - params.learning_rate * gains[i].y * grad[i].y;
      y[i].x += velocity[i].x;
      y[i].y += velocity[i].y;
    }
    center(y);

    if (iter + 1 == 50) result.kl_at_50 = kl_divergence(p, y);
  }

  center(y);
  result.kl_final = kl_divergence(p, y);
  if (params.iterations < 50) result.kl_at_50 = result.kl_final;
  result.coords = std::move(y);
  return result;
}

}  // namespace emoco
