#ifndef OSA_AFFINE_HPP
#define OSA_AFFINE_HPP

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "osa/common.hpp"
#include "osa/geometry.hpp"
#include "osa/solver.hpp"

namespace osa {

// 2^24 bipartitions is the largest enumeration we are willing to run.
inline constexpr Index kMaxAffineSampleSize = 24;

struct AffineConfig {
  double eta = 0.5;        // mean-accuracy parameter in (0, 1)
  Index sample_size = 0;   // 0 -> ceil(2/eta^2 * 1/(1-alpha))
  SolverConfig inner;      // p is forced to 2
  int jobs = 1;            // partition candidates evaluated concurrently

  AffineConfig resolved() const {
    AffineConfig c = *this;
    if (c.eta <= 0.0 || c.eta >= 1.0) throw InvalidArgument("AffineConfig: eta must be in (0, 1)");
    c.inner.p = 2.0;
    c.inner = c.inner.resolved();
    if (c.sample_size <= 0) {
      c.sample_size = static_cast<Index>(
          std::ceil(2.0 / (c.eta * c.eta) / (1.0 - c.inner.alpha)));
    }
    if (c.sample_size < 1) c.sample_size = 1;
    if (c.jobs < 1) c.jobs = 1;
    return c;
  }
};

struct AffineReport {
  SolveReport report;            // costs are squared residuals to the placement
  AffinePlacement placement{Vector::Zero(1), Basis(1)};
  std::size_t partitions_evaluated = 0;
};

inline Vector affine_residual_norms(const PointSet& points, const AffinePlacement& flat) {
  if (points.dim() != flat.origin.size()) {
    throw DimensionMismatch("affine_residual_norms: dimension mismatch");
  }
  Matrix centered = points.data();
  centered.rowwise() -= flat.origin.transpose();
  if (flat.basis.dim() == 0) return centered.rowwise().norm();
  const Matrix coords = centered * flat.basis.vectors();
  return (centered - coords * flat.basis.vectors().transpose()).rowwise().norm();
}

inline double trimmed_affine_cost(const PointSet& points, const AffinePlacement& flat,
                                  double alpha) {
  const Vector r = affine_residual_norms(points, flat);
  const auto inliers = detail::nearest_by_residual(r, alpha);
  double cost = 0.0;
  for (Index i : inliers) cost += r(i) * r(i);
  return cost;
}

// Both sides of the parallel-axis decomposition over the index set I:
// sum d(x_i, V)^2  vs  sum d(x_i, V_mu)^2 + |I| d(V, V_mu)^2, where V_mu is
// the parallel translate of V through the mean of {x_i : i in I}.
inline std::pair<double, double> parallel_axis_check(const PointSet& points,
                                                     const AffinePlacement& flat,
                                                     const std::vector<Index>& index_set) {
  if (index_set.empty()) throw InvalidArgument("parallel_axis_check: empty index set");
  Vector mean = Vector::Zero(points.dim());
  for (Index i : index_set) mean += points.point(i);
  mean /= static_cast<double>(index_set.size());

  const Vector r_v = affine_residual_norms(points, flat);
  const AffinePlacement through_mean(mean, flat.basis);
  const Vector r_mu = affine_residual_norms(points, through_mean);
  // Distance between the two parallel flats: component of the shift
  // orthogonal to the direction space.
  const double flat_dist = residual_norm(flat.origin - mean, flat.basis);

  double lhs = 0.0, rhs = 0.0;
  for (Index i : index_set) {
    lhs += r_v(i) * r_v(i);
    rhs += r_mu(i) * r_mu(i);
  }
  rhs += static_cast<double>(index_set.size()) * flat_dist * flat_dist;
  return {lhs, rhs};
}

struct SampleMeanTrial {
  double deviation = 0.0;  // ||mu_S - mu_I||
  double bound = 0.0;      // eta * D with eta = sqrt(2/m)
};

// One uniform i.i.d. mean-estimation trial over the given points.
inline SampleMeanTrial sample_mean_trial(const PointSet& points, Index m, Seed seed) {
  if (m < 1) throw InvalidArgument("sample_mean_trial: sample size must be >= 1");
  const Vector mu_all = points.data().colwise().mean();
  Rng rng(seed);
  Vector mu_sample = Vector::Zero(points.dim());
  for (Index j = 0; j < m; ++j) {
    const auto idx = static_cast<Index>(rng.next_index(static_cast<std::size_t>(points.size())));
    mu_sample += points.point(idx);
  }
  mu_sample /= static_cast<double>(m);

  double diameter = 0.0;
  for (Index i = 0; i < points.size(); ++i) {
    for (Index j = i + 1; j < points.size(); ++j) {
      diameter = std::max(diameter, (points.point(i) - points.point(j)).norm());
    }
  }
  SampleMeanTrial trial;
  trial.deviation = (mu_sample - mu_all).norm();
  trial.bound = std::sqrt(2.0 / static_cast<double>(m)) * diameter;
  return trial;
}

// Affine subspace approximation with outliers: draw a uniform sample,
// enumerate all 2^|T| - 1 nonempty parts, shift the data through each
// part's mean, solve the linear problem, and keep the cheapest placement.
inline AffineReport affine_solve(const PointSet& points, const AffineConfig& config) {
  const auto t_start = std::chrono::steady_clock::now();
  const AffineConfig cfg = config.resolved();
  if (cfg.sample_size > kMaxAffineSampleSize) {
    throw BudgetExceeded(
        "affine_solve: sample size " + std::to_string(cfg.sample_size) +
        " exceeds " + std::to_string(kMaxAffineSampleSize) +
        " (2^size partitions); increase eta to shrink the sample");
  }

  Rng rng(derive_seed(cfg.inner.seed, 7, 0));
  std::vector<Index> sample(static_cast<std::size_t>(cfg.sample_size));
  for (auto& idx : sample) {
    idx = static_cast<Index>(rng.next_index(static_cast<std::size_t>(points.size())));
  }

  auto part_mean = [&](std::size_t mask) {
    Vector mean = Vector::Zero(points.dim());
    Index count = 0;
    for (Index b = 0; b < cfg.sample_size; ++b) {
      if (mask & (std::size_t(1) << b)) {
        mean += points.point(sample[static_cast<std::size_t>(b)]);
        ++count;
      }
    }
    return Vector(mean / static_cast<double>(count));
  };

  auto solve_shifted = [&](std::size_t mask, const Vector& mean) {
    Matrix shifted = points.data();
    shifted.rowwise() -= mean.transpose();
    const PointSet shifted_points(std::move(shifted));
    SolverConfig inner = cfg.inner;
    inner.seed = derive_seed(cfg.inner.seed, 8, mask);
    return solve_outliers(shifted_points, inner);
  };

  // Sweep keeps costs only; the winning mask's solve is recomputed after,
  // so memory stays flat even at the enumeration cap.
  const std::size_t num_masks = (std::size_t(1) << cfg.sample_size);
  std::vector<double> costs(num_masks, std::numeric_limits<double>::infinity());
  parallel_for(num_masks - 1, cfg.jobs, [&](std::size_t j) {
    const std::size_t mask = j + 1;  // skip the empty part
    const Vector mean = part_mean(mask);
    const SolveReport rep = solve_shifted(mask, mean);
    costs[mask] =
        trimmed_affine_cost(points, AffinePlacement(mean, rep.subspace), cfg.inner.alpha);
  });

  std::size_t best_mask = 1;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t mask = 1; mask < num_masks; ++mask) {
    if (costs[mask] < best_cost) {
      best_cost = costs[mask];
      best_mask = mask;
    }
  }

  const Vector best_mean = part_mean(best_mask);
  SolveReport best_report = solve_shifted(best_mask, best_mean);
  AffineReport out;
  out.partitions_evaluated = num_masks - 1;
  out.placement = AffinePlacement(best_mean, best_report.subspace);
  out.report = std::move(best_report);
  out.report.trimmed_cost_k = best_cost;
  // Bi-criteria cost: the full coreset span placed at the winning origin.
  SpanBuilder span(points.dim());
  for (Index idx : out.report.trace.all) {
    span.append(points.point(idx) - out.placement.origin);
  }
  out.report.trimmed_cost_span = trimmed_affine_cost(
      points, AffinePlacement(out.placement.origin, span.basis()), cfg.inner.alpha);
  const Vector r = affine_residual_norms(points, out.placement);
  out.report.inlier_indices = detail::nearest_by_residual(r, cfg.inner.alpha);
  out.report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start)
          .count();
  return out;
}

}  // namespace osa

#endif  // OSA_AFFINE_HPP
