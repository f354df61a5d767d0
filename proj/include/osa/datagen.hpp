#ifndef OSA_DATAGEN_HPP
#define OSA_DATAGEN_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "osa/common.hpp"
#include "osa/geometry.hpp"
#include "osa/oracle.hpp"

namespace osa {

enum class OutlierModel {
  kUniformFar,             // random directions at radius ~ scale
  kClustered,              // one far cluster of width scale/10
  kAdversarialNearSubspace // near a second random k-dim subspace
};

inline const char* to_string(OutlierModel m) {
  switch (m) {
    case OutlierModel::kUniformFar: return "uniform-far";
    case OutlierModel::kClustered: return "clustered";
    case OutlierModel::kAdversarialNearSubspace: return "adversarial-near-subspace";
  }
  return "unknown";
}

inline OutlierModel outlier_model_from_string(const std::string& s) {
  if (s == "uniform-far") return OutlierModel::kUniformFar;
  if (s == "clustered") return OutlierModel::kClustered;
  if (s == "adversarial-near-subspace") return OutlierModel::kAdversarialNearSubspace;
  throw InvalidArgument("unknown outlier model: " + s);
}

// Ground truth of a generated instance. The planted subspace approximates
// the true optimum; delta_source records whether achieved_delta was
// measured against it or against a brute-forced optimum.
struct PlantedTruth {
  Basis subspace{1};                  // planted V*, dim k
  std::vector<Index> inlier_indices;  // planted I, |I| = floor((1-alpha)n)
  double sigma_in = 0.0;
  double outlier_scale = 0.0;
  DeltaEstimate achieved_delta;
  std::string delta_source;           // "planted" or "oracle"
  std::optional<Vector> affine_origin;
};

namespace detail {

inline Vector random_unit_vector(Rng& rng, Index d) {
  Vector v(d);
  double nrm = 0.0;
  do {
    for (Index i = 0; i < d; ++i) v(i) = rng.next_gaussian();
    nrm = v.norm();
  } while (nrm < 1e-12);
  return v / nrm;
}

inline Basis random_subspace(Rng& rng, Index d, Index k) {
  Matrix m(d, k);
  for (Index j = 0; j < k; ++j) {
    for (Index i = 0; i < d; ++i) m(i, j) = rng.next_gaussian();
  }
  Basis b = orthonormalize(m);
  // A Gaussian matrix is full rank except on a null set; retry on the
  // astronomically unlikely degenerate draw.
  while (b.dim() < k) {
    for (Index j = 0; j < k; ++j) {
      for (Index i = 0; i < d; ++i) m(i, j) = rng.next_gaussian();
    }
    b = orthonormalize(m);
  }
  return b;
}

}  // namespace detail

// Builds an instance with a planted k-dim subspace: floor((1-alpha)n)
// inliers on it (plus isotropic off-subspace noise sigma_in) and the rest
// placed by the outlier model at the given scale. Row order is shuffled so
// position does not leak the inlier/outlier split.
inline std::pair<PointSet, PlantedTruth> gen_planted(Index n, Index d, Index k,
                                                     double alpha, double sigma_in,
                                                     OutlierModel model, Seed seed,
                                                     double outlier_scale = 3.0) {
  if (n < 1 || d < 1) throw InvalidArgument("gen_planted: need n >= 1, d >= 1");
  if (k < 1 || k >= d) throw InvalidArgument("gen_planted: need 1 <= k < d");
  if (alpha < 0.0 || alpha >= 1.0) throw InvalidArgument("gen_planted: alpha must be in [0, 1)");
  if (sigma_in < 0.0 || outlier_scale < 0.0) {
    throw InvalidArgument("gen_planted: scales must be non-negative");
  }
  const Index n_in = static_cast<Index>(std::floor((1.0 - alpha) * static_cast<double>(n)));
  if (n_in < 1) throw InvalidArgument("gen_planted: zero inliers");

  Rng rng_subspace(derive_seed(seed, 1));
  Rng rng_points(derive_seed(seed, 2));
  Rng rng_shuffle(derive_seed(seed, 3));

  const Basis v_star = detail::random_subspace(rng_subspace, d, k);
  const Matrix proj_off =
      Matrix::Identity(d, d) - v_star.vectors() * v_star.vectors().transpose();

  Matrix pts(n, d);
  for (Index i = 0; i < n_in; ++i) {
    Vector coeff(k);
    for (Index j = 0; j < k; ++j) coeff(j) = rng_points.next_gaussian();
    Vector noise(d);
    for (Index j = 0; j < d; ++j) noise(j) = rng_points.next_gaussian();
    pts.row(i) = (v_star.vectors() * coeff + sigma_in * (proj_off * noise)).transpose();
  }

  switch (model) {
    case OutlierModel::kUniformFar:
      for (Index i = n_in; i < n; ++i) {
        const Vector u = detail::random_unit_vector(rng_points, d);
        const double radius = outlier_scale * (0.5 + rng_points.next_double());
        pts.row(i) = (radius * u).transpose();
      }
      break;
    case OutlierModel::kClustered: {
      const Vector center = outlier_scale * detail::random_unit_vector(rng_points, d);
      for (Index i = n_in; i < n; ++i) {
        Vector z(d);
        for (Index j = 0; j < d; ++j) z(j) = rng_points.next_gaussian();
        pts.row(i) = (center + (outlier_scale / 10.0) * z).transpose();
      }
      break;
    }
    case OutlierModel::kAdversarialNearSubspace: {
      const Basis decoy = detail::random_subspace(rng_points, d, k);
      const Matrix decoy_off =
          Matrix::Identity(d, d) - decoy.vectors() * decoy.vectors().transpose();
      for (Index i = n_in; i < n; ++i) {
        Vector coeff(k);
        for (Index j = 0; j < k; ++j) coeff(j) = rng_points.next_gaussian();
        Vector noise(d);
        for (Index j = 0; j < d; ++j) noise(j) = rng_points.next_gaussian();
        pts.row(i) = (outlier_scale * (decoy.vectors() * coeff) +
                      sigma_in * (decoy_off * noise))
                         .transpose();
      }
      break;
    }
  }

  // Fisher-Yates over row positions; remember where the inliers land.
  std::vector<Index> position(static_cast<std::size_t>(n));
  std::iota(position.begin(), position.end(), Index(0));
  for (Index i = n - 1; i > 0; --i) {
    const auto j = static_cast<Index>(rng_shuffle.next_index(static_cast<std::size_t>(i) + 1));
    std::swap(position[static_cast<std::size_t>(i)], position[static_cast<std::size_t>(j)]);
  }
  Matrix shuffled(n, d);
  std::vector<Index> inliers;
  inliers.reserve(static_cast<std::size_t>(n_in));
  for (Index row = 0; row < n; ++row) {
    const Index src = position[static_cast<std::size_t>(row)];
    shuffled.row(row) = pts.row(src);
    if (src < n_in) inliers.push_back(row);
  }
  std::sort(inliers.begin(), inliers.end());

  PointSet points(std::move(shuffled));
  PlantedTruth truth;
  truth.subspace = v_star;
  truth.inlier_indices = std::move(inliers);
  truth.sigma_in = sigma_in;
  truth.outlier_scale = outlier_scale;

  const Index n_inlier_count = static_cast<Index>(truth.inlier_indices.size());
  const double subsets =
      detail::count_combinations_capped(n, n_inlier_count, kOracleSubsetBudget);
  if (subsets <= kOracleSubsetBudget && n <= 24) {
    truth.achieved_delta = delta_of_instance(points, k, alpha, 2.0);
    truth.delta_source = "oracle";
  } else {
    truth.achieved_delta = delta_of_instance(points, k, alpha, 2.0, &truth.subspace);
    truth.delta_source = "planted";
  }
  return {std::move(points), std::move(truth)};
}

// Affine variant: the same construction shifted by a random origin of the
// requested norm. origin_scale = 0 reproduces gen_planted bit for bit.
inline std::pair<PointSet, PlantedTruth> gen_affine_planted(
    Index n, Index d, Index k, double alpha, double sigma_in, OutlierModel model,
    Seed seed, double origin_scale, double outlier_scale = 3.0) {
  auto [base, truth] = gen_planted(n, d, k, alpha, sigma_in, model, seed, outlier_scale);
  Rng rng_origin(derive_seed(seed, 4));
  Vector origin = Vector::Zero(d);
  if (origin_scale > 0.0) {
    origin = origin_scale * detail::random_unit_vector(rng_origin, d);
  }
  Matrix shifted = base.data();
  shifted.rowwise() += origin.transpose();
  PointSet points(std::move(shifted));
  truth.affine_origin = origin;

  // achieved delta re-measured against the planted affine flat.
  const AffinePlacement flat(origin, truth.subspace);
  Matrix recentered = points.data();
  recentered.rowwise() -= origin.transpose();
  const PointSet recentered_points(std::move(recentered));
  const Vector r = residual_norms(recentered_points, truth.subspace);
  double total = 0.0;
  for (Index i = 0; i < r.size(); ++i) total += r(i) * r(i);
  const auto near = detail::nearest_by_residual(r, alpha);
  double inlier_cost = 0.0;
  for (Index i : near) inlier_cost += r(i) * r(i);
  DeltaEstimate est;
  if (total <= kDegenerateWeightTotal || inlier_cost <= 1e-20 * total) {
    est.exact_fit = true;
  } else {
    est.value = inlier_cost / total;
  }
  truth.achieved_delta = est;
  truth.delta_source = "planted";
  return {std::move(points), std::move(truth)};
}

}  // namespace osa

#endif  // OSA_DATAGEN_HPP
