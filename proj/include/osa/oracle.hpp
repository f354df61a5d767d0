#ifndef OSA_ORACLE_HPP
#define OSA_ORACLE_HPP

#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "osa/common.hpp"
#include "osa/geometry.hpp"
#include "osa/solver.hpp"

namespace osa {

// Exhaustive-enumeration ceiling: refuse instances with more inlier
// subsets than this rather than run for hours.
inline constexpr double kOracleSubsetBudget = 1e6;

struct OracleResult {
  double best_cost = 0.0;
  std::vector<Index> best_inliers;
  Basis best_subspace{1};
  std::size_t subsets_evaluated = 0;
  bool upper_bound_only = false;  // set for p != 2 (per-subset solve is approximate)
};

// delta estimate of an instance; exact_fit means the reference subspace has
// (numerically) zero inlier error and no positive delta describes it.
struct DeltaEstimate {
  bool exact_fit = false;
  double value = 0.0;
};

namespace detail {

inline double count_combinations_capped(Index n, Index m, double cap) {
  double count = 1.0;
  for (Index i = 1; i <= m; ++i) {
    count *= static_cast<double>(n - m + i) / static_cast<double>(i);
    if (count > cap) return cap + 1.0;
  }
  return count;
}

inline bool next_combination(std::vector<Index>& c, Index n) {
  const Index m = static_cast<Index>(c.size());
  Index i = m - 1;
  while (i >= 0 && c[static_cast<std::size_t>(i)] == n - m + i) --i;
  if (i < 0) return false;
  ++c[static_cast<std::size_t>(i)];
  for (Index j = i + 1; j < m; ++j) {
    c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
  return true;
}

inline Matrix gather_rows(const PointSet& points, const std::vector<Index>& rows) {
  Matrix sub(static_cast<Index>(rows.size()), points.dim());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    sub.row(static_cast<Index>(i)) = points.data().row(rows[i]);
  }
  return sub;
}

// Exact p=2 cost of the best k-dim subspace for a fixed point subset:
// squared Frobenius mass minus the top-k squared singular values.
inline double subset_cost_p2(const Matrix& sub, Index k) {
  Eigen::BDCSVD<Matrix> svd(sub);
  const auto& sv = svd.singularValues();
  double cost = sub.squaredNorm();
  for (Index i = 0; i < std::min(k, sv.size()); ++i) cost -= sv(i) * sv(i);
  return std::max(cost, 0.0);
}

// Iteratively reweighted p=2 surrogate for the per-subset l_p objective.
// Returns (cost, basis); an upper bound on the subset's true optimum.
inline std::pair<double, Basis> subset_cost_p_general(const Matrix& sub, Index k,
                                                      double p, Index iters = 20) {
  const PointSet subset(sub);
  const auto loss = pth_power_adapter(p);
  Vector w = Vector::Ones(sub.rows());
  double best_cost = std::numeric_limits<double>::infinity();
  Basis best(sub.cols());
  for (Index it = 0; it < iters; ++it) {
    const Basis v = top_k_subspace(subset, w, k);
    const Vector r = residual_norms(subset, v);
    double cost = 0.0;
    for (Index i = 0; i < r.size(); ++i) cost += std::pow(r(i), p);
    if (cost < best_cost) {
      best_cost = cost;
      best = v;
    }
    for (Index i = 0; i < r.size(); ++i) w(i) = loss.irls_weight(r(i));
  }
  return {best_cost, best};
}

}  // namespace detail

// Brute force over every inlier subset of size floor((1-alpha)n); exact for
// p=2 because the per-subset optimum is the top-k singular subspace.
inline OracleResult exact_optimum_p2(const PointSet& points, Index k, double alpha) {
  if (k < 1 || k > points.dim()) throw InvalidArgument("exact_optimum_p2: k out of range");
  const Index n = points.size();
  const Index m = static_cast<Index>(std::floor((1.0 - alpha) * static_cast<double>(n)));
  if (m < 1) throw InvalidArgument("exact_optimum_p2: zero inliers");
  if (detail::count_combinations_capped(n, m, kOracleSubsetBudget) > kOracleSubsetBudget) {
    throw BudgetExceeded("exact_optimum_p2: C(n, (1-alpha)n) exceeds subset budget of 1e6");
  }

  std::vector<Index> subset(static_cast<std::size_t>(m));
  std::iota(subset.begin(), subset.end(), Index(0));
  OracleResult result;
  result.best_cost = std::numeric_limits<double>::infinity();
  do {
    const Matrix sub = detail::gather_rows(points, subset);
    const double cost = detail::subset_cost_p2(sub, k);
    ++result.subsets_evaluated;
    if (cost < result.best_cost) {
      result.best_cost = cost;
      result.best_inliers = subset;
    }
  } while (detail::next_combination(subset, n));

  const Matrix best_sub = detail::gather_rows(points, result.best_inliers);
  result.best_subspace = top_k_subspace(PointSet(best_sub), std::nullopt, k);
  return result;
}

// Same enumeration for general p >= 1; each subset is solved approximately
// (IRLS), so the result is an upper bound on the true optimum.
inline OracleResult exact_optimum_p_general(const PointSet& points, Index k,
                                            double alpha, double p) {
  if (p < 1.0) throw InvalidArgument("exact_optimum_p_general: p must be >= 1");
  if (k < 1 || k > points.dim()) throw InvalidArgument("exact_optimum_p_general: k out of range");
  const Index n = points.size();
  const Index m = static_cast<Index>(std::floor((1.0 - alpha) * static_cast<double>(n)));
  if (m < 1) throw InvalidArgument("exact_optimum_p_general: zero inliers");
  if (detail::count_combinations_capped(n, m, kOracleSubsetBudget) > kOracleSubsetBudget) {
    throw BudgetExceeded("exact_optimum_p_general: C(n, (1-alpha)n) exceeds subset budget of 1e6");
  }

  std::vector<Index> subset(static_cast<std::size_t>(m));
  std::iota(subset.begin(), subset.end(), Index(0));
  OracleResult result;
  result.best_cost = std::numeric_limits<double>::infinity();
  result.upper_bound_only = (p != 2.0);
  do {
    const Matrix sub = detail::gather_rows(points, subset);
    auto [cost, basis] = detail::subset_cost_p_general(sub, k, p);
    ++result.subsets_evaluated;
    if (cost < result.best_cost) {
      result.best_cost = cost;
      result.best_inliers = subset;
      result.best_subspace = std::move(basis);
    }
  } while (detail::next_combination(subset, n));
  return result;
}

// Ratio of the reference subspace's inlier error to its error over all
// points. Uses the supplied subspace when given, otherwise brute-forces one.
inline DeltaEstimate delta_of_instance(const PointSet& points, Index k, double alpha,
                                       double p, const Basis* reference = nullptr) {
  Basis v{1};
  if (reference != nullptr) {
    v = *reference;
  } else {
    v = (p == 2.0) ? exact_optimum_p2(points, k, alpha).best_subspace
                   : exact_optimum_p_general(points, k, alpha, p).best_subspace;
  }
  const Vector r = residual_norms(points, v);
  double total = 0.0;
  for (Index i = 0; i < r.size(); ++i) total += std::pow(r(i), p);
  const auto inliers = detail::nearest_by_residual(r, alpha);
  double inlier_cost = 0.0;
  for (Index i : inliers) inlier_cost += std::pow(r(i), p);

  DeltaEstimate est;
  if (total <= kDegenerateWeightTotal || inlier_cost <= 1e-20 * total) {
    est.exact_fit = true;
    return est;
  }
  est.value = inlier_cost / total;
  return est;
}

}  // namespace osa

#endif  // OSA_ORACLE_HPP
