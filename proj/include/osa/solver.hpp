#ifndef OSA_SOLVER_HPP
#define OSA_SOLVER_HPP

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "osa/common.hpp"
#include "osa/geometry.hpp"
#include "osa/sampling.hpp"

namespace osa {

// Every constant the analysis hides in O(.), made explicit. Fields left at
// zero are derived from (k, p, epsilon, delta) by resolved().
struct SolverConfig {
  Index k = 1;
  double p = 2.0;
  double alpha = 0.0;     // outlier fraction in [0, 1)
  double epsilon = 0.2;   // accuracy in (0, 1)
  double delta = 0.1;     // assumed inlier-error fraction in (0, 1 - alpha]
  Index rounds_T = 0;     // 0 -> ceil(log2(1/delta)) + 1
  Index inner_batches = 0;  // 0 -> k
  Index batch_size = 0;   // 0 -> ceil(c1 * p^2 k / eps^2 * ln(k/eps))
  double batch_constant = 4.0;   // c1
  double trial_constant = 2.0;   // c2
  Index trials = 0;       // per-round boost candidates; 0 -> ceil(c2*ln(T)) + 3
  Index extraction_iters = 50;
  Seed seed{};

  SolverConfig resolved() const {
    SolverConfig c = *this;
    if (c.k < 1) throw InvalidArgument("SolverConfig: k must be >= 1");
    if (c.p < 1.0) throw InvalidArgument("SolverConfig: p must be >= 1");
    if (c.alpha < 0.0 || c.alpha >= 1.0) throw InvalidArgument("SolverConfig: alpha must be in [0, 1)");
    if (c.epsilon <= 0.0 || c.epsilon >= 1.0) throw InvalidArgument("SolverConfig: epsilon must be in (0, 1)");
    if (c.delta <= 0.0 || c.delta > 1.0 - c.alpha) {
      throw InvalidArgument("SolverConfig: delta must satisfy 0 < delta <= 1 - alpha");
    }
    if (c.batch_constant <= 0.0 || c.trial_constant <= 0.0) {
      throw InvalidArgument("SolverConfig: batch/trial constants must be positive");
    }
    if (c.extraction_iters < 1) throw InvalidArgument("SolverConfig: extraction_iters must be >= 1");
    if (c.rounds_T <= 0) {
      c.rounds_T = static_cast<Index>(std::ceil(std::log2(1.0 / c.delta))) + 1;
    }
    if (c.inner_batches <= 0) c.inner_batches = c.k;
    if (c.batch_size <= 0) {
      const double kk = static_cast<double>(c.k);
      c.batch_size = static_cast<Index>(std::ceil(
          c.batch_constant * c.p * c.p * kk / (c.epsilon * c.epsilon) *
          std::log(kk / c.epsilon)));
      c.batch_size = std::max<Index>(c.batch_size, 1);
    }
    if (c.trials <= 0) {
      c.trials = static_cast<Index>(std::ceil(
                     c.trial_constant * std::log(static_cast<double>(c.rounds_T)))) + 3;
    }
    return c;
  }
};

struct SolveReport {
  SampleTrace trace;
  Basis subspace{1};        // extracted k-dimensional subspace
  Index span_dim = 0;       // dim span(S), the bi-criteria subspace
  double trimmed_cost_k = 0.0;
  double trimmed_cost_span = 0.0;
  std::vector<Index> inlier_indices;
  std::vector<double> per_round_residual_mass;  // entry 0 is after the init round
  double wall_time_ms = 0.0;
  SolverConfig config;      // resolved configuration actually used
};

namespace detail {

inline std::vector<Index> nearest_by_residual(const Vector& r, double alpha) {
  const Index n = r.size();
  const Index m = static_cast<Index>(std::floor((1.0 - alpha) * static_cast<double>(n)));
  if (m < 1) throw InvalidArgument("trimming: (1-alpha)*n floors to zero inliers");
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index(0));
  std::nth_element(order.begin(), order.begin() + (m - 1), order.end(),
                   [&](Index a, Index b) {
                     if (r(a) != r(b)) return r(a) < r(b);
                     return a < b;
                   });
  order.resize(static_cast<std::size_t>(m));
  std::sort(order.begin(), order.end());
  return order;
}

}  // namespace detail

// Indices of the floor((1-alpha)*n) points nearest to the subspace,
// ties broken toward smaller index. Returned in ascending index order.
inline std::vector<Index> nearest_inliers(const PointSet& points, const Basis& basis,
                                          double alpha) {
  if (alpha < 0.0 || alpha >= 1.0) throw InvalidArgument("nearest_inliers: alpha must be in [0, 1)");
  return detail::nearest_by_residual(residual_norms(points, basis), alpha);
}

// Sum of p-th power residuals over the nearest (1-alpha)n points.
inline double trimmed_cost(const PointSet& points, const Basis& basis, double alpha,
                           double p) {
  if (p < 1.0) throw InvalidArgument("trimmed_cost: p must be >= 1");
  const Vector r = residual_norms(points, basis);
  const auto inliers = detail::nearest_by_residual(r, alpha);
  double cost = 0.0;
  for (Index i : inliers) cost += std::pow(r(i), p);
  return cost;
}

namespace detail {

// Loss adapter for the alternating trimmed minimization: cost(r) is the
// objective term, irls_weight(r) the surrogate least-squares weight.
struct LossAdapter {
  std::function<double(double)> cost;
  std::function<double(double)> irls_weight;
};

inline LossAdapter pth_power_adapter(double p) {
  LossAdapter a;
  a.cost = [p](double r) { return std::pow(r, p); };
  if (p == 2.0) {
    a.irls_weight = [](double) { return 1.0; };
  } else {
    a.irls_weight = [p](double r) {
      double w = std::pow(r, p - 2.0);
      if (p < 2.0) w = std::min(w, 1e12);  // residual^(p-2) blows up near 0
      return std::max(w, 1e-12);
    };
  }
  return a;
}

// Alternating trimmed minimization inside span(S): weighted top-k step on
// the projected coordinates, then re-trim by full-space residuals. Runs
// from two deterministic starts (all points, and the points nearest to the
// span) and returns the cheaper basis, embedded back in R^d.
inline Basis extract_subspace_in_span(const PointSet& points, const Basis& span,
                                      Index k, double alpha, Index max_iters,
                                      const LossAdapter& loss) {
  if (span.dim() <= k) return span;
  const Index n = points.size();
  const Matrix coords = points.data() * span.vectors();  // n x m
  const Vector off_span = residual_norms(points, span);
  const Vector off_span_sq = off_span.array().square();
  const PointSet projected = make_pointset_allow_zero_dim(coords);

  auto full_residuals = [&](const Basis& v_sub) -> Vector {
    const Matrix in_span_res =
        coords - (coords * v_sub.vectors()) * v_sub.vectors().transpose();
    return (in_span_res.rowwise().squaredNorm() + off_span_sq).cwiseSqrt();
  };

  auto alternate = [&](std::vector<Index> inliers) {
    Vector weights = Vector::Ones(n);
    double best_cost = std::numeric_limits<double>::infinity();
    std::optional<Basis> best;
    double prev_cost = std::numeric_limits<double>::infinity();
    std::vector<Index> prev_inliers;
    for (Index it = 0; it < max_iters; ++it) {
      Vector w = Vector::Zero(n);
      for (Index i : inliers) w(i) = weights(i);
      if (w.sum() <= 0.0) w = Vector::Ones(n);
      const Basis v_sub = top_k_subspace(projected, w, k);
      const Vector r = full_residuals(v_sub);
      const std::vector<Index> next = detail::nearest_by_residual(r, alpha);
      double cost = 0.0;
      for (Index i : next) cost += loss.cost(r(i));
      if (cost < best_cost) {
        best_cost = cost;
        best = v_sub;
      }
      const bool stable = (next == prev_inliers) &&
                          std::abs(cost - prev_cost) <= 1e-12 * std::max(1.0, cost);
      prev_inliers = next;
      prev_cost = cost;
      inliers = next;
      for (Index i = 0; i < n; ++i) weights(i) = loss.irls_weight(r(i));
      if (stable) break;
    }
    return std::make_pair(best_cost, best);
  };

  std::vector<Index> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), Index(0));
  auto [cost_all, from_all] = alternate(std::move(all));
  auto [cost_near, from_near] = alternate(detail::nearest_by_residual(off_span, alpha));

  const std::optional<Basis>& winner = (cost_near < cost_all) ? from_near : from_all;
  if (!winner.has_value()) return span;
  return make_basis_unchecked(span.vectors() * winner->vectors());
}

// Shared adaptive-sampling pipeline. The observer (if any) is called with
// (round index, trace so far, span basis) after the init round (index 0)
// and after each accepted round.
using RoundObserver = std::function<void(Index, const SampleTrace&, const Basis&)>;

struct PipelineResult {
  SampleTrace trace;
  Basis span{1};
  std::vector<double> per_round_residual_mass;
};

inline PipelineResult run_adaptive_pipeline(const PointSet& points,
                                            const SolverConfig& cfg,
                                            const RoundObserver& observer = {}) {
  PipelineResult out;
  const double total_mass = trivial_span_mass(points, cfg.p);
  const double exact_floor =
      std::max(kDegenerateWeightTotal, kExactFitMassFraction * total_mass);

  out.trace = adaptive_init(points, cfg.k, cfg.p, derive_seed(cfg.seed, 0, 0));
  SpanBuilder span(points.dim());
  for (Index idx : out.trace.all) span.append(points.point(idx));

  WeightVector opening = pth_power_weights(points, span.basis(), cfg.p);
  out.per_round_residual_mass.push_back(opening.total);
  if (observer) observer(0, out.trace, span.basis());
  if (opening.total <= exact_floor) out.trace.degenerate = true;

  if (!out.trace.degenerate) {
    for (Index t = 1; t <= cfg.rounds_T; ++t) {
      double best_mass = std::numeric_limits<double>::infinity();
      std::vector<Index> best_batch;
      std::optional<SpanBuilder> best_span;
      std::optional<WeightVector> best_weights;
      bool best_degenerate = false;

      for (Index c = 0; c < cfg.trials; ++c) {
        const Seed trial_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(t),
                                            static_cast<std::uint64_t>(c));
        SpanBuilder cand_span = span;
        std::vector<Index> cand_batch;
        bool cand_degenerate = false;
        for (Index b = 0; b < cfg.inner_batches; ++b) {
          WeightVector w = (b == 0) ? opening
                                    : pth_power_weights(points, cand_span.basis(), cfg.p);
          if (w.total <= exact_floor) {
            cand_degenerate = true;
            break;
          }
          const auto draws = weighted_iid_sample(
              w, cfg.batch_size, derive_seed(trial_seed, static_cast<std::uint64_t>(b)));
          for (Index idx : draws) cand_span.append(points.point(idx));
          cand_batch.insert(cand_batch.end(), draws.begin(), draws.end());
        }
        WeightVector after = pth_power_weights(points, cand_span.basis(), cfg.p);
        // exact-fit masses are rounding noise; compare them as true zeros
        // so the first exact-fit candidate wins deterministically
        const double cand_mass = (after.total <= exact_floor) ? 0.0 : after.total;
        if (cand_mass < best_mass) {
          best_mass = cand_mass;
          best_batch = std::move(cand_batch);
          best_span = std::move(cand_span);
          best_weights = std::move(after);
          best_degenerate = cand_degenerate;
        }
      }

      out.trace.push_round(std::move(best_batch), opening);
      span = std::move(*best_span);
      opening = std::move(*best_weights);
      out.per_round_residual_mass.push_back(opening.total);
      if (observer) observer(t, out.trace, span.basis());
      if (best_degenerate || opening.total <= exact_floor) {
        out.trace.degenerate = true;
        break;
      }
    }
  }
  out.span = span.basis();
  return out;
}

}  // namespace detail

// Recovers a k-dimensional subspace from the coreset span by alternating
// trimmed minimization (the analysis only proves one exists in there).
inline Basis extract_k_subspace(const PointSet& points, const Basis& span,
                                const SolverConfig& config) {
  const SolverConfig cfg = config.resolved();
  return detail::extract_subspace_in_span(points, span, cfg.k, cfg.alpha,
                                          cfg.extraction_iters,
                                          detail::pth_power_adapter(cfg.p));
}

// The weak-coreset solver: volume-sampling-style init, T rounds of adaptive
// residual sampling with per-round boosting, then extraction. Reports both
// the bi-criteria span cost and the extracted k-dimensional cost.
inline SolveReport solve_outliers(const PointSet& points, const SolverConfig& config) {
  const auto t_start = std::chrono::steady_clock::now();
  const SolverConfig cfg = config.resolved();
  if (cfg.k > points.dim()) throw InvalidArgument("solve_outliers: k exceeds ambient dimension");

  auto pipeline = detail::run_adaptive_pipeline(points, cfg);

  SolveReport report;
  report.config = cfg;
  report.trace = std::move(pipeline.trace);
  report.per_round_residual_mass = std::move(pipeline.per_round_residual_mass);
  report.span_dim = pipeline.span.dim();
  report.subspace = extract_k_subspace(points, pipeline.span, cfg);
  report.trimmed_cost_span = trimmed_cost(points, pipeline.span, cfg.alpha, cfg.p);
  report.trimmed_cost_k = trimmed_cost(points, report.subspace, cfg.alpha, cfg.p);
  report.inlier_indices = nearest_inliers(points, report.subspace, cfg.alpha);
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start)
          .count();
  return report;
}

// The k=1, p=2 specialization: one squared-length-sampled seed point, then
// T boosted rounds of squared-residual sampling.
inline SolveReport line_solver(const PointSet& points, const SolverConfig& config) {
  SolverConfig cfg = config;
  if (cfg.k != 1 || cfg.p != 2.0) {
    throw InvalidArgument("line_solver requires k=1 and p=2");
  }
  cfg.inner_batches = 1;
  return solve_outliers(points, cfg);
}

}  // namespace osa

#endif  // OSA_SOLVER_HPP
