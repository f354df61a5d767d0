#ifndef OSA_MESTIMATORS_HPP
#define OSA_MESTIMATORS_HPP

#include <chrono>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "osa/common.hpp"
#include "osa/geometry.hpp"
#include "osa/sampling.hpp"
#include "osa/solver.hpp"

namespace osa {

// Monotone M-estimator losses. Tukey saturates at t^6/6 beyond the
// threshold; a loss that returned to zero there would not be monotone and
// could not rank residuals.
struct LossFunction {
  enum class Kind { kPthPower, kHuber, kTukeyBisquare };
  Kind kind = Kind::kPthPower;
  double p = 2.0;        // for kPthPower
  double threshold = 1.0;  // t, for Huber/Tukey

  static LossFunction pth_power(double p) {
    if (p < 1.0) throw InvalidArgument("LossFunction: p must be >= 1");
    LossFunction l;
    l.kind = Kind::kPthPower;
    l.p = p;
    return l;
  }
  static LossFunction huber(double t) {
    if (t <= 0.0) throw InvalidArgument("LossFunction: Huber threshold must be > 0");
    LossFunction l;
    l.kind = Kind::kHuber;
    l.threshold = t;
    return l;
  }
  static LossFunction tukey(double t) {
    if (t <= 0.0) throw InvalidArgument("LossFunction: Tukey threshold must be > 0");
    LossFunction l;
    l.kind = Kind::kTukeyBisquare;
    l.threshold = t;
    return l;
  }

  std::string describe() const {
    switch (kind) {
      case Kind::kPthPower: return "lp:" + std::to_string(p);
      case Kind::kHuber: return "huber:" + std::to_string(threshold);
      case Kind::kTukeyBisquare: return "tukey:" + std::to_string(threshold);
    }
    return "unknown";
  }
};

inline double loss_eval(const LossFunction& loss, double x) {
  if (x < 0.0) throw InvalidArgument("loss_eval: residuals are non-negative");
  switch (loss.kind) {
    case LossFunction::Kind::kPthPower:
      return std::pow(x, loss.p);
    case LossFunction::Kind::kHuber: {
      const double t = loss.threshold;
      return (x < t) ? 0.5 * x * x : t * x - 0.5 * t * t;
    }
    case LossFunction::Kind::kTukeyBisquare: {
      const double t = loss.threshold;
      const double t2 = t * t;
      if (x >= t) return t2 * t2 * t2 / 6.0;
      const double s = t2 - x * x;
      return (t2 * t2 * t2 - s * s * s) / 6.0;
    }
  }
  throw InvalidArgument("loss_eval: unknown loss kind");
}

namespace detail {

inline LossAdapter loss_adapter(const LossFunction& loss) {
  switch (loss.kind) {
    case LossFunction::Kind::kPthPower:
      return pth_power_adapter(loss.p);
    case LossFunction::Kind::kHuber: {
      const double t = loss.threshold;
      LossAdapter a;
      a.cost = [loss](double r) { return loss_eval(loss, r); };
      a.irls_weight = [t](double r) { return (r < t) ? 1.0 : t / r; };
      return a;
    }
    case LossFunction::Kind::kTukeyBisquare: {
      const double t = loss.threshold;
      LossAdapter a;
      a.cost = [loss](double r) { return loss_eval(loss, r); };
      a.irls_weight = [t](double r) {
        if (r >= t) return 0.0;  // saturated: no pull on the fit
        const double s = t * t - r * r;
        return s * s;
      };
      return a;
    }
  }
  throw InvalidArgument("loss_adapter: unknown loss kind");
}

inline Vector loss_values(const PointSet& points, const Basis& basis,
                          const LossFunction& loss) {
  const Vector r = residual_norms(points, basis);
  Vector out(r.size());
  for (Index i = 0; i < r.size(); ++i) out(i) = loss_eval(loss, r(i));
  return out;
}

}  // namespace detail

// Trimmed M-estimator cost: sum of M(residual) over the nearest
// (1-alpha)n points (monotone M, so nearest-by-residual = cheapest).
inline double trimmed_loss_cost(const PointSet& points, const Basis& basis,
                                double alpha, const LossFunction& loss) {
  const Vector r = residual_norms(points, basis);
  const auto inliers = detail::nearest_by_residual(r, alpha);
  double cost = 0.0;
  for (Index i : inliers) cost += loss_eval(loss, r(i));
  return cost;
}

struct MEstimatorConfig {
  LossFunction loss = LossFunction::huber(1.0);
  SolverConfig inner;            // k, alpha, epsilon, delta, seed, round counts
  double sample_constant = 0.0;  // C'; 0 -> 8 k^3 / eps^2 * ln(k/eps)
  bool refine = true;            // adaptive rounds after the one-shot pass

  MEstimatorConfig resolved() const {
    MEstimatorConfig c = *this;
    c.inner = c.inner.resolved();
    if (c.sample_constant <= 0.0) {
      const double k = static_cast<double>(c.inner.k);
      const double eps = c.inner.epsilon;
      c.sample_constant = 8.0 * k * k * k / (eps * eps) * std::log(k / eps);
      c.sample_constant = std::max(c.sample_constant, 1.0);
    }
    return c;
  }
};

struct MEstimatorReport {
  SolveReport report;         // costs in report are M-costs
  double p_cost_k = 0.0;      // same subspace scored with the plain p-th power
  double p_cost_span = 0.0;
  double init_approx_C = 0.0; // measured untrimmed M-cost(V0) / M-cost(output)
  double sample_probability_sum = 0.0;  // expected one-shot sample size
};

// Per-index inclusion probabilities for the one-shot residual-sampling
// pass: p_i = min{1, C' * M(r_i) / sum_j M(r_j)}.
inline Vector residual_sample_probabilities(const PointSet& points, const Basis& v0,
                                            const LossFunction& loss,
                                            double sample_constant) {
  if (sample_constant <= 0.0) {
    throw InvalidArgument("residual_sample_probabilities: C' must be positive");
  }
  const Vector losses = detail::loss_values(points, v0, loss);
  const double total = losses.sum();
  if (total <= kDegenerateWeightTotal) {
    throw DegenerateWeights("residual_sample_probabilities: all losses are zero");
  }
  Vector probs(losses.size());
  for (Index i = 0; i < losses.size(); ++i) {
    probs(i) = std::min(1.0, sample_constant * losses(i) / total);
  }
  return probs;
}

// M-estimator subspace approximation with outliers: coarse adaptive init,
// one non-adaptive residual-sampling pass, optional adaptive refinement
// rounds weighted by M(residual), then trimmed extraction under the loss.
inline MEstimatorReport m_estimator_solve(const PointSet& points,
                                          const MEstimatorConfig& config) {
  const auto t_start = std::chrono::steady_clock::now();
  const MEstimatorConfig cfg = config.resolved();
  const SolverConfig& inner = cfg.inner;
  if (inner.k > points.dim()) throw InvalidArgument("m_estimator_solve: k exceeds ambient dimension");

  MEstimatorReport out;
  SampleTrace trace = adaptive_init(points, inner.k, 2.0, derive_seed(inner.seed, 0, 0));
  SpanBuilder span(points.dim());
  for (Index idx : trace.all) span.append(points.point(idx));
  const double v0_untrimmed_cost = detail::loss_values(points, span.basis(), cfg.loss).sum();

  const double scale_mass =
      detail::loss_values(points, Basis(points.dim()), cfg.loss).sum();
  const double exact_floor =
      std::max(kDegenerateWeightTotal, kExactFitMassFraction * scale_mass);

  std::vector<double> masses;
  masses.push_back(trimmed_loss_cost(points, span.basis(), 0.0, cfg.loss));

  // One-shot inclusion pass.
  const bool degenerate = masses.back() <= exact_floor;
  if (degenerate) trace.degenerate = true;
  if (!degenerate) {
    const Vector probs =
        residual_sample_probabilities(points, span.basis(), cfg.loss, cfg.sample_constant);
    Rng rng(derive_seed(inner.seed, 1, 0));
    std::vector<Index> included;
    for (Index i = 0; i < points.size(); ++i) {
      if (rng.next_double() < probs(i)) included.push_back(i);
    }
    trace.push_round(included, WeightVector(detail::loss_values(points, span.basis(), cfg.loss)));
    for (Index idx : included) span.append(points.point(idx));
    masses.push_back(detail::loss_values(points, span.basis(), cfg.loss).sum());
    out.sample_probability_sum = probs.sum();
  }

  // Adaptive refinement rounds, weights M(residual).
  if (cfg.refine && !degenerate) {
    for (Index t = 1; t <= inner.rounds_T; ++t) {
      WeightVector w(detail::loss_values(points, span.basis(), cfg.loss));
      if (w.total <= exact_floor) {
        trace.degenerate = true;
        break;
      }
      const auto draws = weighted_iid_sample(
          w, inner.batch_size, derive_seed(inner.seed, 2, static_cast<std::uint64_t>(t)));
      trace.push_round(draws, std::move(w));
      for (Index idx : draws) span.append(points.point(idx));
      masses.push_back(detail::loss_values(points, span.basis(), cfg.loss).sum());
      if (masses.back() <= exact_floor) break;
    }
  }

  const Basis span_basis = span.basis();
  const Basis subspace = detail::extract_subspace_in_span(
      points, span_basis, inner.k, inner.alpha, inner.extraction_iters,
      detail::loss_adapter(cfg.loss));

  out.report.trace = std::move(trace);
  out.report.subspace = subspace;
  out.report.span_dim = span_basis.dim();
  out.report.trimmed_cost_span = trimmed_loss_cost(points, span_basis, inner.alpha, cfg.loss);
  out.report.trimmed_cost_k = trimmed_loss_cost(points, subspace, inner.alpha, cfg.loss);
  out.report.inlier_indices = nearest_inliers(points, subspace, inner.alpha);
  out.report.per_round_residual_mass = std::move(masses);
  out.report.config = inner;
  out.p_cost_span = trimmed_cost(points, span_basis, inner.alpha, inner.p);
  out.p_cost_k = trimmed_cost(points, subspace, inner.alpha, inner.p);
  const double out_untrimmed_cost = detail::loss_values(points, subspace, cfg.loss).sum();
  out.init_approx_C =
      (out_untrimmed_cost > kDegenerateWeightTotal) ? v0_untrimmed_cost / out_untrimmed_cost
                                                    : 1.0;
  out.report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start)
          .count();
  return out;
}

}  // namespace osa

#endif  // OSA_MESTIMATORS_HPP
