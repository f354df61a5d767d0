#ifndef OSA_SAMPLING_HPP
#define OSA_SAMPLING_HPP

#include <algorithm>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "osa/common.hpp"
#include "osa/geometry.hpp"

namespace osa {

// Total weight at or below this is treated as "the span already fits
// everything", which is success, not failure.
inline constexpr double kDegenerateWeightTotal = 1e-300;

// Non-negative per-index sampling weights and their sum.
struct WeightVector {
  Vector weights;
  double total = 0.0;

  WeightVector() = default;
  explicit WeightVector(Vector w) : weights(std::move(w)) {
    if (!weights.allFinite() || (weights.array() < 0.0).any()) {
      throw InvalidArgument("WeightVector entries must be finite and non-negative");
    }
    total = weights.sum();
  }

  bool degenerate() const { return total <= kDegenerateWeightTotal; }
};

// The growing coreset: per-round index batches (sampling is with
// replacement, so batches may repeat indices), the de-duplicated union in
// first-seen order, and the weight snapshot that opened each round.
struct SampleTrace {
  std::vector<std::vector<Index>> rounds;
  std::vector<Index> all;
  std::vector<WeightVector> weights_log;
  bool degenerate = false;

  void push_round(std::vector<Index> batch, WeightVector opening_weights) {
    for (Index idx : batch) {
      if (seen_.insert(idx).second) all.push_back(idx);
    }
    rounds.push_back(std::move(batch));
    weights_log.push_back(std::move(opening_weights));
  }

  std::size_t total_draws() const {
    std::size_t n = 0;
    for (const auto& r : rounds) n += r.size();
    return n;
  }

 private:
  std::unordered_set<Index> seen_;
};

// w_i = d(x_i, span)^p.
inline WeightVector pth_power_weights(const PointSet& points, const Basis& basis,
                                      double p) {
  if (p < 1.0) throw InvalidArgument("pth_power_weights: p must be >= 1");
  Vector w = residual_norms(points, basis).array().pow(p);
  if (!w.allFinite()) {
    throw InvalidArgument("pth_power_weights: non-finite weight (residual overflow at p=" +
                          std::to_string(p) + ")");
  }
  return WeightVector(std::move(w));
}

// Residual mass below this fraction of the trivial-span mass is an exact
// fit up to floating-point noise: the span holds every point.
inline constexpr double kExactFitMassFraction = 1e-12;

inline double trivial_span_mass(const PointSet& points, double p) {
  return points.data().rowwise().norm().array().pow(p).sum();
}

// Exact-fit test for adaptive sampling: absolute underflow or a residual
// mass that is pure rounding noise relative to the data's own scale.
inline bool span_fits_all(const PointSet& points, const WeightVector& w, double p) {
  return w.total <=
         std::max(kDegenerateWeightTotal, kExactFitMassFraction * trivial_span_mass(points, p));
}

// m i.i.d. draws (with replacement), Pr[i] = w_i / total, by inversion of
// the cumulative sum. Deterministic given the seed.
inline std::vector<Index> weighted_iid_sample(const WeightVector& w, Index m, Seed seed) {
  if (m < 1) throw InvalidArgument("weighted_iid_sample: sample size must be >= 1");
  if (w.degenerate()) {
    throw DegenerateWeights("weighted_iid_sample: total weight is zero; span fits all points");
  }
  const Index n = w.weights.size();
  std::vector<double> cumulative(static_cast<std::size_t>(n));
  double acc = 0.0;
  Index last_positive = -1;
  for (Index i = 0; i < n; ++i) {
    acc += w.weights(i);
    cumulative[static_cast<std::size_t>(i)] = acc;
    if (w.weights(i) > 0.0) last_positive = i;
  }
  Rng rng(seed);
  std::vector<Index> draws(static_cast<std::size_t>(m));
  for (Index j = 0; j < m; ++j) {
    const double u = rng.next_double() * acc;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    Index idx = (it == cumulative.end()) ? last_positive
                                         : static_cast<Index>(it - cumulative.begin());
    // Zero-weight indices are unreachable except through floating-point
    // boundary collisions; step back to the nearest positive weight.
    while (idx > 0 && w.weights(idx) == 0.0) --idx;
    if (w.weights(idx) == 0.0) idx = last_positive;
    draws[static_cast<std::size_t>(j)] = idx;
  }
  return draws;
}

// k sequential picks, the j-th drawn proportionally to the p-th power of
// the residual to the span of the picks so far. Stops early if the span
// already fits the data; the single batch recorded is the init round.
inline SampleTrace adaptive_init(const PointSet& points, Index k, double p, Seed seed) {
  if (k < 1 || k > points.dim()) {
    throw InvalidArgument("adaptive_init: k must satisfy 1 <= k <= d");
  }
  SampleTrace trace;
  SpanBuilder span(points.dim());
  std::vector<Index> picks;
  WeightVector opening;
  for (Index j = 0; j < k; ++j) {
    WeightVector w = pth_power_weights(points, span.basis(), p);
    if (j == 0) opening = w;
    if (span_fits_all(points, w, p)) {
      trace.degenerate = true;
      break;
    }
    const Index pick = weighted_iid_sample(w, 1, derive_seed(seed, 0, static_cast<std::uint64_t>(j)))[0];
    picks.push_back(pick);
    span.append(points.point(pick));
  }
  trace.push_round(std::move(picks), std::move(opening));
  return trace;
}

// One adaptive round: `batch` i.i.d. draws proportional to the p-th power
// of residuals to span(current.all). Degenerate weights return the trace
// unchanged except for the degenerate flag.
inline SampleTrace adaptive_round(const PointSet& points, const SampleTrace& current,
                                  Index batch, double p, Seed seed) {
  if (batch < 1) throw InvalidArgument("adaptive_round: batch size must be >= 1");
  SpanBuilder span(points.dim());
  for (Index idx : current.all) span.append(points.point(idx));
  WeightVector w = pth_power_weights(points, span.basis(), p);
  SampleTrace next = current;
  if (span_fits_all(points, w, p)) {
    next.degenerate = true;
    return next;
  }
  std::vector<Index> draws = weighted_iid_sample(w, batch, seed);
  next.push_round(std::move(draws), std::move(w));
  return next;
}

}  // namespace osa

#endif  // OSA_SAMPLING_HPP
