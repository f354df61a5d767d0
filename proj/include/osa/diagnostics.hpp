#ifndef OSA_DIAGNOSTICS_HPP
#define OSA_DIAGNOSTICS_HPP

#include <cmath>
#include <utility>
#include <vector>

#include "osa/common.hpp"
#include "osa/datagen.hpp"
#include "osa/geometry.hpp"
#include "osa/solver.hpp"

namespace osa {

// Test-side instrumentation against a known reference subspace. None of
// this is available to the solver itself (it never sees V*).

// The line in span(S) making the smallest angle with the reference
// subspace, plus |sin| of that angle.
struct ClosestLine {
  Basis line{1};
  double sin_angle = 1.0;
};

inline ClosestLine closest_line_in_span(const Basis& span, const Basis& reference) {
  if (span.ambient_dim() != reference.ambient_dim()) {
    throw DimensionMismatch("closest_line_in_span: ambient dimensions differ");
  }
  if (span.dim() == 0) throw InvalidArgument("closest_line_in_span: empty span");
  ClosestLine out;
  if (reference.dim() == 0) {
    out.line = make_basis_unchecked(span.vectors().col(0));
    out.sin_angle = 1.0;
    return out;
  }
  // max over unit u in span of ||P_ref u|| = top singular value of V^T B.
  const Matrix cross = reference.vectors().transpose() * span.vectors();
  Eigen::BDCSVD<Matrix> svd(cross, Eigen::ComputeThinV);
  const double cosine = std::min(svd.singularValues()(0), 1.0);
  const Vector coeff = svd.matrixV().col(0);
  out.line = make_basis_unchecked(span.vectors() * coeff);
  out.sin_angle = std::sqrt(std::max(0.0, 1.0 - cosine * cosine));
  return out;
}

struct BadSetReport {
  std::vector<Index> bad;           // B(S): inliers hurt by > (1+eps/2) factor
  std::vector<Index> good;          // G(S) = I \ B(S)
  double mass_ratio = 0.0;          // sum_{B(S)} ||x||^p / sum_all ||x||^p
  Basis rotated_subspace{1};        // W_S
  double sin_angle = 1.0;           // angle(l_S, V*)
  bool line_orthogonal_to_truth = false;
};

// Rotates the reference subspace to contain the sample span's closest line
// (the W_S construction) and classifies the reference inliers into
// bad/good by the (1 + eps/2) error-blowup test.
inline BadSetReport diagnostics_bad_set(const PointSet& points,
                                        const std::vector<Index>& sample,
                                        const Basis& v_star,
                                        const std::vector<Index>& inlier_indices,
                                        const SolverConfig& config) {
  const SolverConfig cfg = config.resolved();
  if (sample.empty()) throw InvalidArgument("diagnostics_bad_set: empty sample");
  if (v_star.dim() < 1) throw InvalidArgument("diagnostics_bad_set: reference subspace is trivial");

  SpanBuilder builder(points.dim());
  for (Index idx : sample) builder.append(points.point(idx));
  const Basis span = builder.basis();

  BadSetReport report;
  const ClosestLine closest = closest_line_in_span(span, v_star);
  report.sin_angle = closest.sin_angle;
  const Vector u = closest.line.vector(0);

  // l* = projection of l_S onto V*; W* = complement of l* inside V*.
  Vector l_star = v_star.vectors() * (v_star.vectors().transpose() * u);
  const double proj_norm = l_star.norm();
  if (proj_norm <= 1e-12) {
    report.line_orthogonal_to_truth = true;
    l_star = v_star.vector(0);
  } else {
    l_star /= proj_norm;
  }
  Matrix complement(points.dim(), v_star.dim());
  for (Index j = 0; j < v_star.dim(); ++j) {
    complement.col(j) = v_star.vector(j) - l_star.dot(v_star.vector(j)) * l_star;
  }
  const Basis w_star = orthonormalize(complement);

  Matrix rotated(points.dim(), 1 + w_star.dim());
  rotated.col(0) = u;
  rotated.rightCols(w_star.dim()) = w_star.vectors();
  report.rotated_subspace = orthonormalize(rotated);

  const Vector r_ws = residual_norms(points, report.rotated_subspace);
  const Vector r_vs = residual_norms(points, v_star);
  const double blowup = 1.0 + cfg.epsilon / 2.0;
  for (Index i : inlier_indices) {
    // residuals at rounding-noise scale relative to the point are zero
    const double floor = std::pow(kOrthTolerance * points.point(i).norm(), cfg.p);
    if (std::pow(r_ws(i), cfg.p) > blowup * std::pow(r_vs(i), cfg.p) + floor) {
      report.bad.push_back(i);
    } else {
      report.good.push_back(i);
    }
  }
  const Vector norms = points.data().rowwise().norm();
  double total_mass = 0.0;
  for (Index i = 0; i < points.size(); ++i) total_mass += std::pow(norms(i), cfg.p);
  double bad_mass = 0.0;
  for (Index i : report.bad) bad_mass += std::pow(norms(i), cfg.p);
  report.mass_ratio = (total_mass > 0.0) ? bad_mass / total_mass : 0.0;
  return report;
}

inline BadSetReport diagnostics_bad_set(const PointSet& points,
                                        const std::vector<Index>& sample,
                                        const PlantedTruth& truth,
                                        const SolverConfig& config) {
  return diagnostics_bad_set(points, sample, truth.subspace, truth.inlier_indices,
                             config);
}

// Runs the adaptive pipeline and records sin(angle) between the span's
// closest line and the reference subspace after init and every round.
inline std::vector<double> diagnostics_angle_track(const PointSet& points,
                                                   const Basis& v_star,
                                                   const SolverConfig& config) {
  const SolverConfig cfg = config.resolved();
  std::vector<double> angles;
  detail::run_adaptive_pipeline(
      points, cfg,
      [&](Index, const SampleTrace&, const Basis& span) {
        if (span.dim() == 0) {
          angles.push_back(1.0);
          return;
        }
        angles.push_back(closest_line_in_span(span, v_star).sin_angle);
      });
  return angles;
}

inline std::vector<double> diagnostics_angle_track(const PointSet& points,
                                                   const PlantedTruth& truth,
                                                   const SolverConfig& config) {
  return diagnostics_angle_track(points, truth.subspace, config);
}

}  // namespace osa

#endif  // OSA_DIAGNOSTICS_HPP
