#ifndef OSA_GEOMETRY_HPP
#define OSA_GEOMETRY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "osa/common.hpp"

namespace osa {

inline constexpr double kOrthTolerance = 1e-10;

// Immutable n x d collection of points; row i is point i and indices are
// stable for the lifetime of the set.
class PointSet {
 public:
  explicit PointSet(Matrix points) : points_(std::move(points)) {
    if (points_.rows() < 1 || points_.cols() < 1) {
      throw InvalidArgument("PointSet requires n >= 1 points of dimension d >= 1");
    }
    if (!points_.allFinite()) {
      throw InvalidArgument("PointSet entries must be finite");
    }
  }

  Index size() const { return points_.rows(); }
  Index dim() const { return points_.cols(); }
  const Matrix& data() const { return points_; }
  Vector point(Index i) const { return points_.row(i).transpose(); }

 private:
  friend PointSet make_pointset_allow_zero_dim(Matrix points);
  struct ZeroDimTag {};
  PointSet(Matrix points, ZeroDimTag) : points_(std::move(points)) {}

  Matrix points_;
};

// Projections onto a trivial span legitimately produce points of dimension
// zero; this is the only way such a set comes into existence.
inline PointSet make_pointset_allow_zero_dim(Matrix points) {
  return PointSet(std::move(points), PointSet::ZeroDimTag{});
}

// Orthonormal basis of a linear subspace, stored as the columns of a
// d x m matrix. m = 0 is the trivial subspace (ambient dimension kept).
class Basis {
 public:
  explicit Basis(Index ambient_dim) : vectors_(ambient_dim, 0) {
    if (ambient_dim < 1) throw InvalidArgument("Basis ambient dimension must be >= 1");
  }

  explicit Basis(Matrix vectors, double tol = kOrthTolerance)
      : vectors_(std::move(vectors)) {
    if (vectors_.rows() < 1) throw InvalidArgument("Basis ambient dimension must be >= 1");
    if (vectors_.cols() > vectors_.rows()) {
      throw InvalidArgument("Basis cannot have more vectors than ambient dimensions");
    }
    const Matrix gram = vectors_.transpose() * vectors_;
    const Matrix err = gram - Matrix::Identity(vectors_.cols(), vectors_.cols());
    if (vectors_.cols() > 0 && err.cwiseAbs().maxCoeff() > tol) {
      throw InvalidArgument("Basis vectors are not orthonormal within tolerance");
    }
  }

  Index dim() const { return vectors_.cols(); }
  Index ambient_dim() const { return vectors_.rows(); }
  const Matrix& vectors() const { return vectors_; }
  Vector vector(Index j) const { return vectors_.col(j); }

 private:
  friend Basis make_basis_unchecked(Matrix vectors);
  struct Unchecked {};
  Basis(Matrix vectors, Unchecked) : vectors_(std::move(vectors)) {}

  Matrix vectors_;
};

// Internal constructor for callers that guarantee orthonormality by
// construction (Gram-Schmidt, SVD factors).
inline Basis make_basis_unchecked(Matrix vectors) {
  return Basis(std::move(vectors), Basis::Unchecked{});
}

// Affine subspace: origin point plus a basis of directions.
struct AffinePlacement {
  Vector origin;
  Basis basis;

  AffinePlacement(Vector origin_in, Basis basis_in)
      : origin(std::move(origin_in)), basis(std::move(basis_in)) {
    if (origin.size() != basis.ambient_dim()) {
      throw DimensionMismatch("AffinePlacement origin/basis dimension mismatch");
    }
    if (!origin.allFinite()) throw InvalidArgument("AffinePlacement origin must be finite");
  }
};

namespace detail {

// Modified Gram-Schmidt step: projects v off the first m columns of basis,
// with one re-orthogonalization pass.
inline void mgs_project_off(const Matrix& basis, Index m, Vector& v) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Index j = 0; j < m; ++j) {
      v -= basis.col(j).dot(v) * basis.col(j);
    }
  }
}

}  // namespace detail

// Incrementally grown orthonormal span. Vectors whose residual after
// projection falls below the drop tolerance are discarded, so rank
// deficiency just yields a lower-dimensional span.
class SpanBuilder {
 public:
  explicit SpanBuilder(Index ambient_dim, double tol = -1.0)
      : basis_(ambient_dim, 0), tol_(tol) {
    if (ambient_dim < 1) throw InvalidArgument("SpanBuilder ambient dimension must be >= 1");
  }

  Index ambient_dim() const { return basis_.rows(); }
  Index dim() const { return basis_.cols(); }
  const Matrix& matrix() const { return basis_; }

  // Returns true if the vector extended the span.
  bool append(Vector v) {
    if (v.size() != basis_.rows()) {
      throw DimensionMismatch("SpanBuilder: vector dimension mismatch");
    }
    if (basis_.cols() == basis_.rows()) return false;
    const double vnorm = v.norm();
    max_input_norm_ = std::max(max_input_norm_, vnorm);
    const double drop = (tol_ > 0.0) ? tol_ : 1e-10 * max_input_norm_;
    detail::mgs_project_off(basis_, basis_.cols(), v);
    const double rnorm = v.norm();
    if (rnorm <= drop || rnorm == 0.0) return false;
    basis_.conservativeResize(Eigen::NoChange, basis_.cols() + 1);
    basis_.col(basis_.cols() - 1) = v / rnorm;
    return true;
  }

  Basis basis() const { return make_basis_unchecked(basis_); }

 private:
  Matrix basis_;
  double tol_;
  double max_input_norm_ = 0.0;
};

// Orthonormalizes the given vectors (columns of a d x m matrix) with
// modified Gram-Schmidt plus one re-orthogonalization pass. Near-dependent
// vectors are dropped; tol <= 0 selects 1e-10 * (max input norm).
inline Basis orthonormalize(const Matrix& vectors, double tol = -1.0) {
  if (vectors.rows() < 1) throw InvalidArgument("orthonormalize: ambient dimension must be >= 1");
  SpanBuilder builder(vectors.rows(), tol);
  for (Index j = 0; j < vectors.cols(); ++j) {
    builder.append(vectors.col(j));
  }
  return builder.basis();
}

inline Basis orthonormalize(const std::vector<Vector>& vectors, double tol = -1.0) {
  if (vectors.empty()) throw InvalidArgument("orthonormalize: cannot infer ambient dimension from empty input");
  const Index d = vectors.front().size();
  Matrix m(d, static_cast<Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != d) throw DimensionMismatch("orthonormalize: mixed vector dimensions");
    m.col(static_cast<Index>(j)) = vectors[j];
  }
  return orthonormalize(m, tol);
}

// Distance from x to the span of B: ||x - B B^T x||. A trivial basis gives ||x||.
inline double residual_norm(const Vector& x, const Basis& basis) {
  if (x.size() != basis.ambient_dim()) {
    throw DimensionMismatch("residual_norm: point dimension " + std::to_string(x.size()) +
                            " != ambient dimension " + std::to_string(basis.ambient_dim()));
  }
  if (basis.dim() == 0) return x.norm();
  return (x - basis.vectors() * (basis.vectors().transpose() * x)).norm();
}

// Vectorized residual norms for every point in X.
inline Vector residual_norms(const PointSet& points, const Basis& basis) {
  if (points.dim() != basis.ambient_dim()) {
    throw DimensionMismatch("residual_norms: point dimension != ambient dimension");
  }
  if (basis.dim() == 0) return points.data().rowwise().norm();
  const Matrix coords = points.data() * basis.vectors();          // n x m
  const Matrix residual = points.data() - coords * basis.vectors().transpose();
  return residual.rowwise().norm();
}

namespace detail {

// Orthonormal top-k right singular subspace of A (rows are observations).
// Rank is cut at 1e-10 relative to the largest singular value.
inline Basis top_right_singular_subspace(const Matrix& a, Index k) {
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cut = (sv.size() > 0 ? sv(0) : 0.0) * 1e-10;
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut && sv(rank) > 0.0) ++rank;
  const Index m = std::min(k, rank);
  if (m == 0) return Basis(a.cols());
  return make_basis_unchecked(svd.matrixV().leftCols(m));
}

}  // namespace detail

// Best k-dimensional subspace under the (optionally weighted) sum of
// squared distances. Returns a basis of dimension min(k, rank).
inline Basis top_k_subspace(const PointSet& points,
                            const std::optional<Vector>& weights, Index k) {
  if (k < 1 || k > points.dim()) {
    throw InvalidArgument("top_k_subspace: k must satisfy 1 <= k <= d");
  }
  if (!weights.has_value()) {
    return detail::top_right_singular_subspace(points.data(), k);
  }
  if (weights->size() != points.size()) {
    throw DimensionMismatch("top_k_subspace: weight count != point count");
  }
  if ((weights->array() < 0.0).any() || !weights->allFinite()) {
    throw InvalidArgument("top_k_subspace: weights must be finite and non-negative");
  }
  const Matrix scaled = weights->array().sqrt().matrix().asDiagonal() * points.data();
  return detail::top_right_singular_subspace(scaled, k);
}

// |sin| of the angle between a line and a subspace.
inline double sin_angle(const Basis& line, const Basis& subspace) {
  if (line.dim() != 1) throw InvalidArgument("sin_angle: first argument must be a line (dim 1)");
  if (line.ambient_dim() != subspace.ambient_dim()) {
    throw DimensionMismatch("sin_angle: ambient dimensions differ");
  }
  const double s = residual_norm(line.vector(0), subspace);
  return std::clamp(s, 0.0, 1.0);
}

// Coordinates of every point in the span of B (dimension m).
inline PointSet project_onto(const PointSet& points, const Basis& basis) {
  if (points.dim() != basis.ambient_dim()) {
    throw DimensionMismatch("project_onto: point dimension != ambient dimension");
  }
  Matrix coords = points.data() * basis.vectors();  // n x m
  if (basis.dim() == 0) return make_pointset_allow_zero_dim(std::move(coords));
  return PointSet(std::move(coords));
}

}  // namespace osa

#endif  // OSA_GEOMETRY_HPP
