#include <catch2/catch.hpp>

#include <Eigen/Eigenvalues>
#include <osa/geometry.hpp>

#include "test_utils.hpp"

using namespace osa;

namespace {

Matrix cols(std::initializer_list<Vector> vs) {
  Matrix m(vs.begin()->size(), static_cast<Index>(vs.size()));
  Index j = 0;
  for (const auto& v : vs) m.col(j++) = v;
  return m;
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Vector vec3(double a, double b, double c) {
  Vector v(3);
  v << a, b, c;
  return v;
}

// Independent p=2 oracle: the best k-dim subspace from the eigenvectors of
// X^T W X (a different factorization route than the implementation's SVD).
double eig_top_k_cost(const PointSet& x, const Vector& w, Index k) {
  const Matrix gram = x.data().transpose() * w.asDiagonal() * x.data();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
  double cost = 0.0;
  for (Index i = 0; i < x.size(); ++i) cost += w(i) * x.point(i).squaredNorm();
  const Index d = x.dim();
  for (Index j = 0; j < k && j < d; ++j) cost -= eig.eigenvalues()(d - 1 - j);
  return std::max(cost, 0.0);
}

}  // namespace

TEST_CASE("orthonormalize handles axis vectors, rank deficiency, normalization") {
  const Basis axes = orthonormalize(cols({vec2(1, 0), vec2(0, 2)}));
  REQUIRE(axes.dim() == 2);
  CHECK(testutil::projector_distance(axes, make_basis_unchecked(Matrix::Identity(2, 2))) <
        1e-12);

  const Basis rank1 = orthonormalize(cols({vec2(1, 0), vec2(2, 0)}));
  REQUIRE(rank1.dim() == 1);
  CHECK(std::abs(std::abs(rank1.vector(0)(0)) - 1.0) < 1e-12);

  const Basis diag = orthonormalize(cols({vec3(1, 1, 0)}));
  REQUIRE(diag.dim() == 1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(diag.vector(0)(0) == Approx(inv_sqrt2));
  CHECK(diag.vector(0)(1) == Approx(inv_sqrt2));
  CHECK(diag.vector(0)(2) == Approx(0.0).margin(1e-15));
}

TEST_CASE("orthonormalize rejects mixed dimensions, empty input gives trivial span") {
  std::vector<Vector> mixed{vec2(1, 0), vec3(1, 0, 0)};
  CHECK_THROWS_AS(orthonormalize(mixed), DimensionMismatch);

  const Basis trivial = orthonormalize(Matrix(3, 0));
  CHECK(trivial.dim() == 0);
  CHECK(trivial.ambient_dim() == 3);
}

TEST_CASE("orthonormalize is idempotent") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Basis b = testutil::random_basis(6, 3, 900 + s);
    const Basis again = orthonormalize(b.vectors());
    REQUIRE(again.dim() == b.dim());
    CHECK(testutil::projector_distance(b, again) < 1e-10);
  }
}

TEST_CASE("residual_norm on axis span, contained point, trivial basis") {
  const Basis e1 = orthonormalize(cols({vec2(1, 0)}));
  CHECK(residual_norm(vec2(3, 4), e1) == Approx(4.0));

  const Basis b = testutil::random_basis(5, 2, 17);
  const Vector inside = b.vectors() * vec2(0.3, -1.2);
  CHECK(residual_norm(inside, b) < 1e-10);

  CHECK(residual_norm(vec2(3, 4), Basis(2)) == Approx(5.0));
  CHECK_THROWS_AS(residual_norm(vec3(1, 2, 3), e1), DimensionMismatch);
}

TEST_CASE("residual_norms matches per-point residual_norm") {
  const PointSet x = testutil::random_points(6, 3, 23);
  const Basis b = testutil::random_basis(3, 1, 24);
  const Vector r = residual_norms(x, b);
  for (Index i = 0; i < x.size(); ++i) {
    CHECK(r(i) == Approx(residual_norm(x.point(i), b)).margin(1e-12));
  }

  const PointSet on_basis(Matrix(testutil::random_basis(4, 2, 25).vectors().transpose()));
  CHECK(residual_norms(on_basis, testutil::random_basis(4, 2, 25)).maxCoeff() < 1e-10);

  const Vector norms = residual_norms(x, Basis(3));
  for (Index i = 0; i < x.size(); ++i) CHECK(norms(i) == Approx(x.point(i).norm()));
}

TEST_CASE("top_k_subspace recovers a line and breaks symmetric ties at cost 1") {
  Matrix line(4, 2);
  line << 1, 1, 2, 2, -1, -1, 0.5, 0.5;
  const PointSet on_line{line};
  const Basis b = top_k_subspace(on_line, std::nullopt, 1);
  REQUIRE(b.dim() == 1);
  const double c = residual_norms(on_line, b).squaredNorm();
  CHECK(c < 1e-16);
  CHECK(std::abs(b.vector(0)(0)) == Approx(1.0 / std::sqrt(2.0)));

  Matrix axes(2, 2);
  axes << 1, 0, 0, 1;
  const PointSet two{axes};
  const Basis pick = top_k_subspace(two, std::nullopt, 1);
  CHECK(residual_norms(two, pick).squaredNorm() == Approx(1.0));
}

TEST_CASE("top_k_subspace agrees with the eigen-decomposition oracle") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const PointSet x = testutil::random_points(5, 3, 100 + s);
    const Vector w = Vector::Ones(5);
    const Basis b = top_k_subspace(x, std::nullopt, 1);
    const double cost = residual_norms(x, b).array().square().sum();
    CHECK(cost == Approx(eig_top_k_cost(x, w, 1)).margin(1e-8));
  }
  // weighted variant
  for (std::uint64_t s = 0; s < 10; ++s) {
    const PointSet x = testutil::random_points(7, 4, 200 + s);
    Rng rng{Seed(300 + s)};
    Vector w(7);
    for (Index i = 0; i < 7; ++i) w(i) = rng.next_double() + 0.1;
    const Basis b = top_k_subspace(x, w, 2);
    double cost = 0.0;
    const Vector r = residual_norms(x, b);
    for (Index i = 0; i < 7; ++i) cost += w(i) * r(i) * r(i);
    CHECK(cost == Approx(eig_top_k_cost(x, w, 2)).margin(1e-8));
  }
}

TEST_CASE("top_k_subspace validates k and collapses to rank") {
  const PointSet x = testutil::random_points(5, 3, 41);
  CHECK_THROWS_AS(top_k_subspace(x, std::nullopt, 0), InvalidArgument);
  CHECK_THROWS_AS(top_k_subspace(x, std::nullopt, 4), InvalidArgument);

  Matrix thin(6, 4);
  const Matrix dirs = testutil::random_matrix(4, 2, 42);
  const Matrix coeff = testutil::random_matrix(6, 2, 43);
  thin = coeff * dirs.transpose();  // rank 2 in R^4
  const Basis b = top_k_subspace(PointSet(thin), std::nullopt, 3);
  CHECK(b.dim() == 2);
  const double total = thin.squaredNorm();
  CHECK(residual_norms(PointSet(thin), b).squaredNorm() <= 1e-8 * total);
}

TEST_CASE("sin_angle basics") {
  const Basis v = orthonormalize(cols({vec3(1, 0, 0), vec3(0, 1, 0)}));
  const Basis inside = orthonormalize(cols({vec3(1, 1, 0)}));
  const Basis perp = orthonormalize(cols({vec3(0, 0, 1)}));
  CHECK(sin_angle(inside, v) == Approx(0.0).margin(1e-12));
  CHECK(sin_angle(perp, v) == Approx(1.0));

  const Basis e1 = orthonormalize(cols({vec3(1, 0, 0)}));
  const Basis diag = orthonormalize(cols({vec3(1, 1, 0)}));
  CHECK(sin_angle(diag, e1) == Approx(1.0 / std::sqrt(2.0)));

  CHECK_THROWS_AS(sin_angle(v, e1), InvalidArgument);
}

TEST_CASE("sin_angle is zero exactly when the line lies in the subspace") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const Basis v = testutil::random_basis(6, 3, 500 + s);
    Rng rng{Seed(800 + s)};
    Vector coeff(3);
    for (Index i = 0; i < 3; ++i) coeff(i) = rng.next_gaussian();
    const Basis in_line = orthonormalize(Matrix(v.vectors() * coeff));
    CHECK(sin_angle(in_line, v) < 1e-10);

    const Basis random_line = testutil::random_basis(6, 1, 900 + s);
    const double sine = sin_angle(random_line, v);
    const bool contained = residual_norm(random_line.vector(0), v) < kOrthTolerance;
    CHECK(((sine < 1e-10) == contained));
  }
}

TEST_CASE("project_onto: identity axes, trivial basis, Pythagorean identity") {
  const PointSet x = testutil::random_points(10, 4, 55);
  const Basis id = make_basis_unchecked(Matrix::Identity(4, 4));
  const PointSet same = project_onto(x, id);
  CHECK((same.data() - x.data()).norm() < 1e-12);

  const PointSet empty = project_onto(x, Basis(4));
  CHECK(empty.size() == 10);
  CHECK(empty.dim() == 0);

  const Basis b = testutil::random_basis(4, 2, 56);
  const PointSet coords = project_onto(x, b);
  const Vector r = residual_norms(x, b);
  for (Index i = 0; i < x.size(); ++i) {
    const double lhs = x.point(i).squaredNorm();
    const double rhs = coords.point(i).squaredNorm() + r(i) * r(i);
    CHECK(lhs == Approx(rhs).margin(1e-8));
  }
}

TEST_CASE("residual norms satisfy the Pythagorean identity and shrink as spans grow") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng{Seed(1000 + s)};
    const Index d = 3 + static_cast<Index>(rng.next_index(5));
    const Index m = 1 + static_cast<Index>(rng.next_index(static_cast<std::size_t>(d - 1)));
    const Basis b = testutil::random_basis(d, m, 2000 + s);
    Vector x(d);
    for (Index i = 0; i < d; ++i) x(i) = 3.0 * rng.next_gaussian();

    const double res = residual_norm(x, b);
    const double proj = (b.vectors() * (b.vectors().transpose() * x)).squaredNorm();
    CHECK(res * res + proj == Approx(x.squaredNorm()).margin(1e-8 * x.squaredNorm() + 1e-14));

    // grow the span by one extra direction
    Matrix bigger(d, m + 1);
    bigger.leftCols(m) = b.vectors();
    for (Index i = 0; i < d; ++i) bigger(i, m) = rng.next_gaussian();
    const Basis b2 = orthonormalize(bigger);
    CHECK(residual_norm(x, b2) <= res + 1e-9);
  }
}

TEST_CASE("Basis constructor validates orthonormality") {
  Matrix bad(3, 2);
  bad << 1, 1, 0, 1, 0, 0;
  CHECK_THROWS_AS(Basis(bad), InvalidArgument);
  CHECK_NOTHROW(Basis(Matrix(Matrix::Identity(3, 2))));
}
