#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tqft/linalg.hpp"

using tqft::Matrix;
using tqft::Scalar;

namespace {

Matrix diag(std::initializer_list<double> d) { return Matrix::diagonal(std::vector<double>(d)); }

// Off-diagonal mass of P⁻¹·op·P.
double off_diagonal(const Matrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("kron on small cases") {
  CHECK(tqft::kron(Matrix::identity(2), Matrix::identity(2)) == Matrix::identity(4));
  CHECK(tqft::kron(Matrix{{2.0}}, Matrix{{3.0}}) == Matrix{{6.0}});
  // diag(1,2) ⊗ diag(3,4) = diag(1·3, 1·4, 2·3, 2·4)
  CHECK(tqft::kron(diag({1, 2}), diag({3, 4})) == diag({3, 4, 6, 8}));
}

TEST_CASE("kron matches the index formula and is associative") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = oracle::random_matrix(1 + trial % 3, 2, rng);
    const Matrix b = oracle::random_matrix(2, 1 + trial % 2, rng);
    const Matrix c = oracle::random_matrix(3, 2, rng);
    CHECK(oracle::distance(tqft::kron(a, b), oracle::kronecker(a, b)) == 0.0);
    CHECK(oracle::distance(tqft::kron(tqft::kron(a, b), c), tqft::kron(a, tqft::kron(b, c))) < 1e-15);
  }
  CHECK(tqft::kron_power(diag({2}), 0) == Matrix::identity(1));
  CHECK(tqft::kron_power(diag({1, 2}), 2) == diag({1, 2, 2, 4}));
}

TEST_CASE("matrix product agrees with the triple loop") {
  std::mt19937_64 rng(11);
  const Matrix a = oracle::random_matrix(3, 4, rng);
  const Matrix b = oracle::random_matrix(4, 2, rng);
  CHECK(oracle::distance(a * b, oracle::product(a, b)) < 1e-15);
  CHECK_THROWS_AS(a * a, tqft::DimensionMismatch);
}

TEST_CASE("solve") {
  const Matrix b{{1.0}, {Scalar(2.0, -1.0)}};
  CHECK(tqft::solve(Matrix::identity(2), b) == b);
  CHECK(tqft::relative_residual(tqft::solve(diag({2}), Matrix{{4.0}}), Matrix{{2.0}}) < 1e-15);
  const Matrix rank_one{{1.0, 2.0}, {2.0, 4.0}};
  CHECK_THROWS_AS(tqft::solve(rank_one, b), tqft::SingularMatrix);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = oracle::random_matrix(4, 4, rng);
    CHECK(oracle::distance(tqft::inverse(a), oracle::gauss_jordan_inverse(a)) < 1e-10);
  }
}

TEST_CASE("make_scalar rejects non-finite parts") {
  CHECK_THROWS_AS(tqft::make_scalar(std::numeric_limits<double>::quiet_NaN()), tqft::NonFiniteValue);
  CHECK_THROWS_AS(tqft::make_scalar(0.0, std::numeric_limits<double>::infinity()), tqft::NonFiniteValue);
  CHECK(tqft::make_scalar(1.0, -2.0) == Scalar(1.0, -2.0));
}

TEST_CASE("hermitian_eigen reconstructs the matrix") {
  std::mt19937_64 rng(5);
  const Matrix h = oracle::random_hermitian(5, rng);
  const auto eig = tqft::hermitian_eigen(h);
  CHECK(std::is_sorted(eig.values.begin(), eig.values.end()));
  const Matrix back = eig.vectors * Matrix::diagonal(eig.values) * eig.vectors.adjoint();
  CHECK(tqft::relative_residual(back, h) < 1e-12);
  CHECK(tqft::relative_residual(eig.vectors.adjoint() * eig.vectors, Matrix::identity(5)) < 1e-12);
}

TEST_CASE("singular values and norms") {
  const auto sv = tqft::singular_values(diag({-3, 1, 2}));
  REQUIRE(sv.size() == 3);
  CHECK(sv[0] == doctest::Approx(3.0));
  CHECK(sv[2] == doctest::Approx(1.0));
  CHECK(tqft::norm_operator(diag({-3, 1})) == doctest::Approx(3.0));
  CHECK(tqft::norm_max(Matrix{{1.0, Scalar(0.0, -4.0)}}) == 4.0);
  CHECK(tqft::norm_frobenius(Matrix{{3.0, 4.0}}) == 5.0);
  CHECK(tqft::trace(diag({1, 2, 3})) == Scalar(6.0));
}

TEST_CASE("conjugate-linear composition reduces to mat1 · conj(mat2)") {
  std::mt19937_64 rng(13);
  const tqft::ConjugateLinearMap j1{oracle::random_matrix(3, 3, rng)};
  const tqft::ConjugateLinearMap j2{oracle::random_matrix(3, 3, rng)};
  const Matrix v = oracle::random_matrix(3, 1, rng);
  const Matrix composed = j1.compose(j2);
  CHECK(tqft::relative_residual(composed, j1.mat * j2.mat.conjugate()) == 0.0);
  // The composite of two conjugate-linear maps is linear.
  CHECK(tqft::relative_residual(j1.apply(j2.apply(v)), composed * v) < 1e-14);
}

TEST_CASE("simultaneous_diagonalize on small families") {
  SUBCASE("identity family") {
    const std::vector<Matrix> ops{Matrix::identity(3)};
    const auto d = tqft::simultaneous_diagonalize(ops, Matrix::identity(3));
    CHECK(tqft::relative_residual(d.basis.adjoint() * d.basis, Matrix::identity(3)) < 1e-12);
    for (const Scalar& x : d.diagonals[0]) CHECK(std::abs(x - 1.0) < 1e-12);
  }
  SUBCASE("already diagonal") {
    const std::vector<Matrix> ops{diag({1, 2})};
    const auto d = tqft::simultaneous_diagonalize(ops, Matrix::identity(2));
    std::vector<double> values;
    for (const Scalar& x : d.diagonals[0]) values.push_back(x.real());
    std::sort(values.begin(), values.end());
    CHECK(values[0] == doctest::Approx(1.0));
    CHECK(values[1] == doctest::Approx(2.0));
    // Columns are standard basis vectors up to phase.
    for (std::size_t c = 0; c < 2; ++c) {
      const double big = std::max(std::abs(d.basis(0, c)), std::abs(d.basis(1, c)));
      const double small = std::min(std::abs(d.basis(0, c)), std::abs(d.basis(1, c)));
      CHECK(big == doctest::Approx(1.0));
      CHECK(small < 1e-12);
    }
  }
  SUBCASE("left multiplication of the Z/2 group algebra") {
    // L(1) = I, L(g) swaps the two coordinates. The joint eigenvectors are
    // (1, ±1)/√2 with L(g) eigenvalues ±1.
    const std::vector<Matrix> ops{Matrix::identity(2), Matrix{{0.0, 1.0}, {1.0, 0.0}}};
    const auto d = tqft::simultaneous_diagonalize(ops, Matrix::identity(2));
    std::vector<double> signs;
    for (std::size_t c = 0; c < 2; ++c) {
      CHECK(std::abs(d.diagonals[0][c] - 1.0) < 1e-12);
      const Scalar ratio = d.basis(1, c) / d.basis(0, c);
      CHECK(std::abs(std::abs(d.basis(0, c)) - 1.0 / std::sqrt(2.0)) < 1e-12);
      CHECK(std::abs(ratio - d.diagonals[1][c]) < 1e-12);
      signs.push_back(d.diagonals[1][c].real());
    }
    std::sort(signs.begin(), signs.end());
    CHECK(signs[0] == doctest::Approx(-1.0));
    CHECK(signs[1] == doctest::Approx(1.0));
  }
}

TEST_CASE("simultaneous_diagonalize property: commuting self-adjoint families") {
  const double tol = tqft::kDefaultTol;
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 1 + trial % 6;
    // form = S^{-H} S^{-1} makes S·D·S^{-1} self-adjoint for real diagonal D.
    const Matrix s = oracle::random_matrix(n, n, rng) + Matrix::identity(n) * Scalar(3.0);
    const Matrix s_inv = oracle::gauss_jordan_inverse(s);
    const Matrix form = s_inv.adjoint() * s_inv;
    std::vector<Matrix> ops;
    std::uniform_int_distribution<int> level(0, 2);  // few levels, so eigenvalues repeat
    for (int k = 0; k < 3; ++k) {
      std::vector<double> d(n);
      for (auto& x : d) x = level(rng);
      ops.push_back(s * Matrix::diagonal(d) * s_inv);
    }
    const auto result = tqft::simultaneous_diagonalize(ops, form, tol);
    const Matrix& p = result.basis;
    CHECK(tqft::relative_residual(p.adjoint() * form * p, Matrix::identity(n)) <= 10 * tol);
    const Matrix p_inv = oracle::gauss_jordan_inverse(p);
    for (std::size_t k = 0; k < ops.size(); ++k) {
      const Matrix t = p_inv * ops[k] * p;
      CHECK(off_diagonal(t) <= 10 * tol * std::max(1.0, tqft::norm_frobenius(ops[k])));
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(t(i, i) - result.diagonals[k][i]) < 1e-8);
    }
  }
}

TEST_CASE("simultaneous_diagonalize errors") {
  const std::vector<Matrix> noncommuting{diag({1, 2}), Matrix{{0.0, 1.0}, {1.0, 0.0}}};
  CHECK_THROWS_AS(tqft::simultaneous_diagonalize(noncommuting, Matrix::identity(2)), tqft::NotCommuting);
  const std::vector<Matrix> ops{diag({1, 2})};
  CHECK_THROWS_AS(tqft::simultaneous_diagonalize(ops, diag({1, -1})), tqft::FormNotPositive);
  CHECK_THROWS_AS(tqft::simultaneous_diagonalize(ops, Matrix::identity(3)), tqft::DimensionMismatch);
}
