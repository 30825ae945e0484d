#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "tqft/errors.hpp"

namespace tqft {

using Scalar = std::complex<double>;

/// Default relative tolerance for every residual check in the library.
inline constexpr double kDefaultTol = 1e-9;

/// Builds a scalar, rejecting NaN and infinite parts.
Scalar make_scalar(double re, double im = 0.0);

/// Dense row-major complex matrix. Vectors are n x 1 matrices.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries);
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix diagonal(std::span<const Scalar> d);
  static Matrix diagonal(std::span<const double> d);
  static Matrix column(std::span<const Scalar> v);
  static Matrix row(std::span<const Scalar> v);
  /// The k-th standard basis vector of length n.
  static Matrix basis_vector(std::size_t n, std::size_t k);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return entries_.size(); }
  bool is_square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  /// Flat access, mainly for vectors.
  Scalar& operator[](std::size_t i) { return entries_[i]; }
  const Scalar& operator[](std::size_t i) const { return entries_[i]; }

  std::span<const Scalar> entries() const { return entries_; }

  Matrix col(std::size_t c) const;
  void set_col(std::size_t c, const Matrix& v);
  std::vector<Scalar> diagonal_entries() const;

  Matrix transpose() const;
  Matrix conjugate() const;
  /// Conjugate transpose.
  Matrix adjoint() const;
  Matrix real_part() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(Scalar s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, Scalar s) { return a *= s; }
  friend Matrix operator*(Scalar s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> entries_;
};

Matrix matmul(const Matrix& a, const Matrix& b);

/// Kronecker product; the tensor basis is lexicographic with the first factor major.
Matrix kron(const Matrix& a, const Matrix& b);
/// a ⊗ a ⊗ ... (k factors); k = 0 gives the 1x1 identity.
Matrix kron_power(const Matrix& a, std::size_t k);

Scalar trace(const Matrix& a);
double norm_frobenius(const Matrix& a);
/// Largest absolute entry.
double norm_max(const Matrix& a);
/// Largest singular value.
double norm_operator(const Matrix& a);
/// Singular values, descending.
std::vector<double> singular_values(const Matrix& a);

/// ‖a − b‖_F / max(1, ‖a‖_F, ‖b‖_F).
double relative_residual(const Matrix& a, const Matrix& b);

/// Solves a·x = b. Throws SingularMatrix when the smallest singular value of a
/// is at most tol times the largest.
Matrix solve(const Matrix& a, const Matrix& b, double tol = kDefaultTol);
Matrix inverse(const Matrix& a, double tol = kDefaultTol);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // unitary, columns are eigenvectors
};

/// Eigendecomposition of a Hermitian matrix (the strict upper triangle is ignored).
HermitianEigen hermitian_eigen(const Matrix& a);

/// Complex eigenvalues of a general square matrix, unordered.
std::vector<Scalar> eigenvalues(const Matrix& a);

/// A map v ↦ mat · conj(v).
struct ConjugateLinearMap {
  Matrix mat;

  Matrix apply(const Matrix& v) const { return mat * v.conjugate(); }
  /// The linear matrix of this ∘ other.
  Matrix compose(const ConjugateLinearMap& other) const { return mat * other.mat.conjugate(); }
};

struct SimultaneousDiagonalization {
  Matrix basis;                                // columns orthonormal under the form
  std::vector<std::vector<Scalar>> diagonals;  // one entry list per op
};

/// Diagonalizes a commuting family of operators that are self-adjoint for the
/// inner product <x, y> = x^H·form·y, where form is positive-definite
/// Hermitian (op^H·form = form·op). The returned
/// basis P satisfies P^H·form·P = I and P^{-1}·op·P diagonal for every op.
/// A random real combination of the family is diagonalized first; eigenvalue
/// clusters within 1e-6 of the spectral radius are refined recursively.
/// The random stream is seeded deterministically from `seed`.
SimultaneousDiagonalization simultaneous_diagonalize(std::span<const Matrix> ops, const Matrix& form,
                                                     double tol = kDefaultTol, std::uint64_t seed = 0x5eed);

}  // namespace tqft
