#include "tqft/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Dense>

namespace tqft {
namespace {

using EigenMatrix = Eigen::MatrixXcd;

EigenMatrix to_eigen(const Matrix& m) {
  EigenMatrix out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
    }
  }
  return out;
}

Matrix from_eigen(const EigenMatrix& m) {
  Matrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = m(r, c);
    }
  }
  return out;
}

std::string shape(const Matrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch(std::string(what) + ": " + shape(a) + " vs " + shape(b));
  }
}

}  // namespace

Scalar make_scalar(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw NonFiniteValue("non-finite scalar component");
  }
  return {re, im};
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw DimensionMismatch("matrix entry count " + std::to_string(entries_.size()) + " does not match " +
                            std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionMismatch("ragged matrix literal");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const Scalar> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::column(std::span<const Scalar> v) { return Matrix(v.size(), 1, {v.begin(), v.end()}); }

Matrix Matrix::row(std::span<const Scalar> v) { return Matrix(1, v.size(), {v.begin(), v.end()}); }

Matrix Matrix::basis_vector(std::size_t n, std::size_t k) {
  Matrix v(n, 1);
  v[k] = 1.0;
  return v;
}

Matrix Matrix::col(std::size_t c) const {
  Matrix v(rows_, 1);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Matrix::set_col(std::size_t c, const Matrix& v) {
  if (v.size() != rows_) throw DimensionMismatch("set_col: length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

std::vector<Scalar> Matrix::diagonal_entries() const {
  std::vector<Scalar> d(std::min(rows_, cols_));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = (*this)(i, i);
  return d;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Matrix Matrix::conjugate() const {
  Matrix out = *this;
  for (auto& x : out.entries_) x = std::conj(x);
  return out;
}

Matrix Matrix::adjoint() const { return transpose().conjugate(); }

Matrix Matrix::real_part() const {
  Matrix out = *this;
  for (auto& x : out.entries_) x = x.real();
  return out;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require_same_shape(*this, o, "matrix sum");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  require_same_shape(*this, o, "matrix difference");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

Matrix& Matrix::operator*=(Scalar s) {
  for (auto& x : entries_) x *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) { return matmul(a, b); }

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("matmul: " + shape(a) + " * " + shape(b));
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar aik = a(i, k);
      if (aik == Scalar{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Scalar aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
      }
    }
  }
  return out;
}

Matrix kron_power(const Matrix& a, std::size_t k) {
  Matrix out = Matrix::identity(1);
  for (std::size_t i = 0; i < k; ++i) out = kron(out, a);
  return out;
}

Scalar trace(const Matrix& a) {
  if (!a.is_square()) throw DimensionMismatch("trace of non-square " + shape(a));
  Scalar t{};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

double norm_frobenius(const Matrix& a) {
  double s = 0.0;
  for (const auto& x : a.entries()) s += std::norm(x);
  return std::sqrt(s);
}

double norm_max(const Matrix& a) {
  double m = 0.0;
  for (const auto& x : a.entries()) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> singular_values(const Matrix& a) {
  if (a.size() == 0) return {};
  Eigen::JacobiSVD<EigenMatrix> svd(to_eigen(a));
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

double norm_operator(const Matrix& a) {
  const auto s = singular_values(a);
  return s.empty() ? 0.0 : s.front();
}

double relative_residual(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "residual");
  const double scale = std::max({1.0, norm_frobenius(a), norm_frobenius(b)});
  return norm_frobenius(a - b) / scale;
}

Matrix solve(const Matrix& a, const Matrix& b, double tol) {
  if (!a.is_square()) throw DimensionMismatch("solve: non-square " + shape(a));
  if (a.rows() != b.rows()) throw DimensionMismatch("solve: " + shape(a) + " vs rhs " + shape(b));
  if (a.rows() == 0) return b;
  Eigen::JacobiSVD<EigenMatrix> svd(to_eigen(a), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  if (!(smin > tol * smax)) {
    throw SingularMatrix("matrix is singular at tolerance: smallest singular value " + std::to_string(smin) +
                         ", largest " + std::to_string(smax));
  }
  return from_eigen(svd.solve(to_eigen(b)));
}

Matrix inverse(const Matrix& a, double tol) { return solve(a, Matrix::identity(a.rows()), tol); }

HermitianEigen hermitian_eigen(const Matrix& a) {
  if (!a.is_square()) throw DimensionMismatch("hermitian_eigen: non-square " + shape(a));
  if (a.rows() == 0) return {{}, Matrix()};
  Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(to_eigen(a));
  const auto& v = solver.eigenvalues();
  return {{v.data(), v.data() + v.size()}, from_eigen(solver.eigenvectors())};
}

std::vector<Scalar> eigenvalues(const Matrix& a) {
  if (!a.is_square()) throw DimensionMismatch("eigenvalues: non-square " + shape(a));
  if (a.rows() == 0) return {};
  Eigen::ComplexEigenSolver<EigenMatrix> solver(to_eigen(a), false);
  const auto& v = solver.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

namespace {

constexpr double kClusterWidth = 1e-6;
constexpr int kMaxSplitAttempts = 8;

struct Refiner {
  std::span<const Matrix> ops;
  const Matrix& form;
  double tol;
  std::vector<double> op_scales;
  std::mt19937_64 rng;
  std::vector<Matrix> accepted;

  // Restriction of op to the span of q (q^H·form·q = I).
  Matrix restrict(const Matrix& op, const Matrix& q) const {
    Matrix r = q.adjoint() * form * op * q;
    return 0.5 * (r + r.adjoint());
  }

  void refine(const Matrix& q) {
    const std::size_t k = q.cols();
    if (k == 1) {
      accepted.push_back(q);
      return;
    }
    std::vector<Matrix> traceless;
    traceless.reserve(ops.size());
    bool scalar_block = true;
    for (std::size_t j = 0; j < ops.size(); ++j) {
      Matrix r = restrict(ops[j], q);
      const Scalar mean = trace(r) / static_cast<double>(k);
      r -= mean * Matrix::identity(k);
      if (norm_frobenius(r) > tol * std::max(1.0, op_scales[j])) scalar_block = false;
      traceless.push_back(std::move(r));
    }
    if (scalar_block) {
      accepted.push_back(q);
      return;
    }

    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    for (int attempt = 0; attempt < kMaxSplitAttempts; ++attempt) {
      Matrix combo(k, k);
      for (const auto& r : traceless) combo += coeff(rng) * r;
      const HermitianEigen eig = hermitian_eigen(combo);
      double radius = 0.0;
      for (double v : eig.values) radius = std::max(radius, std::abs(v));
      const double width = kClusterWidth * radius;

      std::vector<std::vector<std::size_t>> clusters{{0}};
      for (std::size_t i = 1; i < k; ++i) {
        if (eig.values[i] - eig.values[i - 1] <= width) {
          clusters.back().push_back(i);
        } else {
          clusters.push_back({i});
        }
      }
      if (clusters.size() == 1) continue;

      const Matrix rotated = q * eig.vectors;
      for (const auto& cluster : clusters) {
        Matrix sub(q.rows(), cluster.size());
        for (std::size_t c = 0; c < cluster.size(); ++c) sub.set_col(c, rotated.col(cluster[c]));
        refine(sub);
      }
      return;
    }
    throw NotCommuting("simultaneous_diagonalize: could not split a non-scalar block; the family is not "
                       "simultaneously diagonalizable at tolerance");
  }
};

}  // namespace

SimultaneousDiagonalization simultaneous_diagonalize(std::span<const Matrix> ops, const Matrix& form, double tol,
                                                     std::uint64_t seed) {
  if (!form.is_square()) throw DimensionMismatch("simultaneous_diagonalize: form " + shape(form));
  const std::size_t n = form.rows();
  for (const auto& op : ops) {
    if (op.rows() != n || op.cols() != n) {
      throw DimensionMismatch("simultaneous_diagonalize: op " + shape(op) + " vs form " + shape(form));
    }
  }
  if (relative_residual(form, form.adjoint()) > tol) {
    throw FormNotPositive("simultaneous_diagonalize: form is not Hermitian");
  }

  const HermitianEigen form_eig = hermitian_eigen(form);
  const double form_scale = n == 0 ? 1.0 : std::max(1.0, std::abs(form_eig.values.back()));
  for (double v : form_eig.values) {
    if (v <= tol * form_scale) {
      throw FormNotPositive("simultaneous_diagonalize: form eigenvalue " + std::to_string(v) + " is not positive");
    }
  }

  std::vector<double> scales;
  scales.reserve(ops.size());
  for (const auto& op : ops) scales.push_back(norm_frobenius(op));
  for (std::size_t a = 0; a < ops.size(); ++a) {
    for (std::size_t b = a + 1; b < ops.size(); ++b) {
      const double residual = norm_frobenius(ops[a] * ops[b] - ops[b] * ops[a]);
      if (residual > tol * std::max(1.0, scales[a] * scales[b])) {
        throw NotCommuting("simultaneous_diagonalize: ops " + std::to_string(a) + " and " + std::to_string(b) +
                           " have commutator norm " + std::to_string(residual));
      }
    }
  }

  SimultaneousDiagonalization result;
  if (n == 0) {
    result.diagonals.assign(ops.size(), {});
    return result;
  }

  Matrix q0 = form_eig.vectors;
  for (std::size_t c = 0; c < n; ++c) {
    const double s = 1.0 / std::sqrt(form_eig.values[c]);
    for (std::size_t r = 0; r < n; ++r) q0(r, c) *= s;
  }

  Refiner refiner{ops, form, tol, scales, std::mt19937_64(seed), {}};
  refiner.refine(q0);

  result.basis = Matrix(n, n);
  std::size_t col = 0;
  for (const auto& block : refiner.accepted) {
    for (std::size_t c = 0; c < block.cols(); ++c) result.basis.set_col(col++, block.col(c));
  }

  const Matrix left = result.basis.adjoint() * form;
  for (const auto& op : ops) {
    result.diagonals.push_back((left * op * result.basis).diagonal_entries());
  }
  return result;
}

}  // namespace tqft
