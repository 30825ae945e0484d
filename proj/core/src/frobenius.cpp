#include "tqft/frobenius.hpp"

#include <algorithm>
#include <cmath>

namespace tqft {
namespace {

void require_vector(const Matrix& x, std::size_t n, const char* what) {
  if (x.size() != n) {
    throw DimensionMismatch(std::string(what) + ": expected a vector of length " + std::to_string(n) + ", got " +
                            std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
  }
}

Matrix as_column(const Matrix& x) { return x.cols() == 1 ? x : Matrix(x.size(), 1, {x.entries().begin(), x.entries().end()}); }

}  // namespace

FrobeniusAlgebra::FrobeniusAlgebra(std::size_t dim, std::vector<Scalar> structure, std::vector<Scalar> unit,
                                   std::vector<Scalar> counit)
    : dim_(dim), structure_(std::move(structure)) {
  if (dim_ == 0) throw DimensionMismatch("Frobenius algebra must have positive dimension");
  if (structure_.size() != dim_ * dim_ * dim_) {
    throw DimensionMismatch("structure constants: expected " + std::to_string(dim_ * dim_ * dim_) + " entries, got " +
                            std::to_string(structure_.size()));
  }
  if (unit.size() != dim_) throw DimensionMismatch("unit: expected " + std::to_string(dim_) + " entries");
  if (counit.size() != dim_) throw DimensionMismatch("counit: expected " + std::to_string(dim_) + " entries");
  auto check_finite = [](const std::vector<Scalar>& v, const char* what) {
    for (const auto& x : v) {
      if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
        throw NonFiniteValue(std::string(what) + " contains a non-finite value");
      }
    }
  };
  check_finite(structure_, "structure constants");
  check_finite(unit, "unit");
  check_finite(counit, "counit");

  mul_ = Matrix(dim_, dim_ * dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      for (std::size_t k = 0; k < dim_; ++k) mul_(k, i * dim_ + j) = structure_constant(i, j, k);
    }
  }
  unit_ = Matrix::column(unit);
  counit_ = Matrix::row(counit);
}

Matrix FrobeniusAlgebra::multiply(const Matrix& x, const Matrix& y) const {
  require_vector(x, dim_, "multiply");
  require_vector(y, dim_, "multiply");
  return mul_ * kron(as_column(x), as_column(y));
}

Scalar FrobeniusAlgebra::counit_of(const Matrix& x) const {
  require_vector(x, dim_, "counit");
  return (counit_ * as_column(x))[0];
}

Matrix FrobeniusAlgebra::left_multiplication(const Matrix& x) const {
  require_vector(x, dim_, "left_multiplication");
  return mul_ * kron(as_column(x), Matrix::identity(dim_));
}

FrobeniusAlgebra FrobeniusAlgebra::change_basis(const Matrix& basis, double tol) const {
  if (basis.rows() != dim_ || basis.cols() != dim_) throw DimensionMismatch("change_basis: basis shape");
  const Matrix inv = inverse(basis, tol);
  const Matrix mul = inv * mul_ * kron(basis, basis);
  const Matrix unit = inv * unit_;
  const Matrix counit = counit_ * basis;

  std::vector<Scalar> structure(dim_ * dim_ * dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      for (std::size_t k = 0; k < dim_; ++k) structure[(i * dim_ + j) * dim_ + k] = mul(k, i * dim_ + j);
    }
  }
  return FrobeniusAlgebra(dim_, std::move(structure), {unit.entries().begin(), unit.entries().end()},
                          {counit.entries().begin(), counit.entries().end()});
}

FrobeniusAlgebra diagonal_algebra(std::span<const double> weights) {
  const std::size_t n = weights.size();
  std::vector<Scalar> structure(n * n * n);
  for (std::size_t i = 0; i < n; ++i) structure[(i * n + i) * n + i] = 1.0;
  std::vector<Scalar> unit(n, 1.0);
  std::vector<Scalar> counit(weights.begin(), weights.end());
  return FrobeniusAlgebra(n, std::move(structure), std::move(unit), std::move(counit));
}

bool AxiomReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.pass; });
}

const AxiomCheck* AxiomReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

AxiomReport verify_axioms(const FrobeniusAlgebra& a, double tol) {
  const std::size_t n = a.dim();
  const Matrix id = Matrix::identity(n);
  const Matrix& mul = a.mul_matrix();
  AxiomReport report;

  const double assoc = relative_residual(mul * kron(mul, id), mul * kron(id, mul));
  report.checks.push_back({"associativity", assoc, assoc <= tol});

  double comm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        comm = std::max(comm, std::abs(a.structure_constant(i, j, k) - a.structure_constant(j, i, k)));
      }
    }
  }
  comm /= std::max(1.0, norm_max(mul));
  report.checks.push_back({"commutativity", comm, comm <= tol});

  const double unit_left = relative_residual(mul * kron(a.unit(), id), id);
  const double unit_right = relative_residual(mul * kron(id, a.unit()), id);
  const double unit = std::max(unit_left, unit_right);
  report.checks.push_back({"unit", unit, unit <= tol});

  const auto sv = singular_values(pairing_matrix(a));
  const double nondegeneracy = sv.front() > 0.0 ? sv.back() / sv.front() : 0.0;
  const bool nondegenerate = nondegeneracy > tol;
  report.checks.push_back({"nondegeneracy", nondegeneracy, nondegenerate});

  if (nondegenerate) {
    const DerivedStructures d = derive(a, tol);
    const double snake = snake_residual(a, d.gamma);
    report.checks.push_back({"snake", snake, snake <= tol});
    const double frob = frobenius_relation_residual(a, d.comul);
    report.checks.push_back({"frobenius_relation", frob, frob <= tol});
  }
  return report;
}

Scalar pairing(const FrobeniusAlgebra& a, const Matrix& x, const Matrix& y) {
  return a.counit_of(a.multiply(x, y));
}

Matrix pairing_matrix(const FrobeniusAlgebra& a) {
  const std::size_t n = a.dim();
  const Matrix flat = a.counit() * a.mul_matrix();
  return Matrix(n, n, {flat.entries().begin(), flat.entries().end()});
}

Matrix copairing(const FrobeniusAlgebra& a, double tol) {
  const std::size_t n = a.dim();
  const Matrix inv = solve(pairing_matrix(a), Matrix::identity(n), tol);
  return Matrix(n * n, 1, {inv.entries().begin(), inv.entries().end()});
}

Matrix comultiplication(const FrobeniusAlgebra& a, double tol) {
  const Matrix id = Matrix::identity(a.dim());
  return kron(id, a.mul_matrix()) * kron(copairing(a, tol), id);
}

Matrix handle_operator(const FrobeniusAlgebra& a, double tol) { return a.mul_matrix() * comultiplication(a, tol); }

Scalar closed_surface(const FrobeniusAlgebra& a, std::size_t genus, double tol) {
  Matrix v = a.unit();
  if (genus > 0) {
    const Matrix h = handle_operator(a, tol);
    for (std::size_t g = 0; g < genus; ++g) v = h * v;
  }
  return a.counit_of(v);
}

DerivedStructures derive(const FrobeniusAlgebra& a, double tol) {
  const Matrix id = Matrix::identity(a.dim());
  DerivedStructures d;
  d.beta = pairing_matrix(a);
  d.gamma = copairing(a, tol);
  d.comul = kron(id, a.mul_matrix()) * kron(d.gamma, id);
  d.handle = a.mul_matrix() * d.comul;
  return d;
}

double snake_residual(const FrobeniusAlgebra& a, const Matrix& gamma) {
  const std::size_t n = a.dim();
  const Matrix id = Matrix::identity(n);
  const Matrix beta = pairing_matrix(a);
  const Matrix beta_row(1, n * n, {beta.entries().begin(), beta.entries().end()});
  return relative_residual(kron(id, beta_row) * kron(gamma, id), id);
}

double frobenius_relation_residual(const FrobeniusAlgebra& a, const Matrix& comul) {
  const Matrix id = Matrix::identity(a.dim());
  const Matrix& mul = a.mul_matrix();
  const Matrix middle = comul * mul;
  const double left = relative_residual(kron(id, mul) * kron(comul, id), middle);
  const double right = relative_residual(kron(mul, id) * kron(id, comul), middle);
  return std::max(left, right);
}

}  // namespace tqft
