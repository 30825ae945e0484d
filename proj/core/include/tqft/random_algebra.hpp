#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tqft/frobenius.hpp"
#include "tqft/hermitian.hpp"
#include "tqft/linalg.hpp"

namespace tqft {

/// A Frobenius algebra built from C^n with idempotent weights, written in a
/// random complex basis. The weights and the basis change are kept so tests
/// can compare against them.
struct HiddenDiagonalAlgebra {
  FrobeniusAlgebra algebra;
  /// h(x, y) = β(x, J(y)) for the hidden conjugation J; positive-definite
  /// whenever all weights are positive.
  HermitianStructure hermitian;
  std::vector<double> weights;
  /// Columns are the new basis vectors in idempotent coordinates.
  Matrix change_of_basis;
  /// Complex conjugation of idempotent coordinates, in the new basis.
  ConjugateLinearMap involution;
};

struct RandomAlgebraOptions {
  std::size_t dim = 3;
  double min_weight = 0.1;
  double max_weight = 10.0;
  double max_condition = 10.0;
  /// Forces the basis change to be real.
  bool real_basis = false;
};

/// Haar-like random unitary from the QR factorization of a Gaussian matrix.
Matrix random_unitary(std::size_t n, std::mt19937_64& rng, bool real = false);
/// Random invertible matrix U·diag(s)·V^H with singular values in
/// [1, max_condition].
Matrix random_conditioned(std::size_t n, double max_condition, std::mt19937_64& rng, bool real = false);

/// Weights sampled log-uniformly in [min_weight, max_weight].
HiddenDiagonalAlgebra random_hidden_diagonal(const RandomAlgebraOptions& options, std::mt19937_64& rng);
/// Same construction with explicit weights (may be negative or repeated).
HiddenDiagonalAlgebra hidden_diagonal(std::span<const double> weights, const Matrix& change_of_basis);

}  // namespace tqft
