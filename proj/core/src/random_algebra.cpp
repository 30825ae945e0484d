#include "tqft/random_algebra.hpp"

#include <cmath>

namespace tqft {

Matrix random_unitary(std::size_t n, std::mt19937_64& rng, bool real) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) g(r, c) = Scalar(gauss(rng), real ? 0.0 : gauss(rng));
  }
  // Modified Gram-Schmidt, twice for stability.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t c = 0; c < n; ++c) {
      Matrix v = g.col(c);
      for (std::size_t p = 0; p < c; ++p) {
        const Matrix q = g.col(p);
        const Scalar proj = (q.adjoint() * v)[0];
        v -= proj * q;
      }
      v *= Scalar(1.0 / norm_frobenius(v));
      g.set_col(c, v);
    }
  }
  return g;
}

Matrix random_conditioned(std::size_t n, double max_condition, std::mt19937_64& rng, bool real) {
  const Matrix u = random_unitary(n, rng, real);
  const Matrix v = random_unitary(n, rng, real);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> s(n);
  for (auto& x : s) x = std::exp(unit(rng) * std::log(max_condition));
  return u * Matrix::diagonal(std::span<const double>(s)) * v.adjoint();
}

HiddenDiagonalAlgebra hidden_diagonal(std::span<const double> weights, const Matrix& change_of_basis) {
  const Matrix& p = change_of_basis;
  FrobeniusAlgebra algebra = diagonal_algebra(weights).change_basis(p);
  // h(x, y) = Σ_i w_i (P x)_i conj((P y)_i).
  HermitianStructure hermitian(p.transpose() * Matrix::diagonal(weights) * p.conjugate());
  ConjugateLinearMap involution{inverse(p) * p.conjugate()};
  return {std::move(algebra), std::move(hermitian), {weights.begin(), weights.end()}, p, std::move(involution)};
}

HiddenDiagonalAlgebra random_hidden_diagonal(const RandomAlgebraOptions& options, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double lo = std::log(options.min_weight);
  const double hi = std::log(options.max_weight);
  std::vector<double> weights(options.dim);
  for (auto& w : weights) w = std::exp(lo + (hi - lo) * unit(rng));
  const Matrix p = random_conditioned(options.dim, options.max_condition, rng, options.real_basis);
  return hidden_diagonal(weights, p);
}

}  // namespace tqft
