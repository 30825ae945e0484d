#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tqft/linalg.hpp"

namespace tqft {

/// A finite-dimensional commutative Frobenius algebra over C, stored in a fixed
/// basis b_0..b_{n-1}.
///
/// Multiplication is given by structure constants: mul(b_i, b_j) = Σ_k c[i][j][k] b_k.
/// The unit is a column vector and the counit (Frobenius form) a row vector.
/// Construction checks shapes and finiteness only; the algebraic axioms are
/// reported by verify_axioms().
class FrobeniusAlgebra {
 public:
  /// `structure` is indexed [(i * n + j) * n + k].
  FrobeniusAlgebra(std::size_t dim, std::vector<Scalar> structure, std::vector<Scalar> unit,
                   std::vector<Scalar> counit);

  std::size_t dim() const { return dim_; }
  const Scalar& structure_constant(std::size_t i, std::size_t j, std::size_t k) const {
    return structure_[(i * dim_ + j) * dim_ + k];
  }
  std::span<const Scalar> structure() const { return structure_; }

  /// n x n² matrix of mul: V ⊗ V → V.
  const Matrix& mul_matrix() const { return mul_; }
  /// n x 1.
  const Matrix& unit() const { return unit_; }
  /// 1 x n.
  const Matrix& counit() const { return counit_; }

  Matrix multiply(const Matrix& x, const Matrix& y) const;
  Scalar counit_of(const Matrix& x) const;
  /// Matrix of y ↦ mul(x, y).
  Matrix left_multiplication(const Matrix& x) const;

  /// Same algebra expressed in the basis given by the columns of `basis`
  /// (coordinates in the current basis).
  FrobeniusAlgebra change_basis(const Matrix& basis, double tol = kDefaultTol) const;

 private:
  std::size_t dim_;
  std::vector<Scalar> structure_;
  Matrix mul_;
  Matrix unit_;
  Matrix counit_;
};

/// The commutative algebra C^n with idempotent basis and the given counit values.
FrobeniusAlgebra diagonal_algebra(std::span<const double> weights);

struct AxiomCheck {
  std::string name;
  double residual = 0.0;
  bool pass = false;
};

/// Per-axiom residuals. Nondegeneracy reports the smallest singular value of
/// the pairing matrix relative to the largest; the snake and Frobenius
/// relations are only evaluated when the pairing is nondegenerate.
struct AxiomReport {
  std::vector<AxiomCheck> checks;

  bool pass() const;
  const AxiomCheck* find(std::string_view name) const;
};

AxiomReport verify_axioms(const FrobeniusAlgebra& a, double tol = kDefaultTol);

/// β(x, y) = ε(mul(x, y)).
Scalar pairing(const FrobeniusAlgebra& a, const Matrix& x, const Matrix& y);
/// B[i][j] = β(b_i, b_j).
Matrix pairing_matrix(const FrobeniusAlgebra& a);

/// γ ∈ V ⊗ V as an n² x 1 column, γ = Σ_ij (B⁻¹)[i][j] b_i ⊗ b_j.
Matrix copairing(const FrobeniusAlgebra& a, double tol = kDefaultTol);
/// δ = (id ⊗ mul)(γ ⊗ id): an n² x n matrix.
Matrix comultiplication(const FrobeniusAlgebra& a, double tol = kDefaultTol);
/// H = mul ∘ δ.
Matrix handle_operator(const FrobeniusAlgebra& a, double tol = kDefaultTol);
/// ε(H^g(η)), the value of the closed genus-g surface.
Scalar closed_surface(const FrobeniusAlgebra& a, std::size_t genus, double tol = kDefaultTol);

struct DerivedStructures {
  Matrix beta;
  Matrix gamma;
  Matrix comul;
  Matrix handle;
};

DerivedStructures derive(const FrobeniusAlgebra& a, double tol = kDefaultTol);

/// ‖(id ⊗ β)(γ ⊗ id) − id‖, relative.
double snake_residual(const FrobeniusAlgebra& a, const Matrix& gamma);
/// max of ‖(id⊗mul)(δ⊗id) − δ∘mul‖ and ‖(mul⊗id)(id⊗δ) − δ∘mul‖, relative.
double frobenius_relation_residual(const FrobeniusAlgebra& a, const Matrix& comul);

}  // namespace tqft
