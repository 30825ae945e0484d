#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tqft/cobordism.hpp"
#include "tqft/frobenius.hpp"
#include "tqft/linalg.hpp"

namespace tqft {

/// A nondegenerate Hermitian form on C^n with matrix h[i][j] = h(b_i, b_j),
/// linear in the first argument and conjugate-linear in the second:
/// h(x, y) = x^T · h · conj(y).
class HermitianStructure {
 public:
  /// Throws DimensionMismatch for a non-square matrix, NotHermitian when
  /// h[j][i] != conj(h[i][j]) and SingularMatrix when degenerate at tolerance.
  explicit HermitianStructure(Matrix h, double tol = kDefaultTol);

  const Matrix& matrix() const { return h_; }
  std::size_t dim() const { return h_.rows(); }

  Scalar operator()(const Matrix& x, const Matrix& y) const;
  /// The covector h(·, v) as a 1 x n row.
  Matrix to_dual(const Matrix& v) const;

  bool is_positive_definite(double tol = kDefaultTol) const;
  struct Signature {
    std::size_t positive = 0;
    std::size_t negative = 0;
  };
  Signature signature(double tol = kDefaultTol) const;

 private:
  Matrix h_;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

/// Form on V* determined by h*(h(·, v), h(·, w)) = h(w, v). In coordinates of
/// the dual basis its matrix is conj(h)^{-1}.
HermitianStructure induced_dual_form(const HermitianStructure& h, double tol = kDefaultTol);
/// Form on V1 ⊗ V2 with h(v1⊗v2, w1⊗w2) = h1(v1, w1)·h2(v2, w2).
HermitianStructure induced_tensor_form(const HermitianStructure& h1, const HermitianStructure& h2);
/// Form on V^{⊗k}; k = 0 is the standard form on C.
HermitianStructure tensor_power_form(const HermitianStructure& h, std::size_t k);

/// The four consequences of the Hermitian axiom checked on a candidate
/// involution J, defined through h(x, J(y)) = β(x, y).
struct InvolutionCheck {
  std::string name;
  double residual = 0.0;
  bool pass = false;
};

struct InvolutionReport {
  ConjugateLinearMap involution;
  std::vector<InvolutionCheck> checks;  // involutive, fixes_unit, multiplicative, counit_real

  bool pass() const;
  const InvolutionCheck* first_failure() const;
};

class IncompatiblePair : public Error {
 public:
  explicit IncompatiblePair(InvolutionReport report);
  const InvolutionReport& report() const { return report_; }

 private:
  InvolutionReport report_;
};

/// J's matrix for the conjugate-linear map y ↦ J(y) with h(x, J(y)) = β(x, y).
ConjugateLinearMap involution_from_forms(const FrobeniusAlgebra& a, const HermitianStructure& h,
                                         double tol = kDefaultTol);

/// Always evaluates every check; throws only on dimension mismatch or a
/// singular form.
InvolutionReport check_involution(const FrobeniusAlgebra& a, const HermitianStructure& h, double tol = kDefaultTol);

/// The real subalgebra A_0 of J-fixed vectors.
struct RealForm {
  ConjugateLinearMap involution;
  /// Columns span V_0 and are fixed by J; also a complex basis of V.
  Matrix basis;
  /// Structure constants, unit and counit of A in `basis`, real parts only.
  FrobeniusAlgebra real_algebra;
  /// Largest imaginary part seen in the restricted structure constants / counit,
  /// relative to their magnitude.
  double imaginary_residual = 0.0;
  /// ‖A − complexification(A_0)‖ expressed back in the input basis, relative.
  double complexification_residual = 0.0;
  /// Largest deviation |J(v) − v| over the basis, relative.
  double fixed_residual = 0.0;
};

/// Extracts the fixed-point real form from the real spanning set
/// {b_k + J(b_k), i(b_k − J(b_k))} using column-pivoted Gram-Schmidt over R.
/// Throws RankDeficient when the fixed space does not have real dimension n.
RealForm extract_real_form(const FrobeniusAlgebra& a, const ConjugateLinearMap& involution,
                           double tol = kDefaultTol);

/// Runs check_involution, throws IncompatiblePair on any failure, and returns
/// the real form.
RealForm build_involution(const FrobeniusAlgebra& a, const HermitianStructure& h, double tol = kDefaultTol);

/// Residual of h_W(Z(M) v, w) = h_V(v, Z(M*) w) for every basis pair, with
/// the forms on V^{⊗k} induced from h. In matrix form this is
/// ‖Z(M)^T·h_W − h_V·conj(Z(M*))‖, relative.
double verify_adjoint(const FrobeniusAlgebra& a, const HermitianStructure& h, const Cobordism& m,
                      double tol = kDefaultTol);

}  // namespace tqft
