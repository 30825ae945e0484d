#pragma once

#include <cstdint>
#include <vector>

#include "tqft/frobenius.hpp"
#include "tqft/hermitian.hpp"
#include "tqft/linalg.hpp"

namespace tqft {

/// Decomposition of unitary TQFT data into positive one-dimensional pieces:
/// idempotents e_i with e_i·e_j = δ_ij e_i, weights w_i = ε(e_i) > 0 and
/// handle eigenvalues λ_i = 1/w_i.
///
/// Idempotents are ordered by ascending weight; equal weights are ordered by
/// the lexicographic order of their input-basis coordinates.
struct UnitaryClassification {
  /// Column i holds e_i in input-basis coordinates.
  Matrix idempotents;
  std::vector<double> weights;
  std::vector<double> lambdas;
  ConjugateLinearMap involution;

  struct Residuals {
    double idempotent = 0.0;        // max ‖e_i e_j − δ_ij e_i‖
    double unit_decomposition = 0.0;  // ‖Σ e_i − η‖
    double reconstruction = 0.0;    // distance between the input and Π (C, w_i)
    double weight_imaginary = 0.0;  // max |Im ε(e_i)| / |ε(e_i)|
  } residuals;

  std::size_t dim() const { return weights.size(); }
  /// Coordinates of x in the idempotent basis (the diagonal of φ(x)).
  Matrix idempotent_coordinates(const Matrix& x, double tol = kDefaultTol) const;
};

/// Throws NotPositiveDefinite when h is not positive-definite, IncompatiblePair
/// when (a, h) fails the involution checks, and propagates NotCommuting or
/// RankDeficient from the diagonalization.
UnitaryClassification classify(const FrobeniusAlgebra& a, const HermitianStructure& h, double tol = kDefaultTol);

/// λ_i = 1/w_i in idempotent order.
std::vector<double> handle_spectrum(const UnitaryClassification& c);

/// Σ_i w_i^(1−g) for g = 0..max_genus.
std::vector<double> closed_surface_series(const UnitaryClassification& c, std::size_t max_genus);

struct CStarReport {
  std::size_t samples = 0;
  /// max over samples of |‖J(x)x‖ − ‖x‖·‖J(x)‖| / (‖x‖·‖J(x)‖).
  double norm_identity_deviation = 0.0;
  /// min over samples of Re β(J(x), x) / ‖x‖²; must be strictly positive.
  double positivity_margin = 0.0;
  /// max over samples of |Im β(J(x), x)| / |β(J(x), x)|.
  double positivity_imaginary = 0.0;
  /// max relative deviation of β(J(x), x) from Σ w_i |x_i|².
  double positivity_deviation = 0.0;
  bool pass = false;
};

/// Samples `samples` random x (idempotent coordinates uniform in the unit
/// square, sup-norm at least 0.1) from a stream seeded with `seed`, and checks
/// ‖J(x)x‖ = ‖x‖·‖J(x)‖ for the sup norm of idempotent coordinates together
/// with β(J(x), x) > 0.
CStarReport cstar_check(const FrobeniusAlgebra& a, const UnitaryClassification& c, std::size_t samples,
                        std::uint64_t seed, double tol = kDefaultTol);
CStarReport cstar_check(const FrobeniusAlgebra& a, const HermitianStructure& h, std::size_t samples,
                        std::uint64_t seed, double tol = kDefaultTol);

}  // namespace tqft
