#include "tqft/unitary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace tqft {
namespace {

bool lexicographic_less(const Matrix& x, const Matrix& y, double resolution) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xr = std::round(x[i].real() / resolution), yr = std::round(y[i].real() / resolution);
    if (xr != yr) return xr < yr;
    const double xi = std::round(x[i].imag() / resolution), yi = std::round(y[i].imag() / resolution);
    if (xi != yi) return xi < yi;
  }
  return false;
}

double algebra_distance(const FrobeniusAlgebra& x, const FrobeniusAlgebra& y) {
  return std::max({relative_residual(x.mul_matrix(), y.mul_matrix()), relative_residual(x.unit(), y.unit()),
                   relative_residual(x.counit(), y.counit())});
}

}  // namespace

Matrix UnitaryClassification::idempotent_coordinates(const Matrix& x, double tol) const {
  return solve(idempotents, x, tol);
}

UnitaryClassification classify(const FrobeniusAlgebra& a, const HermitianStructure& h, double tol) {
  const std::size_t n = a.dim();
  if (!h.is_positive_definite(tol)) {
    const auto sig = h.signature(tol);
    throw NotPositiveDefinite("Hermitian form is not positive-definite (signature +" + std::to_string(sig.positive) +
                              " -" + std::to_string(sig.negative) + ")");
  }
  const RealForm real = build_involution(a, h, tol);
  const FrobeniusAlgebra& a0 = real.real_algebra;

  // φ(b) for the real basis; β-symmetric and pairwise commuting.
  const Matrix beta0 = pairing_matrix(a0);
  std::vector<Matrix> ops;
  ops.reserve(n);
  for (std::size_t k = 0; k < n; ++k) ops.push_back(a0.left_multiplication(Matrix::basis_vector(n, k)));
  const SimultaneousDiagonalization sd = simultaneous_diagonalize(ops, beta0, tol);

  // η = Σ_i c_i p_i and e_i = c_i p_i; P^{-1} = P^H β0 since P is β0-orthonormal.
  const Matrix coeffs = sd.basis.adjoint() * beta0 * a0.unit();
  Matrix idempotents0(n, n);
  for (std::size_t i = 0; i < n; ++i) idempotents0.set_col(i, coeffs[i] * sd.basis.col(i));
  const Matrix idempotents = real.basis * idempotents0;

  struct Entry {
    Matrix vector;
    Scalar weight;
  };
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < n; ++i) {
    Matrix e = idempotents.col(i);
    const Scalar w = a.counit_of(e);
    entries.push_back({std::move(e), w});
  }
  double weight_scale = 0.0;
  for (const auto& e : entries) weight_scale = std::max(weight_scale, std::abs(e.weight));
  const double tie = tol * std::max(1.0, weight_scale);
  std::sort(entries.begin(), entries.end(),
            [](const Entry& x, const Entry& y) { return x.weight.real() < y.weight.real(); });
  for (std::size_t begin = 0; begin < n;) {
    std::size_t end = begin + 1;
    while (end < n && entries[end].weight.real() - entries[end - 1].weight.real() <= tie) ++end;
    std::sort(entries.begin() + static_cast<std::ptrdiff_t>(begin), entries.begin() + static_cast<std::ptrdiff_t>(end),
              [tol](const Entry& x, const Entry& y) { return lexicographic_less(x.vector, y.vector, tol); });
    begin = end;
  }

  UnitaryClassification c;
  c.idempotents = Matrix(n, n);
  c.involution = real.involution;
  for (std::size_t i = 0; i < n; ++i) {
    c.idempotents.set_col(i, entries[i].vector);
    const Scalar w = entries[i].weight;
    c.residuals.weight_imaginary = std::max(c.residuals.weight_imaginary, std::abs(w.imag()) / std::max(1e-300, std::abs(w)));
    if (!(w.real() > tol * std::max(1.0, weight_scale))) {
      throw NotPositiveDefinite("idempotent weight " + std::to_string(w.real()) + " is not positive");
    }
    c.weights.push_back(w.real());
    c.lambdas.push_back(1.0 / w.real());
  }

  double idem = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Matrix ei = c.idempotents.col(i);
      const Matrix product = a.multiply(ei, c.idempotents.col(j));
      const Matrix expected = i == j ? ei : Matrix(n, 1);
      idem = std::max(idem, relative_residual(product, expected));
    }
  }
  c.residuals.idempotent = idem;

  Matrix sum(n, 1);
  for (std::size_t i = 0; i < n; ++i) sum += c.idempotents.col(i);
  c.residuals.unit_decomposition = relative_residual(sum, a.unit());

  const FrobeniusAlgebra rebuilt = diagonal_algebra(c.weights).change_basis(inverse(c.idempotents, tol), tol);
  c.residuals.reconstruction = algebra_distance(rebuilt, a);
  return c;
}

std::vector<double> handle_spectrum(const UnitaryClassification& c) { return c.lambdas; }

std::vector<double> closed_surface_series(const UnitaryClassification& c, std::size_t max_genus) {
  std::vector<double> series;
  series.reserve(max_genus + 1);
  for (std::size_t g = 0; g <= max_genus; ++g) {
    double s = 0.0;
    for (double w : c.weights) s += std::pow(w, 1.0 - static_cast<double>(g));
    series.push_back(s);
  }
  return series;
}

CStarReport cstar_check(const FrobeniusAlgebra& a, const UnitaryClassification& c, std::size_t samples,
                        std::uint64_t seed, double tol) {
  const std::size_t n = a.dim();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  const Matrix to_idempotent = inverse(c.idempotents, tol);
  auto sup_norm = [&](const Matrix& x) { return norm_max(to_idempotent * x); };

  CStarReport report;
  report.samples = samples;
  report.positivity_margin = samples == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  bool positive = true;
  for (std::size_t s = 0; s < samples; ++s) {
    Matrix z(n, 1);
    do {
      for (std::size_t i = 0; i < n; ++i) z[i] = Scalar(coord(rng), coord(rng));
    } while (norm_max(z) < 0.1);

    const Matrix x = c.idempotents * z;
    const Matrix jx = c.involution.apply(x);
    const Matrix product = a.multiply(jx, x);

    const double nx = sup_norm(x);
    const double njx = sup_norm(jx);
    const double nprod = sup_norm(product);
    report.norm_identity_deviation = std::max(report.norm_identity_deviation, std::abs(nprod - nx * njx) / (nx * njx));

    const Scalar value = pairing(a, jx, x);
    double expected = 0.0;
    for (std::size_t i = 0; i < n; ++i) expected += c.weights[i] * std::norm(z[i]);
    report.positivity_imaginary = std::max(report.positivity_imaginary, std::abs(value.imag()) / std::abs(value));
    report.positivity_deviation = std::max(report.positivity_deviation, std::abs(value - expected) / expected);
    const double margin = value.real() / (nx * nx);
    report.positivity_margin = std::min(report.positivity_margin, margin);
    if (!(margin > tol)) positive = false;
  }
  report.pass = positive && report.norm_identity_deviation <= tol && report.positivity_imaginary <= tol &&
                report.positivity_deviation <= tol;
  return report;
}

CStarReport cstar_check(const FrobeniusAlgebra& a, const HermitianStructure& h, std::size_t samples,
                        std::uint64_t seed, double tol) {
  return cstar_check(a, classify(a, h, tol), samples, seed, tol);
}

}  // namespace tqft
