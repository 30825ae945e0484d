#include "tqft/hermitian.hpp"

#include <algorithm>
#include <cmath>

namespace tqft {

HermitianStructure::HermitianStructure(Matrix h, double tol) : h_(std::move(h)) {
  if (!h_.is_square() || h_.rows() == 0) throw DimensionMismatch("Hermitian form must be a non-empty square matrix");
  const double asym = relative_residual(h_, h_.adjoint());
  if (asym > tol) {
    throw NotHermitian("form is not conjugate-symmetric (relative residual " + std::to_string(asym) + ")");
  }
  const auto sv = singular_values(h_);
  if (!(sv.back() > tol * sv.front())) {
    throw SingularMatrix("Hermitian form is degenerate (smallest singular value " + std::to_string(sv.back()) + ")");
  }
}

Scalar HermitianStructure::operator()(const Matrix& x, const Matrix& y) const {
  if (x.size() != dim() || y.size() != dim()) throw DimensionMismatch("Hermitian form: vector length");
  Scalar s{};
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) s += x[i] * h_(i, j) * std::conj(y[j]);
  }
  return s;
}

Matrix HermitianStructure::to_dual(const Matrix& v) const {
  if (v.size() != dim()) throw DimensionMismatch("to_dual: vector length");
  const Matrix col(dim(), 1, {v.entries().begin(), v.entries().end()});
  return (h_ * col.conjugate()).transpose();
}

HermitianStructure::Signature HermitianStructure::signature(double tol) const {
  const auto eig = hermitian_eigen(h_);
  double scale = 1.0;
  for (double v : eig.values) scale = std::max(scale, std::abs(v));
  Signature s;
  for (double v : eig.values) {
    if (v > tol * scale) ++s.positive;
    if (v < -tol * scale) ++s.negative;
  }
  return s;
}

bool HermitianStructure::is_positive_definite(double tol) const { return signature(tol).positive == dim(); }

HermitianStructure induced_dual_form(const HermitianStructure& h, double tol) {
  return HermitianStructure(inverse(h.matrix().conjugate(), tol), tol);
}

HermitianStructure induced_tensor_form(const HermitianStructure& h1, const HermitianStructure& h2) {
  return HermitianStructure(kron(h1.matrix(), h2.matrix()));
}

HermitianStructure tensor_power_form(const HermitianStructure& h, std::size_t k) {
  return HermitianStructure(kron_power(h.matrix(), k));
}

bool InvolutionReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const InvolutionCheck& c) { return c.pass; });
}

const InvolutionCheck* InvolutionReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.pass) return &c;
  }
  return nullptr;
}

namespace {

std::string failure_message(const InvolutionReport& report) {
  const InvolutionCheck* failed = report.first_failure();
  std::string msg = "form and algebra are incompatible";
  if (failed != nullptr) msg += ": check '" + failed->name + "' failed (residual " + std::to_string(failed->residual) + ")";
  return msg;
}

}  // namespace

IncompatiblePair::IncompatiblePair(InvolutionReport report)
    : Error(failure_message(report)), report_(std::move(report)) {}

ConjugateLinearMap involution_from_forms(const FrobeniusAlgebra& a, const HermitianStructure& h, double tol) {
  if (a.dim() != h.dim()) throw DimensionMismatch("algebra and Hermitian form have different dimensions");
  // h(x, J(y)) = x^T h conj(J) y must equal x^T B y, so conj(J) = h^{-1} B.
  return {solve(h.matrix().conjugate(), pairing_matrix(a).conjugate(), tol)};
}

InvolutionReport check_involution(const FrobeniusAlgebra& a, const HermitianStructure& h, double tol) {
  const std::size_t n = a.dim();
  InvolutionReport report{involution_from_forms(a, h, tol), {}};
  const ConjugateLinearMap& j = report.involution;
  const Matrix id = Matrix::identity(n);

  const double involutive = relative_residual(j.compose(j), id);
  report.checks.push_back({"involutive", involutive, involutive <= tol});

  const double fixes_unit = relative_residual(j.apply(a.unit()), a.unit());
  report.checks.push_back({"fixes_unit", fixes_unit, fixes_unit <= tol});

  // J(mul(b_i, b_j)) against mul(J b_i, J b_j), all basis pairs at once.
  const Matrix& mul = a.mul_matrix();
  const double multiplicative = relative_residual(j.mat * mul.conjugate(), mul * kron(j.mat, j.mat));
  report.checks.push_back({"multiplicative", multiplicative, multiplicative <= tol});

  // ε on the real spanning set {b_k + J b_k, i(b_k − J b_k)} of the fixed space.
  const Matrix sums = id + j.mat;
  const Matrix diffs = Scalar(0.0, 1.0) * (id - j.mat);
  const Matrix values_sum = a.counit() * sums;
  const Matrix values_diff = a.counit() * diffs;
  double imag = 0.0;
  double scale = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    imag = std::max({imag, std::abs(values_sum[k].imag()), std::abs(values_diff[k].imag())});
    scale = std::max({scale, std::abs(values_sum[k]), std::abs(values_diff[k])});
  }
  const double counit_real = imag / scale;
  report.checks.push_back({"counit_real", counit_real, counit_real <= tol});
  return report;
}

namespace {

double max_imag_ratio(std::span<const Scalar> values) {
  double imag = 0.0;
  double scale = 1.0;
  for (const auto& v : values) {
    imag = std::max(imag, std::abs(v.imag()));
    scale = std::max(scale, std::abs(v));
  }
  return imag / scale;
}

double algebra_distance(const FrobeniusAlgebra& x, const FrobeniusAlgebra& y) {
  return std::max({relative_residual(x.mul_matrix(), y.mul_matrix()), relative_residual(x.unit(), y.unit()),
                   relative_residual(x.counit(), y.counit())});
}

}  // namespace

RealForm extract_real_form(const FrobeniusAlgebra& a, const ConjugateLinearMap& involution, double tol) {
  const std::size_t n = a.dim();
  if (involution.mat.rows() != n || involution.mat.cols() != n) throw DimensionMismatch("involution shape");

  // The 2n spanning vectors, each viewed as a real vector of length 2n.
  const Matrix id = Matrix::identity(n);
  const Matrix sums = id + involution.mat;
  const Matrix diffs = Scalar(0.0, 1.0) * (id - involution.mat);
  std::vector<Matrix> candidates;
  candidates.reserve(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    candidates.push_back(sums.col(k));
    candidates.push_back(diffs.col(k));
  }
  auto real_dot = [](const Matrix& x, const Matrix& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    return s;
  };

  double largest = 0.0;
  for (const auto& c : candidates) largest = std::max(largest, norm_frobenius(c));
  const double threshold = tol * largest;

  std::vector<Matrix> chosen;
  std::vector<bool> used(candidates.size(), false);
  while (chosen.size() < 2 * n) {
    std::size_t pivot = candidates.size();
    double best = threshold;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (used[c]) continue;
      const double norm = norm_frobenius(candidates[c]);
      if (norm > best) {
        best = norm;
        pivot = c;
      }
    }
    if (pivot == candidates.size()) break;
    used[pivot] = true;
    Matrix q = candidates[pivot] * Scalar(1.0 / best);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (!used[c]) candidates[c] -= real_dot(q, candidates[c]) * q;
    }
    chosen.push_back(std::move(q));
  }
  if (chosen.size() != n) {
    throw RankDeficient("fixed space of the involution has real dimension " + std::to_string(chosen.size()) +
                        ", expected " + std::to_string(n));
  }

  Matrix basis(n, n);
  for (std::size_t c = 0; c < n; ++c) basis.set_col(c, chosen[c]);

  const FrobeniusAlgebra restricted = a.change_basis(basis, tol);
  std::vector<Scalar> all(restricted.structure().begin(), restricted.structure().end());
  all.insert(all.end(), restricted.counit().entries().begin(), restricted.counit().entries().end());
  all.insert(all.end(), restricted.unit().entries().begin(), restricted.unit().entries().end());

  auto real_of = [](std::span<const Scalar> v) {
    std::vector<Scalar> out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(x.real(), 0.0);
    return out;
  };
  FrobeniusAlgebra real_algebra(n, real_of(restricted.structure()), real_of(restricted.unit().entries()),
                                real_of(restricted.counit().entries()));

  const FrobeniusAlgebra complexified = real_algebra.change_basis(inverse(basis, tol), tol);

  RealForm form{involution, basis, std::move(real_algebra)};
  form.imaginary_residual = max_imag_ratio(all);
  form.complexification_residual = algebra_distance(complexified, a);
  form.fixed_residual = relative_residual(involution.apply(basis), basis);
  return form;
}

RealForm build_involution(const FrobeniusAlgebra& a, const HermitianStructure& h, double tol) {
  InvolutionReport report = check_involution(a, h, tol);
  if (!report.pass()) throw IncompatiblePair(std::move(report));
  return extract_real_form(a, report.involution, tol);
}

double verify_adjoint(const FrobeniusAlgebra& a, const HermitianStructure& h, const Cobordism& m, double tol) {
  if (a.dim() != h.dim()) throw DimensionMismatch("algebra and Hermitian form have different dimensions");
  const Matrix z = evaluate(a, m, tol);
  const Matrix z_reversed = evaluate(a, reverse(m), tol);
  const Matrix h_out = kron_power(h.matrix(), m.outputs());
  const Matrix h_in = kron_power(h.matrix(), m.inputs());
  // h_W(Z v, w) = v^T Z^T h_W conj(w) and h_V(v, Z* w) = v^T h_V conj(Z*) conj(w).
  return relative_residual(z.transpose() * h_out, h_in * z_reversed.conjugate());
}

}  // namespace tqft
