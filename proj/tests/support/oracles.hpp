#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's derived structures; everything is rebuilt from structure
// constants with plain loops.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "tqft/cobordism.hpp"
#include "tqft/frobenius.hpp"
#include "tqft/linalg.hpp"

namespace oracle {

using tqft::FrobeniusAlgebra;
using tqft::Generator;
using tqft::Matrix;
using tqft::Scalar;

inline Matrix product(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Scalar s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

inline Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) c(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return c;
}

inline Matrix eye(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

inline Matrix eye_power(std::size_t n, std::size_t k) {
  std::size_t size = 1;
  for (std::size_t i = 0; i < k; ++i) size *= n;
  return eye(size);
}

inline double distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  double d = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d += std::norm(a[i] - b[i]);
    na += std::norm(a[i]);
    nb += std::norm(b[i]);
  }
  return std::sqrt(d) / std::max({1.0, std::sqrt(na), std::sqrt(nb)});
}

/// Gauss-Jordan with partial pivoting.
inline Matrix gauss_jordan_inverse(Matrix a) {
  const std::size_t n = a.rows();
  Matrix inv = eye(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(p, c))) p = r;
    if (std::abs(a(p, c)) < 1e-14) throw std::runtime_error("oracle: singular");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(c, j), a(p, j));
      std::swap(inv(c, j), inv(p, j));
    }
    const Scalar d = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= d;
      inv(c, j) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const Scalar f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

inline Matrix mul_matrix(const FrobeniusAlgebra& a) {
  const std::size_t n = a.dim();
  Matrix m(n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) m(k, i * n + j) = a.structure_constant(i, j, k);
  return m;
}

/// B[i][j] = Σ_k c_ij^k ε_k.
inline Matrix pairing(const FrobeniusAlgebra& a) {
  const std::size_t n = a.dim();
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) b(i, j) += a.structure_constant(i, j, k) * a.counit()[k];
  return b;
}

inline Matrix copairing(const FrobeniusAlgebra& a) {
  const Matrix inv = gauss_jordan_inverse(oracle::pairing(a));
  Matrix g(a.dim() * a.dim(), 1);
  for (std::size_t i = 0; i < inv.size(); ++i) g[i] = inv[i];
  return g;
}

/// δ(b_k) = Σ_ij (B⁻¹)_ij b_i ⊗ (b_j · b_k).
inline Matrix comultiplication(const FrobeniusAlgebra& a) {
  const std::size_t n = a.dim();
  const Matrix inv = gauss_jordan_inverse(oracle::pairing(a));
  Matrix d(n * n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) d(i * n + l, k) += inv(i, j) * a.structure_constant(j, k, l);
  return d;
}

inline Matrix swap_matrix(std::size_t n) {
  Matrix s(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s(j * n + i, i * n + j) = 1.0;
  return s;
}

inline std::size_t in_arity(Generator g) {
  switch (g) {
    case Generator::kUnit: return 0;
    case Generator::kCounit:
    case Generator::kComul:
    case Generator::kId: return 1;
    case Generator::kMul:
    case Generator::kSwap: return 2;
  }
  return 0;
}

inline std::size_t out_arity(Generator g) {
  switch (g) {
    case Generator::kCounit: return 0;
    case Generator::kUnit:
    case Generator::kMul:
    case Generator::kId: return 1;
    case Generator::kComul:
    case Generator::kSwap: return 2;
  }
  return 0;
}

inline Matrix generator_matrix(const FrobeniusAlgebra& a, Generator g) {
  switch (g) {
    case Generator::kUnit: return a.unit();
    case Generator::kCounit: return a.counit();
    case Generator::kMul: return oracle::mul_matrix(a);
    case Generator::kComul: return oracle::comultiplication(a);
    case Generator::kId: return eye(a.dim());
    case Generator::kSwap: return swap_matrix(a.dim());
  }
  return {};
}

/// One generator with identity strands on either side.
struct Layer {
  std::size_t before = 0;
  Generator generator = Generator::kId;
  std::size_t after = 0;

  std::size_t inputs() const { return before + in_arity(generator) + after; }
  std::size_t outputs() const { return before + out_arity(generator) + after; }
};

struct Word {
  std::vector<Layer> layers;

  std::size_t inputs() const { return layers.front().inputs(); }
  std::size_t outputs() const { return layers.back().outputs(); }

  std::string text() const {
    std::string out;
    for (std::size_t l = 0; l < layers.size(); ++l) {
      if (l > 0) out += " ; ";
      std::vector<std::string> parts(layers[l].before, "id");
      parts.emplace_back(tqft::to_string(layers[l].generator));
      parts.insert(parts.end(), layers[l].after, "id");
      std::string layer;
      for (std::size_t i = 0; i < parts.size(); ++i) layer += (i > 0 ? " * " : "") + parts[i];
      // Parenthesized so a layer reads as one tensor block.
      out += layers.size() > 1 && parts.size() > 1 ? "(" + layer + ")" : layer;
    }
    return out;
  }

  Word then(const Word& next) const {
    Word w = *this;
    w.layers.insert(w.layers.end(), next.layers.begin(), next.layers.end());
    return w;
  }
};

/// Z(word) by Kronecker products, layer after layer.
inline Matrix interpret(const FrobeniusAlgebra& a, const Word& w) {
  const std::size_t n = a.dim();
  Matrix z = eye_power(n, w.inputs());
  for (const Layer& l : w.layers) {
    const Matrix block =
        kronecker(kronecker(eye_power(n, l.before), generator_matrix(a, l.generator)), eye_power(n, l.after));
    z = product(block, z);
  }
  return z;
}

inline tqft::Cobordism cobordism_of(const Word& w) {
  tqft::Cobordism m = tqft::Cobordism::identity(w.inputs());
  for (const Layer& l : w.layers) {
    const tqft::Cobordism block = tqft::tensor(
        tqft::tensor(tqft::Cobordism::identity(l.before), tqft::Cobordism::generator(l.generator)),
        tqft::Cobordism::identity(l.after));
    m = tqft::compose(m, block);
  }
  return m;
}

/// Random word of `length` layers starting at `width` circles; the width
/// never exceeds `max_width`.
inline Word random_word(std::mt19937_64& rng, std::size_t length, std::size_t width, std::size_t max_width) {
  static constexpr Generator kAll[] = {Generator::kUnit, Generator::kCounit, Generator::kMul,
                                       Generator::kComul, Generator::kId, Generator::kSwap};
  Word w;
  for (std::size_t step = 0; step < length; ++step) {
    std::vector<Generator> allowed;
    for (Generator g : kAll) {
      const std::size_t in = in_arity(g);
      if (in <= width && width - in + out_arity(g) <= max_width) allowed.push_back(g);
    }
    const Generator g = allowed[std::uniform_int_distribution<std::size_t>(0, allowed.size() - 1)(rng)];
    const std::size_t slack = width - in_arity(g);
    const std::size_t before = std::uniform_int_distribution<std::size_t>(0, slack)(rng);
    w.layers.push_back({before, g, slack - before});
    width = w.layers.back().outputs();
  }
  return w;
}

// Hand-built algebras.

/// C^n with idempotent basis and counit values `weights`.
inline FrobeniusAlgebra diagonal(std::vector<double> weights) {
  const std::size_t n = weights.size();
  std::vector<Scalar> c(n * n * n, 0.0);
  std::vector<Scalar> unit(n, 1.0);
  std::vector<Scalar> counit(weights.begin(), weights.end());
  for (std::size_t i = 0; i < n; ++i) c[(i * n + i) * n + i] = 1.0;
  return FrobeniusAlgebra(n, c, unit, counit);
}

/// Group algebra of Z/2 on {1, g} with ε(1) = 1, ε(g) = 0.
inline FrobeniusAlgebra z2() {
  std::vector<Scalar> c(8, 0.0);
  c[(0 * 2 + 0) * 2 + 0] = 1.0;  // 1·1 = 1
  c[(0 * 2 + 1) * 2 + 1] = 1.0;  // 1·g = g
  c[(1 * 2 + 0) * 2 + 1] = 1.0;  // g·1 = g
  c[(1 * 2 + 1) * 2 + 0] = 1.0;  // g·g = 1
  return FrobeniusAlgebra(2, c, {1.0, 0.0}, {1.0, 0.0});
}

/// span{1, x} with x² = 0, ε(1) = 0, ε(x) = 1.
inline FrobeniusAlgebra dual_numbers() {
  std::vector<Scalar> c(8, 0.0);
  c[(0 * 2 + 0) * 2 + 0] = 1.0;
  c[(0 * 2 + 1) * 2 + 1] = 1.0;
  c[(1 * 2 + 0) * 2 + 1] = 1.0;
  return FrobeniusAlgebra(2, c, {1.0, 0.0}, {0.0, 1.0});
}

/// 2x2 matrices on the matrix units E_00, E_01, E_10, E_11 with the trace as counit.
inline FrobeniusAlgebra matrix_algebra() {
  std::vector<Scalar> c(64, 0.0);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l)
          if (j == k) c[((i * 2 + j) * 4 + (k * 2 + l)) * 4 + (i * 2 + l)] = 1.0;
  return FrobeniusAlgebra(4, c, {1.0, 0.0, 0.0, 1.0}, {1.0, 0.0, 0.0, 1.0});
}

inline Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = Scalar(normal(rng), normal(rng));
  return m;
}

inline Matrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  const Matrix x = random_matrix(n, n, rng);
  return (x + x.adjoint()) * Scalar(0.5);
}

}  // namespace oracle
