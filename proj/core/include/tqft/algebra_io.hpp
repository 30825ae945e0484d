#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "tqft/frobenius.hpp"
#include "tqft/hermitian.hpp"

namespace tqft {

// Algebra files are UTF-8 JSON objects:
//
//   {
//     "dimension": n,
//     "mul":       n x n x n array of [re, im],   mul[i][j][k] = c_ij^k
//     "unit":      n array of [re, im],
//     "counit":    n array of [re, im],
//     "hermitian": optional n x n array of [re, im], h[i][j] = h(b_i, b_j)
//   }

/// The file could not be read.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON or a field of the wrong type.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Array shapes inconsistent with the declared dimension.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// The data parsed but fails the Frobenius axioms or the Hermitian form checks.
class AxiomViolation : public Error {
 public:
  AxiomViolation(const std::string& message, AxiomReport report);
  const AxiomReport& report() const { return report_; }

 private:
  AxiomReport report_;
};

struct AlgebraData {
  FrobeniusAlgebra algebra;
  std::optional<HermitianStructure> hermitian;
  AxiomReport axioms;
};

/// Parses without validating the axioms.
AlgebraData parse_algebra_unchecked(std::string_view json_text, double tol = kDefaultTol);
/// Parses and validates.
AlgebraData parse_algebra(std::string_view json_text, double tol = kDefaultTol);
AlgebraData load_algebra(const std::filesystem::path& path, double tol = kDefaultTol);

/// Serializes to the file format above (two-space indented).
std::string algebra_to_json(const FrobeniusAlgebra& a, const HermitianStructure* h = nullptr);

}  // namespace tqft
