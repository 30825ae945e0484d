#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "tqft/cobordism.hpp"
#include "tqft/errors.hpp"

namespace tqft {

// Cobordism expression language:
//
//   expr   := term { ";" term }
//   term   := factor { "*" factor }
//   factor := "id" | "unit" | "counit" | "mul" | "comul" | "swap"
//           | "surf" "(" int "," int "," int ")" | "(" expr ")"
//
// "*" is the disjoint union and ";" composition in diagram order, so
// "a ; b" runs a first. Both associate to the left.

struct SourceSpan {
  std::size_t offset = 0;
  std::size_t length = 0;
  int line = 1;
  int column = 1;
};

struct Expr;
using ExprPtr = std::unique_ptr<const Expr>;

struct GeneratorNode {
  Generator generator;
};
struct SurfaceNode {
  int genus;
  std::size_t inputs;
  std::size_t outputs;
};
struct TensorNode {
  ExprPtr left;
  ExprPtr right;
};
struct SeqNode {
  ExprPtr first;
  ExprPtr second;
};

struct Expr {
  std::variant<GeneratorNode, SurfaceNode, TensorNode, SeqNode> node;
  SourceSpan span;
  // Filled in by the typechecker.
  std::size_t inputs = 0;
  std::size_t outputs = 0;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class ArityError : public Error {
 public:
  ArityError(const std::string& message, std::string first, std::string second);
  const std::string& first() const { return first_; }
  const std::string& second() const { return second_; }

 private:
  std::string first_;
  std::string second_;
};

/// Parses without arity checking.
ExprPtr parse_untyped(std::string_view source);
/// Parses and typechecks. Throws SyntaxError or ArityError.
ExprPtr parse(std::string_view source);

/// Returns a copy of `expr` with arities filled in.
ExprPtr typecheck(const Expr& expr);

/// Canonical text with the minimum parentheses; reparses to the same tree.
std::string to_source(const Expr& expr);
/// Tree equality ignoring spans and arities.
bool same_structure(const Expr& a, const Expr& b);

Cobordism to_cobordism(const Expr& expr);

}  // namespace tqft
