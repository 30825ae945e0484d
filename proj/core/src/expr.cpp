#include "tqft/expr.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <optional>
#include <vector>

namespace tqft {

SyntaxError::SyntaxError(const std::string& message, int line, int column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line), column_(column) {}

ArityError::ArityError(const std::string& message, std::string first, std::string second)
    : Error(message), first_(std::move(first)), second_(std::move(second)) {}

namespace {

enum class TokenKind { kWord, kInt, kLParen, kRParen, kComma, kSemicolon, kStar, kEnd };

struct Token {
  TokenKind kind;
  std::string_view text;
  SourceSpan span;
};

std::string_view describe(TokenKind kind) {
  switch (kind) {
    case TokenKind::kWord: return "identifier";
    case TokenKind::kInt: return "integer";
    case TokenKind::kLParen: return "'('";
    case TokenKind::kRParen: return "')'";
    case TokenKind::kComma: return "','";
    case TokenKind::kSemicolon: return "';'";
    case TokenKind::kStar: return "'*'";
    case TokenKind::kEnd: return "end of input";
  }
  return "token";
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> tokens;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < src.size()) {
    const unsigned char c = static_cast<unsigned char>(src[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    const SourceSpan start{i, 1, line, column};
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      tokens.push_back({TokenKind::kWord, src.substr(i, j - i), {i, j - i, line, column}});
      advance(j - i);
      continue;
    }
    if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      tokens.push_back({TokenKind::kInt, src.substr(i, j - i), {i, j - i, line, column}});
      advance(j - i);
      continue;
    }
    TokenKind kind;
    switch (c) {
      case '(': kind = TokenKind::kLParen; break;
      case ')': kind = TokenKind::kRParen; break;
      case ',': kind = TokenKind::kComma; break;
      case ';': kind = TokenKind::kSemicolon; break;
      case '*': kind = TokenKind::kStar; break;
      default:
        throw SyntaxError(std::string("unexpected character '") + static_cast<char>(c) + "'", line, column);
    }
    tokens.push_back({kind, src.substr(i, 1), start});
    advance(1);
  }
  tokens.push_back({TokenKind::kEnd, {}, {src.size(), 0, line, column}});
  return tokens;
}

std::optional<Generator> generator_named(std::string_view word) {
  if (word == "id") return Generator::kId;
  if (word == "unit") return Generator::kUnit;
  if (word == "counit") return Generator::kCounit;
  if (word == "mul") return Generator::kMul;
  if (word == "comul") return Generator::kComul;
  if (word == "swap") return Generator::kSwap;
  return std::nullopt;
}

SourceSpan cover(const SourceSpan& a, const SourceSpan& b) {
  return {a.offset, b.offset + b.length - a.offset, a.line, a.column};
}

using MutableExpr = std::unique_ptr<Expr>;

MutableExpr make_node(decltype(Expr::node) node, SourceSpan span) {
  auto e = std::make_unique<Expr>();
  e->node = std::move(node);
  e->span = span;
  return e;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : tokens_(lex(src)) {}

  MutableExpr parse() {
    MutableExpr e = expr();
    if (peek().kind != TokenKind::kEnd) fail("expected ';', '*' or end of input");
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& message) const {
    const Token& t = peek();
    std::string found = t.kind == TokenKind::kEnd ? std::string("end of input") : "'" + std::string(t.text) + "'";
    throw SyntaxError(message + ", found " + found, t.span.line, t.span.column);
  }

  const Token& expect(TokenKind kind) {
    if (peek().kind != kind) fail("expected " + std::string(describe(kind)));
    return take();
  }

  MutableExpr expr() {
    MutableExpr lhs = term();
    while (peek().kind == TokenKind::kSemicolon) {
      take();
      MutableExpr rhs = term();
      const SourceSpan span = cover(lhs->span, rhs->span);
      lhs = make_node(SeqNode{std::move(lhs), std::move(rhs)}, span);
    }
    return lhs;
  }

  MutableExpr term() {
    MutableExpr lhs = factor();
    while (peek().kind == TokenKind::kStar) {
      take();
      MutableExpr rhs = factor();
      const SourceSpan span = cover(lhs->span, rhs->span);
      lhs = make_node(TensorNode{std::move(lhs), std::move(rhs)}, span);
    }
    return lhs;
  }

  std::size_t integer() {
    const Token& t = peek();
    if (t.kind != TokenKind::kInt) fail("expected a non-negative integer");
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || value > static_cast<std::size_t>(std::numeric_limits<int>::max())) {
      fail("integer out of range");
    }
    take();
    return value;
  }

  MutableExpr factor() {
    const Token& t = peek();
    if (t.kind == TokenKind::kLParen) {
      const SourceSpan open = take().span;
      MutableExpr inner = expr();
      inner->span = cover(open, expect(TokenKind::kRParen).span);
      return inner;
    }
    if (t.kind != TokenKind::kWord) fail("expected a generator, 'surf' or '('");
    if (auto g = generator_named(t.text)) {
      const SourceSpan span = take().span;
      return make_node(GeneratorNode{*g}, span);
    }
    if (t.text == "surf") {
      const SourceSpan start = take().span;
      expect(TokenKind::kLParen);
      const std::size_t genus = integer();
      expect(TokenKind::kComma);
      const std::size_t inputs = integer();
      expect(TokenKind::kComma);
      const std::size_t outputs = integer();
      const SourceSpan end = expect(TokenKind::kRParen).span;
      return make_node(SurfaceNode{static_cast<int>(genus), inputs, outputs}, cover(start, end));
    }
    fail("unknown generator");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string arity_text(const Expr& e) { return std::to_string(e.inputs) + "->" + std::to_string(e.outputs); }

// Binding strength: seq 0, tensor 1, atoms 2.
int precedence(const Expr& e) {
  if (std::holds_alternative<SeqNode>(e.node)) return 0;
  if (std::holds_alternative<TensorNode>(e.node)) return 1;
  return 2;
}

std::string print(const Expr& e, int min_precedence) {
  std::string text = std::visit(
      [](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, GeneratorNode>) {
          return std::string(to_string(node.generator));
        } else if constexpr (std::is_same_v<T, SurfaceNode>) {
          return "surf(" + std::to_string(node.genus) + ", " + std::to_string(node.inputs) + ", " +
                 std::to_string(node.outputs) + ")";
        } else if constexpr (std::is_same_v<T, TensorNode>) {
          return print(*node.left, 1) + " * " + print(*node.right, 2);
        } else {
          return print(*node.first, 0) + " ; " + print(*node.second, 1);
        }
      },
      e.node);
  if (precedence(e) < min_precedence) return "(" + text + ")";
  return text;
}

}  // namespace

ExprPtr parse_untyped(std::string_view source) { return Parser(source).parse(); }

ExprPtr parse(std::string_view source) { return typecheck(*parse_untyped(source)); }

ExprPtr typecheck(const Expr& expr) {
  return std::visit(
      [&expr](const auto& node) -> ExprPtr {
        using T = std::decay_t<decltype(node)>;
        auto out = std::make_unique<Expr>();
        out->span = expr.span;
        if constexpr (std::is_same_v<T, GeneratorNode>) {
          const Cobordism c = Cobordism::generator(node.generator);
          out->node = node;
          out->inputs = c.inputs();
          out->outputs = c.outputs();
        } else if constexpr (std::is_same_v<T, SurfaceNode>) {
          out->node = node;
          out->inputs = node.inputs;
          out->outputs = node.outputs;
        } else if constexpr (std::is_same_v<T, TensorNode>) {
          ExprPtr left = typecheck(*node.left);
          ExprPtr right = typecheck(*node.right);
          out->inputs = left->inputs + right->inputs;
          out->outputs = left->outputs + right->outputs;
          out->node = TensorNode{std::move(left), std::move(right)};
        } else {
          ExprPtr first = typecheck(*node.first);
          ExprPtr second = typecheck(*node.second);
          if (first->outputs != second->inputs) {
            const std::string a = to_source(*first);
            const std::string b = to_source(*second);
            throw ArityError("cannot compose `" + a + "` (" + arity_text(*first) + ") with `" + b + "` (" +
                                 arity_text(*second) + "): " + std::to_string(first->outputs) + " outputs into " +
                                 std::to_string(second->inputs) + " inputs at " + std::to_string(expr.span.line) +
                                 ":" + std::to_string(expr.span.column),
                             a, b);
          }
          out->inputs = first->inputs;
          out->outputs = second->outputs;
          out->node = SeqNode{std::move(first), std::move(second)};
        }
        return out;
      },
      expr.node);
}

std::string to_source(const Expr& expr) { return print(expr, 0); }

bool same_structure(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&b](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, GeneratorNode>) {
          return x.generator == y.generator;
        } else if constexpr (std::is_same_v<T, SurfaceNode>) {
          return x.genus == y.genus && x.inputs == y.inputs && x.outputs == y.outputs;
        } else if constexpr (std::is_same_v<T, TensorNode>) {
          return same_structure(*x.left, *y.left) && same_structure(*x.right, *y.right);
        } else {
          return same_structure(*x.first, *y.first) && same_structure(*x.second, *y.second);
        }
      },
      a.node);
}

Cobordism to_cobordism(const Expr& expr) {
  return std::visit(
      [](const auto& node) -> Cobordism {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, GeneratorNode>) {
          return Cobordism::generator(node.generator);
        } else if constexpr (std::is_same_v<T, SurfaceNode>) {
          return Cobordism::surface(node.genus, node.inputs, node.outputs);
        } else if constexpr (std::is_same_v<T, TensorNode>) {
          return tensor(to_cobordism(*node.left), to_cobordism(*node.right));
        } else {
          return compose(to_cobordism(*node.first), to_cobordism(*node.second));
        }
      },
      expr.node);
}

}  // namespace tqft
