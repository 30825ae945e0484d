#include <random>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "tqft/algebra_io.hpp"
#include "tqft/random_algebra.hpp"

using tqft::Matrix;
using tqft::Scalar;

namespace {

const std::string kOneDim = R"({"dimension": 1, "mul": [[[[1, 0]]]], "unit": [[1, 0]], "counit": [[1, 0]]})";

std::string data_file(const char* name) { return std::string(TQFT_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("one-dimensional file") {
  const auto data = tqft::parse_algebra(kOneDim);
  CHECK(data.algebra.dim() == 1);
  CHECK_FALSE(data.hermitian.has_value());
  CHECK(data.axioms.pass());
}

TEST_CASE("degenerate counit is an axiom violation") {
  const std::string text = R"({"dimension": 1, "mul": [[[[1, 0]]]], "unit": [[1, 0]], "counit": [[0, 0]]})";
  try {
    tqft::parse_algebra(text);
    FAIL("expected AxiomViolation");
  } catch (const tqft::AxiomViolation& e) {
    REQUIRE(e.report().find("nondegeneracy") != nullptr);
    CHECK_FALSE(e.report().find("nondegeneracy")->pass);
  }
  // The unchecked parser accepts it.
  CHECK_NOTHROW(tqft::parse_algebra_unchecked(text));
}

TEST_CASE("bundled diagonal file is a unitary pair") {
  const auto data = tqft::load_algebra(data_file("diag2.json"));
  REQUIRE(data.hermitian.has_value());
  CHECK(data.hermitian->is_positive_definite());
  // Here h = β: both are diag(1, 2).
  CHECK(tqft::relative_residual(data.hermitian->matrix(), tqft::pairing_matrix(data.algebra)) == 0.0);
}

TEST_CASE("bundled files parse") {
  for (const char* name : {"pos1.json", "neg1.json", "negdim1.json", "z2.json", "diag2.json", "nilpotent.json"}) {
    INFO(name);
    CHECK_NOTHROW(tqft::load_algebra(data_file(name)));
  }
  const auto z2 = tqft::load_algebra(data_file("z2.json"));
  CHECK(z2.algebra.mul_matrix() == oracle::z2().mul_matrix());
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(tqft::parse_algebra("{"), tqft::ParseError);
  CHECK_THROWS_AS(tqft::parse_algebra("[1, 2]"), tqft::ParseError);
  CHECK_THROWS_AS(tqft::parse_algebra(R"({"dimension": 1})"), tqft::ParseError);
  CHECK_THROWS_AS(tqft::parse_algebra(R"({"dimension": 0, "mul": [], "unit": [], "counit": []})"), tqft::ParseError);
  CHECK_THROWS_AS(tqft::parse_algebra(R"({"dimension": 1.5, "mul": [], "unit": [], "counit": []})"),
                  tqft::ParseError);
  // Entries must be [re, im] pairs of numbers.
  CHECK_THROWS_AS(tqft::parse_algebra(R"({"dimension": 1, "mul": [[[1]]], "unit": [[1, 0]], "counit": [[1, 0]]})"),
                  tqft::ParseError);
  CHECK_THROWS_AS(
      tqft::parse_algebra(R"({"dimension": 1, "mul": [[[["1", 0]]]], "unit": [[1, 0]], "counit": [[1, 0]]})"),
      tqft::ParseError);
  // Overflowing literals are rejected by the JSON layer.
  CHECK_THROWS_AS(
      tqft::parse_algebra(R"({"dimension": 1, "mul": [[[[1e999, 0]]]], "unit": [[1, 0]], "counit": [[1, 0]]})"),
      tqft::ParseError);
}

TEST_CASE("shape errors") {
  CHECK_THROWS_AS(tqft::parse_algebra(R"({"dimension": 2, "mul": [[[[1, 0]]]], "unit": [[1, 0]], "counit": [[1, 0]]})"),
                  tqft::ShapeError);
  CHECK_THROWS_AS(
      tqft::parse_algebra(R"({"dimension": 1, "mul": [[[[1, 0]]]], "unit": [[1, 0], [0, 0]], "counit": [[1, 0]]})"),
      tqft::ShapeError);
  CHECK_THROWS_AS(tqft::parse_algebra(R"({"dimension": 1, "mul": [[[[1, 0]]]], "unit": [[1, 0]], "counit": [[1, 0]],
                                         "hermitian": [[[1, 0], [0, 0]]]})"),
                  tqft::ShapeError);
}

TEST_CASE("invalid Hermitian matrices") {
  const std::string base = R"({"dimension": 2,
    "mul": [[[[1, 0], [0, 0]], [[0, 0], [1, 0]]], [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]],
    "unit": [[1, 0], [0, 0]], "counit": [[1, 0], [0, 0]], "hermitian": )";
  // Not conjugate-symmetric.
  CHECK_THROWS_AS(tqft::parse_algebra(base + R"([[[1, 0], [0, 1]], [[0, 1], [1, 0]]]})"), tqft::AxiomViolation);
  // Singular.
  try {
    tqft::parse_algebra(base + R"([[[1, 0], [1, 0]], [[1, 0], [1, 0]]]})");
    FAIL("expected AxiomViolation");
  } catch (const tqft::AxiomViolation& e) {
    REQUIRE(e.report().find("hermitian") != nullptr);
    CHECK_FALSE(e.report().pass());
  }
  // A valid complex Hermitian matrix loads.
  CHECK_NOTHROW(tqft::parse_algebra(base + R"([[[2, 0], [0, 1]], [[0, -1], [3, 0]]]})"));
}

TEST_CASE("missing files") {
  CHECK_THROWS_AS(tqft::load_algebra(data_file("does-not-exist.json")), tqft::IoError);
}

TEST_CASE("serialization round trip") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 8; ++trial) {
    tqft::RandomAlgebraOptions options;
    options.dim = 1 + trial % 4;
    const auto hidden = tqft::random_hidden_diagonal(options, rng);
    const std::string text = tqft::algebra_to_json(hidden.algebra, &hidden.hermitian);
    const auto back = tqft::parse_algebra(text);
    // nlohmann writes doubles with round-trip precision.
    CHECK(back.algebra.mul_matrix() == hidden.algebra.mul_matrix());
    CHECK(back.algebra.unit() == hidden.algebra.unit());
    CHECK(back.algebra.counit() == hidden.algebra.counit());
    REQUIRE(back.hermitian.has_value());
    CHECK(back.hermitian->matrix() == hidden.hermitian.matrix());
    CHECK(tqft::algebra_to_json(back.algebra, &*back.hermitian) == text);
  }
  const auto one = tqft::parse_algebra(kOneDim);
  CHECK(tqft::algebra_to_json(one.algebra).find("hermitian") == std::string::npos);
}
