#include "tqft/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tqft/algebra_io.hpp"
#include "tqft/cobordism.hpp"
#include "tqft/expr.hpp"
#include "tqft/frobenius.hpp"
#include "tqft/hermitian.hpp"
#include "tqft/unitary.hpp"

namespace tqft::cli {
namespace {

using nlohmann::json;

struct Options {
  std::string command;
  std::string file;
  std::string expression;
  std::size_t genus = 0;
  double tol = kDefaultTol;
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  int precision = 12;
  bool json_output = false;
  bool quiet = false;
};

struct Report {
  std::string command;
  bool pass = false;
  json residuals = json::object();
  json data = json::object();
  int exit_code = kOk;
};

/// Raised by commands for inputs that are well-formed but lack what the
/// command needs.
class UsageError : public Error {
 public:
  using Error::Error;
};

double round_significant(double x, int digits) {
  if (x == 0.0 || !std::isfinite(x)) return x == 0.0 ? 0.0 : x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

void round_numbers(json& j, int digits) {
  if (j.is_number_float()) {
    j = round_significant(j.get<double>(), digits);
  } else if (j.is_structured()) {
    for (auto& child : j) round_numbers(child, digits);
  }
}

json scalar_json(const Scalar& s) { return json::array({s.real(), s.imag()}); }

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Columns of `m` as a list of vectors.
json columns_json(const Matrix& m) {
  json cols = json::array();
  for (std::size_t c = 0; c < m.cols(); ++c) {
    json col = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) col.push_back(scalar_json(m(r, c)));
    cols.push_back(std::move(col));
  }
  return cols;
}

json structure_json(const FrobeniusAlgebra& a) {
  const std::size_t n = a.dim();
  json mul = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < n; ++j) {
      json entry = json::array();
      for (std::size_t k = 0; k < n; ++k) entry.push_back(a.structure_constant(i, j, k).real());
      row.push_back(std::move(entry));
    }
    mul.push_back(std::move(row));
  }
  json unit = json::array();
  json counit = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    unit.push_back(a.unit()[i].real());
    counit.push_back(a.counit()[i].real());
  }
  return {{"mul", mul}, {"unit", unit}, {"counit", counit}};
}

std::string format_real(double x, int precision) {
  std::ostringstream os;
  os << std::setprecision(precision) << round_significant(x, precision);
  return os.str();
}

std::string format_scalar(const Scalar& s, int precision) {
  const double re = round_significant(s.real(), precision);
  const double im = round_significant(s.imag(), precision);
  if (im == 0.0) return format_real(re, precision);
  if (re == 0.0) return format_real(im, precision) + "i";
  return format_real(re, precision) + (im < 0 ? "-" : "+") + format_real(std::abs(im), precision) + "i";
}

const HermitianStructure& require_hermitian(const AlgebraData& data) {
  if (!data.hermitian) throw UsageError("this command needs a \"hermitian\" matrix in the algebra file");
  return *data.hermitian;
}

Cobordism parse_expression(const Options& opts, json& data) {
  if (opts.expression.empty()) throw UsageError("missing expression (-e)");
  const ExprPtr expr = parse(opts.expression);
  data["expression"] = to_source(*expr);
  data["inputs"] = expr->inputs;
  data["outputs"] = expr->outputs;
  const Cobordism m = to_cobordism(*expr);
  data["cobordism"] = describe(normal_form(m));
  return m;
}

void add_axiom_residuals(const AxiomReport& axioms, Report& report) {
  json checks = json::object();
  for (const auto& c : axioms.checks) {
    checks[c.name] = c.pass;
    // Nondegeneracy carries an inverse condition number, where large is good.
    if (c.name == "nondegeneracy") {
      report.data["pairing_inverse_condition"] = c.residual;
    } else {
      report.residuals[c.name] = c.residual;
    }
  }
  report.data["axioms"] = checks;
}

Report run_check(const Options& opts) {
  Report report{"check"};
  AlgebraData data = parse_algebra_unchecked(
      [&] {
        std::ifstream in(opts.file, std::ios::binary);
        if (!in) throw IoError("cannot open " + opts.file);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
      }(),
      opts.tol);
  const AxiomReport axioms = verify_axioms(data.algebra, opts.tol);
  add_axiom_residuals(axioms, report);
  report.data["dimension"] = data.algebra.dim();
  report.data["hermitian"] = data.hermitian.has_value();
  if (data.hermitian) {
    const auto sig = data.hermitian->signature(opts.tol);
    report.data["signature"] = {{"positive", sig.positive}, {"negative", sig.negative}};
  }
  report.pass = axioms.pass();
  return report;
}

Report run_hermitian(const Options& opts, const AlgebraData& data) {
  Report report{"hermitian"};
  const HermitianStructure& h = require_hermitian(data);
  const InvolutionReport inv = check_involution(data.algebra, h, opts.tol);
  json checks = json::object();
  for (const auto& c : inv.checks) {
    report.residuals[c.name] = c.residual;
    checks[c.name] = c.pass;
  }
  report.data["checks"] = checks;
  report.data["involution"] = matrix_json(inv.involution.mat);
  const auto sig = h.signature(opts.tol);
  report.data["signature"] = {{"positive", sig.positive}, {"negative", sig.negative}};
  report.data["positive_definite"] = sig.positive == h.dim();

  if (!inv.pass()) {
    report.data["failed_check"] = inv.first_failure()->name;
    report.pass = false;
    return report;
  }
  const RealForm real = extract_real_form(data.algebra, inv.involution, opts.tol);
  report.residuals["real_form_imaginary"] = real.imaginary_residual;
  report.residuals["complexification"] = real.complexification_residual;
  report.residuals["fixed_basis"] = real.fixed_residual;
  json real_json = structure_json(real.real_algebra);
  real_json["basis"] = columns_json(real.basis);
  report.data["real_form"] = real_json;
  report.pass = true;
  return report;
}

Report run_classify(const Options& opts, const AlgebraData& data) {
  Report report{"classify"};
  const HermitianStructure& h = require_hermitian(data);
  const UnitaryClassification c = classify(data.algebra, h, opts.tol);
  report.residuals["idempotent"] = c.residuals.idempotent;
  report.residuals["unit_decomposition"] = c.residuals.unit_decomposition;
  report.residuals["reconstruction"] = c.residuals.reconstruction;
  report.residuals["weight_imaginary"] = c.residuals.weight_imaginary;

  // Handle operator eigenvalues against 1/w_i, both sorted descending.
  std::vector<Scalar> eig = eigenvalues(handle_operator(data.algebra, opts.tol));
  std::sort(eig.begin(), eig.end(), [](const Scalar& x, const Scalar& y) { return x.real() > y.real(); });
  const std::vector<double> spectrum = handle_spectrum(c);
  double spectrum_residual = 0.0;
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    spectrum_residual = std::max(spectrum_residual, std::abs(eig[i] - spectrum[i]) / spectrum[i]);
  }
  report.residuals["spectrum"] = spectrum_residual;

  const CStarReport cstar = cstar_check(data.algebra, c, opts.samples, opts.seed, opts.tol);
  report.residuals["cstar_norm_identity"] = cstar.norm_identity_deviation;
  report.residuals["cstar_positivity_imaginary"] = cstar.positivity_imaginary;
  report.residuals["cstar_positivity_deviation"] = cstar.positivity_deviation;

  report.data["weights"] = c.weights;
  report.data["spectrum"] = spectrum;
  report.data["idempotents"] = columns_json(c.idempotents);
  report.data["cstar"] = {{"samples", cstar.samples},
                          {"seed", opts.seed},
                          {"positivity_margin", cstar.positivity_margin},
                          {"pass", cstar.pass}};

  // The decomposition itself succeeded; residuals are reported, not gated.
  report.pass = cstar.pass;
  return report;
}

Report run_eval(const Options& opts, const AlgebraData& data) {
  Report report{"eval"};
  const Cobordism m = parse_expression(opts, report.data);
  const Matrix z = evaluate(data.algebra, m, opts.tol);
  report.data["rows"] = z.rows();
  report.data["cols"] = z.cols();
  report.data["matrix"] = matrix_json(z);
  report.pass = true;
  return report;
}

Report run_surface(const Options& opts, const AlgebraData& data) {
  Report report{"surface"};
  const Scalar value = closed_surface(data.algebra, opts.genus, opts.tol);
  const Matrix by_cobordism = evaluate(data.algebra, Cobordism::surface(static_cast<int>(opts.genus), 0, 0), opts.tol);
  const double residual = std::abs(by_cobordism[0] - value) / std::max(1.0, std::abs(value));
  report.residuals["cobordism_evaluation"] = residual;
  report.data["genus"] = opts.genus;
  report.data["value"] = scalar_json(value);
  report.pass = residual <= opts.tol;
  return report;
}

Report run_adjoint(const Options& opts, const AlgebraData& data) {
  Report report{"adjoint"};
  const HermitianStructure& h = require_hermitian(data);
  const Cobordism m = parse_expression(opts, report.data);
  const double residual = verify_adjoint(data.algebra, h, m, opts.tol);
  report.residuals["adjoint"] = residual;
  report.pass = residual <= opts.tol;
  return report;
}

Report dispatch(const Options& opts) {
  if (opts.command == "check") return run_check(opts);
  const AlgebraData data = load_algebra(opts.file, opts.tol);
  if (opts.command == "hermitian") return run_hermitian(opts, data);
  if (opts.command == "classify") return run_classify(opts, data);
  if (opts.command == "eval") return run_eval(opts, data);
  if (opts.command == "surface") return run_surface(opts, data);
  if (opts.command == "adjoint") return run_adjoint(opts, data);
  throw UsageError("unknown command " + opts.command);
}

json to_json(const Report& report, int precision) {
  json j = {{"command", report.command}, {"pass", report.pass}, {"residuals", report.residuals}, {"data", report.data}};
  round_numbers(j, precision);
  return j;
}

void print_matrix(std::ostream& out, const json& rows, int precision) {
  std::vector<std::vector<std::string>> cells;
  std::size_t width = 0;
  for (const auto& row : rows) {
    auto& line = cells.emplace_back();
    for (const auto& entry : row) {
      line.push_back(format_scalar({entry[0].get<double>(), entry[1].get<double>()}, precision));
      width = std::max(width, line.back().size());
    }
  }
  for (const auto& line : cells) {
    out << "   ";
    for (const auto& cell : line) out << ' ' << std::setw(static_cast<int>(width)) << cell;
    out << '\n';
  }
}

void print_text(std::ostream& out, const Report& report, int precision) {
  const json j = to_json(report, precision);
  out << report.command << ": " << (report.pass ? "PASS" : "FAIL") << '\n';
  if (!j["residuals"].empty()) {
    out << "residuals:\n";
    std::size_t width = 0;
    for (const auto& [name, _] : j["residuals"].items()) width = std::max(width, name.size());
    for (const auto& [name, value] : j["residuals"].items()) {
      out << "  " << std::left << std::setw(static_cast<int>(width)) << name << std::right << "  "
          << format_real(value.get<double>(), precision) << '\n';
    }
  }
  if (!j["data"].empty()) {
    out << "data:\n";
    for (const auto& [name, value] : j["data"].items()) {
      if (name == "matrix" || name == "involution") {
        out << "  " << name << ":\n";
        print_matrix(out, value, precision);
      } else if (value.is_string()) {
        out << "  " << name << ": " << value.get<std::string>() << '\n';
      } else {
        out << "  " << name << ": " << value.dump() << '\n';
      }
    }
  }
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e) || dynamic_cast<const ParseError*>(&e) ||
      dynamic_cast<const ShapeError*>(&e) || dynamic_cast<const SyntaxError*>(&e) ||
      dynamic_cast<const ArityError*>(&e) || dynamic_cast<const UsageError*>(&e) ||
      dynamic_cast<const NonFiniteValue*>(&e)) {
    return kInputError;
  }
  if (dynamic_cast<const Error*>(&e)) return kValidationFailure;
  return kInternalError;
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e)) return "IoError";
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const ShapeError*>(&e)) return "ShapeError";
  if (dynamic_cast<const SyntaxError*>(&e)) return "SyntaxError";
  if (dynamic_cast<const ArityError*>(&e)) return "ArityError";
  if (dynamic_cast<const UsageError*>(&e)) return "UsageError";
  if (dynamic_cast<const AxiomViolation*>(&e)) return "AxiomViolation";
  if (dynamic_cast<const IncompatiblePair*>(&e)) return "IncompatiblePair";
  if (dynamic_cast<const NotPositiveDefinite*>(&e)) return "NotPositiveDefinite";
  if (dynamic_cast<const SingularMatrix*>(&e)) return "SingularMatrix";
  if (dynamic_cast<const NotCommuting*>(&e)) return "NotCommuting";
  if (dynamic_cast<const RankDeficient*>(&e)) return "RankDeficient";
  if (dynamic_cast<const FormNotPositive*>(&e)) return "FormNotPositive";
  if (dynamic_cast<const Error*>(&e)) return "Error";
  return "InternalError";
}

Report error_report(const Options& opts, const std::exception& e) {
  Report report{opts.command};
  report.pass = false;
  report.data["error"] = {{"kind", error_kind(e)}, {"message", e.what()}};
  if (const auto* violation = dynamic_cast<const AxiomViolation*>(&e)) {
    add_axiom_residuals(violation->report(), report);
  }
  if (const auto* incompatible = dynamic_cast<const IncompatiblePair*>(&e)) {
    for (const auto& c : incompatible->report().checks) report.residuals[c.name] = c.residual;
  }
  report.exit_code = exit_code_for(e);
  return report;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opts;
  CLI::App app{"Two-dimensional TQFTs as commutative Frobenius algebras", "tqft"};
  app.require_subcommand(1, 1);
  app.add_option("--tol", opts.tol, "Relative tolerance for every residual check")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", opts.seed, "Seed for randomized checks")->capture_default_str();
  app.add_option("--samples", opts.samples, "Random samples for the C*-identity check")->capture_default_str();
  app.add_option("--precision", opts.precision, "Significant digits in reports")
      ->capture_default_str()
      ->check(CLI::Range(1, 17));
  app.add_flag("--json", opts.json_output, "Emit a machine-readable JSON report");
  app.add_flag("--quiet", opts.quiet, "Suppress the text report and diagnostics");

  auto add = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("file", opts.file, "Algebra file (JSON)")->required();
    return sub;
  };
  add("check", "Report the Frobenius algebra axioms");
  add("hermitian", "Build the involution from the Hermitian form and extract the real form");
  add("classify", "Decompose unitary data into positive idempotents and the handle spectrum");
  add("eval", "Evaluate a cobordism expression")->add_option("-e,--expr", opts.expression, "Expression")->required();
  add("surface", "Closed-surface invariant")->add_option("-g,--genus", opts.genus, "Genus")->required();
  add("adjoint", "Adjoint residual of a cobordism against its reverse")
      ->add_option("-e,--expr", opts.expression, "Expression")
      ->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  opts.command = app.get_subcommands().front()->get_name();

  Report report;
  try {
    report = dispatch(opts);
    report.exit_code = report.pass ? kOk : kValidationFailure;
  } catch (const std::exception& e) {
    report = error_report(opts, e);
    if (!opts.quiet) err << "tqft " << opts.command << ": " << error_kind(e) << ": " << e.what() << '\n';
  }

  if (opts.json_output) {
    out << to_json(report, opts.precision).dump(2) << '\n';
  } else if (!opts.quiet) {
    print_text(out, report, opts.precision);
  }
  return report.exit_code;
}

}  // namespace tqft::cli
