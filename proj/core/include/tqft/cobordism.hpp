#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tqft/frobenius.hpp"
#include "tqft/linalg.hpp"

namespace tqft {

enum class Generator { kUnit, kCounit, kMul, kComul, kId, kSwap };

std::string_view to_string(Generator g);

/// A connected surface of the given genus. Boundary circles are referenced by
/// their position in the cobordism's ordered input and output lists.
struct Component {
  int genus = 0;
  std::vector<std::size_t> inputs;
  std::vector<std::size_t> outputs;

  int boundary() const { return static_cast<int>(inputs.size() + outputs.size()); }
  int euler_characteristic() const { return 2 - 2 * genus - boundary(); }

  auto operator<=>(const Component&) const = default;
};

/// An oriented 2-dimensional cobordism from `inputs()` circles to `outputs()`
/// circles, stored as its connected components.
class Cobordism {
 public:
  static Cobordism generator(Generator g);
  /// Connected genus-g surface with p inputs and q outputs.
  static Cobordism surface(int genus, std::size_t inputs, std::size_t outputs);
  static Cobordism identity(std::size_t circles);

  /// Validates that every boundary position is used exactly once and genera
  /// are non-negative.
  Cobordism(std::size_t inputs, std::size_t outputs, std::vector<Component> components);

  std::size_t inputs() const { return inputs_; }
  std::size_t outputs() const { return outputs_; }
  const std::vector<Component>& components() const { return components_; }
  int euler_characteristic() const;

  friend bool operator==(const Cobordism&, const Cobordism&) = default;

 private:
  std::size_t inputs_ = 0;
  std::size_t outputs_ = 0;
  std::vector<Component> components_;
};

/// Glues output k of `first` to input k of `second`. Throws ArityMismatch.
Cobordism compose(const Cobordism& first, const Cobordism& second);
/// Disjoint union; the second operand's circles are numbered after the first's.
Cobordism tensor(const Cobordism& a, const Cobordism& b);
/// M ↦ M*: the same surface read from outputs to inputs.
Cobordism reverse(const Cobordism& m);
/// Sorts boundary positions inside each component and the components by
/// (genus, inputs, outputs, wiring).
Cobordism normal_form(const Cobordism& m);

/// Linear map V^{⊗inputs} → V^{⊗outputs}, an n^outputs x n^inputs matrix.
/// A component (g, p, q) evaluates to split_q ∘ H^g ∘ merge_p.
Matrix evaluate(const FrobeniusAlgebra& a, const Cobordism& m, double tol = kDefaultTol);

std::string describe(const Cobordism& m);

}  // namespace tqft
