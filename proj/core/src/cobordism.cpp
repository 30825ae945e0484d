#include "tqft/cobordism.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace tqft {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

std::string_view to_string(Generator g) {
  switch (g) {
    case Generator::kUnit: return "unit";
    case Generator::kCounit: return "counit";
    case Generator::kMul: return "mul";
    case Generator::kComul: return "comul";
    case Generator::kId: return "id";
    case Generator::kSwap: return "swap";
  }
  return "?";
}

Cobordism::Cobordism(std::size_t inputs, std::size_t outputs, std::vector<Component> components)
    : inputs_(inputs), outputs_(outputs), components_(std::move(components)) {
  std::vector<int> seen_in(inputs_, 0);
  std::vector<int> seen_out(outputs_, 0);
  for (const auto& c : components_) {
    if (c.genus < 0) throw std::invalid_argument("cobordism component with negative genus");
    for (auto i : c.inputs) {
      if (i >= inputs_) throw std::invalid_argument("cobordism input position out of range");
      ++seen_in[i];
    }
    for (auto o : c.outputs) {
      if (o >= outputs_) throw std::invalid_argument("cobordism output position out of range");
      ++seen_out[o];
    }
  }
  auto once = [](int count) { return count == 1; };
  if (!std::all_of(seen_in.begin(), seen_in.end(), once) || !std::all_of(seen_out.begin(), seen_out.end(), once)) {
    throw std::invalid_argument("every boundary circle must belong to exactly one component");
  }
}

Cobordism Cobordism::generator(Generator g) {
  switch (g) {
    case Generator::kUnit: return Cobordism(0, 1, {{0, {}, {0}}});
    case Generator::kCounit: return Cobordism(1, 0, {{0, {0}, {}}});
    case Generator::kMul: return Cobordism(2, 1, {{0, {0, 1}, {0}}});
    case Generator::kComul: return Cobordism(1, 2, {{0, {0}, {0, 1}}});
    case Generator::kId: return Cobordism(1, 1, {{0, {0}, {0}}});
    case Generator::kSwap: return Cobordism(2, 2, {{0, {0}, {1}}, {0, {1}, {0}}});
  }
  throw std::invalid_argument("unknown generator");
}

Cobordism Cobordism::surface(int genus, std::size_t inputs, std::size_t outputs) {
  Component c{genus, std::vector<std::size_t>(inputs), std::vector<std::size_t>(outputs)};
  std::iota(c.inputs.begin(), c.inputs.end(), 0);
  std::iota(c.outputs.begin(), c.outputs.end(), 0);
  return Cobordism(inputs, outputs, {std::move(c)});
}

Cobordism Cobordism::identity(std::size_t circles) {
  std::vector<Component> components;
  for (std::size_t k = 0; k < circles; ++k) components.push_back({0, {k}, {k}});
  return Cobordism(circles, circles, std::move(components));
}

int Cobordism::euler_characteristic() const {
  int chi = 0;
  for (const auto& c : components_) chi += c.euler_characteristic();
  return chi;
}

Cobordism compose(const Cobordism& first, const Cobordism& second) {
  if (first.outputs() != second.inputs()) {
    throw ArityMismatch("cannot glue " + std::to_string(first.outputs()) + " outputs into " +
                        std::to_string(second.inputs()) + " inputs");
  }
  const auto& lhs = first.components();
  const auto& rhs = second.components();
  const std::size_t offset = lhs.size();
  const std::size_t glued = first.outputs();

  std::vector<std::size_t> out_owner(glued);
  std::vector<std::size_t> in_owner(glued);
  for (std::size_t c = 0; c < lhs.size(); ++c) {
    for (auto o : lhs[c].outputs) out_owner[o] = c;
  }
  for (std::size_t c = 0; c < rhs.size(); ++c) {
    for (auto i : rhs[c].inputs) in_owner[i] = offset + c;
  }

  DisjointSets sets(lhs.size() + rhs.size());
  for (std::size_t k = 0; k < glued; ++k) sets.unite(out_owner[k], in_owner[k]);

  struct Group {
    int chi = 0;
    int boundary = 0;
    int glued = 0;
    Component merged;
  };
  std::vector<Group> groups;
  std::vector<std::size_t> group_of_root(lhs.size() + rhs.size(), static_cast<std::size_t>(-1));
  auto group_for = [&](std::size_t node) -> Group& {
    const std::size_t root = sets.find(node);
    if (group_of_root[root] == static_cast<std::size_t>(-1)) {
      group_of_root[root] = groups.size();
      groups.emplace_back();
    }
    return groups[group_of_root[root]];
  };

  for (std::size_t c = 0; c < lhs.size(); ++c) {
    Group& g = group_for(c);
    g.chi += lhs[c].euler_characteristic();
    g.boundary += lhs[c].boundary();
    g.merged.inputs.insert(g.merged.inputs.end(), lhs[c].inputs.begin(), lhs[c].inputs.end());
  }
  for (std::size_t c = 0; c < rhs.size(); ++c) {
    Group& g = group_for(offset + c);
    g.chi += rhs[c].euler_characteristic();
    g.boundary += rhs[c].boundary();
    g.merged.outputs.insert(g.merged.outputs.end(), rhs[c].outputs.begin(), rhs[c].outputs.end());
  }
  for (std::size_t k = 0; k < glued; ++k) ++group_for(out_owner[k]).glued;

  std::vector<Component> components;
  components.reserve(groups.size());
  int chi_total = 0;
  for (auto& g : groups) {
    Component c = std::move(g.merged);
    const int b = c.boundary();
    if (b != g.boundary - 2 * g.glued) throw std::logic_error("gluing lost track of boundary circles");
    // Gluing along circles adds Euler characteristics: χ = 2 − 2g − b.
    const int twice_genus = 2 - g.chi - b;
    if (twice_genus < 0 || twice_genus % 2 != 0) {
      throw std::logic_error("gluing produced an invalid genus (Euler characteristic " + std::to_string(g.chi) +
                             ", boundary " + std::to_string(b) + ")");
    }
    c.genus = twice_genus / 2;
    chi_total += c.euler_characteristic();
    components.push_back(std::move(c));
  }
  if (chi_total != first.euler_characteristic() + second.euler_characteristic()) {
    throw std::logic_error("Euler characteristic is not additive across gluing");
  }
  return Cobordism(first.inputs(), second.outputs(), std::move(components));
}

Cobordism tensor(const Cobordism& a, const Cobordism& b) {
  std::vector<Component> components = a.components();
  for (Component c : b.components()) {
    for (auto& i : c.inputs) i += a.inputs();
    for (auto& o : c.outputs) o += a.outputs();
    components.push_back(std::move(c));
  }
  return Cobordism(a.inputs() + b.inputs(), a.outputs() + b.outputs(), std::move(components));
}

Cobordism reverse(const Cobordism& m) {
  std::vector<Component> components;
  components.reserve(m.components().size());
  for (const auto& c : m.components()) components.push_back({c.genus, c.outputs, c.inputs});
  return Cobordism(m.outputs(), m.inputs(), std::move(components));
}

Cobordism normal_form(const Cobordism& m) {
  std::vector<Component> components = m.components();
  for (auto& c : components) {
    std::sort(c.inputs.begin(), c.inputs.end());
    std::sort(c.outputs.begin(), c.outputs.end());
  }
  std::sort(components.begin(), components.end(), [](const Component& x, const Component& y) {
    const std::size_t px = x.inputs.size(), qx = x.outputs.size();
    const std::size_t py = y.inputs.size(), qy = y.outputs.size();
    return std::tie(x.genus, px, qx, x.inputs, x.outputs) < std::tie(y.genus, py, qy, y.inputs, y.outputs);
  });
  return Cobordism(m.inputs(), m.outputs(), std::move(components));
}

namespace {

struct ComponentMaps {
  const FrobeniusAlgebra& algebra;
  const DerivedStructures derived;

  Matrix merge(std::size_t p) const {
    if (p == 0) return algebra.unit();
    const Matrix id = Matrix::identity(algebra.dim());
    Matrix m = id;
    for (std::size_t k = 1; k < p; ++k) m = algebra.mul_matrix() * kron(m, id);
    return m;
  }

  Matrix split(std::size_t q) const {
    if (q == 0) return algebra.counit();
    const Matrix id = Matrix::identity(algebra.dim());
    Matrix s = id;
    for (std::size_t k = 1; k < q; ++k) s = kron(s, id) * derived.comul;
    return s;
  }

  Matrix component(const Component& c) const {
    Matrix m = merge(c.inputs.size());
    for (int g = 0; g < c.genus; ++g) m = derived.handle * m;
    return split(c.outputs.size()) * m;
  }
};

}  // namespace

Matrix evaluate(const FrobeniusAlgebra& a, const Cobordism& m, double tol) {
  const std::size_t n = a.dim();
  const ComponentMaps maps{a, derive(a, tol)};

  const std::size_t rows = ipow(n, m.outputs());
  const std::size_t cols = ipow(n, m.inputs());

  Scalar closed = 1.0;
  std::vector<const Component*> open;
  std::vector<Matrix> blocks;
  for (const auto& c : m.components()) {
    if (c.inputs.empty() && c.outputs.empty()) {
      closed *= maps.component(c)[0];
    } else {
      open.push_back(&c);
      blocks.push_back(maps.component(c));
    }
  }

  auto digits = [n](std::size_t index, std::size_t length) {
    std::vector<std::size_t> d(length);
    for (std::size_t k = length; k-- > 0;) {
      d[k] = index % n;
      index /= n;
    }
    return d;
  };
  auto sub_index = [n](const std::vector<std::size_t>& d, const std::vector<std::size_t>& positions) {
    std::size_t idx = 0;
    for (auto p : positions) idx = idx * n + d[p];
    return idx;
  };

  std::vector<std::vector<std::size_t>> out_digits(rows);
  for (std::size_t r = 0; r < rows; ++r) out_digits[r] = digits(r, m.outputs());
  std::vector<std::vector<std::size_t>> in_digits(cols);
  for (std::size_t c = 0; c < cols; ++c) in_digits[c] = digits(c, m.inputs());

  Matrix z(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      Scalar value = closed;
      for (std::size_t k = 0; k < open.size() && value != Scalar{}; ++k) {
        value *= blocks[k](sub_index(out_digits[r], open[k]->outputs), sub_index(in_digits[c], open[k]->inputs));
      }
      z(r, c) = value;
    }
  }
  return z;
}

std::string describe(const Cobordism& m) {
  std::ostringstream os;
  os << m.inputs() << "->" << m.outputs();
  for (const auto& c : m.components()) {
    os << " [g=" << c.genus << " in{";
    for (std::size_t i = 0; i < c.inputs.size(); ++i) os << (i ? "," : "") << c.inputs[i];
    os << "} out{";
    for (std::size_t i = 0; i < c.outputs.size(); ++i) os << (i ? "," : "") << c.outputs[i];
    os << "}]";
  }
  return os.str();
}

}  // namespace tqft
