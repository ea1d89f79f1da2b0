#include "polyclone/synthesis.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace polyclone {

BoundaryBits::BoundaryBits(const TruthTable& table) : n_(table.arity()) {
  const std::uint64_t all = table.rows() - 1;
  bits_.reserve(2 * n_ + 2);
  for (unsigned i = 1; i <= n_; ++i) bits_.push_back(table(std::uint64_t{1} << (n_ - i)));
  for (unsigned i = 1; i <= n_; ++i) {
    bits_.push_back(table(all ^ (std::uint64_t{1} << (n_ - i))));
  }
  bits_.push_back(table(0));
  bits_.push_back(table(all));
}

bool is_closed_under(NamedOp op, const MultiTable& table) {
  const std::uint64_t rows = std::uint64_t{1} << table.arity;
  const unsigned k = op_arity(op);
  const std::uint64_t c_end = k == 3 ? rows : 1;
  for (std::uint64_t a = 0; a < rows; ++a) {
    for (std::uint64_t b = 0; b < rows; ++b) {
      for (std::uint64_t c = 0; c < c_end; ++c) {
        std::uint64_t image = 0;
        switch (op) {
          case NamedOp::and_: image = a & b; break;
          case NamedOp::or_: image = a | b; break;
          case NamedOp::aff: image = a ^ b ^ c; break;
          case NamedOp::maj: image = (a & b) | (a & c) | (b & c); break;
        }
        for (const auto& out : table.outputs) {
          if (out[image] != apply_op(op, out[a], out[b], out[c])) return false;
        }
      }
    }
  }
  return true;
}

namespace {

/// Accumulator r: either a constant or a wire of the program being built.
struct Value {
  bool is_const;
  bool constant;
  std::size_t wire;

  static Value of(bool c) { return {true, c, 0}; }
  static Value at(std::size_t w) { return {false, false, w}; }
};

class Builder {
public:
  explicit Builder(Program& program) : program_(program) {
    // Reuse NOT gates on inputs that already exist.
    for (std::size_t w = program.arity() + 1; w <= program.wire_count(); ++w) {
      const auto& g = program.gate(w);
      if (g.kind == GateKind::not_ && g.a <= program.arity()) negated_.emplace(g.a, w);
    }
  }

  std::size_t negation(std::size_t wire) {
    auto it = negated_.find(wire);
    if (it != negated_.end()) return it->second;
    const auto w = program_.add(GateKind::not_, wire);
    negated_.emplace(wire, w);
    return w;
  }

  std::size_t gate(GateKind kind, std::size_t a, std::size_t b) {
    return program_.add(kind, a, b);
  }

  // r v lit, where lit is x_i or its negation.
  Value or_with(Value r, std::size_t input, bool negate) {
    if (r.is_const) return r.constant ? r : Value::at(literal(input, negate));
    return Value::at(gate(GateKind::or_, r.wire, literal(input, negate)));
  }

  Value and_with(Value r, std::size_t input) {
    if (r.is_const) return r.constant ? Value::at(input) : r;
    return Value::at(gate(GateKind::and_, r.wire, input));
  }

  Value xor_with(Value r, std::size_t input) {
    if (r.is_const) return Value::at(r.constant ? negation(input) : input);
    const auto any = gate(GateKind::or_, r.wire, input);
    const auto both = gate(GateKind::and_, r.wire, input);
    return Value::at(gate(GateKind::and_, any, program_.add(GateKind::not_, both)));
  }

  /// Constant c as x1 & ~x1 or x1 | ~x1.
  std::size_t constant(bool c) {
    auto& slot = constants_[c ? 1 : 0];
    if (slot == 0) slot = gate(c ? GateKind::or_ : GateKind::and_, 1, negation(1));
    return slot;
  }

  std::size_t materialize(Value r) { return r.is_const ? constant(r.constant) : r.wire; }

private:
  std::size_t literal(std::size_t input, bool negate) {
    return negate ? negation(input) : input;
  }

  Program& program_;
  std::map<std::size_t, std::size_t> negated_;
  std::size_t constants_[2] = {0, 0};
};

// Folds one of the four update loops with all t-bits known.
Value fold_construction(Builder& builder, const BoundaryBits& t, NamedOp op) {
  const unsigned n = t.arity();
  Value r = Value::of(false);
  switch (op) {
    case NamedOp::or_:
      r = Value::of(t.all_zero());
      for (unsigned i = 1; i <= n; ++i) {
        if (t.unique_one(i)) r = builder.or_with(r, i, false);
      }
      break;
    case NamedOp::and_:
      r = Value::of(t.all_one());
      for (unsigned i = 1; i <= n; ++i) {
        if (!t.unique_zero(i)) r = builder.and_with(r, i);
      }
      break;
    case NamedOp::aff:
      r = Value::of(t.all_zero());
      for (unsigned i = 1; i <= n; ++i) {
        if (t.all_zero() != t.unique_one(i)) r = builder.xor_with(r, i);
      }
      break;
    case NamedOp::maj:
      // maj(a, r, b) is r when a != b and the constant a otherwise.
      r = Value::of(t.all_one());
      for (unsigned i = 1; i <= n; ++i) {
        if (t.all_zero() != t.unique_zero(i)) continue;
        r = t.all_zero() ? builder.or_with(r, i, true) : builder.and_with(r, i);
      }
      break;
  }
  return r;
}

}  // namespace

Program synthesize_from_polymorphism(const TruthTable& table, NamedOp op) {
  if (!is_closed_under(op, table)) {
    throw NotClosedError("truth table " + table.bits() + " is not closed under " +
                         std::string(op_name(op)));
  }
  Program program(table.arity());
  Builder builder(program);
  const Value r = fold_construction(builder, BoundaryBits(table), op);
  const auto out = builder.materialize(r);
  program.set_outputs({out});
  return program;
}

Program synthesize_multi_output(const MultiTable& table, NamedOp op) {
  if (table.outputs.empty()) throw std::invalid_argument("multi-output table has no outputs");
  for (const auto& c : table.outputs) {
    if (c.arity() != table.arity) throw std::invalid_argument("output column arity mismatch");
  }
  if (!is_closed_under(op, table)) {
    throw NotClosedError("multi-output relation is not closed under " +
                         std::string(op_name(op)));
  }
  Program program(table.arity);
  Builder builder(program);
  std::vector<std::size_t> outputs;
  for (std::size_t j = 0; j < table.output_count(); ++j) {
    const Value r = fold_construction(builder, BoundaryBits(table.component(j)), op);
    outputs.push_back(builder.materialize(r));
  }
  program.set_outputs(std::move(outputs));
  return program;
}

std::vector<std::uint64_t> difference_rows(const TruthTable& f, const TruthTable& g) {
  if (f.arity() != g.arity()) throw std::invalid_argument("arity mismatch");
  std::vector<std::uint64_t> rows;
  for (std::uint64_t r = 0; r < f.rows(); ++r) {
    if (f(r) != g(r)) rows.push_back(r);
  }
  return rows;
}

Program synthesize_patched(const TruthTable& f, const TruthTable& g, NamedOp op,
                           const std::vector<std::uint64_t>& patch) {
  if (f.arity() != g.arity()) throw PatchError("f and g have different arities");
  std::vector<std::uint64_t> points(patch);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  for (auto p : points) {
    if (p >= f.rows()) throw PatchError("patch row " + std::to_string(p) + " out of range");
  }
  for (auto r : difference_rows(f, g)) {
    if (!std::binary_search(points.begin(), points.end(), r)) {
      throw PatchError("f and g differ on row " + std::to_string(r) +
                       " which is not in the patch");
    }
  }

  Program program = synthesize_from_polymorphism(g, op);
  if (points.empty()) return program;

  const unsigned n = f.arity();
  const std::size_t base = program.output();
  Builder builder(program);
  std::vector<std::size_t> ones;
  std::vector<std::size_t> zeros;
  for (auto p : points) {
    // Equality comparator x == p: the AND of one literal per input.
    std::size_t eq = 0;
    for (unsigned i = 1; i <= n; ++i) {
      const bool bit = (p >> (n - i)) & 1u;
      const std::size_t lit = bit ? i : builder.negation(i);
      eq = eq == 0 ? lit : builder.gate(GateKind::and_, eq, lit);
    }
    (f(p) ? ones : zeros).push_back(eq);
  }
  auto any_of = [&builder](const std::vector<std::size_t>& wires) {
    std::size_t acc = wires.front();
    for (std::size_t k = 1; k < wires.size(); ++k) acc = builder.gate(GateKind::or_, acc, wires[k]);
    return acc;
  };
  std::size_t out = base;
  if (!ones.empty()) out = builder.gate(GateKind::or_, out, any_of(ones));
  if (!zeros.empty()) {
    out = builder.gate(GateKind::and_, out, program.add(GateKind::not_, any_of(zeros)));
  }
  program.set_outputs({out});
  return program;
}

}  // namespace polyclone
