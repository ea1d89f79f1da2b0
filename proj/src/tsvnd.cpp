#include "polyclone/tsvnd.hpp"

#include <map>

namespace polyclone {

std::string_view tri_out_name(TriOut v) {
  switch (v) {
    case TriOut::zero: return "0";
    case TriOut::one: return "1";
    case TriOut::quit: return "quit";
  }
  return "?";
}

// ---------------------------------------------------------------- TsvndCircuit

TsvndCircuit TsvndCircuit::from_program(unsigned n, Program program) {
  if (program.arity() < n) throw TsvndError("program has fewer inputs than n");
  if (program.outputs().size() != 2) {
    throw TsvndError("program-form TSVND circuits need two outputs (valid, value)");
  }
  return TsvndCircuit(n, std::move(program));
}

TsvndCircuit TsvndCircuit::from_constraints(unsigned n, std::size_t y_count,
                                            std::vector<Constraint> constraints) {
  return from_constraints(n, y_count, std::move(constraints), n);
}

TsvndCircuit TsvndCircuit::from_constraints(unsigned n, std::size_t y_count,
                                            std::vector<Constraint> constraints,
                                            std::size_t output) {
  if (n < 1) throw TsvndError("n must be at least 1");
  const std::size_t vars = n + 1 + y_count;
  auto check = [vars](std::size_t v) {
    if (v >= vars) throw TsvndError("constraint variable out of range");
  };
  for (auto& c : constraints) {
    if (c.kind == GateKind::not_) c.b = c.a;
    check(c.a);
    check(c.b);
    check(c.out);
  }
  check(output);
  return TsvndCircuit(n, ConstraintBody{y_count, std::move(constraints), output});
}

std::size_t TsvndCircuit::nondet_arity() const {
  if (is_constraint_form()) return 1 + constraints().y_count;
  return program().arity() - n_;
}

std::size_t TsvndCircuit::size() const {
  if (is_constraint_form()) return constraints().constraints.size();
  return program().size();
}

std::string TsvndCircuit::variable_name(std::size_t var) const {
  if (var <= n_) return "x" + std::to_string(var + 1);
  return "y" + std::to_string(var - n_);
}

// ---------------------------------------------------------------- evaluation

namespace {

void require_enumerable(const TsvndCircuit& c) {
  if (c.det_arity() + c.nondet_arity() > kMaxEnumeratedInputs) {
    throw TsvndError("circuit has too many inputs to enumerate");
  }
}

}  // namespace

TriOut tsvnd_evaluate(const TsvndCircuit& circuit, std::uint64_t x, std::uint64_t y) {
  const unsigned n = circuit.det_arity();
  const std::size_t m = circuit.nondet_arity();
  if (circuit.is_constraint_form()) {
    const auto& body = circuit.constraints();
    std::vector<bool> var(n + m);
    for (unsigned i = 0; i < n; ++i) var[i] = (x >> (n - 1 - i)) & 1u;
    for (std::size_t j = 0; j < m; ++j) var[n + j] = (y >> (m - 1 - j)) & 1u;
    for (const auto& c : body.constraints) {
      if (apply_gate(c.kind, var[c.a], var[c.b]) != var[c.out]) return TriOut::quit;
    }
    return var[body.output] ? TriOut::one : TriOut::zero;
  }
  const auto ev = evaluate(circuit.program(), (x << m) | y);
  if (!ev.outputs[0]) return TriOut::quit;
  return ev.outputs[1] ? TriOut::one : TriOut::zero;
}

TsvndCircuit compile_to_program(const TsvndCircuit& circuit) {
  if (!circuit.is_constraint_form()) return circuit;
  const unsigned n = circuit.det_arity();
  const auto& body = circuit.constraints();
  Program p(static_cast<unsigned>(n + circuit.nondet_arity()));
  auto wire = [](std::size_t var) { return var + 1; };

  std::vector<std::size_t> checks;
  for (const auto& c : body.constraints) {
    // The gate itself is kept so its matrix reappears in extracted covers.
    const auto out = wire(c.out);
    const auto v = p.add(c.kind, wire(c.a), wire(c.b));
    const auto both = p.add(GateKind::and_, v, out);
    const auto neither = p.add(GateKind::not_, p.add(GateKind::or_, v, out));
    checks.push_back(p.add(GateKind::or_, both, neither));
  }
  std::size_t valid = 0;
  if (checks.empty()) {
    valid = p.add(GateKind::or_, 1, p.add(GateKind::not_, 1));
  } else {
    valid = checks.front();
    for (std::size_t k = 1; k < checks.size(); ++k) {
      valid = p.add(GateKind::and_, valid, checks[k]);
    }
  }
  p.set_outputs({valid, wire(body.output)});
  return TsvndCircuit::from_program(n, std::move(p));
}

namespace {

struct Accepts {
  bool zero = false;
  bool one = false;
};

std::vector<Accepts> accepted_values(const TsvndCircuit& circuit) {
  require_enumerable(circuit);
  const std::uint64_t xs = std::uint64_t{1} << circuit.det_arity();
  const std::uint64_t ys = std::uint64_t{1} << circuit.nondet_arity();
  std::vector<Accepts> acc(xs);
  for (std::uint64_t x = 0; x < xs; ++x) {
    for (std::uint64_t y = 0; y < ys && !(acc[x].zero && acc[x].one); ++y) {
      switch (tsvnd_evaluate(circuit, x, y)) {
        case TriOut::zero: acc[x].zero = true; break;
        case TriOut::one: acc[x].one = true; break;
        case TriOut::quit: break;
      }
    }
  }
  return acc;
}

}  // namespace

TsvndReport validate_tsvnd(const TsvndCircuit& circuit, const TruthTable& table) {
  if (table.arity() != circuit.det_arity()) throw TsvndError("arity mismatch");
  const auto acc = accepted_values(circuit);
  TsvndReport report;
  for (std::uint64_t x = 0; x < acc.size(); ++x) {
    if (!acc[x].zero && !acc[x].one) report.quitting_inputs.push_back(x);
    if (acc[x].zero && acc[x].one) report.ambiguous_inputs.push_back(x);
    if ((table(x) && acc[x].zero) || (!table(x) && acc[x].one)) report.wrong_inputs.push_back(x);
  }
  report.total = report.quitting_inputs.empty();
  report.single_valued = report.ambiguous_inputs.empty();
  report.computes_f = report.total && report.single_valued && report.wrong_inputs.empty();
  return report;
}

std::optional<TruthTable> decided_function(const TsvndCircuit& circuit) {
  const auto acc = accepted_values(circuit);
  std::uint64_t bits = 0;
  for (std::uint64_t x = 0; x < acc.size(); ++x) {
    if (acc[x].zero == acc[x].one) return std::nullopt;
    if (acc[x].one) bits |= std::uint64_t{1} << x;
  }
  return TruthTable(circuit.det_arity(), Column(bits, circuit.det_arity()));
}

TruthTable decided_function(const NdCircuit& circuit) {
  if (circuit.program.arity() != circuit.n + circuit.m) {
    throw TsvndError("ND circuit program arity must be n + m");
  }
  if (circuit.n + circuit.m > kMaxEnumeratedInputs) {
    throw TsvndError("circuit has too many inputs to enumerate");
  }
  const bool nd = circuit.mode == NdCircuit::Mode::nd;
  // nd: f(x) = exists y with output 1; cond: f(x) = no y with output 0.
  return TruthTable::from_function(circuit.n, [&](std::uint64_t x) {
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << circuit.m); ++y) {
      const bool out = evaluate(circuit.program, (x << circuit.m) | y).output();
      if (nd && out) return true;
      if (!nd && !out) return false;
    }
    return !nd;
  });
}

// ---------------------------------------------------------------- ND / coND

namespace {

/// Copies `src` gates into `dst`, mapping src wire w to map(w) for inputs.
/// Returns the dst wire of src's output.
template <typename InputMap>
std::size_t embed(Program& dst, const Program& src, InputMap input_wire) {
  std::vector<std::size_t> wire(src.wire_count() + 1);
  for (std::size_t w = 1; w <= src.arity(); ++w) wire[w] = input_wire(w);
  for (std::size_t w = src.arity() + 1; w <= src.wire_count(); ++w) {
    const auto& g = src.gate(w);
    wire[w] = dst.add(g.kind, wire[g.a], g.b ? wire[g.b] : 0);
  }
  return wire[src.output()];
}

}  // namespace

TsvndCircuit merge_nd_cond(const NdCircuit& c1, const NdCircuit& c2,
                           const std::optional<TruthTable>& table) {
  if (c1.mode != NdCircuit::Mode::nd) throw TsvndError("first circuit must be non-deterministic");
  if (c2.mode != NdCircuit::Mode::cond) {
    throw TsvndError("second circuit must be co-non-deterministic");
  }
  if (c1.n != c2.n) throw TsvndError("ND and coND circuits have different arities");
  const auto f1 = decided_function(c1);
  const auto f2 = decided_function(c2);
  if (f1 != f2) {
    throw TsvndError("ND circuit decides " + f1.bits() + " but coND circuit decides " +
                     f2.bits());
  }
  if (table && *table != f1) {
    throw TsvndError("circuits decide " + f1.bits() + ", expected " + table->bits());
  }

  const unsigned n = c1.n;
  Program p(static_cast<unsigned>(n + c1.m + c2.m));
  const auto o1 = embed(p, c1.program, [](std::size_t w) { return w; });
  const auto o2 = embed(p, c2.program, [n, &c1](std::size_t w) {
    return w <= n ? w : w + c1.m;
  });
  const auto valid = p.add(GateKind::or_, o1, p.add(GateKind::not_, o2));
  p.set_outputs({valid, o1});
  return TsvndCircuit::from_program(n, std::move(p));
}

std::pair<NdCircuit, NdCircuit> split_tsvnd(const TsvndCircuit& circuit) {
  if (!decided_function(circuit)) {
    throw TsvndError("circuit is not a total single-valued ND circuit");
  }
  const auto compiled = compile_to_program(circuit);
  const unsigned n = compiled.det_arity();
  const std::size_t m = compiled.nondet_arity();
  const Program& body = compiled.program();
  const auto valid = body.outputs()[0];
  const auto value = body.outputs()[1];

  Program nd = body;
  nd.set_outputs({nd.add(GateKind::and_, valid, value)});
  Program cond = body;
  cond.set_outputs({cond.add(GateKind::or_, cond.add(GateKind::not_, valid), value)});
  return {NdCircuit{NdCircuit::Mode::nd, n, m, std::move(nd)},
          NdCircuit{NdCircuit::Mode::cond, n, m, std::move(cond)}};
}

// ---------------------------------------------------------------- covers <-> TSVND

WitnessTable witness_table(const TsvndCircuit& circuit) {
  require_enumerable(circuit);
  const unsigned n = circuit.det_arity();
  const std::size_t m = circuit.nondet_arity();
  WitnessTable fy{n, m, {}};
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    std::optional<std::uint64_t> chosen;
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << m); ++y) {
      if (tsvnd_evaluate(circuit, x, y) != TriOut::quit) {
        chosen = y;
        break;
      }
    }
    if (!chosen) throw TsvndError("no accepted witness for input row " + std::to_string(x));
    fy.y.push_back(*chosen);
  }
  return fy;
}

Cover pol_cover_from_tsvnd(const TsvndCircuit& circuit, const TruthTable& table) {
  const auto report = validate_tsvnd(circuit, table);
  if (!report.computes_f) throw TsvndError("circuit does not compute " + table.bits());

  const auto compiled = compile_to_program(circuit);
  const Program& p = compiled.program();
  const unsigned n = table.arity();
  const auto fy = witness_table(compiled);

  std::vector<std::uint64_t> bits(p.wire_count(), 0);
  for (std::uint64_t x = 0; x < table.rows(); ++x) {
    const auto ev = evaluate(p, (x << fy.m) | fy.y[x]);
    for (std::size_t w = 0; w < p.wire_count(); ++w) {
      if (ev.trace[w]) bits[w] |= std::uint64_t{1} << x;
    }
  }
  auto col = [&](std::size_t wire) { return Column(bits[wire - 1], n); };

  Cover cover{table, {}, Flavor::pol};
  for (std::size_t w = p.arity() + 1; w <= p.wire_count(); ++w) {
    const auto& g = p.gate(w);
    if (g.kind == GateKind::not_) {
      cover.gates.emplace_back(g.kind, col(g.a), col(w));
    } else {
      cover.gates.emplace_back(g.kind, col(g.a), col(g.b), col(w));
    }
  }
  return cover;
}

namespace {

/// Variable numbering of a cover's columns: x1..xn, x_{n+1} = r unless r is
/// an input column, then y1.. in relevant-column order.
struct ColumnNames {
  std::map<Column, std::size_t> var;
  std::size_t output = 0;
  std::size_t y_count = 0;
};

ColumnNames name_columns(const Cover& cover) {
  const TruthTable& table = cover.table;
  const unsigned n = table.arity();
  const Column& r = table.result_column();
  ColumnNames names;
  for (unsigned i = 1; i <= n; ++i) names.var.emplace(table.input_column(i), i - 1);
  const bool projection = names.var.count(r) != 0;
  names.output = projection ? names.var.at(r) : n;
  if (!projection) names.var.emplace(r, n);

  bool touches_result = projection;
  for (const auto& g : cover.gates) {
    for (const auto& c : g.columns()) touches_result = touches_result || c == r;
  }
  if (!touches_result) {
    Witness w(Witness::Mode::total);
    for (const auto& c : relevant_columns(cover)) w.set(c, c == r ? !c[0] : c[0]);
    throw MissingResultColumn("no cover gate touches the result column " + r.str(),
                              std::move(w));
  }
  for (const auto& c : relevant_columns(cover)) {
    if (names.var.emplace(c, n + 1 + names.y_count).second) ++names.y_count;
  }
  return names;
}

}  // namespace

TsvndCircuit tsvnd_from_pol_cover(const Cover& cover) {
  const unsigned n = cover.table.arity();
  const auto names = name_columns(cover);
  std::vector<Constraint> constraints;
  for (const auto& g : cover.gates) {
    const auto a = names.var.at(g.in1());
    const auto b = g.kind() == GateKind::not_ ? a : names.var.at(g.in2());
    constraints.push_back({g.kind(), a, b, names.var.at(g.out())});
  }
  return TsvndCircuit::from_constraints(n, names.y_count, std::move(constraints), names.output);
}

std::optional<Witness> wrong_value_witness(const Cover& cover) {
  const unsigned n = cover.table.arity();
  const auto names = name_columns(cover);
  const auto circuit = tsvnd_from_pol_cover(cover);
  require_enumerable(circuit);
  const std::size_t m = circuit.nondet_arity();
  for (std::uint64_t x = 0; x < cover.table.rows(); ++x) {
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << m); ++y) {
      const auto out = tsvnd_evaluate(circuit, x, y);
      if (out == TriOut::quit || (out == TriOut::one) == cover.table(x)) continue;
      const auto assignment = (x << m) | y;
      Witness w(Witness::Mode::total);
      for (const auto& [column, var] : names.var) {
        w.set(column, ((assignment >> (n + m - 1 - var)) & 1u) != 0);
      }
      return w;
    }
  }
  return std::nullopt;
}

Cover anchored_pol_cover_from_tsvnd(const TsvndCircuit& circuit, const TruthTable& table) {
  auto cover = pol_cover_from_tsvnd(circuit, table);
  const auto x1 = table.input_column(1);
  cover.gates.emplace_back(GateKind::not_, x1, ~x1);
  cover.gates.emplace_back(GateKind::or_, x1, ~x1, Column::ones(table.arity()));
  return cover;
}

}  // namespace polyclone
