#include "polyclone/circuits.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <tuple>

namespace polyclone {

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::and_: return "AND";
    case GateKind::or_: return "OR";
    case GateKind::not_: return "NOT";
  }
  return "?";
}

std::optional<GateKind> parse_gate(std::string_view name) {
  if (name == "AND") return GateKind::and_;
  if (name == "OR") return GateKind::or_;
  if (name == "NOT") return GateKind::not_;
  return std::nullopt;
}

// ---------------------------------------------------------------- Program

Program::Program(unsigned arity) : arity_(arity) {
  if (arity < 1 || arity > 64) throw std::invalid_argument("program arity out of range");
}

Program::Program(unsigned arity, std::vector<Gate> gates, std::vector<std::size_t> outputs)
    : Program(arity) {
  for (auto& g : gates) {
    if (g.kind == GateKind::not_) g.b = 0;
    check_gate(g, arity_ + gates_.size() + 1);
    gates_.push_back(g);
  }
  set_outputs(std::move(outputs));
}

void Program::check_gate(const Gate& g, std::size_t wire) const {
  auto bad_ref = [wire](std::size_t ref) { return ref < 1 || ref >= wire; };
  if (bad_ref(g.a) || (g.kind != GateKind::not_ && bad_ref(g.b))) {
    throw std::invalid_argument("gate g" + std::to_string(wire) +
                                " must read earlier wires only");
  }
}

const Gate& Program::gate(std::size_t wire) const {
  if (wire <= arity_ || wire > wire_count()) {
    throw std::out_of_range("g" + std::to_string(wire) + " is not a gate");
  }
  return gates_[wire - arity_ - 1];
}

std::vector<std::size_t> Program::outputs() const {
  if (outputs_.empty()) return {wire_count()};
  return outputs_;
}

std::size_t Program::add(GateKind kind, std::size_t a, std::size_t b) {
  Gate g{kind, a, kind == GateKind::not_ ? 0 : b};
  check_gate(g, wire_count() + 1);
  gates_.push_back(g);
  return wire_count();
}

void Program::set_outputs(std::vector<std::size_t> outputs) {
  for (auto o : outputs) {
    if (o < 1 || o > wire_count()) {
      throw std::out_of_range("output g" + std::to_string(o) + " does not exist");
    }
  }
  outputs_ = std::move(outputs);
}

// ---------------------------------------------------------------- evaluation

Evaluation evaluate(const Program& program, std::uint64_t x) {
  const unsigned n = program.arity();
  Evaluation ev;
  ev.trace.resize(program.wire_count());
  for (unsigned i = 0; i < n; ++i) ev.trace[i] = (x >> (n - 1 - i)) & 1u;
  std::size_t wire = n;
  for (const auto& g : program.gates()) {
    ev.trace[wire++] = apply_gate(g.kind, ev.trace[g.a - 1], g.b ? ev.trace[g.b - 1] : false);
  }
  for (auto o : program.outputs()) ev.outputs.push_back(ev.trace[o - 1]);
  return ev;
}

Evaluation evaluate(const Program& program, const std::vector<bool>& x) {
  if (x.size() != program.arity()) throw std::invalid_argument("input width mismatch");
  return evaluate(program, row_index(x));
}

std::vector<Column> simulate(const Program& program) {
  const unsigned n = program.arity();
  if (n > kMaxArity) throw std::invalid_argument("simulate supports arity <= 6");
  std::vector<Column> cols;
  cols.reserve(program.wire_count());
  for (unsigned i = 1; i <= n; ++i) cols.push_back(input_column(i, n));
  for (const auto& g : program.gates()) {
    const auto a = cols[g.a - 1].bits();
    const auto b = g.b ? cols[g.b - 1].bits() : 0;
    cols.emplace_back(apply_gate_word(g.kind, a, b), n);
  }
  return cols;
}

Column gate_column(const Program& program, std::size_t index) {
  if (index < 1 || index > program.wire_count()) {
    throw std::out_of_range("wire g" + std::to_string(index) + " out of range");
  }
  return simulate(program)[index - 1];
}

std::optional<std::uint64_t> first_disagreement(const Program& program,
                                                const TruthTable& table) {
  if (program.arity() != table.arity()) throw std::invalid_argument("arity mismatch");
  const Column out = gate_column(program, program.output());
  const auto diff = (out ^ table.result_column()).bits();
  if (diff == 0) return std::nullopt;
  return static_cast<std::uint64_t>(__builtin_ctzll(diff));
}

bool computes(const Program& program, const TruthTable& table) {
  return !first_disagreement(program, table).has_value();
}

bool is_consistent(const Witness& w, const Program& program) {
  const auto cols = simulate(program);
  auto value = [&](std::size_t wire) {
    const Tri v = w.at(cols[wire - 1]);
    if (v == Tri::undef) throw std::invalid_argument("consistency needs a total witness");
    return v == Tri::one;
  };
  std::size_t wire = program.arity();
  for (const auto& g : program.gates()) {
    ++wire;
    if (apply_gate(g.kind, value(g.a), g.b ? value(g.b) : false) != value(wire)) return false;
  }
  return true;
}

bool is_consistent(const DenseOperation& w, const Program& program) {
  const auto cols = simulate(program);
  std::size_t wire = program.arity();
  for (const auto& g : program.gates()) {
    ++wire;
    const bool a = w.at(cols[g.a - 1]);
    const bool b = g.b ? w.at(cols[g.b - 1]) : false;
    if (apply_gate(g.kind, a, b) != w.at(cols[wire - 1])) return false;
  }
  return true;
}

Program normalize(const Program& program) {
  const unsigned n = program.arity();
  const auto cols = simulate(program);

  // Pass 1: alias every wire to the first wire carrying the same column.
  std::vector<std::size_t> alias(program.wire_count() + 1);
  std::vector<Gate> rewired;
  std::vector<std::size_t> kept_wire;  // original wire of each kept gate
  std::vector<std::size_t> renumber(program.wire_count() + 1, 0);
  for (unsigned i = 1; i <= n; ++i) {
    alias[i] = i;
    renumber[i] = i;
  }
  for (std::size_t wire = n + 1; wire <= program.wire_count(); ++wire) {
    std::size_t first = wire;
    for (std::size_t prev = 1; prev < wire; ++prev) {
      if (alias[prev] == prev && cols[prev - 1] == cols[wire - 1]) {
        first = prev;
        break;
      }
    }
    alias[wire] = first;
  }

  // Pass 2: keep representative gates reachable from the outputs.
  std::vector<bool> live(program.wire_count() + 1, false);
  std::vector<std::size_t> stack;
  for (auto o : program.outputs()) stack.push_back(alias[o]);
  while (!stack.empty()) {
    const auto w = stack.back();
    stack.pop_back();
    if (live[w]) continue;
    live[w] = true;
    if (w > n) {
      const auto& g = program.gate(w);
      stack.push_back(alias[g.a]);
      if (g.b) stack.push_back(alias[g.b]);
    }
  }

  Program out(n);
  for (std::size_t wire = n + 1; wire <= program.wire_count(); ++wire) {
    if (alias[wire] != wire || !live[wire]) continue;
    const auto& g = program.gate(wire);
    renumber[wire] =
        out.add(g.kind, renumber[alias[g.a]], g.b ? renumber[alias[g.b]] : 0);
  }
  std::vector<std::size_t> outs;
  for (auto o : program.outputs()) outs.push_back(renumber[alias[o]]);
  out.set_outputs(std::move(outs));
  return out;
}

// ---------------------------------------------------------------- exact search

namespace {

using Key = std::tuple<std::size_t, std::size_t, int>;

/// Depth-first search over canonical programs of a fixed size.
///
/// Canonical means: no two wires share a column, every gate feeds a later
/// gate except the last (which computes the target), and a gate that does
/// not read its predecessor has a strictly larger (a, b, kind) key than it.
/// Any irredundant program can be reordered into this form, so the search
/// stays exhaustive.
class ExactSearch {
public:
  ExactSearch(const TruthTable& table, Basis basis,
              const std::function<bool(const Program&)>& visit)
      : n_(table.arity()),
        mask_(table.result_column().mask()),
        target_(table.result_column().bits()),
        basis_(basis),
        visit_(visit) {
    for (unsigned i = 1; i <= n_; ++i) cols_.push_back(input_column(i, n_).bits());
    fanout_.assign(n_, 0);
  }

  /// Returns false if the visitor asked to stop.
  bool run(std::size_t size) {
    if (size == 0) {
      for (unsigned i = 0; i < n_; ++i) {
        if (cols_[i] == target_) {
          ++visited_;
          if (!visit_(Program(n_, {}, {i + 1}))) return false;
        }
      }
      return true;
    }
    return dfs(size);
  }

  std::size_t visited() const { return visited_; }

private:
  bool realized(std::uint64_t c) const {
    return std::find(cols_.begin(), cols_.end(), c) != cols_.end();
  }

  bool dfs(std::size_t remaining) {
    const std::size_t w = cols_.size();
    const bool has_prev = !gates_.empty();
    const std::size_t prev = w - 1;
    Key prev_key{0, 0, -1};
    if (has_prev) {
      const auto& g = gates_.back();
      prev_key = Key{g.a, g.b, static_cast<int>(g.kind)};
    }

    for (std::size_t a = 0; a < w; ++a) {
      if (basis_.not_ && !try_gate(GateKind::not_, a, 0, remaining, has_prev, prev, prev_key)) {
        return false;
      }
      for (std::size_t b = a + 1; b < w; ++b) {
        if (basis_.and_ && !try_gate(GateKind::and_, a, b, remaining, has_prev, prev, prev_key)) {
          return false;
        }
        if (basis_.or_ && !try_gate(GateKind::or_, a, b, remaining, has_prev, prev, prev_key)) {
          return false;
        }
      }
    }
    return true;
  }

  // Indices here are 0-based wire positions; Gate stores 1-based refs.
  bool try_gate(GateKind kind, std::size_t a, std::size_t b, std::size_t remaining,
                bool has_prev, std::size_t prev, const Key& prev_key) {
    const bool binary = kind != GateKind::not_;
    if (has_prev) {
      const bool reads_prev = a == prev || (binary && b == prev);
      const Key key{a + 1, binary ? b + 1 : 0, static_cast<int>(kind)};
      if (!reads_prev && !(prev_key < key)) return true;
    }
    const std::uint64_t c = apply_gate_word(kind, cols_[a], binary ? cols_[b] : 0) & mask_;
    if (remaining == 1) {
      if (c != target_) return true;
    } else if (c == target_) {
      return true;
    }
    if (realized(c)) return true;

    std::size_t consumed = 0;
    if (a >= n_ && fanout_[a] == 0) ++consumed;
    if (binary && b >= n_ && fanout_[b] == 0) ++consumed;
    const std::size_t unused_after = unused_ - consumed + 1;
    if (unused_after > remaining) return true;

    // push
    ++fanout_[a];
    if (binary) ++fanout_[b];
    cols_.push_back(c);
    fanout_.push_back(0);
    gates_.push_back(Gate{kind, a + 1, binary ? b + 1 : 0});
    const auto saved_unused = unused_;
    unused_ = unused_after;

    bool keep_going = true;
    if (remaining == 1) {
      ++visited_;
      keep_going = visit_(Program(n_, gates_));
    } else {
      keep_going = dfs(remaining - 1);
    }

    // pop
    unused_ = saved_unused;
    gates_.pop_back();
    fanout_.pop_back();
    cols_.pop_back();
    --fanout_[a];
    if (binary) --fanout_[b];
    return keep_going;
  }

  unsigned n_;
  std::uint64_t mask_;
  std::uint64_t target_;
  Basis basis_;
  const std::function<bool(const Program&)>& visit_;

  std::vector<std::uint64_t> cols_;
  std::vector<std::size_t> fanout_;
  std::vector<Gate> gates_;
  std::size_t unused_ = 0;
  std::size_t visited_ = 0;
};

}  // namespace

std::size_t enumerate_programs(const TruthTable& table, std::size_t size,
                               const std::function<bool(const Program&)>& visit,
                               Basis basis) {
  ExactSearch search(table, basis, visit);
  search.run(size);
  return search.visited();
}

std::optional<Program> optimal_circuit(const TruthTable& table, std::size_t max_size,
                                       Basis basis) {
  std::optional<Program> best;
  const std::function<bool(const Program&)> take_first = [&best](const Program& p) {
    best = p;
    return false;
  };
  for (std::size_t size = 0; size <= max_size; ++size) {
    ExactSearch search(table, basis, take_first);
    search.run(size);
    if (best) return best;
  }
  return std::nullopt;
}

}  // namespace polyclone
