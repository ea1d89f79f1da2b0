#include "polyclone/covers.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace polyclone {

std::string_view flavor_name(Flavor flavor) {
  return flavor == Flavor::pol ? "pol" : "ppol";
}

// ---------------------------------------------------------------- CoverGate

CoverGate::CoverGate(GateKind kind, Column in1, Column out)
    : kind_(kind), in1_(in1), in2_(), out_(out) {
  if (kind != GateKind::not_) throw std::invalid_argument("binary gate needs two inputs");
  if (in1.arity() != out.arity()) throw std::invalid_argument("gate column arity mismatch");
  if (~in1 != out) {
    throw std::invalid_argument("NOT gate output " + out.str() + " is not the complement of " +
                                in1.str());
  }
}

CoverGate::CoverGate(GateKind kind, Column in1, Column in2, Column out)
    : kind_(kind), in1_(in1), in2_(in2), out_(out) {
  if (kind == GateKind::not_) throw std::invalid_argument("NOT gate takes one input");
  if (in1.arity() != out.arity() || in2.arity() != out.arity()) {
    throw std::invalid_argument("gate column arity mismatch");
  }
  const Column expected = kind == GateKind::and_ ? (in1 & in2) : (in1 | in2);
  if (expected != out) {
    throw std::invalid_argument(std::string(gate_name(kind)) + " gate output " + out.str() +
                                " does not match inputs " + in1.str() + " " + in2.str());
  }
}

std::vector<Column> CoverGate::inputs() const {
  if (kind_ == GateKind::not_) return {in1_};
  return {in1_, in2_};
}

std::vector<Column> CoverGate::columns() const {
  auto cols = inputs();
  cols.push_back(out_);
  return cols;
}

// ---------------------------------------------------------------- coverage

std::vector<Column> relevant_columns(const TruthTable& table,
                                     const std::vector<CoverGate>& gates) {
  std::vector<Column> cols;
  std::set<Column> seen;
  auto add = [&](const Column& c) {
    if (seen.insert(c).second) cols.push_back(c);
  };
  for (const auto& c : table.columns()) add(c);
  for (const auto& g : gates) {
    for (const auto& c : g.columns()) add(c);
  }
  return cols;
}

std::vector<Column> relevant_columns(const Cover& cover) {
  return relevant_columns(cover.table, cover.gates);
}

bool gate_covers(const CoverGate& gate, const Witness& w, Flavor flavor) {
  if (flavor == Flavor::pol) {
    auto value = [&w](const Column& c) {
      const Tri v = w.at(c);
      if (v == Tri::undef) throw std::invalid_argument("pol coverage needs a total witness");
      return v == Tri::one;
    };
    const bool b = gate.kind() == GateKind::not_ ? false : value(gate.in2());
    return apply_gate(gate.kind(), value(gate.in1()), b) != value(gate.out());
  }
  const Tri a = w.value_or_undef(gate.in1());
  const Tri b = gate.kind() == GateKind::not_ ? Tri::zero : w.value_or_undef(gate.in2());
  if (a == Tri::undef || b == Tri::undef) return false;
  const Tri out = w.value_or_undef(gate.out());
  if (out == Tri::undef) return true;
  return apply_gate(gate.kind(), a == Tri::one, b == Tri::one) != (out == Tri::one);
}

// ---------------------------------------------------------------- conditions

std::string ConditionViolation::message() const {
  std::string what;
  switch (condition) {
    case CoverCondition::distinct_outputs:
      what = "condition (1) failed: gates share an output column";
      break;
    case CoverCondition::result_not_an_input:
      what = "condition (2) failed: the result column is a gate input";
      break;
    case CoverCondition::inputs_not_outputs:
      what = "condition (3) failed: a gate outputs an input column";
      break;
  }
  what += " (gates";
  for (auto g : gates) what += " " + std::to_string(g);
  return what + ")";
}

std::vector<ConditionViolation> check_ppol_conditions(const TruthTable& table,
                                                      const std::vector<CoverGate>& gates) {
  std::vector<ConditionViolation> found;

  std::map<Column, std::vector<std::size_t>> by_output;
  for (std::size_t i = 0; i < gates.size(); ++i) by_output[gates[i].out()].push_back(i);
  ConditionViolation shared{CoverCondition::distinct_outputs, {}};
  for (const auto& [col, idx] : by_output) {
    if (idx.size() > 1) shared.gates.insert(shared.gates.end(), idx.begin(), idx.end());
  }
  if (!shared.gates.empty()) {
    std::sort(shared.gates.begin(), shared.gates.end());
    found.push_back(std::move(shared));
  }

  ConditionViolation reads_result{CoverCondition::result_not_an_input, {}};
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto ins = gates[i].inputs();
    if (std::find(ins.begin(), ins.end(), table.result_column()) != ins.end()) {
      reads_result.gates.push_back(i);
    }
  }
  if (!reads_result.gates.empty()) found.push_back(std::move(reads_result));

  ConditionViolation writes_input{CoverCondition::inputs_not_outputs, {}};
  for (std::size_t i = 0; i < gates.size(); ++i) {
    for (unsigned k = 1; k <= table.arity(); ++k) {
      if (gates[i].out() == table.input_column(k)) {
        writes_input.gates.push_back(i);
        break;
      }
    }
  }
  if (!writes_input.gates.empty()) found.push_back(std::move(writes_input));
  return found;
}

CoverConditionError::CoverConditionError(std::vector<ConditionViolation> violations)
    : std::invalid_argument(violations.empty() ? std::string("cover condition violated")
                                               : violations.front().message()),
      violations_(std::move(violations)) {}

// ---------------------------------------------------------------- verification

namespace {

constexpr int kNoInput = -1;

struct IndexedGate {
  GateKind kind;
  int in1;
  int in2;
  int out;
};

/// Backtracking search over assignments to relevant columns, in order.
/// Gates are checked as soon as all their columns are assigned.
class UncoveredSearch {
public:
  UncoveredSearch(const Cover& cover)
      : table_(cover.table), flavor_(cover.flavor), columns_(relevant_columns(cover)) {
    std::map<Column, int> index;
    for (std::size_t i = 0; i < columns_.size(); ++i) index[columns_[i]] = static_cast<int>(i);
    for (unsigned i = 1; i <= table_.arity(); ++i) {
      f_inputs_.push_back(index.at(table_.input_column(i)));
    }
    f_result_ = index.at(table_.result_column());
    anti_trigger_ = std::max(f_result_, *std::max_element(f_inputs_.begin(), f_inputs_.end()));

    checks_.resize(columns_.size());
    for (const auto& g : cover.gates) {
      IndexedGate ig{g.kind(), index.at(g.in1()),
                     g.kind() == GateKind::not_ ? kNoInput : index.at(g.in2()),
                     index.at(g.out())};
      const int trigger = std::max({ig.in1, ig.in2, ig.out});
      checks_[trigger].push_back(ig);
    }
    values_.assign(columns_.size(), Tri::undef);
  }

  std::optional<Witness> run() {
    if (!dfs(0)) return std::nullopt;
    Witness w(flavor_ == Flavor::pol ? Witness::Mode::total : Witness::Mode::partial);
    for (std::size_t i = 0; i < columns_.size(); ++i) w.set(columns_[i], values_[i]);
    return w;
  }

private:
  bool is_f_column(int idx) const {
    return idx <= anti_trigger_ &&
           (idx == f_result_ ||
            std::find(f_inputs_.begin(), f_inputs_.end(), idx) != f_inputs_.end());
  }

  bool anti() const {
    std::uint64_t z = 0;
    for (int idx : f_inputs_) z = (z << 1) | (values_[idx] == Tri::one ? 1u : 0u);
    return (values_[f_result_] == Tri::one) != table_(z);
  }

  bool covered(const IndexedGate& g) const {
    const Tri a = values_[g.in1];
    const Tri b = g.in2 == kNoInput ? Tri::zero : values_[g.in2];
    const Tri out = values_[g.out];
    if (a == Tri::undef || b == Tri::undef) return false;
    if (out == Tri::undef) return true;
    return apply_gate(g.kind, a == Tri::one, b == Tri::one) != (out == Tri::one);
  }

  bool dfs(std::size_t pos) {
    if (pos == columns_.size()) return true;
    const int idx = static_cast<int>(pos);
    // f• columns must be defined for the witness to be an anti-polymorphism.
    const bool allow_undef = flavor_ == Flavor::ppol && !is_f_column(idx);
    static constexpr Tri kDomain[] = {Tri::zero, Tri::one, Tri::undef};
    for (Tri v : kDomain) {
      if (v == Tri::undef && !allow_undef) continue;
      values_[pos] = v;
      if (idx == anti_trigger_ && !anti()) continue;
      bool pruned = false;
      for (const auto& g : checks_[pos]) {
        if (covered(g)) {
          pruned = true;
          break;
        }
      }
      if (!pruned && dfs(pos + 1)) return true;
    }
    values_[pos] = Tri::undef;
    return false;
  }

  const TruthTable& table_;
  Flavor flavor_;
  std::vector<Column> columns_;
  std::vector<int> f_inputs_;
  int f_result_ = 0;
  int anti_trigger_ = 0;
  std::vector<std::vector<IndexedGate>> checks_;
  std::vector<Tri> values_;
};

void require_same_arity(const Cover& cover) {
  for (const auto& g : cover.gates) {
    if (g.out().arity() != cover.table.arity()) {
      throw std::invalid_argument("cover gate arity does not match the table");
    }
  }
}

}  // namespace

CoverVerdict verify_cover(const Cover& cover) {
  require_same_arity(cover);
  if (cover.flavor == Flavor::ppol) {
    auto violations = check_ppol_conditions(cover.table, cover.gates);
    if (!violations.empty()) throw CoverConditionError(std::move(violations));
  }
  UncoveredSearch search(cover);
  auto witness = search.run();
  if (witness) return {false, std::move(witness)};
  return {true, std::nullopt};
}

// ---------------------------------------------------------------- conversions

Cover cover_from_circuit(const Program& program, const TruthTable& table) {
  if (auto bad = first_disagreement(program, table)) {
    throw std::invalid_argument("program does not compute " + table.bits() + " (row " +
                                std::to_string(*bad) + ")");
  }
  const auto cols = simulate(program);
  Cover cover{table, {}, Flavor::ppol};
  std::size_t wire = program.arity();
  for (const auto& g : program.gates()) {
    ++wire;
    if (g.kind == GateKind::not_) {
      cover.gates.emplace_back(g.kind, cols[g.a - 1], cols[wire - 1]);
    } else {
      cover.gates.emplace_back(g.kind, cols[g.a - 1], cols[g.b - 1], cols[wire - 1]);
    }
  }
  auto violations = check_ppol_conditions(table, cover.gates);
  if (!violations.empty()) throw CoverConditionError(std::move(violations));
  return cover;
}

MissingResultColumn::MissingResultColumn(std::string what, Witness witness)
    : std::invalid_argument(std::move(what)), witness_(std::move(witness)) {}

DanglingInput::DanglingInput(std::size_t gate, const Column& column)
    : std::invalid_argument("gate " + std::to_string(gate) + " reads column " + column.str() +
                            " that is neither an input nor a gate output"),
      gate_(gate),
      column_(column) {}

namespace {
std::string cycle_message(const std::vector<std::size_t>& gates) {
  std::string s = "cover gates form a cycle:";
  for (auto g : gates) s += " " + std::to_string(g);
  return s;
}
}  // namespace

CycleDetected::CycleDetected(std::vector<std::size_t> gates)
    : std::invalid_argument(cycle_message(gates)), gates_(std::move(gates)) {}

Program circuit_from_cover(const Cover& cover) {
  require_same_arity(cover);
  const TruthTable& table = cover.table;
  const unsigned n = table.arity();
  auto violations = check_ppol_conditions(table, cover.gates);
  if (!violations.empty()) throw CoverConditionError(std::move(violations));

  std::map<Column, std::size_t> input_wire;
  for (unsigned i = 1; i <= n; ++i) input_wire.emplace(table.input_column(i), i);
  std::map<Column, std::size_t> producer;
  for (std::size_t i = 0; i < cover.gates.size(); ++i) producer.emplace(cover.gates[i].out(), i);

  const Column& r = table.result_column();
  const bool result_is_input = input_wire.count(r) != 0;
  if (!result_is_input && producer.count(r) == 0) {
    // Row selector of row 0 with the result flipped is anti and consistent
    // with every gate that does not touch r.
    auto cols = relevant_columns(cover);
    Witness w(Witness::Mode::total);
    for (const auto& c : cols) w.set(c, c == r ? !c[0] : c[0]);
    throw MissingResultColumn("no cover gate outputs the result column " + r.str(),
                              std::move(w));
  }

  // deps[i]: gates whose outputs gate i reads.
  std::vector<std::vector<std::size_t>> deps(cover.gates.size());
  for (std::size_t i = 0; i < cover.gates.size(); ++i) {
    for (const auto& c : cover.gates[i].inputs()) {
      if (input_wire.count(c)) continue;
      auto it = producer.find(c);
      if (it == producer.end()) throw DanglingInput(i, c);
      deps[i].push_back(it->second);
    }
  }

  // Kahn's algorithm, smallest index first, for a deterministic order.
  std::vector<std::size_t> pending(cover.gates.size());
  std::vector<std::vector<std::size_t>> readers(cover.gates.size());
  for (std::size_t i = 0; i < cover.gates.size(); ++i) {
    pending[i] = deps[i].size();
    for (auto d : deps[i]) readers[d].push_back(i);
  }
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < cover.gates.size(); ++i) {
    if (pending[i] == 0) ready.insert(i);
  }
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    const auto i = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(i);
    for (auto reader : readers[i]) {
      if (--pending[reader] == 0) ready.insert(reader);
    }
  }
  if (order.size() != cover.gates.size()) {
    std::vector<std::size_t> stuck;
    for (std::size_t i = 0; i < cover.gates.size(); ++i) {
      if (pending[i] != 0) stuck.push_back(i);
    }
    throw CycleDetected(std::move(stuck));
  }

  Program program(n);
  std::map<Column, std::size_t> wire_of = input_wire;
  for (auto i : order) {
    const auto& g = cover.gates[i];
    const auto a = wire_of.at(g.in1());
    const auto b = g.kind() == GateKind::not_ ? 0 : wire_of.at(g.in2());
    wire_of[g.out()] = program.add(g.kind(), a, b);
  }
  program.set_outputs({wire_of.at(r)});
  return program;
}

// ---------------------------------------------------------------- minimal covers

namespace {

class MinimalCoverSearch {
public:
  MinimalCoverSearch(const TruthTable& table, std::vector<CoverGate> pool, Flavor flavor)
      : table_(table), pool_(std::move(pool)), flavor_(flavor) {
    universe_ = relevant_columns(table_, pool_);
    forbidden_.assign(pool_.size(), false);
  }

  std::optional<Cover> run(std::size_t size_bound) {
    for (std::size_t k = 0; k <= size_bound; ++k) {
      std::fill(forbidden_.begin(), forbidden_.end(), false);
      selected_.clear();
      if (dfs(k)) {
        Cover cover{table_, {}, flavor_};
        for (auto i : selected_) cover.gates.push_back(pool_[i]);
        return cover;
      }
    }
    return std::nullopt;
  }

private:
  bool compatible(std::size_t candidate) const {
    if (flavor_ == Flavor::pol) return true;
    for (auto i : selected_) {
      if (pool_[i].out() == pool_[candidate].out()) return false;
    }
    return true;
  }

  bool dfs(std::size_t budget) {
    Cover current{table_, {}, flavor_};
    for (auto i : selected_) current.gates.push_back(pool_[i]);
    auto verdict = verify_cover(current);
    if (verdict.valid) return true;
    if (selected_.size() == budget) return false;

    // Extend the counterexample to every pool column; any cover containing
    // the current selection must include a gate that covers it.
    Witness w = *verdict.counterexample;
    if (flavor_ == Flavor::pol) {
      for (const auto& c : universe_) {
        if (!w.contains(c)) w.set(c, false);
      }
    }
    std::vector<std::size_t> branch;
    for (std::size_t i = 0; i < pool_.size(); ++i) {
      if (!forbidden_[i] && compatible(i) && gate_covers(pool_[i], w, flavor_)) {
        branch.push_back(i);
      }
    }
    std::vector<std::size_t> newly_forbidden;
    bool found = false;
    for (auto i : branch) {
      selected_.push_back(i);
      found = dfs(budget);
      if (found) break;
      selected_.pop_back();
      forbidden_[i] = true;
      newly_forbidden.push_back(i);
    }
    for (auto i : newly_forbidden) forbidden_[i] = false;
    return found;
  }

  TruthTable table_;
  std::vector<CoverGate> pool_;
  Flavor flavor_;
  std::vector<Column> universe_;
  std::vector<bool> forbidden_;
  std::vector<std::size_t> selected_;
};

}  // namespace

std::optional<Cover> minimal_cover_search(const TruthTable& table,
                                          const std::vector<CoverGate>& pool,
                                          std::size_t size_bound, Flavor flavor) {
  std::vector<CoverGate> usable;
  for (const auto& g : pool) {
    if (g.out().arity() != table.arity()) {
      throw std::invalid_argument("pool gate arity does not match the table");
    }
    if (std::find(usable.begin(), usable.end(), g) != usable.end()) continue;
    if (flavor == Flavor::ppol && !check_ppol_conditions(table, {g}).empty()) continue;
    usable.push_back(g);
  }
  return MinimalCoverSearch(table, std::move(usable), flavor).run(size_bound);
}

}  // namespace polyclone
