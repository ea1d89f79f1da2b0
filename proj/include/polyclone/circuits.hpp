#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "polyclone/core.hpp"

namespace polyclone {

enum class GateKind : std::uint8_t { and_, or_, not_ };

std::string_view gate_name(GateKind kind);
std::optional<GateKind> parse_gate(std::string_view name);
inline unsigned gate_arity(GateKind kind) { return kind == GateKind::not_ ? 1 : 2; }
inline bool apply_gate(GateKind kind, bool a, bool b) {
  switch (kind) {
    case GateKind::and_: return a && b;
    case GateKind::or_: return a || b;
    case GateKind::not_: return !a;
  }
  return false;
}
inline std::uint64_t apply_gate_word(GateKind kind, std::uint64_t a, std::uint64_t b) {
  switch (kind) {
    case GateKind::and_: return a & b;
    case GateKind::or_: return a | b;
    case GateKind::not_: return ~a;
  }
  return 0;
}

/// One step of a straight-line program. Wire references are 1-based:
/// 1..n are the inputs, n+1.. are gate outputs in program order.
struct Gate {
  GateKind kind;
  std::size_t a;
  std::size_t b = 0;  // unused by NOT

  bool operator==(const Gate&) const = default;
};

/// A straight-line program g_1 .. g_t over {AND, OR, NOT}.
///
/// size() counts gates only (t - n). Every gate reads wires that precede it.
/// Most programs have one output; multi-output tables and tri-state circuits
/// designate several.
class Program {
public:
  explicit Program(unsigned arity);
  Program(unsigned arity, std::vector<Gate> gates, std::vector<std::size_t> outputs = {});

  unsigned arity() const { return arity_; }
  std::size_t size() const { return gates_.size(); }
  std::size_t wire_count() const { return arity_ + gates_.size(); }
  const std::vector<Gate>& gates() const { return gates_; }
  /// Gate with wire index `wire` (> arity).
  const Gate& gate(std::size_t wire) const;

  /// First designated output; defaults to the last wire.
  std::size_t output() const { return outputs().front(); }
  /// Designated outputs; a program with none designated outputs its last wire.
  std::vector<std::size_t> outputs() const;

  /// Appends a gate and returns its wire index.
  std::size_t add(GateKind kind, std::size_t a, std::size_t b = 0);
  void set_outputs(std::vector<std::size_t> outputs);

  bool operator==(const Program&) const = default;

private:
  void check_gate(const Gate& g, std::size_t wire) const;

  unsigned arity_;
  std::vector<Gate> gates_;
  std::vector<std::size_t> outputs_;
};

struct Evaluation {
  std::vector<bool> trace;  // u_1 .. u_t
  std::vector<bool> outputs;
  bool output() const { return outputs.front(); }
};

/// Runs the program on one input. `x` is a row index (x1 most significant).
Evaluation evaluate(const Program& program, std::uint64_t x);
Evaluation evaluate(const Program& program, const std::vector<bool>& x);

/// Column of every wire over all 2^n rows (arity <= kMaxArity).
std::vector<Column> simulate(const Program& program);
Column gate_column(const Program& program, std::size_t index);

bool computes(const Program& program, const TruthTable& table);
/// First row where the program disagrees with the table.
std::optional<std::uint64_t> first_disagreement(const Program& program,
                                                const TruthTable& table);

/// w(g_a) o w(g_b) == w(g) for every gate. The witness must cover all wires.
bool is_consistent(const Witness& w, const Program& program);
/// Same check for a dense 2^n-ary witness.
bool is_consistent(const DenseOperation& w, const Program& program);

/// Removes gates whose column repeats an earlier wire (rewiring readers) and
/// gates that no output depends on. Semantics of every output are preserved.
Program normalize(const Program& program);

struct Basis {
  bool and_ = true;
  bool or_ = true;
  bool not_ = true;
};

/// Minimum-size program for `table`, or nullopt if none has at most
/// `max_size` gates. Exhaustive: the returned size is the exact circuit
/// complexity over the basis.
std::optional<Program> optimal_circuit(const TruthTable& table, std::size_t max_size,
                                       Basis basis = {});

/// Calls `visit` for every program of exactly `size` gates computing `table`
/// that the optimal search considers (irredundant, all gates used, canonical
/// gate order). Returns the number visited; `visit` may return false to stop.
std::size_t enumerate_programs(const TruthTable& table, std::size_t size,
                               const std::function<bool(const Program&)>& visit,
                               Basis basis = {});

}  // namespace polyclone
