#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyclone/circuits.hpp"
#include "polyclone/core.hpp"

namespace polyclone {

enum class Flavor { pol, ppol };

std::string_view flavor_name(Flavor flavor);

/// A gate as a matrix: its input columns and the output column, where the
/// output is the gate operation applied row by row.
class CoverGate {
public:
  /// Throws std::invalid_argument if the output is not kind(inputs).
  CoverGate(GateKind kind, Column in1, Column out);
  CoverGate(GateKind kind, Column in1, Column in2, Column out);

  GateKind kind() const { return kind_; }
  const Column& in1() const { return in1_; }
  const Column& in2() const { return in2_; }
  const Column& out() const { return out_; }
  /// Input columns (one for NOT, two otherwise).
  std::vector<Column> inputs() const;
  /// Inputs then output.
  std::vector<Column> columns() const;

  bool operator==(const CoverGate&) const = default;

private:
  GateKind kind_;
  Column in1_;
  Column in2_;
  Column out_;
};

/// An unordered gate collection claimed to cover the (partial)
/// anti-polymorphisms of a table.
struct Cover {
  TruthTable table;
  std::vector<CoverGate> gates;
  Flavor flavor = Flavor::ppol;

  std::size_t size() const { return gates.size(); }
};

/// The distinct columns a witness search must assign: f•'s columns first,
/// then gate columns in order of first appearance.
std::vector<Column> relevant_columns(const Cover& cover);
std::vector<Column> relevant_columns(const TruthTable& table,
                                     const std::vector<CoverGate>& gates);

/// Total: w(in1) o w(in2) != w(out). Partial: inputs defined, and the output
/// is undefined or inconsistent. Throws MissingColumn for unassigned columns
/// in total flavor; partial flavor reads missing columns as undefined.
bool gate_covers(const CoverGate& gate, const Witness& w, Flavor flavor);

/// Which structural condition of a ppol cover fails.
enum class CoverCondition {
  distinct_outputs = 1,      // no two gates output the same column
  result_not_an_input = 2,   // f•'s result column feeds no gate
  inputs_not_outputs = 3,    // no gate outputs an input column of f•
};

struct ConditionViolation {
  CoverCondition condition;
  std::vector<std::size_t> gates;  // offending gate positions

  std::string message() const;
};

std::vector<ConditionViolation> check_ppol_conditions(const TruthTable& table,
                                                      const std::vector<CoverGate>& gates);

class CoverConditionError : public std::invalid_argument {
public:
  explicit CoverConditionError(std::vector<ConditionViolation> violations);
  const std::vector<ConditionViolation>& violations() const { return violations_; }

private:
  std::vector<ConditionViolation> violations_;
};

struct CoverVerdict {
  bool valid = false;
  /// An uncovered anti-polymorphism over the relevant columns, when invalid.
  std::optional<Witness> counterexample;
};

/// Exact search for an anti-polymorphism of f• that no gate covers.
///
/// The search ranges over {0,1} (pol) or {0,1,undef} (ppol) assignments to
/// the relevant columns and backtracks as soon as some gate covers the
/// partial assignment. Throws CoverConditionError for ppol covers that break
/// a structural condition.
CoverVerdict verify_cover(const Cover& cover);

/// Gates of a program computing f, as a ppol cover. Throws
/// std::invalid_argument if the program does not compute f and
/// CoverConditionError if the gates break a structural condition (apply
/// normalize() first to drop duplicate and dead gates).
Cover cover_from_circuit(const Program& program, const TruthTable& table);

class MissingResultColumn : public std::invalid_argument {
public:
  MissingResultColumn(std::string what, Witness witness);
  /// Anti-polymorphism consistent with every gate: the row selector of row 0
  /// with the result column negated.
  const Witness& witness() const { return witness_; }

private:
  Witness witness_;
};

class DanglingInput : public std::invalid_argument {
public:
  DanglingInput(std::size_t gate, const Column& column);
  std::size_t gate() const { return gate_; }
  const Column& column() const { return column_; }

private:
  std::size_t gate_;
  Column column_;
};

class CycleDetected : public std::invalid_argument {
public:
  explicit CycleDetected(std::vector<std::size_t> gates);
  const std::vector<std::size_t>& gates() const { return gates_; }

private:
  std::vector<std::size_t> gates_;
};

/// Orders the gates of a ppol cover into a program whose output wire is the
/// gate producing f•'s result column. Size equals the cover size.
Program circuit_from_cover(const Cover& cover);

/// Smallest subset of `pool` (at most `size_bound` gates) that verifies.
/// Exact relative to the pool.
std::optional<Cover> minimal_cover_search(const TruthTable& table,
                                          const std::vector<CoverGate>& pool,
                                          std::size_t size_bound, Flavor flavor);

}  // namespace polyclone
