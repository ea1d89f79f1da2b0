#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "polyclone/circuits.hpp"
#include "polyclone/core.hpp"
#include "polyclone/covers.hpp"

namespace polyclone {

enum class TriOut { zero, one, quit };

std::string_view tri_out_name(TriOut v);

/// A stored gate constraint "kind(a, b) = out" over circuit variables.
///
/// Variables are numbered 0..n-1 for x1..xn, n for x_{n+1}, and n+1+j for
/// y_{j+1}. For NOT, `b` is ignored.
struct Constraint {
  GateKind kind;
  std::size_t a;
  std::size_t b;
  std::size_t out;

  bool operator==(const Constraint&) const = default;
};

/// A total single-valued non-deterministic circuit C(x, y) -> {0, 1, quit}.
///
/// Program form: a Program over the n deterministic inputs followed by the
/// non-deterministic ones, with two outputs (valid, value); valid = 0 means
/// quit. Constraint form: C guesses x_{n+1} and y_1..y_m, quits if any
/// stored constraint is violated, and otherwise outputs x_{n+1} (or the
/// body's designated output variable).
class TsvndCircuit {
public:
  struct ConstraintBody {
    std::size_t y_count = 0;
    std::vector<Constraint> constraints;
    /// Output variable; x_{n+1} except for projections, which output x_i.
    std::size_t output = 0;
  };

  static TsvndCircuit from_program(unsigned n, Program program);
  static TsvndCircuit from_constraints(unsigned n, std::size_t y_count,
                                       std::vector<Constraint> constraints);
  static TsvndCircuit from_constraints(unsigned n, std::size_t y_count,
                                       std::vector<Constraint> constraints,
                                       std::size_t output);

  unsigned det_arity() const { return n_; }
  /// Width of the guessed input. Constraint form: x_{n+1} plus the y's.
  std::size_t nondet_arity() const;
  /// Gates of the program body, or stored constraints of the constraint body.
  std::size_t size() const;

  bool is_constraint_form() const { return std::holds_alternative<ConstraintBody>(body_); }
  const Program& program() const { return std::get<Program>(body_); }
  const ConstraintBody& constraints() const { return std::get<ConstraintBody>(body_); }

  std::string variable_name(std::size_t var) const;

private:
  TsvndCircuit(unsigned n, std::variant<Program, ConstraintBody> body)
      : n_(n), body_(std::move(body)) {}

  unsigned n_;
  std::variant<Program, ConstraintBody> body_;
};

/// Upper limit on n + nondet_arity for exhaustive enumeration.
inline constexpr std::size_t kMaxEnumeratedInputs = 24;

/// x and y are row indices with the first variable most significant.
TriOut tsvnd_evaluate(const TsvndCircuit& circuit, std::uint64_t x, std::uint64_t y);

/// The constraint form compiled to a (valid, value) program: per constraint
/// one gate plus a 4-gate equality test, an AND tree over the tests, and a
/// constant-true valid wire when there are no constraints.
TsvndCircuit compile_to_program(const TsvndCircuit& circuit);

inline std::size_t tsvnd_size_bound(std::size_t cover_size) { return 6 * cover_size + 3; }

struct TsvndReport {
  bool total = false;
  bool single_valued = false;
  bool computes_f = false;
  std::vector<std::uint64_t> quitting_inputs;   // no y accepted
  std::vector<std::uint64_t> ambiguous_inputs;  // both 0 and 1 accepted
  std::vector<std::uint64_t> wrong_inputs;      // accepted value != f(x)
};

TsvndReport validate_tsvnd(const TsvndCircuit& circuit, const TruthTable& table);

/// The function a TSVND circuit decides, if it is total and single-valued.
std::optional<TruthTable> decided_function(const TsvndCircuit& circuit);

/// A circuit over n + m inputs. ND mode accepts x if some y gives 1;
/// coND mode rejects x if some y gives 0.
struct NdCircuit {
  enum class Mode { nd, cond };
  Mode mode;
  unsigned n;
  std::size_t m;
  Program program;
};

/// The accept set (nd) or the complement of the reject set (cond).
TruthTable decided_function(const NdCircuit& circuit);

class TsvndError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// TSVND over (x, y1, y2): 1 if c1(x, y1) = 1, 0 if c2(x, y2) = 0, quit
/// otherwise. Size |c1| + |c2| + 2. Throws TsvndError unless c1 is ND, c2 is
/// coND and both decide the same function (and `table`, when given).
TsvndCircuit merge_nd_cond(const NdCircuit& c1, const NdCircuit& c2,
                           const std::optional<TruthTable>& table = std::nullopt);

/// ND half (quit -> 0) and coND half (quit -> 1) of a valid TSVND circuit.
std::pair<NdCircuit, NdCircuit> split_tsvnd(const TsvndCircuit& circuit);

/// fY: for each x, the lexicographically smallest accepted y.
struct WitnessTable {
  unsigned n;
  std::size_t m;
  std::vector<std::uint64_t> y;  // indexed by x
};

/// Throws TsvndError if some x has no accepted y.
WitnessTable witness_table(const TsvndCircuit& circuit);

/// Each gate of the (compiled) body restricted to the 2^n rows of fY.
/// Gate count equals the program size. Throws TsvndError for a circuit that
/// does not compute `table`.
Cover pol_cover_from_tsvnd(const TsvndCircuit& circuit, const TruthTable& table);

/// pol_cover_from_tsvnd plus NOT x1 and x1 OR NOT x1, which pin the
/// all-ones column to 1 in every consistent witness. The plain restriction
/// can miss witnesses that send the valid column to 0 (a quitting input);
/// with the anchor every uncovered witness would be an accepted wrong value.
/// Gate count is circuit size + 2.
Cover anchored_pol_cover_from_tsvnd(const TsvndCircuit& circuit, const TruthTable& table);

/// Names f•'s columns x1..x(n+1), every other distinct column y1..ym, and
/// stores each gate as a constraint. Throws MissingResultColumn if no gate
/// touches the result column (unless f is a projection).
TsvndCircuit tsvnd_from_pol_cover(const Cover& cover);

/// For a cover whose constraint circuit accepts a wrong value at some x, that
/// accepted assignment read back as a witness on the named columns. It is a
/// total anti-polymorphism consistent with every gate. nullopt if the circuit
/// never accepts a wrong value.
std::optional<Witness> wrong_value_witness(const Cover& cover);

}  // namespace polyclone
