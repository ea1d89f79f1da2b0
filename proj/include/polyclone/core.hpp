#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polyclone {

/* Columns are packed into a 64-bit word, so truth tables stop at six inputs. */
inline constexpr unsigned kMaxArity = 6;

/// Three-valued bit used by partial witnesses.
enum class Tri : std::uint8_t { zero = 0, one = 1, undef = 2 };

inline Tri to_tri(bool b) { return b ? Tri::one : Tri::zero; }
char tri_char(Tri v);

/// A length-2^n bit vector indexed by truth-table row.
///
/// Bit r of `bits()` is the entry at row r. Two columns are the same column
/// iff they have the same arity and the same bits.
class Column {
public:
  Column() = default;
  Column(std::uint64_t bits, unsigned arity);

  static Column zeros(unsigned arity) { return Column(0, arity); }
  static Column ones(unsigned arity) { return Column(~std::uint64_t{0}, arity); }
  /// Parses "0011"-style strings, row 0 first. Length must be a power of two.
  static Column parse(std::string_view text);

  unsigned arity() const { return arity_; }
  std::size_t rows() const { return std::size_t{1} << arity_; }
  std::uint64_t bits() const { return bits_; }
  std::uint64_t mask() const;
  bool operator[](std::size_t row) const { return (bits_ >> row) & 1u; }

  std::string str() const;

  Column operator~() const { return Column(~bits_, arity_); }
  Column operator&(const Column& o) const;
  Column operator|(const Column& o) const;
  Column operator^(const Column& o) const;

  auto operator<=>(const Column&) const = default;

private:
  std::uint64_t bits_ = 0;
  unsigned arity_ = 0;
};

/// Column of the i-th input (1-based, x1 most significant) of an n-ary table.
Column input_column(unsigned i, unsigned n);

/// The graph f• of a total Boolean function f : {0,1}^n -> {0,1}.
///
/// Row r is the input whose n-bit binary expansion (x1 most significant)
/// equals r, so rows are in lexicographic order.
class TruthTable {
public:
  TruthTable(unsigned arity, Column outputs);
  /// "0001" style output string, row 0 first; arity inferred from length.
  static TruthTable from_bits(std::string_view bits);
  static TruthTable from_function(unsigned arity,
                                  const std::function<bool(std::uint64_t)>& f);

  unsigned arity() const { return arity_; }
  std::size_t rows() const { return std::size_t{1} << arity_; }
  bool operator()(std::uint64_t row) const { return outputs_[row]; }

  const Column& result_column() const { return outputs_; }
  Column input_column(unsigned i) const { return polyclone::input_column(i, arity_); }
  /// The n+1 columns of f•: x1..xn followed by the result column.
  std::vector<Column> columns() const;

  /// Row r of f• as a tuple of width n+1.
  std::vector<bool> row(std::uint64_t r) const;
  /// True iff `tuple` (width n+1) is a row of f•.
  bool contains(const std::vector<bool>& tuple) const;

  std::string bits() const { return outputs_.str(); }

  bool operator==(const TruthTable&) const = default;

private:
  unsigned arity_;
  Column outputs_;
};

/// Row index of the n-bit input `x` (x[0] = x1).
std::uint64_t row_index(const std::vector<bool>& x);
/// Inverse of row_index.
std::vector<bool> row_bits(std::uint64_t row, unsigned n);

enum class NamedOp { and_, or_, aff, maj };

std::string_view op_name(NamedOp op);
std::optional<NamedOp> parse_op(std::string_view name);
unsigned op_arity(NamedOp op);
bool apply_op(NamedOp op, bool a, bool b, bool c = false);

/// The four operations in construction-preference order.
inline constexpr NamedOp kNamedOps[] = {NamedOp::and_, NamedOp::or_, NamedOp::aff,
                                        NamedOp::maj};

/// A total k-ary Boolean operation stored as its full table.
///
/// Argument j (0-based) is bit j of the table index, so applying a 2^n-ary
/// operation to a Column is a single lookup at `column.bits()`.
class DenseOperation {
public:
  DenseOperation(unsigned arity, std::vector<bool> table);

  static DenseOperation named(NamedOp op);
  static DenseOperation projection(unsigned arity, unsigned index);
  static DenseOperation from_function(
      unsigned arity, const std::function<bool(const std::vector<bool>&)>& f);
  /// Dense operation with the given packed table, used for n <= 2 sweeps.
  static DenseOperation from_word(unsigned arity, std::uint64_t table);

  unsigned arity() const { return arity_; }
  bool operator()(std::uint64_t packed_args) const { return table_[packed_args]; }
  bool operator()(const std::vector<bool>& args) const;
  /// Value of a 2^n-ary operation on a column of an n-ary table.
  bool at(const Column& column) const;

  const std::vector<bool>& table() const { return table_; }

private:
  unsigned arity_;
  std::vector<bool> table_;
};

/// w1..w4: maj of three of the four arguments, omitting x4, x3, x2, x1 in turn.
std::vector<DenseOperation> majority_fixtures();

/// Componentwise image of k equal-width tuples under a k-ary operation.
std::vector<bool> apply_componentwise(const DenseOperation& op,
                                      const std::vector<std::vector<bool>>& rows);

/// Closure of f• under `op` (arity at most 3), by brute force over all
/// (2^n)^k row selections.
bool is_polymorphism(const DenseOperation& op, const TruthTable& table);

struct RowSelection {
  std::vector<std::uint64_t> rows;  // strictly increasing
  std::vector<bool> image;

  bool operator==(const RowSelection&) const = default;
};

/// Selections of k distinct rows, applied in row order, whose image is not a
/// row of f•.
std::vector<RowSelection> polymorphism_witnesses(const DenseOperation& op,
                                                 const TruthTable& table);

class MissingColumn : public std::out_of_range {
public:
  explicit MissingColumn(const Column& column);
  const Column& column() const { return column_; }

private:
  Column column_;
};

/// A (partial) assignment of values to columns.
///
/// Keyed by column value, so identical columns always share one value.
/// Columns not present are treated as undefined by partial-mode queries.
class Witness {
public:
  enum class Mode { total, partial };

  explicit Witness(Mode mode = Mode::total) : mode_(mode) {}

  Mode mode() const { return mode_; }
  void set(const Column& column, Tri value);
  void set(const Column& column, bool value) { set(column, to_tri(value)); }
  /// Throws MissingColumn if absent.
  Tri at(const Column& column) const;
  /// Undef if absent.
  Tri value_or_undef(const Column& column) const;
  bool contains(const Column& column) const { return values_.count(column) != 0; }
  std::size_t size() const { return values_.size(); }
  const std::map<Column, Tri>& entries() const { return values_; }

  /// w(c) = c[row] on every given column: the witness every circuit row induces.
  static Witness row_selector(const std::vector<Column>& columns, std::uint64_t row);

  bool operator==(const Witness&) const = default;

private:
  Mode mode_;
  std::map<Column, Tri> values_;
};

/// w(x_{n+1}) != f(w(x_1), ..., w(x_n)) for a total witness.
bool is_total_anti_polymorphism(const Witness& w, const TruthTable& table);
bool is_total_anti_polymorphism(const DenseOperation& w, const TruthTable& table);
/// Defined on all n+1 columns of f• and the image is not a row of f•.
bool is_partial_anti_polymorphism(const Witness& w, const TruthTable& table);

/// Those of and/or/aff/maj under which f• is closed, in kNamedOps order.
std::vector<NamedOp> detect_nontrivial_polymorphisms(const TruthTable& table);
/// Specialized closure test for one named operation.
bool is_closed_under(NamedOp op, const TruthTable& table);

struct TrivialClass {
  enum class Kind { constant, projection, negated_projection, general };
  Kind kind = Kind::general;
  unsigned index = 0;  // input index for (negated) projections, value for constants

  bool operator==(const TrivialClass&) const = default;
};

TrivialClass classify_trivial(const TruthTable& table);
std::string describe(const TrivialClass& c);

}  // namespace polyclone
