#include "polyclone/core.hpp"

#include <algorithm>
#include <bit>

namespace polyclone {

char tri_char(Tri v) {
  switch (v) {
    case Tri::zero: return '0';
    case Tri::one: return '1';
    case Tri::undef: return '*';
  }
  return '?';
}

// ---------------------------------------------------------------- Column

Column::Column(std::uint64_t bits, unsigned arity) : arity_(arity) {
  if (arity > kMaxArity) {
    throw std::invalid_argument("column arity " + std::to_string(arity) +
                                " exceeds " + std::to_string(kMaxArity));
  }
  bits_ = bits & mask();
}

std::uint64_t Column::mask() const {
  const auto rows = std::size_t{1} << arity_;
  return rows >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << rows) - 1);
}

Column Column::parse(std::string_view text) {
  const auto len = text.size();
  if (len == 0 || !std::has_single_bit(len) || len > 64) {
    throw std::invalid_argument("column length must be a power of two <= 64: '" +
                                std::string(text) + "'");
  }
  std::uint64_t bits = 0;
  for (std::size_t r = 0; r < len; ++r) {
    if (text[r] == '1') {
      bits |= std::uint64_t{1} << r;
    } else if (text[r] != '0') {
      throw std::invalid_argument("column contains a non-bit character: '" +
                                  std::string(text) + "'");
    }
  }
  return Column(bits, static_cast<unsigned>(std::countr_zero(len)));
}

std::string Column::str() const {
  std::string s(rows(), '0');
  for (std::size_t r = 0; r < rows(); ++r) {
    if ((*this)[r]) s[r] = '1';
  }
  return s;
}

namespace {
void require_same_arity(const Column& a, const Column& b) {
  if (a.arity() != b.arity()) throw std::invalid_argument("column arity mismatch");
}
}  // namespace

Column Column::operator&(const Column& o) const {
  require_same_arity(*this, o);
  return Column(bits_ & o.bits_, arity_);
}
Column Column::operator|(const Column& o) const {
  require_same_arity(*this, o);
  return Column(bits_ | o.bits_, arity_);
}
Column Column::operator^(const Column& o) const {
  require_same_arity(*this, o);
  return Column(bits_ ^ o.bits_, arity_);
}

Column input_column(unsigned i, unsigned n) {
  if (n < 1 || n > kMaxArity) throw std::invalid_argument("arity out of range");
  if (i < 1 || i > n) {
    throw std::out_of_range("input index " + std::to_string(i) + " out of range 1.." +
                            std::to_string(n));
  }
  const unsigned shift = n - i;
  std::uint64_t bits = 0;
  for (std::uint64_t r = 0; r < (std::uint64_t{1} << n); ++r) {
    if ((r >> shift) & 1u) bits |= std::uint64_t{1} << r;
  }
  return Column(bits, n);
}

// ---------------------------------------------------------------- TruthTable

TruthTable::TruthTable(unsigned arity, Column outputs) : arity_(arity), outputs_(outputs) {
  if (arity < 1 || arity > kMaxArity) throw std::invalid_argument("arity out of range");
  if (outputs.arity() != arity) throw std::invalid_argument("output column arity mismatch");
}

TruthTable TruthTable::from_bits(std::string_view bits) {
  const auto column = Column::parse(bits);
  return TruthTable(column.arity(), column);
}

TruthTable TruthTable::from_function(unsigned arity,
                                     const std::function<bool(std::uint64_t)>& f) {
  std::uint64_t bits = 0;
  for (std::uint64_t r = 0; r < (std::uint64_t{1} << arity); ++r) {
    if (f(r)) bits |= std::uint64_t{1} << r;
  }
  return TruthTable(arity, Column(bits, arity));
}

std::vector<Column> TruthTable::columns() const {
  std::vector<Column> cols;
  cols.reserve(arity_ + 1);
  for (unsigned i = 1; i <= arity_; ++i) cols.push_back(input_column(i));
  cols.push_back(outputs_);
  return cols;
}

std::vector<bool> TruthTable::row(std::uint64_t r) const {
  auto tuple = row_bits(r, arity_);
  tuple.push_back(outputs_[r]);
  return tuple;
}

bool TruthTable::contains(const std::vector<bool>& tuple) const {
  if (tuple.size() != arity_ + 1u) throw std::invalid_argument("tuple width mismatch");
  const std::vector<bool> inputs(tuple.begin(), tuple.end() - 1);
  return outputs_[row_index(inputs)] == tuple.back();
}

std::uint64_t row_index(const std::vector<bool>& x) {
  std::uint64_t r = 0;
  for (bool b : x) r = (r << 1) | (b ? 1u : 0u);
  return r;
}

std::vector<bool> row_bits(std::uint64_t row, unsigned n) {
  std::vector<bool> x(n);
  for (unsigned i = 0; i < n; ++i) x[i] = (row >> (n - 1 - i)) & 1u;
  return x;
}

// ---------------------------------------------------------------- named ops

std::string_view op_name(NamedOp op) {
  switch (op) {
    case NamedOp::and_: return "and";
    case NamedOp::or_: return "or";
    case NamedOp::aff: return "aff";
    case NamedOp::maj: return "maj";
  }
  return "?";
}

std::optional<NamedOp> parse_op(std::string_view name) {
  for (auto op : kNamedOps) {
    if (op_name(op) == name) return op;
  }
  return std::nullopt;
}

unsigned op_arity(NamedOp op) {
  return (op == NamedOp::and_ || op == NamedOp::or_) ? 2 : 3;
}

bool apply_op(NamedOp op, bool a, bool b, bool c) {
  switch (op) {
    case NamedOp::and_: return a && b;
    case NamedOp::or_: return a || b;
    case NamedOp::aff: return a ^ b ^ c;
    case NamedOp::maj: return (a && b) || (a && c) || (b && c);
  }
  return false;
}

// ---------------------------------------------------------------- DenseOperation

DenseOperation::DenseOperation(unsigned arity, std::vector<bool> table)
    : arity_(arity), table_(std::move(table)) {
  if (arity > 24) throw std::invalid_argument("dense operation arity too large");
  if (table_.size() != (std::size_t{1} << arity)) {
    throw std::invalid_argument("dense operation table length must be 2^arity");
  }
}

DenseOperation DenseOperation::named(NamedOp op) {
  const unsigned k = op_arity(op);
  return from_function(k, [op](const std::vector<bool>& a) {
    return apply_op(op, a[0], a[1], a.size() > 2 && a[2]);
  });
}

DenseOperation DenseOperation::projection(unsigned arity, unsigned index) {
  if (index < 1 || index > arity) throw std::out_of_range("projection index");
  return from_function(arity, [index](const std::vector<bool>& a) { return a[index - 1]; });
}

DenseOperation DenseOperation::from_function(
    unsigned arity, const std::function<bool(const std::vector<bool>&)>& f) {
  const std::size_t size = std::size_t{1} << arity;
  std::vector<bool> table(size);
  std::vector<bool> args(arity);
  for (std::size_t idx = 0; idx < size; ++idx) {
    for (unsigned j = 0; j < arity; ++j) args[j] = (idx >> j) & 1u;
    table[idx] = f(args);
  }
  return DenseOperation(arity, std::move(table));
}

DenseOperation DenseOperation::from_word(unsigned arity, std::uint64_t word) {
  if (arity > 6) throw std::invalid_argument("from_word supports arity <= 6");
  const std::size_t size = std::size_t{1} << arity;
  std::vector<bool> table(size);
  for (std::size_t idx = 0; idx < size; ++idx) table[idx] = (word >> idx) & 1u;
  return DenseOperation(arity, std::move(table));
}

bool DenseOperation::operator()(const std::vector<bool>& args) const {
  if (args.size() != arity_) throw std::invalid_argument("argument count mismatch");
  std::uint64_t idx = 0;
  for (unsigned j = 0; j < arity_; ++j) {
    if (args[j]) idx |= std::uint64_t{1} << j;
  }
  return table_[idx];
}

bool DenseOperation::at(const Column& column) const {
  if (column.rows() != arity_) {
    throw std::invalid_argument("operation arity must equal the column length");
  }
  return table_[column.bits()];
}

std::vector<DenseOperation> majority_fixtures() {
  std::vector<DenseOperation> ws;
  for (unsigned omitted = 4; omitted >= 1; --omitted) {
    ws.push_back(DenseOperation::from_function(4, [omitted](const std::vector<bool>& a) {
      std::vector<bool> kept;
      for (unsigned j = 0; j < 4; ++j) {
        if (j + 1 != omitted) kept.push_back(a[j]);
      }
      return apply_op(NamedOp::maj, kept[0], kept[1], kept[2]);
    }));
  }
  return ws;
}

// ---------------------------------------------------------------- polymorphisms

std::vector<bool> apply_componentwise(const DenseOperation& op,
                                      const std::vector<std::vector<bool>>& rows) {
  if (rows.size() != op.arity()) {
    throw std::invalid_argument("expected " + std::to_string(op.arity()) + " tuples, got " +
                                std::to_string(rows.size()));
  }
  const std::size_t width = rows.empty() ? 0 : rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != width) throw std::invalid_argument("tuple width mismatch");
  }
  std::vector<bool> out(width);
  std::vector<bool> args(rows.size());
  for (std::size_t i = 0; i < width; ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) args[j] = rows[j][i];
    out[i] = op(args);
  }
  return out;
}

namespace {

constexpr unsigned kMaxGenericArity = 3;

void require_small_arity(const DenseOperation& op) {
  if (op.arity() < 1 || op.arity() > kMaxGenericArity) {
    throw std::invalid_argument("generic polymorphism checks support arity 1..3");
  }
}

}  // namespace

bool is_polymorphism(const DenseOperation& op, const TruthTable& table) {
  require_small_arity(op);
  const unsigned k = op.arity();
  const std::uint64_t rows = table.rows();
  std::vector<std::vector<bool>> f_rows;
  for (std::uint64_t r = 0; r < rows; ++r) f_rows.push_back(table.row(r));

  std::vector<std::uint64_t> sel(k, 0);
  std::vector<std::vector<bool>> picked(k);
  while (true) {
    for (unsigned j = 0; j < k; ++j) picked[j] = f_rows[sel[j]];
    if (!table.contains(apply_componentwise(op, picked))) return false;
    unsigned pos = 0;
    while (pos < k && ++sel[pos] == rows) sel[pos++] = 0;
    if (pos == k) return true;
  }
}

std::vector<RowSelection> polymorphism_witnesses(const DenseOperation& op,
                                                 const TruthTable& table) {
  require_small_arity(op);
  const unsigned k = op.arity();
  const std::uint64_t rows = table.rows();
  std::vector<RowSelection> found;
  if (k > rows) return found;

  std::vector<std::uint64_t> sel(k);
  for (unsigned j = 0; j < k; ++j) sel[j] = j;
  std::vector<std::vector<bool>> picked(k);
  while (true) {
    for (unsigned j = 0; j < k; ++j) picked[j] = table.row(sel[j]);
    auto image = apply_componentwise(op, picked);
    if (!table.contains(image)) found.push_back({sel, std::move(image)});
    // next combination in lexicographic order
    int pos = static_cast<int>(k) - 1;
    while (pos >= 0 && sel[pos] == rows - k + static_cast<unsigned>(pos)) --pos;
    if (pos < 0) break;
    ++sel[pos];
    for (unsigned j = static_cast<unsigned>(pos) + 1; j < k; ++j) sel[j] = sel[j - 1] + 1;
  }
  return found;
}

bool is_closed_under(NamedOp op, const TruthTable& table) {
  const std::uint64_t rows = table.rows();
  const std::uint64_t all = rows - 1;
  switch (op) {
    case NamedOp::and_:
    case NamedOp::or_:
      for (std::uint64_t a = 0; a < rows; ++a) {
        for (std::uint64_t b = a + 1; b < rows; ++b) {
          const auto r = op == NamedOp::and_ ? (a & b) : (a | b);
          if (table(r) != apply_op(op, table(a), table(b))) return false;
        }
      }
      return true;
    case NamedOp::aff:
    case NamedOp::maj:
      for (std::uint64_t a = 0; a < rows; ++a) {
        for (std::uint64_t b = 0; b < rows; ++b) {
          for (std::uint64_t c = 0; c < rows; ++c) {
            const auto r = op == NamedOp::aff ? (a ^ b ^ c)
                                              : (((a & b) | (a & c) | (b & c)) & all);
            if (table(r) != apply_op(op, table(a), table(b), table(c))) return false;
          }
        }
      }
      return true;
  }
  return false;
}

std::vector<NamedOp> detect_nontrivial_polymorphisms(const TruthTable& table) {
  std::vector<NamedOp> ops;
  for (auto op : kNamedOps) {
    if (is_closed_under(op, table)) ops.push_back(op);
  }
  return ops;
}

// ---------------------------------------------------------------- witnesses

MissingColumn::MissingColumn(const Column& column)
    : std::out_of_range("witness has no value for column " + column.str()),
      column_(column) {}

void Witness::set(const Column& column, Tri value) {
  if (mode_ == Mode::total && value == Tri::undef) {
    throw std::invalid_argument("total witness cannot be undefined at " + column.str());
  }
  values_[column] = value;
}

Tri Witness::at(const Column& column) const {
  const auto it = values_.find(column);
  if (it == values_.end()) throw MissingColumn(column);
  return it->second;
}

Tri Witness::value_or_undef(const Column& column) const {
  const auto it = values_.find(column);
  return it == values_.end() ? Tri::undef : it->second;
}

Witness Witness::row_selector(const std::vector<Column>& columns, std::uint64_t row) {
  Witness w(Mode::total);
  for (const auto& c : columns) w.set(c, c[row]);
  return w;
}

bool is_total_anti_polymorphism(const Witness& w, const TruthTable& table) {
  std::uint64_t z = 0;
  for (unsigned i = 1; i <= table.arity(); ++i) {
    const Tri v = w.at(table.input_column(i));
    if (v == Tri::undef) throw std::invalid_argument("total witness has an undefined value");
    z = (z << 1) | (v == Tri::one ? 1u : 0u);
  }
  const Tri result = w.at(table.result_column());
  if (result == Tri::undef) throw std::invalid_argument("total witness has an undefined value");
  return (result == Tri::one) != table(z);
}

bool is_total_anti_polymorphism(const DenseOperation& w, const TruthTable& table) {
  std::uint64_t z = 0;
  for (unsigned i = 1; i <= table.arity(); ++i) {
    z = (z << 1) | (w.at(table.input_column(i)) ? 1u : 0u);
  }
  return w.at(table.result_column()) != table(z);
}

bool is_partial_anti_polymorphism(const Witness& w, const TruthTable& table) {
  std::uint64_t z = 0;
  for (unsigned i = 1; i <= table.arity(); ++i) {
    const Tri v = w.value_or_undef(table.input_column(i));
    if (v == Tri::undef) return false;
    z = (z << 1) | (v == Tri::one ? 1u : 0u);
  }
  const Tri result = w.value_or_undef(table.result_column());
  if (result == Tri::undef) return false;
  return (result == Tri::one) != table(z);
}

// ---------------------------------------------------------------- trivial classes

TrivialClass classify_trivial(const TruthTable& table) {
  using Kind = TrivialClass::Kind;
  const Column& r = table.result_column();
  if (r == Column::zeros(table.arity())) return {Kind::constant, 0};
  if (r == Column::ones(table.arity())) return {Kind::constant, 1};
  for (unsigned i = 1; i <= table.arity(); ++i) {
    const Column x = table.input_column(i);
    if (r == x) return {Kind::projection, i};
    if (r == ~x) return {Kind::negated_projection, i};
  }
  return {Kind::general, 0};
}

std::string describe(const TrivialClass& c) {
  switch (c.kind) {
    case TrivialClass::Kind::constant: return "constant(" + std::to_string(c.index) + ")";
    case TrivialClass::Kind::projection: return "projection(" + std::to_string(c.index) + ")";
    case TrivialClass::Kind::negated_projection:
      return "negated_projection(" + std::to_string(c.index) + ")";
    case TrivialClass::Kind::general: return "general";
  }
  return "?";
}

}  // namespace polyclone
