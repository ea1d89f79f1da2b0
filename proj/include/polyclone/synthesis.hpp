#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "polyclone/circuits.hpp"
#include "polyclone/core.hpp"

namespace polyclone {

/// f evaluated on the 2n+2 boundary inputs, 1-based like t_1 .. t_{2n+2}:
///   t_i       unique 1 at position i
///   t_{n+i}   unique 0 at position i
///   t_{2n+1}  all zeros
///   t_{2n+2}  all ones
class BoundaryBits {
public:
  explicit BoundaryBits(const TruthTable& table);

  unsigned arity() const { return n_; }
  bool operator[](std::size_t i) const { return bits_.at(i - 1); }
  bool unique_one(unsigned i) const { return (*this)[i]; }
  bool unique_zero(unsigned i) const { return (*this)[n_ + i]; }
  bool all_zero() const { return (*this)[2 * n_ + 1]; }
  bool all_one() const { return (*this)[2 * n_ + 2]; }
  std::size_t size() const { return bits_.size(); }

  bool operator==(const BoundaryBits&) const = default;

private:
  unsigned n_;
  std::vector<bool> bits_;
};

/// m output columns over the same n inputs; the relation has n+m columns.
struct MultiTable {
  unsigned arity;
  std::vector<Column> outputs;

  std::size_t output_count() const { return outputs.size(); }
  TruthTable component(std::size_t j) const { return TruthTable(arity, outputs.at(j)); }
};

class NotClosedError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class PatchError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Closure of the (n+m)-column relation under `op`.
bool is_closed_under(NamedOp op, const MultiTable& table);

inline std::size_t synthesis_size_bound(unsigned n) { return 5 * std::size_t{n} + 2; }
inline std::size_t patched_size_bound(unsigned n, std::size_t patch_size) {
  return synthesis_size_bound(n) + 5 * std::size_t{n} * patch_size;
}

/// Linear-size program for f from a named polymorphism of f•.
/// Throws NotClosedError if f• is not closed under `op`.
Program synthesize_from_polymorphism(const TruthTable& table, NamedOp op);

/// One program with an output per column; at most m(5n+2) gates.
Program synthesize_multi_output(const MultiTable& table, NamedOp op);

/// Program for f built from g (closed under `op`) plus a hardwired lookup of
/// f on every patch row. The patch must contain every row where f and g differ.
Program synthesize_patched(const TruthTable& f, const TruthTable& g, NamedOp op,
                           const std::vector<std::uint64_t>& patch);

/// Rows where two tables differ.
std::vector<std::uint64_t> difference_rows(const TruthTable& f, const TruthTable& g);

}  // namespace polyclone
