#pragma once

// Reference implementations used only by the tests. They share no code
// with the library beyond plain data types and favour brute force.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "polyclone/circuits.hpp"
#include "polyclone/core.hpp"
#include "polyclone/covers.hpp"

namespace oracle {

using polyclone::Column;
using polyclone::GateKind;
using polyclone::TruthTable;

/// Output bits of f, row r at bit r.
inline std::uint64_t fbits(const TruthTable& t) { return t.result_column().bits(); }

/// Column of input x_i (1-based, x1 most significant) over 2^n rows.
inline std::uint64_t input_bits(unsigned i, unsigned n) {
  std::uint64_t c = 0;
  for (std::uint64_t r = 0; r < (1ull << n); ++r) {
    if ((r >> (n - i)) & 1u) c |= 1ull << r;
  }
  return c;
}

inline std::uint64_t row_mask(unsigned n) {
  const std::uint64_t rows = 1ull << n;
  return rows == 64 ? ~0ull : (1ull << rows) - 1;
}

/// Does f• contain the tuple (x bits packed with x1 most significant, y)?
inline bool table_has(const TruthTable& t, std::uint64_t x, bool y) {
  return ((fbits(t) >> x) & 1u) == (y ? 1u : 0u);
}

/// f• closed under a k-ary op given as a function of k bits, checked over
/// every k-tuple of rows including repeats.
template <class Op>
bool closed_brute(const TruthTable& t, unsigned k, Op op) {
  const unsigned n = t.arity();
  const std::uint64_t rows = 1ull << n;
  std::vector<std::uint64_t> pick(k, 0);
  while (true) {
    std::uint64_t x = 0;
    for (unsigned bit = 0; bit < n; ++bit) {
      std::vector<bool> args;
      for (auto r : pick) args.push_back((r >> (n - 1 - bit)) & 1u);
      x = (x << 1) | (op(args) ? 1u : 0u);
    }
    std::vector<bool> outs;
    for (auto r : pick) outs.push_back((fbits(t) >> r) & 1u);
    if (!table_has(t, x, op(outs))) return false;
    unsigned j = 0;
    while (j < k && ++pick[j] == rows) pick[j++] = 0;
    if (j == k) return true;
  }
}

inline bool op_and(const std::vector<bool>& a) { return a[0] && a[1]; }
inline bool op_or(const std::vector<bool>& a) { return a[0] || a[1]; }
inline bool op_aff(const std::vector<bool>& a) { return a[0] ^ a[1] ^ a[2]; }
inline bool op_maj(const std::vector<bool>& a) { return (a[0] + a[1] + a[2]) >= 2; }

/// Dense total witness for n = 2: word bit c is the value at column c.
inline bool w_at(std::uint64_t word, std::uint64_t column) { return (word >> column) & 1u; }

inline bool dense_is_anti(std::uint64_t word, const TruthTable& t) {
  const unsigned n = t.arity();
  std::uint64_t x = 0;
  for (unsigned i = 1; i <= n; ++i) x = (x << 1) | (w_at(word, input_bits(i, n)) ? 1u : 0u);
  return !table_has(t, x, w_at(word, fbits(t)));
}

inline std::uint64_t gate_bits(GateKind k, std::uint64_t a, std::uint64_t b, unsigned n) {
  switch (k) {
    case GateKind::and_: return a & b;
    case GateKind::or_: return a | b;
    case GateKind::not_: return ~a & row_mask(n);
  }
  return 0;
}

inline bool gate_bit(GateKind k, bool a, bool b) {
  return k == GateKind::and_ ? (a && b) : k == GateKind::or_ ? (a || b) : !a;
}

/// Every wire column of a program, inputs first.
inline std::vector<std::uint64_t> wire_bits(const polyclone::Program& p) {
  const unsigned n = p.arity();
  std::vector<std::uint64_t> w;
  for (unsigned i = 1; i <= n; ++i) w.push_back(input_bits(i, n));
  for (const auto& g : p.gates()) {
    w.push_back(gate_bits(g.kind, w[g.a - 1], g.kind == GateKind::not_ ? 0 : w[g.b - 1], n));
  }
  return w;
}

inline std::uint64_t output_bits(const polyclone::Program& p) {
  return wire_bits(p)[p.output() - 1];
}

/// Output values of a program on one input row (first input most
/// significant), evaluated wire by wire with no arity limit.
inline std::vector<bool> eval_outputs(const polyclone::Program& p, std::uint64_t x) {
  const unsigned n = p.arity();
  std::vector<bool> v;
  for (unsigned i = 0; i < n; ++i) v.push_back((x >> (n - 1 - i)) & 1u);
  for (const auto& g : p.gates()) {
    v.push_back(gate_bit(g.kind, v[g.a - 1], g.kind == GateKind::not_ ? false : v[g.b - 1]));
  }
  std::vector<bool> out;
  for (auto o : p.outputs()) out.push_back(v[o - 1]);
  return out;
}

/// Dense witness consistent with every gate of the program.
inline bool dense_consistent(std::uint64_t word, const polyclone::Program& p) {
  const auto w = wire_bits(p);
  for (std::size_t j = 0; j < p.gates().size(); ++j) {
    const auto& g = p.gates()[j];
    const bool a = w_at(word, w[g.a - 1]);
    const bool b = g.kind == GateKind::not_ ? false : w_at(word, w[g.b - 1]);
    if (gate_bit(g.kind, a, b) != w_at(word, w[p.arity() + j])) return false;
  }
  return true;
}

/// Smallest circuit size by unpruned iterative deepening over all gate
/// choices (n <= 2 only; sizes up to `limit`).
inline std::optional<std::size_t> smallest_size(const TruthTable& t, std::size_t limit) {
  const unsigned n = t.arity();
  const auto target = fbits(t);
  std::vector<std::uint64_t> wires;
  for (unsigned i = 1; i <= n; ++i) wires.push_back(input_bits(i, n));
  for (auto w : wires) {
    if (w == target) return 0;
  }
  std::function<bool(std::size_t)> grow = [&](std::size_t left) -> bool {
    if (left == 0) return false;
    const std::size_t k = wires.size();
    for (std::size_t a = 0; a < k; ++a) {
      for (int kind = 0; kind < 3; ++kind) {
        const auto gk = static_cast<GateKind>(kind);
        const std::size_t bmax = gk == GateKind::not_ ? a + 1 : k;
        for (std::size_t b = gk == GateKind::not_ ? a : a; b < bmax; ++b) {
          const auto c = gate_bits(gk, wires[a], wires[b], n);
          if (c == target) return true;
          wires.push_back(c);
          const bool hit = grow(left - 1);
          wires.pop_back();
          if (hit) return true;
        }
      }
    }
    return false;
  };
  for (std::size_t s = 1; s <= limit; ++s) {
    if (grow(s)) return s;
  }
  return std::nullopt;
}

/// Exhaustive cover check over {0,1} or {0,1,undef} assignments to the
/// relevant columns. Returns true iff no uncovered anti-polymorphism exists.
inline bool cover_valid_brute(const polyclone::Cover& cover) {
  const unsigned n = cover.table.arity();
  const bool partial = cover.flavor == polyclone::Flavor::ppol;
  std::vector<std::uint64_t> cols;
  auto intern = [&cols](std::uint64_t c) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (cols[i] == c) return i;
    }
    cols.push_back(c);
    return cols.size() - 1;
  };
  std::vector<std::size_t> fcols;
  for (unsigned i = 1; i <= n; ++i) fcols.push_back(intern(input_bits(i, n)));
  fcols.push_back(intern(fbits(cover.table)));
  struct G {
    GateKind k;
    std::size_t a, b, o;
  };
  std::vector<G> gs;
  for (const auto& g : cover.gates) {
    const std::size_t a = intern(g.in1().bits());
    const std::size_t b = g.kind() == GateKind::not_ ? a : intern(g.in2().bits());
    gs.push_back({g.kind(), a, b, intern(g.out().bits())});
  }
  const unsigned base = partial ? 3 : 2;
  std::vector<unsigned> v(cols.size(), 0);  // 0, 1, 2 = undef
  while (true) {
    bool anti = true;
    std::uint64_t x = 0;
    for (unsigned i = 0; i < n; ++i) {
      if (v[fcols[i]] == 2) anti = false;
      x = (x << 1) | (v[fcols[i]] == 1 ? 1u : 0u);
    }
    if (v[fcols[n]] == 2) anti = false;
    if (anti) anti = !table_has(cover.table, x, v[fcols[n]] == 1);
    if (anti) {
      bool covered = false;
      for (const auto& g : gs) {
        const unsigned a = v[g.a], b = v[g.b], o = v[g.o];
        if (a == 2 || b == 2) continue;
        if (o == 2 || gate_bit(g.k, a == 1, b == 1) != (o == 1)) {
          covered = true;
          break;
        }
      }
      if (!covered) return false;
    }
    std::size_t j = 0;
    while (j < v.size() && ++v[j] == base) v[j++] = 0;
    if (j == v.size()) return true;
  }
}

/// Random program with `size` gates over n inputs.
inline polyclone::Program random_program(std::mt19937_64& rng, unsigned n, std::size_t size) {
  polyclone::Program p(n);
  for (std::size_t j = 0; j < size; ++j) {
    const std::size_t w = p.wire_count();
    const auto kind = static_cast<GateKind>(std::uniform_int_distribution<int>(0, 2)(rng));
    std::uniform_int_distribution<std::size_t> pick(1, w);
    p.add(kind, pick(rng), kind == GateKind::not_ ? 0 : pick(rng));
  }
  return p;
}

inline TruthTable random_table(std::mt19937_64& rng, unsigned n) {
  return TruthTable(n, Column(rng() & row_mask(n), n));
}

}  // namespace oracle
