#include <doctest.h>

#include <bit>
#include <map>
#include <random>

#include "oracles.hpp"
#include "polyclone/synthesis.hpp"

using namespace polyclone;

namespace {

TruthTable nth_table(unsigned n, std::uint64_t bits) { return TruthTable(n, Column(bits, n)); }

/// Every n-ary function closed under `op`: the brute-force oracle up to n = 3,
/// the library's own test at n = 4.
std::vector<TruthTable> closed_tables(unsigned n, NamedOp op) {
  std::vector<TruthTable> out;
  for (std::uint64_t bits = 0; bits < (1ull << (1u << n)); ++bits) {
    const auto t = nth_table(n, bits);
    if (n > 3) {
      if (is_closed_under(op, t)) out.push_back(t);
      continue;
    }
    bool closed = false;
    switch (op) {
      case NamedOp::and_: closed = oracle::closed_brute(t, 2, oracle::op_and); break;
      case NamedOp::or_: closed = oracle::closed_brute(t, 2, oracle::op_or); break;
      case NamedOp::aff: closed = oracle::closed_brute(t, 3, oracle::op_aff); break;
      case NamedOp::maj: closed = oracle::closed_brute(t, 3, oracle::op_maj); break;
    }
    if (closed) out.push_back(t);
  }
  return out;
}

}  // namespace

TEST_CASE("boundary bits") {
  // f(x1, x2, x3) = x1 and not x3
  const auto t = TruthTable::from_function(3, [](std::uint64_t r) { return (r & 4) && !(r & 1); });
  const BoundaryBits b(t);
  CHECK(b.size() == 8);
  CHECK(b.unique_one(1));
  CHECK_FALSE(b.unique_one(2));
  CHECK_FALSE(b.unique_one(3));
  CHECK_FALSE(b.unique_zero(1));
  CHECK(b.unique_zero(3));
  CHECK_FALSE(b.all_zero());
  CHECK_FALSE(b.all_one());
  CHECK(b[1] == b.unique_one(1));
  CHECK(b[6] == b.unique_zero(3));
}

TEST_CASE("synthesis is correct and linear on every closed function up to n = 4") {
  for (unsigned n = 1; n <= 4; ++n) {
    for (auto op : kNamedOps) {
      for (const auto& t : closed_tables(n, op)) {
        CAPTURE(t.bits());
        CAPTURE(op_name(op));
        const auto p = synthesize_from_polymorphism(t, op);
        CHECK(oracle::output_bits(p) == oracle::fbits(t));
        CHECK(p.size() <= synthesis_size_bound(n));
      }
    }
  }
}

TEST_CASE("synthesis on random closed functions at n = 5 and 6") {
  // and: conjunctions of inputs; or: disjunctions; aff: parities with a
  // constant; maj: literals and constants.
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 80; ++trial) {
    const unsigned n = 5 + trial % 2;
    const auto op = kNamedOps[trial % 4];
    const std::uint64_t vars = rng() & ((1ull << n) - 1);
    const bool flip = rng() & 1;
    const unsigned lit = static_cast<unsigned>(rng() % n);
    const auto t = TruthTable::from_function(n, [&](std::uint64_t r) {
      switch (op) {
        case NamedOp::and_: return (r & vars) == vars;
        case NamedOp::or_: return (r & vars) != 0;
        case NamedOp::aff: return (std::popcount(r & vars) % 2 == 1) != flip;
        case NamedOp::maj: return trial % 8 == 3 ? flip : (((r >> lit) & 1u) != 0) != flip;
      }
      return false;
    });
    CAPTURE(t.bits());
    REQUIRE(is_closed_under(op, t));
    const auto p = synthesize_from_polymorphism(t, op);
    CHECK(oracle::output_bits(p) == oracle::fbits(t));
    CHECK(p.size() <= synthesis_size_bound(n));
  }
}

TEST_CASE("synthesis rejects operations the table is not closed under") {
  CHECK_THROWS_AS(synthesize_from_polymorphism(TruthTable::from_bits("0110"), NamedOp::and_),
                  NotClosedError);
  CHECK_THROWS_AS(synthesize_from_polymorphism(TruthTable::from_bits("0001"), NamedOp::maj),
                  NotClosedError);
}

TEST_CASE("constants and projections") {
  for (auto bits : {"0000", "1111", "00000000", "11111111"}) {
    const auto t = TruthTable::from_bits(bits);
    for (auto op : detect_nontrivial_polymorphisms(t)) {
      const auto p = synthesize_from_polymorphism(t, op);
      CHECK(computes(p, t));
      CHECK(p.size() >= 1);
    }
  }
  const auto x2 = TruthTable::from_bits("0101");
  for (auto op : kNamedOps) CHECK(computes(synthesize_from_polymorphism(x2, op), x2));
}

TEST_CASE("multi-output closure is componentwise") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned n = 1 + trial % 3;
    MultiTable m{n, {}};
    const std::size_t outs = 1 + trial % 3;
    for (std::size_t j = 0; j < outs; ++j) m.outputs.push_back(oracle::random_table(rng, n).result_column());
    for (auto op : kNamedOps) {
      bool each = true;
      for (std::size_t j = 0; j < outs; ++j) each = each && is_closed_under(op, m.component(j));
      CHECK(is_closed_under(op, m) == each);
    }
  }
}

TEST_CASE("multi-output synthesis") {
  std::mt19937_64 rng(29);
  for (auto op : kNamedOps) {
    for (unsigned n = 2; n <= 3; ++n) {
      const auto pool = closed_tables(n, op);
      for (int trial = 0; trial < 20; ++trial) {
        MultiTable m{n, {}};
        const std::size_t outs = 1 + trial % 4;
        for (std::size_t j = 0; j < outs; ++j) {
          m.outputs.push_back(pool[rng() % pool.size()].result_column());
        }
        const auto p = synthesize_multi_output(m, op);
        REQUIRE(p.outputs().size() == outs);
        const auto wires = oracle::wire_bits(p);
        for (std::size_t j = 0; j < outs; ++j) CHECK(wires[p.outputs()[j] - 1] == m.outputs[j].bits());
        CHECK(p.size() <= outs * synthesis_size_bound(n));
      }
    }
  }
  MultiTable bad{2, {Column::parse("0110")}};
  CHECK_THROWS_AS(synthesize_multi_output(bad, NamedOp::and_), NotClosedError);
}

TEST_CASE("difference rows") {
  const auto f = TruthTable::from_bits("0110");
  const auto g = TruthTable::from_bits("0111");
  CHECK(difference_rows(f, g) == std::vector<std::uint64_t>{3});
  CHECK(difference_rows(f, f).empty());
}

TEST_CASE("patched synthesis") {
  const auto f = TruthTable::from_bits("0110");
  const auto g = TruthTable::from_bits("0111");
  const auto p = synthesize_patched(f, g, NamedOp::or_, {3});
  CHECK(computes(p, f));
  CHECK(p.size() <= patched_size_bound(2, 1));
  // Extra patch rows that agree are allowed.
  CHECK(computes(synthesize_patched(f, g, NamedOp::or_, {0, 3}), f));
  CHECK_THROWS_AS(synthesize_patched(f, g, NamedOp::or_, {0}), PatchError);
  CHECK_THROWS_AS(synthesize_patched(f, g, NamedOp::or_, {3, 4}), PatchError);
  CHECK_THROWS_AS(synthesize_patched(f, TruthTable::from_bits("01"), NamedOp::or_, {}),
                  PatchError);
  CHECK_THROWS_AS(synthesize_patched(f, f, NamedOp::and_, {}), NotClosedError);
}

TEST_CASE("patched synthesis on random triples") {
  std::mt19937_64 rng(31);
  std::map<std::pair<unsigned, NamedOp>, std::vector<TruthTable>> pools;
  for (int trial = 0; trial < 300; ++trial) {
    const unsigned n = 1 + trial % 4;
    const auto op = kNamedOps[(trial / 4) % 4];
    auto& pool = pools[{n, op}];
    if (pool.empty()) pool = closed_tables(n, op);
    const auto g = pool[rng() % pool.size()];
    const std::uint64_t rows = 1ull << n;
    std::vector<std::uint64_t> patch;
    const std::size_t k = rng() % 5;
    for (std::size_t j = 0; j < k; ++j) patch.push_back(rng() % rows);
    auto fb = oracle::fbits(g);
    for (auto r : patch) {
      if (rng() & 1) fb ^= 1ull << r;
    }
    const TruthTable f(n, Column(fb, n));
    std::sort(patch.begin(), patch.end());
    patch.erase(std::unique(patch.begin(), patch.end()), patch.end());
    const auto p = synthesize_patched(f, g, op, patch);
    CHECK(oracle::output_bits(p) == fb);
    CHECK(p.size() <= patched_size_bound(n, patch.size()));
  }
}
