#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "polyclone/circuits.hpp"

using namespace polyclone;

namespace {

TruthTable nth_table(unsigned n, std::uint64_t bits) { return TruthTable(n, Column(bits, n)); }

Program xor2() {
  Program p(2);
  const auto a = p.add(GateKind::and_, 1, 2);
  const auto o = p.add(GateKind::or_, 1, 2);
  const auto na = p.add(GateKind::not_, a);
  p.add(GateKind::and_, o, na);
  return p;
}

}  // namespace

TEST_CASE("program construction") {
  Program p(2);
  CHECK(p.add(GateKind::and_, 1, 2) == 3);
  CHECK(p.add(GateKind::not_, 3) == 4);
  CHECK(p.size() == 2);
  CHECK(p.wire_count() == 4);
  CHECK(p.output() == 4);
  CHECK(p.gate(3).kind == GateKind::and_);
  CHECK_THROWS_AS(p.add(GateKind::or_, 1, 5), std::invalid_argument);
  CHECK_THROWS_AS(p.add(GateKind::or_, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(p.gate(2), std::out_of_range);
  CHECK_THROWS_AS(p.set_outputs({9}), std::out_of_range);
  p.set_outputs({3, 4});
  CHECK(p.outputs() == std::vector<std::size_t>{3, 4});
  CHECK_THROWS_AS(Program(0), std::invalid_argument);
  CHECK(parse_gate("OR") == GateKind::or_);
  CHECK(gate_name(GateKind::not_) == "NOT");
}

TEST_CASE("evaluation of a small program") {
  const auto p = xor2();
  for (std::uint64_t x = 0; x < 4; ++x) {
    const auto e = evaluate(p, x);
    CHECK(e.output() == (((x >> 1) ^ x) & 1u));
    CHECK(e.trace.size() == 6);
  }
  CHECK(evaluate(p, std::vector<bool>{true, false}).output());
  CHECK(computes(p, TruthTable::from_bits("0110")));
  CHECK(first_disagreement(p, TruthTable::from_bits("0111")) == 3u);
  CHECK(gate_column(p, 6).str() == "0110");
}

TEST_CASE("simulation agrees with the oracle on random programs") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const unsigned n = 1 + trial % 5;
    const auto p = oracle::random_program(rng, n, 1 + trial % 9);
    const auto cols = simulate(p);
    const auto expect = oracle::wire_bits(p);
    REQUIRE(cols.size() == expect.size());
    for (std::size_t i = 0; i < cols.size(); ++i) CHECK(cols[i].bits() == expect[i]);
    const auto x = rng() & ((1ull << n) - 1);
    const auto e = evaluate(p, x);
    for (std::size_t i = 0; i < e.trace.size(); ++i) CHECK(e.trace[i] == ((expect[i] >> x) & 1u));
  }
}

TEST_CASE("witness consistency: sparse and dense agree") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = oracle::random_program(rng, 2, 1 + trial % 6);
    const std::uint64_t word = rng() & 0xFFFF;
    Witness w;
    for (const auto& c : simulate(p)) w.set(c, oracle::w_at(word, c.bits()));
    const bool expected = oracle::dense_consistent(word, p);
    CHECK(is_consistent(w, p) == expected);
    CHECK(is_consistent(DenseOperation::from_word(4, word), p) == expected);
  }
}

TEST_CASE("row selectors are consistent with every program") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = oracle::random_program(rng, 3, 6);
    const auto cols = simulate(p);
    for (std::uint64_t r = 0; r < 8; ++r) CHECK(is_consistent(Witness::row_selector(cols, r), p));
  }
}

TEST_CASE("normalize keeps outputs and removes duplicates and dead gates") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 400; ++trial) {
    const unsigned n = 1 + trial % 4;
    auto p = oracle::random_program(rng, n, 1 + trial % 12);
    if (trial % 3 == 0 && p.size() > 1) p.set_outputs({p.wire_count() - 1, p.wire_count()});
    const auto q = normalize(p);
    CHECK(q.size() <= p.size());
    const auto pw = oracle::wire_bits(p);
    const auto qw = oracle::wire_bits(q);
    REQUIRE(q.outputs().size() == p.outputs().size());
    for (std::size_t k = 0; k < p.outputs().size(); ++k) {
      CHECK(qw[q.outputs()[k] - 1] == pw[p.outputs()[k] - 1]);
    }
    std::set<std::uint64_t> seen(qw.begin(), qw.end());
    CHECK(seen.size() == qw.size());
    std::vector<bool> used(q.wire_count() + 1, false);
    for (auto o : q.outputs()) used[o] = true;
    for (const auto& g : q.gates()) {
      used[g.a] = true;
      if (g.kind != GateKind::not_) used[g.b] = true;
    }
    for (std::size_t w = n + 1; w <= q.wire_count(); ++w) CHECK(used[w]);
  }
}

TEST_CASE("optimal sizes on B2 match the unpruned oracle") {
  // Histogram from an independent search: sizes 0,1,2,4 occur 2,4,8,2 times.
  std::map<std::size_t, int> histogram;
  for (std::uint64_t bits = 0; bits < 16; ++bits) {
    const auto t = nth_table(2, bits);
    CAPTURE(t.bits());
    const auto p = optimal_circuit(t, 6);
    REQUIRE(p);
    CHECK(computes(*p, t));
    CHECK(oracle::output_bits(*p) == bits);
    CHECK(oracle::smallest_size(t, 6) == p->size());
    ++histogram[p->size()];
  }
  CHECK(histogram == std::map<std::size_t, int>{{0, 2}, {1, 4}, {2, 8}, {4, 2}});
}

TEST_CASE("optimal sizes on B3 agree with the oracle up to three gates") {
  for (std::uint64_t bits = 0; bits < 256; ++bits) {
    const auto t = nth_table(3, bits);
    const auto lib = optimal_circuit(t, 3);
    const auto ref = oracle::smallest_size(t, 3);
    CAPTURE(t.bits());
    REQUIRE(lib.has_value() == ref.has_value());
    if (lib) {
      CHECK(lib->size() == *ref);
      CHECK(computes(*lib, t));
    }
  }
}

TEST_CASE("optimal search respects the size limit and basis") {
  const auto x = TruthTable::from_bits("0110");
  CHECK_FALSE(optimal_circuit(x, 3).has_value());
  CHECK(optimal_circuit(x, 4)->size() == 4);
  const auto nand = optimal_circuit(TruthTable::from_bits("1110"), 4, Basis{true, false, true});
  REQUIRE(nand);
  CHECK(nand->size() == 2);
  for (const auto& g : nand->gates()) CHECK(g.kind != GateKind::or_);
  // OR takes four gates once OR itself is unavailable.
  CHECK(optimal_circuit(TruthTable::from_bits("0111"), 6, Basis{true, false, true})->size() == 4);
  CHECK_FALSE(optimal_circuit(TruthTable::from_bits("1100"), 6, Basis{true, true, false}));
}

TEST_CASE("enumerated programs all compute the function") {
  for (std::uint64_t bits = 0; bits < 16; ++bits) {
    const auto t = nth_table(2, bits);
    const auto best = optimal_circuit(t, 6);
    REQUIRE(best);
    for (std::size_t s = best->size(); s <= best->size() + 1; ++s) {
      std::size_t visited = 0;
      const auto count = enumerate_programs(t, s, [&](const Program& p) {
        ++visited;
        CHECK(p.size() == s);
        CHECK(oracle::output_bits(p) == bits);
        return true;
      });
      CHECK(count == visited);
      if (s == best->size()) CHECK(count >= 1);
    }
  }
}

TEST_CASE("enumeration stops when the visitor asks") {
  std::size_t calls = 0;
  enumerate_programs(TruthTable::from_bits("0110"), 5, [&](const Program&) {
    ++calls;
    return false;
  });
  CHECK(calls == 1);
}
