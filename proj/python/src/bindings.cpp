#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polyclone/circuits.hpp"
#include "polyclone/core.hpp"
#include "polyclone/covers.hpp"
#include "polyclone/sweep.hpp"
#include "polyclone/synthesis.hpp"
#include "polyclone/text_io.hpp"
#include "polyclone/tsvnd.hpp"

namespace py = pybind11;
using namespace polyclone;

namespace {

NamedOp op_from(const std::string& name) {
  auto op = parse_op(name);
  if (!op) throw py::value_error("unknown operation '" + name + "'");
  return *op;
}

Flavor flavor_from(const std::string& name) {
  if (name == "pol") return Flavor::pol;
  if (name == "ppol") return Flavor::ppol;
  throw py::value_error("flavor must be 'pol' or 'ppol'");
}

std::string tuple_str(const std::vector<bool>& bits) {
  std::string s;
  for (bool b : bits) s += b ? '1' : '0';
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Truth tables, polymorphisms, circuits, covers and TSVND circuits";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("classify", [](const std::string& bits) {
    return describe(classify_trivial(TruthTable::from_bits(bits)));
  }, py::arg("bits"));

  m.def("detect_polymorphisms", [](const std::string& bits) {
    std::vector<std::string> out;
    for (auto op : detect_nontrivial_polymorphisms(TruthTable::from_bits(bits))) {
      out.emplace_back(op_name(op));
    }
    return out;
  }, py::arg("bits"));

  m.def("polymorphism_witnesses", [](const std::string& bits, const std::string& op) {
    const auto table = TruthTable::from_bits(bits);
    std::vector<std::pair<std::vector<std::string>, std::string>> out;
    for (const auto& s : polymorphism_witnesses(DenseOperation::named(op_from(op)), table)) {
      std::vector<std::string> rows;
      for (auto r : s.rows) rows.push_back(tuple_str(table.row(r)));
      out.emplace_back(std::move(rows), tuple_str(s.image));
    }
    return out;
  }, py::arg("bits"), py::arg("op") = "maj");

  m.def("synthesize", [](const std::string& bits, const std::string& op) {
    return format_program(synthesize_from_polymorphism(TruthTable::from_bits(bits), op_from(op)));
  }, py::arg("bits"), py::arg("op"));

  m.def("synthesize_patched", [](const std::string& f, const std::string& g, const std::string& op,
                                 const std::vector<std::uint64_t>& patch) {
    return format_program(synthesize_patched(TruthTable::from_bits(f), TruthTable::from_bits(g),
                                             op_from(op), patch));
  }, py::arg("f"), py::arg("g"), py::arg("op"), py::arg("patch"));

  m.def("optimal_circuit", [](const std::string& bits, std::size_t max_size)
            -> std::optional<std::string> {
    auto p = optimal_circuit(TruthTable::from_bits(bits), max_size);
    if (!p) return std::nullopt;
    return format_program(*p);
  }, py::arg("bits"), py::arg("max_size") = kSweepMaxCircuitSize);

  m.def("computes", [](const std::string& program, const std::string& bits) {
    return computes(parse_program(program), TruthTable::from_bits(bits));
  }, py::arg("program"), py::arg("bits"));

  m.def("cover_from_circuit", [](const std::string& program, const std::string& bits,
                                 const std::string& flavor) {
    auto cover = cover_from_circuit(parse_program(program), TruthTable::from_bits(bits));
    cover.flavor = flavor_from(flavor);
    return format_cover(cover);
  }, py::arg("program"), py::arg("bits"), py::arg("flavor") = "ppol");

  m.def("verify_cover", [](const std::string& cover) {
    const auto verdict = verify_cover(parse_cover(cover));
    std::optional<std::string> witness;
    if (verdict.counterexample) witness = format_witness(*verdict.counterexample);
    return std::make_pair(verdict.valid, witness);
  }, py::arg("cover"));

  m.def("circuit_from_cover", [](const std::string& cover) {
    return format_program(circuit_from_cover(parse_cover(cover)));
  }, py::arg("cover"));

  m.def("tsvnd_from_pol_cover", [](const std::string& cover) {
    return format_tsvnd(tsvnd_from_pol_cover(parse_cover(cover)));
  }, py::arg("cover"));

  m.def("validate_tsvnd", [](const std::string& circuit, const std::string& bits) {
    const auto r = validate_tsvnd(parse_tsvnd(circuit), TruthTable::from_bits(bits));
    py::dict d;
    d["total"] = r.total;
    d["single_valued"] = r.single_valued;
    d["computes_f"] = r.computes_f;
    return d;
  }, py::arg("circuit"), py::arg("bits"));

  m.def("pol_cover_from_tsvnd", [](const std::string& circuit, const std::string& bits) {
    return format_cover(pol_cover_from_tsvnd(parse_tsvnd(circuit), TruthTable::from_bits(bits)));
  }, py::arg("circuit"), py::arg("bits"));

  m.def("anchored_pol_cover_from_tsvnd", [](const std::string& circuit, const std::string& bits) {
    return format_cover(
        anchored_pol_cover_from_tsvnd(parse_tsvnd(circuit), TruthTable::from_bits(bits)));
  }, py::arg("circuit"), py::arg("bits"));

  m.def("split_tsvnd", [](const std::string& circuit) {
    auto [nd, cond] = split_tsvnd(parse_tsvnd(circuit));
    return std::make_pair(format_nd_circuit(nd), format_nd_circuit(cond));
  }, py::arg("circuit"));

  m.def("merge_nd_cond", [](const std::string& nd, const std::string& cond) {
    return format_tsvnd(merge_nd_cond(parse_nd_circuit(nd), parse_nd_circuit(cond)));
  }, py::arg("nd"), py::arg("cond"));

  m.def("decided_function", [](const std::string& circuit) -> std::optional<std::string> {
    auto f = decided_function(parse_tsvnd(circuit));
    if (!f) return std::nullopt;
    return f->bits();
  }, py::arg("circuit"));

  m.def("run_theorem_sweep_json", [](unsigned n, const std::string& checks) {
    py::gil_scoped_release release;
    return to_json(run_theorem_sweep(n, parse_checks(checks))).dump();
  }, py::arg("n"), py::arg("checks") = "s3,s4,s5");
}
