#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <iterator>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "polyclone/circuits.hpp"
#include "polyclone/core.hpp"
#include "polyclone/covers.hpp"
#include "polyclone/sweep.hpp"
#include "polyclone/synthesis.hpp"
#include "polyclone/text_io.hpp"
#include "polyclone/tsvnd.hpp"

namespace polyclone::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

template <class T, class Parse>
T load(const std::string& path, Parse parse) {
  const auto text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
}

/// Options shared by every command; unused ones stay empty.
struct Options {
  std::string table;
  std::string bits;
  unsigned n = 0;
  std::string circuit;
  std::string cover;
  std::string tsvnd;
  std::string nd;
  std::string cond;
  std::string base;
  std::string base_bits;
  std::string op;
  std::string flavor = "ppol";
  std::string checks = "s3,s4,s5";
  std::string basis = "and,or,not";
  std::string nd_out;
  std::string cond_out;
  std::vector<std::uint64_t> patch;
  std::size_t max_size = kSweepMaxCircuitSize;
  bool json = false;
  bool compile = false;
};

std::optional<TruthTable> table_from(const std::string& file, const std::string& bits,
                                     unsigned n) {
  if (!file.empty() && !bits.empty()) throw UsageError("give a table file or bits, not both");
  if (!file.empty()) return load<TruthTable>(file, parse_truth_table);
  if (bits.empty()) return std::nullopt;
  try {
    auto table = TruthTable::from_bits(bits);
    if (n != 0 && table.arity() != n) {
      throw UsageError("--bits has " + std::to_string(bits.size()) + " entries, --n " +
                       std::to_string(n) + " needs " + std::to_string(std::size_t{1} << n));
    }
    return table;
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--bits: ") + e.what());
  }
}

TruthTable require_table(const Options& o) {
  auto t = table_from(o.table, o.bits, o.n);
  if (!t) throw UsageError("this command needs --table or --bits");
  return *t;
}

NamedOp require_op(const std::string& name) {
  auto op = parse_op(name);
  if (!op) throw UsageError("unknown operation '" + name + "' (and, or, aff, maj)");
  return *op;
}

Flavor require_flavor(const std::string& name) {
  if (name == "pol") return Flavor::pol;
  if (name == "ppol") return Flavor::ppol;
  throw UsageError("flavor must be pol or ppol");
}

void require_file(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string("this command needs ") + flag);
}

std::string tuple_str(const std::vector<bool>& bits) {
  std::string s;
  for (bool b : bits) s += b ? '1' : '0';
  return s;
}

// ---------------------------------------------------------------- commands

int cmd_classify(const Options& o, std::ostream& out) {
  const auto table = require_table(o);
  const auto trivial = classify_trivial(table);
  const auto ops = detect_nontrivial_polymorphisms(table);
  if (o.json) {
    json j{{"schema_version", kReportSchemaVersion},
           {"function", table.bits()},
           {"trivial", describe(trivial)},
           {"polymorphisms", json::array()}};
    for (auto op : ops) j["polymorphisms"].push_back(op_name(op));
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "function " << table.bits() << '\n';
  out << "trivial " << describe(trivial) << '\n';
  out << "polymorphisms";
  if (ops.empty()) out << " none";
  for (auto op : ops) out << ' ' << op_name(op);
  out << '\n';
  return kOk;
}

int cmd_synth(const Options& o, std::ostream& out, std::ostream& err) {
  const auto table = require_table(o);
  const auto base = table_from(o.base, o.base_bits, o.n);
  std::optional<NamedOp> op;
  if (!o.op.empty()) op = require_op(o.op);
  const auto& closed_table = base ? *base : table;
  if (!op) {
    const auto detected = detect_nontrivial_polymorphisms(closed_table);
    if (detected.empty()) {
      err << "no non-trivial polymorphism among and, or, aff, maj\n";
      return kInvalid;
    }
    op = detected.front();
  }
  std::size_t bound = synthesis_size_bound(table.arity());
  std::optional<Program> program;
  try {
    if (base) {
      if (base->arity() != table.arity()) throw UsageError("--base has a different arity");
      auto patch = o.patch.empty() ? difference_rows(table, *base) : o.patch;
      bound = patched_size_bound(table.arity(), patch.size());
      program = synthesize_patched(table, *base, *op, patch);
    } else {
      program = synthesize_from_polymorphism(table, *op);
    }
  } catch (const NotClosedError& e) {
    err << e.what() << '\n';
    const auto selections = polymorphism_witnesses(DenseOperation::named(*op), closed_table);
    if (!selections.empty()) {
      err << "# violating rows";
      for (auto r : selections.front().rows) err << ' ' << tuple_str(closed_table.row(r));
      err << " -> " << tuple_str(selections.front().image) << '\n';
    }
    return kInvalid;
  } catch (const PatchError& e) {
    err << e.what() << '\n';
    return kInvalid;
  }
  if (o.json) {
    out << json{{"schema_version", kReportSchemaVersion},
                {"op", op_name(*op)},
                {"size", program->size()},
                {"bound", bound},
                {"program", format_program(*program)}}
               .dump(2)
        << '\n';
  } else {
    out << format_program(*program);
  }
  return kOk;
}

Basis parse_basis(const std::string& list) {
  Basis basis{false, false, false};
  std::stringstream in(list);
  for (std::string item; std::getline(in, item, ',');) {
    if (item == "and") {
      basis.and_ = true;
    } else if (item == "or") {
      basis.or_ = true;
    } else if (item == "not") {
      basis.not_ = true;
    } else {
      throw UsageError("unknown basis gate '" + item + "'");
    }
  }
  return basis;
}

int cmd_optimal(const Options& o, std::ostream& out, std::ostream& err) {
  const auto table = require_table(o);
  const auto program = optimal_circuit(table, o.max_size, parse_basis(o.basis));
  if (!program) {
    err << "no circuit with at most " << o.max_size << " gates\n";
    return kInvalid;
  }
  if (o.json) {
    out << json{{"schema_version", kReportSchemaVersion},
                {"function", table.bits()},
                {"size", program->size()},
                {"program", format_program(*program)}}
               .dump(2)
        << '\n';
  } else {
    out << format_program(*program);
  }
  return kOk;
}

int cmd_verify_circuit(const Options& o, std::ostream& out) {
  require_file(o.circuit, "--circuit");
  const auto program = load<Program>(o.circuit, parse_program);
  const auto table = require_table(o);
  if (program.arity() != table.arity()) throw UsageError("circuit and table arity differ");
  const auto row = first_disagreement(program, table);
  if (o.json) {
    json j{{"schema_version", kReportSchemaVersion}, {"valid", !row}, {"size", program.size()}};
    if (row) j["row"] = tuple_str(row_bits(*row, table.arity()));
    out << j.dump(2) << '\n';
  } else if (!row) {
    out << "valid, " << program.size() << " gates\n";
  } else {
    out << "invalid: input " << tuple_str(row_bits(*row, table.arity())) << " gives "
        << !table(*row) << ", expected " << table(*row) << '\n';
    out << format_truth_table(TruthTable(table.arity(), simulate(program)[program.output() - 1]));
  }
  return row ? kInvalid : kOk;
}

int cmd_witnesses(const Options& o, std::ostream& out) {
  const auto table = require_table(o);
  const auto op = require_op(o.op.empty() ? "maj" : o.op);
  const auto selections = polymorphism_witnesses(DenseOperation::named(op), table);
  if (o.json) {
    json j{{"schema_version", kReportSchemaVersion},
           {"function", table.bits()},
           {"op", op_name(op)},
           {"closed", selections.empty()},
           {"selections", json::array()}};
    for (const auto& s : selections) {
      json rows = json::array();
      for (auto r : s.rows) rows.push_back(tuple_str(table.row(r)));
      j["selections"].push_back({{"rows", rows}, {"image", tuple_str(s.image)}});
    }
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "# " << op_name(op) << " on " << table.bits() << ": " << selections.size()
      << " selection(s) leave the table\n";
  for (const auto& s : selections) {
    for (auto r : s.rows) out << tuple_str(table.row(r)) << ' ';
    out << "-> " << tuple_str(s.image) << '\n';
  }
  return kOk;
}

int report_violations(const CoverConditionError& e, std::ostream& out) {
  for (const auto& v : e.violations()) out << "invalid: " << v.message() << '\n';
  return kInvalid;
}

int cmd_cover_check(const Options& o, std::ostream& out) {
  require_file(o.cover, "--cover");
  const auto cover = load<Cover>(o.cover, parse_cover);
  CoverVerdict verdict;
  try {
    verdict = verify_cover(cover);
  } catch (const CoverConditionError& e) {
    return report_violations(e, out);
  }
  if (o.json) {
    json j{{"schema_version", kReportSchemaVersion},
           {"valid", verdict.valid},
           {"flavor", flavor_name(cover.flavor)},
           {"size", cover.size()}};
    if (verdict.counterexample) j["counterexample"] = format_witness(*verdict.counterexample);
    out << j.dump(2) << '\n';
  } else if (verdict.valid) {
    out << "valid " << flavor_name(cover.flavor) << " cover, " << cover.size() << " gates\n";
  } else {
    out << "# uncovered anti-polymorphism\n" << format_witness(*verdict.counterexample);
  }
  return verdict.valid ? kOk : kInvalid;
}

int cmd_cover_from_circuit(const Options& o, std::ostream& out, std::ostream& err) {
  require_file(o.circuit, "--circuit");
  const auto program = load<Program>(o.circuit, parse_program);
  const auto table = require_table(o);
  Cover cover{table, {}, Flavor::ppol};
  try {
    cover = cover_from_circuit(program, table);
  } catch (const CoverConditionError& e) {
    return report_violations(e, err);
  } catch (const std::invalid_argument& e) {
    err << e.what() << '\n';
    return kInvalid;
  }
  cover.flavor = require_flavor(o.flavor);
  out << format_cover(cover);
  return kOk;
}

int cmd_circuit_from_cover(const Options& o, std::ostream& out, std::ostream& err) {
  require_file(o.cover, "--cover");
  const auto cover = load<Cover>(o.cover, parse_cover);
  try {
    out << format_program(circuit_from_cover(cover));
  } catch (const MissingResultColumn& e) {
    err << e.what() << '\n';
    out << "# consistent anti-polymorphism\n" << format_witness(e.witness());
    return kInvalid;
  } catch (const CoverConditionError& e) {
    return report_violations(e, err);
  } catch (const std::invalid_argument& e) {
    err << e.what() << '\n';
    return kInvalid;
  }
  return kOk;
}

int cmd_tsvnd_build(const Options& o, std::ostream& out, std::ostream& err) {
  require_file(o.cover, "--cover");
  const auto cover = load<Cover>(o.cover, parse_cover);
  try {
    auto circuit = tsvnd_from_pol_cover(cover);
    out << format_tsvnd(o.compile ? compile_to_program(circuit) : circuit);
  } catch (const MissingResultColumn& e) {
    err << e.what() << '\n';
    out << "# consistent anti-polymorphism\n" << format_witness(e.witness());
    return kInvalid;
  }
  return kOk;
}

std::string rows_str(const std::vector<std::uint64_t>& rows, unsigned n) {
  std::string s;
  for (auto r : rows) s += ' ' + tuple_str(row_bits(r, n));
  return s;
}

int cmd_tsvnd_check(const Options& o, std::ostream& out) {
  require_file(o.tsvnd, "--tsvnd");
  const auto circuit = load<TsvndCircuit>(o.tsvnd, parse_tsvnd);
  const auto table = table_from(o.table, o.bits, o.n);
  const unsigned n = circuit.det_arity();
  if (!table) {
    const auto f = decided_function(circuit);
    if (o.json) {
      json j{{"schema_version", kReportSchemaVersion}, {"valid", f.has_value()}};
      if (f) j["function"] = f->bits();
      out << j.dump(2) << '\n';
    } else if (f) {
      out << "# total and single-valued\n" << format_truth_table(*f);
    } else {
      out << "invalid: not total and single-valued\n";
    }
    return f ? kOk : kInvalid;
  }
  if (table->arity() != n) throw UsageError("circuit and table arity differ");
  const auto r = validate_tsvnd(circuit, *table);
  const bool ok = r.total && r.single_valued && r.computes_f;
  if (o.json) {
    auto rows = [n](const std::vector<std::uint64_t>& v) {
      json a = json::array();
      for (auto x : v) a.push_back(tuple_str(row_bits(x, n)));
      return a;
    };
    out << json{{"schema_version", kReportSchemaVersion},
                {"valid", ok},
                {"total", r.total},
                {"single_valued", r.single_valued},
                {"computes_f", r.computes_f},
                {"quitting", rows(r.quitting_inputs)},
                {"ambiguous", rows(r.ambiguous_inputs)},
                {"wrong", rows(r.wrong_inputs)}}
               .dump(2)
        << '\n';
    return ok ? kOk : kInvalid;
  }
  if (ok) {
    out << "valid, computes " << table->bits() << ", " << circuit.size()
        << (circuit.is_constraint_form() ? " constraints\n" : " gates\n");
    return kOk;
  }
  if (!r.total) out << "quits on" << rows_str(r.quitting_inputs, n) << '\n';
  if (!r.single_valued) out << "ambiguous on" << rows_str(r.ambiguous_inputs, n) << '\n';
  if (!r.computes_f) out << "wrong on" << rows_str(r.wrong_inputs, n) << '\n';
  return kInvalid;
}

int cmd_tsvnd_to_cover(const Options& o, std::ostream& out, std::ostream& err) {
  require_file(o.tsvnd, "--tsvnd");
  const auto circuit = load<TsvndCircuit>(o.tsvnd, parse_tsvnd);
  const auto table = require_table(o);
  try {
    out << format_cover(pol_cover_from_tsvnd(circuit, table));
  } catch (const TsvndError& e) {
    err << e.what() << '\n';
    return kInvalid;
  }
  return kOk;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

int cmd_nd_split(const Options& o, std::ostream& out, std::ostream& err) {
  require_file(o.tsvnd, "--tsvnd");
  const auto circuit = load<TsvndCircuit>(o.tsvnd, parse_tsvnd);
  std::pair<NdCircuit, NdCircuit> halves{NdCircuit{NdCircuit::Mode::nd, 1, 0, Program(1)},
                                         NdCircuit{NdCircuit::Mode::cond, 1, 0, Program(1)}};
  try {
    halves = split_tsvnd(circuit);
  } catch (const TsvndError& e) {
    err << e.what() << '\n';
    return kInvalid;
  }
  const auto nd = format_nd_circuit(halves.first);
  const auto cond = format_nd_circuit(halves.second);
  if (!o.nd_out.empty()) write_text(o.nd_out, nd);
  if (!o.cond_out.empty()) write_text(o.cond_out, cond);
  if (o.nd_out.empty() && o.cond_out.empty()) out << nd << '\n' << cond;
  return kOk;
}

int cmd_nd_merge(const Options& o, std::ostream& out, std::ostream& err) {
  require_file(o.nd, "--nd");
  require_file(o.cond, "--cond");
  const auto c1 = load<NdCircuit>(o.nd, parse_nd_circuit);
  const auto c2 = load<NdCircuit>(o.cond, parse_nd_circuit);
  const auto table = table_from(o.table, o.bits, o.n);
  try {
    out << format_tsvnd(merge_nd_cond(c1, c2, table));
  } catch (const TsvndError& e) {
    err << e.what() << '\n';
    return kInvalid;
  }
  return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.n == 0) throw UsageError("sweep needs --n");
  std::set<SweepCheck> checks;
  try {
    checks = parse_checks(o.checks);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  SweepReport report;
  try {
    report = run_theorem_sweep(o.n, checks);
  } catch (const InfeasibleSweep& e) {
    throw UsageError(e.what());
  }
  if (o.json) {
    out << to_json(report).dump(2) << '\n';
  } else {
    out << "n=" << o.n << ", " << report.records.size() << " functions\n";
    for (auto c : checks) {
      out << check_name(c) << ": " << report.count(c, CheckStatus::pass) << " pass, "
          << report.count(c, CheckStatus::fail) << " fail, "
          << report.count(c, CheckStatus::not_applicable) << " n/a\n";
    }
    for (const auto& r : report.records) {
      for (const auto& [c, outcome] : r.checks) {
        if (outcome.status != CheckStatus::fail) continue;
        err << r.id << ' ' << check_name(c) << ": " << outcome.detail << '\n' << outcome.artifact;
      }
    }
  }
  return report.all_passed() ? kOk : kInvalid;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polymorphism-based circuit synthesis and lower-bound tools", "polyclone"};
  app.require_subcommand(1);
  Options o;

  auto add_table = [&o](CLI::App* c) {
    c->add_option("--table", o.table, "truth table file");
    c->add_option("--bits", o.bits, "inline output bits, row 0 first");
    c->add_option("--n", o.n, "arity of --bits");
  };
  auto add_json = [&o](CLI::App* c) { c->add_flag("--json", o.json, "JSON output"); };

  auto* classify = app.add_subcommand("classify", "trivial class and detected polymorphisms");
  add_table(classify);
  add_json(classify);

  auto* synth = app.add_subcommand("synth", "linear-size circuit from a polymorphism");
  add_table(synth);
  add_json(synth);
  synth->add_option("--op", o.op, "and, or, aff or maj (default: first detected)");
  synth->add_option("--base", o.base, "closed table to patch from");
  synth->add_option("--base-bits", o.base_bits, "inline closed table to patch from");
  synth->add_option("--patch", o.patch, "patch rows (default: rows where the tables differ)");

  auto* optimal = app.add_subcommand("optimal", "minimum-size circuit by exhaustive search");
  add_table(optimal);
  add_json(optimal);
  optimal->add_option("--max-size", o.max_size, "largest size to try");
  optimal->add_option("--basis", o.basis, "gate basis, comma-separated");

  auto* verify = app.add_subcommand("verify-circuit", "check that a circuit computes a table");
  add_table(verify);
  add_json(verify);
  verify->add_option("--circuit", o.circuit, "circuit file");

  auto* witnesses = app.add_subcommand("witnesses", "row selections an operation maps outside f");
  add_table(witnesses);
  add_json(witnesses);
  witnesses->add_option("--op", o.op, "and, or, aff or maj (default maj)");

  auto* cover_check = app.add_subcommand("cover-check", "verify a pol or ppol cover");
  add_json(cover_check);
  cover_check->add_option("--cover", o.cover, "cover file");

  auto* c2cov = app.add_subcommand("cover-from-circuit", "gates of a circuit as a cover");
  add_table(c2cov);
  c2cov->add_option("--circuit", o.circuit, "circuit file");
  c2cov->add_option("--flavor", o.flavor, "pol or ppol");

  auto* cov2c = app.add_subcommand("circuit-from-cover", "order a ppol cover into a circuit");
  cov2c->add_option("--cover", o.cover, "cover file");

  auto* tbuild = app.add_subcommand("tsvnd-build", "TSVND circuit from a pol cover");
  tbuild->add_option("--cover", o.cover, "cover file");
  tbuild->add_flag("--compile", o.compile, "emit the (valid, value) program form");

  auto* tcheck = app.add_subcommand("tsvnd-check", "validate a TSVND circuit by enumeration");
  add_table(tcheck);
  add_json(tcheck);
  tcheck->add_option("--tsvnd", o.tsvnd, "TSVND circuit file");

  auto* t2cov = app.add_subcommand("tsvnd-to-cover", "pol cover from a TSVND circuit");
  add_table(t2cov);
  t2cov->add_option("--tsvnd", o.tsvnd, "TSVND circuit file");

  auto* split = app.add_subcommand("nd-split", "ND and coND halves of a TSVND circuit");
  split->add_option("--tsvnd", o.tsvnd, "TSVND circuit file");
  split->add_option("--nd-out", o.nd_out, "write the ND half here");
  split->add_option("--cond-out", o.cond_out, "write the coND half here");

  auto* merge = app.add_subcommand("nd-merge", "TSVND circuit from ND and coND circuits");
  add_table(merge);
  merge->add_option("--nd", o.nd, "ND circuit file");
  merge->add_option("--cond", o.cond, "coND circuit file");

  auto* sweep = app.add_subcommand("sweep", "run the theorem checks over all n-ary functions");
  add_json(sweep);
  sweep->add_option("--n", o.n, "arity");
  sweep->add_option("--checks", o.checks, "comma-separated subset of s3,s4,s5");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  try {
    auto* cmd = app.get_subcommands().front();
    const auto name = cmd->get_name();
    if (name == "classify") return cmd_classify(o, out);
    if (name == "synth") return cmd_synth(o, out, err);
    if (name == "optimal") return cmd_optimal(o, out, err);
    if (name == "verify-circuit") return cmd_verify_circuit(o, out);
    if (name == "witnesses") return cmd_witnesses(o, out);
    if (name == "cover-check") return cmd_cover_check(o, out);
    if (name == "cover-from-circuit") return cmd_cover_from_circuit(o, out, err);
    if (name == "circuit-from-cover") return cmd_circuit_from_cover(o, out, err);
    if (name == "tsvnd-build") return cmd_tsvnd_build(o, out, err);
    if (name == "tsvnd-check") return cmd_tsvnd_check(o, out);
    if (name == "tsvnd-to-cover") return cmd_tsvnd_to_cover(o, out, err);
    if (name == "nd-split") return cmd_nd_split(o, out, err);
    if (name == "nd-merge") return cmd_nd_merge(o, out, err);
    if (name == "sweep") return cmd_sweep(o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kUsage;
}

}  // namespace polyclone::cli
