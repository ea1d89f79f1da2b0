#include "polyclone/text_io.hpp"

#include <charconv>
#include <map>
#include <sstream>
#include <vector>

namespace polyclone {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string raw(text.substr(pos, end - pos));
    pos = end + 1;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream in(raw);
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return lines;
}

std::size_t parse_number(const Line& line, std::string_view s) {
  std::size_t value = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || s.empty()) {
    throw ParseError(line.number, "expected a number, got '" + std::string(s) + "'");
  }
  return value;
}

/// key=value pairs of a header line; a bare first token is returned as key "".
std::map<std::string, std::string> parse_header(const Line& line) {
  std::map<std::string, std::string> fields;
  for (const auto& tok : line.tokens) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) {
      fields[""] = tok;
    } else {
      fields[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
  }
  return fields;
}

const std::string& require_field(const Line& line, const std::map<std::string, std::string>& h,
                                 const std::string& key) {
  auto it = h.find(key);
  if (it == h.end()) throw ParseError(line.number, "header is missing '" + key + "='");
  return it->second;
}

unsigned parse_arity(const Line& line, const std::map<std::string, std::string>& h) {
  const auto n = parse_number(line, require_field(line, h, "n"));
  if (n < 1) throw ParseError(line.number, "n must be at least 1");
  return static_cast<unsigned>(n);
}

Column parse_column(const Line& line, const std::string& tok, unsigned arity) {
  Column c;
  try {
    c = Column::parse(tok);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line.number, e.what());
  }
  if (c.arity() != arity) {
    throw ParseError(line.number, "column '" + tok + "' should have " +
                                      std::to_string(std::size_t{1} << arity) + " bits");
  }
  return c;
}

std::size_t parse_wire(const Line& line, const std::string& tok) {
  if (tok.size() < 2 || tok[0] != 'g') {
    throw ParseError(line.number, "expected a wire name like g3, got '" + tok + "'");
  }
  return parse_number(line, std::string_view(tok).substr(1));
}

std::vector<Line> nonempty(std::string_view text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty input");
  return lines;
}

/// Gate and output lines of a circuit body following the header.
Program parse_program_body(const std::vector<Line>& lines, std::size_t first, unsigned arity) {
  Program program(arity);
  std::vector<std::size_t> outputs;
  bool have_outputs = false;
  for (std::size_t k = first; k < lines.size(); ++k) {
    const auto& line = lines[k];
    const auto& t = line.tokens;
    if (t[0] == "output" || t[0] == "outputs") {
      if (have_outputs) throw ParseError(line.number, "outputs given twice");
      if (t.size() < 2 || (t[0] == "output" && t.size() != 2)) {
        throw ParseError(line.number, "malformed output line");
      }
      for (std::size_t j = 1; j < t.size(); ++j) outputs.push_back(parse_wire(line, t[j]));
      have_outputs = true;
      continue;
    }
    if (have_outputs) throw ParseError(line.number, "gate after the output line");
    if (t.size() < 4 || t[1] != "=") throw ParseError(line.number, "expected 'gK = OP ...'");
    const auto wire = parse_wire(line, t[0]);
    if (wire != program.wire_count() + 1) {
      throw ParseError(line.number, "expected g" + std::to_string(program.wire_count() + 1) +
                                        ", got " + t[0]);
    }
    const auto kind = parse_gate(t[2]);
    if (!kind) throw ParseError(line.number, "unknown gate '" + t[2] + "'");
    const std::size_t want = 3 + gate_arity(*kind);
    if (t.size() != want) throw ParseError(line.number, "wrong operand count for " + t[2]);
    const auto a = parse_wire(line, t[3]);
    const auto b = *kind == GateKind::not_ ? 0 : parse_wire(line, t[4]);
    try {
      program.add(*kind, a, b);
    } catch (const std::exception& e) {
      throw ParseError(line.number, e.what());
    }
  }
  if (have_outputs) {
    try {
      program.set_outputs(std::move(outputs));
    } catch (const std::exception& e) {
      throw ParseError(lines.back().number, e.what());
    }
  }
  return program;
}

void write_program_body(std::ostringstream& out, const Program& program) {
  std::size_t wire = program.arity();
  for (const auto& g : program.gates()) {
    out << 'g' << ++wire << " = " << gate_name(g.kind) << " g" << g.a;
    if (g.kind != GateKind::not_) out << " g" << g.b;
    out << '\n';
  }
  const auto outs = program.outputs();
  out << (outs.size() == 1 ? "output" : "outputs");
  for (auto o : outs) out << " g" << o;
  out << '\n';
}

}  // namespace

// ---------------------------------------------------------------- truth tables

MultiTable parse_multi_table(std::string_view text) {
  const auto lines = nonempty(text);
  const auto n = parse_arity(lines[0], parse_header(lines[0]));
  if (n > kMaxArity) throw ParseError(lines[0].number, "n is limited to 6");
  MultiTable table{n, {}};
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (lines[k].tokens.size() != 1) throw ParseError(lines[k].number, "expected a bit string");
    table.outputs.push_back(parse_column(lines[k], lines[k].tokens[0], n));
  }
  if (table.outputs.empty()) throw ParseError(lines[0].number, "missing output bits");
  return table;
}

TruthTable parse_truth_table(std::string_view text) {
  const auto multi = parse_multi_table(text);
  if (multi.output_count() != 1) throw ParseError(1, "expected a single-output truth table");
  return multi.component(0);
}

std::string format_multi_table(const MultiTable& table) {
  std::ostringstream out;
  out << "n=" << table.arity << '\n';
  for (const auto& c : table.outputs) out << c.str() << '\n';
  return out.str();
}

std::string format_truth_table(const TruthTable& table) {
  return format_multi_table(MultiTable{table.arity(), {table.result_column()}});
}

// ---------------------------------------------------------------- circuits

Program parse_program(std::string_view text) {
  const auto lines = nonempty(text);
  const auto n = parse_arity(lines[0], parse_header(lines[0]));
  return parse_program_body(lines, 1, n);
}

std::string format_program(const Program& program) {
  std::ostringstream out;
  out << "n=" << program.arity() << '\n';
  write_program_body(out, program);
  return out.str();
}

// ---------------------------------------------------------------- covers

Cover parse_cover(std::string_view text) {
  const auto lines = nonempty(text);
  const auto header = parse_header(lines[0]);
  const auto n = parse_arity(lines[0], header);
  Flavor flavor = Flavor::ppol;
  const auto& fl = require_field(lines[0], header, "flavor");
  if (fl == "pol") {
    flavor = Flavor::pol;
  } else if (fl != "ppol") {
    throw ParseError(lines[0].number, "flavor must be pol or ppol");
  }
  auto table_it = header.find("table");
  if (table_it == header.end()) throw ParseError(lines[0].number, "header is missing 'table='");
  const TruthTable table(n, parse_column(lines[0], table_it->second, n));

  Cover cover{table, {}, flavor};
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& line = lines[k];
    const auto& t = line.tokens;
    const auto kind = parse_gate(t[0]);
    if (!kind) throw ParseError(line.number, "unknown gate '" + t[0] + "'");
    if (t.size() != 2 + gate_arity(*kind)) {
      throw ParseError(line.number, "wrong column count for " + t[0]);
    }
    try {
      if (*kind == GateKind::not_) {
        cover.gates.emplace_back(*kind, parse_column(line, t[1], n), parse_column(line, t[2], n));
      } else {
        cover.gates.emplace_back(*kind, parse_column(line, t[1], n), parse_column(line, t[2], n),
                                 parse_column(line, t[3], n));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw ParseError(line.number, e.what());
    }
  }
  return cover;
}

std::string format_cover(const Cover& cover) {
  std::ostringstream out;
  out << "n=" << cover.table.arity() << " flavor=" << flavor_name(cover.flavor)
      << " table=" << cover.table.bits() << '\n';
  for (const auto& g : cover.gates) {
    out << gate_name(g.kind());
    for (const auto& c : g.columns()) out << ' ' << c.str();
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------- TSVND

namespace {

std::size_t parse_variable(const Line& line, const std::string& tok, unsigned n,
                           std::size_t y_count) {
  if (tok.size() < 2 || (tok[0] != 'x' && tok[0] != 'y')) {
    throw ParseError(line.number, "expected a variable like x1 or y2, got '" + tok + "'");
  }
  const auto idx = parse_number(line, std::string_view(tok).substr(1));
  if (tok[0] == 'x') {
    if (idx < 1 || idx > n + 1u) throw ParseError(line.number, tok + " is out of range");
    return idx - 1;
  }
  if (idx < 1 || idx > y_count) throw ParseError(line.number, tok + " is out of range");
  return n + idx;
}

}  // namespace

TsvndCircuit parse_tsvnd(std::string_view text) {
  const auto lines = nonempty(text);
  const auto header = parse_header(lines[0]);
  const auto n = parse_arity(lines[0], header);
  const auto m = parse_number(lines[0], require_field(lines[0], header, "m"));

  const bool program_form = lines.size() > 1 && !lines[1].tokens.empty() &&
                            (lines[1].tokens[0][0] == 'g' || lines[1].tokens[0] == "outputs");
  if (program_form) {
    auto program = parse_program_body(lines, 1, static_cast<unsigned>(n + m));
    try {
      return TsvndCircuit::from_program(n, std::move(program));
    } catch (const std::exception& e) {
      throw ParseError(lines.back().number, e.what());
    }
  }

  std::vector<Constraint> constraints;
  std::size_t output = n;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& line = lines[k];
    const auto& t = line.tokens;
    if (t[0] == "output") {
      if (t.size() != 2) throw ParseError(line.number, "malformed output line");
      output = parse_variable(line, t[1], n, m);
      continue;
    }
    const auto kind = parse_gate(t[0]);
    if (!kind) throw ParseError(line.number, "unknown gate '" + t[0] + "'");
    const std::size_t arity = gate_arity(*kind);
    if (t.size() != arity + 3 || t[arity + 1] != "=") {
      throw ParseError(line.number, "expected '" + t[0] + " <var>... = <var>'");
    }
    const auto a = parse_variable(line, t[1], n, m);
    const auto b = arity == 2 ? parse_variable(line, t[2], n, m) : a;
    constraints.push_back({*kind, a, b, parse_variable(line, t[arity + 2], n, m)});
  }
  return TsvndCircuit::from_constraints(n, m, std::move(constraints), output);
}

std::string format_tsvnd(const TsvndCircuit& circuit) {
  std::ostringstream out;
  const unsigned n = circuit.det_arity();
  if (!circuit.is_constraint_form()) {
    out << "n=" << n << " m=" << circuit.nondet_arity() << '\n';
    write_program_body(out, circuit.program());
    return out.str();
  }
  const auto& body = circuit.constraints();
  out << "n=" << n << " m=" << body.y_count << '\n';
  for (const auto& c : body.constraints) {
    out << gate_name(c.kind) << ' ' << circuit.variable_name(c.a);
    if (c.kind != GateKind::not_) out << ' ' << circuit.variable_name(c.b);
    out << " = " << circuit.variable_name(c.out) << '\n';
  }
  if (body.output != n) out << "output " << circuit.variable_name(body.output) << '\n';
  return out.str();
}

NdCircuit parse_nd_circuit(std::string_view text) {
  const auto lines = nonempty(text);
  const auto header = parse_header(lines[0]);
  const auto n = parse_arity(lines[0], header);
  const auto m = parse_number(lines[0], require_field(lines[0], header, "m"));
  const auto& mode = require_field(lines[0], header, "mode");
  if (mode != "nd" && mode != "cond") throw ParseError(lines[0].number, "mode must be nd or cond");
  auto program = parse_program_body(lines, 1, static_cast<unsigned>(n + m));
  return NdCircuit{mode == "nd" ? NdCircuit::Mode::nd : NdCircuit::Mode::cond, n, m,
                   std::move(program)};
}

std::string format_nd_circuit(const NdCircuit& circuit) {
  std::ostringstream out;
  out << "n=" << circuit.n << " m=" << circuit.m
      << " mode=" << (circuit.mode == NdCircuit::Mode::nd ? "nd" : "cond") << '\n';
  write_program_body(out, circuit.program);
  return out.str();
}

// ---------------------------------------------------------------- witnesses

Witness parse_witness(std::string_view text) {
  const auto lines = nonempty(text);
  const auto header = parse_header(lines[0]);
  if (header.count("") == 0 || header.at("") != "witness") {
    throw ParseError(lines[0].number, "expected a 'witness' header");
  }
  const auto& mode = require_field(lines[0], header, "mode");
  if (mode != "total" && mode != "partial") {
    throw ParseError(lines[0].number, "mode must be total or partial");
  }
  Witness w(mode == "total" ? Witness::Mode::total : Witness::Mode::partial);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& line = lines[k];
    if (line.tokens.size() != 2 || line.tokens[1].size() != 1) {
      throw ParseError(line.number, "expected '<column> <0|1|*>'");
    }
    Column c;
    try {
      c = Column::parse(line.tokens[0]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line.number, e.what());
    }
    const char v = line.tokens[1][0];
    if (v != '0' && v != '1' && v != '*') throw ParseError(line.number, "value must be 0, 1 or *");
    try {
      w.set(c, v == '*' ? Tri::undef : to_tri(v == '1'));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line.number, e.what());
    }
  }
  return w;
}

std::string format_witness(const Witness& witness) {
  std::ostringstream out;
  out << "witness mode=" << (witness.mode() == Witness::Mode::total ? "total" : "partial")
      << '\n';
  for (const auto& [col, v] : witness.entries()) out << col.str() << ' ' << tri_char(v) << '\n';
  return out.str();
}

}  // namespace polyclone
