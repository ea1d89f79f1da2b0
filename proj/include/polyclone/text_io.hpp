#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "polyclone/circuits.hpp"
#include "polyclone/core.hpp"
#include "polyclone/covers.hpp"
#include "polyclone/synthesis.hpp"
#include "polyclone/tsvnd.hpp"

// Plain-text formats. Blank lines and lines starting with '#' are ignored.
//
//   truth table   n=2            multi-output: one bit line per output
//                 0001
//
//   circuit       n=2
//                 g3 = AND g1 g2
//                 output g3       (or: outputs g3 g4)
//
//   cover         n=2 flavor=ppol table=0001
//                 AND 0011 0101 0001
//                 NOT 0011 1100
//
//   TSVND         n=2 m=0                      constraint form
//                 AND x1 x2 = x3
//                 [output x1]
//
//                 n=2 m=1                      program form, n + m inputs
//                 g4 = AND g1 g2
//                 outputs g4 g3
//
//   ND circuit    n=2 m=1 mode=nd|cond, then circuit lines
//
//   witness       witness mode=total|partial
//                 0011 1
//                 0001 *

namespace polyclone {

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

TruthTable parse_truth_table(std::string_view text);
std::string format_truth_table(const TruthTable& table);

MultiTable parse_multi_table(std::string_view text);
std::string format_multi_table(const MultiTable& table);

Program parse_program(std::string_view text);
std::string format_program(const Program& program);

Cover parse_cover(std::string_view text);
std::string format_cover(const Cover& cover);

TsvndCircuit parse_tsvnd(std::string_view text);
std::string format_tsvnd(const TsvndCircuit& circuit);

NdCircuit parse_nd_circuit(std::string_view text);
std::string format_nd_circuit(const NdCircuit& circuit);

Witness parse_witness(std::string_view text);
std::string format_witness(const Witness& witness);

}  // namespace polyclone
