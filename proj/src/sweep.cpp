#include "polyclone/sweep.hpp"

#include <sstream>

#include "polyclone/circuits.hpp"
#include "polyclone/covers.hpp"
#include "polyclone/synthesis.hpp"
#include "polyclone/text_io.hpp"
#include "polyclone/tsvnd.hpp"

namespace polyclone {

std::string_view check_name(SweepCheck check) {
  switch (check) {
    case SweepCheck::s3: return "s3";
    case SweepCheck::s4: return "s4";
    case SweepCheck::s5: return "s5";
  }
  return "?";
}

std::set<SweepCheck> parse_checks(std::string_view list) {
  std::set<SweepCheck> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    auto end = list.find(',', pos);
    if (end == std::string_view::npos) end = list.size();
    const auto item = list.substr(pos, end - pos);
    if (item == "s3") {
      out.insert(SweepCheck::s3);
    } else if (item == "s4") {
      out.insert(SweepCheck::s4);
    } else if (item == "s5") {
      out.insert(SweepCheck::s5);
    } else {
      throw std::invalid_argument("unknown check '" + std::string(item) + "'");
    }
    pos = end + 1;
  }
  return out;
}

std::string_view status_name(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::not_applicable: return "n/a";
  }
  return "?";
}

std::size_t SweepReport::count(SweepCheck check, CheckStatus status) const {
  std::size_t k = 0;
  for (const auto& r : records) {
    auto it = r.checks.find(check);
    if (it != r.checks.end() && it->second.status == status) ++k;
  }
  return k;
}

bool SweepReport::all_passed() const {
  for (auto c : checks) {
    if (count(c, CheckStatus::fail) != 0) return false;
  }
  return true;
}

namespace {

CheckOutcome pass() { return {CheckStatus::pass, {}, {}}; }
CheckOutcome fail(std::string detail, std::string artifact = {}) {
  return {CheckStatus::fail, std::move(detail), std::move(artifact)};
}

CheckOutcome run_s3(const TruthTable& table, SweepRecord& record) {
  if (record.detected.empty()) {
    return {CheckStatus::not_applicable, "no non-trivial polymorphism among and, or, aff, maj", {}};
  }
  const auto bound = synthesis_size_bound(table.arity());
  for (auto op : record.detected) {
    const auto program = synthesize_from_polymorphism(table, op);
    record.synthesized_sizes[op] = program.size();
    if (auto row = first_disagreement(program, table)) {
      return fail(std::string(op_name(op)) + ": wrong output on row " + std::to_string(*row),
                  format_program(program));
    }
    if (program.size() > bound) {
      return fail(std::string(op_name(op)) + ": " + std::to_string(program.size()) +
                      " gates exceeds " + std::to_string(bound),
                  format_program(program));
    }
  }
  return pass();
}

CheckOutcome run_s4(const TruthTable& table, const Program& optimal, SweepRecord& record) {
  auto cover = cover_from_circuit(optimal, table);
  auto verdict = verify_cover(cover);
  if (!verdict.valid) {
    return fail("ppol cover of the optimal circuit misses a witness",
                format_witness(*verdict.counterexample));
  }
  record.ppol_cover_size = cover.size();
  cover.flavor = Flavor::pol;
  verdict = verify_cover(cover);
  if (!verdict.valid) {
    return fail("pol cover of the optimal circuit misses a witness",
                format_witness(*verdict.counterexample));
  }
  record.pol_cover_size = cover.size();
  cover.flavor = Flavor::ppol;
  const auto rebuilt = circuit_from_cover(cover);
  if (!computes(rebuilt, table)) {
    return fail("circuit rebuilt from the cover computes a different function",
                format_program(rebuilt));
  }
  if (rebuilt.size() != optimal.size()) {
    return fail("rebuilt circuit has " + std::to_string(rebuilt.size()) + " gates, optimal has " +
                    std::to_string(optimal.size()),
                format_program(rebuilt));
  }
  return pass();
}

CheckOutcome run_s5(const TruthTable& table, const Program& optimal, SweepRecord& record) {
  auto cover = cover_from_circuit(optimal, table);
  cover.flavor = Flavor::pol;
  const auto circuit = tsvnd_from_pol_cover(cover);
  const auto report = validate_tsvnd(circuit, table);
  if (!report.total || !report.single_valued || !report.computes_f) {
    std::ostringstream why;
    why << "TSVND circuit is not valid:";
    if (!report.total) why << " quits on " << report.quitting_inputs.size() << " inputs";
    if (!report.single_valued) why << " ambiguous on " << report.ambiguous_inputs.size();
    if (!report.computes_f) why << " wrong on " << report.wrong_inputs.size();
    return fail(why.str(), format_tsvnd(circuit));
  }
  const auto compiled = compile_to_program(circuit);
  record.tsvnd_size = compiled.size();
  const auto bound = tsvnd_size_bound(cover.size());
  if (compiled.size() > bound) {
    return fail("TSVND size " + std::to_string(compiled.size()) + " exceeds " +
                    std::to_string(bound),
                format_tsvnd(compiled));
  }
  const auto back = pol_cover_from_tsvnd(circuit, table);
  if (back.size() != compiled.size()) {
    return fail("extracted cover has " + std::to_string(back.size()) + " gates, circuit has " +
                    std::to_string(compiled.size()),
                format_cover(back));
  }
  const auto verdict = verify_cover(back);
  if (!verdict.valid) {
    return fail("cover extracted from the TSVND circuit misses a witness",
                format_witness(*verdict.counterexample));
  }
  return pass();
}

template <class F>
CheckOutcome guarded(F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return fail(e.what());
  }
}

}  // namespace

SweepRecord sweep_function(const TruthTable& table, const std::set<SweepCheck>& checks) {
  SweepRecord record;
  record.id = table.bits();
  record.detected = detect_nontrivial_polymorphisms(table);

  if (checks.count(SweepCheck::s3)) {
    record.checks[SweepCheck::s3] = guarded([&] { return run_s3(table, record); });
  }
  if (!checks.count(SweepCheck::s4) && !checks.count(SweepCheck::s5)) return record;

  const auto optimal = optimal_circuit(table, kSweepMaxCircuitSize);
  if (!optimal) {
    for (auto c : {SweepCheck::s4, SweepCheck::s5}) {
      if (checks.count(c)) record.checks[c] = fail("no circuit within the search limit");
    }
    return record;
  }
  record.optimal_size = optimal->size();
  if (checks.count(SweepCheck::s4)) {
    record.checks[SweepCheck::s4] = guarded([&] { return run_s4(table, *optimal, record); });
  }
  if (checks.count(SweepCheck::s5)) {
    record.checks[SweepCheck::s5] = guarded([&] { return run_s5(table, *optimal, record); });
  }
  return record;
}

SweepReport run_theorem_sweep(unsigned n, const std::set<SweepCheck>& checks) {
  if (n < 1) throw InfeasibleSweep("n must be at least 1");
  const bool exact = checks.count(SweepCheck::s4) || checks.count(SweepCheck::s5);
  if (exact && n > 3) throw InfeasibleSweep("s4 and s5 need n <= 3");
  if (n > 4) throw InfeasibleSweep("sweeps are limited to n <= 4");

  SweepReport report;
  report.n = n;
  report.checks = checks;
  const std::uint64_t count = std::uint64_t{1} << (std::uint64_t{1} << n);
  report.records.reserve(count);
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    report.records.push_back(sweep_function(TruthTable(n, Column(bits, n)), checks));
  }
  return report;
}

nlohmann::json to_json(const SweepRecord& record) {
  nlohmann::json j;
  j["function"] = record.id;
  auto& detected = j["detected"] = nlohmann::json::array();
  for (auto op : record.detected) detected.push_back(op_name(op));
  auto opt = [](const std::optional<std::size_t>& v) -> nlohmann::json {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  j["optimal_size"] = opt(record.optimal_size);
  auto& synth = j["synthesized_sizes"] = nlohmann::json::object();
  for (const auto& [op, size] : record.synthesized_sizes) synth[std::string(op_name(op))] = size;
  j["pol_cover_size"] = opt(record.pol_cover_size);
  j["ppol_cover_size"] = opt(record.ppol_cover_size);
  j["tsvnd_size"] = opt(record.tsvnd_size);
  auto& checks = j["checks"] = nlohmann::json::object();
  for (const auto& [check, outcome] : record.checks) {
    nlohmann::json c;
    c["status"] = status_name(outcome.status);
    if (!outcome.detail.empty()) c["detail"] = outcome.detail;
    if (!outcome.artifact.empty()) c["artifact"] = outcome.artifact;
    checks[std::string(check_name(check))] = c;
  }
  return j;
}

nlohmann::json to_json(const SweepReport& report) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["n"] = report.n;
  auto& checks = j["checks"] = nlohmann::json::array();
  for (auto c : report.checks) checks.push_back(check_name(c));
  auto& summary = j["summary"] = nlohmann::json::object();
  for (auto c : report.checks) {
    summary[std::string(check_name(c))] = {
        {"pass", report.count(c, CheckStatus::pass)},
        {"fail", report.count(c, CheckStatus::fail)},
        {"n/a", report.count(c, CheckStatus::not_applicable)},
    };
  }
  auto& records = j["records"] = nlohmann::json::array();
  for (const auto& r : report.records) records.push_back(to_json(r));
  return j;
}

}  // namespace polyclone
