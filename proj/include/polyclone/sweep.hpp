#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "polyclone/core.hpp"

namespace polyclone {

enum class SweepCheck { s3, s4, s5 };

std::string_view check_name(SweepCheck check);
/// Parses a comma-separated list such as "s3,s5".
std::set<SweepCheck> parse_checks(std::string_view list);

enum class CheckStatus { pass, fail, not_applicable };

std::string_view status_name(CheckStatus status);

struct CheckOutcome {
  CheckStatus status = CheckStatus::not_applicable;
  std::string detail;
  /// Text-format artifact reproducing a failure (witness, circuit, or cover).
  std::string artifact;
};

struct SweepRecord {
  std::string id;  // output bits, row 0 first
  std::vector<NamedOp> detected;
  std::optional<std::size_t> optimal_size;
  std::map<NamedOp, std::size_t> synthesized_sizes;
  std::optional<std::size_t> pol_cover_size;
  std::optional<std::size_t> ppol_cover_size;
  std::optional<std::size_t> tsvnd_size;
  std::map<SweepCheck, CheckOutcome> checks;
};

struct SweepReport {
  unsigned n = 0;
  std::set<SweepCheck> checks;
  std::vector<SweepRecord> records;  // ordered by packed output bits

  std::size_t count(SweepCheck check, CheckStatus status) const;
  bool all_passed() const;
};

class InfeasibleSweep : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kReportSchemaVersion = 1;
/// Size limit handed to the exact search during s4/s5.
inline constexpr std::size_t kSweepMaxCircuitSize = 16;

/// Runs the requested checks over every n-ary function. s4 and s5 need
/// n <= 3, s3 alone allows n <= 4; throws InfeasibleSweep otherwise.
SweepReport run_theorem_sweep(unsigned n, const std::set<SweepCheck>& checks);

/// Runs the checks on a single function.
SweepRecord sweep_function(const TruthTable& table, const std::set<SweepCheck>& checks);

nlohmann::json to_json(const SweepRecord& record);
nlohmann::json to_json(const SweepReport& report);

}  // namespace polyclone
