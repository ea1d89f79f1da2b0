#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <unistd.h>

#include "cli.hpp"
#include "polyclone/sweep.hpp"
#include "polyclone/text_io.hpp"

using namespace polyclone;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Scratch {
public:
  Scratch() : dir_(fs::temp_directory_path() / ("polyclone_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) const {
    const auto path = (dir_ / name).string();
    std::ofstream(path) << text;
    return path;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

private:
  fs::path dir_;
};

}  // namespace

TEST_CASE("classify") {
  auto r = run({"classify", "--bits", "0001"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "function 0001\ntrivial general\npolymorphisms and\n");
  r = run({"classify", "--bits", "0110", "--json"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["polymorphisms"] == nlohmann::json::array({"aff"}));
  CHECK(j["schema_version"] == kReportSchemaVersion);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"classify"}).code == cli::kUsage);
  CHECK(run({"classify", "--bits", "001"}).code == cli::kUsage);
  CHECK(run({"classify", "--bits", "0001", "--n", "3"}).code == cli::kUsage);
  CHECK(run({"synth", "--bits", "0001", "--op", "xor"}).code == cli::kUsage);
  CHECK(run({"sweep", "--n", "4", "--checks", "s4"}).code == cli::kUsage);
  CHECK(run({"verify-circuit", "--bits", "0001", "--circuit", "/nonexistent"}).code ==
        cli::kUsage);
  Scratch s;
  const auto bad = s.write("bad.circ", "n=2\ng3 = XOR g1 g2\n");
  const auto r = run({"verify-circuit", "--bits", "0001", "--circuit", bad});
  CHECK(r.code == cli::kUsage);
  CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("synth matches the library") {
  const auto t = TruthTable::from_bits("01111111");
  auto r = run({"synth", "--bits", t.bits(), "--op", "or"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == format_program(synthesize_from_polymorphism(t, NamedOp::or_)));
  r = run({"synth", "--bits", "0110", "--op", "and"});
  CHECK(r.code == cli::kInvalid);
  r = run({"synth", "--bits", "0110", "--base-bits", "0111", "--op", "or"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == format_program(synthesize_patched(TruthTable::from_bits("0110"),
                                                   TruthTable::from_bits("0111"), NamedOp::or_,
                                                   {3})));
}

TEST_CASE("optimal and verify-circuit") {
  const auto t = TruthTable::from_bits("0110");
  auto r = run({"optimal", "--bits", "0110"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == format_program(*optimal_circuit(t, kSweepMaxCircuitSize)));
  CHECK(run({"optimal", "--bits", "0110", "--max-size", "3"}).code == cli::kInvalid);

  Scratch s;
  const auto circ = s.write("x.circ", r.out);
  CHECK(run({"verify-circuit", "--bits", "0110", "--circuit", circ}).code == cli::kOk);
  r = run({"verify-circuit", "--bits", "0111", "--circuit", circ});
  CHECK(r.code == cli::kInvalid);
  CHECK(r.out.find("input 11") != std::string::npos);
}

TEST_CASE("witnesses") {
  const auto r = run({"witnesses", "--bits", "0001", "--op", "maj", "--json"});
  CHECK(r.code == cli::kOk);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["selections"].size() == 1);
  CHECK(j["selections"][0]["rows"] == nlohmann::json::array({"010", "100", "111"}));
  CHECK(j["selections"][0]["image"] == "110");
}

TEST_CASE("cover round trip through files") {
  Scratch s;
  const auto t = TruthTable::from_bits("0110");
  const auto program = *optimal_circuit(t, 6);
  const auto circ = s.write("x.circ", format_program(program));

  auto r = run({"cover-from-circuit", "--bits", "0110", "--circuit", circ});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out == format_cover(cover_from_circuit(program, t)));
  const auto cover = s.write("x.cover", r.out);
  CHECK(run({"cover-check", "--cover", cover}).code == cli::kOk);
  r = run({"circuit-from-cover", "--cover", cover});
  CHECK(r.code == cli::kOk);
  CHECK(parse_program(r.out).size() == program.size());

  // Dropping a gate leaves an uncovered witness that feeds back in.
  auto broken = parse_cover(format_cover(cover_from_circuit(program, t)));
  broken.gates.pop_back();
  const auto bad = s.write("bad.cover", format_cover(broken));
  r = run({"cover-check", "--cover", bad});
  CHECK(r.code == cli::kInvalid);
  const auto w = parse_witness(r.out);
  CHECK(is_partial_anti_polymorphism(w, t));
  for (const auto& g : broken.gates) CHECK_FALSE(gate_covers(g, w, broken.flavor));
}

TEST_CASE("tsvnd commands") {
  Scratch s;
  const auto t = TruthTable::from_bits("0110");
  auto cover = cover_from_circuit(*optimal_circuit(t, 6), t);
  cover.flavor = Flavor::pol;
  const auto cover_file = s.write("x.cover", format_cover(cover));

  auto r = run({"tsvnd-build", "--cover", cover_file});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out == format_tsvnd(tsvnd_from_pol_cover(cover)));
  const auto tsvnd = s.write("x.tsvnd", r.out);
  CHECK(run({"tsvnd-check", "--tsvnd", tsvnd, "--bits", "0110"}).code == cli::kOk);
  CHECK(run({"tsvnd-check", "--tsvnd", tsvnd, "--bits", "0111"}).code == cli::kInvalid);
  r = run({"tsvnd-check", "--tsvnd", tsvnd, "--json"});
  CHECK(nlohmann::json::parse(r.out)["function"] == "0110");

  r = run({"tsvnd-to-cover", "--tsvnd", tsvnd, "--bits", "0110"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == format_cover(pol_cover_from_tsvnd(tsvnd_from_pol_cover(cover), t)));

  const auto nd = s.path("x.nd");
  const auto cond = s.path("x.cond");
  CHECK(run({"nd-split", "--tsvnd", tsvnd, "--nd-out", nd, "--cond-out", cond}).code ==
        cli::kOk);
  r = run({"nd-merge", "--nd", nd, "--cond", cond, "--bits", "0110"});
  CHECK(r.code == cli::kOk);
  const auto merged = s.write("m.tsvnd", r.out);
  CHECK(run({"tsvnd-check", "--tsvnd", merged, "--bits", "0110"}).code == cli::kOk);
  CHECK(run({"nd-merge", "--nd", cond, "--cond", nd}).code == cli::kInvalid);
}

TEST_CASE("sweep") {
  auto r = run({"sweep", "--n", "2", "--checks", "s3,s4,s5", "--json"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == to_json(run_theorem_sweep(2, {SweepCheck::s3, SweepCheck::s4, SweepCheck::s5}))
                         .dump(2) +
                     "\n");
  r = run({"sweep", "--n", "2", "--checks", "s4"});
  CHECK(r.out.find("s4: 16 pass, 0 fail, 0 n/a") != std::string::npos);
}
