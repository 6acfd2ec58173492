#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <cstdio>
#include <string>

using testsupport::read_file;
using testsupport::run_command;

namespace {

const std::string cli = SCFO_CLI;
const std::string golden_dir = SCFO_GOLDEN_DIR;
const std::string protocol_dir = SCFO_PROTOCOL_DIR;

std::string golden(const std::string& name) { return read_file(golden_dir + "/" + name); }

}  // namespace

TEST_CASE("verify: golden output and exit codes") {
  const auto ok = run_command(cli + " verify " + protocol_dir + "/protocol1.scfo");
  CHECK(ok.status == 0);
  CHECK(ok.output == golden("cli_verify_protocol1.txt"));

  const auto porcelain = run_command(cli + " verify protocol3 --porcelain");
  CHECK(porcelain.status == 0);
  CHECK(porcelain.output == golden("cli_verify_protocol3_porcelain.txt"));

  // wrong function: report printed, exit 1
  const auto bad = run_command(cli + " verify protocol1 --function eq3");
  CHECK(bad.status == 1);
  CHECK(bad.output.find("result: fail") != std::string::npos);

  const auto unknown = run_command(cli + " verify no-such-protocol");
  CHECK(unknown.status == 2);
}

TEST_CASE("table: byte-identical to the golden tables") {
  for (const char* name : {"protocol1", "protocol2", "protocol3"}) {
    const auto result = run_command(cli + " table " + name);
    CHECK(result.status == 0);
    CHECK(result.output == golden(std::string("table_") + name + ".txt"));
  }
  // the same protocol loaded from a document file
  const auto from_file = run_command(cli + " table " + protocol_dir + "/protocol2.scfo");
  CHECK(from_file.status == 0);
  CHECK(from_file.output == golden("table_protocol2.txt"));
}

TEST_CASE("simulate: seeded run is reproducible") {
  const std::string cmd = cli + " simulate five-card-trick --input 11 --seed 7 --reveal";
  const auto a = run_command(cmd);
  CHECK(a.status == 0);
  CHECK(a.output == golden("cli_simulate_five.txt"));
  CHECK(run_command(cmd).output == a.output);

  // without --reveal the hidden state stays hidden
  const auto masked = run_command(cli + " simulate five-card-trick --input 11 --seed 7");
  CHECK(masked.output.find("hidden") == std::string::npos);
  CHECK(masked.output.find("shift") == std::string::npos);
  CHECK(masked.output.find("output: 1") != std::string::npos);

  // --seed defaults to 0
  CHECK(run_command(cli + " simulate xor2 --input 01").output ==
        run_command(cli + " simulate xor2 --input 01 --seed 0").output);

  const auto short_input = run_command(cli + " simulate xor2 --input 011");
  CHECK(short_input.status == 2);
}

TEST_CASE("dist: exact rational distributions") {
  const auto human = run_command(cli + " dist five-card-trick --input 10");
  CHECK(human.status == 0);
  CHECK(human.output == golden("cli_dist_five_10.txt"));

  const auto porcelain = run_command(cli + " dist five-card-trick --input 11 --porcelain");
  CHECK(porcelain.status == 0);
  CHECK(porcelain.output == golden("cli_dist_five_porcelain.txt"));

  const auto degenerate = run_command(cli + " dist xor2 --input 00 --porcelain");
  CHECK(degenerate.output.find("p=1/2") != std::string::npos);
}

TEST_CASE("search: golden output, determinism, exit codes") {
  const auto found = run_command(cli + " search --function xor2 --cards 4");
  CHECK(found.status == 0);
  CHECK(found.output == golden("cli_search_xor2.txt"));
  CHECK(run_command(cli + " search --function xor2 --cards 4 --jobs 3").output == found.output);

  const auto porcelain =
      run_command(cli + " search --function and2 --cards 5 --deck free --constants 1 --porcelain");
  CHECK(porcelain.status == 0);
  CHECK(porcelain.output == golden("cli_search_and2_porcelain.txt"));

  // conjunction is infeasible in four committed cards: empty search exits 1
  const auto none = run_command(cli + " search --function and2 --cards 4");
  CHECK(none.status == 1);
  CHECK(none.output.find("found: 0") != std::string::npos);

  CHECK(run_command(cli + " search --function nope --cards 4").status == 2);
  CHECK(run_command(cli + " search --function xor2 --cards 0").status == 2);
  CHECK(run_command(cli + " search --function xor2 --cards 4 --deck sideways").status == 2);
  // guard refusal: the raw space is too large
  CHECK(run_command(cli + " search --function paper-f2 --cards 12").status == 2);
}

TEST_CASE("classify: golden summary and report file") {
  const std::string report_path = "/tmp/scfo_test_classify_n2.txt";
  std::remove(report_path.c_str());
  const auto result =
      run_command(cli + " classify --vars 2 --max-cards 4 --out " + report_path);
  CHECK(result.status == 0);
  CHECK(result.output == golden("cli_classify_n2.txt"));
  CHECK(read_file(report_path) == golden("cli_classify_n2_report.txt"));
  std::remove(report_path.c_str());

  CHECK(run_command(cli + " classify --vars 5 --max-cards 4 --out /tmp/x.txt").status == 2);
}

TEST_CASE("table without any function is a usage error") {
  const std::string path = "/tmp/scfo_test_nofunc.scfo";
  std::FILE* f = std::fopen(path.c_str(), "w");
  REQUIRE(f);
  std::fputs("protocol p\nvars x y\ntemplate x !x y !y\noutput 0: HCHC\noutput 1: HHCC\n", f);
  std::fclose(f);
  CHECK(run_command(cli + " table " + path).status == 2);
  // verify can still take the function from the flag
  CHECK(run_command(cli + " verify " + path + " --function xor2").status == 0);
  std::remove(path.c_str());
}

TEST_CASE("porcelain output is key=value lines everywhere") {
  const auto table = run_command(cli + " table protocol1 --porcelain");
  CHECK(table.status == 0);
  CHECK(table.output.find("row assignment=000 value=0 word=CCHCCHHH\n") != std::string::npos);

  const auto simulate =
      run_command(cli + " simulate five-card-trick --input 11 --seed 7 --reveal --porcelain");
  CHECK(simulate.output.find("assignment=11\n") != std::string::npos);
  CHECK(simulate.output.find("shift=") != std::string::npos);
  CHECK(simulate.output.find("output=1\n") != std::string::npos);

  const std::string report_path = "/tmp/scfo_test_classify_porcelain.txt";
  const auto classify = run_command(cli + " classify --vars 1 --max-cards 2 --out " +
                                    report_path + " --porcelain");
  CHECK(classify.status == 0);
  CHECK(classify.output.find("vars=1\n") != std::string::npos);
  CHECK(classify.output.find("functions=4\n") != std::string::npos);
  std::remove(report_path.c_str());
}

TEST_CASE("parse errors exit with code 2") {
  const std::string bad_path = "/tmp/scfo_test_bad.scfo";
  std::FILE* f = std::fopen(bad_path.c_str(), "w");
  REQUIRE(f);
  std::fputs("protocol p\nvars x\ntemplate x !q\noutput 0: CH\n", f);
  std::fclose(f);
  const auto result = run_command(cli + " verify " + bad_path + " --function 3");
  CHECK(result.status == 2);
  std::remove(bad_path.c_str());
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_command(cli).status == 2);
  CHECK(run_command(cli + " frobnicate").status == 2);
  CHECK(run_command(cli + " simulate xor2").status == 2);  // missing --input
  CHECK(run_command(cli + " --help").status == 0);
}
