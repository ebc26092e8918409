#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "polarforge/errors.hpp"
#include "polarforge/io.hpp"

using namespace polarforge;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string temp_path(const char* tag) {
  static int counter = 0;
  return "/tmp/polarforge_io_test_" + std::to_string(getpid()) + "_" + tag + "_" +
         std::to_string(counter++);
}

RunResult run_cli(const std::string& args) {
  const std::string out_file = temp_path("stdout");
  const std::string cmd =
      std::string(POLARFORGE_CLI_PATH) + " " + args + " >" + out_file + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = read_text_file(out_file);
  std::remove(out_file.c_str());
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("format_double is deterministic 17-significant-digit %.17g") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(3.0) == "3");
  CHECK(format_double(-2.25) == "-2.25");
  CHECK(format_double(1e300) == "1.0000000000000001e+300");
  CHECK(format_double(0.0) == "0");
  CHECK_THROWS_AS(format_double(std::nan("")), io_error);
  CHECK_THROWS_AS(format_double(1.0 / 0.0), io_error);
}

TEST_CASE("JsonWriter emits compact insertion-ordered bytes") {
  JsonWriter w;
  w.begin_object();
  w.key("a").value(1);
  w.key("b").begin_array().value(true).value("x\ny\"z\\").end_array();
  w.key("c").value(0.5);
  w.key("d").value(std::uint64_t{16294208416658592578ull});
  w.end_object();
  CHECK(w.take() ==
        "{\"a\":1,\"b\":[true,\"x\\ny\\\"z\\\\\"],\"c\":0.5,\"d\":16294208416658592578}");

  JsonWriter ctrl;
  ctrl.begin_object();
  ctrl.key("k").value(std::string_view("a\x01" "b", 3));
  ctrl.end_object();
  CHECK(ctrl.take() == "{\"k\":\"a\\u0001b\"}");

  JsonWriter unbalanced;
  unbalanced.begin_object();
  CHECK_THROWS_AS(unbalanced.take(), io_error);
}

TEST_CASE("CsvWriter enforces the header width") {
  CsvWriter csv({"a", "b"});
  csv.row({"1", "2"});
  csv.row({"x", "y"});
  CHECK(csv.str() == "a,b\n1,2\nx,y\n");
  CsvWriter bad({"a", "b"});
  CHECK_THROWS_AS(bad.row({"only-one"}), io_error);
}

TEST_CASE("frozen-set files render and parse as inverses") {
  CHECK(render_frozen_set({0, 2, 5}) == "0\n2\n5\n");
  CHECK(render_frozen_set({}) == "");
  CHECK(parse_frozen_set("0\n2\n5\n", 3) == std::vector<std::uint32_t>{0, 2, 5});
  CHECK(parse_frozen_set("0\r\n3\r\n", 3) == std::vector<std::uint32_t>{0, 3});
  CHECK(parse_frozen_set("\n\n7\n\n", 3) == std::vector<std::uint32_t>{7});
  CHECK(parse_frozen_set("", 3).empty());

  // Errors carry the offending line number.
  try {
    parse_frozen_set("5\n2\n", 3);
    FAIL("descending list accepted");
  } catch (const validation_error& e) {
    CHECK(contains(e.what(), "line 2"));
  }
  try {
    parse_frozen_set("0\nabc\n", 3);
    FAIL("non-digit accepted");
  } catch (const validation_error& e) {
    CHECK(contains(e.what(), "line 2"));
  }
  CHECK_THROWS_AS(parse_frozen_set("8\n", 3), validation_error);   // out of range for n=3
  CHECK_THROWS_AS(parse_frozen_set("4\n4\n", 3), validation_error);  // not strictly ascending
}

TEST_CASE("text-file round trip") {
  const std::string path = temp_path("roundtrip");
  write_text_file(path, "hello\nworld\n");
  CHECK(read_text_file(path) == "hello\nworld\n");
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_text_file("/tmp/polarforge_definitely_missing_file_42"), io_error);
}

TEST_CASE("cli: help and argument validation exit codes") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("design --help").exit_code == 0);
  CHECK(run_cli("design --n 5 --rate 2 --sigma 1.0").exit_code == 2);   // rate out of range
  CHECK(run_cli("design --n 5 --rate 0.5 --sigma 1.0 --bogus-flag").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);                                    // missing subcommand
  CHECK(run_cli("ga --llr -1 --bits 01").exit_code == 2);               // invalid base LLR
  CHECK(run_cli("simulate --channel bsc --param 0.08 --n 4 --frozen auto --rate 0.5 --trials 100")
            .exit_code == 2);  // no auto design for BSC
  CHECK(run_cli("simulate --channel awgn --param 0.9 --n 4 --frozen auto --trials 100")
            .exit_code == 2);  // auto requires --rate
}

TEST_CASE("cli: verify suites report and exit honestly") {
  const RunResult fixed = run_cli("verify --suite fixed-point");
  CHECK(fixed.exit_code == 0);
  CHECK(contains(fixed.out, "\"schema\":\"polarforge/v1\""));
  CHECK(contains(fixed.out, "\"failed\":0"));
  CHECK(contains(fixed.out, "\"pass\":true"));

  // Two suites contain checks that state arithmetic facts the pinned targets
  // disagree with; they must fail loudly, not silently.
  const RunResult series = run_cli("verify --suite series");
  CHECK(series.exit_code == 3);
  CHECK(contains(series.out, "\"name\":\"fib-series-60-k2\""));
  CHECK(contains(series.out, "\"pass\":false"));

  const RunResult ex6 = run_cli("verify --suite example6");
  CHECK(ex6.exit_code == 3);
  CHECK(contains(ex6.out, "\"name\":\"provenance-order2-12\""));
  CHECK(contains(ex6.out, "\"pass\":false"));

  CHECK(run_cli("verify --suite no-such-suite").exit_code == 2);
}

TEST_CASE("cli: attractor summary for n=6") {
  const RunResult r = run_cli("attractor --n 6");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"seed_count\":21"));
  CHECK(contains(r.out, "\"closure_count\":36"));
}

TEST_CASE("cli: order check emits a witness chain") {
  const RunResult yes = run_cli("order check --less 0110 --more 1001");
  CHECK(yes.exit_code == 0);
  CHECK(contains(yes.out, "\"dominates\":true"));
  CHECK(contains(yes.out, "\"order\":3"));

  const RunResult no = run_cli("order check --less 1001 --more 0110");
  CHECK(no.exit_code == 0);
  CHECK(contains(no.out, "\"dominates\":false"));

  const RunResult capped = run_cli("order check --less 0110 --more 1001 --max-order 2");
  CHECK(capped.exit_code == 0);
  CHECK(contains(capped.out, "\"dominates\":false"));
}

TEST_CASE("cli: ga evolve mode reports one index") {
  const RunResult r = run_cli("ga --llr 2.0 --bits 101");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"mode\":\"evolve\""));
  CHECK(contains(r.out, "\"index_bits\":\"101\""));
  CHECK(contains(r.out, "\"clamped\":false"));
}

TEST_CASE("cli: ga profile CSV has one row per index") {
  const std::string csv_path = temp_path("gacsv");
  const RunResult r = run_cli("ga --llr 2.0 --n 3 --csv " + csv_path);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"mode\":\"profile\""));
  const std::string csv = read_text_file(csv_path);
  std::remove(csv_path.c_str());
  CHECK(csv.rfind("index,index_bits,value,error_prob\n", 0) == 0);
  std::size_t lines = 0;
  for (char c : csv) lines += (c == '\n');
  CHECK(lines == 9);  // header + 8 rows
  CHECK(contains(csv, "111"));
}

TEST_CASE("cli: simulate output is byte-identical across runs and --out copies stdout") {
  const std::string out1 = temp_path("sim1");
  const std::string out2 = temp_path("sim2");
  const std::string args = "simulate --channel bec --param 0.5 --n 3 --trials 2000 --blocks 4";
  const RunResult a = run_cli(args + " --out " + out1);
  const RunResult b = run_cli(args + " --out " + out2);
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(read_text_file(out1) == a.out);
  CHECK(read_text_file(out2) == a.out);
  std::remove(out1.c_str());
  std::remove(out2.c_str());
  CHECK(contains(a.out, "\"mode\":\"genie\""));
  CHECK(contains(a.out, "\"seed\":24301"));  // default seed 0x5EED echoed in decimal

  // Hex seed parsing changes the stream.
  const RunResult hex = run_cli(args + " --seed 0x1234");
  CHECK(hex.exit_code == 0);
  CHECK(contains(hex.out, "\"seed\":4660"));
  CHECK(hex.out != a.out);
}

TEST_CASE("cli: design --emit-frozen round-trips into simulate --frozen") {
  const std::string frozen_path = temp_path("frozen");
  const RunResult design =
      run_cli("design --n 4 --rate 0.5 --sigma 0.9 --emit-frozen " + frozen_path);
  CHECK(design.exit_code == 0);
  CHECK(contains(design.out, "\"k_info\":8"));

  const std::vector<std::uint32_t> frozen = parse_frozen_set(read_text_file(frozen_path), 4);
  CHECK(frozen.size() == 8);

  const RunResult sim = run_cli(
      "simulate --channel awgn --param 0.9 --n 4 --trials 500 --frozen " + frozen_path);
  std::remove(frozen_path.c_str());
  CHECK(sim.exit_code == 0);
  CHECK(contains(sim.out, "\"mode\":\"fer\""));
  CHECK(contains(sim.out, "\"frozen_source\":\"file\""));
  CHECK(contains(sim.out, "\"frozen_count\":8"));
  CHECK(contains(sim.out, "\"k_info\":8"));
}

TEST_CASE("cli: --snr-db and --param are mutually exclusive spellings") {
  const RunResult snr = run_cli("design --n 4 --rate 0.5 --snr-db 2.0");
  CHECK(snr.exit_code == 0);
  CHECK(contains(snr.out, "\"snr_db\":2"));
  CHECK(run_cli("design --n 4 --rate 0.5 --snr-db 2.0 --sigma 1.0").exit_code == 2);
  CHECK(run_cli("design --n 4 --rate 0.5").exit_code == 2);  // neither given
  CHECK(run_cli("simulate --channel bec --snr-db 2.0 --n 3 --trials 10").exit_code == 2);
}
