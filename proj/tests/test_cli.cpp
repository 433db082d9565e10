#include <doctest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(YBSIM_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.output = out;
  return r;
}

std::string data_path(const std::string& name) {
  return std::string(YBSIM_DATA_DIR) + "/" + name;
}

fs::path temp_file(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "ybsim_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

json parse_output(const std::string& text) {
  return json::parse(text);
}

std::string sh_quote(const std::string& s) { return "'" + s + "'"; }

}  // namespace

TEST_CASE("gate build reports a passing gate") {
  RunResult r = run_cli("gate build " + sh_quote(data_path("f1_gate.spec.json")));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("qybe_pass: true") != std::string::npos);
  CHECK(r.output.find("unitary: true") != std::string::npos);
}

TEST_CASE("gate build writes a document that gate check accepts") {
  fs::path out = temp_file("f3_roundtrip.json");
  RunResult build =
      run_cli("gate build " + sh_quote(data_path("f3_gate.spec.json")) +
              " --gate-out " + sh_quote(out.string()));
  CHECK(build.exit_code == 0);
  RunResult check = run_cli("gate check " + sh_quote(out.string()));
  CHECK(check.exit_code == 0);
  CHECK(check.output.find("qybe_pass: true") != std::string::npos);
}

TEST_CASE("degenerate family-two parameters exit with a validation error") {
  fs::path spec = temp_file("f2_degenerate.spec.json");
  std::ofstream(spec) << R"({"family":"f2","a":[1,0],"b":[0,0],)"
                      << R"("c":[0,0],"d_entry":[1,0]})";
  RunResult r = run_cli("gate build " + sh_quote(spec.string()));
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("degenerate") != std::string::npos);
}

TEST_CASE("missing files exit with a validation error") {
  RunResult r = run_cli("gate check /nonexistent/gate.json");
  CHECK(r.exit_code == 2);
}

TEST_CASE("the exact simulator on an empty braid is the identity") {
  RunResult r = run_cli("simulate --gate " + sh_quote(data_path("f1_gate.json")) +
                        " --braid 'n=2' --x 00 --z 00 --exact --output json");
  CHECK(r.exit_code == 0);
  json j = parse_output(r.output);
  CHECK(j.at("exact").get<bool>());
  CHECK(j.at("value")[0].get<double>() == doctest::Approx(1.0));
  CHECK(j.at("value")[1].get<double>() == doctest::Approx(0.0));
}

TEST_CASE("sampled estimates agree with the exact value and repeat bit for bit") {
  std::string base = "simulate --gate " + sh_quote(data_path("f1_gate.json")) +
                     " --braid 'n=3 s1 s2 s1^-1' --x 010 --z 001 " +
                     "--output json";
  RunResult exact = run_cli(base + " --exact");
  REQUIRE(exact.exit_code == 0);
  json je = parse_output(exact.output);
  RunResult est1 = run_cli(base + " --epsilon 0.1 --seed 11 --samples 30000");
  RunResult est2 = run_cli(base + " --epsilon 0.1 --seed 11 --samples 30000");
  REQUIRE(est1.exit_code == 0);
  CHECK(est1.output == est2.output);
  json j1 = parse_output(est1.output);
  double dre = j1.at("value")[0].get<double>() - je.at("value")[0].get<double>();
  double dim = j1.at("value")[1].get<double>() - je.at("value")[1].get<double>();
  CHECK(std::sqrt(dre * dre + dim * dim) < 0.1);
  CHECK(j1.at("n_samples").get<long>() == 30000);
  CHECK(j1.at("certified_zero").get<bool>() == false);
}

TEST_CASE("the exact simulator refuses registers beyond the enumeration cap") {
  RunResult r = run_cli("simulate --gate " + sh_quote(data_path("f1_gate.json")) +
                        " --braid 'n=13 s1' --x 0000000000000 " +
                        "--z 0000000000000 --exact");
  CHECK(r.exit_code == 4);
}

TEST_CASE("gates whose rotation violates the sampling bound are refused") {
  RunResult r =
      run_cli("simulate --gate " + sh_quote(data_path("property_g_fail_gate.json")) +
              " --braid 'n=2 s1' --x 00 --z 00");
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("property") != std::string::npos);
}

TEST_CASE("family-four gates are rejected by the sampler and sent elsewhere") {
  RunResult r = run_cli("simulate --gate " + sh_quote(data_path("f4_gate.json")) +
                        " --braid 'n=2 s1' --x 00 --z 00");
  CHECK(r.exit_code == 5);
  CHECK(r.output.find("--exact") != std::string::npos);
  RunResult ok = run_cli("simulate --gate " + sh_quote(data_path("f4_gate.json")) +
                         " --braid 'n=2 s1' --x 00 --z 00 --exact");
  CHECK(ok.exit_code == 0);
}

TEST_CASE("expectation requires family-four gates") {
  RunResult r =
      run_cli("expectation --gate " + sh_quote(data_path("f1_gate.json")) +
              " --braid 'n=3 s1' --observable " +
              sh_quote(data_path("observable_z0.json")) + " --psi " +
              sh_quote(data_path("state_zero3.json")));
  CHECK(r.exit_code == 5);
}

TEST_CASE("expectation of Z on the zero state is one") {
  RunResult r =
      run_cli("expectation --gate " + sh_quote(data_path("f4_gate.json")) +
              " --braid 'n=3' --observable " +
              sh_quote(data_path("observable_z0.json")) + " --psi " +
              sh_quote(data_path("state_zero3.json")) + " --output json");
  CHECK(r.exit_code == 0);
  json j = parse_output(r.output);
  CHECK(j.at("value")[0].get<double>() == doctest::Approx(1.0));
  CHECK(j.at("value")[1].get<double>() == doctest::Approx(0.0));
}

TEST_CASE("expectation reproduces the stored cross-checked value") {
  std::ifstream in(data_path("expectation_expected.json"));
  REQUIRE(in.good());
  json expected = json::parse(in);
  std::string word = expected.at("word").get<std::string>();
  RunResult r =
      run_cli("expectation --gate " + sh_quote(data_path("f4_gate.json")) +
              " --braid " + sh_quote(word) + " --observable " +
              sh_quote(data_path("observable_m20.json")) + " --psi " +
              sh_quote(data_path("state_psi3.json")) + " --phi " +
              sh_quote(data_path("state_phi3.json")) + " --output json");
  REQUIRE(r.exit_code == 0);
  json j = parse_output(r.output);
  CHECK(j.at("value")[0].get<double>() ==
        doctest::Approx(expected.at("value")[0].get<double>()).epsilon(1e-9));
  CHECK(j.at("value")[1].get<double>() ==
        doctest::Approx(expected.at("value")[1].get<double>()).epsilon(1e-9));
}

TEST_CASE("braid parse reports strand count and length") {
  RunResult r = run_cli("braid parse 's1 s2^-1' --output json");
  CHECK(r.exit_code == 0);
  json j = parse_output(r.output);
  CHECK(j.at("n_strands").get<int>() == 3);
  CHECK(j.at("length").get<int>() == 2);
  RunResult bad = run_cli("braid parse 's0'");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("braid words load from files") {
  RunResult direct =
      run_cli("braid parse '@" + data_path("braid_example.txt") +
              "' --output json");
  CHECK(direct.exit_code == 0);
  json j = parse_output(direct.output);
  CHECK(j.at("n_strands").get<int>() == 4);
  CHECK(j.at("length").get<int>() == 4);
}

TEST_CASE("a compiled circuit file simulates like the braid it came from") {
  fs::path circ = temp_file("compiled.circuit");
  RunResult comp = run_cli("braid compile 'n=3 s1 s2^-1 s1' --gate f1_example "
                           "-o " + sh_quote(circ.string()));
  REQUIRE(comp.exit_code == 0);
  std::string tail = " --x 011 --z 110 --exact --output json";
  RunResult via_circuit =
      run_cli("simulate --gate " + sh_quote(data_path("f1_gate.json")) +
              " --circuit " + sh_quote(circ.string()) + tail);
  RunResult via_braid =
      run_cli("simulate --gate " + sh_quote(data_path("f1_gate.json")) +
              " --braid 'n=3 s1 s2^-1 s1'" + tail);
  REQUIRE(via_circuit.exit_code == 0);
  REQUIRE(via_braid.exit_code == 0);
  CHECK(parse_output(via_circuit.output).at("value") ==
        parse_output(via_braid.output).at("value"));
}

TEST_CASE("gate check classifies plain matrices") {
  RunResult swap_check = run_cli("gate check " + sh_quote(data_path("tswap_gate.json")));
  CHECK(swap_check.exit_code == 0);
  CHECK(swap_check.output.find("qybe_pass: true") != std::string::npos);
  RunResult cnot_check = run_cli("gate check " + sh_quote(data_path("cnot_gate.json")));
  CHECK(cnot_check.exit_code == 0);
  CHECK(cnot_check.output.find("qybe_pass: false") != std::string::npos);
}

TEST_CASE("gate check evaluates the full permutation group on request") {
  RunResult r = run_cli("gate check " + sh_quote(data_path("q3_unitary.json")) +
                        " --property-g full --output json");
  CHECK(r.exit_code == 0);
  json j = parse_output(r.output);
  CHECK(j.at("property_g").at("holds").get<bool>());
  CHECK(j.at("property_g").at("group_order").get<int>() == 6);
}

TEST_CASE("diagonal and commuting gate documents simulate exactly") {
  std::string tail = " --braid 'n=2 s1' --x 02 --z 20 --output json";
  RunResult exact =
      run_cli("simulate --gate " + sh_quote(data_path("diag_d3_gate.json")) +
              tail + " --exact");
  RunResult sampled =
      run_cli("simulate --gate " + sh_quote(data_path("diag_d3_gate.json")) +
              tail + " --epsilon 0.1 --seed 3");
  REQUIRE(exact.exit_code == 0);
  REQUIRE(sampled.exit_code == 0);
  json je = parse_output(exact.output);
  json js = parse_output(sampled.output);
  double dre = je.at("value")[0].get<double>() - js.at("value")[0].get<double>();
  double dim = je.at("value")[1].get<double>() - js.at("value")[1].get<double>();
  CHECK(std::sqrt(dre * dre + dim * dim) < 0.1);
}

TEST_CASE("timing is attached only on request") {
  std::string base = "gate check " + sh_quote(data_path("f1_gate.json"));
  RunResult plain = run_cli(base);
  CHECK(plain.output.find("wall_time_ms") == std::string::npos);
  RunResult timed = run_cli(base + " --timing");
  CHECK(timed.output.find("wall_time_ms") != std::string::npos);
}
