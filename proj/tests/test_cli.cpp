#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "common.hpp"
#include "qoper/report.hpp"

using namespace qoper;
using nlohmann::json;
using testing_util::instance_path;

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  std::string cmd = std::string(QOPER_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string tmp_file(const std::string& name, const std::string& content) {
  std::string path = "/tmp/qoper_test_" + name;
  std::ofstream(path) << content;
  return path;
}

json base_instance() {
  std::ifstream is(instance_path("a1_closed_form.json"));
  return json::parse(is);
}

}  // namespace

TEST_CASE("solve: the closed-form instance") {
  auto r = cli("solve --instance " + instance_path("a1_closed_form.json"));
  auto j = json::parse(r.out);
  REQUIRE(j["body"]["solutions"].size() == 1);
  auto w = j["body"]["solutions"][0]["bethe_roots"][0][0];
  CHECK(std::abs(w[0].get<double>() - 1.0 / 9.0) <= 1e-10);
  CHECK(std::abs(w[1].get<double>()) <= 1e-10);
  // the root is a q-shift of the zero of Lambda: reported, not counted
  CHECK(r.code == 0);
  CHECK(j["versions"]["report"] == kReportVersion);
}

TEST_CASE("solve: m = 0 gives the trivial solution") {
  auto j = base_instance();
  j["degrees"] = {0};
  auto r = cli("solve --instance " + tmp_file("m0.json", j.dump()));
  CHECK(r.code == 0);
  auto out = json::parse(r.out);
  REQUIRE(out["body"]["solutions"].size() == 1);
  CHECK(out["body"]["solutions"][0]["qplus"][0] == json::parse("[[1.0, 0.0]]"));
}

TEST_CASE("exit codes") {
  CHECK(cli("solve --instance " + tmp_file("bad.json", "{\"versions\": ")).code == 2);
  CHECK(cli("solve --instance /nonexistent/x.json").code == 2);
  CHECK(cli("solve").code == 2);
  CHECK(cli("frobnicate").code == 2);
  CHECK(cli("backlund --instance " + instance_path("a2_solve.json") + " --word 5").code == 2);
  CHECK(cli("backlund --instance " + instance_path("a2_solve.json") + " --word 1,x").code == 2);
  CHECK(cli("verify --instance " + instance_path("a2_solve.json")).code == 2);
  CHECK(cli("verify --instance " + instance_path("sl3_solved.json")).code == 0);
  CHECK(cli("solve --instance " + instance_path("a2_solve.json") + " --format xml").code == 2);

  auto j = json::parse(std::ifstream(instance_path("sl3_solved.json")));
  j["solution"]["qminus"][0][0][0] = j["solution"]["qminus"][0][0][0].get<double>() + 1e-3;
  CHECK(cli("verify --instance " + tmp_file("perturbed.json", j.dump())).code == 1);
}

TEST_CASE("malformed JSON reports the position") {
  std::string path = tmp_file("bad2.json", "{\n  \"versions\": {\"instance\": 1},\n  \"rank\": ,\n}");
  try {
    load_instance(path);
    FAIL("expected an input error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("strict schema") {
  auto ok = base_instance();
  CHECK_NOTHROW(parse_instance(ok));
  auto bad = ok;
  bad["colour"] = "blue";
  CHECK_THROWS_AS(parse_instance(bad), InputError);
  bad = ok;
  bad.erase("versions");
  CHECK_THROWS_AS(parse_instance(bad), InputError);
  bad = ok;
  bad["versions"]["instance"] = 2;
  CHECK_THROWS_AS(parse_instance(bad), InputError);
  bad = ok;
  bad["q"] = json::array({1, 2, 3});
  CHECK_THROWS_AS(parse_instance(bad), InputError);
  bad = ok;
  bad["lambdas"][0] = json{{"coeffs", json::array({json::array({1, 0})})}};
  CHECK_THROWS_AS(parse_instance(bad), InputError);  // constant Lambda
  bad = ok;
  bad["lie_type"] = "D";
  bad["rank"] = 3;
  CHECK_THROWS_AS(parse_instance(bad), InputError);
  bad = ok;
  bad["ordering"] = {2};
  CHECK_THROWS_AS(parse_instance(bad), InputError);
  bad = ok;
  bad["tolerances"] = json{{"tau", 1e-10}, {"slack", 1}};
  CHECK_THROWS_AS(parse_instance(bad), InputError);
}

TEST_CASE("round trip is bit-exact after canonicalisation") {
  for (auto file : {"a1_closed_form.json", "a2_solve.json", "sl3_solved.json", "b2_solve.json"}) {
    auto f = load_instance(instance_path(file));
    auto once = serialize_instance(f).dump();
    auto twice = serialize_instance(parse_instance(json::parse(once))).dump();
    CHECK(once == twice);
  }
  // roots + leading form becomes coefficients
  auto f = parse_instance(base_instance());
  CHECK(f.inst.lambda[0] == (CPoly{-1.0, 1.0}));
  CHECK(std::abs(f.inst.q - 1.0 / 3.0) < 1e-16);
}

TEST_CASE("determinism: identical digests across runs") {
  std::string args = "solve --instance " + instance_path("a2_solve.json") + " --seed 17";
  auto a = json::parse(cli(args).out), b = json::parse(cli(args).out);
  CHECK(a["digest"] == b["digest"]);
  a.erase("timings");
  b.erase("timings");
  CHECK(a.dump() == b.dump());
  auto c = json::parse(cli("solve --instance " + instance_path("a2_solve.json") + " --seed 17 --seeds 8").out);
  CHECK(c["body"]["seeds"] == 8);
}

TEST_CASE("csv output and --out") {
  std::string out = "/tmp/qoper_test_out.csv";
  std::remove(out.c_str());
  auto r = cli("verify --instance " + instance_path("sl2_solved.json") + " --format csv --out " + out);
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream is(out);
  std::string header;
  std::getline(is, header);
  CHECK(header == "check,k_or_word,i,sup_residual,pass");
  std::string line;
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 4);
  }
  CHECK(rows > 10);
}

TEST_CASE("backlund subcommand") {
  auto one = json::parse(cli("backlund --instance " + instance_path("a1_closed_form.json") + " --word 1").out);
  REQUIRE(one["body"]["steps"].size() == 1);
  auto zb = one["body"]["steps"][0]["Z_before"][0], za = one["body"]["steps"][0]["Z_after"][0];
  CHECK(std::abs(za[0].get<double>() - 1.0 / zb[0].get<double>()) < 1e-15);

  auto two = cli("backlund --instance " + instance_path("a1_closed_form.json") + " --word 1,1");
  CHECK(two.code == 0);
  auto j = json::parse(two.out);
  bool involution = false;
  for (const auto& c : j["checks"])
    if (c["name"] == "involution") involution = c["pass"].get<bool>();
  CHECK(involution);
}

TEST_CASE("the tolerance flag is honoured") {
  auto strict = cli("verify --instance " + instance_path("sl3_solved.json") + " --tol 1e-30");
  CHECK(strict.code == 1);
}

TEST_CASE("cli_main can be driven in-process") {
  std::string inst = instance_path("sl2_solved.json");
  std::string out = "/tmp/qoper_test_inproc.json";
  const char* argv[] = {"qoper", "wronskian", "--instance", inst.c_str(), "--out", out.c_str()};
  CHECK(cli_main(6, const_cast<char**>(argv)) == 0);
  auto j = json::parse(std::ifstream(out));
  CHECK(j["body"]["wronskian"] == "built");
}
