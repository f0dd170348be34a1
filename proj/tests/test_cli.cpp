// Drives the installed binary end to end.  The binary path arrives as the
// last command line argument (cmake passes the build-tree location).
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cuspcert/caselib.hpp"

using json = nlohmann::ordered_json;

namespace {

std::string g_binary;
std::string g_tmpdir;
int g_file_counter = 0;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string temp_path(const std::string& stem) {
  return g_tmpdir + "/" + stem + "_" + std::to_string(g_file_counter++);
}

RunResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string out_file = temp_path("out");
  const std::string err_file = temp_path("err");
  std::string cmd;
  if (!env.empty()) cmd += env + " ";
  cmd += "'" + g_binary + "' " + args + " >'" + out_file + "' 2>'" + err_file + "'";
  const int status = std::system(cmd.c_str());
  RunResult r;
  if (status != -1 && WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

json report_of(const std::string& args, const std::string& env = "") {
  const std::string path = temp_path("report");
  const RunResult r = run_cli(args + " --out '" + path + "'", env);
  REQUIRE(r.exit_code >= 0);
  return json::parse(slurp(path));
}

json normalized(json j) {
  if (j.contains("generated_at")) j["generated_at"] = "";
  if (j.contains("cases"))
    for (auto& c : j["cases"]) c["timestamp"] = "";
  return j;
}

}  // namespace

TEST_CASE("certify exit codes and console summary") {
  SUBCASE("a passing case") {
    const RunResult r = run_cli("certify --family B --rank 4 --q 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("certified 1 case(s): 1 pass, 0 fail") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
  }
  SUBCASE("the isotropic control fails") {
    const RunResult r = run_cli("certify --family D --rank 4 --q 2 --twist coxeter");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("FAIL D rank 4 q 2") != std::string::npos);
    CHECK(r.out.find("not anisotropic") != std::string::npos);
    CHECK(r.out.find("certified 1 case(s): 0 pass, 1 fail") != std::string::npos);
  }
  SUBCASE("the stabilized unitary witness fails") {
    const RunResult r = run_cli("certify --family 2A --rank 2 --q 2");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("FAIL 2A rank 2 q 2") != std::string::npos);
    CHECK(r.out.find("witness fixed by") != std::string::npos);
  }
  SUBCASE("bad arguments") {
    CHECK(run_cli("certify --family B --rank 2 --q 6").exit_code == 2);
    CHECK(run_cli("certify --family E --rank 2 --q 2").exit_code == 2);
    CHECK(run_cli("certify --rank 0..x").exit_code == 2);
    CHECK(run_cli("certify --bogus-flag").exit_code == 2);
    CHECK(run_cli("certify --family B --rank 2 --q 2 --twist nonsense").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);  // a subcommand is required
  }
  SUBCASE("help is exit zero") {
    const RunResult r = run_cli("--help");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("certify") != std::string::npos);
    CHECK(r.out.find("classify") != std::string::npos);
    CHECK(r.out.find("search") != std::string::npos);
  }
}

TEST_CASE("q range expansion keeps prime powers only") {
  const RunResult r = run_cli("certify --family B --rank 2 --q 2..9");
  CHECK(r.exit_code == 0);
  // 2 3 4 5 7 8 9
  CHECK(r.out.find("certified 7 case(s): 7 pass, 0 fail") != std::string::npos);
  CHECK(run_cli("certify --family B --rank 2 --q 24..26 --q 6").exit_code == 2);
  const RunResult r25 = run_cli("certify --family B --rank 2 --q 24..26");
  CHECK(r25.exit_code == 0);
  CHECK(r25.out.find("certified 1 case(s)") != std::string::npos);
}

TEST_CASE("certify json report") {
  const json j = report_of("certify --family B --rank 2..3 --q 2");
  CHECK(j.at("schema").get<std::string>() == cuspcert::kSchemaVersion);
  CHECK(j.at("summary").at("total").get<int>() == 2);
  CHECK(j.at("summary").at("passed").get<int>() == 2);
  CHECK(j.at("summary").at("failed").get<int>() == 0);
  REQUIRE(j.at("cases").size() == 2);
  for (const json& cj : j.at("cases")) {
    const cuspcert::Certificate c = cuspcert::certificate_from_json(cj);
    CHECK(c.pass());
    CHECK(c.family == "B");
  }
  CHECK(j.at("cases")[0].at("rank").get<int>() == 2);
  CHECK(j.at("cases")[1].at("rank").get<int>() == 3);
  CHECK(j.at("cases")[0].at("torus_order").get<std::string>() == "5");
}

TEST_CASE("certify csv report") {
  const std::string path = temp_path("report_csv");
  const RunResult r =
      run_cli("certify --family B --family 2A --rank 2 --q 2 --format csv --out '" + path + "'");
  CHECK(r.exit_code == 1);  // the unitary cell fails
  CHECK(r.out.find("report written to " + path) != std::string::npos);
  const std::string csv = slurp(path);
  CHECK(csv.rfind("family,rank,q,anisotropic,torus_order,wtk_order,general_position,verdict\n",
                  0) == 0);
  CHECK(csv.find("B,2,2,true,5,4,true,PASS\n") != std::string::npos);
  CHECK(csv.find("2A,2,2,true,3,3,false,FAIL\n") != std::string::npos);
}

TEST_CASE("classify console and report") {
  const std::string path = temp_path("classify");
  const RunResult r = run_cli("classify --family A --rank 2 --q 2 --out '" + path + "'");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("A rank 2: 3 twisted conjugacy classes") != std::string::npos);

  const json j = json::parse(slurp(path));
  CHECK(j.at("command").get<std::string>() == "classify");
  REQUIRE(j.at("tables").size() == 1);
  const json& table = j.at("tables")[0];
  CHECK(table.at("family").get<std::string>() == "A");
  REQUIRE(table.at("classes").size() == 3);

  int anisotropic = 0;
  std::uint64_t total_size = 0;
  for (const json& cls : table.at("classes")) {
    total_size += cls.at("size").get<std::uint64_t>();
    if (cls.at("anisotropic").get<bool>()) {
      ++anisotropic;
      // the anisotropic class is the 3-cycle with |T(2)| = q^2 + q + 1 = 7
      CHECK(cls.at("orders")[0].at("torus_order").get<std::string>() == "7");
    }
  }
  CHECK(anisotropic == 1);
  CHECK(total_size == 6);
  // identity class comes first with the split torus order (q-1)^2
  CHECK(table.at("classes")[0].at("rep") == json::array({1, 2, 3}));
  CHECK(table.at("classes")[0].at("orders")[0].at("torus_order").get<std::string>() == "1");

  CHECK(run_cli("classify --family D --rank 9 --q 2").exit_code == 3);
}

TEST_CASE("search reports counts and orbit representatives") {
  const json j = report_of("search --family B --family 2A --rank 2 --q 2");
  CHECK(j.at("command").get<std::string>() == "search");
  REQUIRE(j.at("results").size() == 2);

  const json& b = j.at("results")[0];
  CHECK(b.at("family").get<std::string>() == "B");
  CHECK(b.at("torus_order").get<std::string>() == "5");
  CHECK(b.at("invariant_factors") == json::array({1, 5}));
  CHECK(b.at("wtk_order").get<int>() == 4);
  CHECK(b.at("count").get<int>() == 4);
  CHECK(b.at("witness_in_general_position").get<bool>());
  CHECK(b.at("orbit_reps") == json::array({json::array({0, 1})}));

  const json& ua = j.at("results")[1];
  CHECK(ua.at("family").get<std::string>() == "2A");
  CHECK(ua.at("count").get<int>() == 0);
  CHECK_FALSE(ua.at("witness_in_general_position").get<bool>());
  CHECK(ua.at("orbit_reps").empty());

  const RunResult console = run_cli("search --family B --rank 2 --q 2");
  CHECK(console.exit_code == 0);
  CHECK(console.out.find("4 general-position character(s) of 5") != std::string::npos);
  CHECK(console.out.find("orbit rep (0,1)") != std::string::npos);

  // quotient groups past the oracle threshold are a refusal, not a wrong answer
  CHECK(run_cli("search --family B --rank 2 --q 1024").exit_code == 3);
}

TEST_CASE("thread count changes nothing observable") {
  const std::string args = "certify --family 2A --family B --rank 2..5 --q 2..8";
  const json j1 = report_of(args, "CUSPCERT_THREADS=1");
  const json j4 = report_of(args, "CUSPCERT_THREADS=4");
  CHECK(normalized(j1).dump() == normalized(j4).dump());

  const std::string csv1 = temp_path("csv_threads");
  const std::string csv4 = temp_path("csv_threads");
  REQUIRE(run_cli(args + " --format csv --out '" + csv1 + "'", "CUSPCERT_THREADS=1").exit_code ==
          1);
  REQUIRE(run_cli(args + " --format csv --out '" + csv4 + "'", "CUSPCERT_THREADS=4").exit_code ==
          1);
  CHECK(slurp(csv1) == slurp(csv4));
}

TEST_CASE("json and csv verdicts agree") {
  const std::string jpath = temp_path("agree_json");
  const std::string cpath = temp_path("agree_csv");
  const std::string args = "certify --family 2A --rank 2..4 --q 2..4";
  REQUIRE(run_cli(args + " --out '" + jpath + "'").exit_code == 1);
  REQUIRE(run_cli(args + " --format csv --out '" + cpath + "'").exit_code == 1);

  const json j = json::parse(slurp(jpath));
  const std::string csv = slurp(cpath);
  std::size_t pass_rows = 0, fail_rows = 0, pos = 0;
  for (std::string::size_type at = csv.find('\n'); at != std::string::npos;
       at = csv.find('\n', pos)) {
    const std::string line = csv.substr(pos, at - pos);
    if (line.size() >= 4 && line.compare(line.size() - 4, 4, "PASS") == 0) ++pass_rows;
    if (line.size() >= 4 && line.compare(line.size() - 4, 4, "FAIL") == 0) ++fail_rows;
    pos = at + 1;
  }
  CHECK(pass_rows == j.at("summary").at("passed").get<std::size_t>());
  CHECK(fail_rows == j.at("summary").at("failed").get<std::size_t>());
}

int main(int argc, char** argv) {
  std::vector<char*> args(argv, argv + argc);
  if (args.size() > 1 && args.back()[0] != '-') {
    g_binary = args.back();
    args.pop_back();
  }
  if (g_binary.empty()) {
    std::fprintf(stderr, "usage: test_cli [doctest options] <cuspcert binary>\n");
    return 64;
  }
  char tmpl[] = "/tmp/cuspcert_cli_XXXXXX";
  if (!mkdtemp(tmpl)) {
    std::perror("mkdtemp");
    return 64;
  }
  g_tmpdir = tmpl;

  doctest::Context ctx;
  ctx.applyCommandLine(static_cast<int>(args.size()), args.data());
  const int rc = ctx.run();
  if (std::system(("rm -rf '" + g_tmpdir + "'").c_str()) != 0)
    std::fprintf(stderr, "warning: could not remove %s\n", g_tmpdir.c_str());
  return rc;
}
