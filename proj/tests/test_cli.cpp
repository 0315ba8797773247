#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "g2coulomb/json_io.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

std::string temp_path(const char* tag) {
  std::string tmpl = std::string("/tmp/g2c_") + tag + "_XXXXXX";
  int fd = mkstemp(tmpl.data());
  REQUIRE(fd >= 0);
  close(fd);
  return tmpl;
}

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  std::string out_file = temp_path("cli");
  std::string cmd =
      env_prefix + std::string(G2C_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
  int status = std::system(cmd.c_str());
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  std::remove(out_file.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, ss.str()};
}

}  // namespace

TEST_CASE("spectrum command") {
  RunResult r = run_cli("spectrum --n 1 --m 0 --p 0 --beta 1");
  REQUIRE(r.exit_code == 0);
  auto j = g2c::Json::parse(r.out);
  REQUIRE(j["levels"].size() == 2);
  CHECK(j["levels"][0]["alpha"] == "1");
  CHECK(j["levels"][1]["alpha"] == "2");
  CHECK(j["levels"][1]["multiplicity"] == 1);
}

TEST_CASE("identical invocations produce byte-identical reports") {
  RunResult a = run_cli("spectrum --n 3 --m 1 --p 1 --beta 3/7");
  RunResult b = run_cli("spectrum --n 3 --m 1 --p 1 --beta 3/7");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  RunResult c = run_cli("qes-spectrum --n 2 --m 0 --p 0 --beta 1 --A 1");
  RunResult d = run_cli("qes-spectrum --n 2 --m 0 --p 0 --beta 1 --A 1");
  CHECK(c.out == d.out);
}

TEST_CASE("exact values round-trip through the wire format") {
  RunResult r = run_cli("spectrum --n 2 --m 2 --p 1 --beta 3/7");
  REQUIRE(r.exit_code == 0);
  auto j = g2c::Json::parse(r.out);
  CHECK(j["beta"] == "3/7");
  CHECK(g2c::Rational::parse(j["beta"].get<std::string>()) == g2c::Rational(3, 7));

  // polynomials parse back to the exact objects the library computes
  auto levels = g2c::coulomb_spectrum(2, 2, 1, g2c::Rational(3, 7));
  for (size_t lv = 0; lv < levels.size(); ++lv)
    for (size_t k = 0; k < levels[lv].polys.size(); ++k)
      CHECK(g2c::bipoly_from_json(j["levels"][lv]["polys"][k]) == levels[lv].polys[k]);
}

TEST_CASE("qes-cubic exits zero on the identity") {
  CHECK(run_cli("qes-cubic --m 0 --p 0 --beta 1 --A 1").exit_code == 0);
  CHECK(run_cli("qes-cubic --m 2 --p 1 --beta 3/5 --A 7/2").exit_code == 0);
}

TEST_CASE("verify-lie reports the identity") {
  RunResult r = run_cli("verify-lie --identity coulomb --n 3 --m 1 --p 0 --beta 2/3");
  REQUIRE(r.exit_code == 0);
  auto j = g2c::Json::parse(r.out);
  CHECK(j["identity"] == "coulomb");
  CHECK(j["holds"] == true);
  CHECK(j["residual_operator"].is_null());

  CHECK(run_cli("verify-lie --identity laguerre --m 2 --p 1 --beta 3/7").exit_code == 0);
  CHECK(run_cli("verify-lie --identity qes --n 2 --m 0 --p 0 --beta 1 --A 1").exit_code == 0);
}

TEST_CASE("dump-operator emits the coefficient map") {
  RunResult r = run_cli("dump-operator --op h_a --m 0 --p 0 --beta 1");
  REQUIRE(r.exit_code == 0);
  auto j = g2c::Json::parse(r.out);
  REQUIRE(j.contains("2,0"));
  CHECK(g2c::bipoly_from_json(j["2,0"]) == g2c::BiPoly::var_r() * g2c::Rational(-1, 2));
  CHECK(g2c::bipoly_from_json(j["0,0"]) == g2c::BiPoly(g2c::Rational(1)));

  RunResult gen = run_cli("dump-operator --op generator --name J4 --gen-n 2");
  REQUIRE(gen.exit_code == 0);
  auto gj = g2c::Json::parse(gen.out);
  CHECK(g2c::bipoly_from_json(gj["1,0"]) ==
        g2c::BiPoly::var_r() * g2c::BiPoly::var_r());
}

TEST_CASE("states and residual commands") {
  RunResult r = run_cli("states --n 1 --m 0 --p 0 --alpha 1");
  REQUIRE(r.exit_code == 0);
  auto j = g2c::Json::parse(r.out);
  REQUIRE(j.size() == 1);
  CHECK(j[0]["N"] == 2);
  CHECK(j[0]["beta"] == "1/2");
  CHECK(j[0]["energy"] == "-1/8");

  RunResult res = run_cli("residual --n 0 --m 0 --p 0 --alpha 1 --points 10 --seed 3");
  REQUIRE(res.exit_code == 0);
  auto rj = g2c::Json::parse(res.out);
  CHECK(rj[0]["max_relative_residual"].get<double>() < 1e-5);
}

TEST_CASE("gram command emits csv") {
  RunResult r = run_cli("gram --alpha 1 --m 0 --p 0 --nmax 1 --order 64 --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("n=0") != std::string::npos);
  CHECK(r.out.find(",") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("spectrum --m 0").exit_code == 2);          // missing required --n
  CHECK(run_cli("no-such-command").exit_code == 2);
  CHECK(run_cli("verify-lie --identity bogus").exit_code == 2);
}

TEST_CASE("output file option") {
  std::string path = temp_path("out");
  RunResult r = run_cli("--output " + path + " spectrum --n 0 --m 0 --p 0 --beta 1");
  REQUIRE(r.exit_code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  auto j = g2c::Json::parse(in);
  CHECK(j["levels"][0]["alpha"] == "1");
  std::remove(path.c_str());
}

TEST_CASE("relative outputs honor the output directory variable") {
  std::string dir = "/tmp/g2c_envdir_test";
  std::filesystem::create_directories(dir);
  RunResult r = run_cli("--output envvar.json spectrum --n 0 --m 0 --p 0 --beta 1",
                        "G2C_OUTPUT_DIR=" + dir + " ");
  REQUIRE(r.exit_code == 0);
  std::ifstream in(dir + "/envvar.json");
  REQUIRE(in.good());
  auto j = g2c::Json::parse(in);
  CHECK(j["levels"][0]["alpha"] == "1");
  std::filesystem::remove_all(dir);
}
