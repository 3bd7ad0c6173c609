#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "superloc/json_io.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(SUPERLOC_CLI_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WEXITSTATUS(status);
  return r;
}

}  // namespace

TEST_CASE("volume subcommand parses and reports") {
  auto r = run_cli("volume periplectic --r 2 --s 2 --json");
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["count"] == 2);
  CHECK(j["exponent_m"] == 4);
  CHECK(j["value"] == "2*(2*pi/i)^4");
  CHECK(j["verdict"] == "Splitting");
  CHECK(j["tool_version"] == "1.0.0");
  CHECK(j["convention"]["kappa"] == "2i");
}

TEST_CASE("zero volume is a successful computation") {
  auto r = run_cli("volume periplectic --r 1 --s 1 --json");
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["count"] == 0);
  CHECK(j["verdict"] == "Inconclusive");
  CHECK(j["value"] == "0");
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("volume isotropic").code == 2);       // missing --n
  CHECK(run_cli("volume").code == 2);                 // missing family
  CHECK(run_cli("volume isotropic --n x").code == 2); // malformed number
  CHECK(run_cli("--totally-unknown-flag calibrate").code == 2);
  CHECK(run_cli("").code == 2);                       // missing subcommand
  CHECK(run_cli("verify-linear").code == 2);          // needs lambdas or rep file
  CHECK(run_cli("dist-check --identity nosuch").code == 2);
}

TEST_CASE("module errors exit with code 3 and a diagnostic") {
  auto r = run_cli("volume periplectic --r 6 --s 6 --json");
  CHECK(r.code == 3);
  json j = json::parse(r.out);
  CHECK(j["error"]["code"] == "enumeration-limit");
}

TEST_CASE("verify-linear runs the randomized suite") {
  auto r = run_cli("verify-linear --lambdas 3i --profiles 4 --count 20 --json");
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["failures"] == 0);
  CHECK(j["count"] == 20);
  CHECK(j["model"]["blocks"] == 1);
  CHECK(j.contains("seed"));
  for (const auto& run : j["runs"]) CHECK(run["equal"] == true);
}

TEST_CASE("verify-linear accepts a representation file") {
  std::string path = "/tmp/superloc_cli_rep.json";
  {
    superloc::qrep::QGroupSpec q{{superloc::ComplexRational(superloc::Rational(0),
                                                            superloc::Rational(3))}};
    superloc::qrep::CSRep rep(q, {{superloc::qrep::Character{{1}}, false}});
    std::ofstream out(path);
    out << superloc::io::to_json(rep).dump(2);
  }
  auto r = run_cli("verify-linear --rep-file " + path + " --count 5 --json");
  std::remove(path.c_str());
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["failures"] == 0);
  CHECK(j["model"]["lambdas"][0] == "3i");

  CHECK(run_cli("verify-linear --rep-file /tmp/superloc_missing_rep.json").code == 2);
  std::string bad = "/tmp/superloc_bad_rep.json";
  {
    std::ofstream out(bad);
    out << "{ not json";
  }
  CHECK(run_cli("verify-linear --rep-file " + bad).code == 2);
  std::remove(bad.c_str());
}

TEST_CASE("reports are byte-identical for a fixed seed") {
  std::string args = "verify-linear --lambdas 1+2i,5i --count 8 --seed 777 --json";
  auto a = run_cli(args);
  auto b = run_cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto c = run_cli("verify-linear --lambdas 1+2i,5i --count 8 --seed 778 --json");
  CHECK(c.out != a.out);
  json j = json::parse(c.out);
  CHECK(j["seed"] == 778);
}

TEST_CASE("dist-check passes at the documented tolerance and honours --tol") {
  auto r = run_cli("dist-check --identity polediff --json");
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["equal"] == true);
  CHECK(j["mode"] == "quadrature");
  CHECK(j["eps_trace"].size() == 4);
  CHECK(j["residual"].get<double>() <= 1e-4);

  auto strict = run_cli("dist-check --identity polediff --tol 1e-20 --json");
  CHECK(strict.code == 1);

  auto sigma = run_cli("dist-check --identity sigma --lambda 3i --poly 1 --json");
  CHECK(sigma.code == 0);
}

TEST_CASE("chain subcommand reports towers and breaks") {
  auto ok = run_cli("chain periplectic --n 4 --json");
  CHECK(ok.code == 0);
  json j = json::parse(ok.out);
  CHECK(j["verdict"] == "Splitting");
  CHECK(j["steps"].size() == 2);

  auto broken = run_cli("chain periplectic --steps 1:1 --json");
  CHECK(broken.code == 1);
  json jb = json::parse(broken.out);
  CHECK(jb["broken"] == true);
  CHECK(jb["verdict"] == "Inconclusive");
}

TEST_CASE("flag volume and chain run from a root-data file") {
  std::string path = "/tmp/superloc_cli_gl32.json";
  auto gen = run_cli("root-data --gl 3,2 --out " + path);
  CHECK(gen.code == 0);

  auto vol = run_cli("volume flag --root-file " + path + " --json");
  CHECK(vol.code == 0);
  json jv = json::parse(vol.out);
  CHECK(jv["count"] == 2);
  CHECK(jv["exponent_m"] == 4);

  auto fp = run_cli("fixed-points flag --root-file " + path + " --json");
  CHECK(fp.code == 0);
  json jf = json::parse(fp.out);
  CHECK(jf["wd_order"] == 2);
  CHECK(jf["wc_order"] == 1);

  auto chain = run_cli("chain flag --root-file " + path + " --json");
  CHECK(chain.code == 0);
  json jc = json::parse(chain.out);
  CHECK(jc["verdict"] == "Splitting");
  std::remove(path.c_str());

  auto missing = run_cli("volume flag --root-file /tmp/superloc_no_such_file.json");
  CHECK(missing.code == 2);
}

TEST_CASE("fixed-points enumerations") {
  auto iso = run_cli("fixed-points isotropic --n 3 --json");
  CHECK(iso.code == 0);
  json ji = json::parse(iso.out);
  CHECK(ji["count"] == 4);
  CHECK(ji["representatives"].size() == 4);

  auto per = run_cli("fixed-points periplectic --r 2 --s 2 --json");
  CHECK(per.code == 0);
  json jp = json::parse(per.out);
  CHECK(jp["count"] == 2);
  CHECK(jp["raw_count"] == 8);
}

TEST_CASE("calibrate confirms the frozen convention") {
  auto r = run_cli("calibrate --json");
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["match"] == true);
  CHECK(j["kappa_recomputed"] == "2i");
}

TEST_CASE("root-data output matches the in-library builder") {
  auto r = run_cli("root-data --gl 2,2");
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  auto parsed = superloc::io::flag_data_from_json(j);
  auto built = superloc::homspace::gl_root_data(2, 2);
  CHECK(parsed.even_roots == built.even_roots);
  CHECK(parsed.isotropic_roots == built.isotropic_roots);
  CHECK(parsed.k_roots == built.k_roots);
}

TEST_CASE("environment variable raises the enumeration bound") {
  auto r = run_cli("volume periplectic --r 5 --s 5 --json");
  CHECK(r.code == 3);
  setenv("SUPERLOC_MAX_ENUM", "10", 1);
  auto ok = run_cli("volume periplectic --r 5 --s 5 --json");
  unsetenv("SUPERLOC_MAX_ENUM");
  CHECK(ok.code == 0);
  json j = json::parse(ok.out);
  CHECK(j["count"] == 0);  // rs odd
  CHECK(j["verdict"] == "Inconclusive");
}
