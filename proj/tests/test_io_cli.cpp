#include "doctest.h"

#include <array>
#include <cstdio>
#include <string>

#include "p1energy/equilibrium.hpp"
#include "p1energy/io.hpp"
#include "p1energy/metric.hpp"

using namespace p1energy;

namespace {

#ifndef P1ENERGY_CLI_PATH
#define P1ENERGY_CLI_PATH "p1energy"
#endif

struct CmdResult {
  int exit_code;
  std::string output;
};

CmdResult run_cli(const std::string& args) {
  const std::string cmd = std::string(P1ENERGY_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("PointSet JSON round trip, p-adic") {
  equilibrium::PadicEquilibrium eq(3, 20);
  RngStream rng(11001);
  std::vector<metric::ProjectivePoint> pts;
  for (int i = 0; i < 25; ++i) pts.push_back(eq.sample(rng));
  pts.push_back(metric::ProjectivePoint::padic_affine(3, BigRat(7, 2)));
  pts.push_back(metric::ProjectivePoint::padic_infinity(3));
  metric::PointSet z(pts);
  auto z2 = io::point_set_from_json(io::point_set_to_json(z));
  REQUIRE(z2.size() == z.size());
  CHECK(metric::discrepancy_logp_coeff(z2) == metric::discrepancy_logp_coeff(z));
  CHECK(io::point_set_to_json(z2) == io::point_set_to_json(z));
}

TEST_CASE("PointSet JSON round trip, archimedean") {
  equilibrium::RealEquilibrium eq(64, 1e-8);
  RngStream rng(11002);
  std::vector<metric::ProjectivePoint> pts;
  for (int i = 0; i < 25; ++i) pts.push_back(eq.sample(rng));
  metric::PointSet z(pts);
  auto z2 = io::point_set_from_json(io::point_set_to_json(z));
  REQUIRE(z2.size() == z.size());
  CHECK(metric::discrepancy(z2) == metric::discrepancy(z));
}

TEST_CASE("format_double is locale-independent and stable") {
  CHECK(io::format_double(0.25) == "0.25");
  CHECK(io::format_double(1e-9) == "1e-09");
  CHECK(io::format_double(0.4262783988) == "0.4262783988");
}

TEST_CASE("cli: identical command and seed give byte-identical output") {
  auto a = run_cli("sample --p 2 --count 50 --seed 777");
  auto b = run_cli("sample --p 2 --count 50 --seed 777");
  auto c = run_cli("sample --p 2 --count 50 --seed 778");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output != c.output);
  auto d = run_cli("converge --real --count 128 --seed 5");
  auto e = run_cli("converge --real --count 128 --seed 5");
  CHECK(d.exit_code == 0);
  CHECK(d.output == e.output);
}

TEST_CASE("cli: energy prints the headline constants") {
  auto r = run_cli("energy");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("0.426278") != std::string::npos);
  CHECK(r.output.find("0.462098") != std::string::npos);
  CHECK(r.output.find("7*zeta(3)/(2*pi^2)") != std::string::npos);
}

TEST_CASE("cli: bound table digits") {
  auto r = run_cli("bound --primes 2 --arch");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("0.444188") != std::string::npos);
  CHECK(r.output.find("0.231049") != std::string::npos);
  CHECK(r.output.find("0.213139") != std::string::npos);
  CHECK(r.output.find("0.115524") != std::string::npos);  // 0.115525 to 6 digits
  CHECK(r.output.find("0.240605") != std::string::npos);
}

TEST_CASE("cli: height and split-check") {
  auto r = run_cli("height --poly=-1,-1,1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("0.240605") != std::string::npos);
  auto s = run_cli("split-check --poly=-1,-1,1 --p 2 --p 11 --real");
  CHECK(s.output.find("inf,true") != std::string::npos);
  CHECK(s.output.find("2,false") != std::string::npos);
  CHECK(s.output.find("11,true") != std::string::npos);
}

TEST_CASE("cli: sample --format json round-trips through the library") {
  auto r = run_cli("sample --p 5 --count 20 --seed 31 --format json");
  REQUIRE(r.exit_code == 0);
  auto z = io::point_set_from_json(r.output);
  CHECK(z.size() == 20);
  CHECK(z.context() == metric::FieldContext::padic(5));
}

TEST_CASE("cli: json format emits parseable structures") {
  auto r = run_cli("verify-identity --poly=-1,-1,1 --format json");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"residual\"") != std::string::npos);
  auto s = run_cli("search --primes 5 --degree-max 2 --coeff-max 2 --format json");
  CHECK(s.exit_code == 0);
  CHECK(s.output.find("\"qualifying\"") != std::string::npos);
}

TEST_CASE("cli: all-checks quick passes and the corrupt fixture fails") {
  auto ok = run_cli("all-checks --quick");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("ALL PASS") != std::string::npos);
  auto bad = run_cli("all-checks --quick --corrupt 9");
  CHECK(bad.exit_code != 0);
  CHECK(bad.output.find("FAIL criterion 9") != std::string::npos);
  CHECK(bad.output.find("FAILURES PRESENT") != std::string::npos);
}

TEST_CASE("cli: log2 display is presentation only") {
  auto r = run_cli("energy --p 2 --log2");
  CHECK(r.exit_code == 0);
  // 2 log2(2) / 3 = 2/3 exactly.
  CHECK(r.output.find("0.666666666667") != std::string::npos);
}

TEST_CASE("cli: usage errors are rejected") {
  CHECK(run_cli("sample --count 5").exit_code != 0);             // no field
  CHECK(run_cli("sample --real --p 2 --count 5").exit_code != 0);  // both fields
  CHECK(run_cli("height").exit_code != 0);                       // --poly required
  CHECK(run_cli("bogus-subcommand").exit_code != 0);
}
