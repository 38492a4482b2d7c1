#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

std::string cli_bin() {
  const char* p = std::getenv("P4_CLI_BIN");
  REQUIRE(p != nullptr);
  return p;
}

int run(const std::string& args) {
  const std::string cmd = cli_bin() + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("identical configs produce byte-identical output") {
  REQUIRE(run("--outdir /tmp/p4cli tau --gamma 0.3 --n 12 --s-min -2 --s-max 2 --step 0.25 "
              "--out det_a.csv") == 0);
  REQUIRE(run("--outdir /tmp/p4cli --threads 4 tau --gamma 0.3 --n 12 --s-min -2 --s-max 2 "
              "--step 0.25 --out det_b.csv") == 0);
  CHECK(slurp("/tmp/p4cli/det_a.csv") == slurp("/tmp/p4cli/det_b.csv"));
}

TEST_CASE("gamma = 0 tau grid is the constant-1 column") {
  REQUIRE(run("--outdir /tmp/p4cli tau --gamma 0 --n 10 --s-min -1 --s-max 1 --step 0.5 "
              "--out flat.csv") == 0);
  std::istringstream in(slurp("/tmp/p4cli/flat.csv"));
  std::string line;
  std::getline(in, line);  // header
  int rows = 0;
  while (std::getline(in, line)) {
    CHECK(line.find(",1.000000000000e+00,") != std::string::npos);
    ++rows;
  }
  CHECK(rows == 5);
}

TEST_CASE("exit-code contract") {
  CHECK(run("tau --gamma 1.5 --n 5") == 2);                       // bad input
  CHECK(run("curve --szego --lemniscate") == 2);                  // conflicting flags
  CHECK(run("--outdir /tmp/p4cli verify --only s0") == 0);        // passing battery
  CHECK(run("--outdir /tmp/p4cli curve --szego -M 64 --out c.csv") == 0);
}

TEST_CASE("a config file reproduces the flag run losslessly") {
  {
    std::ofstream cfg("/tmp/p4cli/tau.ini");
    cfg << "outdir=/tmp/p4cli\n\n[tau]\ngamma=0.3\nn=12\ns-min=-2\ns-max=2\nstep=0.25\n"
           "out=det_cfg.csv\n";
  }
  REQUIRE(run("--config /tmp/p4cli/tau.ini tau") == 0);
  CHECK(slurp("/tmp/p4cli/det_cfg.csv") == slurp("/tmp/p4cli/det_a.csv"));
}

TEST_CASE("zeros emits the polynomial with provenance metadata") {
  REQUIRE(run("--outdir /tmp/p4cli zeros --d 3 --ell 0 --k 6 --critical --digits 50 -M 64 "
              "--out meta") == 0);
  const std::string poly = slurp("/tmp/p4cli/meta_poly.json");
  CHECK(poly.find("\"degree\": 6") != std::string::npos);
  CHECK(poly.find("\"gamma\"") != std::string::npos);
  CHECK(poly.find("\"digits\": 50") != std::string::npos);
  CHECK(poly.find("\"coefficients\"") != std::string::npos);
}

TEST_CASE("extraction table over a scaling sweep") {
  for (const std::string s : {"-1", "0", "1"}) {
    REQUIRE(run("--outdir /tmp/p4cli extract --d 3 --ell 0 --k-list 16 --scaling " + s +
                " --out sweep_" + s + ".csv") == 0);
    std::istringstream in(slurp("/tmp/p4cli/sweep_" + s + ".csv"));
    std::string header, row;
    REQUIRE(std::getline(in, header));
    REQUIRE(std::getline(in, row));
    CHECK(header.rfind("k,scaling,H_re", 0) == 0);
    CHECK(row.find("nan") == std::string::npos);
  }
}

TEST_CASE("gamma = 0 extraction has an identically vanishing H column") {
  REQUIRE(run("--outdir /tmp/p4cli extract --d 2 --ell 1 --k-list 4,6 --scaling 0 "
              "--out h0.csv") == 0);
  std::istringstream in(slurp("/tmp/p4cli/h0.csv"));
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    // columns: k, scaling, H_re, H_im, ...
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    std::getline(row, cell, ',');
    std::getline(row, cell, ',');
    CHECK(std::abs(std::stod(cell)) < 1e-9);
    std::getline(row, cell, ',');
    CHECK(std::abs(std::stod(cell)) < 1e-9);
  }
}

TEST_CASE("critical factorization through the CLI with unfolding") {
  REQUIRE(run("--outdir /tmp/p4cli zeros --d 2 --ell 1 --k 2 --critical --t 1 --digits 50 "
              "--unfold -M 64 --out fact") == 0);
  // p_5(lambda) = lambda (lambda^2 - 1)^2: roots 0, +-1 (double).
  std::istringstream in(slurp("/tmp/p4cli/fact_roots_lambda.csv"));
  std::string line;
  std::getline(in, line);
  int near_zero = 0, near_plus = 0, near_minus = 0, rows = 0;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    double re, im;
    char comma;
    row >> re >> comma >> im;
    ++rows;
    if (std::abs(re) < 1e-6 && std::abs(im) < 1e-6) ++near_zero;
    if (std::abs(re - 1.0) < 1e-4 && std::abs(im) < 1e-4) ++near_plus;
    if (std::abs(re + 1.0) < 1e-4 && std::abs(im) < 1e-4) ++near_minus;
  }
  CHECK(rows == 5);
  CHECK(near_zero == 1);
  CHECK(near_plus == 2);
  CHECK(near_minus == 2);
}
