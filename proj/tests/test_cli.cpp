// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

#include "eigentherm/csv.hpp"
#include "oracles.hpp"

using namespace eigentherm;
namespace fs = std::filesystem;

namespace {

const fs::path kRoot = fs::temp_directory_path() / "eigentherm_test_cli";

int run(const std::string& args) {
  const std::string cmd = std::string(EIGENTHERM_CLI) + " " + args + " 2>/dev/null >/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path out(const std::string& name) {
  const fs::path p = kRoot / name;
  fs::remove_all(p);
  return p;
}

std::string checksums(const fs::path& manifest) {
  std::ifstream in(manifest);
  const auto j = nlohmann::json::parse(in);
  std::string s;
  for (const auto& o : j["outputs"]) s += o["file"].get<std::string>() + ":" + o["sha256"].get<std::string>() + "\n";
  return s;
}

}  // namespace

TEST_CASE("diag free-fermion spectrum matches subset sums") {
  const auto dir = out("diag_u0");
  REQUIRE(run("diag --m 6 --n 3 --u 0 --seed 4 --out " + dir.string()) == 0);
  const auto levels = read_csv(dir / "levels.csv");
  CHECK(levels.schema == "levels");
  const auto sums = oracle::subset_sums(levels.numbers("epsilon"), 3);
  const auto eig = read_csv(dir / "eigenvalues.csv").numbers("energy");
  REQUIRE(eig.size() == sums.size());
  for (std::size_t k = 0; k < sums.size(); ++k) CHECK(eig[k] == doctest::Approx(sums[k]).epsilon(1e-12).scale(1.0));

  const auto occ = read_csv(dir / "occupancies.csv");
  CHECK(occ.columns.size() == 2 + 6);
  CHECK(occ.rows.size() == 20);
  const auto probe = read_csv(dir / "probe.csv");
  CHECK(probe.rows.size() == 20);
  for (const char* c : {"mu", "temperature", "beta", "converged", "status", "dI2", "dJ2"}) CHECK_NOTHROW((void)probe.column(c));
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(fs::exists(dir / "dos_fit.csv"));
}

TEST_CASE("diag reruns are byte-identical") {
  const auto a = out("rerun_a");
  const auto b = out("rerun_b");
  REQUIRE(run("diag --m 8 --n 4 --u 0.3 --seed 12 --out " + a.string()) == 0);
  REQUIRE(run("diag --m 8 --n 4 --u 0.3 --seed 12 --out " + b.string()) == 0);
  CHECK(checksums(a / "manifest.json") == checksums(b / "manifest.json"));
  const auto c = out("rerun_c");
  REQUIRE(run("diag --m 8 --n 4 --u 0.3 --seed 13 --out " + c.string()) == 0);
  CHECK(checksums(a / "manifest.json") != checksums(c / "manifest.json"));
}

TEST_CASE("diag writes a dump and honours a config file") {
  const auto dir = out("config");
  fs::create_directories(dir);
  std::ofstream(dir / "run.cfg") << "# settings\nm = 6\nn = 2\nu = 0.5\nseed = 3\n";
  REQUIRE(run("diag --config " + (dir / "run.cfg").string() + " --n 3 --dump " + (dir / "spectrum.bin").string() +
              " --out " + dir.string()) == 0);
  CHECK(read_csv(dir / "eigenvalues.csv").rows.size() == 20);
  CHECK(fs::file_size(dir / "spectrum.bin") == 32 + 8 * (20 + 20 * 6));
}

TEST_CASE("usage and numerical exit codes") {
  CHECK(run("") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("diag --m 4 --n 5 --out " + out("bad_n").string()) == 2);
  CHECK(run("diag --m x --out " + out("bad_m").string()) == 2);
  CHECK(run("diag --m 4 --n 2 --u -1 --out " + out("bad_u").string()) == 2);
  CHECK(run("sweep --m 6 --n 3 --u-grid '' --out " + out("empty_grid").string()) == 2);
  CHECK(run("sweep --m 6 --n 3 --bogus 1 --out " + out("bogus").string()) == 2);
  CHECK(run("diag --m 6 --n 3 --u 0.1 --delta 1e308 --out " + out("overflow").string()) == 3);
}

TEST_CASE("sweep writes curves and critical values") {
  const auto dir = out("sweep");
  REQUIRE(run("sweep --m 6 --n 3 --realizations 3 --u-grid 0.05,0.5,2 --bins 2,4 --seed 5 --threads 2 --out " +
              dir.string()) == 0);
  const auto curves = read_csv(dir / "variance_curves.csv");
  CHECK(curves.rows.size() == 6);
  for (double u : curves.numbers("u_over_delta")) CHECK((u == 0.05 || u == 0.5 || u == 2.0));
  const auto crit = read_csv(dir / "critical_u.csv");
  CHECK(crit.rows.size() == 2);
  CHECK_NOTHROW((void)crit.column("uc1_over_delta"));
  CHECK_NOTHROW((void)crit.column("uc2_over_delta"));

  const auto again = out("sweep_again");
  REQUIRE(run("sweep --m 6 --n 3 --realizations 3 --u-grid 0.05,0.5,2 --bins 2,4 --seed 5 --threads 1 --out " +
              again.string()) == 0);
  CHECK(checksums(dir / "manifest.json") == checksums(again / "manifest.json"));
}

TEST_CASE("engine single orbital and bias edge cases") {
  const auto dir = out("engine_single");
  REQUIRE(run("engine --single-orbital --epsilon 0.5 --mu 0 --temperature 1 --dt 0.01 --out " + dir.string()) == 0);
  const auto t = read_csv(dir / "engine.csv");
  REQUIRE(t.rows.size() == 1);
  CHECK(t.number(0, "eta_max") == doctest::Approx(t.number(0, "carnot")).epsilon(1e-12));
  CHECK(t.number(0, "carnot") == doctest::Approx(0.01));
  CHECK(std::isinf(t.number(0, "ZT")));

  const auto flat = out("engine_dt0");
  REQUIRE(run("engine --single-orbital --epsilon 0.5 --mu 0 --temperature 1 --dt 0 --out " + flat.string()) == 0);
  CHECK(read_csv(flat / "engine.csv").number(0, "eta_max") == 0.0);

  CHECK(run("engine --single-orbital --epsilon 0.5 --mu 0 --temperature -1 --out " + out("neg").string()) == 2);
}

TEST_CASE("engine on diag output") {
  const auto diag = out("engine_src");
  REQUIRE(run("diag --m 8 --n 4 --u 0.2 --seed 6 --out " + diag.string()) == 0);
  const auto dir = out("engine_all");
  REQUIRE(run("engine --in " + diag.string() + " --all-lower --dt 0.02 --out " + dir.string()) == 0);
  const auto t = read_csv(dir / "engine.csv");
  REQUIRE(t.rows.size() > 10);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    CHECK(t.number(r, "temperature") > 0.0);
    CHECK(t.number(r, "ZT") >= 0.0);
    CHECK(t.number(r, "eta_max") <= t.number(r, "carnot") * (1.0 + 1e-12));
    CHECK(t.number(r, "eta_numeric") == doctest::Approx(t.number(r, "eta_max")).epsilon(1e-6).scale(1e-12));
  }

  // The top state of the spectrum has negative probe temperature.
  const auto probe = read_csv(diag / "probe.csv");
  std::size_t top = 0;
  for (std::size_t r = 0; r < probe.rows.size(); ++r)
    if (probe.number(r, "converged") == 1.0 && probe.number(r, "temperature") < 0.0) top = r;
  REQUIRE(top > 0);
  CHECK(run("engine --in " + diag.string() + " --states " + std::to_string(top + 1) + " --out " +
            out("engine_neg").string()) == 2);
  CHECK(run("engine --in " + (kRoot / "nowhere").string() + " --states 1 --out " + out("engine_io").string()) != 0);
}
