#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"
#include "ppi/matrix_io.hpp"
#include "ppi/synthesis.hpp"

using nlohmann::json;
using ppi::Matrix;

namespace {

struct CliResult {
  int exit_code;
  std::string output;  // stdout and stderr combined
};

CliResult run_cli(const std::string& args) {
  const char* bin = std::getenv("PPI_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "PPI_BIN must point at the CLI binary");
  const std::string cmd = std::string(bin) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) {
    output.append(buf, got);
  }
  const int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  return {WEXITSTATUS(status), output};
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "ppi_cli_scratch";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_matrix(const std::string& name, const Matrix& m) {
  const auto path = scratch_dir() / name;
  ppi::write_matrix_file(m, path.string());
  return path.string();
}

}  // namespace

TEST_CASE("analyze prints index, ascent and multiplicities") {
  const std::string path = write_matrix("jordan4.json", ppi::jordan_block(4));
  const CliResult r = run_cli("analyze " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("p=inf a=4") != std::string::npos);
  CHECK(r.output.find("A^1=yes") != std::string::npos);
  CHECK(r.output.find("geo0=1 alg0=4") != std::string::npos);

  const std::string halves = write_matrix("halves.json", 0.5 * Matrix::Identity(3, 3));
  const CliResult r2 = run_cli("analyze " + halves);
  CHECK(r2.exit_code == 0);
  CHECK(r2.output.find("p=0 a=0") != std::string::npos);
}

TEST_CASE("analyze --json is machine readable") {
  const std::string path = write_matrix("jordan3.json", ppi::jordan_block(3));
  const CliResult r = run_cli("analyze --json " + path);
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.output);
  CHECK(doc.at("n") == 3);
  CHECK(doc.at("p") == "inf");
  CHECK(doc.at("a") == 3);
  CHECK(doc.at("geo0") == 1);
  CHECK(doc.at("alg0") == 3);

  const std::string halves = write_matrix("halves2.json", 0.5 * Matrix::Identity(2, 2));
  const json doc2 = json::parse(run_cli("analyze --json " + halves).output);
  CHECK(doc2.at("p") == 0);
}

TEST_CASE("analyze honors the tolerance flags") {
  const std::string halves = write_matrix("halves3.json", 0.5 * Matrix::Identity(3, 3));
  const CliResult loose = run_cli("--rank-tol 0.9 analyze " + halves);
  CHECK(loose.exit_code == 0);
  CHECK(loose.output.find("a=1") != std::string::npos);

  const std::string witness = write_matrix("cii.json", ppi::synthesize(1, 4, 5).first);
  const CliResult strict = run_cli("--proj-tol 1e-18 analyze " + witness);
  CHECK(strict.exit_code == 0);
  CHECK(strict.output.find("p=0") != std::string::npos);
  const CliResult normal = run_cli("analyze " + witness);
  CHECK(normal.output.find("p=1 a=4") != std::string::npos);
}

TEST_CASE("analyze input failures exit with code 2") {
  CHECK(run_cli("analyze /nonexistent/m.json").exit_code == 2);

  const auto garbage = scratch_dir() / "garbage.json";
  {
    std::ofstream out(garbage);
    out << "{ not json";
  }
  CHECK(run_cli("analyze " + garbage.string()).exit_code == 2);

  const auto mismatched = scratch_dir() / "mismatched.json";
  {
    std::ofstream out(mismatched);
    out << R"({"rows": 2, "cols": 2, "entries": [[[0.0, 0.0]]]})";
  }
  const CliResult r = run_cli("analyze " + mismatched.string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("error:") != std::string::npos);
}

TEST_CASE("synthesize writes the witness matrix") {
  const auto out = scratch_dir() / "witness_c1.json";
  const CliResult r = run_cli("synthesize 4 1 3 --out " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("case C_I") != std::string::npos);
  CHECK(r.output.find("wrote " + out.string()) != std::string::npos);
  const Matrix written = ppi::read_matrix_file(out.string());
  CHECK(ppi::max_abs(written - ppi::synthesize(1, 3, 4).first) == 0.0);
}

TEST_CASE("synthesize --json reports the dispatch tag") {
  const auto out = scratch_dir() / "witness_b2.json";
  const CliResult r = run_cli("synthesize 5 1 3 --json --out " + out.string());
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.output);
  CHECK(doc.at("tag") == "B_II");
  CHECK(doc.at("n") == 5);
  CHECK(doc.at("j") == 1);
  CHECK(doc.at("k") == 3);
}

TEST_CASE("synthesize rejects infeasible triples with exit code 1") {
  const CliResult r = run_cli("synthesize 3 1 2");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("no 3x3 matrix") != std::string::npos);
}

TEST_CASE("feasible lists the attainable pairs") {
  const CliResult r = run_cli("feasible 2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("j k condition") != std::string::npos);
  CHECK(r.output.find("0 0 A") != std::string::npos);
  CHECK(r.output.find("0 1 B") != std::string::npos);
  CHECK(r.output.find("0 2 C") != std::string::npos);
  CHECK(r.output.find("1 1 A") != std::string::npos);

  const json doc = json::parse(run_cli("feasible 2 --json").output);
  CHECK(doc.at("pairs").size() == 4);

  CHECK(run_cli("feasible 0").exit_code == 2);
}

TEST_CASE("verify re-analyzes every witness") {
  const CliResult r = run_cli("verify 5");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("0 failed") != std::string::npos);

  const json doc = json::parse(run_cli("verify 4 --json").output);
  CHECK(doc.at("failed") == 0);
  std::size_t expected = 0;
  for (int n = 1; n <= 4; ++n) expected += ppi::feasible_pairs(n).size();
  CHECK(doc.at("checked") == expected);

  CHECK(run_cli("verify 0").exit_code == 2);
}

TEST_CASE("decompose writes the block files and a manifest") {
  const std::string path = write_matrix("jordan3_dec.json", ppi::jordan_block(3));
  const auto prefix = scratch_dir() / "jordan3_blocks";
  const CliResult r = run_cli("decompose " + path + " 2 --out " + prefix.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("dims: 1 1 1") != std::string::npos);

  const json manifest = json::parse(std::ifstream(prefix.string() + ".manifest.json"));
  CHECK(manifest.at("j") == 2);
  CHECK(manifest.at("dims") == json::array({1, 1, 1}));
  CHECK(manifest.at("max_residual").get<double>() <= 1e-8);

  const Matrix q = ppi::read_matrix_file(manifest.at("files").at("Q").get<std::string>());
  CHECK(ppi::max_abs(q - Matrix::Identity(3, 3)) <= 1e-12);
  const Matrix b = ppi::read_matrix_file(manifest.at("files").at("B").get<std::string>());
  CHECK(ppi::max_abs(b - Matrix::Ones(1, 1)) <= 1e-12);
  CHECK(std::filesystem::exists(manifest.at("files").at("A1").get<std::string>()));
  CHECK(std::filesystem::exists(manifest.at("files").at("C").get<std::string>()));
}

TEST_CASE("decompose precondition failures exit with code 1") {
  Matrix diag = Matrix::Zero(2, 2);
  diag(1, 1) = 0.5;
  const std::string path = write_matrix("not_pi.json", diag);
  const CliResult r = run_cli("decompose " + path + " 1");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("A^1 is not a partial isometry") != std::string::npos);
}

TEST_CASE("decompose domain validation exits with code 2") {
  const std::string path = write_matrix("halves_dec.json", 0.5 * Matrix::Identity(2, 2));
  const CliResult r = run_cli("decompose " + path + " 1");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("outside [1, ascent = 0]") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("unknown-subcommand").exit_code == 2);
  CHECK(run_cli("analyze").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}
