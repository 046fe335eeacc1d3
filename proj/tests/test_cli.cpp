#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "qubogs_cli_test";

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Run run(const std::string& args, const std::string& env = {}) {
  fs::create_directories(kWork);
  const auto out = kWork / "stdout.txt";
  const auto err = kWork / "stderr.txt";
  const std::string cmd = env + " \"" QUBOGS_CLI_PATH "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                          err.string() + "\"";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

fs::path write_config(const std::string& name, const std::string& text) {
  fs::create_directories(kWork);
  const auto path = kWork / name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("solve succeeds and writes its outputs") {
  const auto cfg = write_config("ok.ini", "[problem]\nm = 5\n[solver]\nbackend = exact\nblocks = 4\ntolerance = 1e-8\n");
  const auto dir = kWork / "ok";
  fs::remove_all(dir);
  const auto r = run("solve " + cfg.string() + " --out-dir " + dir.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("converged: yes") != std::string::npos);
  for (const char* f : {"trace.csv", "field.csv", "field.pgm", "summary.txt"}) CHECK(fs::exists(dir / f));
}

TEST_CASE("non-convergence exits with 2 and still writes files") {
  const auto cfg =
      write_config("slow.ini", "[problem]\nm = 5\n[solver]\nbackend = exact\nblocks = 16\ntolerance = 1e-14\nmax_iters = 2\n");
  const auto dir = kWork / "slow";
  fs::remove_all(dir);
  const auto r = run("solve " + cfg.string() + " --out-dir " + dir.string());
  CHECK(r.code == 2);
  CHECK(r.out.find("converged: no") != std::string::npos);
  CHECK(fs::exists(dir / "trace.csv"));
}

TEST_CASE("configuration problems exit with 1 and name the field") {
  const auto bad = write_config("bad.ini", "[solver]\nbits = many\n");
  const auto r = run("solve " + bad.string());
  CHECK(r.code == 1);
  CHECK(r.err.find("solver.bits") != std::string::npos);

  CHECK(run("solve " + (kWork / "missing.ini").string()).code == 1);
  CHECK(run("").code == 1);
  CHECK(run("frobnicate").code == 1);

  const auto ok = write_config("exact.ini", "[problem]\nm = 3\n[solver]\nbackend = exact\nblocks = 2\n");
  const auto backend = run("solve " + ok.string() + " --backend qpu --out-dir " + (kWork / "x").string());
  CHECK(backend.code == 1);
  CHECK(backend.err.find("--backend") != std::string::npos);
}

TEST_CASE("output directory falls back to the environment") {
  const auto cfg = write_config("env.ini", "[problem]\nm = 3\n[solver]\nbackend = exact\nblocks = 2\n");
  const auto dir = kWork / "from_env";
  fs::remove_all(dir);
  CHECK(run("solve " + cfg.string(), "QUBOGS_OUT_DIR=" + dir.string()).code == 0);
  CHECK(fs::exists(dir / "summary.txt"));
}

TEST_CASE("seed and backend overrides reach the sweep") {
  const auto cfg = write_config("sweep.ini",
                                "[problem]\nm = 3\n[solver]\nblocks = 2\nbits = 4\nnum_reads = 4\nsweeps = 20\n"
                                "max_iters = 3\n[sweep]\nbackends = exact, sa\nseeds = 1, 2\n");
  const auto dir = kWork / "sweep";
  fs::remove_all(dir);
  const auto r = run("sweep " + cfg.string() + " --seed 77 --backend sa --out-dir " + dir.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("combinations: 1") != std::string::npos);
  CHECK(fs::exists(dir / "traces" / "sa_R4_D2_g0.8_s77.csv"));
}

TEST_CASE("render writes a PGM and prints an ASCII preview") {
  const auto csv = write_config("field.csv", "i,j,x,y,T\n0,0,0,0,0\n1,0,1,0,5\n0,1,0,1,5\n1,1,1,1,10\n");
  const auto pgm = kWork / "field.pgm";
  const auto r = run("render " + csv.string() + " " + pgm.string());
  CHECK(r.code == 0);
  CHECK(slurp(pgm) == "P2\n2 2\n255\n128 255\n0 128\n");
  CHECK(r.out == "+@\n +\n");

  const auto broken = write_config("broken.csv", "i,j\n");
  CHECK(run("render " + broken.string() + " " + pgm.string()).code == 1);
}
