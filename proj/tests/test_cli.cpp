#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

// Golden tests against the installed command line surface. TIMM_CLI_PATH is
// injected by the build; every test works in its own scratch directory.

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string out;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(TIMM_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, got);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "timm_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.is_open());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool has(const RunResult& r, const std::string& needle) {
  return r.out.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("gen writes a file and prints the degree summary") {
  const auto path = scratch("t6.tournament");
  const auto r = run_cli("gen transitive --n 6 -o " + path.string());
  CHECK(r.code == 0);
  CHECK(has(r, "n=6 min-out=0 max-out=5"));
  CHECK(fs::exists(path));
}

TEST_CASE("gen replays byte-identically per seed") {
  const auto a = scratch("r20a.tournament");
  const auto b = scratch("r20b.tournament");
  const auto c = scratch("r20c.tournament");
  CHECK(run_cli("gen random --n 20 --seed 5 -o " + a.string()).code == 0);
  CHECK(run_cli("gen random --n 20 --seed 5 -o " + b.string()).code == 0);
  CHECK(run_cli("gen random --n 20 --seed 6 -o " + c.string()).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) != slurp(c));
}

TEST_CASE("gen argument failures") {
  const auto out = scratch("never.tournament");
  // Two part sizes where three are expected: rejected during parsing.
  CHECK(run_cli("gen triangle-blowup --parts 1,2 -o " + out.string()).code != 0);
  // Parameters that only the generator itself can refuse.
  const auto r = run_cli("gen min-outdegree --k 1 --n 5 -o " + out.string());
  CHECK(r.code == 2);
  CHECK(has(r, "error:"));
}

TEST_CASE("find tt round-trips through verify") {
  const auto t = scratch("t80.tournament");
  const auto cert = scratch("t80.cert");
  REQUIRE(run_cli("gen transitive --n 80 -o " + t.string()).code == 0);

  const auto found = run_cli("find tt -i " + t.string() + " -k 4 -o " + cert.string());
  CHECK(found.code == 0);
  CHECK(has(found, "result: found"));
  CHECK(has(found, "via: "));

  const auto ok = run_cli("verify -i " + t.string() + " -c " + cert.string());
  CHECK(ok.code == 0);
  CHECK(has(ok, "ok"));
}

TEST_CASE("find tt reports failure on the tight regular instance") {
  const auto t = scratch("r5.tournament");
  REQUIRE(run_cli("gen regular --n 5 -o " + t.string()).code == 0);
  const auto r = run_cli("find tt -i " + t.string() + " -k 4");
  CHECK(r.code == 1);
  CHECK(has(r, "result: failure"));
  CHECK(has(r, "best_good:"));
}

TEST_CASE("find kd round-trips and prints its trace") {
  const auto t = scratch("nr237.tournament");
  const auto cert = scratch("nr237.cert");
  REQUIRE(run_cli("gen near-regular --n 237 --seed 3 -o " + t.string()).code == 0);

  const auto found = run_cli("find kd -i " + t.string() + " -k 2 -o " + cert.string());
  CHECK(found.code == 0);
  CHECK(has(found, "trace: steps="));

  const auto ok = run_cli("verify -i " + t.string() + " -c " + cert.string());
  CHECK(ok.code == 0);
}

TEST_CASE("find kd distinguishes strict refusal from best-effort exhaustion") {
  const auto t = scratch("mo3.tournament");
  REQUIRE(run_cli("gen min-outdegree --k 3 --n 200 -o " + t.string()).code == 0);

  const auto strict = run_cli("find kd -i " + t.string() + " -k 3");
  CHECK(strict.code == 1);
  CHECK(has(strict, "result: infeasible"));

  const auto loose = run_cli("find kd --best-effort -i " + t.string() + " -k 3");
  CHECK(loose.code == 1);
  CHECK(has(loose, "result: exhausted"));
  CHECK(has(loose, "reason: "));
}

TEST_CASE("oracle settles the directed triangle both ways") {
  const auto t = scratch("c3.tournament");
  const auto cert = scratch("c3.cert");
  REQUIRE(run_cli("gen regular --n 3 -o " + t.string()).code == 0);

  const auto none = run_cli("oracle find tt -i " + t.string() + " -k 3");
  CHECK(none.code == 1);
  CHECK(has(none, "result: exhausted"));

  const auto kd = run_cli("oracle find kd -i " + t.string() + " -k 2 -o " + cert.string());
  CHECK(kd.code == 0);
  CHECK(has(kd, "result: found"));
  CHECK(has(kd, "nodes: "));

  // The return path 1 -> 2 -> 0 exceeds a one-edge cap.
  const auto tight =
      run_cli("verify --max-len 1 -i " + t.string() + " -c " + cert.string());
  CHECK(tight.code == 1);
  CHECK(has(tight, "violation: "));
}

TEST_CASE("oracle reports unknown when the node budget runs out") {
  const auto t = scratch("b444.tournament");
  REQUIRE(run_cli("gen triangle-blowup --parts 4,4,4 -o " + t.string()).code == 0);
  const auto r = run_cli("oracle find kd --budget 1 -i " + t.string() + " -k 4");
  CHECK(r.code == 4);
  CHECK(has(r, "result: unknown"));
}

TEST_CASE("fbound reports both variants and writes the witness") {
  const auto small = run_cli("oracle fbound -k 3");
  CHECK(small.code == 0);
  CHECK(has(small, "strong: f(3) = 4"));
  CHECK(has(small, "plain: f(3) = 4"));

  const auto witness = scratch("f4.witness");
  const auto open_ended =
      run_cli("oracle fbound -k 4 --n-max 5 --witness " + witness.string());
  CHECK(open_ended.code == 1);
  CHECK(has(open_ended, "strong: f(4) > 5 (counterexample at n=5)"));
  CHECK(fs::exists(witness));
}

TEST_CASE("experiment writes the CSV record and a JSON summary") {
  const auto csv = scratch("exp.csv");
  const auto json = scratch("exp.json");
  const auto r = run_cli("experiment --task tt --k 3..4 --n-rule 8k --generator random"
                         " --trials 2 --out-csv " + csv.string() +
                         " --out-json " + json.string());
  CHECK(r.code == 0);
  CHECK(has(r, "experiment: 4 rows"));

  const std::string record = slurp(csv);
  CHECK(record.rfind("task,k,n,generator,params,seed,trial,mode,outcome,detail,"
                     "certificate,wall_ms\n", 0) == 0);

  const auto summary = nlohmann::json::parse(slurp(json));
  CHECK(summary.at("task") == "tt");
  REQUIRE(summary.at("cells").size() == 2);
  for (const auto& cell : summary.at("cells")) CHECK(cell.at("trials") == 2);
}

TEST_CASE("missing inputs are parse failures") {
  const auto r = run_cli("find tt -i /nonexistent.tournament -k 3");
  CHECK(r.code == 2);
  CHECK(has(r, "parse error"));
}

TEST_CASE("bad invocations are rejected") {
  CHECK(run_cli("find tt -i whatever").code != 0);   // missing -k
  CHECK(run_cli("frobnicate").code != 0);            // unknown subcommand
  CHECK(run_cli("").code != 0);                      // a subcommand is required
}
