// Integration tests for the command-line tool: exit codes, report schemas,
// known values, the resource cap, and byte-identical reruns.
//
// Usage: cli_tests <path-to-ffmoments-binary>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string g_binary;
int g_failures = 0;

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run(const std::string& args, const std::string& env = "") {
  const std::string out_path = "/tmp/ffm_cli_out.txt";
  const std::string cmd = env + (env.empty() ? "" : " ") + g_binary + " " + args + " > " +
                          out_path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.stdout_text = ss.str();
  return r;
}

void expect(bool ok, const std::string& what) {
  std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
  if (!ok) ++g_failures;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_tests <ffmoments binary>\n");
    return 2;
  }
  g_binary = argv[1];

  // Identity suite passes for the shipped fields, including the nontrivial
  // trace path at q = 4.
  for (const std::string q : {"2", "3", "4"}) {
    const RunResult r = run("verify-identities --q " + q + " --depth 4");
    expect(r.exit_code == 0, "verify-identities exits 0 at q=" + q);
  }

  // Negative control: a corrupted sieve must fail the count identity.
  {
    const RunResult r = run("verify-identities --q 2 --depth 4 --corrupt-sieve");
    expect(r.exit_code == 1, "corrupted sieve fails with exit 1");
  }

  // Known moment row.
  {
    const RunResult r = run("moments --q 2 --r 2 --k 2 --N 4");
    expect(r.exit_code == 0, "moments exits 0");
    expect(contains(r.stdout_text, "q,p,h,r,N,k,M,regime,I,normalizer,ratio"),
           "moments CSV header");
    expect(contains(r.stdout_text, "2,2,1,2,4,2,5,super,17,16,1.0625"),
           "moments row I=17 at q=2,r=2,k=2,N=4");
  }

  // Constants: C = 1, B = 2, S = 2 at q=2, r=2, k=2 (within print precision).
  {
    const RunResult r = run("constants --q 2 --r 2 --k 2 --format json");
    expect(r.exit_code == 0, "constants exits 0");
    expect(contains(r.stdout_text, "\"A\": 2.0"), "constants A=2");
    expect(contains(r.stdout_text, "\"B\": 2.0"), "constants B=2");
    expect(contains(r.stdout_text, "\"C\": 0.9999999999"), "constants C=1 to tolerance");
  }

  // Arc census partitions and matches predicted measures.
  {
    const RunResult r = run("arcs --q 2 --r 2 --N 10 --Q 3");
    expect(r.exit_code == 0, "arcs exits 0");
    expect(contains(r.stdout_text, "1,0,16,16"), "zero arc count 2^{M-(N-Q)}");
    expect(contains(r.stdout_text, "MINOR"), "census reports the minor row");
  }

  // Bound bands and the asymptotic comparison drive their suites.
  {
    const RunResult r = run("bounds --q 2 --r 2 --k 1.5 --N 6..12");
    expect(r.exit_code == 0, "bounds exits 0 on a stable band");
    expect(contains(r.stdout_text, "critical"), "bounds rows carry the regime");
    const RunResult a = run("asymptotic --q 2 --r 2 --k 2 --N 6..12 --format json");
    expect(a.exit_code == 0, "asymptotic exits 0 with decreasing error");
    expect(contains(a.stdout_text, "\"monotone\": true"), "asymptotic reports monotone");
  }

  // Usage errors exit 2.
  {
    const RunResult bad_flag = run("moments --q 2 --no-such-flag 1");
    expect(bad_flag.exit_code == 2, "unknown flag exits 2");
    const RunResult bad_sub = run("frobnicate");
    expect(bad_sub.exit_code == 2, "unknown subcommand exits 2");
    const RunResult bad_k = run("moments --q 2 --r 2 --k -1 --N 3");
    expect(bad_k.exit_code == 2, "domain error (k <= 0) exits 2");
  }

  // Resource cap exits 3, via flag and via environment.
  {
    const RunResult by_flag = run("moments --q 2 --r 2 --k 2 --N 12 --sweep-cap 1024");
    expect(by_flag.exit_code == 3, "sweep cap by flag exits 3");
    const RunResult by_env = run("moments --q 2 --r 2 --k 2 --N 12", "FFM_SWEEP_CAP=1024");
    expect(by_env.exit_code == 3, "sweep cap by FFM_SWEEP_CAP exits 3");
  }

  // Byte-identical CSV across repeated single-worker runs.
  {
    const std::string a = "/tmp/ffm_det_a.csv";
    const std::string b = "/tmp/ffm_det_b.csv";
    run("moments --q 2 --r 2 --k 1.5 --N 4..9 --workers 1 --output " + a);
    run("moments --q 2 --r 2 --k 1.5 --N 4..9 --workers 1 --output " + b);
    const std::string sa = slurp(a);
    expect(!sa.empty() && sa == slurp(b), "single-worker CSV reruns are byte-identical");
    // Multi-worker output agrees with single-worker on the same rows.
    const std::string c = "/tmp/ffm_det_c.csv";
    run("moments --q 2 --r 2 --k 1.5 --N 4..9 --workers 4 --output " + c);
    expect(slurp(c).size() == sa.size(), "multi-worker CSV has the same shape");
  }

  // Config file supplies defaults; flags override.
  {
    const std::string cfg = "/tmp/ffm_cfg.ini";
    std::ofstream(cfg) << "q = 2\nr = 2\nk = 2\nN = 4\n";
    const RunResult r = run("moments --config " + cfg);
    expect(r.exit_code == 0 && contains(r.stdout_text, ",17,16,"),
           "config file drives a run");
    const RunResult over = run("moments --config " + cfg + " --N 5");
    expect(over.exit_code == 0 && contains(over.stdout_text, ",33,32,"),
           "flags override the config file (N=5 gives I=33)");
  }

  // JSON format mirrors the CSV fields.
  {
    const RunResult r = run("moments --q 2 --r 2 --k 2 --N 4 --format json");
    expect(r.exit_code == 0 && contains(r.stdout_text, "\"I\": 17.0"), "JSON mirrors I");
    expect(contains(r.stdout_text, "\"regime\": \"super\""), "JSON mirrors regime");
  }

  // Bench: equality precheck plus a wide fast-vs-naive margin.
  {
    const RunResult r = run("bench --q 2 --M 16 --naive-M 7");
    expect(r.exit_code == 0, "bench exits 0 (speedup >= 50x)");
    expect(contains(r.stdout_text, "speedup"), "bench reports speedup");
  }

  if (g_failures > 0) std::printf("%d CLI checks failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
