// Command-line front end: identity suites, moments, bound/asymptotic
// suites, arc censuses, constants, and transform benchmarks, with CSV/JSON
// reports.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 resource cap.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ffm/charsum.hpp"
#include "ffm/circle.hpp"
#include "ffm/errors.hpp"
#include "ffm/fqarith.hpp"
#include "ffm/identities.hpp"
#include "ffm/moments.hpp"
#include "ffm/polyring.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct RunConfig {
  int q = 2;
  int p = 0;                      // alternative field parameters: p, h, modulus
  int h = 0;
  std::string modulus;            // comma-separated coefficients, lowest first
  int r = 2;
  double k = 2.0;
  std::string n_spec = "4";       // "N" or "lo..hi"
  int Q = -1;                     // explicit Q, or -1 for the rule
  std::string q_rule = "N/3";
  std::string mode = "exact";
  std::uint64_t sweep_cap = std::uint64_t{1} << 26;
  int workers = 0;                // 0 = machine parallelism
  std::string output = "-";
  std::string format = "csv";
  int depth = 4;
  int M = 20;
  int naive_M = 7;
  double eps = 1e-3;
  double tol = 1e-12;
  double band_threshold = 3.0;
  bool corrupt_sieve = false;

  std::pair<int, int> n_range() const {
    const auto dots = n_spec.find("..");
    if (dots == std::string::npos) {
      const int n = std::stoi(n_spec);
      return {n, n};
    }
    return {std::stoi(n_spec.substr(0, dots)), std::stoi(n_spec.substr(dots + 2))};
  }

  ffm::MomentOptions moment_options() const {
    ffm::MomentOptions o;
    o.mode = mode == "float" ? ffm::SweepMode::floating : ffm::SweepMode::exact_where_possible;
    o.sweep_cap = sweep_cap;
    o.workers = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
    if (o.workers < 1) o.workers = 1;
    return o;
  }

  ffm::FieldCtx make_field() const {
    if (p > 0) {
      if (h <= 0 || modulus.empty())
        throw CLI::ValidationError("--p", "needs --hdeg and --modulus c0,c1,...,ch");
      std::vector<int> coeffs;
      std::stringstream ss(modulus);
      std::string item;
      while (std::getline(ss, item, ',')) coeffs.push_back(std::stoi(item));
      return ffm::FieldCtx(p, h, coeffs);
    }
    return ffm::FieldCtx::make(q);
  }

  void check_sweep(const ffm::PolyRing& R, int N) const {
    if (R.pow_q(N + 1) > sweep_cap)
      throw ffm::resource_error("q^{N+1} exceeds the sweep cap");
  }

  ffm::QRule make_q_rule() const {
    if (Q >= 0) {
      const int fixed = Q;
      return [fixed](int) { return fixed; };
    }
    if (q_rule == "N/3") return [](int N) { return N / 3; };
    if (q_rule == "N/4") return [](int N) { return N / 4; };
    throw CLI::ValidationError("--Q-rule", "supported rules: N/3, N/4");
  }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// Plain-text "key = value" config; flags given on the command line win.
void apply_config(RunConfig& cfg, const CLI::App* sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot read " + path);
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) continue;
    const std::string flag = "--" + key;
    const auto* opt = sub->get_option_no_throw(flag);
    if (opt != nullptr && opt->count() > 0) continue;  // flag overrides file
    if (key == "q") cfg.q = std::stoi(value);
    else if (key == "p") cfg.p = std::stoi(value);
    else if (key == "h" || key == "hdeg") cfg.h = std::stoi(value);
    else if (key == "modulus") cfg.modulus = value;
    else if (key == "r") cfg.r = std::stoi(value);
    else if (key == "k") cfg.k = std::stod(value);
    else if (key == "N") cfg.n_spec = value;
    else if (key == "Q") cfg.Q = std::stoi(value);
    else if (key == "Q-rule") cfg.q_rule = value;
    else if (key == "mode") cfg.mode = value;
    else if (key == "sweep-cap") cfg.sweep_cap = std::strtoull(value.c_str(), nullptr, 10);
    else if (key == "workers") cfg.workers = std::stoi(value);
    else if (key == "output") cfg.output = value;
    else if (key == "format") cfg.format = value;
    else if (key == "depth") cfg.depth = std::stoi(value);
    else if (key == "M") cfg.M = std::stoi(value);
    else if (key == "naive-M") cfg.naive_M = std::stoi(value);
    else if (key == "eps") cfg.eps = std::stod(value);
    else if (key == "tol") cfg.tol = std::stod(value);
    else if (key == "band-threshold") cfg.band_threshold = std::stod(value);
    else throw CLI::ValidationError("--config", "unknown key: " + key);
  }
}

void emit(const RunConfig& cfg, const std::string& csv, const json& j) {
  Output out(cfg.output);
  if (cfg.format == "json")
    out.stream() << j.dump(2) << '\n';
  else
    out.stream() << csv;
}

std::string moment_csv_row(const ffm::MomentReport& m) {
  std::ostringstream os;
  os << m.q << ',' << m.p << ',' << m.h << ',' << m.r << ',' << m.N << ',' << fmt17(m.k) << ','
     << m.M << ',' << ffm::regime_name(m.regime) << ',' << fmt17(m.I) << ','
     << fmt17(m.normalizer) << ',' << fmt17(m.ratio) << '\n';
  return os.str();
}

json moment_json(const ffm::MomentReport& m) {
  return json{{"q", m.q},       {"p", m.p},
              {"h", m.h},       {"r", m.r},
              {"N", m.N},       {"k", m.k},
              {"M", m.M},       {"regime", ffm::regime_name(m.regime)},
              {"I", m.I},       {"normalizer", m.normalizer},
              {"ratio", m.ratio}};
}

constexpr const char* kMomentHeader = "q,p,h,r,N,k,M,regime,I,normalizer,ratio\n";

int cmd_verify_identities(const RunConfig& cfg) {
  ffm::IdentityOptions opts;
  opts.depth = cfg.depth;
  opts.r = cfg.r;
  opts.corrupt_sieve = cfg.corrupt_sieve;
  const auto results = ffm::run_identity_suite(cfg.q, opts);

  std::ostringstream csv;
  csv << "identity,status,detail\n";
  json rows = json::array();
  bool all_pass = true;
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    csv << '"' << r.name << "\"," << (r.pass ? "PASS" : "FAIL") << ",\"" << r.detail << "\"\n";
    rows.push_back({{"identity", r.name}, {"status", r.pass ? "PASS" : "FAIL"}, {"detail", r.detail}});
  }
  emit(cfg, csv.str(), json{{"q", cfg.q}, {"depth", cfg.depth}, {"results", rows}});
  for (const auto& r : results)
    std::cerr << (r.pass ? "PASS " : "FAIL ") << r.name << '\n';
  return all_pass ? kExitOk : kExitVerifyFail;
}

int cmd_moments(const RunConfig& cfg) {
  const ffm::FieldCtx F = cfg.make_field();
  const ffm::PolyRing R(F);
  const auto [lo, hi] = cfg.n_range();
  ffm::SieveTable sieve(R, hi, cfg.r);
  ffm::SumFamily family(R, sieve);

  std::ostringstream csv;
  csv << kMomentHeader;
  json rows = json::array();
  for (int N = lo; N <= hi; ++N) {
    const auto rep = ffm::moment(family, cfg.k, N, cfg.moment_options());
    csv << moment_csv_row(rep);
    rows.push_back(moment_json(rep));
  }
  emit(cfg, csv.str(), json{{"rows", rows}});
  return kExitOk;
}

int cmd_bounds(const RunConfig& cfg) {
  const ffm::FieldCtx F = cfg.make_field();
  const ffm::PolyRing R(F);
  const auto [lo, hi] = cfg.n_range();
  ffm::SieveTable sieve(R, hi, cfg.r);
  ffm::SumFamily family(R, sieve);

  const auto suite =
      ffm::bound_suite(family, cfg.k, lo, hi, cfg.moment_options(), cfg.band_threshold);
  std::ostringstream csv;
  csv << kMomentHeader;
  json rows = json::array();
  for (const auto& rep : suite.rows) {
    csv << moment_csv_row(rep);
    rows.push_back(moment_json(rep));
  }
  emit(cfg, csv.str(),
       json{{"rows", rows}, {"band", suite.band}, {"stable", suite.stable}});
  std::cerr << "band (top half max/min) = " << fmt17(suite.band)
            << (suite.stable ? " [stable]" : " [UNSTABLE]") << '\n';
  return suite.stable ? kExitOk : kExitVerifyFail;
}

int cmd_asymptotic(const RunConfig& cfg) {
  const ffm::FieldCtx F = cfg.make_field();
  const ffm::PolyRing R(F);
  const auto [lo, hi] = cfg.n_range();
  const auto rep =
      ffm::asymptotic_suite(R, cfg.k, cfg.r, lo, hi, cfg.make_q_rule(), cfg.moment_options());

  std::ostringstream csv;
  csv << "q,r,k,N,Q,I,ratio,C,rel_err,minor_share\n";
  json rows = json::array();
  for (const auto& row : rep.rows) {
    csv << cfg.q << ',' << cfg.r << ',' << fmt17(cfg.k) << ',' << row.N << ',' << row.Q << ','
        << fmt17(row.I) << ',' << fmt17(row.ratio) << ',' << fmt17(rep.C) << ','
        << fmt17(row.rel_err) << ',' << fmt17(row.minor_share) << '\n';
    rows.push_back({{"N", row.N},
                    {"Q", row.Q},
                    {"I", row.I},
                    {"ratio", row.ratio},
                    {"rel_err", row.rel_err},
                    {"minor_share", row.minor_share}});
  }
  emit(cfg, csv.str(),
       json{{"C", rep.C}, {"theta", rep.theta}, {"monotone", rep.monotone}, {"rows", rows}});
  std::cerr << "C = " << fmt17(rep.C) << ", theta = " << fmt17(rep.theta)
            << (rep.monotone ? " [error decreasing]" : " [error NOT decreasing]") << '\n';
  return rep.monotone ? kExitOk : kExitVerifyFail;
}

int cmd_arcs(const RunConfig& cfg) {
  const ffm::FieldCtx F = cfg.make_field();
  const ffm::PolyRing R(F);
  const auto [lo, hi] = cfg.n_range();
  if (lo != hi) throw CLI::ValidationError("--N", "arcs wants a single N");
  cfg.check_sweep(R, lo);
  const int Q = cfg.Q >= 0 ? cfg.Q : lo / 3;
  ffm::SieveTable sieve(R, lo, cfg.r);
  ffm::SumFamily family(R, sieve);
  ffm::DissectionParams params{lo, Q, cfg.r};
  const auto census = ffm::arc_census(family, params, cfg.moment_options().workers);

  std::ostringstream csv;
  csv << "q,r,N,Q,f,ell,count,expected\n";
  json rows = json::array();
  bool counts_ok = census.partition_ok;
  for (const auto& row : census.rows) {
    counts_ok = counts_ok && row.count == row.expected;
    csv << cfg.q << ',' << cfg.r << ',' << lo << ',' << Q << ',' << row.f.str() << ','
        << row.l.str() << ',' << row.count << ',' << row.expected << '\n';
    rows.push_back({{"f", row.f.str()},
                    {"ell", row.l.str()},
                    {"count", row.count},
                    {"expected", row.expected}});
  }
  csv << cfg.q << ',' << cfg.r << ',' << lo << ',' << Q << ",MINOR,," << census.minor_count
      << ",\n";
  emit(cfg, csv.str(),
       json{{"rows", rows},
            {"minor_count", census.minor_count},
            {"minor_sup", census.minor_sup},
            {"minor_bound", census.minor_bound},
            {"partition_ok", census.partition_ok}});
  std::cerr << "minor sup |G| = " << fmt17(census.minor_sup) << ", bound " << fmt17(census.minor_bound)
            << ", ratio " << fmt17(census.minor_sup / census.minor_bound) << '\n';
  return counts_ok ? kExitOk : kExitVerifyFail;
}

int cmd_constants(const RunConfig& cfg) {
  const ffm::FieldCtx F = cfg.make_field();
  const auto cs = ffm::constants(F, cfg.k, cfg.r, cfg.eps, cfg.tol);
  std::ostringstream csv;
  csv << "q,r,k,A,B,S,S_tail,C,theta,eps\n";
  csv << cfg.q << ',' << cfg.r << ',' << fmt17(cfg.k) << ',' << fmt17(cs.A) << ',' << fmt17(cs.B)
      << ',' << fmt17(cs.S) << ',' << fmt17(cs.S_tail) << ',' << fmt17(cs.C) << ','
      << fmt17(cs.theta) << ',' << fmt17(cs.eps) << '\n';
  emit(cfg, csv.str(),
       json{{"q", cfg.q}, {"r", cfg.r}, {"k", cfg.k}, {"A", cs.A}, {"B", cs.B}, {"S", cs.S},
            {"S_tail", cs.S_tail}, {"C", cs.C}, {"theta", cs.theta}, {"eps", cs.eps}});
  return kExitOk;
}

int cmd_bench(const RunConfig& cfg) {
  using clock = std::chrono::steady_clock;
  const ffm::FieldCtx F = cfg.make_field();
  const ffm::PolyRing R(F);
  cfg.check_sweep(R, cfg.M - 1);
  std::mt19937_64 rng(7);

  // Equality first: fast must match naive exactly on random tables.
  for (int M = 1; M <= 5; ++M) {
    ffm::CoeffTable tab;
    tab.depth = M;
    tab.scale = 1;
    tab.w.resize(R.pow_q(M));
    for (auto& w : tab.w) w = static_cast<std::int64_t>(rng() % 17) - 8;
    if (!(ffm::transform_fast(F, tab) == ffm::transform_naive(F, tab))) {
      std::cerr << "bench: fast/naive mismatch at M=" << M << '\n';
      return kExitVerifyFail;
    }
  }

  ffm::CoeffTable big;
  big.depth = cfg.M;
  big.scale = 1;
  big.w.resize(R.pow_q(cfg.M));
  for (auto& w : big.w) w = static_cast<std::int64_t>(rng() % 3);

  const auto t0 = clock::now();
  const auto fast = ffm::transform_fast(F, big);
  const auto t1 = clock::now();
  const double fast_s = std::chrono::duration<double>(t1 - t0).count();

  ffm::CoeffTable small;
  small.depth = cfg.naive_M;
  small.scale = 1;
  small.w.assign(R.pow_q(cfg.naive_M), 1);
  const auto t2 = clock::now();
  const auto naive = ffm::transform_naive(F, small);
  const auto t3 = clock::now();
  const double naive_s = std::chrono::duration<double>(t3 - t2).count();

  // Naive cost scales as q^{2M}: extrapolate the measured small run.
  const double scale_up = std::pow(static_cast<double>(cfg.q), 2.0 * (cfg.M - cfg.naive_M));
  const double naive_extrapolated = naive_s * scale_up;
  const double speedup = naive_extrapolated / fast_s;

  std::ostringstream csv;
  csv << "q,M,naive_M,fast_seconds,naive_seconds,naive_extrapolated_seconds,speedup\n";
  csv << cfg.q << ',' << cfg.M << ',' << cfg.naive_M << ',' << fmt17(fast_s) << ','
      << fmt17(naive_s) << ',' << fmt17(naive_extrapolated) << ',' << fmt17(speedup) << '\n';
  emit(cfg, csv.str(),
       json{{"q", cfg.q}, {"M", cfg.M}, {"fast_seconds", fast_s},
            {"naive_seconds", naive_s}, {"naive_extrapolated_seconds", naive_extrapolated},
            {"speedup", speedup}});
  std::cerr << "fast " << fast_s << " s on " << fast.size() << " points, naive " << naive_s
            << " s on " << naive.size() << " points, speedup " << fmt17(speedup) << "x\n";
  return speedup >= 50.0 ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact exponential-sum moments over F_q[t]: transforms, sieves, and the circle-method toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  if (const char* cap = std::getenv("FFM_SWEEP_CAP")) {
    cfg.sweep_cap = std::strtoull(cap, nullptr, 10);
    if (cfg.sweep_cap == 0) cfg.sweep_cap = std::uint64_t{1} << 26;
  }

  std::string config_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "plain-text key = value config; flags override");
    sub->add_option("--q", cfg.q, "field size (prime power with a shipped modulus)");
    sub->add_option("--p", cfg.p, "field characteristic (with --h and --modulus)");
    sub->add_option("--hdeg", cfg.h, "extension degree h over F_p");
    sub->add_option("--modulus", cfg.modulus, "monic irreducible, coefficients c0,c1,...,ch");
    sub->add_option("--r", cfg.r, "power-free exponent r >= 2");
    sub->add_option("--workers", cfg.workers, "worker threads (0 = machine, 1 = bit-reproducible)");
    sub->add_option("--sweep-cap", cfg.sweep_cap, "max q^{N+1} sweep size");
    sub->add_option("--output", cfg.output, "output path ('-' for stdout)");
    sub->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--mode", cfg.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  };

  auto* verify = app.add_subcommand("verify-identities", "run the exact identity suite");
  add_common(verify);
  verify->add_option("--depth", cfg.depth, "torus depth for exhaustive checks");
  verify->add_flag("--corrupt-sieve", cfg.corrupt_sieve)->group("");  // negative-control hook

  auto* moments = app.add_subcommand("moments", "moments I_r(k) over an N or N range");
  add_common(moments);
  moments->add_option("--k", cfg.k, "moment order k > 0");
  moments->add_option("--N", cfg.n_spec, "N or lo..hi");

  auto* bounds = app.add_subcommand("bounds", "regime-normalized ratio bands over an N range");
  add_common(bounds);
  bounds->add_option("--k", cfg.k);
  bounds->add_option("--N", cfg.n_spec);
  bounds->add_option("--band-threshold", cfg.band_threshold);

  auto* asym = app.add_subcommand("asymptotic", "compare I/q^{N(k-1)} against the constant C");
  add_common(asym);
  asym->add_option("--k", cfg.k);
  asym->add_option("--N", cfg.n_spec);
  asym->add_option("--Q", cfg.Q, "fixed Q (otherwise --Q-rule)");
  asym->add_option("--Q-rule", cfg.q_rule, "N/3 (default) or N/4");

  auto* arcs = app.add_subcommand("arcs", "major/minor arc census at one (N, Q)");
  add_common(arcs);
  arcs->add_option("--N", cfg.n_spec);
  arcs->add_option("--Q", cfg.Q);

  auto* consts = app.add_subcommand("constants", "closed-form constants A, B, S, C, theta");
  add_common(consts);
  consts->add_option("--k", cfg.k);
  consts->add_option("--eps", cfg.eps, "epsilon folded into theta");
  consts->add_option("--tol", cfg.tol, "singular series tail tolerance");

  auto* bench = app.add_subcommand("bench", "fast vs naive transform timing");
  add_common(bench);
  bench->add_option("--M", cfg.M, "fast transform depth");
  bench->add_option("--naive-M", cfg.naive_M, "naive transform depth (<= 8)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!config_path.empty()) {
      for (const auto* sub : {verify, moments, bounds, asym, arcs, consts, bench})
        if (sub->parsed()) apply_config(cfg, sub, config_path);
    }
    if (verify->parsed()) return cmd_verify_identities(cfg);
    if (moments->parsed()) return cmd_moments(cfg);
    if (bounds->parsed()) return cmd_bounds(cfg);
    if (asym->parsed()) return cmd_asymptotic(cfg);
    if (arcs->parsed()) return cmd_arcs(cfg);
    if (consts->parsed()) return cmd_constants(cfg);
    if (bench->parsed()) return cmd_bench(cfg);
  } catch (const ffm::resource_error& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerifyFail;
  }
  return kExitUsage;
}
