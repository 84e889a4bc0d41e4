#include "ffm/moments.hpp"

#include <cmath>
#include <stdexcept>

#include "ffm/errors.hpp"
#include "ffm/parallel.hpp"

namespace ffm {
namespace {

constexpr double kCriticalTol = 1e-9;

// Neumaier compensated sum; keeps 1e-10 tolerances honest at 2^26 terms.
struct Kahan {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

double pow_qd(int q, double e) { return std::pow(static_cast<double>(q), e); }

}  // namespace

Regime regime_of(double k, int r) {
  const double critical = 1.0 + 1.0 / r;
  if (std::abs(k - critical) < kCriticalTol) return Regime::critical;
  return k < critical ? Regime::sub : Regime::super;
}

std::string regime_name(Regime g) {
  switch (g) {
    case Regime::sub: return "sub";
    case Regime::critical: return "critical";
    case Regime::super: return "super";
  }
  return "?";
}

Rat moment2_exact(const SumFamily& family, int N, const MomentOptions& opts) {
  const PolyRing& R = family.ring();
  const FieldCtx& F = R.field();
  const std::uint64_t size = R.pow_q(N + 1);
  if (size > opts.sweep_cap) throw resource_error("moment2_exact: sweep cap exceeded");

  const CoeffTable tab = family.build_G(N);
  const ExactTable values = transform_fast(F, tab, opts.workers);

  if (F.p() == 2) {
    std::vector<__int128> partial(static_cast<std::size_t>(std::max(opts.workers, 1)), 0);
    parallel_ranges(values.size(), opts.workers, [&](std::uint64_t b, std::uint64_t e, int wkr) {
      __int128 acc = 0;
      for (std::uint64_t i = b; i < e; ++i) {
        const std::int64_t v = values.raw(i)[0];
        acc += static_cast<__int128>(v) * v;
      }
      partial[static_cast<std::size_t>(wkr)] = acc;
    });
    __int128 total = 0;
    for (const auto x : partial) total += x;
    // total / q^M, exact.
    const auto m = static_cast<std::int64_t>(size);
    if (total % m != 0) {
      // Falls back to a Rat with reduction; the Parseval identity makes this
      // unreachable for integer tables.
      return Rat(static_cast<std::int64_t>(total), m);
    }
    return Rat(static_cast<std::int64_t>(total / m));
  }

  // General p: accumulate v * conj(v) coefficientwise, then reduce.
  SumValue acc(F.p());
  for (std::uint64_t i = 0; i < values.size(); ++i) {
    const SumValue v = values.value(i);
    acc += v * v.conj();
  }
  const auto rat = acc.as_rational(static_cast<std::int64_t>(size));
  if (!rat.has_value())
    throw std::logic_error("moment2_exact: second moment failed to reduce to a rational");
  return *rat;
}

MomentReport moment(const SumFamily& family, double k, int N, const MomentOptions& opts) {
  if (k <= 0) throw std::domain_error("moment: need k > 0");
  const PolyRing& R = family.ring();
  const FieldCtx& F = R.field();
  const int r = family.sieve().r();
  const std::uint64_t size = R.pow_q(N + 1);
  if (size > opts.sweep_cap) throw resource_error("moment: sweep cap exceeded (q^{N+1} too large)");

  MomentReport rep;
  rep.q = F.q();
  rep.p = F.p();
  rep.h = F.h();
  rep.r = r;
  rep.N = N;
  rep.k = k;
  rep.M = N + 1;
  rep.regime = regime_of(k, r);

  const CoeffTable tab = family.build_G(N);
  const ComplexTable values = transform_fast_complex(F, tab, opts.workers);

  std::vector<Kahan> partial(static_cast<std::size_t>(std::max(opts.workers, 1)));
  parallel_ranges(values.size(), opts.workers, [&](std::uint64_t b, std::uint64_t e, int wkr) {
    Kahan acc;
    for (std::uint64_t i = b; i < e; ++i) acc.add(std::pow(std::norm(values.v[i]), k / 2.0));
    partial[static_cast<std::size_t>(wkr)] = acc;
  });
  Kahan total;
  for (const auto& x : partial) total.add(x.value());
  rep.I = total.value() / static_cast<double>(size);

  const bool is_two =
      std::abs(k - 2.0) < 1e-15 && opts.mode == SweepMode::exact_where_possible;
  if (is_two) {
    const Rat exact = moment2_exact(family, N, opts);
    const double exact_d = exact.to_double();
    if (std::abs(rep.I - exact_d) > 1e-9 * std::max(1.0, exact_d))
      throw std::logic_error("moment: floating k=2 moment disagrees with the exact Parseval value");
    rep.I = exact_d;
    rep.exact_checked = true;
  }

  switch (rep.regime) {
    case Regime::sub:
      rep.normalizer = pow_qd(F.q(), static_cast<double>(N) * k / (r + 1));
      break;
    case Regime::critical:
      rep.normalizer = N > 0 ? N * pow_qd(F.q(), static_cast<double>(N) / r) : 1.0;
      break;
    case Regime::super:
      rep.normalizer = pow_qd(F.q(), static_cast<double>(N) * (k - 1.0));
      break;
  }
  rep.ratio = rep.I / rep.normalizer;
  return rep;
}

BoundSuite bound_suite(const SumFamily& family, double k, int N_lo, int N_hi,
                       const MomentOptions& opts, double band_threshold) {
  if (N_lo < 1 || N_hi < N_lo) throw std::domain_error("bound_suite: bad N range");
  BoundSuite suite;
  suite.band_threshold = band_threshold;
  for (int N = N_lo; N <= N_hi; ++N) suite.rows.push_back(moment(family, k, N, opts));

  const int half_begin = N_lo + (N_hi - N_lo + 1) / 2;
  double lo = 0, hi = 0;
  bool first = true;
  for (const auto& row : suite.rows) {
    if (row.N < half_begin) continue;
    if (first) { lo = hi = row.ratio; first = false; }
    lo = std::min(lo, row.ratio);
    hi = std::max(hi, row.ratio);
  }
  suite.band = first || lo <= 0 ? 0.0 : hi / lo;
  suite.stable = suite.band <= band_threshold && !first;
  return suite;
}

AsymptoticReport asymptotic_suite(const PolyRing& R, double k, int r, int N_lo, int N_hi,
                                  const QRule& q_rule, const MomentOptions& opts) {
  if (k <= 1.0 + 1.0 / r + kCriticalTol)
    throw std::domain_error("asymptotic_suite: requires k > 1 + 1/r");
  if (N_lo < 3 || N_hi < N_lo) throw std::domain_error("asymptotic_suite: bad N range");
  const FieldCtx& F = R.field();
  const QRule rule = q_rule ? q_rule : [](int N) { return N / 3; };

  AsymptoticReport rep;
  rep.k = k;
  rep.r = r;
  const Constants cs = constants(F, k, r);
  rep.C = cs.C;
  rep.theta = cs.theta;

  SieveTable sieve(R, N_hi, r);
  SumFamily family(R, sieve);

  for (int N = N_lo; N <= N_hi; ++N) {
    const std::uint64_t size = R.pow_q(N + 1);
    if (size > opts.sweep_cap) throw resource_error("asymptotic_suite: sweep cap exceeded");
    const int Q = rule(N);
    DissectionParams params{N, Q, r};
    params.validate();

    const CoeffTable tab = family.build_G(N);
    const ComplexTable values = transform_fast_complex(F, tab, opts.workers);

    // One pass, two accumulators: the reported I is major + minor by
    // construction, so the mass decomposition is a true partition.
    Kahan major, minor;
    HaarSweep sweep(F, N + 1);
    for (std::uint64_t i = 0; i < sweep.size(); ++i) {
      const double w = std::pow(std::norm(values.v[i]), k / 2.0);
      const ArcLabel lab = classify(R, sweep.point(i), params);
      if (lab.minor)
        minor.add(w);
      else
        major.add(w);
    }
    AsymptoticRow row;
    row.N = N;
    row.Q = Q;
    row.major_mass = major.value() / static_cast<double>(size);
    row.minor_mass = minor.value() / static_cast<double>(size);
    row.I = row.major_mass + row.minor_mass;
    row.ratio = row.I / pow_qd(F.q(), static_cast<double>(N) * (k - 1.0));
    row.rel_err = std::abs(row.ratio - rep.C) / rep.C;
    row.minor_share = row.I > 0 ? row.minor_mass / row.I : 0.0;
    rep.rows.push_back(row);
  }

  // Monotone decrease of the relative error over the top half, with 10%
  // slack per step.
  const int half_begin = N_lo + (N_hi - N_lo + 1) / 2;
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    if (rep.rows[i].N <= half_begin) continue;
    if (rep.rows[i].rel_err > 1.10 * rep.rows[i - 1].rel_err) rep.monotone = false;
  }
  return rep;
}

}  // namespace ffm
