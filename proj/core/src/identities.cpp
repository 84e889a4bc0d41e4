#include "ffm/identities.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "ffm/charsum.hpp"
#include "ffm/circle.hpp"
#include "ffm/fqarith.hpp"
#include "ffm/moments.hpp"
#include "ffm/polyring.hpp"
#include "ffm/torus.hpp"

namespace ffm {
namespace {

struct Suite {
  std::vector<IdentityResult> results;

  void check(const std::string& name, bool ok, const std::string& detail = "") {
    results.push_back({name, ok, ok ? "" : detail});
  }
};

// |x|^2 of a Z[zeta_p] value as an exact rational; defined whenever the
// conjugate product reduces to a rational (always for p <= 3).
Rat abs2_exact(const SumValue& v) {
  const auto r = (v * v.conj()).as_rational();
  if (!r.has_value()) throw std::logic_error("abs2_exact: value is not rational");
  return *r;
}

void orthogonality(Suite& s, const PolyRing& R, int depth) {
  const FieldCtx& F = R.field();
  bool ok = true;
  std::string detail;
  const std::uint64_t count = R.pow_q(depth);
  for (std::uint64_t x = 0; x < count && ok; ++x) {
    const Poly f = R.from_digits_index(depth, x);
    const ScaledSum avg = haar_average_exact(F, depth, [&](const TorusPoint& a) {
      return SumValue::unit(F.p(), pairing_exponent(F, f, a));
    });
    const std::int64_t want = f.is_zero() ? 1 : 0;
    if (!avg.equals_integer(want)) {
      ok = false;
      detail = "f=" + f.str();
    }
  }
  s.check("orthogonality: mean of e(f a) = [f=0]", ok, detail);
}

void full_sum_identity(Suite& s, const PolyRing& R, int depth) {
  // sum over |h| < q^m of e(h a) = q^m when ord{a} < -m, else 0.
  const FieldCtx& F = R.field();
  bool ok = true;
  std::string detail;
  for (int m = 0; m <= depth - 1 && ok; ++m) {
    HaarSweep sweep(F, depth);
    for (std::uint64_t i = 0; i < sweep.size() && ok; ++i) {
      const TorusPoint a = sweep.point(i);
      SumValue sum(F.p());
      const std::uint64_t hn = R.pow_q(m);
      for (std::uint64_t x = 0; x < hn; ++x)
        sum += SumValue::unit(F.p(), pairing_exponent(F, R.from_digits_index(m, x), a));
      const OrdNorm on = ord_and_norm(F, a);
      const bool deep = on.K(depth) > m;  // ord{a} < -m
      SumValue want(F.p());
      want.coeff(0) = deep ? static_cast<std::int64_t>(hn) : 0;
      if (sum != want) { ok = false; detail = "m=" + std::to_string(m); }
    }
  }
  s.check("full sum over |h| < q^m collapses to q^m on ord{a} < -m", ok, detail);
}

void monic_slice_identity(Suite& s, const PolyRing& R, int depth) {
  // sum over monic degree m of e(h a) = e_q(a_{-m-1}) q^m when ord{a} < -m.
  const FieldCtx& F = R.field();
  bool ok = true;
  std::string detail;
  for (int m = 0; m + 1 <= depth && ok; ++m) {
    HaarSweep sweep(F, depth);
    for (std::uint64_t i = 0; i < sweep.size() && ok; ++i) {
      const TorusPoint a = sweep.point(i);
      SumValue sum(F.p());
      const std::uint64_t hn = R.pow_q(m);
      for (std::uint64_t x = 0; x < hn; ++x)
        sum += SumValue::unit(F.p(), pairing_exponent(F, R.monic_from_index(m, x), a));
      const OrdNorm on = ord_and_norm(F, a);
      SumValue want(F.p());
      if (on.K(depth) > m) {
        want = SumValue::unit(F.p(), F.char_exponent(a.coeff_neg(m + 1)));
        want.scale(static_cast<std::int64_t>(hn));
      }
      if (sum != want) { ok = false; detail = "m=" + std::to_string(m); }
    }
  }
  s.check("monic degree-m slice collapses to e_q(a_{-m-1}) q^m", ok, detail);
}

void monic_prefix_bound(Suite& s, const PolyRing& R, int depth) {
  // |sum over monic |h| <= q^m| <= 2 min(q^m, 1/||a||), exact via |.|^2,
  // plus the structural telescoping through the degree slices.
  const FieldCtx& F = R.field();
  bool ok = true;
  std::string detail;
  for (int m = 0; m + 1 <= depth && ok; ++m) {
    HaarSweep sweep(F, depth);
    for (std::uint64_t i = 0; i < sweep.size() && ok; ++i) {
      const TorusPoint a = sweep.point(i);
      SumValue sum(F.p());
      for (int d = 0; d <= m; ++d) {
        const std::uint64_t hn = R.pow_q(d);
        for (std::uint64_t x = 0; x < hn; ++x)
          sum += SumValue::unit(F.p(), pairing_exponent(F, R.monic_from_index(d, x), a));
      }
      // Telescoped form: sum_{d <= min(m, K-1)} e_q(a_{-d-1}) q^d.
      const OrdNorm on = ord_and_norm(F, a);
      const int K = on.K(depth);
      SumValue tele(F.p());
      std::int64_t qd = 1;
      for (int d = 0; d <= std::min(m, K - 1); ++d) {
        SumValue term = SumValue::unit(F.p(), F.char_exponent(a.coeff_neg(d + 1)));
        term.scale(qd);
        tele += term;
        qd *= R.q();
      }
      if (sum != tele) { ok = false; detail = "telescope m=" + std::to_string(m); break; }
      const Rat a2 = abs2_exact(sum);
      const std::int64_t qm = static_cast<std::int64_t>(R.pow_q(m));
      const std::int64_t inv_norm = static_cast<std::int64_t>(R.pow_q(std::min(K, depth)));
      const std::int64_t bound = 2 * std::min(qm, inv_norm);
      if (a2 > Rat(bound * bound)) { ok = false; detail = "bound m=" + std::to_string(m); }
    }
  }
  s.check("monic prefix sums telescope and obey min(q^m, 1/norm) bound", ok, detail);
}

void parseval_random_tables(Suite& s, const PolyRing& R, int depth, unsigned seed) {
  const FieldCtx& F = R.field();
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dist(-4, 4);
  bool ok = true;
  std::string detail;
  for (int trial = 0; trial < 8 && ok; ++trial) {
    CoeffTable tab;
    tab.depth = depth;
    tab.scale = 1;
    tab.w.resize(R.pow_q(depth));
    std::int64_t want = 0;
    for (auto& w : tab.w) { w = dist(rng); want += w * w; }
    const ExactTable values = transform_fast(F, tab);
    // q^{-M} sum |values|^2 must equal sum w^2 exactly.
    SumValue acc(F.p());
    for (std::uint64_t i = 0; i < values.size(); ++i) {
      const SumValue v = values.value(i);
      acc += v * v.conj();
    }
    const auto total = acc.as_rational(static_cast<std::int64_t>(values.size()));
    if (!total.has_value() || *total != Rat(want)) {
      ok = false;
      detail = "trial " + std::to_string(trial);
    }
  }
  s.check("Parseval on random integer tables (transform route)", ok, detail);
}

void mobius_sums(Suite& s, const SieveTable& sieve) {
  bool ok = true;
  std::string detail;
  const int q = sieve.ring().q();
  for (int n = 0; n <= std::min(sieve.mu_degree_cap(), 6); ++n) {
    const std::int64_t want = n == 0 ? 1 : (n == 1 ? -q : 0);
    if (sieve.mobius_degree_sum(n) != want) {
      ok = false;
      detail = "n=" + std::to_string(n);
      break;
    }
  }
  s.check("Mobius degree sums are 1, -q, 0, 0, ...", ok, detail);
}

void fejer_checks(Suite& s, const PolyRing& R, int depth) {
  const FieldCtx& F = R.field();
  bool ok_pos = true, ok_int = true, ok_match = true;
  std::string d_pos, d_match;
  for (int N = 1; N <= depth && (ok_pos || ok_int); ++N) {
    Rat integral(0);
    HaarSweep sweep(F, depth);
    for (std::uint64_t i = 0; i < sweep.size(); ++i) {
      const TorusPoint a = sweep.point(i);
      const Rat value = fejer(R, a, N);
      if (value < Rat(0)) { ok_pos = false; d_pos = "N=" + std::to_string(N); }
      integral += value;
      if (N <= 3) {
        const SumValue direct = fejer_direct(R, a, N);
        const auto direct_rat = direct.as_rational(static_cast<std::int64_t>(R.pow_q(N)));
        if (!direct_rat.has_value() || *direct_rat != value) {
          ok_match = false;
          d_match = "N=" + std::to_string(N);
        }
      }
    }
    if (integral != Rat(static_cast<std::int64_t>(sweep.size()))) ok_int = false;
  }
  s.check("Fejer kernel is non-negative at every tail", ok_pos, d_pos);
  s.check("Fejer kernel has unit integral (exact)", ok_int);
  s.check("Fejer closed form equals the weighted-sum definition", ok_match, d_match);
}

void sieve_parseval(Suite& s, const PolyRing& R, int depth, int r, bool corrupt) {
  // Transform second moment of G against an independent trial-division
  // count of r-free monics. A corrupted sieve must fail here.
  const int N = depth - 1;
  SieveTable sieve(R, N, r);
  if (corrupt) sieve.corrupt_for_testing();
  SumFamily family(R, sieve);
  const Rat I2 = moment2_exact(family, N);

  std::int64_t count = 0;
  for (int d = 0; d <= N; ++d)
    R.for_each_monic(d, [&](const Poly& f) { count += R.is_rfree(f, r) ? 1 : 0; });

  s.check("transform second moment equals the independent r-free count",
          I2 == Rat(count), "I2=" + std::to_string(I2.to_double()));
}

}  // namespace

std::vector<IdentityResult> run_identity_suite(int q, const IdentityOptions& opts) {
  const FieldCtx F = FieldCtx::make(q);
  const PolyRing R(F);
  SieveTable sieve(R, std::max(opts.depth, 6), opts.r);

  Suite s;
  orthogonality(s, R, opts.depth);
  full_sum_identity(s, R, opts.depth);
  monic_slice_identity(s, R, opts.depth);
  monic_prefix_bound(s, R, opts.depth);
  parseval_random_tables(s, R, std::min(opts.depth, 4), opts.seed);
  mobius_sums(s, sieve);
  fejer_checks(s, R, opts.depth);
  sieve_parseval(s, R, opts.depth, opts.r, opts.corrupt_sieve);
  return s.results;
}

}  // namespace ffm
