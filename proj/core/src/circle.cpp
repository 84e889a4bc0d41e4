#include "ffm/circle.hpp"

#include <cmath>
#include <stdexcept>

#include "ffm/parallel.hpp"

namespace ffm {
namespace {

double pow_qd(int q, double e) { return std::pow(static_cast<double>(q), e); }

std::int64_t pow_qi(int q, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= q;
  return r;
}

// #monic irreducibles of degree d: (1/d) sum_{e | d} mu(e) q^{d/e}.
std::int64_t irreducible_count(int q, int d) {
  auto mu_int = [](int n) {
    int m = 1;
    for (int p = 2; p * p <= n; ++p) {
      if (n % p != 0) continue;
      n /= p;
      if (n % p == 0) return 0;
      m = -m;
    }
    if (n > 1) m = -m;
    return m;
  };
  std::int64_t sum = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e != 0) continue;
    sum += mu_int(e) * pow_qi(q, d / e);
  }
  return sum / d;
}

}  // namespace

void DissectionParams::validate() const {
  if (N < 1 || r < 2 || Q < 0) throw std::domain_error("DissectionParams: need N >= 1, r >= 2, Q >= 0");
  if (2 * Q >= N) throw std::domain_error("DissectionParams: need Q < N/2 for disjoint arcs");
}

ArcLabel classify(const PolyRing& R, const TorusPoint& a, const DissectionParams& params,
                  std::optional<int> width_exponent) {
  params.validate();
  if (a.depth() < params.N + 1) throw std::invalid_argument("classify: depth below N+1");
  const int w = width_exponent.value_or(params.width_exponent());
  const FieldCtx& F = R.field();
  for (int df = 0; df <= params.max_f_degree(); ++df) {
    const std::uint64_t count = R.pow_q(df);
    for (std::uint64_t i = 0; i < count; ++i) {
      const Poly f = R.monic_from_index(df, i);
      if (!R.is_rfree(f, 2)) continue;  // squarefree denominators only
      const Poly fr = R.pow(f, params.r);
      // Candidate l = polynomial part of f^r alpha; membership additionally
      // needs the fractional coefficients at t^{-1}..t^{w} to vanish.
      const int prod_top = fr.degree() - 1;
      std::vector<Fq> c;
      if (w <= prod_top) c = product_coeffs(F, fr, a, w, prod_top);
      bool frac_ok = true;
      for (int j = w; j <= std::min(-1, prod_top); ++j)
        if (c[static_cast<std::size_t>(j - w)] != 0) { frac_ok = false; break; }
      if (!frac_ok) continue;
      std::vector<Fq> lc;
      for (int j = 0; j <= prod_top; ++j)
        lc.push_back(j >= w ? c[static_cast<std::size_t>(j - w)] : Fq{0});
      const Poly l{std::move(lc)};
      if (!R.is_rfree_pair(l, f, params.r)) continue;  // not in lowest terms
      return ArcLabel{false, f, l};
    }
  }
  return ArcLabel{};
}

double singular_series_truncated(const PolyRing& R, double k, int r, int Q) {
  double sum = 0.0;
  for (int df = 0; r * df <= Q; ++df) {
    R.for_each_monic(df, [&](const Poly& f) {
      if (!R.is_rfree(f, 2)) return;
      sum += std::pow(static_cast<double>(R.phi_r(f, r)), 1.0 - k);
    });
  }
  return sum;
}

SeriesValue singular_series_completed(int q, double k, int r, double tol) {
  if (k <= 1.0 + 1.0 / r)
    throw std::domain_error("singular_series_completed: diverges for k <= 1 + 1/r");
  // log of the Euler product, grouped by irreducible degree:
  //   sum_d N_q(d) log(1 + (q^{rd} - 1)^{1-k}).
  // The term exponent is d(1 - r(k-1)) < 0, so a geometric certificate
  // with N_q(d) <= q^d/d bounds the tail.
  const double rate = 1.0 - static_cast<double>(r) * (k - 1.0);  // < 0
  const int exact_count_limit = static_cast<int>(61.0 / std::log2(static_cast<double>(q)));
  double log_sum = 0.0;
  int d = 0;
  double tail = 1.0;
  while (true) {
    ++d;
    if (d > 4096) throw std::domain_error("singular_series_completed: no convergence");
    // (q^{rd} - 1)^{1-k} in log space to dodge overflow.
    const double log_x = (1.0 - k) * (static_cast<double>(r) * d * std::log(q) +
                                      std::log1p(-pow_qd(q, -static_cast<double>(r) * d)));
    const double x = std::exp(log_x);
    if (d <= exact_count_limit && x > 1e-290) {
      log_sum += static_cast<double>(irreducible_count(q, d)) * std::log1p(x);
    } else {
      // N_q(d) ~ q^d/d and log1p(x) ~ x here, both to negligible relative
      // error; keep the whole term in log space.
      log_sum += std::exp(d * std::log(q) - std::log(static_cast<double>(d)) + log_x);
    }
    // Tail of sum_{d' > d} (q^{d'}/d') x(d'): geometric with ratio q^{rate}.
    const double ratio = pow_qd(q, rate);
    tail = pow_qd(q, rate * (d + 1)) / (1.0 - ratio) / (d + 1);
    if (tail < tol * 0.5) break;
    if (d > 2000) break;  // tol unreachable below double precision
  }
  SeriesValue out;
  out.value = std::exp(log_sum);
  out.tail = out.value * std::expm1(tail);
  out.cutoff = d;
  return out;
}

double singular_integral_exact(const FieldCtx& F, double k, int N) {
  if (k <= 0) throw std::domain_error("singular_integral_exact: need k > 0");
  return singular_integral_truncated(F, k, N, N, 2, 0);
}

double singular_integral_truncated(const FieldCtx& F, double k, int N, int Q, int r, int deg_f) {
  const int q = F.q();
  const int n_lo = std::max(0, N - Q + r * deg_f);
  double sum = 0.0;
  // Cells S(n,a): measure q^{-n-1}, v = e_q(a) q^n + (q^n - 1)/(q - 1).
  for (int n = n_lo; n <= N; ++n) {
    const double qn = pow_qd(q, n);
    const double lower = (qn - 1.0) / (q - 1.0);
    double cell = 0.0;
    for (int a = 1; a < q; ++a) {
      const std::complex<double> v =
          char_value_complex(F.p(), F.char_exponent(static_cast<Fq>(a))) * qn + lower;
      cell += std::pow(std::norm(v), k / 2.0);
    }
    sum += cell * pow_qd(q, -n - 1);
  }
  // Deep cell T(N): measure q^{-N-1}, v = (q^{N+1} - 1)/(q - 1).
  const double v_deep = (pow_qd(q, N + 1) - 1.0) / (q - 1.0);
  sum += std::pow(v_deep, k) * pow_qd(q, -N - 1);
  return sum;
}

Constants constants(const FieldCtx& F, double k, int r, double eps, double tol) {
  const int q = F.q();
  Constants out;
  out.eps = eps;

  double A = 0.0;
  for (int a = 0; a < q; ++a) {
    const std::complex<double> z =
        char_value_complex(F.p(), F.char_exponent(static_cast<Fq>(a))) + 1.0 / (q - 1.0);
    A += std::pow(std::norm(z), k / 2.0);
  }
  A /= q;
  out.A = A;

  const double qk1 = pow_qd(q, k - 1.0);
  out.B = (qk1 / (qk1 - 1.0)) * (A - std::pow(static_cast<double>(q - 1), -k));

  const double critical = 1.0 + 1.0 / r;
  if (k > critical) {
    const SeriesValue s = singular_series_completed(q, k, r, tol);
    out.S = s.value;
    out.S_tail = s.tail;
    out.C = std::pow(zeta_q(q, r), -k) * s.value * out.B;
  } else {
    throw std::domain_error("constants: C requires k > 1 + 1/r");
  }

  const double rr = 1.0 - 1.0 / r;  // 1 - 1/r
  const double kc = k - critical;   // k - 1 - 1/r
  if (k > 3.0 + 1.0 / r) {
    out.theta = rr;
  } else if (k > 2.0 + 1.0 / r) {
    out.theta = 0.5 * rr * kc - eps;
  } else {
    out.theta = rr * rr * kc / (rr * kc + (3.0 - k)) - eps;
  }
  return out;
}

ApproxValue G_star(const PolyRing& R, const TorusPoint& a, const ArcLabel& label, int N, int r) {
  if (label.minor) throw std::domain_error("G_star: minor-arc input");
  const FieldCtx& F = R.field();
  const Poly fr = R.pow(label.f, r);
  const TorusPoint beta = torus_sub(F, a, laurent_tail(R, label.l, fr, a.depth()));
  const Rat s = S_closed(R, label.f, label.l, r);
  const std::int64_t nf_r = pow_qi(R.q(), r * label.f.degree());
  ApproxValue out{v_closed(F, beta, N), s / Rat(nf_r)};
  return out;
}

double G_star_error_scale(const PolyRing& R, const TorusPoint& a, const ArcLabel& label, int N,
                          int r) {
  if (label.minor) throw std::domain_error("G_star_error_scale: minor-arc input");
  const FieldCtx& F = R.field();
  const Poly fr = R.pow(label.f, r);
  const TorusPoint beta = torus_sub(F, a, laurent_tail(R, label.l, fr, a.depth()));
  const OrdNorm on = ord_and_norm(F, beta);
  const double nf = std::pow(static_cast<double>(R.q()), label.f.degree());
  const double term1 = pow_qd(R.q(), static_cast<double>(N) / r) * std::pow(nf, r - 1);
  const double beta_norm = on.below ? 0.0 : on.norm;
  const double term2 =
      pow_qd(R.q(), N) * std::pow(beta_norm, 1.0 - 1.0 / r) * std::pow(nf, r - 1);
  return std::max(term1, term2);
}

ArcCensus arc_census(const SumFamily& family, const DissectionParams& params, int workers) {
  params.validate();
  const PolyRing& R = family.ring();
  const FieldCtx& F = R.field();
  const int M = params.N + 1;

  const CoeffTable g_tab = family.build_G(params.N);
  const ComplexTable values = transform_fast_complex(F, g_tab, workers);

  // Collect the arc labels once, in deterministic (deg f, f, l) order.
  std::vector<ArcCensusRow> rows;
  for (int df = 0; df <= params.max_f_degree(); ++df) {
    R.for_each_monic(df, [&](const Poly& f) {
      if (!R.is_rfree(f, 2)) return;
      const std::uint64_t nl = R.pow_q(params.r * df);
      for (std::uint64_t li = 0; li < nl; ++li) {
        const Poly l = R.from_digits_index(params.r * df, li);
        if (!R.is_rfree_pair(l, f, params.r)) continue;
        ArcCensusRow row;
        row.f = f;
        row.l = l;
        row.expected = 1;
        const int drop = params.N - params.Q + params.r * df;
        for (int i = 0; i < M - drop; ++i) row.expected *= static_cast<std::uint64_t>(R.q());
        rows.push_back(std::move(row));
      }
    });
  }

  ArcCensus census;
  HaarSweep sweep(F, M);
  double sup = 0.0;
  std::uint64_t minor_count = 0;
  const int w = params.width_exponent();
  for (std::uint64_t i = 0; i < sweep.size(); ++i) {
    const TorusPoint a = sweep.point(i);
    // Disjointness check runs over every arc independently of classify's
    // early return.
    int hits = 0;
    ArcCensusRow* hit = nullptr;
    for (auto& row : rows) {
      if (!ball_member(R, a, row.l, row.f, params.r, w)) continue;
      ++hits;
      hit = &row;
    }
    if (hits > 1) census.partition_ok = false;
    const ArcLabel lab = classify(R, a, params);
    if (hits >= 1) {
      ++hit->count;
      if (lab.minor || lab.f != hit->f || lab.l != hit->l) census.partition_ok = false;
    } else {
      if (!lab.minor) census.partition_ok = false;
      ++minor_count;
      sup = std::max(sup, std::abs(values.v[i]));
    }
  }

  census.rows = std::move(rows);
  census.minor_count = minor_count;
  census.minor_sup = sup;
  census.minor_bound =
      pow_qd(R.q(), params.N - params.Q * (1.0 - 1.0 / static_cast<double>(params.r)));
  return census;
}

}  // namespace ffm
