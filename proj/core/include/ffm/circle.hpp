#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ffm/charsum.hpp"
#include "ffm/polyring.hpp"
#include "ffm/torus.hpp"

namespace ffm {

/// Major/minor arc dissection parameters. An arc is the ball
/// |f^r alpha - l| < q^{Q-N} around l/f^r with f squarefree monic,
/// |f|^r <= q^Q and (l, f^r) r-free; Q < N/2 keeps distinct arcs disjoint.
struct DissectionParams {
  int N = 0;
  int Q = 0;
  int r = 2;

  int D() const { return N / (r + 1); }
  int max_f_degree() const { return Q / r; }  // r deg f <= Q
  int width_exponent() const { return Q - N; }

  void validate() const;
};

/// Label of the arc containing a point: the reduced pair (f, l), or MINOR.
struct ArcLabel {
  bool minor = true;
  Poly f;
  Poly l;
};

/// Finds the unique major arc containing `a` (depth >= N+1), or MINOR.
/// The width exponent defaults to the dissection's Q - N but can be
/// overridden where a different arc width is wanted.
ArcLabel classify(const PolyRing& R, const TorusPoint& a, const DissectionParams& params,
                  std::optional<int> width_exponent = std::nullopt);

/// Truncated singular series: sum of mu^2(f) Phi_r(f)^{1-k} over squarefree
/// monic f with |f|^r <= q^Q.
double singular_series_truncated(const PolyRing& R, double k, int r, int Q);

struct SeriesValue {
  double value = 0;
  double tail = 0;   // certified |completed - truncated-at-cutoff| bound
  int cutoff = 0;    // largest irreducible degree included
};

/// Completed singular series as the Euler product over irreducibles,
/// grouped by degree with exact per-degree counts; the tail certificate
/// uses #irreducibles of degree d <= q^d/d. Requires k > 1 + 1/r.
SeriesValue singular_series_completed(int q, double k, int r, double tol = 1e-10);

/// Singular integral J_r(k) = integral of |v|^k, evaluated exactly from the
/// closed form of v on the ord/leading-coefficient cells of the torus.
double singular_integral_exact(const FieldCtx& F, double k, int N);
/// Restriction to |beta| < q^{Q-N} |f|^{-r} (deg_f = deg f).
double singular_integral_truncated(const FieldCtx& F, double k, int N, int Q, int r, int deg_f);

/// The closed-form constants of the asymptotic formula.
struct Constants {
  double A = 0;      // (1/q) sum_a |e_q(a) + 1/(q-1)|^k
  double B = 0;      // singular-integral density
  double S = 0;      // completed singular series
  double S_tail = 0; // certified tail of S
  double C = 0;      // zeta_q(r)^{-k} * S * B
  double theta = 0;  // error exponent (with the caller's epsilon folded in)
  double eps = 0;
};

/// Requires k > 1 + 1/r for S and C; theta follows the piecewise rule in k.
Constants constants(const FieldCtx& F, double k, int r, double eps = 1e-3, double tol = 1e-12);

/// Major-arc approximant G*(alpha) = |f|^{-r} S(f^r, l) v(beta) at a point
/// with major label (f, l), beta = alpha - l/f^r. Throws on MINOR.
struct ApproxValue {
  SumValue v;     // v(beta), exact
  Rat scale;      // |f|^{-r} S(f^r, l)
  std::complex<double> to_complex() const { return v.to_complex() * scale.to_double(); }
};
ApproxValue G_star(const PolyRing& R, const TorusPoint& a, const ArcLabel& label, int N, int r);

/// Pointwise error scale max{q^{N/r}|f|^{r-1},
/// q^N |beta|^{1-1/r} |f|^{r-1}} used to normalize |G - G*|.
double G_star_error_scale(const PolyRing& R, const TorusPoint& a, const ArcLabel& label, int N,
                          int r);

/// One row of the arc census: a major arc and its sweep count.
struct ArcCensusRow {
  Poly f;
  Poly l;
  std::uint64_t count = 0;     // depth-(N+1) tails classified into this arc
  std::uint64_t expected = 0;  // q^{M - (N - Q + r deg f)}
};

struct ArcCensus {
  std::vector<ArcCensusRow> rows;
  std::uint64_t minor_count = 0;
  double minor_sup = 0;        // max |G| over MINOR tails
  double minor_bound = 0;      // q^{N - Q(1 - 1/r)}
  bool partition_ok = true;    // every tail got exactly one label
};

/// Sweeps every depth-(N+1) tail, classifies it, counts per-arc membership
/// and records the minor-arc sup of |G|.
ArcCensus arc_census(const SumFamily& family, const DissectionParams& params, int workers = 1);

}  // namespace ffm
