#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "ffm/fqarith.hpp"
#include "ffm/polyring.hpp"
#include "ffm/rational.hpp"
#include "ffm/torus.hpp"

namespace ffm {

/// Weights of an exponential sum, indexed by digit vectors x in F_q^M read
/// as polynomial coefficients (f_0..f_{M-1}). Weights are held as integers
/// over a common power-of-q denominator so smoothed sums stay exact.
struct CoeffTable {
  int depth = 0;                 // M
  std::int64_t scale = 1;        // value = w/scale
  std::vector<std::int64_t> w;   // size q^M

  std::uint64_t size() const { return w.size(); }
};

/// Exact transform output: one Z[zeta_p] value per torus tail, flattened.
/// For p = 2 the ring is Z and the stride collapses to 1.
class ExactTable {
 public:
  ExactTable(int depth, int p, std::int64_t scale, std::uint64_t count);

  int depth() const { return depth_; }
  int p() const { return p_; }
  int stride() const { return stride_; }
  std::int64_t scale() const { return scale_; }
  std::uint64_t size() const { return count_; }

  SumValue value(std::uint64_t index) const;      // numerator (times 1/scale)
  std::int64_t* raw(std::uint64_t index) { return &c_[index * static_cast<std::uint64_t>(stride_)]; }
  const std::int64_t* raw(std::uint64_t index) const {
    return &c_[index * static_cast<std::uint64_t>(stride_)];
  }

  bool operator==(const ExactTable& o) const;     // elementwise after reduction

 private:
  int depth_, p_, stride_;
  std::int64_t scale_;
  std::uint64_t count_;
  std::vector<std::int64_t> c_;
};

/// Floating transform output; values already include the 1/scale factor.
struct ComplexTable {
  int depth = 0;
  std::vector<std::complex<double>> v;

  std::uint64_t size() const { return v.size(); }
};

/// Direct O(q^{2M}) evaluation; the oracle for the fast path. Capped at
/// M <= 8.
ExactTable transform_naive(const FieldCtx& F, const CoeffTable& tab);
ComplexTable transform_naive_complex(const FieldCtx& F, const CoeffTable& tab);

/// Tensor-stage character transform over F_q^M: M stages of the q x q
/// kernel zeta_p^{tr(x y)} along one digit each, O(M q^{M+1}) ring
/// operations. For p = 2 each stage is a +- butterfly. Output contract is
/// identical to transform_naive.
ExactTable transform_fast(const FieldCtx& F, const CoeffTable& tab, int workers = 1);
ComplexTable transform_fast_complex(const FieldCtx& F, const CoeffTable& tab, int workers = 1);

/// Pointwise evaluation of a coefficient table at one tail (direct sum; the
/// cross-oracle for transform outputs).
SumValue eval_table_at(const FieldCtx& F, const CoeffTable& tab, const TorusPoint& a);

/// Builders for the sums of interest, bound to a ring and a sieve. Tables
/// for the degree-sliced sums are cached per (i, N, r).
class SumFamily {
 public:
  SumFamily(const PolyRing& R, const SieveTable& S);

  const PolyRing& ring() const { return *R_; }
  const SieveTable& sieve() const { return *S_; }

  /// G: weights a_r(f) on monic f with deg f <= N; depth N+1.
  CoeffTable build_G(int N) const;
  /// g(n;.): weights a_r(f) on monic f of degree exactly n; depth n+1.
  CoeffTable build_g(int n) const;
  /// g1: weights a_r(f) on all |f| < q^N (associates via monic
  /// normalization, a_r(0) = 0); depth N.
  CoeffTable build_g1(int N) const;
  /// g2: weights (1 - |f|/q^N) a_r(f) on the same support, scale q^N.
  CoeffTable build_g2(int N) const;
  /// Fejer kernel weights (1 - |f|/q^N) on all |f| < q^N, scale q^N.
  CoeffTable build_fejer(int N) const;
  /// T_i: weights c_i(f) on monic f of degree N; zero table for i out of
  /// [0, N/r].
  const CoeffTable& build_Ti(int i, int N) const;
  /// T_* = sum_{i > D} T_i with D = floor(N/(r+1)).
  CoeffTable build_Tstar(int N) const;
  CoeffTable build_hj(int j, int N) const;  // sum_{i <= j} T_i
  CoeffTable build_Hj(int j, int N) const;  // sum_{i > j} T_i
  /// Indicator of monic g with deg g <= N (the complete sum v); depth N+1.
  CoeffTable build_monic_indicator(int N) const;

  /// G(alpha) by direct summation (pointwise route).
  SumValue G_at(int N, const TorusPoint& a) const;

 private:
  const PolyRing* R_;
  const SieveTable* S_;
  mutable std::map<std::pair<int, int>, CoeffTable> ti_cache_;
};

/// Fejer kernel value: rational for every q because the weighted sum
/// collapses by the full-character identity. K = -ord{alpha} (depth+1 when
/// the truncation vanishes). Requires depth >= N.
Rat fejer(const PolyRing& R, const TorusPoint& a, int N);
/// The same value by the defining weighted sum, scale q^N (test route).
SumValue fejer_direct(const PolyRing& R, const TorusPoint& a, int N);

/// Complete monic sum v(beta) = sum over monic g, deg g <= N.
SumValue v_direct(const FieldCtx& F, const TorusPoint& b, int N);
/// Closed form: e_q(a) q^n + (q^n - 1)/(q - 1) when ord{beta} = -n-1 with
/// n <= N and leading coefficient a; (q^{N+1}-1)/(q-1) when ord{beta} < -N-1.
SumValue v_closed(const FieldCtx& F, const TorusPoint& b, int N);

/// S(f^r, l): complete local sum at the rational l/f^r. The closed form is
/// mu(f) |f|^r / (zeta_q(r) Phi_r(f)) as an exact rational; the truncation
/// keeps monic d with deg d <= B, where the inner u-sum collapses to
/// |f|^r [f^r | d^r l] (equivalently [f | d] for admissible pairs, which
/// makes the value independent of l). Preconditions: f squarefree monic,
/// (l, f^r) r-free; the truncation needs mu materialized to degree B.
Rat S_closed(const PolyRing& R, const Poly& f, const Poly& l, int r);
Rat S_truncated(const PolyRing& R, const SieveTable& S, const Poly& f, const Poly& l, int r,
                int B);

/// Averaging kernel over multiples of h: sum_{h | f, |f| < q^N}
/// (1 - |f|/q^N) e(f alpha), by direct weighted summation; scale q^N.
SumValue F_h_direct(const PolyRing& R, const TorusPoint& a, const Poly& h, int N);
/// The same value via the identity F_h = |h|^{-1} sum_{|a| < |h|}
/// F(alpha - a/h), exact rational.
Rat F_h_average(const PolyRing& R, const TorusPoint& a, const Poly& h, int N);

/// b_d = sum over monic m with |m| <= q^D/|d|, (m, d) = 1 of mu(m)/|m|^r.
Rat b_d(const PolyRing& R, const SieveTable& S, const Poly& d, int D, int r);

/// H_d = |d|^{-r} sum over r-free-pair offsets a of F(alpha - a/d^r).
Rat H_d(const PolyRing& R, const TorusPoint& a, const Poly& d, int N, int r);

/// R = sum_{|d| <= q^D} mu(d) b_d H_d(alpha).
Rat R_sum(const PolyRing& R, const SieveTable& S, const TorusPoint& a, int D, int N, int r);

}  // namespace ffm
