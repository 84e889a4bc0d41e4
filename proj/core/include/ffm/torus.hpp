#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ffm/fqarith.hpp"
#include "ffm/polyring.hpp"
#include "ffm/rational.hpp"

namespace ffm {

/// Depth-M truncation of a point of the torus: the coefficients
/// (alpha_{-1}, ..., alpha_{-M}). It stands for the whole coset of Laurent
/// tails agreeing on those coefficients; every consumer declares how much
/// depth it needs.
class TorusPoint {
 public:
  explicit TorusPoint(int depth) : tail_(static_cast<std::size_t>(depth), 0) {}
  explicit TorusPoint(std::vector<Fq> tail) : tail_(std::move(tail)) {}

  /// Canonical enumeration: digit j of `index` (base q) is alpha_{-j-1},
  /// matching the element order of the field and the transform layout.
  static TorusPoint from_index(const FieldCtx& F, int depth, std::uint64_t index);
  std::uint64_t index(const FieldCtx& F) const;

  int depth() const { return static_cast<int>(tail_.size()); }
  /// alpha_{-j} for 1 <= j <= depth().
  Fq coeff_neg(int j) const { return tail_[static_cast<std::size_t>(j - 1)]; }
  Fq& coeff_neg(int j) { return tail_[static_cast<std::size_t>(j - 1)]; }
  const std::vector<Fq>& tail() const { return tail_; }

  bool operator==(const TorusPoint& o) const { return tail_ == o.tail_; }

 private:
  std::vector<Fq> tail_;  // tail_[j] = alpha_{-(j+1)}
};

/// ord and norm of the truncation: ord = -j for the first nonzero
/// coefficient; `below` is set when all M coefficients vanish, in which case
/// only ord < -M is known for the coset.
struct OrdNorm {
  bool below = false;
  int ord = 0;       // meaningful only when !below
  double norm = 0;   // q^ord, or an upper bound q^{-M-1} when below

  /// -ord as the "first nonzero at t^{-K}" index; depth+1 when below.
  int K(int depth) const { return below ? depth + 1 : -ord; }
};

OrdNorm ord_and_norm(const FieldCtx& F, const TorusPoint& a);

TorusPoint torus_add(const FieldCtx& F, const TorusPoint& a, const TorusPoint& b);
TorusPoint torus_sub(const FieldCtx& F, const TorusPoint& a, const TorusPoint& b);

/// The coefficient of t^{-1} in f*alpha as a character exponent:
/// sum_j f_j alpha_{-j-1}. Requires depth >= deg f + 1.
CharExponent pairing_exponent(const FieldCtx& F, const Poly& f, const TorusPoint& a);

/// Laurent tail of num/den to the requested depth (den monic,
/// deg num < deg den): the coefficients of t^{-1}..t^{-depth}.
TorusPoint laurent_tail(const PolyRing& R, const Poly& num, const Poly& den, int depth);

/// Coefficient of t^j in f*alpha for j in [j_lo, j_hi], lowest index first.
/// Requires depth >= deg f - j_lo.
std::vector<Fq> product_coeffs(const FieldCtx& F, const Poly& f, const TorusPoint& a,
                               int j_lo, int j_hi);

/// True iff |f^r * alpha - l| < q^w, i.e. every coefficient of t^j of the
/// difference vanishes for j >= w. Well defined on cosets of depth
/// >= r*deg f - w.
bool ball_member(const PolyRing& R, const TorusPoint& a, const Poly& l, const Poly& f,
                 int r, int w);

/// Exact uniform sweep over all q^M depth-M tails in canonical order; the
/// Haar measure gives each point weight q^{-M}.
class HaarSweep {
 public:
  HaarSweep(const FieldCtx& F, int depth);
  std::uint64_t size() const { return size_; }
  int depth() const { return depth_; }
  TorusPoint point(std::uint64_t index) const { return TorusPoint::from_index(*F_, depth_, index); }
  double weight() const;

 private:
  const FieldCtx* F_;
  int depth_;
  std::uint64_t size_;
};

/// Exact Haar average of an integrand with values in Z[zeta_p]: the sum over
/// all depth-M tails together with the denominator q^M.
struct ScaledSum {
  SumValue sum;
  std::int64_t denom = 1;

  bool equals_integer(std::int64_t n) const;
  std::optional<Rat> as_rational() const { return sum.as_rational(denom); }
  std::complex<double> to_complex() const { return sum.to_complex() / static_cast<double>(denom); }
};

ScaledSum haar_average_exact(const FieldCtx& F, int depth,
                             const std::function<SumValue(const TorusPoint&)>& f);
double haar_average_real(const FieldCtx& F, int depth,
                         const std::function<double(const TorusPoint&)>& f);
Rat haar_average_rat(const FieldCtx& F, int depth,
                     const std::function<Rat(const TorusPoint&)>& f);

}  // namespace ffm
