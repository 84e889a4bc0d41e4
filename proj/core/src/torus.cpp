#include "ffm/torus.hpp"

#include <cmath>
#include <stdexcept>

namespace ffm {

TorusPoint TorusPoint::from_index(const FieldCtx& F, int depth, std::uint64_t index) {
  std::vector<Fq> tail(static_cast<std::size_t>(depth));
  for (int j = 0; j < depth; ++j) {
    tail[static_cast<std::size_t>(j)] = static_cast<Fq>(index % static_cast<std::uint64_t>(F.q()));
    index /= static_cast<std::uint64_t>(F.q());
  }
  return TorusPoint(std::move(tail));
}

std::uint64_t TorusPoint::index(const FieldCtx& F) const {
  std::uint64_t idx = 0;
  for (int j = depth() - 1; j >= 0; --j)
    idx = idx * static_cast<std::uint64_t>(F.q()) + tail_[static_cast<std::size_t>(j)];
  return idx;
}

OrdNorm ord_and_norm(const FieldCtx& F, const TorusPoint& a) {
  for (int j = 1; j <= a.depth(); ++j) {
    if (a.coeff_neg(j) != 0) {
      OrdNorm r;
      r.below = false;
      r.ord = -j;
      r.norm = std::pow(static_cast<double>(F.q()), -j);
      return r;
    }
  }
  OrdNorm r;
  r.below = true;
  r.ord = -(a.depth() + 1);
  r.norm = std::pow(static_cast<double>(F.q()), -(a.depth() + 1));
  return r;
}

TorusPoint torus_add(const FieldCtx& F, const TorusPoint& a, const TorusPoint& b) {
  if (a.depth() != b.depth()) throw std::invalid_argument("torus_add: depth mismatch");
  TorusPoint r(a.depth());
  for (int j = 1; j <= a.depth(); ++j) r.coeff_neg(j) = F.add(a.coeff_neg(j), b.coeff_neg(j));
  return r;
}

TorusPoint torus_sub(const FieldCtx& F, const TorusPoint& a, const TorusPoint& b) {
  if (a.depth() != b.depth()) throw std::invalid_argument("torus_sub: depth mismatch");
  TorusPoint r(a.depth());
  for (int j = 1; j <= a.depth(); ++j) r.coeff_neg(j) = F.sub(a.coeff_neg(j), b.coeff_neg(j));
  return r;
}

CharExponent pairing_exponent(const FieldCtx& F, const Poly& f, const TorusPoint& a) {
  if (f.is_zero()) return CharExponent{0};
  if (a.depth() < f.degree() + 1)
    throw std::invalid_argument("pairing_exponent: torus depth below deg f + 1");
  Fq acc = 0;
  for (int j = 0; j <= f.degree(); ++j)
    acc = F.add(acc, F.mul(f.coeff(j), a.coeff_neg(j + 1)));
  return F.char_exponent(acc);
}

TorusPoint laurent_tail(const PolyRing& R, const Poly& num, const Poly& den, int depth) {
  if (den.is_zero() || den.leading() != 1)
    throw std::domain_error("laurent_tail: denominator must be monic");
  if (!num.is_zero() && num.degree() >= den.degree())
    throw std::domain_error("laurent_tail: need deg num < deg den");
  // num/den = sum_{j>=1} c_{-j} t^{-j}; multiplying by t^depth turns the
  // first `depth` tail coefficients into the quotient digits of
  // (num * t^depth) / den.
  std::vector<Fq> shifted(static_cast<std::size_t>(depth), 0);
  for (int i = 0; i <= num.degree(); ++i) shifted.push_back(num.coeff(i));
  if (num.is_zero()) return TorusPoint(depth);
  const Poly quot = R.divmod(Poly(std::move(shifted)), den).first;
  TorusPoint r(depth);
  for (int j = 1; j <= depth; ++j) r.coeff_neg(j) = quot.coeff(depth - j);
  return r;
}

std::vector<Fq> product_coeffs(const FieldCtx& F, const Poly& f, const TorusPoint& a,
                               int j_lo, int j_hi) {
  if (!f.is_zero() && a.depth() < f.degree() - j_lo)
    throw std::invalid_argument("product_coeffs: torus depth too small for requested window");
  std::vector<Fq> out;
  out.reserve(static_cast<std::size_t>(j_hi - j_lo + 1));
  for (int j = j_lo; j <= j_hi; ++j) {
    Fq acc = 0;
    for (int i = std::max(0, j + 1); i <= f.degree(); ++i)
      acc = F.add(acc, F.mul(f.coeff(i), a.coeff_neg(i - j)));
    out.push_back(acc);
  }
  return out;
}

bool ball_member(const PolyRing& R, const TorusPoint& a, const Poly& l, const Poly& f,
                 int r, int w) {
  const FieldCtx& F = R.field();
  const Poly fr = R.pow(f, r);
  // f^r*alpha has no coefficient past t^{deg f^r - 1}; the difference must
  // vanish at every t^j with j >= w.
  const int prod_top = fr.degree() - 1;
  const int top = std::max(prod_top, l.degree());
  if (w > top) return true;
  std::vector<Fq> c;
  if (w <= prod_top) c = product_coeffs(F, fr, a, w, prod_top);
  for (int j = w; j <= top; ++j) {
    const Fq lhs = j <= prod_top ? c[static_cast<std::size_t>(j - w)] : Fq{0};
    const Fq rhs = j >= 0 ? l.coeff(j) : Fq{0};
    if (lhs != rhs) return false;
  }
  return true;
}

HaarSweep::HaarSweep(const FieldCtx& F, int depth) : F_(&F), depth_(depth) {
  if (depth < 0 || depth > 62) throw std::domain_error("HaarSweep: unreasonable depth");
  size_ = 1;
  for (int i = 0; i < depth; ++i) size_ *= static_cast<std::uint64_t>(F.q());
}

double HaarSweep::weight() const { return 1.0 / static_cast<double>(size_); }

bool ScaledSum::equals_integer(std::int64_t n) const {
  const auto r = as_rational();
  return r.has_value() && *r == Rat(n);
}

ScaledSum haar_average_exact(const FieldCtx& F, int depth,
                             const std::function<SumValue(const TorusPoint&)>& f) {
  HaarSweep sweep(F, depth);
  SumValue acc(F.p());
  for (std::uint64_t i = 0; i < sweep.size(); ++i) acc += f(sweep.point(i));
  return ScaledSum{std::move(acc), static_cast<std::int64_t>(sweep.size())};
}

double haar_average_real(const FieldCtx& F, int depth,
                         const std::function<double(const TorusPoint&)>& f) {
  HaarSweep sweep(F, depth);
  double acc = 0.0;
  for (std::uint64_t i = 0; i < sweep.size(); ++i) acc += f(sweep.point(i));
  return acc / static_cast<double>(sweep.size());
}

Rat haar_average_rat(const FieldCtx& F, int depth,
                     const std::function<Rat(const TorusPoint&)>& f) {
  HaarSweep sweep(F, depth);
  Rat acc(0);
  for (std::uint64_t i = 0; i < sweep.size(); ++i) acc += f(sweep.point(i));
  return acc / Rat(static_cast<std::int64_t>(sweep.size()));
}

}  // namespace ffm
