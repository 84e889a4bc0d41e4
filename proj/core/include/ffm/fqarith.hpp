#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "ffm/errors.hpp"
#include "ffm/rational.hpp"

namespace ffm {

/// Index of an element of F_q in the canonical order: the element with power
/// basis coordinates (c_0,...,c_{h-1}) over F_p sits at index sum c_i p^i.
/// All enumeration bijections downstream (monic polynomials, torus tails,
/// transform layouts) inherit this order.
using Fq = std::uint8_t;

/// Exponent n of zeta_p, so that e_q(c) = zeta_p^n with n = tr(c) mod p.
struct CharExponent {
  int value = 0;
};

/// A concrete finite field F_q = F_{p^h} with full arithmetic tables, the
/// F_p-linear trace, and the additive character as root-of-unity exponents.
///
/// Construction verifies that the modulus is irreducible (trial division)
/// and that the multiplicative group has order q-1 (a generator is found by
/// scanning element orders). Element tables are only built for q up to `cap`.
class FieldCtx {
 public:
  static constexpr int kDefaultCap = 64;

  /// Builds F_{p^h} from a monic irreducible `modulus` over F_p given as
  /// h+1 coefficients, lowest degree first, each in [0,p).
  FieldCtx(int p, int h, const std::vector<int>& modulus, int cap = kDefaultCap);

  /// Builds F_q with the canonical shipped modulus; q must be one of
  /// {2,3,4,5,7,8,9,16,25,27,32}. Other prime powers require an explicit
  /// modulus via the main constructor.
  static FieldCtx make(int q, int cap = kDefaultCap);

  int p() const { return p_; }
  int h() const { return h_; }
  int q() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }

  Fq zero() const { return 0; }
  Fq one() const { return 1; }
  Fq element(int index) const;                 // bounds-checked
  Fq from_coords(const std::vector<int>& c) const;
  std::vector<int> coords(Fq a) const;
  Fq from_prime(int residue) const;            // embeds F_p

  Fq add(Fq a, Fq b) const { return add_[idx(a, b)]; }
  Fq sub(Fq a, Fq b) const { return add_[idx(a, neg_[b])]; }
  Fq neg(Fq a) const { return neg_[a]; }
  Fq mul(Fq a, Fq b) const { return mul_[idx(a, b)]; }
  Fq inv(Fq a) const;                          // domain_error on 0
  Fq pow(Fq a, std::uint64_t e) const;

  /// Sum_{i=0}^{h-1} c^{p^i}, returned as a residue in [0,p).
  int trace(Fq c) const { return trace_[c]; }

  /// Exponent of the additive character: e_q(c) = zeta_p^{char_exponent(c)}.
  CharExponent char_exponent(Fq c) const { return CharExponent{trace_[c]}; }

  /// tr(a*b) mod p; the bilinear pairing behind every transform stage.
  int pair_exp(Fq a, Fq b) const { return trace_[mul_[idx(a, b)]]; }

 private:
  std::size_t idx(Fq a, Fq b) const { return static_cast<std::size_t>(a) * q_ + b; }
  void build_tables();
  void verify_structure() const;

  int p_ = 0, h_ = 0, q_ = 0;
  std::vector<int> modulus_;
  std::vector<Fq> add_, mul_, neg_;
  std::vector<Fq> inv_;
  std::vector<int> trace_;
};

/// An exponential-sum value held exactly as an element of Z[zeta_p]:
/// coefficient i multiplies zeta_p^i. Comparison happens after reduction by
/// the relation 1 + zeta + ... + zeta^{p-1} = 0 (basis zeta^0..zeta^{p-2}).
class SumValue {
 public:
  explicit SumValue(int p) : c_(static_cast<std::size_t>(p), 0) {}
  static SumValue unit(int p, CharExponent e);  // zeta_p^e

  int p() const { return static_cast<int>(c_.size()); }
  std::int64_t coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
  std::int64_t& coeff(int i) { return c_[static_cast<std::size_t>(i)]; }

  SumValue& operator+=(const SumValue& o);
  SumValue& operator-=(const SumValue& o);
  friend SumValue operator+(SumValue a, const SumValue& b) { return a += b; }
  friend SumValue operator-(SumValue a, const SumValue& b) { return a -= b; }
  SumValue operator-() const;
  SumValue& scale(std::int64_t m);

  /// Multiplication by zeta_p^e: a cyclic shift of the coefficients.
  SumValue times_root(int e) const;
  SumValue operator*(const SumValue& o) const;  // convolution mod x^p - 1
  SumValue conj() const;                        // zeta -> zeta^{-1}

  bool is_zero() const;
  friend bool operator==(const SumValue& a, const SumValue& b);
  friend bool operator!=(const SumValue& a, const SumValue& b) { return !(a == b); }

  /// Coefficients in the basis zeta^0..zeta^{p-2} (last coefficient folded in).
  std::vector<std::int64_t> reduced() const;

  /// The value as an exact rational (scaled by 1/denom) when it lies in Q,
  /// i.e. when all non-constant reduced coordinates vanish.
  std::optional<Rat> as_rational(std::int64_t denom = 1) const;

  std::complex<double> to_complex() const;

 private:
  std::vector<std::int64_t> c_;
};

/// zeta_p^n as a SumValue (exact) — the unit the character assigns.
SumValue char_value(int p, CharExponent n);
std::complex<double> char_value_complex(int p, CharExponent n);

}  // namespace ffm
