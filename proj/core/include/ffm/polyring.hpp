#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ffm/fqarith.hpp"
#include "ffm/rational.hpp"

namespace ffm {

/// A polynomial over F_q: coefficients lowest degree first, no trailing
/// zeros. The zero polynomial is the empty vector; degree() reports -1 for
/// it (ord(0) = -infinity in the norm convention, |0| = 0).
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Fq> coeffs);

  static Poly zero() { return Poly(); }
  static Poly constant(Fq c) { return c == 0 ? Poly() : Poly(std::vector<Fq>{c}); }
  static Poly one() { return constant(1); }
  static Poly t() { return Poly(std::vector<Fq>{0, 1}); }

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Fq coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : Fq{0};
  }
  Fq leading() const { return c_.back(); }
  const std::vector<Fq>& coeffs() const { return c_; }

  /// |f| = q^deg(f), |0| = 0.
  std::int64_t norm(int q) const;
  double norm_d(int q) const;

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }
  bool operator<(const Poly& o) const;  // by (degree, digit index); total order

  std::string str() const;  // "t^2+t+1" style, coefficient indices as digits

 private:
  std::vector<Fq> c_;
};

/// Arithmetic over F_q[t] bound to a FieldCtx.
class PolyRing {
 public:
  explicit PolyRing(const FieldCtx& F) : F_(&F) {}

  const FieldCtx& field() const { return *F_; }
  int q() const { return F_->q(); }

  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly mul(const Poly& a, const Poly& b) const;
  Poly mul_scalar(const Poly& a, Fq c) const;
  Poly pow(const Poly& a, int e) const;
  std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const;
  Poly mod(const Poly& a, const Poly& b) const { return divmod(a, b).second; }
  bool divides(const Poly& d, const Poly& f) const;

  Poly monic_scale(const Poly& a) const;  // normalize to monic (0 stays 0)

  /// Greatest common monic divisor and least common monic multiple.
  /// Throws domain_error when both inputs are zero. gcd(0,f) is the monic
  /// normalization of f.
  std::pair<Poly, Poly> gcd_lcm(const Poly& a, const Poly& b) const;
  Poly gcd(const Poly& a, const Poly& b) const { return gcd_lcm(a, b).first; }

  // Canonical enumerations. A monic polynomial of degree n corresponds to
  // the base-q integer of its non-leading digits; a general polynomial of
  // degree < len corresponds to the base-q integer of all len digits.
  Poly monic_from_index(int deg, std::uint64_t index) const;
  std::uint64_t monic_index(const Poly& f) const;
  Poly from_digits_index(int len, std::uint64_t index) const;
  std::uint64_t digits_index(const Poly& f, int len) const;
  std::vector<Poly> enumerate_monic(int deg) const;
  void for_each_monic(int deg, const std::function<void(const Poly&)>& fn) const;

  std::vector<Poly> irreducibles_up_to(int deg) const;
  bool is_irreducible(const Poly& f) const;

  /// Distinct monic irreducible factors with exponents, by trial division.
  std::vector<std::pair<Poly, int>> factor(const Poly& f) const;

  int mobius(const Poly& f) const;          // via factor()
  bool is_rfree(const Poly& f, int r) const;
  /// True iff gcd(l, f^r) is r-free; f must be monic.
  bool is_rfree_pair(const Poly& l, const Poly& f, int r) const;

  /// |f|^r prod_{pi | f} (1 - |pi|^{-r}); the arc count of a denominator f.
  std::int64_t phi_r(const Poly& f, int r) const;

  std::uint64_t pow_q(int e) const;  // q^e as uint64

 private:
  const FieldCtx* F_;
};

/// zeta_q(s) = 1/(1 - q^{1-s}) for s > 1.
double zeta_q(int q, double s);

/// L(r, chi_0) for the trivial character mod f: zeta_q(r) * Phi_r(f)/|f|^r.
double L_trivial(const PolyRing& R, int r, const Poly& f);

/// Per-degree flags a_r(f) and mu(f) for all monic f of degree <= N.
///
/// a_r is sieved by marking multiples of pi^r; mu by smallest-factor
/// recursion and is only materialized up to mu_degree_cap (every consumer in
/// this library needs small degrees only).
class SieveTable {
 public:
  SieveTable(const PolyRing& R, int N, int r, int mu_degree_cap = -1);

  int N() const { return N_; }
  int r() const { return r_; }
  int mu_degree_cap() const { return mu_cap_; }

  int a_r(int deg, std::uint64_t monic_idx) const;
  int a_r(const Poly& f) const;
  int mu(int deg, std::uint64_t monic_idx) const;
  int mu(const Poly& f) const;

  std::int64_t count_rfree(int deg) const;        // #r-free monic of degree deg
  std::int64_t count_rfree_upto(int deg) const;

  /// sum_{m in M_n} mu(m): 1 for n=0, -q for n=1, 0 for n >= 2.
  std::int64_t mobius_degree_sum(int n) const;

  /// c_i(f) = sum over d in M_i with d^r | f of mu(d), by direct divisor
  /// enumeration (diagnostic sizes only).
  int c_i(const Poly& f, int i) const;

  /// c_i over all of M_K at once (bulk sieve), indexed by monic index.
  std::vector<std::int32_t> c_table(int i, int K) const;

  /// Test hook: flips one a_r flag so negative-control checks can observe a
  /// corrupted sieve. Not used by any computation path.
  void corrupt_for_testing();

  const PolyRing& ring() const { return *R_; }

 private:
  const PolyRing* R_;
  int N_, r_, mu_cap_;
  std::vector<std::vector<std::int8_t>> ar_;   // [deg][monic_idx]
  std::vector<std::vector<std::int8_t>> mu_;   // [deg][monic_idx], deg <= mu_cap_
  std::vector<std::int64_t> rfree_counts_;
};

}  // namespace ffm
