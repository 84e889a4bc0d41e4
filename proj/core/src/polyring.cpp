#include "ffm/polyring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ffm {

Poly::Poly(std::vector<Fq> coeffs) : c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::int64_t Poly::norm(int q) const {
  if (is_zero()) return 0;
  std::int64_t n = 1;
  for (int i = 0; i < degree(); ++i) n *= q;
  return n;
}

double Poly::norm_d(int q) const {
  return is_zero() ? 0.0 : std::pow(static_cast<double>(q), degree());
}

bool Poly::operator<(const Poly& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (int i = degree(); i >= 0; --i)
    if (coeff(i) != o.coeff(i)) return coeff(i) < o.coeff(i);
  return false;
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    const int c = coeff(i);
    if (c == 0) continue;
    if (!s.empty()) s += '+';
    if (i == 0 || c != 1) s += std::to_string(c);
    if (i >= 1) {
      if (c != 1) s += '*';
      s += 't';
      if (i > 1) s += '^' + std::to_string(i);
    }
  }
  return s;
}

Poly PolyRing::add(const Poly& a, const Poly& b) const {
  std::vector<Fq> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = F_->add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
  return Poly(std::move(c));
}

Poly PolyRing::sub(const Poly& a, const Poly& b) const {
  std::vector<Fq> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = F_->sub(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
  return Poly(std::move(c));
}

Poly PolyRing::mul(const Poly& a, const Poly& b) const {
  if (a.is_zero() || b.is_zero()) return Poly::zero();
  std::vector<Fq> c(a.coeffs().size() + b.coeffs().size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    const Fq ai = a.coeffs()[i];
    if (ai == 0) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j)
      c[i + j] = F_->add(c[i + j], F_->mul(ai, b.coeffs()[j]));
  }
  return Poly(std::move(c));
}

Poly PolyRing::mul_scalar(const Poly& a, Fq s) const {
  if (s == 0) return Poly::zero();
  std::vector<Fq> c = a.coeffs();
  for (auto& x : c) x = F_->mul(x, s);
  return Poly(std::move(c));
}

Poly PolyRing::pow(const Poly& a, int e) const {
  Poly r = Poly::one();
  for (int i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

std::pair<Poly, Poly> PolyRing::divmod(const Poly& a, const Poly& b) const {
  if (b.is_zero()) throw std::domain_error("PolyRing: division by zero polynomial");
  if (a.degree() < b.degree()) return {Poly::zero(), a};
  std::vector<Fq> rem = a.coeffs();
  std::vector<Fq> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1), 0);
  const Fq lead_inv = F_->inv(b.leading());
  for (int d = a.degree(); d >= b.degree(); --d) {
    const Fq top = rem[static_cast<std::size_t>(d)];
    if (top == 0) continue;
    const Fq c = F_->mul(top, lead_inv);
    quot[static_cast<std::size_t>(d - b.degree())] = c;
    for (int i = 0; i <= b.degree(); ++i) {
      auto& r = rem[static_cast<std::size_t>(d - b.degree() + i)];
      r = F_->sub(r, F_->mul(c, b.coeff(i)));
    }
  }
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

bool PolyRing::divides(const Poly& d, const Poly& f) const {
  if (f.is_zero()) return true;
  if (d.is_zero() || d.degree() > f.degree()) return false;
  return divmod(f, d).second.is_zero();
}

Poly PolyRing::monic_scale(const Poly& a) const {
  if (a.is_zero()) return a;
  return mul_scalar(a, F_->inv(a.leading()));
}

std::pair<Poly, Poly> PolyRing::gcd_lcm(const Poly& a, const Poly& b) const {
  if (a.is_zero() && b.is_zero())
    throw std::domain_error("PolyRing: gcd_lcm of two zero polynomials");
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  const Poly g = monic_scale(x);
  if (a.is_zero() || b.is_zero()) return {g, Poly::zero()};
  const Poly l = monic_scale(divmod(mul(a, b), g).first);
  return {g, l};
}

Poly PolyRing::monic_from_index(int deg, std::uint64_t index) const {
  if (deg < 0) throw std::domain_error("PolyRing: monic degree must be >= 0");
  std::vector<Fq> c(static_cast<std::size_t>(deg) + 1, 0);
  for (int i = 0; i < deg; ++i) {
    c[static_cast<std::size_t>(i)] = static_cast<Fq>(index % static_cast<std::uint64_t>(q()));
    index /= static_cast<std::uint64_t>(q());
  }
  c[static_cast<std::size_t>(deg)] = 1;
  return Poly(std::move(c));
}

std::uint64_t PolyRing::monic_index(const Poly& f) const {
  std::uint64_t idx = 0;
  for (int i = f.degree() - 1; i >= 0; --i)
    idx = idx * static_cast<std::uint64_t>(q()) + f.coeff(i);
  return idx;
}

Poly PolyRing::from_digits_index(int len, std::uint64_t index) const {
  std::vector<Fq> c(static_cast<std::size_t>(len), 0);
  for (int i = 0; i < len; ++i) {
    c[static_cast<std::size_t>(i)] = static_cast<Fq>(index % static_cast<std::uint64_t>(q()));
    index /= static_cast<std::uint64_t>(q());
  }
  return Poly(std::move(c));
}

std::uint64_t PolyRing::digits_index(const Poly& f, int len) const {
  if (f.degree() >= len) throw std::domain_error("PolyRing: polynomial too large for digit window");
  std::uint64_t idx = 0;
  for (int i = len - 1; i >= 0; --i)
    idx = idx * static_cast<std::uint64_t>(q()) + f.coeff(i);
  return idx;
}

std::vector<Poly> PolyRing::enumerate_monic(int deg) const {
  const std::uint64_t count = pow_q(deg);
  std::vector<Poly> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(monic_from_index(deg, i));
  return out;
}

void PolyRing::for_each_monic(int deg, const std::function<void(const Poly&)>& fn) const {
  const std::uint64_t count = pow_q(deg);
  for (std::uint64_t i = 0; i < count; ++i) fn(monic_from_index(deg, i));
}

std::vector<Poly> PolyRing::irreducibles_up_to(int deg) const {
  std::vector<Poly> irr;
  for (int d = 1; d <= deg; ++d) {
    for_each_monic(d, [&](const Poly& f) {
      for (const Poly& pi : irr) {
        if (2 * pi.degree() > d) break;
        if (divides(pi, f)) return;
      }
      irr.push_back(f);
    });
  }
  return irr;
}

bool PolyRing::is_irreducible(const Poly& f) const {
  if (f.degree() < 1) return false;
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    const std::uint64_t count = pow_q(d);
    for (std::uint64_t i = 0; i < count; ++i)
      if (divides(monic_from_index(d, i), f)) return false;
  }
  return true;
}

std::vector<std::pair<Poly, int>> PolyRing::factor(const Poly& f) const {
  if (f.is_zero()) throw std::domain_error("PolyRing: cannot factor zero");
  std::vector<std::pair<Poly, int>> out;
  Poly rest = monic_scale(f);
  for (int d = 1; rest.degree() > 0 && 2 * d <= rest.degree(); ++d) {
    const std::uint64_t count = pow_q(d);
    for (std::uint64_t i = 0; i < count && rest.degree() >= d; ++i) {
      const Poly pi = monic_from_index(d, i);
      if (!divides(pi, rest)) continue;
      int e = 0;
      while (divides(pi, rest)) {
        rest = divmod(rest, pi).first;
        ++e;
      }
      out.emplace_back(pi, e);
    }
  }
  if (rest.degree() > 0) out.emplace_back(rest, 1);  // leftover is irreducible
  return out;
}

int PolyRing::mobius(const Poly& f) const {
  if (f.is_zero()) throw std::domain_error("PolyRing: mobius of zero");
  const auto fac = factor(f);
  int sign = 1;
  for (const auto& [pi, e] : fac) {
    if (e >= 2) return 0;
    sign = -sign;
  }
  return sign;
}

bool PolyRing::is_rfree(const Poly& f, int r) const {
  if (f.is_zero()) return false;
  for (const auto& [pi, e] : factor(f))
    if (e >= r) return false;
  return true;
}

bool PolyRing::is_rfree_pair(const Poly& l, const Poly& f, int r) const {
  if (!f.is_one() && (f.is_zero() || f.leading() != 1))
    throw std::domain_error("PolyRing: is_rfree_pair requires monic f");
  if (l.is_zero()) return f.is_one();  // gcd(0, f^r) = f^r
  const Poly g = gcd(l, pow(f, r));
  if (g.is_one()) return true;
  return is_rfree(g, r);
}

std::int64_t PolyRing::phi_r(const Poly& f, int r) const {
  if (f.is_zero() || f.leading() != 1)
    throw std::domain_error("PolyRing: phi_r requires monic nonzero f");
  // Multiplicative: each pi^e contributes |pi|^{re} - |pi|^{r(e-1)}.
  std::int64_t result = 1;
  for (const auto& [pi, e] : factor(f)) {
    std::int64_t npi_r = 1;
    for (int i = 0; i < r * pi.degree(); ++i) npi_r *= q();
    std::int64_t term = 1;
    for (int i = 0; i < e - 1; ++i) term *= npi_r;
    result *= term * (npi_r - 1);
  }
  return result;
}

std::uint64_t PolyRing::pow_q(int e) const {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= static_cast<std::uint64_t>(q());
  return r;
}

double zeta_q(int q, double s) {
  if (s <= 1.0) throw std::domain_error("zeta_q: diverges for s <= 1");
  return 1.0 / (1.0 - std::pow(static_cast<double>(q), 1.0 - s));
}

double L_trivial(const PolyRing& R, int r, const Poly& f) {
  const double phi = static_cast<double>(R.phi_r(f, r));
  const double nf_r = std::pow(f.norm_d(R.q()), r);
  return zeta_q(R.q(), r) * phi / nf_r;
}

SieveTable::SieveTable(const PolyRing& R, int N, int r, int mu_degree_cap)
    : R_(&R), N_(N), r_(r) {
  if (N < 0 || r < 2) throw std::domain_error("SieveTable: need N >= 0 and r >= 2");
  mu_cap_ = mu_degree_cap < 0 ? std::min(N, 12) : std::min(mu_degree_cap, N);

  ar_.resize(static_cast<std::size_t>(N) + 1);
  for (int d = 0; d <= N; ++d) ar_[static_cast<std::size_t>(d)].assign(R.pow_q(d), 1);

  // a_r: strike all multiples of pi^r.
  const auto irr = R.irreducibles_up_to(N / r);
  for (const Poly& pi : irr) {
    const Poly pir = R.pow(pi, r);
    for (int md = 0; md + pir.degree() <= N; ++md) {
      R.for_each_monic(md, [&](const Poly& m) {
        const Poly f = R.mul(m, pir);
        ar_[static_cast<std::size_t>(f.degree())][R.monic_index(f)] = 0;
      });
    }
  }

  // mu: locate a small irreducible factor and recurse on the cofactor. A
  // monic f with no irreducible divisor of degree <= deg(f)/2 is itself
  // irreducible, so the scan below only needs irreducibles to mu_cap/2.
  const auto irr_mu = R.irreducibles_up_to(mu_cap_ / 2);
  mu_.resize(static_cast<std::size_t>(mu_cap_) + 1);
  mu_[0].assign(1, 1);
  for (int d = 1; d <= mu_cap_; ++d) {
    auto& row = mu_[static_cast<std::size_t>(d)];
    const std::uint64_t count = R.pow_q(d);
    row.assign(count, 0);
    for (std::uint64_t i = 0; i < count; ++i) {
      const Poly f = R.monic_from_index(d, i);
      std::int8_t value = -1;  // irreducible unless a small divisor shows up
      for (const Poly& pi : irr_mu) {
        if (2 * pi.degree() > d) break;
        if (!R.divides(pi, f)) continue;
        const Poly g = R.divmod(f, pi).first;
        value = R.divides(pi, g)
                    ? std::int8_t{0}
                    : static_cast<std::int8_t>(
                          -mu_[static_cast<std::size_t>(g.degree())][R.monic_index(g)]);
        break;
      }
      row[i] = value;
    }
  }

  rfree_counts_.assign(static_cast<std::size_t>(N) + 1, 0);
  for (int d = 0; d <= N; ++d) {
    std::int64_t c = 0;
    for (const auto flag : ar_[static_cast<std::size_t>(d)]) c += flag;
    rfree_counts_[static_cast<std::size_t>(d)] = c;
  }
}

int SieveTable::a_r(int deg, std::uint64_t monic_idx) const {
  return ar_[static_cast<std::size_t>(deg)][monic_idx];
}

int SieveTable::a_r(const Poly& f) const {
  if (f.is_zero()) return 0;
  const Poly m = R_->monic_scale(f);  // r-freeness is unit-invariant
  if (m.degree() > N_) throw std::domain_error("SieveTable: degree beyond sieve range");
  return a_r(m.degree(), R_->monic_index(m));
}

int SieveTable::mu(int deg, std::uint64_t monic_idx) const {
  if (deg > mu_cap_) throw std::domain_error("SieveTable: mu beyond materialized range");
  return mu_[static_cast<std::size_t>(deg)][monic_idx];
}

int SieveTable::mu(const Poly& f) const {
  if (f.is_zero() || f.leading() != 1) throw std::domain_error("SieveTable: mu requires monic f");
  return mu(f.degree(), R_->monic_index(f));
}

std::int64_t SieveTable::count_rfree(int deg) const {
  return rfree_counts_[static_cast<std::size_t>(deg)];
}

std::int64_t SieveTable::count_rfree_upto(int deg) const {
  std::int64_t s = 0;
  for (int d = 0; d <= deg; ++d) s += count_rfree(d);
  return s;
}

std::int64_t SieveTable::mobius_degree_sum(int n) const {
  if (n > mu_cap_) throw std::domain_error("SieveTable: mobius_degree_sum beyond mu range");
  std::int64_t s = 0;
  for (const auto v : mu_[static_cast<std::size_t>(n)]) s += v;
  return s;
}

int SieveTable::c_i(const Poly& f, int i) const {
  if (i < 0) return 0;
  if (i == 0) return 1;
  if (r_ * i > f.degree()) return 0;
  int sum = 0;
  const std::uint64_t count = R_->pow_q(i);
  for (std::uint64_t di = 0; di < count; ++di) {
    const Poly d = R_->monic_from_index(i, di);
    const int mu_d = mu(i, di);
    if (mu_d == 0) continue;
    if (R_->divides(R_->pow(d, r_), f)) sum += mu_d;
  }
  return sum;
}

std::vector<std::int32_t> SieveTable::c_table(int i, int K) const {
  std::vector<std::int32_t> table(R_->pow_q(K), 0);
  if (i < 0 || r_ * i > K) return table;
  if (i == 0) {
    std::fill(table.begin(), table.end(), 1);
    return table;
  }
  const std::uint64_t count = R_->pow_q(i);
  for (std::uint64_t di = 0; di < count; ++di) {
    const int mu_d = mu(i, di);
    if (mu_d == 0) continue;
    const Poly dr = R_->pow(R_->monic_from_index(i, di), r_);
    R_->for_each_monic(K - r_ * i, [&](const Poly& m) {
      table[R_->monic_index(R_->mul(m, dr))] += mu_d;
    });
  }
  return table;
}

void SieveTable::corrupt_for_testing() {
  // Flip the flag of the last monic of the top degree.
  auto& row = ar_[static_cast<std::size_t>(N_)];
  auto& flag = row[row.size() - 1];
  flag = flag ? 0 : 1;
  rfree_counts_[static_cast<std::size_t>(N_)] += flag ? 1 : -1;
}

}  // namespace ffm
