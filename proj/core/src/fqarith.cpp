#include "ffm/fqarith.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ffm {
namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// F_p[x] arithmetic on coefficient vectors (lowest first), used only during
// table construction.
using PVec = std::vector<int>;

PVec trim(PVec v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

PVec pmul(const PVec& a, const PVec& b, int p) {
  if (a.empty() || b.empty()) return {};
  PVec r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return trim(std::move(r));
}

PVec pmod(PVec a, const PVec& m, int p) {
  a = trim(std::move(a));
  const int dm = static_cast<int>(m.size()) - 1;
  const int lead_inv = [&] {
    for (int x = 1; x < p; ++x)
      if (x * m.back() % p == 1) return x;
    throw std::logic_error("modulus leading coefficient not invertible");
  }();
  while (static_cast<int>(a.size()) - 1 >= dm) {
    const int shift = static_cast<int>(a.size()) - 1 - dm;
    const int c = a.back() * lead_inv % p;
    for (int i = 0; i <= dm; ++i) {
      int& t = a[static_cast<std::size_t>(shift + i)];
      t = ((t - c * m[static_cast<std::size_t>(i)]) % p + p) % p;
    }
    a = trim(std::move(a));
  }
  return a;
}

bool modulus_irreducible(const PVec& m, int p) {
  const int dm = static_cast<int>(m.size()) - 1;
  if (dm == 1) return true;
  // Trial division by every monic polynomial of degree <= dm/2.
  for (int d = 1; 2 * d <= dm; ++d) {
    std::int64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::int64_t idx = 0; idx < count; ++idx) {
      PVec div(static_cast<std::size_t>(d) + 1, 0);
      std::int64_t t = idx;
      for (int i = 0; i < d; ++i) { div[static_cast<std::size_t>(i)] = static_cast<int>(t % p); t /= p; }
      div[static_cast<std::size_t>(d)] = 1;
      if (pmod(m, div, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

FieldCtx::FieldCtx(int p, int h, const std::vector<int>& modulus, int cap)
    : p_(p), h_(h), modulus_(modulus) {
  if (!is_prime(p)) throw std::domain_error("FieldCtx: p must be prime");
  if (h < 1) throw std::domain_error("FieldCtx: extension degree must be >= 1");
  if (static_cast<int>(modulus.size()) != h + 1 || modulus.back() != 1)
    throw std::domain_error("FieldCtx: modulus must be monic of degree h");
  for (int c : modulus)
    if (c < 0 || c >= p) throw std::domain_error("FieldCtx: modulus coefficients must lie in [0,p)");

  std::int64_t q = 1;
  for (int i = 0; i < h; ++i) {
    q *= p;
    if (q > cap) throw resource_error("FieldCtx: q exceeds the configured cap");
  }
  q_ = static_cast<int>(q);

  if (!modulus_irreducible(modulus_, p_))
    throw std::domain_error("FieldCtx: modulus is reducible over F_p");

  build_tables();
  verify_structure();
}

FieldCtx FieldCtx::make(int q, int cap) {
  struct Entry { int q, p, h; std::vector<int> mod; };
  // Canonical moduli, one per supported q. Verified irreducible at
  // construction regardless.
  static const std::vector<Entry> kTable = {
      {2, 2, 1, {0, 1}},          {3, 3, 1, {0, 1}},
      {4, 2, 2, {1, 1, 1}},       {5, 5, 1, {0, 1}},
      {7, 7, 1, {0, 1}},          {8, 2, 3, {1, 1, 0, 1}},
      {9, 3, 2, {1, 0, 1}},       {16, 2, 4, {1, 1, 0, 0, 1}},
      {25, 5, 2, {2, 0, 1}},      {27, 3, 3, {1, 2, 0, 1}},
      {32, 2, 5, {1, 0, 1, 0, 0, 1}},
  };
  for (const auto& e : kTable)
    if (e.q == q) return FieldCtx(e.p, e.h, e.mod, cap);
  throw std::domain_error("FieldCtx::make: no canonical modulus for this q; supply one explicitly");
}

void FieldCtx::build_tables() {
  const auto n = static_cast<std::size_t>(q_);
  add_.assign(n * n, 0);
  mul_.assign(n * n, 0);
  neg_.assign(n, 0);
  inv_.assign(n, 0);
  trace_.assign(n, 0);

  auto decode = [&](int a) {
    PVec v(static_cast<std::size_t>(h_));
    for (int i = 0; i < h_; ++i) { v[static_cast<std::size_t>(i)] = a % p_; a /= p_; }
    return trim(std::move(v));
  };
  auto encode = [&](const PVec& v) {
    int a = 0;
    for (int i = h_ - 1; i >= 0; --i)
      a = a * p_ + (i < static_cast<int>(v.size()) ? v[static_cast<std::size_t>(i)] : 0);
    return static_cast<Fq>(a);
  };

  for (int a = 0; a < q_; ++a) {
    const PVec va = decode(a);
    for (int b = 0; b < q_; ++b) {
      const PVec vb = decode(b);
      PVec s(static_cast<std::size_t>(h_), 0);
      for (int i = 0; i < h_; ++i) {
        const int xa = i < static_cast<int>(va.size()) ? va[static_cast<std::size_t>(i)] : 0;
        const int xb = i < static_cast<int>(vb.size()) ? vb[static_cast<std::size_t>(i)] : 0;
        s[static_cast<std::size_t>(i)] = (xa + xb) % p_;
      }
      add_[idx(static_cast<Fq>(a), static_cast<Fq>(b))] = encode(s);
      mul_[idx(static_cast<Fq>(a), static_cast<Fq>(b))] = encode(pmod(pmul(va, vb, p_), modulus_, p_));
    }
    PVec nv = decode(a);
    for (int& c : nv) c = (p_ - c) % p_;
    neg_[static_cast<std::size_t>(a)] = encode(nv);
  }

  for (int a = 1; a < q_; ++a) {
    bool found = false;
    for (int b = 1; b < q_; ++b)
      if (mul_[idx(static_cast<Fq>(a), static_cast<Fq>(b))] == 1) {
        inv_[static_cast<std::size_t>(a)] = static_cast<Fq>(b);
        found = true;
        break;
      }
    if (!found) throw std::domain_error("FieldCtx: non-invertible nonzero element (modulus reducible?)");
  }

  // trace(c) = sum of Frobenius orbit c^{p^i}, i = 0..h-1; always in F_p.
  for (int a = 0; a < q_; ++a) {
    Fq acc = 0;
    Fq power = static_cast<Fq>(a);
    for (int i = 0; i < h_; ++i) {
      acc = add_[idx(acc, power)];
      power = pow(power, static_cast<std::uint64_t>(p_));
    }
    const PVec coords = decode(acc);
    for (std::size_t i = 1; i < coords.size(); ++i)
      if (coords[i] != 0) throw std::logic_error("FieldCtx: trace left the prime field");
    trace_[static_cast<std::size_t>(a)] = coords.empty() ? 0 : coords[0];
  }
}

void FieldCtx::verify_structure() const {
  // The multiplicative group must be cyclic of order q-1: find a generator.
  for (int a = 1; a < q_; ++a) {
    int order = 1;
    Fq x = static_cast<Fq>(a);
    while (x != 1) {
      x = mul(x, static_cast<Fq>(a));
      if (++order > q_) throw std::logic_error("FieldCtx: runaway element order");
    }
    if (order == q_ - 1) return;
  }
  throw std::logic_error("FieldCtx: no generator of order q-1 found");
}

Fq FieldCtx::element(int index) const {
  if (index < 0 || index >= q_) throw std::domain_error("FieldCtx: element index out of range");
  return static_cast<Fq>(index);
}

Fq FieldCtx::from_coords(const std::vector<int>& c) const {
  if (static_cast<int>(c.size()) > h_) throw std::domain_error("FieldCtx: too many coordinates");
  int a = 0;
  int pw = 1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] < 0 || c[i] >= p_) throw std::domain_error("FieldCtx: coordinate out of range");
    a += c[i] * pw;
    pw *= p_;
  }
  return static_cast<Fq>(a);
}

std::vector<int> FieldCtx::coords(Fq a) const {
  std::vector<int> c(static_cast<std::size_t>(h_));
  int v = a;
  for (int i = 0; i < h_; ++i) { c[static_cast<std::size_t>(i)] = v % p_; v /= p_; }
  return c;
}

Fq FieldCtx::from_prime(int residue) const {
  residue %= p_;
  if (residue < 0) residue += p_;
  return static_cast<Fq>(residue);
}

Fq FieldCtx::inv(Fq a) const {
  if (a == 0) throw std::domain_error("FieldCtx: inverse of zero");
  return inv_[a];
}

Fq FieldCtx::pow(Fq a, std::uint64_t e) const {
  Fq r = 1;
  Fq base = a;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

SumValue SumValue::unit(int p, CharExponent e) {
  SumValue v(p);
  int n = e.value % p;
  if (n < 0) n += p;
  v.c_[static_cast<std::size_t>(n)] = 1;
  return v;
}

SumValue& SumValue::operator+=(const SumValue& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

SumValue& SumValue::operator-=(const SumValue& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

SumValue SumValue::operator-() const {
  SumValue r(*this);
  for (auto& x : r.c_) x = -x;
  return r;
}

SumValue& SumValue::scale(std::int64_t m) {
  for (auto& x : c_) x *= m;
  return *this;
}

SumValue SumValue::times_root(int e) const {
  const int p = this->p();
  e %= p;
  if (e < 0) e += p;
  SumValue r(p);
  for (int i = 0; i < p; ++i)
    r.c_[static_cast<std::size_t>((i + e) % p)] = c_[static_cast<std::size_t>(i)];
  return r;
}

SumValue SumValue::operator*(const SumValue& o) const {
  const int p = this->p();
  SumValue r(p);
  for (int i = 0; i < p; ++i) {
    if (c_[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; j < p; ++j)
      r.c_[static_cast<std::size_t>((i + j) % p)] += c_[static_cast<std::size_t>(i)] * o.c_[static_cast<std::size_t>(j)];
  }
  return r;
}

SumValue SumValue::conj() const {
  const int p = this->p();
  SumValue r(p);
  for (int i = 0; i < p; ++i)
    r.c_[static_cast<std::size_t>((p - i) % p)] = c_[static_cast<std::size_t>(i)];
  return r;
}

std::vector<std::int64_t> SumValue::reduced() const {
  const int p = this->p();
  std::vector<std::int64_t> r(static_cast<std::size_t>(p - 1));
  const std::int64_t last = c_[static_cast<std::size_t>(p - 1)];
  for (int i = 0; i + 1 < p; ++i) r[static_cast<std::size_t>(i)] = c_[static_cast<std::size_t>(i)] - last;
  return r;
}

bool SumValue::is_zero() const {
  const auto r = reduced();
  for (auto x : r)
    if (x != 0) return false;
  return true;
}

bool operator==(const SumValue& a, const SumValue& b) {
  return a.p() == b.p() && a.reduced() == b.reduced();
}

std::optional<Rat> SumValue::as_rational(std::int64_t denom) const {
  const auto r = reduced();
  for (std::size_t i = 1; i < r.size(); ++i)
    if (r[i] != 0) return std::nullopt;
  return Rat(r.empty() ? 0 : r[0], denom);
}

std::complex<double> SumValue::to_complex() const {
  const int p = this->p();
  std::complex<double> z{0.0, 0.0};
  for (int i = 0; i < p; ++i) {
    if (c_[static_cast<std::size_t>(i)] == 0) continue;
    const double th = 2.0 * std::numbers::pi * i / p;
    z += static_cast<double>(c_[static_cast<std::size_t>(i)]) * std::complex<double>{std::cos(th), std::sin(th)};
  }
  return z;
}

SumValue char_value(int p, CharExponent n) { return SumValue::unit(p, n); }

std::complex<double> char_value_complex(int p, CharExponent n) {
  const double th = 2.0 * std::numbers::pi * (((n.value % p) + p) % p) / p;
  return {std::cos(th), std::sin(th)};
}

}  // namespace ffm
