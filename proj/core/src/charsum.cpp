#include "ffm/charsum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ffm/errors.hpp"
#include "ffm/parallel.hpp"

namespace ffm {
namespace {

std::uint64_t pow_u64(int base, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= static_cast<std::uint64_t>(base);
  return r;
}

void check_table(const FieldCtx& F, const CoeffTable& tab) {
  if (tab.w.size() != pow_u64(F.q(), tab.depth))
    throw std::invalid_argument("transform: table size does not match depth");
}

}  // namespace

ExactTable::ExactTable(int depth, int p, std::int64_t scale, std::uint64_t count)
    : depth_(depth), p_(p), stride_(p == 2 ? 1 : p), scale_(scale), count_(count),
      c_(count * static_cast<std::uint64_t>(stride_), 0) {}

SumValue ExactTable::value(std::uint64_t index) const {
  SumValue v(p_);
  const std::int64_t* r = raw(index);
  if (stride_ == 1) {
    v.coeff(0) = r[0];
  } else {
    for (int i = 0; i < p_; ++i) v.coeff(i) = r[i];
  }
  return v;
}

bool ExactTable::operator==(const ExactTable& o) const {
  if (depth_ != o.depth_ || p_ != o.p_ || count_ != o.count_) return false;
  if (scale_ != o.scale_) return false;
  for (std::uint64_t i = 0; i < count_; ++i)
    if (value(i) != o.value(i)) return false;
  return true;
}

ExactTable transform_naive(const FieldCtx& F, const CoeffTable& tab) {
  check_table(F, tab);
  if (tab.depth > 8) throw resource_error("transform_naive: depth cap (M <= 8) exceeded");
  const int q = F.q();
  const int p = F.p();
  const std::uint64_t n = tab.size();
  ExactTable out(tab.depth, p, tab.scale, n);

  std::vector<Fq> xd(static_cast<std::size_t>(tab.depth));
  std::vector<Fq> ad(static_cast<std::size_t>(tab.depth));
  for (std::uint64_t a = 0; a < n; ++a) {
    std::uint64_t t = a;
    for (int j = 0; j < tab.depth; ++j) { ad[static_cast<std::size_t>(j)] = static_cast<Fq>(t % q); t /= q; }
    std::int64_t* acc = out.raw(a);
    for (std::uint64_t x = 0; x < n; ++x) {
      const std::int64_t w = tab.w[x];
      if (w == 0) continue;
      std::uint64_t s = x;
      int e = 0;
      for (int j = 0; j < tab.depth; ++j) {
        xd[static_cast<std::size_t>(j)] = static_cast<Fq>(s % q);
        s /= q;
        e += F.pair_exp(xd[static_cast<std::size_t>(j)], ad[static_cast<std::size_t>(j)]);
      }
      e %= p;
      if (p == 2) {
        acc[0] += e ? -w : w;
      } else {
        acc[e] += w;
      }
    }
  }
  return out;
}

ComplexTable transform_naive_complex(const FieldCtx& F, const CoeffTable& tab) {
  const ExactTable e = transform_naive(F, tab);
  ComplexTable out;
  out.depth = tab.depth;
  out.v.resize(e.size());
  for (std::uint64_t i = 0; i < e.size(); ++i)
    out.v[i] = e.value(i).to_complex() / static_cast<double>(e.scale());
  return out;
}

ExactTable transform_fast(const FieldCtx& F, const CoeffTable& tab, int workers) {
  check_table(F, tab);
  const int q = F.q();
  const int p = F.p();
  const std::uint64_t n = tab.size();
  ExactTable out(tab.depth, p, tab.scale, n);

  if (p == 2) {
    std::int64_t* v = out.raw(0);
    for (std::uint64_t i = 0; i < n; ++i) v[i] = tab.w[i];
    // Stage s pairs indices differing in digit s. For q = 2 the kernel is
    // the +- butterfly; q = 4, 8, ... compose h binary butterflies through
    // the pair_exp table, handled by the generic digit loop below.
    for (int s = 0; s < tab.depth; ++s) {
      const std::uint64_t step = pow_u64(q, s);
      const std::uint64_t block = step * static_cast<std::uint64_t>(q);
      const std::uint64_t nblocks = n / block;
      parallel_ranges(nblocks, workers, [&](std::uint64_t b0, std::uint64_t b1, int) {
        std::vector<std::int64_t> in(static_cast<std::size_t>(q));
        for (std::uint64_t b = b0; b < b1; ++b) {
          const std::uint64_t base = b * block;
          for (std::uint64_t off = 0; off < step; ++off) {
            std::int64_t* slot0 = v + base + off;
            if (q == 2) {
              const std::int64_t u = slot0[0], w = slot0[step];
              slot0[0] = u + w;
              slot0[step] = u - w;
            } else {
              for (int x = 0; x < q; ++x) in[static_cast<std::size_t>(x)] = slot0[static_cast<std::uint64_t>(x) * step];
              for (int y = 0; y < q; ++y) {
                std::int64_t acc = 0;
                for (int x = 0; x < q; ++x)
                  acc += F.pair_exp(static_cast<Fq>(x), static_cast<Fq>(y)) ? -in[static_cast<std::size_t>(x)]
                                                                            : in[static_cast<std::size_t>(x)];
                slot0[static_cast<std::uint64_t>(y) * step] = acc;
              }
            }
          }
        }
      });
    }
    return out;
  }

  // General p: values are coefficient vectors of length p; multiplying by
  // zeta^e shifts the vector.
  for (std::uint64_t i = 0; i < n; ++i) out.raw(i)[0] = tab.w[i];
  for (int s = 0; s < tab.depth; ++s) {
      const std::uint64_t step = pow_u64(q, s);
      const std::uint64_t block = step * static_cast<std::uint64_t>(q);
      const std::uint64_t nblocks = n / block;
      parallel_ranges(nblocks, workers, [&](std::uint64_t b0, std::uint64_t b1, int) {
        std::vector<std::int64_t> in(static_cast<std::size_t>(q) * static_cast<std::size_t>(p));
        for (std::uint64_t b = b0; b < b1; ++b) {
          const std::uint64_t base = b * block;
          for (std::uint64_t off = 0; off < step; ++off) {
            const std::uint64_t slot = base + off;
            for (int x = 0; x < q; ++x) {
              const std::int64_t* src = out.raw(slot + static_cast<std::uint64_t>(x) * step);
              std::copy(src, src + p, &in[static_cast<std::size_t>(x) * static_cast<std::size_t>(p)]);
            }
            for (int y = 0; y < q; ++y) {
              std::int64_t* dst = out.raw(slot + static_cast<std::uint64_t>(y) * step);
              std::fill(dst, dst + p, 0);
              for (int x = 0; x < q; ++x) {
                const int e = F.pair_exp(static_cast<Fq>(x), static_cast<Fq>(y));
                const std::int64_t* src = &in[static_cast<std::size_t>(x) * static_cast<std::size_t>(p)];
                for (int i = 0; i < p; ++i) dst[(i + e) % p] += src[i];
              }
            }
          }
        }
      });
  }
  return out;
}

ComplexTable transform_fast_complex(const FieldCtx& F, const CoeffTable& tab, int workers) {
  check_table(F, tab);
  const int q = F.q();
  const int p = F.p();
  const std::uint64_t n = tab.size();
  ComplexTable out;
  out.depth = tab.depth;
  out.v.resize(n);
  const double inv_scale = 1.0 / static_cast<double>(tab.scale);
  for (std::uint64_t i = 0; i < n; ++i) out.v[i] = tab.w[i] * inv_scale;

  // Kernel matrix U[x][y] = zeta_p^{tr(xy)}.
  std::vector<std::complex<double>> U(static_cast<std::size_t>(q) * q);
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y)
      U[static_cast<std::size_t>(x) * q + y] =
          char_value_complex(p, CharExponent{F.pair_exp(static_cast<Fq>(x), static_cast<Fq>(y))});

  for (int s = 0; s < tab.depth; ++s) {
    const std::uint64_t step = pow_u64(q, s);
    const std::uint64_t block = step * static_cast<std::uint64_t>(q);
    const std::uint64_t nblocks = n / block;
    parallel_ranges(nblocks, workers, [&](std::uint64_t b0, std::uint64_t b1, int) {
      std::vector<std::complex<double>> in(static_cast<std::size_t>(q));
      for (std::uint64_t b = b0; b < b1; ++b) {
        const std::uint64_t base = b * block;
        for (std::uint64_t off = 0; off < step; ++off) {
          std::complex<double>* slot = out.v.data() + base + off;
          if (q == 2) {
            const auto u = slot[0], w = slot[step];
            slot[0] = u + w;
            slot[step] = u - w;
            continue;
          }
          for (int x = 0; x < q; ++x) in[static_cast<std::size_t>(x)] = slot[static_cast<std::uint64_t>(x) * step];
          for (int y = 0; y < q; ++y) {
            std::complex<double> acc{0.0, 0.0};
            for (int x = 0; x < q; ++x) acc += U[static_cast<std::size_t>(x) * q + y] * in[static_cast<std::size_t>(x)];
            slot[static_cast<std::uint64_t>(y) * step] = acc;
          }
        }
      }
    });
  }
  return out;
}

SumValue eval_table_at(const FieldCtx& F, const CoeffTable& tab, const TorusPoint& a) {
  if (a.depth() < tab.depth) throw std::invalid_argument("eval_table_at: insufficient depth");
  const int q = F.q();
  SumValue acc(F.p());
  for (std::uint64_t x = 0; x < tab.size(); ++x) {
    const std::int64_t w = tab.w[x];
    if (w == 0) continue;
    std::uint64_t t = x;
    int e = 0;
    for (int j = 0; j < tab.depth; ++j) {
      const Fq digit = static_cast<Fq>(t % q);
      t /= q;
      e += F.pair_exp(digit, a.coeff_neg(j + 1));
    }
    SumValue term = SumValue::unit(F.p(), CharExponent{e});
    term.scale(w);
    acc += term;
  }
  return acc;
}

SumFamily::SumFamily(const PolyRing& R, const SieveTable& S) : R_(&R), S_(&S) {
  if (&S.ring() != &R) throw std::invalid_argument("SumFamily: sieve built over a different ring");
}

CoeffTable SumFamily::build_G(int N) const {
  if (N > S_->N()) throw std::invalid_argument("SumFamily: sieve shallower than N");
  CoeffTable tab;
  tab.depth = N + 1;
  tab.scale = 1;
  tab.w.assign(pow_u64(R_->q(), N + 1), 0);
  for (int d = 0; d <= N; ++d) {
    const std::uint64_t count = R_->pow_q(d);
    const std::uint64_t lead = count;  // monic of degree d: digits + q^d at position d
    for (std::uint64_t i = 0; i < count; ++i)
      if (S_->a_r(d, i)) tab.w[lead + i] = 1;
  }
  return tab;
}

CoeffTable SumFamily::build_g(int n) const {
  if (n > S_->N()) throw std::invalid_argument("SumFamily: sieve shallower than n");
  CoeffTable tab;
  tab.depth = n + 1;
  tab.scale = 1;
  tab.w.assign(pow_u64(R_->q(), n + 1), 0);
  const std::uint64_t count = R_->pow_q(n);
  for (std::uint64_t i = 0; i < count; ++i)
    if (S_->a_r(n, i)) tab.w[count + i] = 1;
  return tab;
}

CoeffTable SumFamily::build_g1(int N) const {
  CoeffTable tab;
  tab.depth = N;
  tab.scale = 1;
  tab.w.assign(pow_u64(R_->q(), N), 0);
  for (std::uint64_t x = 1; x < tab.size(); ++x) {
    const Poly f = R_->from_digits_index(N, x);
    tab.w[x] = S_->a_r(f);  // monic normalization inside
  }
  return tab;
}

CoeffTable SumFamily::build_g2(int N) const {
  CoeffTable tab;
  tab.depth = N;
  tab.scale = static_cast<std::int64_t>(pow_u64(R_->q(), N));
  tab.w.assign(pow_u64(R_->q(), N), 0);
  for (std::uint64_t x = 1; x < tab.size(); ++x) {
    const Poly f = R_->from_digits_index(N, x);
    tab.w[x] = S_->a_r(f) ? tab.scale - f.norm(R_->q()) : 0;
  }
  return tab;
}

CoeffTable SumFamily::build_fejer(int N) const {
  CoeffTable tab;
  tab.depth = N;
  tab.scale = static_cast<std::int64_t>(pow_u64(R_->q(), N));
  tab.w.assign(pow_u64(R_->q(), N), 0);
  tab.w[0] = tab.scale;  // f = 0 has |f| = 0, full weight
  for (std::uint64_t x = 1; x < tab.size(); ++x) {
    const Poly f = R_->from_digits_index(N, x);
    tab.w[x] = tab.scale - f.norm(R_->q());
  }
  return tab;
}

const CoeffTable& SumFamily::build_Ti(int i, int N) const {
  const auto key = std::make_pair(i, N);
  auto it = ti_cache_.find(key);
  if (it != ti_cache_.end()) return it->second;

  CoeffTable tab;
  tab.depth = N + 1;
  tab.scale = 1;
  tab.w.assign(pow_u64(R_->q(), N + 1), 0);
  if (i >= 0 && S_->r() * i <= N) {
    const auto c = S_->c_table(i, N);
    const std::uint64_t lead = R_->pow_q(N);
    for (std::uint64_t x = 0; x < c.size(); ++x) tab.w[lead + x] = c[x];
  }
  return ti_cache_.emplace(key, std::move(tab)).first->second;
}

CoeffTable SumFamily::build_Tstar(int N) const {
  const int r = S_->r();
  const int D = N / (r + 1);
  CoeffTable tab = build_g(N);
  tab.depth = N + 1;
  for (int i = 0; i <= D; ++i) {
    const CoeffTable& ti = build_Ti(i, N);
    for (std::uint64_t x = 0; x < tab.size(); ++x) tab.w[x] -= ti.w[x];
  }
  return tab;
}

CoeffTable SumFamily::build_hj(int j, int N) const {
  CoeffTable tab;
  tab.depth = N + 1;
  tab.scale = 1;
  tab.w.assign(pow_u64(R_->q(), N + 1), 0);
  for (int i = 0; i <= std::min(j, N / S_->r()); ++i) {
    const CoeffTable& ti = build_Ti(i, N);
    for (std::uint64_t x = 0; x < tab.size(); ++x) tab.w[x] += ti.w[x];
  }
  return tab;
}

CoeffTable SumFamily::build_Hj(int j, int N) const {
  CoeffTable tab = build_g(N);
  tab.depth = N + 1;
  const CoeffTable hj = build_hj(j, N);
  for (std::uint64_t x = 0; x < tab.size(); ++x) tab.w[x] -= hj.w[x];
  return tab;
}

CoeffTable SumFamily::build_monic_indicator(int N) const {
  CoeffTable tab;
  tab.depth = N + 1;
  tab.scale = 1;
  tab.w.assign(pow_u64(R_->q(), N + 1), 0);
  for (int d = 0; d <= N; ++d) {
    const std::uint64_t count = R_->pow_q(d);
    for (std::uint64_t i = 0; i < count; ++i) tab.w[count + i] = 1;
  }
  return tab;
}

SumValue SumFamily::G_at(int N, const TorusPoint& a) const {
  const FieldCtx& F = R_->field();
  SumValue acc(F.p());
  for (int d = 0; d <= N; ++d) {
    const std::uint64_t count = R_->pow_q(d);
    for (std::uint64_t i = 0; i < count; ++i) {
      if (!S_->a_r(d, i)) continue;
      acc += SumValue::unit(F.p(), pairing_exponent(F, R_->monic_from_index(d, i), a));
    }
  }
  return acc;
}

Rat fejer(const PolyRing& R, const TorusPoint& a, int N) {
  if (a.depth() < N) throw std::invalid_argument("fejer: depth below N");
  const int q = R.q();
  const OrdNorm on = ord_and_norm(R.field(), a);
  const int K = on.K(a.depth());
  const int m = std::min(N, K - 1);
  // Collapsing the weighted sum degree by degree:
  //   F = q^{-N} + q^{1-N} (q^{2m} - 1)/(q + 1).
  const std::int64_t qN = static_cast<std::int64_t>(pow_u64(q, N));
  std::int64_t q2m = 1;
  for (int i = 0; i < 2 * m; ++i) q2m *= q;
  return Rat(1, qN) + Rat(q * (q2m - 1), qN * (q + 1));
}

SumValue fejer_direct(const PolyRing& R, const TorusPoint& a, int N) {
  const FieldCtx& F = R.field();
  const std::int64_t qN = static_cast<std::int64_t>(pow_u64(R.q(), N));
  SumValue acc(F.p());
  const std::uint64_t count = pow_u64(R.q(), N);
  for (std::uint64_t x = 0; x < count; ++x) {
    const Poly f = R.from_digits_index(N, x);
    SumValue term = SumValue::unit(F.p(), pairing_exponent(F, f, a));
    term.scale(qN - f.norm(R.q()));
    acc += term;
  }
  return acc;  // scale q^N
}

SumValue v_direct(const FieldCtx& F, const TorusPoint& b, int N) {
  if (b.depth() < N + 1) throw std::invalid_argument("v_direct: depth below N+1");
  SumValue acc(F.p());
  PolyRing R(F);
  for (int d = 0; d <= N; ++d) {
    const std::uint64_t count = R.pow_q(d);
    for (std::uint64_t i = 0; i < count; ++i)
      acc += SumValue::unit(F.p(), pairing_exponent(F, R.monic_from_index(d, i), b));
  }
  return acc;
}

SumValue v_closed(const FieldCtx& F, const TorusPoint& b, int N) {
  if (b.depth() < N + 1) throw std::invalid_argument("v_closed: depth below N+1");
  const int q = F.q();
  const OrdNorm on = ord_and_norm(F, b);
  SumValue acc(F.p());
  if (on.below || -on.ord > N + 1) {
    // All characters trivial: (q^{N+1} - 1)/(q - 1) monic terms.
    std::int64_t total = 0, pw = 1;
    for (int d = 0; d <= N; ++d) { total += pw; pw *= q; }
    acc.coeff(0) = total;
    return acc;
  }
  const int n = -on.ord - 1;  // ord{beta} = -n-1, n <= N
  std::int64_t qn = 1, partial = 0;
  for (int d = 0; d < n; ++d) { partial += qn; qn *= q; }
  const Fq lead = b.coeff_neg(n + 1);
  SumValue top = SumValue::unit(F.p(), F.char_exponent(lead));
  top.scale(qn);
  acc.coeff(0) = partial;
  acc += top;
  return acc;
}

Rat S_closed(const PolyRing& R, const Poly& f, const Poly& l, int r) {
  if (f.is_zero() || f.leading() != 1 || !R.is_rfree(f, 2))
    throw std::domain_error("S_closed: f must be squarefree monic");
  if (!R.is_rfree_pair(l, f, r)) throw std::domain_error("S_closed: (l, f^r) must be r-free");
  const int mu = R.mobius(f);
  const std::int64_t nf_r = static_cast<std::int64_t>(pow_u64(R.q(), r * f.degree()));
  const std::int64_t qr1 = static_cast<std::int64_t>(pow_u64(R.q(), r - 1));
  // zeta_q(r) = q^{r-1}/(q^{r-1} - 1).
  return Rat(mu * nf_r, 1) * Rat(qr1 - 1, qr1) / Rat(R.phi_r(f, r), 1);
}

Rat S_truncated(const PolyRing& R, const SieveTable& S, const Poly& f, const Poly& l, int r,
                int B) {
  if (f.is_zero() || f.leading() != 1 || !R.is_rfree(f, 2))
    throw std::domain_error("S_truncated: f must be squarefree monic");
  if (!R.is_rfree_pair(l, f, r)) throw std::domain_error("S_truncated: (l, f^r) must be r-free");
  // Inner u-sum collapses: the term for d survives iff f^r | d^r l, which
  // for admissible (l, f^r) is exactly f | d, so the truncation sums
  // |f|^r mu(d)/|d|^r over multiples d = f m.
  const std::int64_t nf_r = static_cast<std::int64_t>(pow_u64(R.q(), r * f.degree()));
  __int128 num = 0;  // over denominator q^{rB}
  const std::int64_t q = R.q();
  for (int dm = 0; dm + f.degree() <= B; ++dm) {
    const int dd = dm + f.degree();
    std::int64_t unit = 1;  // q^{r(B - dd)}
    for (int i = 0; i < r * (B - dd); ++i) unit *= q;
    R.for_each_monic(dm, [&](const Poly& m) {
      const Poly d = R.mul(f, m);
      const int mu = S.mu(d);
      if (mu != 0) num += static_cast<__int128>(mu) * unit;
    });
  }
  std::int64_t qrB = 1;
  for (int i = 0; i < r * B; ++i) qrB *= q;
  // Reduce the 128-bit numerator against q^{rB} before building the Rat.
  __int128 g = num < 0 ? -num : num;
  __int128 b128 = qrB;
  while (b128 != 0) { const __int128 t = g % b128; g = b128; b128 = t; }
  if (g == 0) g = 1;
  return Rat(nf_r, 1) * Rat(static_cast<std::int64_t>(num / g), qrB / static_cast<std::int64_t>(g));
}

SumValue F_h_direct(const PolyRing& R, const TorusPoint& a, const Poly& h, int N) {
  if (h.is_zero()) throw std::domain_error("F_h_direct: h must be nonzero");
  const FieldCtx& F = R.field();
  const std::int64_t qN = static_cast<std::int64_t>(pow_u64(R.q(), N));
  SumValue acc(F.p());
  // Multiples of h with |f| < q^N (weight vanishes at |f| = q^N).
  acc.coeff(0) = qN;  // f = 0
  for (int dm = 0; dm + h.degree() < N; ++dm) {
    const std::uint64_t count = R.pow_q(dm);
    for (std::uint64_t i = 0; i < count; ++i) {
      // All associates c * m * h, m monic of degree dm.
      const Poly mh = R.mul(R.monic_from_index(dm, i), h);
      for (int c = 1; c < R.q(); ++c) {
        const Poly f = R.mul_scalar(mh, static_cast<Fq>(c));
        SumValue term = SumValue::unit(F.p(), pairing_exponent(F, f, a));
        term.scale(qN - f.norm(R.q()));
        acc += term;
      }
    }
  }
  return acc;  // scale q^N
}

Rat F_h_average(const PolyRing& R, const TorusPoint& a, const Poly& h, int N) {
  if (h.is_zero()) throw std::domain_error("F_h_average: h must be nonzero");
  const Poly hm = R.monic_scale(h);
  const std::int64_t nh = hm.norm(R.q());
  Rat acc(0);
  const std::uint64_t count = pow_u64(R.q(), hm.degree());
  for (std::uint64_t x = 0; x < count; ++x) {
    const Poly off = R.from_digits_index(hm.degree(), x);
    const TorusPoint shift = laurent_tail(R, off, hm, a.depth());
    acc += fejer(R, torus_sub(R.field(), a, shift), N);
  }
  return acc / Rat(nh);
}

Rat b_d(const PolyRing& R, const SieveTable& S, const Poly& d, int D, int r) {
  if (d.is_zero() || d.leading() != 1) throw std::domain_error("b_d: d must be monic");
  const int max_deg = D - d.degree();
  Rat acc(0);
  for (int md = 0; md <= max_deg; ++md) {
    const std::int64_t nm_r = static_cast<std::int64_t>(pow_u64(R.q(), r * md));
    std::int64_t coef = 0;
    R.for_each_monic(md, [&](const Poly& m) {
      if (S.mu(m) == 0) return;
      if (!R.gcd(m, d).is_one()) return;
      coef += S.mu(m);
    });
    acc += Rat(coef, nm_r);
  }
  return acc;
}

Rat H_d(const PolyRing& R, const TorusPoint& a, const Poly& d, int N, int r) {
  if (d.is_zero() || d.leading() != 1) throw std::domain_error("H_d: d must be monic");
  const Poly dr = R.pow(d, r);
  const std::int64_t nd_r = static_cast<std::int64_t>(pow_u64(R.q(), r * d.degree()));
  Rat acc(0);
  const std::uint64_t count = pow_u64(R.q(), dr.degree());
  for (std::uint64_t x = 0; x < count; ++x) {
    const Poly off = R.from_digits_index(dr.degree(), x);
    if (!R.is_rfree_pair(off, d, r)) continue;
    const TorusPoint shift = laurent_tail(R, off, dr, a.depth());
    acc += fejer(R, torus_sub(R.field(), a, shift), N);
  }
  return acc / Rat(nd_r);
}

Rat R_sum(const PolyRing& R, const SieveTable& S, const TorusPoint& a, int D, int N, int r) {
  Rat acc(0);
  for (int dd = 0; dd <= D; ++dd) {
    R.for_each_monic(dd, [&](const Poly& d) {
      const int mu = S.mu(d);
      if (mu == 0) return;
      acc += Rat(mu) * b_d(R, S, d, D, r) * H_d(R, a, d, N, r);
    });
  }
  return acc;
}

}  // namespace ffm
