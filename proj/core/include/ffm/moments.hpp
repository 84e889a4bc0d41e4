#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ffm/charsum.hpp"
#include "ffm/circle.hpp"
#include "ffm/polyring.hpp"

namespace ffm {

enum class Regime { sub, critical, super };
Regime regime_of(double k, int r);
std::string regime_name(Regime g);

enum class SweepMode { exact_where_possible, floating };

struct MomentOptions {
  SweepMode mode = SweepMode::exact_where_possible;
  std::uint64_t sweep_cap = std::uint64_t{1} << 26;  // max q^{N+1}
  int workers = 1;
};

/// One measured moment with its regime normalizer.
struct MomentReport {
  int q = 0, p = 0, h = 0, r = 0, N = 0;
  double k = 0;
  int M = 0;  // sweep depth, N + 1
  Regime regime = Regime::super;
  double I = 0;
  double normalizer = 0;
  double ratio = 0;
  bool exact_checked = false;  // k = 2 Parseval cross-check ran and agreed
};

/// I_r(k) as the exact uniform average of |G|^k over depth-(N+1) tails via
/// the fast transform. For k = 2 the exact Parseval value (the r-free count)
/// is computed alongside and must agree.
MomentReport moment(const SumFamily& family, double k, int N,
                    const MomentOptions& opts = {});

/// Exact second moment: q^{-M} sum |G|^2 as a rational (Parseval route).
Rat moment2_exact(const SumFamily& family, int N, const MomentOptions& opts = {});

struct BoundSuite {
  std::vector<MomentReport> rows;
  double band = 0;          // max/min ratio over the upper half of the range
  double band_threshold = 3.0;
  bool stable = true;       // band <= threshold
};

/// Runs moment() across an N range and summarizes the normalized ratio band
/// over the top half, the computable restatement of a two-sided growth
/// bound.
BoundSuite bound_suite(const SumFamily& family, double k, int N_lo, int N_hi,
                       const MomentOptions& opts = {}, double band_threshold = 3.0);

struct AsymptoticRow {
  int N = 0;
  int Q = 0;
  double I = 0;
  double ratio = 0;      // I / q^{N(k-1)}
  double rel_err = 0;    // |ratio - C| / C
  double minor_share = 0;
  double major_mass = 0;
  double minor_mass = 0;
};

struct AsymptoticReport {
  double k = 0;
  int r = 0;
  double C = 0;
  double theta = 0;
  std::vector<AsymptoticRow> rows;
  bool monotone = true;  // rel_err non-increasing over the top half (10% slack)
};

using QRule = std::function<int(int)>;

/// Compares I / q^{N(k-1)} against the circle-method constant C over an N
/// range, decomposing each sweep into major and minor mass via classify.
/// Requires k > 1 + 1/r.
AsymptoticReport asymptotic_suite(const PolyRing& R, double k, int r, int N_lo, int N_hi,
                                  const QRule& q_rule = {}, const MomentOptions& opts = {});

}  // namespace ffm
