#pragma once

#include <string>
#include <vector>

namespace ffm {

struct IdentityResult {
  std::string name;
  bool pass = false;
  std::string detail;  // short note on the first failure, empty on pass
};

struct IdentityOptions {
  int depth = 4;            // exhaustive torus depth
  int r = 2;                // sieve power for the Parseval/count check
  bool corrupt_sieve = false;  // negative-control hook
  unsigned seed = 12345;    // random tables
};

/// Exact-identity suite for one field: orthogonality, the full and monic
/// degree-slice character sum identities, the monic-prefix sum bound,
/// Parseval on random tables, Mobius degree sums, Fejer non-negativity and
/// unit integral, and the sieve-vs-transform second-moment count. Every
/// check is exact (zero tolerance).
std::vector<IdentityResult> run_identity_suite(int q, const IdentityOptions& opts = {});

}  // namespace ffm
