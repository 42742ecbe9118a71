#pragma once

#include <stdexcept>
#include <string>
#include <vector>

// Integer arithmetic around the tiling equation N + M^2 = 2 K^2.
//
// A solution (M, K) fixes the tile shape: s = 2 sin(alpha/2) = M/K,
// and the tile with angles alpha, beta, gamma (gamma = pi/2 + alpha/2,
// 3 alpha + 2 beta = pi) has sides proportional to
//   a = M/K * lambda, b = lambda - M^2/K, c = lambda   with lambda = K,
// i.e. K-scaled integer sides (MK, K^2 - M^2, K^2).

namespace tritile {

// Raised when a proven invariant fails at runtime (a bug signal, not bad input).
struct invariant_error : std::logic_error {
  using std::logic_error::logic_error;
};

struct Solution {
  long long M = 0;
  long long K = 0;
  bool operator==(const Solution&) const = default;
};

// Integer square root, exact (floor) for n >= 0.
long long isqrt_ll(long long n);

// All solutions of N + M^2 = 2 K^2 with 0 < M < K, sorted by M ascending.
// Iterates candidate M and tests (N + M^2)/2 for squareness.
std::vector<Solution> solve_tiling_equation(long long N);

// Independent oracle for solve_tiling_equation: iterates candidate K and
// tests 2 K^2 - N for squareness. Same result contract.
std::vector<Solution> brute_force_solutions(long long N);

// N is admissible when its squarefree part has no prime factor congruent to
// +-3 mod 8 (2 and primes == +-1 mod 8 are allowed; square factors are free).
struct Admissibility {
  long long N = 0;
  bool admissible = false;
  long long square_part = 1;      // largest square divisor
  long long squarefree_part = 1;  // N / square_part
  std::vector<long long> violating_primes;
};
Admissibility classify_admissible(long long N);

// Cross-checks solvability against admissibility over [lo, hi]:
//   solvable (some 0 < M < K) implies admissible, and
//   admissible implies solvable unless N is a square or twice a square.
// Any N breaking either direction lands in `mismatches` (theorem violation);
// admissible squares / twice squares without a 0 < M < K solution are the
// expected exclusions and are recorded separately.
struct ConsistencyReport {
  long long checked = 0;
  std::vector<long long> mismatches;
  std::vector<long long> exclusions;
};
ConsistencyReport admissibility_consistency(long long lo, long long hi);

// One descent step (M, K) -> (3M + 4K, 3K + 2M) for sign = +1, or
// (3M - 4K, 3K - 2M) for sign = -1; multiplication by a unit of norm 1
// in Z[sqrt 2], so 2 K^2 - M^2 is preserved. Inputs need not satisfy M < K.
Solution descent_step(const Solution& s, int sign);

// Everything derived from a solution with 0 < M < K. All integer fields are
// exact; `J` is meaningful only when `divisible` (K | M^2) holds.
struct TileSpec {
  long long N = 0, M = 0, K = 0;
  long long D = 0;          // 4 K^2 - M^2, so sqrt(D) = 2 K cos(alpha/2)
  bool divisible = false;   // K | M^2
  long long J = 0;          // M^2 / K when divisible
  long long a_scaled = 0;   // M K
  long long b_scaled = 0;   // K^2 - M^2
  long long c_scaled = 0;   // K^2
  long long X_scaled = 0;   // |BC| = M N
  long long Y_scaled = 0;   // |AC| = K (N - K^2)
  long long Z_scaled = 0;   // |AB| = K^3
};
TileSpec derive_tile(long long M, long long K);

// Exact existence criterion for an N-tiling under 3 alpha + 2 beta = pi with
// alpha not a rational multiple of pi: an N-tiling exists iff some solution
// has K | M^2 (such solutions are constructive; solutions with K not dividing
// M^2 admit no tiling of that shape).
struct ExistenceVerdict {
  long long N = 0;
  bool exists = false;
  std::vector<Solution> constructive;  // K | M^2, sorted by M
  std::vector<Solution> obstructed;    // K does not divide M^2
};
ExistenceVerdict tiling_exists(long long N);

}  // namespace tritile
