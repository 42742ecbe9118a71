#include "tritile/numtheory.hpp"

#include <algorithm>
#include <cmath>

namespace tritile {

long long isqrt_ll(long long n) {
  if (n < 0) throw std::invalid_argument("isqrt_ll: negative input");
  auto r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

namespace {

bool perfect_square(long long n, long long& root) {
  if (n < 0) return false;
  root = isqrt_ll(n);
  return root * root == n;
}

}  // namespace

std::vector<Solution> solve_tiling_equation(long long N) {
  if (N < 1) throw std::invalid_argument("solve_tiling_equation: N must be positive");
  std::vector<Solution> out;
  // M < K forces M^2 < N; parity of M must match N for N + M^2 to be even.
  for (long long M = (N % 2 == 0) ? 2 : 1; M * M < N; M += 2) {
    long long K;
    if (perfect_square((N + M * M) / 2, K)) out.push_back({M, K});
  }
  return out;
}

std::vector<Solution> brute_force_solutions(long long N) {
  if (N < 1) throw std::invalid_argument("brute_force_solutions: N must be positive");
  std::vector<Solution> out;
  // M < K gives N = 2K^2 - M^2 > K^2, so K <= isqrt(N).
  for (long long K = 1; K * K <= N; ++K) {
    long long M2 = 2 * K * K - N;
    if (M2 <= 0) continue;
    long long M = isqrt_ll(M2);
    if (M * M == M2 && M < K) out.push_back({M, K});
  }
  std::sort(out.begin(), out.end(),
            [](const Solution& x, const Solution& y) { return x.M < y.M; });
  return out;
}

Admissibility classify_admissible(long long N) {
  if (N < 1) throw std::invalid_argument("classify_admissible: N must be positive");
  Admissibility
      result{N, true, 1, 1, {}};
  long long rest = N;
  for (long long p = 2; p * p <= rest; ++p) {
    if (rest % p) continue;
    int e = 0;
    while (rest % p == 0) rest /= p, ++e;
    for (int i = 0; i < e / 2; ++i) result.square_part *= p * p;
    if (e % 2) {
      result.squarefree_part *= p;
      long long r = p % 8;
      if (p != 2 && r != 1 && r != 7) result.violating_primes.push_back(p);
    }
  }
  if (rest > 1) {
    result.squarefree_part *= rest;
    long long r = rest % 8;
    if (rest != 2 && r != 1 && r != 7) result.violating_primes.push_back(rest);
  }
  result.admissible = result.violating_primes.empty();
  return result;
}

ConsistencyReport admissibility_consistency(long long lo, long long hi) {
  if (lo < 1 || hi < lo)
    throw std::invalid_argument("admissibility_consistency: need 1 <= lo <= hi");
  ConsistencyReport report;
  for (long long N = lo; N <= hi; ++N) {
    ++report.checked;
    bool solvable = !solve_tiling_equation(N).empty();
    bool admissible = classify_admissible(N).admissible;
    if (solvable && !admissible) {
      report.mismatches.push_back(N);
      continue;
    }
    if (admissible && !solvable) {
      long long r;
      bool square = perfect_square(N, r);
      bool twice_square = (N % 2 == 0) && perfect_square(N / 2, r);
      (square || twice_square ? report.exclusions : report.mismatches).push_back(N);
    }
  }
  return report;
}

Solution descent_step(const Solution& s, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("descent_step: sign must be +-1");
  return {3 * s.M + sign * 4 * s.K, 3 * s.K + sign * 2 * s.M};
}

TileSpec derive_tile(long long M, long long K) {
  if (!(0 < M && M < K))
    throw std::invalid_argument("derive_tile: need 0 < M < K");
  TileSpec t;
  t.M = M;
  t.K = K;
  t.N = 2 * K * K - M * M;
  t.D = 4 * K * K - M * M;
  t.divisible = (M * M) % K == 0;
  t.J = t.divisible ? (M * M) / K : 0;
  t.a_scaled = M * K;
  t.b_scaled = K * K - M * M;
  t.c_scaled = K * K;
  t.X_scaled = M * t.N;
  t.Y_scaled = K * (t.N - K * K);
  t.Z_scaled = K * K * K;
  if (t.Y_scaled != K * t.b_scaled || t.X_scaled != M * (t.b_scaled + t.c_scaled))
    throw invariant_error("derive_tile: frame side identities failed");
  return t;
}

ExistenceVerdict tiling_exists(long long N) {
  ExistenceVerdict v{N, false, {}, {}};
  for (const Solution& s : solve_tiling_equation(N))
    ((s.M * s.M) % s.K == 0 ? v.constructive : v.obstructed).push_back(s);
  v.exists = !v.constructive.empty();
  return v;
}

}  // namespace tritile
