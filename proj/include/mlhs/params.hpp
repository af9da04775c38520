#pragma once

#include <cstdint>

namespace mlhs {

// Shared arithmetic for the hitting-set constructions. Raw real values are
// exposed next to their rounded/clamped instantiations so tests can pin both.
//
// Conventions: all logs are base 2 unless a name says otherwise; n^x is
// computed as exp2(x*log2(n)) so powers of two stay exact; ceilings are
// tolerant (ceil(v - 1e-9)) to absorb libm jitter on exact integers.

double npow(uint32_t n, double x);

// ceil with a 1e-9 slack against floating point noise.
uint64_t ceil_tol(double v);

// eps = 2/3 - delta/3 (depth-3 construction).
double eps3(double delta);

// Hash arity k = n^delta + 2*log2(n), clamped to [1, n].
double k_raw(uint32_t n, double delta);
uint32_t k_param(uint32_t n, double delta);

// Bucket count m = 10*n^(1-(eps+delta)/2), clamped to [1, n].
double m_raw(uint32_t n, double delta, double eps);
uint32_t m_param(uint32_t n, double delta, double eps);

// Per-bucket width exponent t = k*log2(n).
double t_exponent(uint32_t n, uint32_t k);

// Bottom-fanin sparsity bound fed to the bucket generators:
// depth-3 gets s = k+1, depth-4 gets s = 2^k.
uint64_t s_depth3(uint32_t k);
double log2_s_depth4(uint32_t k);

// Depth-3 enumeration radius r = ceil(n^eps * log2(M) * log2(n)) with
// log2(M) = n^delta, clamped to [0, n].
double r3_raw(uint32_t n, double delta);
uint32_t r3_param(uint32_t n, double delta);

// Depth-4 eps solves n^eps = n^(2/3) * log2(M) / (log2(S))^(2/3).
double eps4_raw(uint32_t n, double log2M, double log2S);
// Same, clamped into (0, 1].
double eps4_param(uint32_t n, double log2M, double log2S);

// Depth-4 radius r = ceil(2 * n^eps * log2(S)), clamped to [0, n].
uint32_t r4_param(uint32_t n, double eps, double log2S);

// delta with n^delta = log2(M), floored at 0 (M <= 2 collapses to 0).
double delta_from_log2M(uint32_t n, double log2M);

// Desk-scale mirror of the asymptotic hypothesis (log M)^3 * log S = o(n):
// requires (log2 M)^3 * log2 S < n * (log2 n)^4. Returns the two sides.
struct HypothesisCheck {
  double lhs;
  double rhs;
  bool ok;
};
HypothesisCheck depth4_hypothesis(uint32_t n, double log2M, double log2S);

// Largest admissible delta for depth-(2d+1) regular formulas: 1/5^(d+1).
double regular_delta_max(uint32_t d);

// Parameter pairs (log2 M, log2 S) for the two depth-4 reductions a regular
// formula of size <= 2^(n^delta) can take (c = 5; split case uses t = d-1).
struct RegularCaseParams {
  double log2M_case12, log2S_case12;
  double log2M_case3, log2S_case3;
  double alpha;  // (1/c)^(d-t) / (c-1) at t = d-1
};
RegularCaseParams regular_case_params(uint32_t n, uint32_t d, double delta, uint32_t c = 5);

}  // namespace mlhs
