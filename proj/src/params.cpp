#include "mlhs/params.hpp"

#include <algorithm>
#include <cmath>

#include "mlhs/errors.hpp"

namespace mlhs {

double npow(uint32_t n, double x) {
  if (n == 0) throw param_error("n must be positive");
  return std::exp2(x * std::log2(static_cast<double>(n)));
}

uint64_t ceil_tol(double v) {
  if (v <= 0) return 0;
  return static_cast<uint64_t>(std::ceil(v - 1e-9));
}

double eps3(double delta) { return 2.0 / 3.0 - delta / 3.0; }

double k_raw(uint32_t n, double delta) {
  return npow(n, delta) + 2.0 * std::log2(static_cast<double>(n));
}

uint32_t k_param(uint32_t n, double delta) {
  uint64_t k = ceil_tol(k_raw(n, delta));
  return static_cast<uint32_t>(std::clamp<uint64_t>(k, 1, n));
}

double m_raw(uint32_t n, double delta, double eps) {
  return 10.0 * npow(n, 1.0 - (eps + delta) / 2.0);
}

uint32_t m_param(uint32_t n, double delta, double eps) {
  uint64_t m = ceil_tol(m_raw(n, delta, eps));
  return static_cast<uint32_t>(std::clamp<uint64_t>(m, 1, n));
}

double t_exponent(uint32_t n, uint32_t k) {
  return static_cast<double>(k) * std::log2(static_cast<double>(n));
}

uint64_t s_depth3(uint32_t k) { return static_cast<uint64_t>(k) + 1; }

double log2_s_depth4(uint32_t k) { return static_cast<double>(k); }

double r3_raw(uint32_t n, double delta) {
  return npow(n, eps3(delta) + delta) * std::log2(static_cast<double>(n));
}

uint32_t r3_param(uint32_t n, double delta) {
  return static_cast<uint32_t>(std::min<uint64_t>(ceil_tol(r3_raw(n, delta)), n));
}

double eps4_raw(uint32_t n, double log2M, double log2S) {
  if (log2M <= 0 || log2S <= 0) throw param_error("eps4 needs log2 M > 0 and log2 S > 0");
  double target = npow(n, 2.0 / 3.0) * log2M / std::pow(log2S, 2.0 / 3.0);
  return std::log2(target) / std::log2(static_cast<double>(n));
}

double eps4_param(uint32_t n, double log2M, double log2S) {
  return std::clamp(eps4_raw(n, std::max(1.0, log2M), std::max(2.0, log2S)), 1e-6, 1.0);
}

uint32_t r4_param(uint32_t n, double eps, double log2S) {
  return static_cast<uint32_t>(std::min<uint64_t>(ceil_tol(2.0 * npow(n, eps) * log2S), n));
}

double delta_from_log2M(uint32_t n, double log2M) {
  if (n < 2 || log2M <= 1.0) return 0.0;
  return std::log2(log2M) / std::log2(static_cast<double>(n));
}

HypothesisCheck depth4_hypothesis(uint32_t n, double log2M, double log2S) {
  double ln = std::log2(std::max<double>(n, 2));
  HypothesisCheck h;
  h.lhs = log2M * log2M * log2M * log2S;
  h.rhs = static_cast<double>(n) * ln * ln * ln * ln;
  h.ok = h.lhs < h.rhs;
  return h;
}

double regular_delta_max(uint32_t d) { return 1.0 / std::pow(5.0, static_cast<double>(d) + 1); }

RegularCaseParams regular_case_params(uint32_t n, uint32_t d, double delta, uint32_t c) {
  if (d < 1) throw param_error("regular profile depth d must be >= 1");
  if (c < 3) throw param_error("squeeze constant c must be >= 3");
  double log2n = std::log2(static_cast<double>(n));
  double log2S = npow(n, delta);  // size bound S = 2^(n^delta)
  RegularCaseParams out;
  double invc = 1.0 / static_cast<double>(c);
  // cases 1/2: top fan-in <= S, size <= S * n^(n^(1-(1/c)^d))
  out.log2M_case12 = log2S;
  out.log2S_case12 = log2S + npow(n, 1.0 - std::pow(invc, d)) * log2n;
  // case 3 at t = d-1: M <= S^(n^alpha), size <= 2*M*n*n^(n^(1-(c-1)alpha))
  out.alpha = std::pow(invc, 1.0) / (c - 1.0);
  out.log2M_case3 = npow(n, out.alpha) * log2S;
  out.log2S_case3 =
      1.0 + out.log2M_case3 + log2n + npow(n, 1.0 - (c - 1.0) * out.alpha) * log2n;
  return out;
}

}  // namespace mlhs
