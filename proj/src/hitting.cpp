#include "mlhs/hitting.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "mlhs/errors.hpp"
#include "mlhs/params.hpp"

namespace mlhs {

namespace {

uint64_t sat_mul(uint64_t a, uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > UINT64_MAX / b) return UINT64_MAX;
  return a * b;
}

uint64_t sat_pow(uint64_t base, uint64_t exp) {
  uint64_t r = 1;
  for (uint64_t i = 0; i < exp; ++i) {
    r = sat_mul(r, base);
    if (r == UINT64_MAX) break;
  }
  return r;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// Accumulates union points with the budget enforced on distinct points.
class PointPool {
 public:
  PointPool(uint32_t n, uint64_t cap) : n_(n), cap_(cap) {}

  void add(const Point& p) {
    set_.insert(p);
    if (set_.size() > cap_)
      throw budget_error("hitting set exceeds max_points = " +
                         std::to_string(cap_) + "; raise the point budget");
  }

  void merge(const HittingSet& hs) {
    for (const Point& p : hs.points()) add(p);
  }

  std::vector<Point> take() {
    return std::vector<Point>(set_.begin(), set_.end());
  }

  uint32_t n() const { return n_; }

 private:
  uint32_t n_;
  uint64_t cap_;
  std::set<Point> set_;
};

}  // namespace

HittingSet::HittingSet(uint32_t n, const Field& field,
                       std::vector<Point> points,
                       std::map<std::string, std::string> meta)
    : n_(n), field_(field), points_(std::move(points)), meta_(std::move(meta)) {
  if (n_ > kMaxVars)
    throw dimension_error("hitting set on " + std::to_string(n_) +
                          " variables exceeds the " +
                          std::to_string(kMaxVars) + "-variable limit");
  for (const Point& p : points_) {
    if (p.size() != n_)
      throw dimension_error("hitting-set point has " +
                            std::to_string(p.size()) + " coordinates, expected " +
                            std::to_string(n_));
    for (uint64_t c : p)
      if (c >= field_.modulus())
        throw dimension_error("point coordinate " + std::to_string(c) +
                              " is not reduced modulo " +
                              std::to_string(field_.modulus()));
  }
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

bool HittingSet::contains(const Point& p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

void HittingSet::write(std::ostream& out) const {
  std::string construction = "custom";
  if (auto it = meta_.find("construction"); it != meta_.end())
    construction = it->second;
  out << "n=" << n_ << " p=" << field_.modulus()
      << " construction=" << construction << "\n";
  for (const auto& [key, value] : meta_) {
    if (key == "construction") continue;
    out << "# " << key << "=" << value << "\n";
  }
  for (const Point& p : points_) {
    for (size_t i = 0; i < p.size(); ++i) {
      if (i) out << ",";
      out << p[i];
    }
    if (p.empty()) out << "";
    out << "\n";
  }
}

HittingSet HittingSet::read(std::istream& in) {
  std::string line;
  size_t line_no = 0;
  // header
  uint32_t n = 0;
  uint64_t p = Field::kDefaultModulus;
  std::map<std::string, std::string> meta;
  bool have_header = false;
  std::vector<Point> points;
  while (std::getline(in, line)) {
    ++line_no;
    // strip trailing CR from files written on other platforms
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    if (!have_header) {
      std::istringstream hs(line);
      std::string tok;
      bool saw_n = false, saw_p = false;
      while (hs >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos)
          throw parse_error("point-set header token '" + tok +
                                "' is not key=value",
                            line_no);
        std::string key = tok.substr(0, eq);
        std::string value = tok.substr(eq + 1);
        try {
          if (key == "n") {
            n = static_cast<uint32_t>(std::stoul(value));
            saw_n = true;
          } else if (key == "p") {
            p = std::stoull(value);
            saw_p = true;
          } else {
            meta[key] = value;
          }
        } catch (const std::exception&) {
          throw parse_error("bad numeric value in point-set header: " + tok,
                            line_no);
        }
      }
      if (!saw_n || !saw_p)
        throw parse_error("point-set header must contain n= and p=", line_no);
      have_header = true;
      continue;
    }
    if (line[0] == '#') {
      size_t at = line.find_first_not_of("# \t");
      if (at == std::string::npos) continue;
      std::string body = line.substr(at);
      auto eq = body.find('=');
      if (eq != std::string::npos)
        meta[body.substr(0, eq)] = body.substr(eq + 1);
      continue;
    }
    Point pt;
    std::istringstream ps(line);
    std::string cell;
    while (std::getline(ps, cell, ',')) {
      try {
        pt.push_back(std::stoull(cell));
      } catch (const std::exception&) {
        throw parse_error("bad point coordinate '" + cell + "'", line_no);
      }
    }
    if (pt.size() != n)
      throw parse_error("point has " + std::to_string(pt.size()) +
                            " coordinates, header says n=" + std::to_string(n),
                        line_no);
    points.push_back(std::move(pt));
  }
  if (!have_header) throw parse_error("point-set file has no header line", 0);
  return HittingSet(n, Field(p), std::move(points), std::move(meta));
}

HittingSet roabp_hitting_set(const RoabpGeneratorSpec& spec, const Field& field,
                             const Budget& budget) {
  if (spec.backend == RoabpBackend::kQuasiPoly)
    throw param_error(
        "quasi-poly ROABP generator backend is not registered in this build; "
        "use the grid backend");
  if (spec.n == 0 || spec.n > kMaxVars)
    throw dimension_error("grid generator needs 1.." +
                          std::to_string(kMaxVars) + " variables, got " +
                          std::to_string(spec.n));
  if (static_cast<uint64_t>(spec.degree) + 1 > field.modulus())
    throw param_error("grid needs degree+1 distinct field elements, but p = " +
                      std::to_string(field.modulus()));
  uint64_t count = sat_pow(spec.degree + 1, spec.n);
  if (count > budget.max_points)
    throw budget_error("grid would hold " + std::to_string(count) +
                       " points; shrink the bucket or raise max_points (" +
                       std::to_string(budget.max_points) + ")");
  std::vector<Point> pts;
  pts.reserve(count);
  Point cur(spec.n, 0);
  for (;;) {
    pts.push_back(cur);
    int i = static_cast<int>(spec.n) - 1;
    while (i >= 0 && cur[i] == spec.degree) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  std::map<std::string, std::string> meta{
      {"construction", "grid"},
      {"degree", std::to_string(spec.degree)},
      {"log2_width", fmt(spec.log2_width)},
  };
  return HittingSet(spec.n, field, std::move(pts), std::move(meta));
}

HittingSet build_Ih(const HashFamily& family,
                    const std::vector<uint64_t>& coeffs,
                    const RoabpGeneratorSpec& bucket_template,
                    const Field& field, const Budget& budget) {
  const uint32_t n = family.n();
  const uint64_t m = family.m();
  std::vector<std::vector<uint32_t>> bucket_vars(m);
  for (uint32_t x = 1; x <= n; ++x)
    bucket_vars[family.bucket(coeffs, x) - 1].push_back(x - 1);

  std::vector<std::vector<Point>> factor(m);
  uint64_t total = 1;
  for (uint64_t j = 0; j < m; ++j) {
    if (bucket_vars[j].empty()) {
      factor[j] = {Point{}};
      continue;
    }
    RoabpGeneratorSpec spec = bucket_template;
    spec.n = static_cast<uint32_t>(bucket_vars[j].size());
    HittingSet hj = roabp_hitting_set(spec, field, budget);
    total = sat_mul(total, hj.size());
    factor[j] = hj.points();
  }
  if (total > budget.max_points)
    throw budget_error("product set would hold " + std::to_string(total) +
                       " points; raise max_points (" +
                       std::to_string(budget.max_points) + ")");

  std::vector<Point> pts;
  pts.reserve(total);
  std::vector<size_t> idx(m, 0);
  for (;;) {
    Point p(n, 0);
    for (uint64_t j = 0; j < m; ++j) {
      const Point& q = factor[j][idx[j]];
      for (size_t t = 0; t < bucket_vars[j].size(); ++t)
        p[bucket_vars[j][t]] = q[t];
    }
    pts.push_back(std::move(p));
    int j = static_cast<int>(m) - 1;
    while (j >= 0) {
      if (++idx[j] < factor[j].size()) break;
      idx[j] = 0;
      --j;
    }
    if (j < 0) break;
  }
  std::map<std::string, std::string> meta{
      {"construction", "product"},
      {"m", std::to_string(m)},
      {"q", std::to_string(family.q())},
      {"k", std::to_string(family.k())},
      {"degree", std::to_string(bucket_template.degree)},
  };
  return HittingSet(n, field, std::move(pts), std::move(meta));
}

HittingSet small_support_hs(bool depth4, uint32_t n, double delta, double eps,
                            double log2_width_extra, const Field& field,
                            const Budget& budget,
                            const SmallSupportOptions& options) {
  if (n == 0 || n > kMaxVars)
    throw dimension_error("small-support construction needs 1.." +
                          std::to_string(kMaxVars) + " variables, got " +
                          std::to_string(n));
  uint64_t k = options.k ? *options.k : k_param(n, delta);
  uint64_t m = options.m ? *options.m : m_param(n, delta, eps);
  HashFamily family(n, m, k, options.q);
  double t = t_exponent(n, k);
  double log2_s = depth4 ? log2_s_depth4(k)
                         : std::log2(static_cast<double>(s_depth3(k)));
  RoabpGeneratorSpec bucket_template;
  bucket_template.degree = 1;
  bucket_template.backend = options.backend;
  bucket_template.log2_width = log2_width_extra + t * log2_s;

  std::map<std::string, std::string> meta{
      {"construction", depth4 ? "small-support-d4" : "small-support-d3"},
      {"delta", fmt(delta)},
      {"eps", fmt(eps)},
      {"k", std::to_string(k)},
      {"m", std::to_string(m)},
      {"q", std::to_string(family.q())},
      {"s", depth4 ? ("2^" + std::to_string(k)) : std::to_string(s_depth3(k))},
      {"log2_width", fmt(bucket_template.log2_width)},
      {"family_size", std::to_string(family.size())},
  };

  if (!options.force_enumeration &&
      bucket_template.backend == RoabpBackend::kGrid) {
    // The grid backend covers each bucket exhaustively regardless of which
    // variables land where, so I_h is the same point set for every member h
    // and the union over the family equals any single I_h.
    HittingSet one = build_Ih(family, family.member(0), bucket_template, field,
                              budget);
    meta["members_used"] = "1";
    meta["collapsed"] = "1";
    return HittingSet(n, field, one.points(), std::move(meta));
  }

  uint64_t fam = family.size();
  if (fam > budget.max_family)
    throw budget_error("hash family has " + std::to_string(fam) +
                       " members; raise max_family (" +
                       std::to_string(budget.max_family) +
                       ") or use the collapsed grid path");
  PointPool pool(n, budget.max_points);
  std::set<std::vector<uint64_t>> seen_signatures;
  uint64_t used = 0;
  for (uint64_t idx = 0; idx < fam; ++idx) {
    std::vector<uint64_t> coeffs = family.member(idx);
    std::vector<uint64_t> sig(n);
    for (uint32_t x = 1; x <= n; ++x) sig[x - 1] = family.bucket(coeffs, x);
    if (!seen_signatures.insert(std::move(sig)).second) continue;
    ++used;
    pool.merge(build_Ih(family, coeffs, bucket_template, field, budget));
  }
  meta["members_used"] = std::to_string(used);
  meta["collapsed"] = "0";
  return HittingSet(n, field, pool.take(), std::move(meta));
}

HittingSet lift(const HittingSet& base, VarMask A, VarMask B, uint32_t n) {
  if (n == 0 || n > kMaxVars)
    throw dimension_error("lift target needs 1.." + std::to_string(kMaxVars) +
                          " variables, got " + std::to_string(n));
  if (A & B) throw dimension_error("lift sets A and B overlap");
  if ((A | B) & ~full_mask(n))
    throw dimension_error("lift sets use variables outside x1..x" +
                          std::to_string(n));
  uint32_t a = popcount(A);
  uint32_t b = popcount(B);
  if (a + b + base.n() != n)
    throw dimension_error("lift arity mismatch: |A|=" + std::to_string(a) +
                          ", |B|=" + std::to_string(b) + ", base n=" +
                          std::to_string(base.n()) + ", target n=" +
                          std::to_string(n));
  std::vector<uint32_t> a_idx = mask_to_indices(A);
  std::vector<uint32_t> rest = mask_to_indices(full_mask(n) & ~(A | B));
  std::vector<Point> pts;
  pts.reserve(sat_mul(uint64_t{1} << std::min<uint32_t>(a, 63), base.size()));
  const uint64_t cube = (a >= 64) ? UINT64_MAX : (uint64_t{1} << a);
  for (const Point& q : base.points()) {
    for (uint64_t s = 0; s < cube; ++s) {
      Point p(n, 0);
      for (uint32_t i = 0; i < a; ++i) p[a_idx[i]] = (s >> i) & 1;
      for (size_t i = 0; i < rest.size(); ++i) p[rest[i]] = q[i];
      pts.push_back(std::move(p));
      if (s == UINT64_MAX) break;
    }
  }
  std::map<std::string, std::string> meta = base.meta();
  if (auto it = meta.find("construction"); it != meta.end())
    meta["base_construction"] = it->second;
  meta["construction"] = "lift";
  std::string a_str, b_str;
  for (uint32_t i : mask_to_indices(A))
    a_str += (a_str.empty() ? "x" : ",x") + std::to_string(i + 1);
  for (uint32_t i : mask_to_indices(B))
    b_str += (b_str.empty() ? "x" : ",x") + std::to_string(i + 1);
  meta["A"] = a_str.empty() ? "-" : a_str;
  meta["B"] = b_str.empty() ? "-" : b_str;
  return HittingSet(n, base.field(), std::move(pts), std::move(meta));
}

namespace {

// Shared subset-union skeleton for the two top-level constructions: lift the
// per-support-size base set over every admissible (A, B) pair, sizes
// ascending, subsets in colexicographic order.
HittingSet union_of_lifts(uint32_t n, uint64_t r, bool with_B, bool depth4,
                          double delta, double eps, double log2_width_extra,
                          const Field& field, const Budget& budget,
                          const SmallSupportOptions& options,
                          std::map<std::string, std::string> meta) {
  if (r > n) r = n;
  std::map<uint32_t, HittingSet> cache;
  auto base_for = [&](uint32_t rem) -> const HittingSet& {
    auto it = cache.find(rem);
    if (it != cache.end()) return it->second;
    HittingSet hs =
        rem == 0
            ? HittingSet(0, field, {Point{}}, {{"construction", "point"}})
            : small_support_hs(depth4, rem, delta, eps, log2_width_extra,
                               field, budget, options);
    return cache.emplace(rem, std::move(hs)).first->second;
  };

  PointPool pool(n, budget.max_points);
  uint64_t lifts = 0;
  for (uint64_t a = 0; a <= r; ++a) {
    SubsetRange(full_mask(n), static_cast<uint32_t>(a)).for_each([&](VarMask A) {
      if (!with_B) {
        pool.merge(lift(base_for(n - static_cast<uint32_t>(a)), A, 0, n));
        ++lifts;
        return;
      }
      VarMask rest = full_mask(n) & ~A;
      uint64_t b_cap = std::min<uint64_t>(r, popcount(rest));
      for (uint64_t b = 0; b <= b_cap; ++b) {
        SubsetRange(rest, static_cast<uint32_t>(b)).for_each([&](VarMask B) {
          pool.merge(lift(
              base_for(n - static_cast<uint32_t>(a) - static_cast<uint32_t>(b)),
              A, B, n));
          ++lifts;
        });
      }
    });
  }
  meta["r"] = std::to_string(r);
  meta["lifts"] = std::to_string(lifts);
  return HittingSet(n, field, pool.take(), std::move(meta));
}

}  // namespace

HittingSet depth3_hs(uint32_t n, double delta, const Field& field,
                     const Budget& budget,
                     const SmallSupportOptions& options) {
  if (n == 0 || n > kMaxVars)
    throw dimension_error("depth-3 construction needs 1.." +
                          std::to_string(kMaxVars) + " variables, got " +
                          std::to_string(n));
  if (!(delta > 0.0) || delta > 1.0)
    throw param_error("delta must lie in (0, 1], got " + fmt(delta));
  double eps = eps3(delta);
  uint64_t r = r3_param(n, delta);
  double log2M = npow(n, delta);
  std::map<std::string, std::string> meta{
      {"construction", "depth3"},
      {"delta", fmt(delta)},
      {"eps", fmt(eps)},
      {"log2M", fmt(log2M)},
  };
  return union_of_lifts(n, r, /*with_B=*/false, /*depth4=*/false, delta, eps,
                        log2M, field, budget, options, std::move(meta));
}

HittingSet depth4_hs_log(uint32_t n, double log2M, double log2S,
                         const Field& field, const Budget& budget,
                         const SmallSupportOptions& options) {
  if (n == 0 || n > kMaxVars)
    throw dimension_error("depth-4 construction needs 1.." +
                          std::to_string(kMaxVars) + " variables, got " +
                          std::to_string(n));
  if (log2M < 0.0 || log2S < 0.0)
    throw param_error("log2 M and log2 S must be nonnegative");
  HypothesisCheck hyp = depth4_hypothesis(n, log2M, log2S);
  if (!hyp.ok)
    throw param_error(
        "depth-4 size hypothesis fails: (log2 M)^3 * log2 S = " +
        fmt(hyp.lhs) + " is not below n * (log2 n)^4 = " + fmt(hyp.rhs));
  double eps = eps4_param(n, log2M, log2S);
  double delta = delta_from_log2M(n, log2M);
  uint64_t r = r4_param(n, eps, log2S);
  std::map<std::string, std::string> meta{
      {"construction", "depth4"}, {"log2M", fmt(log2M)},
      {"log2S", fmt(log2S)},      {"eps", fmt(eps)},
      {"delta", fmt(delta)},
  };
  return union_of_lifts(n, r, /*with_B=*/true, /*depth4=*/true, delta, eps,
                        log2M, field, budget, options, std::move(meta));
}

HittingSet depth4_hs(uint32_t n, uint64_t M, uint64_t S, const Field& field,
                     const Budget& budget,
                     const SmallSupportOptions& options) {
  if (M == 0 || S == 0)
    throw param_error("fan-in bound M and size bound S must be positive");
  double log2M = std::log2(static_cast<double>(M));
  double log2S = std::log2(static_cast<double>(S));
  return depth4_hs_log(n, log2M, log2S, field, budget, options);
}

HittingSet regular_hs(uint32_t n, uint32_t depth_d, double delta,
                      const Field& field, const Budget& budget,
                      const SmallSupportOptions& options, double c) {
  if (n == 0 || n > kMaxVars)
    throw dimension_error("regular construction needs 1.." +
                          std::to_string(kMaxVars) + " variables, got " +
                          std::to_string(n));
  if (depth_d == 0)
    throw param_error("product depth d must be at least 1");
  if (!(delta > 0.0))
    throw param_error("delta must be positive, got " + fmt(delta));
  if (!(c > 1.0)) throw param_error("case constant c must exceed 1");
  double dmax = regular_delta_max(depth_d);
  bool clamped = false;
  if (delta > dmax) {
    delta = dmax;
    clamped = true;
  }
  RegularCaseParams cp = regular_case_params(n, depth_d, delta, c);
  HittingSet h12 =
      depth4_hs_log(n, cp.log2M_case12, cp.log2S_case12, field, budget, options);
  HittingSet h3 =
      depth4_hs_log(n, cp.log2M_case3, cp.log2S_case3, field, budget, options);
  PointPool pool(n, budget.max_points);
  pool.merge(h12);
  pool.merge(h3);
  std::map<std::string, std::string> meta{
      {"construction", "regular"},
      {"d", std::to_string(depth_d)},
      {"delta", fmt(delta)},
      {"delta_clamped", clamped ? "1" : "0"},
      {"c", fmt(c)},
      {"alpha", fmt(cp.alpha)},
      {"case12_size", std::to_string(h12.size())},
      {"case3_size", std::to_string(h3.size())},
  };
  return HittingSet(n, field, pool.take(), std::move(meta));
}

PitResult pit_blackbox(const std::function<uint64_t(const Point&)>& f,
                       const HittingSet& set, unsigned jobs) {
  const std::vector<Point>& pts = set.points();
  const uint64_t total = pts.size();
  uint64_t first = total;
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  if (jobs <= 1 || total < 2048) {
    for (uint64_t i = 0; i < total; ++i) {
      if (f(pts[i]) != 0) {
        first = i;
        break;
      }
    }
  } else {
    // Contiguous chunks; every thread records its first local hit, the merge
    // takes the global minimum, so the answer matches the sequential scan.
    std::atomic<uint64_t> best{total};
    uint64_t chunk = (total + jobs - 1) / jobs;
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < jobs; ++t) {
      uint64_t lo = static_cast<uint64_t>(t) * chunk;
      uint64_t hi = std::min(total, lo + chunk);
      if (lo >= hi) break;
      threads.emplace_back([&, lo, hi] {
        for (uint64_t i = lo; i < hi; ++i) {
          if (i >= best.load(std::memory_order_relaxed)) return;
          if (f(pts[i]) != 0) {
            uint64_t cur = best.load(std::memory_order_relaxed);
            while (i < cur &&
                   !best.compare_exchange_weak(cur, i,
                                               std::memory_order_relaxed)) {
            }
            return;
          }
        }
      });
    }
    for (std::thread& th : threads) th.join();
    first = best.load();
  }
  PitResult result;
  if (first < total) {
    result.is_zero = false;
    result.witness = pts[first];
    result.eval_count = first + 1;
  } else {
    result.is_zero = true;
    result.eval_count = total;
  }
  return result;
}

}  // namespace mlhs
