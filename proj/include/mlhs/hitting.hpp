#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mlhs/bits.hpp"
#include "mlhs/config.hpp"
#include "mlhs/field.hpp"
#include "mlhs/hashing.hpp"
#include "mlhs/poly.hpp"

namespace mlhs {

// Finite multiset-free list of evaluation points, kept sorted
// lexicographically with duplicates removed. `meta` records how the set was
// built (construction name plus parameter key/values) so files are
// self-describing.
class HittingSet {
 public:
  HittingSet(uint32_t n, const Field& field, std::vector<Point> points,
             std::map<std::string, std::string> meta);

  uint32_t n() const { return n_; }
  const Field& field() const { return field_; }
  uint64_t size() const { return points_.size(); }
  const std::vector<Point>& points() const { return points_; }
  const std::map<std::string, std::string>& meta() const { return meta_; }
  bool contains(const Point& p) const;

  void write(std::ostream& out) const;
  static HittingSet read(std::istream& in);

 private:
  uint32_t n_;
  Field field_;
  std::vector<Point> points_;
  std::map<std::string, std::string> meta_;
};

// Generators plugged in per hash bucket.
enum class RoabpBackend { kGrid, kQuasiPoly };

struct RoabpGeneratorSpec {
  uint32_t n = 0;            // variables the generator must cover
  double log2_width = 0.0;   // width bound the set is good for (metadata)
  uint32_t degree = 1;       // individual degree bound
  RoabpBackend backend = RoabpBackend::kGrid;
};

// Evaluation-grid generator: {0,...,degree}^n. Exact for any n-variate
// polynomial of individual degree <= degree, any width.
HittingSet roabp_hitting_set(const RoabpGeneratorSpec& spec, const Field& field,
                             const Budget& budget = Budget{});

// Product set I_h = H_1 x ... x H_m where H_j covers the variables hashed to
// bucket j. |I_h| is exactly the product of the factor sizes.
HittingSet build_Ih(const HashFamily& family,
                    const std::vector<uint64_t>& coeffs,
                    const RoabpGeneratorSpec& bucket_template,
                    const Field& field, const Budget& budget = Budget{});

struct SmallSupportOptions {
  std::optional<uint64_t> k;          // hash independence override
  std::optional<uint64_t> m;          // bucket count override
  std::optional<uint64_t> q;          // hash field size override
  bool force_enumeration = false;     // walk the whole family instead of
                                      // using the bucket-independence of the
                                      // grid backend
  RoabpBackend backend = RoabpBackend::kGrid;
};

// Core small-support construction: union of I_h over the k-wise independent
// family. With the grid backend every h yields the same point set, so the
// union collapses to a single member; force_enumeration cross-checks that.
HittingSet small_support_hs(bool depth4, uint32_t n, double delta, double eps,
                            double log2_width_extra, const Field& field,
                            const Budget& budget = Budget{},
                            const SmallSupportOptions& options = {});

// Embed an n'-variate set into n variables: coordinates in A range over
// {0,1}, coordinates in B are pinned to 0, the rest take the source
// coordinates in ascending variable order. |result| = 2^|A| * |base|.
HittingSet lift(const HittingSet& base, VarMask A, VarMask B, uint32_t n);

// Top-level constructions.
HittingSet depth3_hs(uint32_t n, double delta, const Field& field,
                     const Budget& budget = Budget{},
                     const SmallSupportOptions& options = {});
HittingSet depth4_hs_log(uint32_t n, double log2M, double log2S,
                         const Field& field, const Budget& budget = Budget{},
                         const SmallSupportOptions& options = {});
HittingSet depth4_hs(uint32_t n, uint64_t M, uint64_t S, const Field& field,
                     const Budget& budget = Budget{},
                     const SmallSupportOptions& options = {});
HittingSet regular_hs(uint32_t n, uint32_t depth_d, double delta,
                      const Field& field, const Budget& budget = Budget{},
                      const SmallSupportOptions& options = {},
                      double c = 5.0);

// Black-box zero test against a point set. Deterministic: the witness is the
// first (lexicographically smallest) point with f != 0, and eval_count is the
// number of points a sequential scan would have touched, independent of
// `jobs`.
struct PitResult {
  bool is_zero = true;
  std::optional<Point> witness;
  uint64_t eval_count = 0;
};

PitResult pit_blackbox(const std::function<uint64_t(const Point&)>& f,
                       const HittingSet& set, unsigned jobs = 1);

}  // namespace mlhs
