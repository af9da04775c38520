#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mlhs/field.hpp"
#include "mlhs/formula.hpp"
#include "mlhs/poly.hpp"

namespace mlhs {

// Deterministic test RNG. std::mt19937_64 raw output only — the standard
// distributions are not bit-portable across library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }
  uint64_t below(uint64_t bound) { return bound ? next() % bound : 0; }
  bool chance(uint64_t num, uint64_t den) { return below(den) < num; }
  uint64_t field_elem(const Field& f) { return below(f.modulus()); }
  uint64_t field_nonzero(const Field& f) { return 1 + below(f.modulus() - 1); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 eng_;
};

// Exhaustive scan of {0,...,d}^n: an exact zero test for any polynomial of
// individual degree <= d. Points in odometer order, last variable fastest;
// stops at the first nonzero value.
struct GridVerdict {
  bool is_zero = true;
  std::optional<Point> witness;
  uint64_t eval_count = 0;
};

GridVerdict grid_pit(const std::function<uint64_t(const Point&)>& f,
                     uint32_t n, uint32_t d, const Field& field,
                     uint64_t max_points = uint64_t{1} << 22);

// Seeded formula generators. Output is always syntactically valid for its
// class (factors inside a gate get disjoint variable blocks).
struct GenParams {
  uint32_t n = 4;
  uint32_t gates = 2;             // top fan-in (depth 3 / depth 4)
  uint32_t max_sparsity = 3;      // factor sparsity cap (depth 4)
  std::vector<uint32_t> profile;  // regular class only
};

Depth3Formula gen_depth3(Rng& rng, uint32_t n, uint32_t gates,
                         const Field& field);
Depth4Formula gen_depth4(Rng& rng, uint32_t n, uint32_t gates,
                         uint32_t max_sparsity, const Field& field);
RegularFormula gen_regular(Rng& rng, uint32_t n,
                           const std::vector<uint32_t>& profile,
                           const Field& field);

ParsedFormula gen_formula(const std::string& cls, const GenParams& params,
                          uint64_t seed, const Field& field);

// Reproducible test corpus: `nonzero_count` random nonzero items, a few
// planted cancellations that expand to zero, and fixed adversarial items
// (cross-gate cancellation, divisor variables hidden in factors, wide linear
// forms). Every item carries its exact expansion and zero/nonzero flag.
struct CorpusItem {
  std::string label;
  ParsedFormula formula;
  SparseMultilinearPoly expansion;
  bool nonzero = false;
};

struct Corpus {
  std::string cls;
  uint32_t n = 0;
  uint64_t seed = 0;
  std::vector<CorpusItem> items;
};

Corpus make_corpus(const std::string& cls, const GenParams& params,
                   uint64_t seed, uint32_t nonzero_count, const Field& field);

}  // namespace mlhs
