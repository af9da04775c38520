#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "mlhs/bits.hpp"
#include "mlhs/config.hpp"
#include "mlhs/errors.hpp"
#include "mlhs/field.hpp"
#include "mlhs/formula.hpp"
#include "mlhs/hitting.hpp"
#include "mlhs/lowerbound.hpp"
#include "mlhs/oracle.hpp"
#include "mlhs/params.hpp"
#include "mlhs/poly.hpp"
#include "mlhs/reduce.hpp"
#include "mlhs/roabp.hpp"
#include "mlhs/selftest.hpp"

using namespace mlhs;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

HittingSet read_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  return HittingSet::read(in);
}

std::string point_str(const Point& p) {
  std::string s = "(";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

std::string mask_str(VarMask m) {
  std::string s = "{";
  bool first = true;
  for (uint32_t i : mask_to_indices(m)) {
    if (!first) s += ",";
    s += "x" + std::to_string(i + 1);
    first = false;
  }
  return s + "}";
}

Point parse_point(const std::string& text, uint32_t n) {
  Point p;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      p.push_back(std::stoull(tok));
    } catch (const std::exception&) {
      throw param_error("bad point coordinate '" + tok + "'");
    }
  }
  if (p.size() != n)
    throw param_error("point has " + std::to_string(p.size()) +
                      " coordinates, formula has " + std::to_string(n));
  return p;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw error("cannot write " + out_path);
  out << text;
}

std::string render_trace(const ReductionTrace& t, uint32_t n) {
  std::ostringstream os;
  os << "# A=" << mask_str(t.A) << " B=" << mask_str(t.B)
     << " steps=" << t.steps.size() << " measure=" << t.measure_in << "->"
     << t.measure_out << " junk-removed=" << t.junk_removed
     << " certified=" << (t.certified && t.var_from_expansion ? "yes" : "no")
     << "\n";
  for (size_t i = 0; i < t.steps.size(); ++i) {
    const ReduceStep& st = t.steps[i];
    os << "# step " << (i + 1) << ": "
       << (st.action == ReduceAction::kDerive ? "derive" : "zero") << " x"
       << (st.var + 1) << "  " << st.before << " -> " << st.after << "\n";
  }
  (void)n;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hitting sets and identity tests for bounded-depth multilinear formulas"};
  app.require_subcommand(1);

  uint64_t modulus = Field::kDefaultModulus;
  unsigned jobs = 1;
  Budget budget;
  app.add_option("--modulus", modulus, "prime field modulus")->capture_default_str();
  app.add_option("--jobs", jobs, "threads for point scans (0 = all cores)")
      ->capture_default_str();
  app.add_option("--max-terms", budget.max_terms, "expansion term budget")
      ->capture_default_str();
  app.add_option("--max-points", budget.max_points, "point-set size budget")
      ->capture_default_str();
  app.add_option("--max-family", budget.max_family, "hash-family enumeration budget")
      ->capture_default_str();

  int rc = 0;

  /* ---- gen-hs ---- */
  auto* gen = app.add_subcommand("gen-hs", "generate a hitting set");
  std::string gen_cls, gen_out;
  uint32_t gen_n = 0, gen_d = 2;
  double gen_delta = 0.25, gen_c = 5.0;
  std::optional<uint64_t> gen_M, gen_S, gen_k, gen_m, gen_q;
  bool gen_enumerate = false;
  gen->add_option("--class", gen_cls, "formula class")
      ->required()
      ->check(CLI::IsMember({"d3", "d4", "regular"}));
  gen->add_option("--n", gen_n, "number of variables")->required();
  gen->add_option("--delta", gen_delta, "top fan-in exponent (d3/regular)")
      ->capture_default_str();
  gen->add_option("--M", gen_M, "top fan-in bound (d4)");
  gen->add_option("--S", gen_S, "formula size bound (d4)");
  gen->add_option("--d", gen_d, "product depth (regular)")->capture_default_str();
  gen->add_option("--c", gen_c, "degree-split base (regular)")->capture_default_str();
  gen->add_option("--k", gen_k, "hash independence override");
  gen->add_option("--m", gen_m, "hash bucket count override");
  gen->add_option("--q", gen_q, "hash field size override");
  gen->add_flag("--enumerate-family", gen_enumerate,
                "walk the whole hash family instead of the collapsed member");
  gen->add_option("--out", gen_out, "output file (default: stdout)");
  gen->callback([&] {
    Field field(modulus);
    SmallSupportOptions opts;
    opts.k = gen_k;
    opts.m = gen_m;
    opts.q = gen_q;
    opts.force_enumeration = gen_enumerate;
    HittingSet hs = [&] {
      if (gen_cls == "d3") return depth3_hs(gen_n, gen_delta, field, budget, opts);
      if (gen_cls == "d4") {
        if (!gen_M || !gen_S)
          throw param_error("gen-hs --class d4 needs --M and --S");
        return depth4_hs(gen_n, *gen_M, *gen_S, field, budget, opts);
      }
      return regular_hs(gen_n, gen_d, gen_delta, field, budget, opts, gen_c);
    }();
    if (gen_out.empty()) {
      hs.write(std::cout);
    } else {
      std::ofstream out(gen_out);
      if (!out) throw error("cannot write " + gen_out);
      hs.write(out);
      std::cout << "wrote " << hs.size() << " points to " << gen_out << "\n";
    }
  });

  /* ---- pit ---- */
  auto* pit = app.add_subcommand("pit", "black-box zero test against a point set");
  std::string pit_formula, pit_hs;
  pit->add_option("--formula", pit_formula, "formula file")->required();
  pit->add_option("--hs", pit_hs, "point-set file")->required();
  pit->callback([&] {
    HittingSet hs = read_points(pit_hs);
    ParsedFormula f = parse_formula(slurp(pit_formula), hs.field(), hs.n());
    auto eval = [&](const Point& pt) { return formula_eval(f, pt); };
    PitResult r = pit_blackbox(eval, hs, jobs);
    if (r.is_zero) {
      std::cout << "zero-on-H\n";
    } else {
      std::cout << "nonzero witness=" << point_str(*r.witness)
                << " value=" << formula_eval(f, *r.witness)
                << " evals=" << r.eval_count << "\n";
    }
  });

  /* ---- reduce ---- */
  auto* red = app.add_subcommand("reduce", "support reduction / depth-4 rewrite");
  std::string red_formula, red_cls, red_out;
  double red_eps = 0.5, red_c = 5.0;
  uint32_t red_tau = 2;
  red->add_option("--formula", red_formula, "formula file")->required();
  red->add_option("--class", red_cls, "expected class (default: inferred)")
      ->check(CLI::IsMember({"d3", "d4", "regular"}));
  red->add_option("--epsilon", red_eps, "support exponent (d3)")->capture_default_str();
  red->add_option("--tau", red_tau, "factor width threshold (d4)")->capture_default_str();
  red->add_option("--c", red_c, "degree-split base (regular)")->capture_default_str();
  red->add_option("--out", red_out, "reduced-formula file (default: stdout)");
  red->callback([&] {
    Field field(modulus);
    ParsedFormula f = parse_formula(slurp(red_formula), field);
    const char* have = std::holds_alternative<Depth3Formula>(f)   ? "d3"
                       : std::holds_alternative<Depth4Formula>(f) ? "d4"
                                                                  : "regular";
    if (!red_cls.empty() && red_cls != have)
      throw param_error("formula parsed as class " + std::string(have) +
                        ", not " + red_cls);
    std::ostringstream head;
    std::string body;
    if (const auto* d3 = std::get_if<Depth3Formula>(&f)) {
      Depth3Reduction r = reduce_depth3(*d3, red_eps, budget.max_terms);
      head << "# reduce class=d3 epsilon=" << red_eps << "\n"
           << render_trace(r.trace, d3->n());
      body = print_formula(ParsedFormula(r.formula));
    } else if (const auto* d4 = std::get_if<Depth4Formula>(&f)) {
      Depth4Reduction r = reduce_depth4(*d4, red_tau, budget.max_terms);
      head << "# reduce class=d4 tau=" << red_tau << "\n"
           << render_trace(r.trace, d4->n());
      body = print_formula(ParsedFormula(r.formula));
    } else {
      const auto& reg = std::get<RegularFormula>(f);
      Depth4Reduced r = regular_to_depth4(reg, red_c, budget.max_terms);
      head << "# rewrite class=regular c=" << red_c << " case="
           << (r.tag == SqueezeCase::kSmallDegree ? "small-degree"
               : r.tag == SqueezeCase::kLargeP1   ? "large-p1"
                                                  : "split")
           << "\n# M=" << r.M << " S=" << r.S << " log2M-bound=" << r.log2M_bound;
      if (r.tag == SqueezeCase::kSplit)
        head << " t=" << r.split_t << " alpha=" << r.alpha;
      head << "\n";
      body = print_formula(ParsedFormula(r.formula));
    }
    emit(head.str() + body, red_out);
    if (!red_out.empty())
      std::cout << head.str() << "wrote reduced formula to " << red_out << "\n";
  });

  /* ---- roabp ---- */
  auto* rbp = app.add_subcommand("roabp", "build the parallel-branch program");
  std::string rbp_formula, rbp_order, rbp_eval;
  rbp->add_option("--formula", rbp_formula, "formula file (d3 or d4)")->required();
  rbp->add_option("--order", rbp_order, "variable order, 1-based comma list");
  rbp->add_option("--eval", rbp_eval, "evaluate at a point, comma list");
  rbp->callback([&] {
    Field field(modulus);
    ParsedFormula f = parse_formula(slurp(rbp_formula), field);
    Depth4Formula d4 = [&] {
      if (const auto* d3 = std::get_if<Depth3Formula>(&f)) return d3->to_depth4();
      if (const auto* p = std::get_if<Depth4Formula>(&f)) return *p;
      throw param_error("regular formulas must go through `reduce` first");
    }();
    std::vector<uint32_t> order;
    if (!rbp_order.empty()) {
      std::istringstream in(rbp_order);
      std::string tok;
      while (std::getline(in, tok, ','))
        order.push_back(static_cast<uint32_t>(std::stoul(tok)) - 1);
    }
    RoabpBuild b = from_sparse_products(d4, order, std::nullopt, std::nullopt,
                                        budget.max_terms);
    std::cout << "n=" << d4.n() << " gates=" << b.M << " k=" << b.k
              << " s=" << b.s << " width=" << b.roabp.width()
              << " bound=" << b.bound << "\n";
    if (!rbp_eval.empty()) {
      Point pt = parse_point(rbp_eval, d4.n());
      std::cout << "value=" << b.roabp.eval(pt) << "\n";
    }
  });

  /* ---- lowerbound ---- */
  auto* low = app.add_subcommand(
      "lowerbound", "extract a multilinear polynomial vanishing on a point set");
  std::string low_hs, low_out;
  uint64_t low_columns = uint64_t{1} << 20;
  low->add_option("--hs", low_hs, "point-set file")->required();
  low->add_option("--max-columns", low_columns, "monomial scan budget")
      ->capture_default_str();
  low->add_option("--out", low_out, "certificate file (default: stdout)");
  low->callback([&] {
    HittingSet H = read_points(low_hs);
    SparseMultilinearPoly f = vanishing_multilinear(H, H.n(), low_columns);
    if (!verify_certificate(f, H))
      throw error("internal error: extracted certificate fails verification");
    std::ostringstream os;
    os << "# vanishing certificate n=" << H.n() << " points=" << H.size()
       << " terms=" << f.sparsity() << "\n"
       << poly_to_string(f) << "\n";
    emit(os.str(), low_out);
    if (!low_out.empty())
      std::cout << "wrote certificate with " << f.sparsity() << " terms to "
                << low_out << "\n";
  });

  /* ---- selftest ---- */
  auto* self = app.add_subcommand("selftest", "run the acceptance criteria");
  int self_criterion = 0;
  uint64_t self_seed = 0;
  uint32_t self_nmax = 6;
  self->add_option("--criterion", self_criterion, "run a single criterion (1-10)");
  self->add_option("--seed", self_seed, "extra randomized smoke pass with this seed");
  self->add_option("--n-max", self_nmax, "largest n for the smoke pass")
      ->capture_default_str();
  self->callback([&] {
    Field field(modulus);
    if (self_criterion != 0) {
      CriterionResult r = run_criterion(self_criterion, field);
      std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.index << " " << r.name
                << ": " << r.details << "\n";
      if (!r.pass) rc = 1;
    } else {
      for (const CriterionResult& r : run_acceptance(field, &std::cout))
        if (!r.pass) rc = 1;
    }
    if (self->count("--seed") || self->count("--n-max")) {
      uint64_t checks = 0, bad = 0;
      for (uint32_t n = 2; n <= self_nmax; ++n) {
        for (const char* cls : {"d3", "d4"}) {
          GenParams gp;
          gp.n = n;
          gp.gates = 3;
          Corpus corpus = make_corpus(cls, gp, self_seed + n, 20, field);
          for (const CorpusItem& item : corpus.items) {
            auto eval = [&](const Point& pt) { return formula_eval(item.formula, pt); };
            GridVerdict g = grid_pit(eval, n, 1, field);
            ++checks;
            if (g.is_zero == item.nonzero) ++bad;
            if (const auto* d4 = std::get_if<Depth4Formula>(&item.formula)) {
              ++checks;
              if (make_simple(*d4).expand() != item.expansion) ++bad;
            }
          }
        }
      }
      std::cout << "smoke seed=" << self_seed << " n-max=" << self_nmax << ": "
                << (bad ? "FAIL" : "ok") << " (" << checks << " checks)\n";
      if (bad) rc = 1;
    }
  });

  /* ---- bench ---- */
  auto* bench = app.add_subcommand("bench", "micro-benchmarks");
  uint32_t bench_n = 10;
  uint64_t bench_reps = 2'000'000;
  bench->add_option("--n", bench_n, "variable count for set generation")
      ->capture_default_str();
  bench->add_option("--reps", bench_reps, "field-op repetitions")->capture_default_str();
  bench->callback([&] {
    Field field(modulus);
    using clock = std::chrono::steady_clock;
    auto ms_since = [](clock::time_point t0) {
      return std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0)
          .count();
    };

    uint64_t x = 3;
    auto t0 = clock::now();
    for (uint64_t i = 0; i < bench_reps; ++i) x = field.mul(x, 0x9e3779b97f4a7c15ULL);
    auto mul_ms = ms_since(t0);
    std::cout << "field-mul: " << bench_reps << " ops in " << mul_ms
              << " ms (checksum " << x << ")\n";

    Rng rng(1);
    Depth4Formula f = gen_depth4(rng, std::min<uint32_t>(bench_n, 16), 3, 4, field);
    t0 = clock::now();
    uint64_t terms = 0;
    for (int i = 0; i < 200; ++i) terms += f.expand().sparsity();
    std::cout << "expand: 200 rounds in " << ms_since(t0) << " ms (" << terms
              << " terms)\n";

    t0 = clock::now();
    HittingSet hs = depth3_hs(bench_n, 0.25, field, budget);
    auto gen_ms = ms_since(t0);
    auto eval = [&](const Point& pt) { return f.eval(pt); };
    t0 = clock::now();
    PitResult r = pit_blackbox(eval, hs, jobs);
    std::cout << "depth3-hs n=" << bench_n << ": " << hs.size() << " points in "
              << gen_ms << " ms; scan "
              << (r.is_zero ? hs.size() : r.eval_count) << " evals in "
              << ms_since(t0) << " ms\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
