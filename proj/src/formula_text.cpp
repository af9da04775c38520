#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "mlhs/formula.hpp"

namespace mlhs {

/* ---- printing ---- */

namespace {

std::string coeff_str(const Field& f, uint64_t c) { return std::to_string(f.to_signed(c)); }

}  // namespace

std::string poly_to_string(const SparseMultilinearPoly& p) {
  if (p.is_zero()) return "0";
  std::vector<VarMask> masks;
  masks.reserve(p.terms().size());
  for (const auto& [m, c] : p.terms()) {
    (void)c;
    masks.push_back(m);
  }
  std::sort(masks.begin(), masks.end(), deglex_less);
  std::string out;
  for (size_t i = 0; i < masks.size(); ++i) {
    if (i) out += " + ";
    VarMask m = masks[i];
    uint64_t c = p.coeff(m);
    if (m == 0) {
      out += coeff_str(p.field(), c);
      continue;
    }
    bool first = true;
    if (c != 1) {
      out += coeff_str(p.field(), c);
      first = false;
    }
    for (uint32_t i2 : mask_to_indices(m)) {
      if (!first) out += "*";
      out += "x" + std::to_string(i2 + 1);
      first = false;
    }
  }
  return out;
}

namespace {

std::string gates_to_string(const std::vector<Gate>& gates) {
  if (gates.empty()) return "(0)";
  std::string out;
  for (size_t i = 0; i < gates.size(); ++i) {
    if (i) out += " + ";
    const auto& g = gates[i];
    if (g.empty()) {
      out += "(1)";
      continue;
    }
    for (size_t j = 0; j < g.size(); ++j) {
      if (j) out += "*";
      out += "(" + poly_to_string(g[j]) + ")";
    }
  }
  return out;
}

std::string leaf_to_string(const RegLeaf& leaf, const Field& f) {
  std::string c = std::to_string(f.to_signed(leaf.coeff));
  if (!leaf.var) return c;
  std::string v = "x" + std::to_string(*leaf.var + 1);
  return leaf.coeff == 1 ? v : c + "*" + v;
}

std::string reg_to_string(const RegNode& node, size_t layer, size_t last, const Field& f) {
  std::string out;
  if (layer == last) {  // bottom sum of leaves
    for (size_t i = 0; i < node.children.size(); ++i) {
      if (i) out += " + ";
      out += leaf_to_string(node.children[i].leaf, f);
    }
    return out;
  }
  if (layer % 2 == 0) {  // sum of products
    for (size_t i = 0; i < node.children.size(); ++i) {
      if (i) out += " + ";
      out += reg_to_string(node.children[i], layer + 1, last, f);
    }
    return out;
  }
  for (size_t i = 0; i < node.children.size(); ++i) {  // product of sums
    if (i) out += "*";
    out += "(" + reg_to_string(node.children[i], layer + 1, last, f) + ")";
  }
  return out;
}

}  // namespace

std::string print_formula(const ParsedFormula& f) {
  std::ostringstream out;
  if (const auto* d3 = std::get_if<Depth3Formula>(&f)) {
    out << "# class=d3 n=" << d3->n() << "\n" << gates_to_string(d3->gates()) << "\n";
  } else if (const auto* d4 = std::get_if<Depth4Formula>(&f)) {
    out << "# class=d4 n=" << d4->n() << "\n" << gates_to_string(d4->gates()) << "\n";
  } else {
    const auto& r = std::get<RegularFormula>(f);
    out << "# class=regular n=" << r.n() << " profile=(";
    for (size_t i = 0; i < r.profile().size(); ++i) {
      if (i) out << ",";
      out << r.profile()[i];
    }
    out << ")\n" << reg_to_string(r.root(), 0, r.profile().size() - 1, r.field()) << "\n";
  }
  return out.str();
}

/* ---- parsing ---- */

namespace {

struct Ast {
  enum Kind { kSum, kProd, kTerm } kind = kTerm;
  std::vector<Ast> children;
  long long coeff = 1;
  std::vector<uint32_t> vars;  // 0-based
};

struct Lexer {
  const std::string& s;
  size_t pos = 0;

  explicit Lexer(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size()) {
      char c = s[pos];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos;
      } else if (c == '#') {
        while (pos < s.size() && s[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  void expect(char c) {
    if (peek() != c)
      throw parse_error(std::string("expected '") + c + "'", pos);
    ++pos;
  }

  bool at_var() {
    char c = peek();
    return c == 'x' && pos + 1 < s.size() && isdigit(static_cast<unsigned char>(s[pos + 1]));
  }

  bool at_int() {
    char c = peek();
    if (isdigit(static_cast<unsigned char>(c))) return true;
    return c == '-' && pos + 1 < s.size() && isdigit(static_cast<unsigned char>(s[pos + 1]));
  }

  uint32_t read_var() {
    skip_ws();
    ++pos;  // 'x'
    size_t start = pos;
    while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    unsigned long v = 0;
    try {
      v = std::stoul(s.substr(start, pos - start));
    } catch (const std::out_of_range&) {
      v = kMaxVars + 1;
    }
    if (v == 0) throw parse_error("variable indices are 1-based", start);
    if (v > kMaxVars)
      throw parse_error("variable index exceeds supported maximum " + std::to_string(kMaxVars),
                        start);
    return static_cast<uint32_t>(v - 1);
  }

  long long read_int() {
    skip_ws();
    size_t start = pos;
    if (s[pos] == '-') ++pos;
    while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    errno = 0;
    long long v = std::strtoll(s.substr(start, pos - start).c_str(), nullptr, 10);
    if (errno == ERANGE) throw parse_error("integer literal out of range", start);
    return v;
  }
};

Ast parse_expr(Lexer& lx);

Ast parse_atom(Lexer& lx) {
  if (lx.peek() == '(') {
    lx.expect('(');
    Ast inner = parse_expr(lx);
    lx.expect(')');
    return inner;
  }
  Ast t;
  t.kind = Ast::kTerm;
  if (lx.at_int()) {
    t.coeff = lx.read_int();
  } else if (lx.at_var()) {
    t.vars.push_back(lx.read_var());
  } else {
    throw parse_error("expected '(', integer, or variable", lx.pos);
  }
  // Greedy: keep consuming '*x<k>' into the same term.
  while (lx.peek() == '*') {
    size_t save = lx.pos;
    ++lx.pos;
    if (lx.at_var()) {
      t.vars.push_back(lx.read_var());
    } else {
      lx.pos = save;  // '*' belongs to the enclosing product
      break;
    }
  }
  return t;
}

Ast parse_product(Lexer& lx) {
  Ast p;
  p.kind = Ast::kProd;
  p.children.push_back(parse_atom(lx));
  while (lx.peek() == '*') {
    ++lx.pos;
    p.children.push_back(parse_atom(lx));
  }
  return p;
}

Ast parse_expr(Lexer& lx) {
  Ast sum;
  sum.kind = Ast::kSum;
  sum.children.push_back(parse_product(lx));
  while (lx.peek() == '+') {
    ++lx.pos;
    sum.children.push_back(parse_product(lx));
  }
  return sum;
}

uint32_t max_var_index(const Ast& a) {
  uint32_t mx = 0;
  if (a.kind == Ast::kTerm) {
    for (uint32_t v : a.vars) mx = std::max(mx, v + 1);
  } else {
    for (const auto& ch : a.children) mx = std::max(mx, max_var_index(ch));
  }
  return mx;
}

void term_to_poly(const Ast& t, SparseMultilinearPoly& acc, size_t pos) {
  VarMask m = 0;
  for (uint32_t v : t.vars) {
    VarMask bit = VarMask{1} << v;
    if (m & bit) throw parse_error("term repeats a variable (not multilinear)", pos);
    m |= bit;
  }
  acc.add_term(m, acc.field().from_int(t.coeff));
}

// A parenthesized factor body: sum of plain terms, no deeper nesting.
bool is_flat_poly(const Ast& a) {
  if (a.kind != Ast::kSum) return false;
  for (const auto& prod : a.children) {
    if (prod.kind == Ast::kTerm) continue;
    if (prod.kind != Ast::kProd) return false;
    if (prod.children.size() != 1 || prod.children[0].kind != Ast::kTerm) return false;
  }
  return true;
}

SparseMultilinearPoly flat_poly(const Ast& a, uint32_t n, const Field& f, size_t pos) {
  SparseMultilinearPoly acc(n, f);
  if (a.kind == Ast::kTerm) {
    term_to_poly(a, acc, pos);
    return acc;
  }
  for (const auto& prod : a.children) {
    const Ast& t = prod.kind == Ast::kTerm ? prod : prod.children[0];
    term_to_poly(t, acc, pos);
  }
  return acc;
}

// Flattens the top-level AST into gates of factor polynomials; empty optional
// when some factor nests deeper (regular shape).
std::optional<std::vector<Gate>> ast_to_gates(const Ast& top, uint32_t n, const Field& f) {
  std::vector<Gate> gates;
  for (const auto& prod : top.children) {
    Gate g;
    for (const auto& atom : prod.children) {
      if (atom.kind == Ast::kTerm || is_flat_poly(atom)) {
        g.push_back(flat_poly(atom, n, f, 0));
      } else {
        return std::nullopt;
      }
    }
    gates.push_back(std::move(g));
  }
  return gates;
}

bool gates_all_linear(const std::vector<Gate>& gates) {
  for (const auto& g : gates)
    for (const auto& factor : g)
      for (const auto& [m, c] : factor.terms()) {
        (void)c;
        if (popcount(m) > 1) return false;
      }
  return true;
}

/* regular coercion against a profile */

RegLeaf unwrap_leaf(const Ast& node, const Field& f) {
  const Ast* cur = &node;
  while (cur->kind != Ast::kTerm) {
    if (cur->children.size() != 1)
      throw parse_error("regular formula leaf must be a single term", 0);
    cur = &cur->children[0];
  }
  if (cur->vars.size() > 1)
    throw parse_error("regular formula leaf must have at most one variable", 0);
  RegLeaf leaf;
  leaf.coeff = f.from_int(cur->coeff);
  if (!cur->vars.empty()) leaf.var = cur->vars[0];
  return leaf;
}

RegNode coerce_regular(const Ast& node, const std::vector<uint32_t>& profile, size_t layer,
                       const Field& f) {
  size_t last = profile.size() - 1;
  bool want_sum = layer % 2 == 0;
  Ast::Kind want = want_sum ? Ast::kSum : Ast::kProd;
  std::vector<const Ast*> children;
  if (node.kind == want) {
    for (const auto& ch : node.children) children.push_back(&ch);
  } else if (profile[layer] == 1) {
    children.push_back(&node);  // unary layer absent from the text
  } else {
    throw parse_error("regular formula shape does not match profile at layer " +
                          std::to_string(layer + 1),
                      0);
  }
  if (children.size() != profile[layer])
    throw parse_error("regular formula fan-in at layer " + std::to_string(layer + 1) +
                          " is " + std::to_string(children.size()) + ", profile wants " +
                          std::to_string(profile[layer]),
                      0);
  RegNode out;
  for (const Ast* ch : children) {
    if (layer == last) {
      RegNode leaf;
      leaf.is_leaf = true;
      leaf.leaf = unwrap_leaf(*ch, f);
      out.children.push_back(std::move(leaf));
    } else {
      out.children.push_back(coerce_regular(*ch, profile, layer + 1, f));
    }
  }
  return out;
}

// Without an explicit profile: descend as long as the shape stays uniform.
std::optional<std::vector<uint32_t>> infer_profile(const Ast& top) {
  std::vector<uint32_t> profile;
  std::vector<const Ast*> level = {&top};
  for (;;) {
    bool want_sum = profile.size() % 2 == 0;
    uint32_t fanin = 0;
    std::vector<const Ast*> next;
    bool leaves = want_sum;
    for (const Ast* node : level) {
      if (node->kind != (want_sum ? Ast::kSum : Ast::kProd)) return std::nullopt;
      if (fanin == 0)
        fanin = static_cast<uint32_t>(node->children.size());
      else if (fanin != node->children.size())
        return std::nullopt;
      for (const auto& ch : node->children) {
        const Ast* c = &ch;
        // unwrap Prod-of-one-Term so "x1 + x2" bottoms out
        if (want_sum && c->kind == Ast::kProd && c->children.size() == 1 &&
            c->children[0].kind == Ast::kTerm)
          c = &c->children[0];
        if (!(want_sum && c->kind == Ast::kTerm && c->vars.size() <= 1)) leaves = false;
        next.push_back(c);
      }
    }
    if (fanin == 0) return std::nullopt;
    profile.push_back(fanin);
    if (leaves) break;
    level = std::move(next);
  }
  if (profile.size() % 2 == 0 || profile.size() < 3) return std::nullopt;
  return profile;
}

struct Header {
  std::string cls;
  std::vector<uint32_t> profile;
  uint32_t n = 0;
};

Header read_header(const std::string& text) {
  Header h;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    size_t i = line.find_first_not_of(" \t");
    if (i == std::string::npos) continue;
    if (line[i] != '#') break;
    std::istringstream ls(line.substr(i + 1));
    std::string tok;
    while (ls >> tok) {
      if (tok.rfind("class=", 0) == 0) h.cls = tok.substr(6);
      if (tok.rfind("n=", 0) == 0) h.n = static_cast<uint32_t>(std::stoul(tok.substr(2)));
      if (tok.rfind("profile=(", 0) == 0) {
        std::string body = tok.substr(9);
        if (!body.empty() && body.back() == ')') body.pop_back();
        std::istringstream ps(body);
        std::string num;
        while (std::getline(ps, num, ','))
          h.profile.push_back(static_cast<uint32_t>(std::stoul(num)));
      }
    }
  }
  return h;
}

}  // namespace

SparseMultilinearPoly parse_poly(const std::string& text, uint32_t n, const Field& f) {
  Lexer lx(text);
  Ast a = parse_expr(lx);
  if (lx.peek() != '\0') throw parse_error("trailing input after polynomial", lx.pos);
  if (!is_flat_poly(a)) throw parse_error("expected a sum of terms", 0);
  return flat_poly(a, n, f, 0);
}

ParsedFormula parse_formula(const std::string& text, const Field& f, uint32_t n) {
  Header h = read_header(text);
  Lexer lx(text);
  Ast top = parse_expr(lx);
  if (lx.peek() != '\0') throw parse_error("trailing input after formula", lx.pos);

  if (n == 0) n = h.n != 0 ? h.n : max_var_index(top);
  if (n == 0) n = 1;
  uint32_t used = max_var_index(top);
  if (used > n)
    throw parse_error("formula uses x" + std::to_string(used) + " but n=" + std::to_string(n),
                      0);

  if (h.cls == "regular" || (h.cls.empty() && !h.profile.empty())) {
    std::vector<uint32_t> profile = h.profile;
    if (profile.empty()) {
      auto inferred = infer_profile(top);
      if (!inferred)
        throw parse_error("cannot infer a regular profile; add a profile=(...) header", 0);
      profile = *inferred;
    }
    RegNode root = coerce_regular(top, profile, 0, f);
    return RegularFormula(n, f, std::move(profile), std::move(root));
  }

  auto gates = ast_to_gates(top, n, f);
  if (!gates) {
    if (!h.cls.empty())
      throw parse_error("nested factors are not valid for class " + h.cls, 0);
    auto inferred = infer_profile(top);
    if (!inferred)
      throw parse_error(
          "formula nests deeper than depth 4 but has no consistent regular profile", 0);
    RegNode root = coerce_regular(top, *inferred, 0, f);
    return RegularFormula(n, f, std::move(*inferred), std::move(root));
  }

  if (h.cls == "d4") return Depth4Formula(n, f, std::move(*gates));
  bool linear = gates_all_linear(*gates);
  if (h.cls == "d3") {
    if (!linear)
      throw parse_error("class=d3 but a factor has a degree >= 2 term", 0);
    return Depth3Formula(n, f, std::move(*gates));
  }
  if (linear) return Depth3Formula(n, f, std::move(*gates));
  return Depth4Formula(n, f, std::move(*gates));
}

}  // namespace mlhs
