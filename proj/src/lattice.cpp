#include "k3div/lattice.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace k3div {

Int IntegerLattice::pair(const IVec& x, const IVec& y) const {
  return pair_with<Int>(gram, x, y);
}

Rat IntegerLattice::pair(const QVec& x, const QVec& y) const {
  return pair_q(gram, x, y);
}

std::optional<QVec> IntegerLattice::ambient_to_basis(const QVec& ambient) const {
  if (!basis_in_ambient) {
    if (ambient.size() != rank()) throw std::invalid_argument("ambient vector has wrong size");
    return ambient;
  }
  // x = c * B with B the basis rows; solve B^T c = x.
  return solve_rational_general(basis_in_ambient->transpose(), ambient);
}

void IntegerLattice::validate() const {
  if (gram.rows() != gram.cols() || gram.rows() == 0)
    throw std::invalid_argument("lattice: Gram matrix must be square and nonempty");
  if (!gram.is_symmetric()) throw std::invalid_argument("lattice: Gram matrix not symmetric");
  for (size_t i = 0; i < gram.rows(); ++i)
    if (mod_floor(gram(i, i), Int(2)) != 0)
      throw std::invalid_argument("lattice: odd diagonal entry (lattice not even)");
  if (det() == 0) throw std::invalid_argument("lattice: degenerate Gram matrix");
}

DivisorClass DivisorClass::in(const IntegerLattice& lat, IVec coords) {
  if (coords.size() != lat.rank()) throw std::invalid_argument("divisor class has wrong size");
  DivisorClass d;
  d.self_int = pair_with<Int>(lat.gram, coords, coords);
  d.coords = std::move(coords);
  return d;
}

// ---------------------------------------------------------------------------
// Expression grammar

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << "lattice expression: " << what << " at position " << pos << " in \"" << s << "\"";
    throw std::invalid_argument(os.str());
  }

  long integer() {
    skip_ws();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return std::stol(s.substr(start, pos - start));
  }

  LatticeAtom atom() {
    skip_ws();
    LatticeAtom a;
    if (eat('~')) {
      if (!(eat('A') && eat('1') && eat('^'))) fail("glued family must be ~A1^<4n>");
      long count = integer();
      if (count <= 0 || count % 4 != 0)
        throw std::invalid_argument("~A1 exponent must be a positive multiple of 4");
      a.kind = LatticeAtom::Kind::GluedA1;
      a.param = static_cast<int>(count);
    } else if (eat('U')) {
      a.kind = LatticeAtom::Kind::U;
    } else if (eat('A')) {
      a.kind = LatticeAtom::Kind::A;
      a.param = static_cast<int>(integer());
      if (a.param < 1) fail("A_n needs n >= 1");
    } else if (eat('D')) {
      a.kind = LatticeAtom::Kind::D;
      a.param = static_cast<int>(integer());
      if (a.param < 4) fail("D_n needs n >= 4");
    } else if (eat('E')) {
      a.kind = LatticeAtom::Kind::E;
      a.param = static_cast<int>(integer());
      if (a.param < 6 || a.param > 8) fail("E_k needs k in {6,7,8}");
    } else {
      fail("expected atom U, A<n>, D<n>, E<k> or ~A1^<4n>");
    }
    // Suffixes: twist (m) and repetition ^p, in either order.
    for (;;) {
      skip_ws();
      if (eat('(')) {
        a.twist = Int(integer());
        if (a.twist == 0) fail("twist by zero");
        if (!eat(')')) fail("expected ')'");
      } else if (a.kind != LatticeAtom::Kind::GluedA1 && pos < s.size() && s[pos] == '^') {
        ++pos;
        long p = integer();
        if (p < 1) fail("power must be >= 1");
        a.power = static_cast<int>(p);
      } else {
        break;
      }
    }
    return a;
  }
};

}  // namespace

LatticeExpr parse_lattice_expr(const std::string& text) {
  Parser p(text);
  LatticeExpr e;
  e.summands.push_back(p.atom());
  while (true) {
    p.skip_ws();
    if (p.pos == p.s.size()) break;
    if (!p.eat('+')) p.fail("expected '+' or end of expression");
    e.summands.push_back(p.atom());
  }
  return e;
}

std::string expr_to_string(const LatticeExpr& expr) {
  std::ostringstream os;
  bool first = true;
  for (const auto& a : expr.summands) {
    if (!first) os << "+";
    first = false;
    switch (a.kind) {
      case LatticeAtom::Kind::U: os << "U"; break;
      case LatticeAtom::Kind::A: os << "A" << a.param; break;
      case LatticeAtom::Kind::D: os << "D" << a.param; break;
      case LatticeAtom::Kind::E: os << "E" << a.param; break;
      case LatticeAtom::Kind::GluedA1: os << "~A1^" << a.param; break;
    }
    if (a.twist != 1) os << "(" << a.twist.get_str() << ")";
    if (a.power != 1) os << "^" << a.power;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Atom elaboration

IMat cartan_gram(LatticeAtom::Kind kind, int n) {
  auto chain = [](IMat& m, int a, int b) {
    m(a, b) = 1;
    m(b, a) = 1;
  };
  switch (kind) {
    case LatticeAtom::Kind::A: {
      IMat m(n, n);
      for (int i = 0; i < n; ++i) m(i, i) = -2;
      for (int i = 0; i + 1 < n; ++i) chain(m, i, i + 1);
      return m;
    }
    case LatticeAtom::Kind::D: {
      IMat m(n, n);
      for (int i = 0; i < n; ++i) m(i, i) = -2;
      for (int i = 0; i + 2 < n; ++i) chain(m, i, i + 1);
      chain(m, n - 3, n - 1);  // fork at the end of the chain
      return m;
    }
    case LatticeAtom::Kind::E: {
      IMat m(n, n);
      for (int i = 0; i < n; ++i) m(i, i) = -2;
      for (int i = 0; i + 2 < n; ++i) chain(m, i, i + 1);
      chain(m, 2, n - 1);  // branch node on the third chain vertex
      return m;
    }
    default:
      throw std::invalid_argument("cartan_gram: not a root lattice kind");
  }
}

IntegerLattice hyperbolic_plane() {
  IntegerLattice u;
  u.gram = IMat{{Int(0), Int(1)}, {Int(1), Int(0)}};
  u.label = "U";
  return u;
}

IntegerLattice direct_sum(const IntegerLattice& a, const IntegerLattice& b) {
  IntegerLattice s;
  size_t n = a.rank(), m = b.rank();
  s.gram = IMat(n + m, n + m);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) s.gram(i, j) = a.gram(i, j);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) s.gram(n + i, n + j) = b.gram(i, j);
  if (!a.label.empty() && !b.label.empty()) s.label = a.label + "+" + b.label;
  if (a.basis_in_ambient || b.basis_in_ambient) {
    size_t ca = a.basis_in_ambient ? a.basis_in_ambient->cols() : n;
    size_t cb = b.basis_in_ambient ? b.basis_in_ambient->cols() : m;
    QMat basis(n + m, ca + cb);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < ca; ++j)
        basis(i, j) = a.basis_in_ambient ? (*a.basis_in_ambient)(i, j)
                                         : Rat(i == j ? 1 : 0);
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < cb; ++j)
        basis(n + i, ca + j) = b.basis_in_ambient ? (*b.basis_in_ambient)(i, j)
                                                  : Rat(i == j ? 1 : 0);
    s.basis_in_ambient = basis;
  }
  return s;
}

IntegerLattice twist(const IntegerLattice& lat, const Int& m) {
  if (m == 0) throw std::invalid_argument("twist by zero");
  IntegerLattice t = lat;
  for (size_t i = 0; i < t.gram.rows(); ++i)
    for (size_t j = 0; j < t.gram.cols(); ++j) t.gram(i, j) *= m;
  if (!lat.label.empty()) t.label = lat.label + "(" + m.get_str() + ")";
  return t;
}

IntegerLattice adjoin_glue(const IntegerLattice& lat, const QVec& v, const std::string& label) {
  size_t n = lat.rank();
  if (v.size() != n) throw std::invalid_argument("adjoin_glue: vector has wrong size");
  QVec pairings = mat_vec(to_qmat(lat.gram), v);
  for (const Rat& p : pairings)
    if (!is_integer(p))
      throw std::invalid_argument("adjoin_glue: vector not in the dual lattice");
  Rat vv = pair_q(lat.gram, v, v);
  if (!is_integer(vv) || mod_floor(vv.get_num(), Int(2)) != 0)
    throw std::invalid_argument("adjoin_glue: glue vector has odd norm (result not even)");
  bool half_integral = false;
  for (const Rat& c : v) {
    Rat two_c = c * 2;
    if (!is_integer(two_c)) throw std::invalid_argument("adjoin_glue: 2v must lie in L");
    if (!is_integer(c)) half_integral = true;
  }
  if (!half_integral) throw std::invalid_argument("adjoin_glue: vector already in L, no index-2 glue");

  // Integral basis of L + Zv via a row HNF over the common denominator 2.
  IMat gens(n + 1, n);
  for (size_t i = 0; i < n; ++i) gens(i, i) = 2;
  for (size_t j = 0; j < n; ++j) {
    Rat c = v[j] * 2;
    gens(n, j) = c.get_num();
  }
  IMat hnf = hnf_row_basis(gens);
  if (hnf.rows() != n) throw std::logic_error("adjoin_glue: rank drop");
  QMat basis(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) basis(i, j) = Rat(hnf(i, j)) / 2;

  QMat g = basis * to_qmat(lat.gram) * basis.transpose();
  IntegerLattice out;
  out.gram = IMat(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (!is_integer(g(i, j))) throw std::logic_error("adjoin_glue: non-integral Gram");
      out.gram(i, j) = g(i, j).get_num();
    }
  out.label = label.empty() ? (lat.label.empty() ? "" : lat.label + "~") : label;
  if (lat.basis_in_ambient)
    out.basis_in_ambient = basis * *lat.basis_in_ambient;
  else
    out.basis_in_ambient = basis;
  out.validate();
  if (out.det() * 4 != lat.det()) throw std::logic_error("adjoin_glue: index is not 2");
  return out;
}

IntegerLattice glue(const IntegerLattice& left, const IntegerLattice& right, const GlueData& g) {
  if (g.left_generators.size() != g.right_generators.size())
    throw std::invalid_argument("glue: generator lists differ in length");
  size_t m = g.left_generators.size();
  if (m == 0) throw std::invalid_argument("glue: empty glue group");

  auto check_dual = [](const IntegerLattice& lat, const QVec& x) {
    QVec pr = mat_vec(to_qmat(lat.gram), x);
    for (const Rat& p : pr)
      if (!is_integer(p)) throw std::invalid_argument("glue: generator not in the dual lattice");
    for (const Rat& c : x)
      if (!is_integer(c * 2)) throw std::invalid_argument("glue: generator has order > 2");
  };
  for (size_t i = 0; i < m; ++i) {
    check_dual(left, g.left_generators[i]);
    check_dual(right, g.right_generators[i]);
  }
  // Anti-isometry on generators: q_M(y) = -q_L(x) mod 2, b_M = -b_L mod 1.
  for (size_t i = 0; i < m; ++i) {
    Rat ql = mod_2z(pair_q(left.gram, g.left_generators[i], g.left_generators[i]));
    Rat qr = mod_2z(pair_q(right.gram, g.right_generators[i], g.right_generators[i]));
    if (mod_2z(ql + qr) != 0)
      throw std::invalid_argument("glue: pairing not anti-isometric (q values)");
    for (size_t j = i + 1; j < m; ++j) {
      Rat bl = mod_1z(pair_q(left.gram, g.left_generators[i], g.left_generators[j]));
      Rat br = mod_1z(pair_q(right.gram, g.right_generators[i], g.right_generators[j]));
      if (mod_1z(bl + br) != 0)
        throw std::invalid_argument("glue: pairing not anti-isometric (b values)");
    }
  }

  IntegerLattice sum = direct_sum(left, right);
  sum.basis_in_ambient.reset();
  size_t n = sum.rank();
  auto diag = [&](size_t i) {
    QVec v(n, Rat(0));
    for (size_t j = 0; j < left.rank(); ++j) v[j] = g.left_generators[i][j];
    for (size_t j = 0; j < right.rank(); ++j) v[left.rank() + j] = g.right_generators[i][j];
    return v;
  };

  // Isotropy of the diagonal image, checked on the whole subgroup.
  for (size_t mask = 1; mask < (size_t{1} << m); ++mask) {
    QVec x(n, Rat(0));
    for (size_t i = 0; i < m; ++i)
      if (mask & (size_t{1} << i)) {
        QVec d = diag(i);
        for (size_t j = 0; j < n; ++j) x[j] += d[j];
      }
    if (mod_2z(pair_q(sum.gram, x, x)) != 0)
      throw std::invalid_argument("glue: diagonal image not isotropic");
  }

  // Adjoin all glue vectors at once over the denominator 2.
  IMat gens(n + m, n);
  for (size_t i = 0; i < n; ++i) gens(i, i) = 2;
  for (size_t i = 0; i < m; ++i) {
    QVec d = diag(i);
    for (size_t j = 0; j < n; ++j) {
      Rat c = d[j] * 2;
      gens(n + i, j) = c.get_num();
    }
  }
  IMat hnf = hnf_row_basis(gens);
  if (hnf.rows() != n) throw std::logic_error("glue: rank drop");
  QMat basis(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) basis(i, j) = Rat(hnf(i, j)) / 2;
  QMat gq = basis * to_qmat(sum.gram) * basis.transpose();
  IntegerLattice out;
  out.gram = IMat(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (!is_integer(gq(i, j))) throw std::logic_error("glue: non-integral Gram");
      out.gram(i, j) = gq(i, j).get_num();
    }
  out.basis_in_ambient = basis;
  out.label = left.label + "|" + right.label;
  out.validate();

  Int expected_index_sq = Int(1) << (2 * m);
  if (out.det() * expected_index_sq != sum.det())
    throw std::invalid_argument("glue: generators not independent in A_L + A_M");
  return out;
}

IntegerLattice orthogonal_complement(const IntegerLattice& lat, const std::vector<IVec>& span) {
  if (span.empty()) throw std::invalid_argument("orthogonal_complement: empty span");
  size_t n = lat.rank(), k = span.size();
  IMat gram_s(k, k);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) gram_s(i, j) = lat.pair(span[i], span[j]);
  if (determinant(gram_s) == 0)
    throw std::invalid_argument("orthogonal_complement: span is degenerate");

  IMat pairing(k, n);
  for (size_t i = 0; i < k; ++i) {
    IVec row = mat_vec(lat.gram, span[i]);
    for (size_t j = 0; j < n; ++j) pairing(i, j) = row[j];
  }
  IMat kernel = integer_kernel(pairing);
  size_t r = kernel.rows();
  IntegerLattice out;
  out.gram = IMat(r, r);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) out.gram(i, j) = pair_with<Int>(lat.gram, kernel.row(i), kernel.row(j));
  QMat basis(r, n);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < n; ++j) basis(i, j) = Rat(kernel(i, j));
  out.basis_in_ambient = lat.basis_in_ambient ? QMat(basis * *lat.basis_in_ambient) : basis;
  out.label = lat.label.empty() ? "" : lat.label + "^perp";
  out.validate();
  return out;
}

PrimitiveClosure primitive_closure(const IntegerLattice& lat, const std::vector<IVec>& span) {
  if (span.empty()) throw std::invalid_argument("primitive_closure: empty span");
  size_t n = lat.rank(), k = span.size();
  IMat a(n, k);
  for (size_t j = 0; j < k; ++j)
    for (size_t i = 0; i < n; ++i) a(i, j) = span[j][i];
  SmithForm f = smith_normal_form(a);
  Int index(1);
  for (size_t i = 0; i < k; ++i) {
    if (f.d(i, i) == 0) throw std::invalid_argument("primitive_closure: span not independent");
    index *= f.d(i, i);
  }
  QMat left_inv = inverse(to_qmat(f.left));
  PrimitiveClosure out;
  out.index = index;
  out.lattice.gram = IMat(k, k);
  QMat basis(k, n);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < n; ++j) {
      Rat c = left_inv(j, i);
      if (!is_integer(c)) throw std::logic_error("primitive_closure: non-integer basis");
      basis(i, j) = c;
    }
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) {
      Rat p = pair_q(lat.gram, basis.row(i), basis.row(j));
      out.lattice.gram(i, j) = p.get_num();
    }
  out.lattice.basis_in_ambient =
      lat.basis_in_ambient ? QMat(basis * *lat.basis_in_ambient) : basis;
  out.lattice.label = lat.label.empty() ? "" : lat.label + ".sat";
  // The saturation of a span containing isotropic directions is degenerate
  // as a form; it is still a valid Z-module answer, so no validation here.
  return out;
}

Divisibility is_two_divisible(const IntegerLattice& lat, const IVec& coords) {
  if (coords.size() != lat.rank()) throw std::invalid_argument("is_two_divisible: wrong size");
  Divisibility r;
  r.divisible = true;
  for (const Int& c : coords)
    if (mod_floor(c, Int(2)) != 0) {
      r.divisible = false;
      break;
    }
  if (r.divisible) {
    r.witness.reserve(coords.size());
    for (const Int& c : coords) r.witness.push_back(c / 2);
  } else {
    r.residue.reserve(coords.size());
    for (const Int& c : coords) r.residue.push_back(mod_floor(c, Int(2)));
  }
  return r;
}

Divisibility is_two_divisible_ambient(const IntegerLattice& lat, const QVec& ambient) {
  auto coords = lat.ambient_to_basis(ambient);
  if (!coords) throw std::invalid_argument("is_two_divisible: class not in the rational span");
  IVec c(coords->size());
  for (size_t i = 0; i < coords->size(); ++i) {
    if (!is_integer((*coords)[i]))
      throw std::invalid_argument("is_two_divisible: class not in the lattice");
    c[i] = (*coords)[i].get_num();
  }
  return is_two_divisible(lat, c);
}

HalfClassQ half_class_q_test(const IntegerLattice& lat, const IVec& coords) {
  if (coords.size() != lat.rank()) throw std::invalid_argument("half_class_q_test: wrong size");
  HalfClassQ out;
  IVec pairings = mat_vec(lat.gram, coords);
  out.in_dual = true;
  for (const Int& p : pairings)
    if (mod_floor(p, Int(2)) != 0) {
      out.in_dual = false;
      break;
    }
  if (out.in_dual) {
    Int dd = pair_with<Int>(lat.gram, coords, coords);
    out.q_value = mod_2z(Rat(dd) / 4);
  }
  return out;
}

EvenUnimodularVerdict even_unimodular_admissible(int p, int q) {
  if (p < 0 || q < 0 || p + q == 0)
    throw std::invalid_argument("even_unimodular_admissible: need p, q >= 0 and p + q > 0");
  EvenUnimodularVerdict v;
  v.signature_mod8 = ((p - q) % 8 + 8) % 8;
  v.admissible = (v.signature_mod8 == 0);
  v.definite = (p == 0 || q == 0);
  return v;
}

// ---------------------------------------------------------------------------
// Expression elaboration

std::vector<BlockLayout> block_layout(const LatticeExpr& expr) {
  std::vector<BlockLayout> layout;
  size_t offset = 0;
  for (const auto& a : expr.summands)
    for (int copy = 0; copy < a.power; ++copy) {
      BlockLayout b;
      b.atom = a;
      b.atom.power = 1;
      b.offset = offset;
      switch (a.kind) {
        case LatticeAtom::Kind::U: b.rank = 2; break;
        case LatticeAtom::Kind::GluedA1: b.rank = static_cast<size_t>(a.param); break;
        default: b.rank = static_cast<size_t>(a.param); break;
      }
      offset += b.rank;
      layout.push_back(b);
    }
  return layout;
}

namespace {

IntegerLattice build_atom(const LatticeAtom& a) {
  IntegerLattice lat;
  switch (a.kind) {
    case LatticeAtom::Kind::U:
      lat = hyperbolic_plane();
      break;
    case LatticeAtom::Kind::A:
    case LatticeAtom::Kind::D:
    case LatticeAtom::Kind::E: {
      lat.gram = cartan_gram(a.kind, a.param);
      const char* prefix = a.kind == LatticeAtom::Kind::A   ? "A"
                           : a.kind == LatticeAtom::Kind::D ? "D"
                                                            : "E";
      lat.label = prefix + std::to_string(a.param);
      break;
    }
    case LatticeAtom::Kind::GluedA1: {
      int n = a.param;
      IntegerLattice base;
      base.gram = IMat(n, n);
      for (int i = 0; i < n; ++i) base.gram(i, i) = -2;
      base.label = "A1^" + std::to_string(n);
      QVec delta(n, Rat(1, 2));
      lat = adjoin_glue(base, delta, "~A1^" + std::to_string(n));
      break;
    }
  }
  if (a.twist != 1) lat = twist(lat, a.twist);
  return lat;
}

}  // namespace

IntegerLattice build_lattice(const LatticeExpr& expr) {
  if (expr.summands.empty()) throw std::invalid_argument("empty lattice expression");
  IntegerLattice acc;
  bool first = true;
  for (const auto& a : expr.summands) {
    IntegerLattice block = build_atom(a);
    for (int copy = 0; copy < a.power; ++copy) {
      if (first) {
        acc = block;
        first = false;
      } else {
        acc = direct_sum(acc, block);
      }
    }
  }
  acc.label = expr_to_string(expr);
  acc.validate();
  return acc;
}

IntegerLattice build_lattice(const std::string& text) {
  return build_lattice(parse_lattice_expr(text));
}

}  // namespace k3div
