#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "k3div/lattice.hpp"

using namespace k3div;

namespace {

QVec ambient_ones(size_t n, int num, int den) {
  return QVec(n, Rat(num, den));
}

}  // namespace

TEST_CASE("hyperbolic plane and atoms") {
  IntegerLattice u = build_lattice("U");
  CHECK(u.gram == IMat{{Int(0), Int(1)}, {Int(1), Int(0)}});
  CHECK(u.det() == -1);
  CHECK(u.sig() == std::pair<int, int>(1, 1));

  IntegerLattice a1 = build_lattice("A1");
  CHECK(a1.gram == IMat{{Int(-2)}});

  // Cartan determinants: det(A_n) = n+1, det(D_n) = 4, det(E6/E7/E8) = 3/2/1,
  // with sign (-1)^rank for the negative definite convention.
  CHECK(abs(build_lattice("A4").det()) == 5);
  CHECK(abs(build_lattice("D4").det()) == 4);
  CHECK(abs(build_lattice("D8").det()) == 4);
  CHECK(abs(build_lattice("E6").det()) == 3);
  CHECK(abs(build_lattice("E7").det()) == 2);
  CHECK(abs(build_lattice("E8").det()) == 1);
  CHECK(build_lattice("E8").sig() == std::pair<int, int>(0, 8));
  CHECK(build_lattice("D4").sig() == std::pair<int, int>(0, 4));
}

TEST_CASE("glued family ~A1^4n") {
  IntegerLattice g8 = build_lattice("~A1^8");
  CHECK(g8.rank() == 8);
  CHECK(g8.det() == 64);  // 2^8 / index^2
  // delta = (e_1+...+e_8)/2 lies in the lattice and has norm -2n/... = -4:
  // computed independently as (1/4) * 8 * (-2).
  QVec delta = ambient_ones(8, 1, 2);
  auto coords = g8.ambient_to_basis(delta);
  REQUIRE(coords.has_value());
  for (const Rat& c : *coords) CHECK(is_integer(c));
  CHECK(pair_q(IMat{{Int(-2)}}, QVec{Rat(1, 2)}, QVec{Rat(1, 2)}) * 8 == Rat(-4));
  // norm inside the glued lattice agrees
  IVec ic;
  for (const Rat& c : *coords) ic.push_back(c.get_num());
  CHECK(g8.pair(ic, ic) == -4);

  CHECK_THROWS(build_lattice("~A1^6"));
  CHECK_THROWS(build_lattice("~A1^0"));
}

TEST_CASE("table 1 sigma=10 lattice") {
  IntegerLattice pic = build_lattice("U(2)+~A1^20");
  CHECK(pic.rank() == 22);
  CHECK(pic.sig() == std::pair<int, int>(1, 21));
  CHECK(abs(pic.det()) == Int(1) << 20);
}

TEST_CASE("direct sums") {
  IntegerLattice u = build_lattice("U");
  IntegerLattice uu = direct_sum(u, u);
  CHECK(uu.rank() == 4);
  CHECK(uu.det() == 1);

  IntegerLattice a1a1 = build_lattice("A1+A1");
  CHECK(a1a1.gram == IMat{{Int(-2), Int(0)}, {Int(0), Int(-2)}});

  IntegerLattice sigma1 = build_lattice("U+D4+E8^2");
  CHECK(sigma1.rank() == 22);
  CHECK(sigma1.sig() == std::pair<int, int>(1, 21));
  CHECK(abs(sigma1.det()) == 4);
}

TEST_CASE("determinant identities") {
  std::mt19937_64 rng(1234);
  std::vector<std::string> pool{"U", "A1", "A2", "D4", "E8", "A3", "D5"};
  for (int it = 0; it < 30; ++it) {
    const auto& la = pool[rng() % pool.size()];
    const auto& lb = pool[rng() % pool.size()];
    IntegerLattice a = build_lattice(la), b = build_lattice(lb);
    CHECK(direct_sum(a, b).det() == a.det() * b.det());
    Int m = static_cast<long>(2 + rng() % 3);
    IntegerLattice t = twist(a, m);
    Int expect = a.det();
    for (size_t i = 0; i < a.rank(); ++i) expect *= m;
    CHECK(t.det() == expect);
  }
}

TEST_CASE("adjoin_glue accepts delta_4 and rejects bad vectors") {
  IntegerLattice a14 = build_lattice("A1^4");
  IntegerLattice g4 = adjoin_glue(a14, ambient_ones(4, 1, 2));
  CHECK(g4.det() == 4);  // 2^4 / 4
  auto coords = g4.ambient_to_basis(ambient_ones(4, 1, 2));
  REQUIRE(coords.has_value());
  IVec ic;
  for (const Rat& c : *coords) ic.push_back(c.get_num());
  CHECK(g4.pair(ic, ic) == -2);

  // |A_{L'}| = |A_L| / 4 for an order-2 glue
  CHECK(abs(a14.det()) == 4 * abs(g4.det()));

  IntegerLattice u = build_lattice("U");
  CHECK_THROWS(adjoin_glue(u, QVec{Rat(1, 2), Rat(0)}));  // pairing 1/2 not integral
  CHECK_THROWS(adjoin_glue(a14, QVec{Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(0)}));  // odd norm
  CHECK_THROWS(adjoin_glue(u, QVec{Rat(1), Rat(0)}));  // already in L
}

TEST_CASE("glue of two U(2) blocks") {
  IntegerLattice u2 = build_lattice("U(2)");
  GlueData g;
  g.left_generators = {QVec{Rat(1, 2), Rat(0)}};
  g.right_generators = {QVec{Rat(1, 2), Rat(0)}};
  IntegerLattice glued = glue(u2, u2, g);
  CHECK(glued.rank() == 4);
  CHECK(abs(glued.det()) == 4);  // 16 / 2^2
}

TEST_CASE("glue rejects non-isotropic diagonal") {
  IntegerLattice a1 = build_lattice("A1");
  GlueData g;
  g.left_generators = {QVec{Rat(1, 2)}};
  g.right_generators = {QVec{Rat(1, 2)}};
  // q sums to -1/2 + -1/2 = -1, not 0 mod 2
  CHECK_THROWS(glue(a1, a1, g));
}

TEST_CASE("glue consistency with adjoin on A1^4 + A1^4") {
  IntegerLattice a14 = build_lattice("A1^4");
  GlueData g;
  g.left_generators = {ambient_ones(4, 1, 2)};
  g.right_generators = {ambient_ones(4, 1, 2)};
  IntegerLattice glued = glue(a14, a14, g);
  IntegerLattice direct = build_lattice("~A1^8");
  CHECK(glued.det() == direct.det());
  CHECK(glued.sig() == direct.sig());
}

TEST_CASE("orthogonal complement") {
  IntegerLattice u = build_lattice("U");
  CHECK_THROWS(orthogonal_complement(u, {IVec{Int(1), Int(0)}}));  // e^2 = 0

  IntegerLattice ua1 = build_lattice("U+A1");
  IntegerLattice comp = orthogonal_complement(ua1, {IVec{Int(0), Int(0), Int(1)}});
  CHECK(comp.rank() == 2);
  CHECK(comp.det() == -1);
  CHECK(comp.sig() == std::pair<int, int>(1, 1));

  IntegerLattice g8 = build_lattice("~A1^8");
  QVec amb(8, Rat(0));
  amb[0] = 1;
  amb[1] = -1;
  auto bc = g8.ambient_to_basis(amb);
  REQUIRE(bc.has_value());
  IVec span;
  for (const Rat& c : *bc) {
    REQUIRE(is_integer(c));
    span.push_back(c.get_num());
  }
  IntegerLattice perp = orthogonal_complement(g8, {span});
  CHECK(perp.rank() == 7);
  // every basis vector of the complement pairs to zero with the span
  for (size_t i = 0; i < perp.rank(); ++i) {
    QVec row = perp.basis_in_ambient->row(i);
    Rat p(0);
    for (size_t j = 0; j < 8; ++j) p += row[j] * Rat(-2) * amb[j];
    CHECK(p == 0);
  }
  // det(S) det(S^perp) = det(L) * index^2 with integral index
  Int ds = g8.pair(span, span);
  Rat idx2 = Rat(ds * perp.det()) / Rat(g8.det());
  REQUIRE(is_integer(idx2));
  Int i2 = idx2.get_num();
  Int root;
  mpz_sqrt(root.get_mpz_t(), i2.get_mpz_t());
  CHECK(root * root == i2);
}

TEST_CASE("primitive closure") {
  IntegerLattice g8 = build_lattice("~A1^8");
  std::vector<IVec> gens;
  for (int i = 0; i < 8; ++i) {
    QVec amb(8, Rat(0));
    amb[i] = 1;
    auto bc = g8.ambient_to_basis(amb);
    REQUIRE(bc.has_value());
    IVec v;
    for (const Rat& c : *bc) {
      REQUIRE(is_integer(c));
      v.push_back(c.get_num());
    }
    gens.push_back(v);
  }
  PrimitiveClosure pc = primitive_closure(g8, gens);
  CHECK(pc.index == 2);
  CHECK(pc.lattice.rank() == 8);
  CHECK(pc.lattice.det() == g8.det());

  IntegerLattice u = build_lattice("U");
  PrimitiveClosure pe = primitive_closure(u, {IVec{Int(2), Int(0)}});
  CHECK(pe.index == 2);
  CHECK(pe.lattice.rank() == 1);
  CHECK(pe.lattice.gram(0, 0) == 0);  // isotropic direction

  IntegerLattice ua1 = build_lattice("U+A1");
  PrimitiveClosure pp = primitive_closure(ua1, {IVec{Int(0), Int(0), Int(1)}});
  CHECK(pp.index == 1);
  CHECK(pp.lattice.gram(0, 0) == -2);
}

TEST_CASE("two-divisibility") {
  IntegerLattice g8 = build_lattice("~A1^8");
  Divisibility div = is_two_divisible_ambient(g8, ambient_ones(8, 1, 1));
  CHECK(div.divisible);

  IntegerLattice a18 = build_lattice("A1^8");
  Divisibility ref = is_two_divisible(a18, IVec(8, Int(1)));
  CHECK(!ref.divisible);
  CHECK(ref.residue == IVec(8, Int(1)));

  IntegerLattice u = build_lattice("U");
  Divisibility w = is_two_divisible(u, IVec{Int(2), Int(2)});
  CHECK(w.divisible);
  CHECK(w.witness == IVec{Int(1), Int(1)});
}

TEST_CASE("two-divisibility agrees with exhaustive residue search, rank <= 8") {
  std::mt19937_64 rng(555);
  std::vector<std::string> pool{"A1^4", "D4", "U+A1", "~A1^8", "E6", "U+U"};
  for (int it = 0; it < 60; ++it) {
    IntegerLattice lat = build_lattice(pool[rng() % pool.size()]);
    size_t n = lat.rank();
    IVec d(n);
    for (size_t i = 0; i < n; ++i) d[i] = static_cast<long>(rng() % 9) - 4;
    Divisibility got = is_two_divisible(lat, d);
    // exhaustive: D falls into exactly one of the 2^n residue classes of
    // L/2L; it is divisible by 2 iff that class is the zero class
    size_t matches = 0;
    size_t matching_mask = 0;
    for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
      bool all_match = true;
      for (size_t i = 0; i < n; ++i) {
        Int residue = mod_floor(d[i], Int(2));
        Int bit = static_cast<long>((mask >> i) & 1);
        if (residue != bit) {
          all_match = false;
          break;
        }
      }
      if (all_match) {
        ++matches;
        matching_mask = mask;
      }
    }
    REQUIRE(matches == 1);
    CHECK(got.divisible == (matching_mask == 0));
    if (got.divisible) {
      IVec twice(n);
      for (size_t i = 0; i < n; ++i) twice[i] = got.witness[i] * 2;
      CHECK(twice == d);
    }
  }
}

TEST_CASE("two-divisibility via SNF over a transformed generating set") {
  std::mt19937_64 rng(77);
  for (int it = 0; it < 40; ++it) {
    IntegerLattice lat = build_lattice("D4");
    size_t n = lat.rank();
    // random unimodular change of generators
    IMat t = IMat::identity(n);
    for (int step = 0; step < 8; ++step) {
      size_t i = rng() % n, j = rng() % n;
      if (i == j) continue;
      t.add_row(i, j, Int(static_cast<long>(rng() % 3) - 1));
    }
    if (abs(determinant(t)) != 1) continue;
    IVec d(n);
    for (size_t i = 0; i < n; ++i) d[i] = static_cast<long>(rng() % 7) - 3;
    // divisibility is basis independent: solve 2 T^t x = d over Z
    IMat two_t = t.transpose();
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) two_t(i, j) *= 2;
    bool via_snf = solve_diophantine(two_t, d).has_value();
    CHECK(via_snf == is_two_divisible(lat, d).divisible);
  }
}

TEST_CASE("half class q test") {
  // Example with D^2 = -24 and D/2 in the dual: 12 disjoint (-2)-classes
  IntegerLattice a112 = build_lattice("A1^12");
  HalfClassQ h = half_class_q_test(a112, IVec(12, Int(1)));
  CHECK(h.in_dual);
  REQUIRE(h.q_value.has_value());
  CHECK(*h.q_value == 0);  // -24/4 = -6 = 0 mod 2

  IntegerLattice a14 = build_lattice("A1^4");
  HalfClassQ h4 = half_class_q_test(a14, IVec(4, Int(1)));
  CHECK(h4.in_dual);
  CHECK(*h4.q_value == 0);  // -8/4 = -2 = 0 mod 2

  // e_1 in A1: e/2 pairs integrally (e.e = -2), q = -1/2 = 3/2 mod 2
  IntegerLattice a1 = build_lattice("A1");
  HalfClassQ h1 = half_class_q_test(a1, IVec{Int(1)});
  CHECK(h1.in_dual);
  CHECK(*h1.q_value == Rat(3, 2));

  // a genuinely non-dual half class: e in U pairs to 1 with f
  IntegerLattice u = build_lattice("U");
  HalfClassQ hu = half_class_q_test(u, IVec{Int(1), Int(0)});
  CHECK(!hu.in_dual);
}

TEST_CASE("even unimodular admissibility") {
  CHECK(!even_unimodular_admissible(1, 13).admissible);
  CHECK(!even_unimodular_admissible(1, 5).admissible);
  CHECK(even_unimodular_admissible(1, 9).admissible);
  CHECK(even_unimodular_admissible(0, 8).admissible);
  CHECK(even_unimodular_admissible(0, 8).definite);
  CHECK(even_unimodular_admissible(1, 17).admissible);  // U + E8^2
  CHECK(!even_unimodular_admissible(1, 21).admissible);
  CHECK_THROWS(even_unimodular_admissible(0, 0));
}

TEST_CASE("expression parser round trips and rejects junk") {
  for (const char* s : {"U", "U(2)+~A1^20", "U+D4+E8^2", "U(2)+D4^5", "E8(2)", "A3(3)^2"}) {
    LatticeExpr e = parse_lattice_expr(s);
    CHECK(expr_to_string(e) == s);
  }
  CHECK_THROWS(parse_lattice_expr(""));
  CHECK_THROWS(parse_lattice_expr("Q4"));
  CHECK_THROWS(parse_lattice_expr("U+"));
  CHECK_THROWS(parse_lattice_expr("D3"));
  CHECK_THROWS(parse_lattice_expr("E9"));
  CHECK_THROWS(parse_lattice_expr("U(0)"));
  CHECK_THROWS(parse_lattice_expr("~A1^7"));
  CHECK(expr_to_string(parse_lattice_expr(" U ( 2 ) + ~A1^8 ")) == "U(2)+~A1^8");
}
