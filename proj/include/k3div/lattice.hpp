#ifndef K3DIV_LATTICE_HPP_
#define K3DIV_LATTICE_HPP_

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "k3div/exact_linalg.hpp"
#include "k3div/matrix.hpp"
#include "k3div/numeric.hpp"

namespace k3div {

// Even nondegenerate lattice on a fixed basis, described by its Gram matrix.
// When the lattice was carved out of (or glued inside) an ambient lattice,
// basis_in_ambient keeps the basis vectors as rational rows in the ambient
// coordinates; vectors given in ambient coordinates can then be re-expressed.
struct IntegerLattice {
  IMat gram;
  std::string label;
  std::optional<QMat> basis_in_ambient;

  size_t rank() const { return gram.rows(); }
  Int det() const { return determinant(gram); }
  std::pair<int, int> sig() const { return signature(gram); }

  // Pairing of two vectors in basis coordinates.
  Int pair(const IVec& x, const IVec& y) const;
  Rat pair(const QVec& x, const QVec& y) const;

  // Coordinates of an ambient-coordinate vector in this basis; nullopt if the
  // vector does not lie in the rational span.
  std::optional<QVec> ambient_to_basis(const QVec& ambient) const;

  void validate() const;  // symmetric, even diagonal, nonzero determinant
};

struct DivisorClass {
  IVec coords;
  Int self_int;

  static DivisorClass in(const IntegerLattice& lat, IVec coords);
};

// Expression atoms: U, A<n>, D<n>, E6/E7/E8, glued family ~A1^<4n>; any atom
// may carry a twist (<m>) and a repetition power ^<p>.
struct LatticeAtom {
  enum class Kind { U, A, D, E, GluedA1 };
  Kind kind;
  int param = 0;  // index n of A_n/D_n/E_n; component count 4n of ~A1^{4n}
  Int twist = 1;
  int power = 1;
};

struct LatticeExpr {
  std::vector<LatticeAtom> summands;
};

LatticeExpr parse_lattice_expr(const std::string& text);
std::string expr_to_string(const LatticeExpr& expr);

// Elaborates the expression: Cartan blocks in the negative definite
// convention, U = [[0,1],[1,0]], L(m) multiplies the form by m, and ~A1^{4n}
// is the index-two overlattice of A1^{4n} obtained by adjoining
// delta = (e_1 + ... + e_{4n})/2. For expressions containing glued blocks the
// result carries basis_in_ambient over the standard A1-generators.
IntegerLattice build_lattice(const LatticeExpr& expr);
IntegerLattice build_lattice(const std::string& text);

// Offsets of each expanded atom inside the ambient coordinate system of the
// built lattice (ambient = concatenation of the atoms' standard generators).
struct BlockLayout {
  LatticeAtom atom;   // power folded out: one entry per copy
  size_t offset;      // first ambient coordinate of the block
  size_t rank;        // number of ambient coordinates
};
std::vector<BlockLayout> block_layout(const LatticeExpr& expr);

IMat cartan_gram(LatticeAtom::Kind kind, int n);  // negative definite A/D/E
IntegerLattice hyperbolic_plane();

IntegerLattice direct_sum(const IntegerLattice& a, const IntegerLattice& b);
IntegerLattice twist(const IntegerLattice& lat, const Int& m);

// Overlattice generated by L and a glue vector v in L* with v*v even and
// 2v in L; the result is integral, even, of index 2 over L, and carries the
// new basis in L's coordinates (composed with L's own ambient basis if any).
IntegerLattice adjoin_glue(const IntegerLattice& lat, const QVec& v,
                           const std::string& label = "");

// Order-2 glue between two lattices: generators of the common subgroup H are
// given as dual vectors in each side's basis coordinates, matched index by
// index under the anti-isometry.
struct GlueData {
  std::vector<QVec> left_generators;
  std::vector<QVec> right_generators;
};

IntegerLattice glue(const IntegerLattice& left, const IntegerLattice& right, const GlueData& g);

// Sublattice of vectors pairing to zero with every element of span (given in
// basis coordinates); span must be nondegenerate.
IntegerLattice orthogonal_complement(const IntegerLattice& lat, const std::vector<IVec>& span);

struct PrimitiveClosure {
  IntegerLattice lattice;
  Int index;  // index of span(S) inside its saturation
};
PrimitiveClosure primitive_closure(const IntegerLattice& lat, const std::vector<IVec>& span);

// Witness x with 2x = D, or the nonzero residue of D in L/2L.
struct Divisibility {
  bool divisible;
  IVec witness;  // basis coordinates, set if divisible
  IVec residue;  // entries in {0,1}, set if not divisible
};

Divisibility is_two_divisible(const IntegerLattice& lat, const IVec& coords);

// Same test for a class given in ambient coordinates of a lattice that was
// built inside an ambient space (solves the coordinate change exactly).
Divisibility is_two_divisible_ambient(const IntegerLattice& lat, const QVec& ambient);

struct HalfClassQ {
  bool in_dual;
  std::optional<Rat> q_value;  // q(D/2) = D^2/4 mod 2, when D/2 lies in L*
};
HalfClassQ half_class_q_test(const IntegerLattice& lat, const IVec& coords);

// Existence of an even unimodular lattice of signature (p, q): p - q = 0
// mod 8. Indefinite lattices are then unique; definite ones exist as sums of
// E8 blocks. The definite flag is reported so callers can tell the cases
// apart.
struct EvenUnimodularVerdict {
  bool admissible;
  bool definite;
  int signature_mod8;  // (p - q) mod 8, in 0..7
};
EvenUnimodularVerdict even_unimodular_admissible(int p, int q);

}  // namespace k3div

#endif
