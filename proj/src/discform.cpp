#include "k3div/discform.hpp"

#include <numeric>
#include <stdexcept>

#include "k3div/cyclotomic.hpp"

namespace k3div {

namespace {

// Scaled integer view of one orthogonal component of the form: q(g_i) = a_i/M
// mod 2 and 2 b(g_i, g_j) = t_ij/M mod 2, so every value of q on the
// component lies in (1/M)Z mod 2 and fits a histogram of size 2M.
struct ComponentForm {
  std::vector<long> orders;
  long long two_m = 2;
  std::vector<long long> a;
  std::vector<std::vector<long long>> t;
  Int order() const {
    Int o(1);
    for (long d : orders) o *= d;
    return o;
  }
};

ComponentForm scale_component(const DiscriminantForm& d, const std::vector<size_t>& idx) {
  ComponentForm c;
  Int m(1);
  for (size_t i : idx) {
    m = lcm(m, d.q_values[i].get_den());
    for (size_t j : idx) {
      Rat tb = mod_2z(d.b_matrix(i, j) * 2);
      m = lcm(m, tb.get_den());
    }
  }
  if (!m.fits_slong_p() || m.get_si() > (1L << 26))
    throw std::domain_error("discriminant form: value denominators too large to enumerate");
  long m_val = m.get_si();
  c.two_m = 2 * m_val;
  for (size_t i : idx) {
    const Int& di = d.invariant_factors[i];
    c.orders.push_back(di.get_si());
    Rat aq = d.q_values[i] * Rat(m_val);
    c.a.push_back(mod_floor(aq.get_num(), Int(static_cast<long>(c.two_m))).get_si());
  }
  c.t.assign(idx.size(), std::vector<long long>(idx.size(), 0));
  for (size_t i = 0; i < idx.size(); ++i)
    for (size_t j = 0; j < idx.size(); ++j) {
      if (i == j) continue;
      Rat tb = mod_2z(d.b_matrix(idx[i], idx[j]) * 2) * Rat(m_val);
      c.t[i][j] = mod_floor(tb.get_num(), Int(static_cast<long>(c.two_m))).get_si();
    }
  return c;
}

// Histogram of q over the component group: q(sum c_i g_i) scaled by M is
//   sum_i c_i^2 a_i + sum_{i<j} c_i c_j t_ij   (mod 2M).
void enumerate_component(const ComponentForm& c, size_t depth, long long prefix,
                         std::vector<long>& cur, std::vector<long long>& hist) {
  size_t n = c.orders.size();
  if (depth == n) {
    ++hist[prefix];
    return;
  }
  long long pairsum = 0;
  for (size_t i = 0; i < depth; ++i) pairsum = (pairsum + cur[i] * c.t[i][depth]) % c.two_m;
  for (long ck = 0; ck < c.orders[depth]; ++ck) {
    long long sq = (static_cast<long long>(ck) * ck) % c.two_m;
    long long val = (prefix + sq * c.a[depth] + ck * pairsum) % c.two_m;
    cur[depth] = ck;
    enumerate_component(c, depth + 1, val, cur, hist);
  }
  cur[depth] = 0;
}

std::vector<long long> component_histogram(const ComponentForm& c) {
  std::vector<long long> hist(c.two_m, 0);
  std::vector<long> cur(c.orders.size(), 0);
  enumerate_component(c, 0, 0, cur, hist);
  return hist;
}

}  // namespace

DiscriminantForm discriminant_form(const IntegerLattice& lat) {
  lat.validate();
  DiscriminantForm d;
  SmithForm f = smith_normal_form(lat.gram);
  size_t n = lat.rank();

  std::vector<size_t> nontrivial;
  for (size_t i = 0; i < n; ++i) {
    d.group_order *= f.d(i, i);
    if (f.d(i, i) > 1) nontrivial.push_back(i);
  }
  d.length = static_cast<int>(nontrivial.size());
  d.invariant_factors.reserve(nontrivial.size());
  for (size_t i : nontrivial) d.invariant_factors.push_back(f.d(i, i));

  size_t g = nontrivial.size();
  d.generators = QMat(g, n);
  for (size_t r = 0; r < g; ++r) {
    size_t i = nontrivial[r];
    for (size_t j = 0; j < n; ++j)
      d.generators(r, j) = Rat(f.right(j, i)) / Rat(f.d(i, i));
  }
  d.q_values.resize(g);
  d.b_matrix = QMat(g, g);
  for (size_t r = 0; r < g; ++r) {
    d.q_values[r] = mod_2z(pair_q(lat.gram, d.generators.row(r), d.generators.row(r)));
    for (size_t s = 0; s < g; ++s)
      d.b_matrix(r, s) = mod_1z(pair_q(lat.gram, d.generators.row(r), d.generators.row(s)));
  }
  d.two_elementary = true;
  for (const Int& di : d.invariant_factors)
    if (di > 2) d.two_elementary = false;

  // Orthogonal components of the generator graph (edges where b != 0 mod 1).
  std::vector<int> comp(g, -1);
  std::vector<std::vector<size_t>> components;
  for (size_t start = 0; start < g; ++start) {
    if (comp[start] >= 0) continue;
    int id = static_cast<int>(components.size());
    components.emplace_back();
    std::vector<size_t> stack{start};
    comp[start] = id;
    while (!stack.empty()) {
      size_t v = stack.back();
      stack.pop_back();
      components[id].push_back(v);
      for (size_t w = 0; w < g; ++w)
        if (comp[w] < 0 && d.b_matrix(v, w) != 0) {
          comp[w] = id;
          stack.push_back(w);
        }
    }
  }

  // type I: on generators for 2-elementary groups, otherwise exhaustively
  // blockwise while the blocks stay enumerable.
  if (d.two_elementary) {
    bool ti = true;
    for (const Rat& q : d.q_values)
      if (!is_integer(q)) ti = false;
    d.type_I = ti;
  }

  bool need_enumeration = !d.two_elementary;
  bool gauss_ok = true;
  int sigma = 0;
  bool type_exhaustive_ok = true;
  bool type_all_integral = true;
  for (const auto& idx : components) {
    Int comp_order(1);
    for (size_t i : idx) comp_order *= d.invariant_factors[i];
    if (mpz_sizeinbase(comp_order.get_mpz_t(), 2) - 1 > kGaussSumMaxBits) {
      gauss_ok = false;
      if (need_enumeration &&
          mpz_sizeinbase(comp_order.get_mpz_t(), 2) - 1 > kEnumerationMaxBits)
        type_exhaustive_ok = false;
      continue;
    }
    ComponentForm c = scale_component(d, idx);
    std::vector<long long> hist = component_histogram(c);
    if (gauss_ok) sigma = (sigma + gauss_signature_mod8(hist, c.order())) % 8;
    if (need_enumeration) {
      long long m_val = c.two_m / 2;
      for (long long k = 0; k < c.two_m; ++k)
        if (hist[k] != 0 && k % m_val != 0) type_all_integral = false;
    }
  }
  if (gauss_ok) d.gauss_signature_mod8 = sigma;
  if (need_enumeration && type_exhaustive_ok) d.type_I = type_all_integral;

  return d;
}

bool is_type_I(const DiscriminantForm& d) {
  if (d.type_I) return *d.type_I;
  throw std::domain_error(
      "is_type_I: group too large for exhaustive check and not 2-elementary");
}

TwoElementaryInvariants two_elementary_invariants(const DiscriminantForm& d) {
  if (!d.two_elementary)
    throw std::invalid_argument("two_elementary_invariants: form is not 2-elementary");
  if (!d.type_I || !d.gauss_signature_mod8)
    throw std::invalid_argument("two_elementary_invariants: missing invariants");
  return TwoElementaryInvariants{d.length, *d.type_I, *d.gauss_signature_mod8};
}

}  // namespace k3div
