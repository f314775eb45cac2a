#include "k3div/cyclotomic.hpp"

#include <map>
#include <numeric>
#include <stdexcept>

namespace k3div {

namespace {

// Exact division of integer polynomials, ascending coefficients.
std::vector<Int> poly_divide_exact(const std::vector<Int>& num, const std::vector<Int>& den) {
  std::vector<Int> r = num;
  if (den.empty() || den.back() == 0) throw std::invalid_argument("poly division by zero");
  if (r.size() < den.size()) throw std::invalid_argument("poly division: degree mismatch");
  std::vector<Int> q(r.size() - den.size() + 1, Int(0));
  for (size_t i = q.size(); i-- > 0;) {
    Int c = r[i + den.size() - 1];
    if (mod_floor(c, den.back()) != 0) throw std::logic_error("poly division not exact");
    c /= den.back();
    q[i] = c;
    if (c == 0) continue;
    for (size_t j = 0; j < den.size(); ++j) r[i + j] -= c * den[j];
  }
  for (const Int& c : r)
    if (c != 0) throw std::logic_error("poly division not exact (remainder)");
  return q;
}

std::map<long, std::vector<Int>>& phi_cache() {
  static std::map<long, std::vector<Int>> cache;
  return cache;
}

}  // namespace

std::vector<Int> cyclotomic_polynomial(long n) {
  if (n <= 0) throw std::invalid_argument("cyclotomic_polynomial: n must be positive");
  auto& cache = phi_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  // x^n - 1 divided by the product of Phi_d over proper divisors d of n.
  std::vector<Int> num(n + 1, Int(0));
  num[0] = -1;
  num[n] = 1;
  std::vector<Int> den{Int(1)};
  for (long d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    std::vector<Int> phi_d = cyclotomic_polynomial(d);
    std::vector<Int> prod(den.size() + phi_d.size() - 1, Int(0));
    for (size_t i = 0; i < den.size(); ++i)
      for (size_t j = 0; j < phi_d.size(); ++j) prod[i + j] += den[i] * phi_d[j];
    den = std::move(prod);
  }
  std::vector<Int> phi = poly_divide_exact(num, den);
  cache[n] = phi;
  return phi;
}

CyclotomicRing::CyclotomicRing(long n) : n_(n), phi_(cyclotomic_polynomial(n)) {}

CyclotomicRing::Elem CyclotomicRing::scalar(const Int& c) const {
  Elem e = zero();
  if (!e.empty()) e[0] = c;
  return e;
}

CyclotomicRing::Elem CyclotomicRing::reduce(std::vector<Int> poly) const {
  size_t deg = degree();
  for (size_t i = poly.size(); i-- > deg;) {
    Int c = poly[i];
    if (c == 0) continue;
    poly[i] = 0;
    // x^i = x^(i-deg) * (x^deg - Phi) since Phi is monic.
    for (size_t j = 0; j < deg; ++j) poly[i - deg + j] -= c * phi_[j];
  }
  poly.resize(deg);
  return poly;
}

CyclotomicRing::Elem CyclotomicRing::root_power(long k) const {
  long e = ((k % n_) + n_) % n_;
  std::vector<Int> p(static_cast<size_t>(e) + 1, Int(0));
  p[e] = 1;
  return reduce(std::move(p));
}

CyclotomicRing::Elem CyclotomicRing::add(const Elem& a, const Elem& b) const {
  Elem r = a;
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

CyclotomicRing::Elem CyclotomicRing::sub(const Elem& a, const Elem& b) const {
  Elem r = a;
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return r;
}

CyclotomicRing::Elem CyclotomicRing::neg(const Elem& a) const {
  Elem r = a;
  for (Int& c : r) c = -c;
  return r;
}

CyclotomicRing::Elem CyclotomicRing::scale(const Elem& a, const Int& c) const {
  Elem r = a;
  for (Int& x : r) x *= c;
  return r;
}

CyclotomicRing::Elem CyclotomicRing::mul(const Elem& a, const Elem& b) const {
  std::vector<Int> prod(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
  }
  return reduce(std::move(prod));
}

bool CyclotomicRing::is_zero(const Elem& a) const {
  for (const Int& c : a)
    if (c != 0) return false;
  return true;
}

namespace {

long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

// Squarefree part s and cofactor f with n = f^2 * s.
void squarefree_split(const Int& n, Int& f, Int& s) {
  f = 1;
  s = 1;
  Int m = n;
  for (Int p = 2; p * p <= m; ++p) {
    int count = 0;
    while (mod_floor(m, p) == 0) {
      m /= p;
      ++count;
    }
    for (int i = 0; i < count / 2; ++i) f *= p;
    if (count % 2) s *= p;
  }
  s *= m;
}

}  // namespace

int gauss_signature_mod8(const std::vector<long long>& histogram, const Int& group_order) {
  if (histogram.empty() || histogram.size() % 2 != 0)
    throw std::invalid_argument("gauss_signature_mod8: histogram size must be 2M");
  long two_m = static_cast<long>(histogram.size());

  Int f, s;
  squarefree_split(group_order, f, s);

  long n = lcm_long(two_m, 8);
  // Odd primes dividing the squarefree part enter through quadratic Gauss sums.
  {
    Int rest = s;
    while (mod_floor(rest, Int(2)) == 0) rest /= 2;
    for (Int p = 3; p * p <= rest; ++p) {
      if (mod_floor(rest, p) == 0) {
        n = lcm_long(n, p.get_si());
        while (mod_floor(rest, p) == 0) rest /= p;
      }
    }
    if (rest > 1) n = lcm_long(n, rest.get_si());
  }

  CyclotomicRing ring(n);
  long t = n / two_m;

  CyclotomicRing::Elem sum = ring.zero();
  for (long k = 0; k < two_m; ++k) {
    if (histogram[k] == 0) continue;
    sum = ring.add(sum, ring.scale(ring.root_power(k * t), Int(static_cast<long>(histogram[k]))));
  }

  // S^2 = |A| * i^sigma pins sigma mod 4.
  CyclotomicRing::Elem s2 = ring.mul(sum, sum);
  int sigma0 = -1;
  for (int c = 0; c < 4; ++c) {
    CyclotomicRing::Elem target = ring.scale(ring.root_power(c * (n / 4)), group_order);
    if (ring.equal(s2, target)) {
      sigma0 = c;
      break;
    }
  }
  if (sigma0 < 0) throw std::logic_error("gauss_signature_mod8: no candidate matches S^2");

  // R = S * zeta_8^{-sigma0} equals +/- sqrt(|A|); settle the sign against an
  // explicit sqrt(|A|) = f * sqrt(s) built from quadratic Gauss sums.
  CyclotomicRing::Elem r = ring.mul(sum, ring.root_power(-(sigma0 * (n / 8))));
  CyclotomicRing::Elem w = ring.scalar(f);
  Int srest = s;
  if (mod_floor(srest, Int(2)) == 0) {
    srest /= 2;
    // sqrt(2) = zeta_8 + zeta_8^-1
    CyclotomicRing::Elem sqrt2 = ring.add(ring.root_power(n / 8), ring.root_power(-(n / 8)));
    w = ring.mul(w, sqrt2);
  }
  for (Int p = 3; srest > 1; p += 2) {
    if (mod_floor(srest, p) != 0) continue;
    srest /= p;
    long pl = p.get_si();
    CyclotomicRing::Elem g = ring.zero();
    for (long j = 0; j < pl; ++j)
      g = ring.add(g, ring.root_power(((j * j) % pl) * (n / pl)));
    if (mod_floor(p, Int(4)) == 3) g = ring.mul(g, ring.root_power(-(n / 4)));  // -i * G(p)
    w = ring.mul(w, g);
  }

  if (ring.equal(r, w)) return sigma0;
  if (ring.equal(r, ring.neg(w))) return (sigma0 + 4) % 8;
  throw std::logic_error("gauss_signature_mod8: sign resolution failed");
}

}  // namespace k3div
