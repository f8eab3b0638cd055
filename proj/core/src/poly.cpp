#include "stingray/poly.hpp"

#include <sstream>

namespace stingray {

Poly poly_zero() { return {}; }
Poly poly_one() { return {{1}}; }
Poly poly_t() { return {{0, 1}}; }

Poly poly_t_minus(uint32_t a_index, const Field& f) {
  Poly r{{f.neg_idx(a_index), 1}};
  r.trim();
  return r;
}

Poly poly_from_indices(std::vector<uint32_t> coeffs) {
  Poly r{std::move(coeffs)};
  r.trim();
  return r;
}

Poly poly_add(const Poly& a, const Poly& b, const Field& f) {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = f.add_idx(a.coeff(i), b.coeff(i));
  r.trim();
  return r;
}

Poly poly_sub(const Poly& a, const Poly& b, const Field& f) {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = f.sub_idx(a.coeff(i), b.coeff(i));
  r.trim();
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b, const Field& f) {
  if (a.is_zero() || b.is_zero()) return {};
  Poly r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (!a.c[i]) continue;
    for (size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = f.add_idx(r.c[i + j], f.mul_idx(a.c[i], b.c[j]));
  }
  r.trim();
  return r;
}

Poly poly_scale(const Poly& a, uint32_t s_index, const Field& f) {
  if (!s_index) return {};
  Poly r = a;
  for (auto& ci : r.c) ci = f.mul_idx(ci, s_index);
  r.trim();
  return r;
}

Poly poly_mod(const Poly& a, const Poly& m, const Field& f) {
  if (m.is_zero()) throw DivisionByZero("polynomial modulus is zero");
  Poly r = a;
  r.trim();
  const int dm = m.degree();
  const uint32_t lead_inv = f.inv_idx(m.c.back());
  while (r.degree() >= dm) {
    const int dr = r.degree();
    const uint32_t factor = f.mul_idx(r.c.back(), lead_inv);
    for (int j = 0; j <= dm; ++j) {
      const size_t pos = size_t(dr - dm + j);
      r.c[pos] = f.sub_idx(r.c[pos], f.mul_idx(factor, m.c[j]));
    }
    r.trim();
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, const Field& f) {
  a.trim();
  b.trim();
  while (!b.is_zero()) {
    Poly r = poly_mod(a, b, f);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero() && a.c.back() != 1) a = poly_scale(a, f.inv_idx(a.c.back()), f);
  return a;
}

Poly poly_powmod(const Poly& base, uint64_t e, const Poly& m, const Field& f) {
  Poly result = poly_mod(poly_one(), m, f);
  Poly b = poly_mod(base, m, f);
  while (e) {
    if (e & 1) result = poly_mod(poly_mul(result, b, f), m, f);
    b = poly_mod(poly_mul(b, b, f), m, f);
    e >>= 1;
  }
  return result;
}

uint32_t poly_eval(const Poly& a, uint32_t x_index, const Field& f) {
  uint32_t acc = 0;
  for (size_t i = a.c.size(); i-- > 0;) acc = f.add_idx(f.mul_idx(acc, x_index), a.c[i]);
  return acc;
}

bool poly_is_irreducible(const Poly& fpoly, const Field& f) {
  Poly fp = fpoly;
  fp.trim();
  const int n = fp.degree();
  if (n < 1) throw Error("irreducibility test needs degree >= 1");
  if (!fp.is_monic()) throw NonMonic("irreducibility test requires a monic polynomial");
  if (n == 1) return true;

  std::vector<uint32_t> primes;
  uint32_t m = static_cast<uint32_t>(n);
  for (uint32_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      primes.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) primes.push_back(m);

  const Poly t_mod = poly_mod(poly_t(), fp, f);
  auto frobenius_iterate = [&](uint32_t times) {
    Poly h = t_mod;
    for (uint32_t i = 0; i < times; ++i) h = poly_powmod(h, f.q(), fp, f);
    return h;
  };

  for (uint32_t ell : primes) {
    Poly h = frobenius_iterate(static_cast<uint32_t>(n) / ell);
    Poly g = poly_gcd(fp, poly_sub(h, t_mod, f), f);
    if (!(g == poly_one())) return false;
  }
  return frobenius_iterate(static_cast<uint32_t>(n)) == t_mod;
}

Poly least_irreducible(const Field& f, uint32_t n, bool skip_t_and_t_minus_1) {
  if (n < 1) throw Error("degree must be >= 1");
  const uint64_t q = f.q();
  uint64_t total = 1;
  for (uint32_t i = 0; i < n; ++i) total *= q;
  const uint32_t minus_one = f.neg_idx(1);
  for (uint64_t m = 0; m < total; ++m) {
    // Decode m with c_0 as the most significant digit: lexicographic order on
    // (c_0, ..., c_{n-1}).
    std::vector<uint32_t> c(n + 1, 0);
    c[n] = 1;
    uint64_t rest = m;
    uint64_t place = total / q;
    for (uint32_t i = 0; i < n; ++i) {
      c[i] = static_cast<uint32_t>(rest / place);
      rest %= place;
      if (i + 1 < n) place /= q;
    }
    Poly cand{std::move(c)};
    if (skip_t_and_t_minus_1 && n == 1 && (cand.c[0] == 0 || cand.c[0] == minus_one)) continue;
    if (n > 1 && cand.c[0] == 0) continue;  // divisible by t
    if (poly_is_irreducible(cand, f)) return cand;
  }
  throw Error("no irreducible polynomial found (impossible over a finite field)");
}

std::string poly_to_string(const Poly& a, const std::string& var) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = a.c.size(); i-- > 0;) {
    uint32_t ci = a.c[i];
    if (!ci) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0) {
      os << ci;
    } else {
      if (ci != 1) os << ci << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

}  // namespace stingray
