#include "stingray/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "stingray/poly.hpp"

namespace stingray {

namespace detail {

struct FieldSpec {
  uint32_t p = 0, k = 0, q = 0;
  std::vector<uint32_t> modulus;  // constant first, length k+1, monic
  bool tables = false;
  std::vector<uint16_t> add_t, mul_t, neg_t, inv_t;
  // Cached coefficient vectors of all elements when tables are built.
  std::vector<uint32_t> coeff_cache;  // q * k entries
};

}  // namespace detail

using detail::FieldSpec;

static constexpr uint32_t kTableLimit = 512;
static constexpr uint32_t kMaxQ = 1u << 16;

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool prime_power_decompose(uint32_t q, uint32_t& p, uint32_t& k) {
  if (q < 2) return false;
  uint32_t base = q;
  for (uint32_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      base = d;
      break;
    }
  }
  uint32_t m = q, kk = 0;
  while (m % base == 0) {
    m /= base;
    ++kk;
  }
  if (m != 1) return false;
  p = base;
  k = kk;
  return true;
}

namespace {

std::vector<uint32_t> index_to_coeffs(uint32_t idx, uint32_t p, uint32_t k) {
  std::vector<uint32_t> c(k);
  for (uint32_t i = 0; i < k; ++i) {
    c[i] = idx % p;
    idx /= p;
  }
  return c;
}

uint32_t coeffs_to_index(const std::vector<uint32_t>& c, uint32_t p) {
  uint32_t idx = 0;
  for (size_t i = c.size(); i-- > 0;) idx = idx * p + c[i];
  return idx;
}

// Schoolbook multiply of coefficient vectors followed by reduction modulo the
// (monic) modulus, everything over GF(p).
uint32_t slow_mul(const FieldSpec& s, uint32_t a, uint32_t b) {
  if (s.k == 1) return static_cast<uint32_t>((uint64_t(a) * b) % s.p);
  auto ca = index_to_coeffs(a, s.p, s.k);
  auto cb = index_to_coeffs(b, s.p, s.k);
  std::vector<uint64_t> prod(2 * s.k - 1, 0);
  for (uint32_t i = 0; i < s.k; ++i) {
    if (!ca[i]) continue;
    for (uint32_t j = 0; j < s.k; ++j) prod[i + j] += uint64_t(ca[i]) * cb[j];
  }
  for (auto& x : prod) x %= s.p;
  for (size_t d = prod.size(); d-- > s.k;) {
    uint64_t c = prod[d] % s.p;
    if (!c) continue;
    prod[d] = 0;
    for (uint32_t j = 0; j < s.k; ++j) {
      uint64_t sub = c * s.modulus[j] % s.p;
      prod[d - s.k + j] = (prod[d - s.k + j] + s.p - sub) % s.p;
    }
  }
  std::vector<uint32_t> out(s.k);
  for (uint32_t i = 0; i < s.k; ++i) out[i] = static_cast<uint32_t>(prod[i] % s.p);
  return coeffs_to_index(out, s.p);
}

uint32_t slow_add(const FieldSpec& s, uint32_t a, uint32_t b) {
  if (s.k == 1) return (a + b) % s.p;
  uint32_t out = 0, mult = 1;
  for (uint32_t i = 0; i < s.k; ++i) {
    out += ((a % s.p) + (b % s.p)) % s.p * mult;
    a /= s.p;
    b /= s.p;
    mult *= s.p;
  }
  return out;
}

uint32_t slow_neg(const FieldSpec& s, uint32_t a) {
  if (s.k == 1) return a ? s.p - a : 0;
  uint32_t out = 0, mult = 1;
  for (uint32_t i = 0; i < s.k; ++i) {
    uint32_t d = a % s.p;
    out += (d ? s.p - d : 0) * mult;
    a /= s.p;
    mult *= s.p;
  }
  return out;
}

uint32_t slow_pow(const FieldSpec& s, uint32_t a, uint64_t e) {
  uint32_t r = 1;
  while (e) {
    if (e & 1) r = slow_mul(s, r, a);
    a = slow_mul(s, a, a);
    e >>= 1;
  }
  return r;
}

uint32_t slow_inv(const FieldSpec& s, uint32_t a) {
  if (a == 0) throw DivisionByZero("inverse of zero in GF(" + std::to_string(s.q) + ")");
  return slow_pow(s, a, s.q - 2);  // Fermat
}

std::shared_ptr<FieldSpec> build_spec(uint32_t q) {
  auto s = std::make_shared<FieldSpec>();
  if (!prime_power_decompose(q, s->p, s->k))
    throw NotAPrimePower("q = " + std::to_string(q) + " is not a prime power >= 2");
  if (q > kMaxQ)
    throw Error("q = " + std::to_string(q) + " exceeds the supported bound 2^16");
  s->q = q;
  if (s->k == 1) {
    s->modulus = {0, 1};  // degenerate modulus t
  } else {
    Field prime(s->p);
    Poly m = least_irreducible(prime, s->k);
    s->modulus = m.c;
  }
  if (q <= kTableLimit) {
    s->tables = true;
    s->coeff_cache.resize(size_t(q) * s->k);
    for (uint32_t a = 0; a < q; ++a) {
      auto c = index_to_coeffs(a, s->p, s->k);
      std::copy(c.begin(), c.end(), s->coeff_cache.begin() + size_t(a) * s->k);
    }
    s->add_t.resize(size_t(q) * q);
    s->mul_t.resize(size_t(q) * q);
    s->neg_t.resize(q);
    s->inv_t.assign(q, 0);
    for (uint32_t a = 0; a < q; ++a) {
      s->neg_t[a] = static_cast<uint16_t>(slow_neg(*s, a));
      for (uint32_t b = 0; b < q; ++b) {
        s->add_t[size_t(a) * q + b] = static_cast<uint16_t>(slow_add(*s, a, b));
        s->mul_t[size_t(a) * q + b] = static_cast<uint16_t>(slow_mul(*s, a, b));
      }
    }
    for (uint32_t a = 1; a < q; ++a) s->inv_t[a] = static_cast<uint16_t>(slow_inv(*s, a));
  }
  return s;
}

std::mutex& spec_mutex() {
  static std::mutex mu;
  return mu;
}

std::shared_ptr<const FieldSpec> spec_for(uint32_t q) {
  static std::map<uint32_t, std::shared_ptr<const FieldSpec>> cache;
  {
    std::lock_guard<std::mutex> lock(spec_mutex());
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
  }
  // Built outside the lock: constructing GF(p^k) needs GF(p) for the modulus
  // search, which re-enters this function.  A racing duplicate build is
  // harmless; first insert wins.
  std::shared_ptr<const FieldSpec> s = build_spec(q);
  std::lock_guard<std::mutex> lock(spec_mutex());
  auto [it, inserted] = cache.emplace(q, std::move(s));
  return it->second;
}

}  // namespace

Field::Field(uint32_t q) : s_(spec_for(q)) {}

Field make_field(uint32_t q) { return Field(q); }

uint32_t Field::p() const { return s_->p; }
uint32_t Field::k() const { return s_->k; }
uint32_t Field::q() const { return s_->q; }
const std::vector<uint32_t>& Field::modulus() const { return s_->modulus; }

FieldElement Field::element(uint32_t index) const {
  if (index >= s_->q) throw Error("element index out of range");
  return {index};
}

uint32_t Field::add_idx(uint32_t a, uint32_t b) const {
  return s_->tables ? s_->add_t[size_t(a) * s_->q + b] : slow_add(*s_, a, b);
}

uint32_t Field::neg_idx(uint32_t a) const {
  return s_->tables ? s_->neg_t[a] : slow_neg(*s_, a);
}

uint32_t Field::sub_idx(uint32_t a, uint32_t b) const { return add_idx(a, neg_idx(b)); }

uint32_t Field::mul_idx(uint32_t a, uint32_t b) const {
  return s_->tables ? s_->mul_t[size_t(a) * s_->q + b] : slow_mul(*s_, a, b);
}

uint32_t Field::inv_idx(uint32_t a) const {
  if (a == 0) throw DivisionByZero("inverse of zero in GF(" + std::to_string(s_->q) + ")");
  return s_->tables ? s_->inv_t[a] : slow_inv(*s_, a);
}

FieldElement Field::pow(FieldElement a, uint64_t e) const {
  uint32_t r = 1, base = a.index;
  while (e) {
    if (e & 1) r = mul_idx(r, base);
    base = mul_idx(base, base);
    e >>= 1;
  }
  return {r};
}

std::vector<uint32_t> Field::coefficients(FieldElement a) const {
  return index_to_coeffs(a.index, s_->p, s_->k);
}

FieldElement Field::from_coefficients(const std::vector<uint32_t>& coeffs) const {
  if (coeffs.size() != s_->k) throw Error("coefficient vector has wrong length");
  for (uint32_t c : coeffs)
    if (c >= s_->p) throw Error("coefficient out of range");
  return {coeffs_to_index(coeffs, s_->p)};
}

FieldElement Field::primitive_element() const {
  uint32_t n = s_->q - 1;
  if (n == 1) return one();
  std::vector<uint32_t> primes;
  uint32_t m = n;
  for (uint32_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      primes.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) primes.push_back(m);
  for (uint32_t g = 2; g < s_->q; ++g) {
    bool ok = true;
    for (uint32_t ell : primes) {
      if (pow({g}, n / ell).index == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return {g};
  }
  throw Error("no primitive element found (impossible for a field)");
}

const uint16_t* Field::add_table() const { return s_->tables ? s_->add_t.data() : nullptr; }
const uint16_t* Field::mul_table() const { return s_->tables ? s_->mul_t.data() : nullptr; }
const uint16_t* Field::inv_table() const { return s_->tables ? s_->inv_t.data() : nullptr; }
const uint16_t* Field::neg_table() const { return s_->tables ? s_->neg_t.data() : nullptr; }

bool Field::operator==(const Field& other) const {
  return s_ == other.s_ || (s_->q == other.s_->q && s_->modulus == other.s_->modulus);
}

std::string Field::to_string() const {
  std::ostringstream os;
  os << "GF(" << s_->q << ")";
  if (s_->k > 1) {
    Poly m{std::vector<uint32_t>(s_->modulus.begin(), s_->modulus.end())};
    os << "=GF(" << s_->p << ")[t]/(" << poly_to_string(m) << ")";
  }
  return os.str();
}

}  // namespace stingray
