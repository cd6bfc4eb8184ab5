#include "hall/field.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace hall {
namespace {

std::vector<unsigned> factor_primes(std::uint64_t n) {
  std::vector<unsigned> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(static_cast<unsigned>(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(static_cast<unsigned>(n));
  return out;
}

// Remainder of a by b over Z_p; b monic-normalizable (nonzero leading coeff).
std::vector<unsigned> poly_rem(std::vector<unsigned> a, const std::vector<unsigned>& b, unsigned p) {
  const std::size_t db = b.size() - 1;
  unsigned lead_inv = 1;
  for (unsigned t = 1; t < p; ++t) {
    if ((b.back() * t) % p == 1) lead_inv = t;
  }
  while (a.size() > db && !a.empty()) {
    const unsigned c = (a.back() * lead_inv) % p;
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = (a[shift + i] + p * p - (c * b[i]) % p) % p;
    }
    a.pop_back();
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

}  // namespace

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<std::pair<unsigned, unsigned>> prime_power(unsigned q) {
  if (q < 2) return std::nullopt;
  const auto primes = factor_primes(q);
  if (primes.size() != 1) return std::nullopt;
  unsigned k = 0;
  for (unsigned m = q; m > 1; m /= primes[0]) ++k;
  return std::make_pair(primes[0], k);
}

bool is_irreducible(unsigned p, std::span<const unsigned> coeffs) {
  std::vector<unsigned> f(coeffs.begin(), coeffs.end());
  while (!f.empty() && f.back() % p == 0) f.pop_back();
  for (auto& c : f) c %= p;
  if (f.size() < 2) return false;
  const std::size_t deg = f.size() - 1;
  if (deg == 1) return true;
  // Try every monic g of degree d, 1 <= d <= deg/2.
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<unsigned> g(d + 1);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<unsigned>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

FieldSpec FieldSpec::standard(unsigned p, unsigned k) {
  if (!is_prime(p)) throw FieldError("p = " + std::to_string(p) + " is not prime");
  if (k == 0) throw FieldError("k must be positive");
  auto mod = default_modulus(p, 2 * k);
  if (!mod) {
    throw FieldError("no built-in modulus for GF(" + std::to_string(p) + "^" + std::to_string(2 * k) + ")");
  }
  return FieldSpec{p, k, *mod};
}

FieldSpec FieldSpec::for_q(unsigned q) {
  auto pk = prime_power(q);
  if (!pk) throw FieldError("q = " + std::to_string(q) + " is not a prime power");
  return standard(pk->first, pk->second);
}

void Fe::check_same(Fe o) const {
  if (field_ == nullptr || field_ != o.field_) throw FieldError("field element spec mismatch");
}

Fe Fe::operator-() const { return Fe(*field_, field_->neg(code_)); }
Fe Fe::inv() const { return Fe(*field_, field_->inv(code_)); }
Fe Fe::conj() const { return Fe(*field_, field_->conj(code_)); }
Fe Fe::pow(std::uint64_t e) const { return Fe(*field_, field_->pow(code_, e)); }

Fe& Fe::operator+=(Fe o) {
  check_same(o);
  code_ = field_->add(code_, o.code_);
  return *this;
}
Fe& Fe::operator-=(Fe o) {
  check_same(o);
  code_ = field_->sub(code_, o.code_);
  return *this;
}
Fe& Fe::operator*=(Fe o) {
  check_same(o);
  code_ = field_->mul(code_, o.code_);
  return *this;
}
Fe& Fe::operator/=(Fe o) {
  check_same(o);
  code_ = field_->div(code_, o.code_);
  return *this;
}

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
  const unsigned p = spec_.p;
  if (!is_prime(p)) throw FieldError("p = " + std::to_string(p) + " is not prime");
  if (spec_.k == 0) throw FieldError("k must be positive");
  const unsigned deg = 2 * spec_.k;
  if (spec_.modulus.size() != deg + 1) {
    throw FieldError("modulus must have " + std::to_string(deg + 1) + " coefficients");
  }
  for (auto& c : spec_.modulus) {
    if (c >= p) throw FieldError("modulus coefficient out of range");
  }
  if (spec_.modulus.back() == 0) throw FieldError("modulus leading coefficient is zero");
  if (!is_irreducible(p, spec_.modulus)) throw FieldError("modulus is not irreducible over Z_p");
  // Normalize to monic.
  {
    unsigned lead_inv = 1;
    for (unsigned t = 1; t < p; ++t) {
      if ((spec_.modulus.back() * t) % p == 1) lead_inv = t;
    }
    for (auto& c : spec_.modulus) c = (c * lead_inv) % p;
  }

  std::uint64_t n = 1;
  for (unsigned i = 0; i < deg; ++i) {
    pow_p_.push_back(static_cast<unsigned>(n));
    n *= p;
    if (n > (1u << 16)) throw FieldError("field order exceeds 2^16");
  }
  n_ = static_cast<unsigned>(n);
  q_ = 1;
  for (unsigned i = 0; i < spec_.k; ++i) q_ *= p;

  neg_.resize(n_);
  for (unsigned a = 0; a < n_; ++a) {
    unsigned r = 0;
    for (unsigned i = 0; i < deg; ++i) {
      const unsigned c = (a / pow_p_[i]) % p;
      r += ((p - c) % p) * pow_p_[i];
    }
    neg_[a] = static_cast<Code>(r);
  }
  if (p != 2 && n_ <= 1024) {
    add_table_.resize(static_cast<std::size_t>(n_) * n_);
    for (unsigned a = 0; a < n_; ++a) {
      for (unsigned b = 0; b < n_; ++b) add_table_[static_cast<std::size_t>(a) * n_ + b] = add_digits(a, b);
    }
  }

  // Primitive element: least code whose order is n-1, found with reduction
  // arithmetic only.
  const auto primes = factor_primes(n_ - 1);
  auto slow_pow = [&](Code a, std::uint64_t e) {
    Code r = 1;
    Code b = a;
    while (e) {
      if (e & 1) r = mul_by_reduction(r, b);
      b = mul_by_reduction(b, b);
      e >>= 1;
    }
    return r;
  };
  for (unsigned g = 2; g < n_; ++g) {
    bool ok = true;
    for (unsigned r : primes) {
      if (slow_pow(static_cast<Code>(g), (n_ - 1) / r) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      primitive_ = static_cast<Code>(g);
      break;
    }
  }
  if (primitive_ == 0) throw FieldError("no primitive element found");

  exp_.resize(2 * static_cast<std::size_t>(n_ - 1));
  log_.assign(n_, 0);
  Code x = 1;
  for (unsigned i = 0; i < n_ - 1; ++i) {
    exp_[i] = x;
    exp_[i + n_ - 1] = x;
    log_[x] = i;
    x = mul_by_reduction(x, primitive_);
  }

  inv_.assign(n_, 0);
  conj_.assign(n_, 0);
  in_sub_.assign(n_, 0);
  for (unsigned a = 1; a < n_; ++a) {
    inv_[a] = exp_[(n_ - 1 - log_[a]) % (n_ - 1)];
    conj_[a] = exp_[(static_cast<std::uint64_t>(log_[a]) * q_) % (n_ - 1)];
  }
  for (unsigned a = 0; a < n_; ++a) {
    if (conj_[a] == a) {
      in_sub_[a] = 1;
      subfield_.push_back(static_cast<Code>(a));
    }
  }
  if (subfield_.size() != q_) throw FieldError("Frobenius fixed field has wrong size");
}

Code Field::add_digits(Code a, Code b) const {
  const unsigned p = spec_.p;
  unsigned r = 0;
  for (unsigned i = 0; i < pow_p_.size(); ++i) {
    const unsigned ca = (a / pow_p_[i]) % p;
    const unsigned cb = (b / pow_p_[i]) % p;
    r += ((ca + cb) % p) * pow_p_[i];
  }
  return static_cast<Code>(r);
}

Code Field::mul_by_reduction(Code a, Code b) const {
  const unsigned p = spec_.p;
  const unsigned deg = degree();
  std::vector<unsigned> prod(2 * deg, 0);
  for (unsigned i = 0; i < deg; ++i) {
    const unsigned ca = (a / pow_p_[i]) % p;
    if (ca == 0) continue;
    for (unsigned j = 0; j < deg; ++j) {
      const unsigned cb = (b / pow_p_[j]) % p;
      prod[i + j] = (prod[i + j] + ca * cb) % p;
    }
  }
  // Modulus is monic after normalization.
  for (unsigned d = 2 * deg - 1; d >= deg; --d) {
    const unsigned c = prod[d];
    if (c == 0) continue;
    for (unsigned i = 0; i <= deg; ++i) {
      prod[d - deg + i] = (prod[d - deg + i] + p * p - (c * spec_.modulus[i]) % p) % p;
    }
  }
  unsigned r = 0;
  for (unsigned i = 0; i < deg; ++i) r += prod[i] * pow_p_[i];
  return static_cast<Code>(r);
}

Code Field::inv(Code a) const {
  if (a == 0) throw FieldError("inverse of zero");
  return inv_[a];
}

Code Field::pow(Code a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % (n_ - 1))) % (n_ - 1)];
}

Fe Field::elem(Code c) const {
  if (c >= n_) throw FieldError("element code out of range");
  return Fe(*this, c);
}

Fe Field::from_int(long long v) const {
  const long long p = spec_.p;
  return Fe(*this, static_cast<Code>(((v % p) + p) % p));
}

Fe Field::from_coords(std::span<const unsigned> coords) const {
  if (coords.size() > degree()) throw FieldError("too many coordinates for field element");
  unsigned r = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] >= spec_.p) throw FieldError("coordinate out of range");
    r += coords[i] * pow_p_[i];
  }
  return Fe(*this, static_cast<Code>(r));
}

std::vector<unsigned> Field::coords(Code c) const {
  std::vector<unsigned> out(degree());
  for (unsigned i = 0; i < degree(); ++i) out[i] = (c / pow_p_[i]) % spec_.p;
  return out;
}

std::vector<Fe> Field::elements() const {
  std::vector<Fe> out;
  out.reserve(n_);
  for (unsigned c = 0; c < n_; ++c) out.emplace_back(*this, static_cast<Code>(c));
  return out;
}

std::vector<Fe> Field::subfield_elements() const {
  std::vector<Fe> out;
  for (Code c : subfield_) out.emplace_back(*this, c);
  return out;
}

void Field::check_elem(Fe x) const {
  if (x.field_ptr() != this) throw FieldError("element belongs to another field");
}

bool Field::is_square(Fe x, Domain d) const {
  check_elem(x);
  if (x.is_zero() || spec_.p == 2) return true;
  if (d == Domain::Subfield) {
    if (!in_subfield(x.code())) throw FieldError("is_square: element not in GF(q)");
    return pow(x.code(), (q_ - 1) / 2) == 1;
  }
  return pow(x.code(), (n_ - 1) / 2) == 1;
}

unsigned Field::abs_trace(Fe x, Domain d) const {
  check_elem(x);
  unsigned steps = degree();
  if (d == Domain::Subfield) {
    if (!in_subfield(x.code())) throw FieldError("abs_trace: element not in GF(q)");
    steps = spec_.k;
  }
  Code sum = 0;
  Code y = x.code();
  for (unsigned i = 0; i < steps; ++i) {
    sum = add(sum, y);
    y = pow(y, spec_.p);
  }
  // The sum lies in the prime field, whose codes are 0..p-1.
  if (sum >= spec_.p) throw FieldError("abs_trace: sum left the prime field");
  return sum;
}

bool Field::is_cube(Fe x) const {
  check_elem(x);
  if (x.is_zero()) throw FieldError("is_cube: zero input");
  const unsigned g = std::gcd(3u, n_ - 1);
  return pow(x.code(), (n_ - 1) / g) == 1;
}

std::optional<Fe> Field::sqrt(Fe x) const {
  check_elem(x);
  if (x.is_zero()) return zero();
  if (spec_.p == 2) return Fe(*this, pow(x.code(), n_ / 2));
  const std::uint32_t l = log_[x.code()];
  if (l % 2 != 0) return std::nullopt;
  return Fe(*this, exp_[l / 2]);
}

std::string Field::to_string(Fe x) const {
  std::ostringstream os;
  const auto c = coords(x);
  os << '[';
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ']';
  return os.str();
}

}  // namespace hall
