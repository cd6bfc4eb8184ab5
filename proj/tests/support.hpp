#ifndef HALL_TESTS_SUPPORT_HPP
#define HALL_TESTS_SUPPORT_HPP

#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <vector>

#include "hall/field.hpp"
#include "hall/plane.hpp"

namespace hall::testing {

/// Fields and planes shared across tests, built once per q.
inline const Field& field_q(unsigned q) {
  static std::map<unsigned, std::unique_ptr<Field>> cache;
  static std::mutex mu;
  std::lock_guard lock(mu);
  auto& slot = cache[q];
  if (!slot) slot = std::make_unique<Field>(FieldSpec::for_q(q));
  return *slot;
}

inline const HallPlane& plane_q(unsigned q) {
  static std::map<unsigned, std::unique_ptr<HallPlane>> cache;
  static std::mutex mu;
  const Field& f = field_q(q);
  std::lock_guard lock(mu);
  auto& slot = cache[q];
  if (!slot) slot = std::make_unique<HallPlane>(f);
  return *slot;
}

class Gen {
 public:
  explicit Gen(std::uint32_t seed) : rng_(seed) {}

  Fe any(const Field& f) { return f.elem(static_cast<Code>(pick(f.size()))); }
  Fe nonzero(const Field& f) { return f.elem(static_cast<Code>(1 + pick(f.size() - 1))); }
  Fe sub(const Field& f) { return f.elem(f.subfield_codes()[pick(f.q())]); }
  Fe nonsub(const Field& f) {
    for (;;) {
      const Fe x = any(f);
      if (!x.in_subfield()) return x;
    }
  }
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

 private:
  std::mt19937 rng_;
};

/// Polynomial-basis arithmetic on coordinate vectors, written directly from
/// the definition: schoolbook product reduced by the monic modulus.
struct PolyField {
  unsigned p;
  std::vector<unsigned> modulus;

  std::size_t n() const { return modulus.size() - 1; }

  std::vector<unsigned> add(const std::vector<unsigned>& a, const std::vector<unsigned>& b) const {
    std::vector<unsigned> r(n());
    for (std::size_t i = 0; i < n(); ++i) r[i] = (a[i] + b[i]) % p;
    return r;
  }

  std::vector<unsigned> mul(const std::vector<unsigned>& a, const std::vector<unsigned>& b) const {
    std::vector<unsigned> prod(2 * n(), 0);
    for (std::size_t i = 0; i < n(); ++i)
      for (std::size_t j = 0; j < n(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    for (std::size_t d = prod.size(); d-- > n();) {
      const unsigned c = prod[d];
      if (c == 0) continue;
      for (std::size_t i = 0; i <= n(); ++i) prod[d - n() + i] = (prod[d - n() + i] + p * p - c * modulus[i] % p) % p;
    }
    prod.resize(n());
    return prod;
  }
};

}  // namespace hall::testing

#endif  // HALL_TESTS_SUPPORT_HPP
