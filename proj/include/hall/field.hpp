// Exact arithmetic in GF(q^2), q = p^k, with the subfield GF(q) realized as the
// fixed points of the Frobenius map x -> x^q.
//
// Elements are stored as a single integer code: the coordinate vector
// (c_0, ..., c_{2k-1}) over Z_p in the polynomial basis {1, t, ..., t^{2k-1}}
// maps to sum c_i p^i. Ordering of elements is numeric order of the code, i.e.
// lexicographic on coordinates read from the highest degree down. Every
// canonical form in the library uses this order.
#ifndef HALL_FIELD_HPP
#define HALL_FIELD_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hall {

using Code = std::uint16_t;

class Field;

/// Which field an operation refers to: the whole GF(q^2) or the subfield GF(q).
enum class Domain { Full, Subfield };

struct FieldSpec {
  unsigned p = 0;
  unsigned k = 0;
  /// c_0, ..., c_{2k}; the polynomial sum c_i t^i defines GF(p^{2k}).
  std::vector<unsigned> modulus;

  /// Spec for GF(q^2), q = p^k, from the built-in modulus table.
  static FieldSpec standard(unsigned p, unsigned k);
  /// Same, with q given as a prime power.
  static FieldSpec for_q(unsigned q);

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Default moduli: the first primitive monic polynomial of degree n over Z_p
/// (ordered by the code of its lower coefficients), for even n and p^n <= 2^16.
std::optional<std::vector<unsigned>> default_modulus(unsigned p, unsigned n);

bool is_prime(unsigned n);
/// Exhaustive search for a monic factor of degree 1..deg/2.
bool is_irreducible(unsigned p, std::span<const unsigned> coeffs);
/// Splits q = p^k; nullopt when q is not a prime power.
std::optional<std::pair<unsigned, unsigned>> prime_power(unsigned q);

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A field element: a code plus the field it belongs to. Plain value type.
class Fe {
 public:
  Fe() = default;
  Fe(const Field& f, Code c) : field_(&f), code_(c) {}

  const Field& field() const { return *field_; }
  const Field* field_ptr() const { return field_; }
  Code code() const { return code_; }
  bool is_zero() const { return code_ == 0; }
  bool is_one() const;

  Fe operator-() const;
  Fe inv() const;
  Fe conj() const;
  Fe pow(std::uint64_t e) const;
  bool in_subfield() const;

  Fe& operator+=(Fe o);
  Fe& operator-=(Fe o);
  Fe& operator*=(Fe o);
  Fe& operator/=(Fe o);

  friend Fe operator+(Fe a, Fe b) { return a += b; }
  friend Fe operator-(Fe a, Fe b) { return a -= b; }
  friend Fe operator*(Fe a, Fe b) { return a *= b; }
  friend Fe operator/(Fe a, Fe b) { return a /= b; }
  friend bool operator==(Fe a, Fe b) { return a.code_ == b.code_ && a.field_ == b.field_; }
  friend std::strong_ordering operator<=>(Fe a, Fe b) { return a.code_ <=> b.code_; }

 private:
  void check_same(Fe o) const;

  const Field* field_ = nullptr;
  Code code_ = 0;
};

/// GF(p^{2k}) with its index-2 subfield distinguished. Immutable after
/// construction; not copyable or movable since elements point back to it.
class Field {
 public:
  explicit Field(FieldSpec spec);
  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  const FieldSpec& spec() const { return spec_; }
  unsigned p() const { return spec_.p; }
  unsigned k() const { return spec_.k; }
  /// Order of the subfield.
  unsigned q() const { return q_; }
  /// Order of the field, q^2.
  unsigned size() const { return n_; }
  unsigned degree() const { return 2 * spec_.k; }
  bool even() const { return spec_.p == 2; }
  /// True iff q is an even power of p.
  bool q_is_square() const { return spec_.k % 2 == 0; }

  Fe zero() const { return Fe(*this, 0); }
  Fe one() const { return Fe(*this, 1); }
  Fe elem(Code c) const;
  /// Image of an integer in the prime field.
  Fe from_int(long long v) const;
  Fe from_coords(std::span<const unsigned> coords) const;
  std::vector<unsigned> coords(Code c) const;
  std::vector<unsigned> coords(Fe x) const { return coords(x.code()); }
  Fe primitive() const { return Fe(*this, primitive_); }

  /// All q^2 elements in code order.
  std::vector<Fe> elements() const;
  /// The q elements of GF(q), in code order.
  const std::vector<Code>& subfield_codes() const { return subfield_; }
  std::vector<Fe> subfield_elements() const;

  // Raw code arithmetic, for inner loops.
  Code add(Code a, Code b) const {
    if (spec_.p == 2) return static_cast<Code>(a ^ b);
    if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * n_ + b];
    return add_digits(a, b);
  }
  Code neg(Code a) const { return neg_[a]; }
  Code sub(Code a, Code b) const { return add(a, neg_[b]); }
  Code mul(Code a, Code b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Code sqr(Code a) const { return mul(a, a); }
  /// Throws FieldError on zero.
  Code inv(Code a) const;
  Code div(Code a, Code b) const { return mul(a, inv(b)); }
  Code conj(Code a) const { return conj_[a]; }
  Code pow(Code a, std::uint64_t e) const;
  bool in_subfield(Code a) const { return in_sub_[a] != 0; }
  /// Discrete log to the base of primitive(); a must be nonzero.
  std::uint32_t log(Code a) const { return log_[a]; }

  /// Multiplication by schoolbook product and reduction modulo the modulus.
  /// Independent of the log tables; used to build them.
  Code mul_by_reduction(Code a, Code b) const;

  /// x = y^2 for some y in the given domain. Zero counts as a square; in
  /// characteristic 2 everything is a square.
  bool is_square(Fe x, Domain d = Domain::Full) const;
  /// Absolute trace to Z_p from the given domain.
  unsigned abs_trace(Fe x, Domain d = Domain::Subfield) const;
  /// x^{(q^2-1)/gcd(3,q^2-1)} == 1. Throws on zero.
  bool is_cube(Fe x) const;
  /// Square root in the field, if one exists.
  std::optional<Fe> sqrt(Fe x) const;

  std::string to_string(Fe x) const;

 private:
  Code add_digits(Code a, Code b) const;
  void check_elem(Fe x) const;

  FieldSpec spec_;
  unsigned q_ = 0;
  unsigned n_ = 0;
  std::vector<unsigned> pow_p_;
  std::vector<Code> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Code> neg_;
  std::vector<Code> conj_;
  std::vector<Code> inv_;
  std::vector<std::uint8_t> in_sub_;
  std::vector<Code> subfield_;
  std::vector<Code> add_table_;
  Code primitive_ = 0;
};

inline bool Fe::is_one() const { return code_ == 1; }
inline bool Fe::in_subfield() const { return field_->in_subfield(code_); }

}  // namespace hall

#endif  // HALL_FIELD_HPP
