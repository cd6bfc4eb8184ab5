#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "hall/field.hpp"
#include "support.hpp"

namespace hall {
namespace {

using testing::field_q;
using testing::Gen;
using testing::PolyField;

const std::vector<unsigned> kSmallQ{2, 3, 4, 5, 7, 8, 9, 11, 13, 16};

TEST(FieldSpec, PrimePower) {
  EXPECT_EQ(prime_power(9), (std::pair<unsigned, unsigned>{3, 2}));
  EXPECT_EQ(prime_power(8), (std::pair<unsigned, unsigned>{2, 3}));
  EXPECT_EQ(prime_power(7), (std::pair<unsigned, unsigned>{7, 1}));
  EXPECT_FALSE(prime_power(6));
  EXPECT_FALSE(prime_power(1));
  EXPECT_FALSE(prime_power(0));
}

TEST(FieldSpec, StandardModuliAreIrreducible) {
  for (unsigned q : kSmallQ) {
    const auto spec = FieldSpec::for_q(q);
    EXPECT_EQ(spec.modulus.size(), 2 * spec.k + 1) << q;
    EXPECT_TRUE(is_irreducible(spec.p, spec.modulus)) << q;
  }
}

TEST(FieldSpec, RejectsBadInput) {
  EXPECT_THROW(Field(FieldSpec{4, 1, {1, 0, 1}}), FieldError);
  // t^2 + 1 = (t + 1)^2 over Z_2.
  EXPECT_THROW(Field(FieldSpec{2, 1, {1, 0, 1}}), FieldError);
  // More than 2^16 elements.
  EXPECT_THROW(FieldSpec::for_q(512), FieldError);
  EXPECT_THROW(FieldSpec::for_q(6), FieldError);
}

TEST(Field, Sizes) {
  for (unsigned q : kSmallQ) {
    const Field& f = field_q(q);
    EXPECT_EQ(f.q(), q);
    EXPECT_EQ(f.size(), q * q);
    EXPECT_EQ(f.elements().size(), q * q);
    EXPECT_EQ(f.subfield_elements().size(), q);
    std::set<Code> codes;
    for (const Fe& x : f.elements()) codes.insert(x.code());
    EXPECT_EQ(codes.size(), q * q);
  }
}

TEST(Field, MultiplicationMatchesPolynomialReduction) {
  for (unsigned q : {2u, 3u, 4u, 5u, 8u, 9u}) {
    const Field& f = field_q(q);
    const PolyField oracle{f.p(), f.spec().modulus};
    for (const Fe& x : f.elements()) {
      for (const Fe& y : f.elements()) {
        ASSERT_EQ(f.coords(x * y), oracle.mul(f.coords(x), f.coords(y))) << q;
        ASSERT_EQ(f.coords(x + y), oracle.add(f.coords(x), f.coords(y))) << q;
      }
    }
  }
}

TEST(Field, MultiplicationMatchesPolynomialReductionRandom) {
  Gen g(11);
  for (unsigned q : {13u, 16u, 49u, 64u, 81u, 128u}) {
    const Field& f = field_q(q);
    const PolyField oracle{f.p(), f.spec().modulus};
    for (int i = 0; i < 3000; ++i) {
      const Fe x = g.any(f), y = g.any(f);
      ASSERT_EQ(f.coords(x * y), oracle.mul(f.coords(x), f.coords(y))) << q;
      ASSERT_EQ(f.coords(x + y), oracle.add(f.coords(x), f.coords(y))) << q;
    }
  }
}

TEST(Field, Gf9ComponentwiseAddition) {
  const Field& f = field_q(3);
  const std::vector<unsigned> a{1, 1}, b{2, 1}, c{0, 2};
  EXPECT_EQ(f.from_coords(a) + f.from_coords(b), f.from_coords(c));
}

TEST(Field, Gf4OmegaSquared) {
  const Field f(FieldSpec{2, 1, {1, 1, 1}});
  const std::vector<unsigned> w{0, 1}, w1{1, 1};
  const Fe omega = f.from_coords(w);
  EXPECT_EQ(omega * omega, f.from_coords(w1));
  EXPECT_EQ(omega.conj(), f.from_coords(w1));
  EXPECT_FALSE(omega.in_subfield());
}

TEST(Field, Identities) {
  for (unsigned q : kSmallQ) {
    const Field& f = field_q(q);
    for (const Fe& x : f.elements()) {
      EXPECT_EQ(x + f.zero(), x);
      EXPECT_EQ(x * f.one(), x);
      EXPECT_TRUE((x - x).is_zero());
      if (f.even()) EXPECT_TRUE((x + x).is_zero());
      if (!x.is_zero()) EXPECT_EQ(x * x.inv(), f.one());
    }
    EXPECT_THROW(f.zero().inv(), FieldError);
  }
}

TEST(Field, RingAxiomsRandom) {
  Gen g(7);
  for (unsigned q : kSmallQ) {
    const Field& f = field_q(q);
    for (int i = 0; i < 500; ++i) {
      const Fe a = g.any(f), b = g.any(f), c = g.any(f);
      ASSERT_EQ((a + b) + c, a + (b + c));
      ASSERT_EQ((a * b) * c, a * (b * c));
      ASSERT_EQ(a * (b + c), a * b + a * c);
      ASSERT_EQ(a * b, b * a);
      ASSERT_EQ(a - b, a + (-b));
      if (!b.is_zero()) ASSERT_EQ(a / b * b, a);
    }
  }
}

TEST(Field, ConjugationIsFrobenius) {
  for (unsigned q : kSmallQ) {
    const Field& f = field_q(q);
    int fixed = 0;
    for (const Fe& x : f.elements()) {
      Fe power = f.one();
      for (unsigned i = 0; i < q; ++i) power *= x;
      if (!x.is_zero()) ASSERT_EQ(x.conj(), power);
      ASSERT_EQ(x.conj().conj(), x);
      ASSERT_EQ(x.in_subfield(), x.conj() == x);
      fixed += x.in_subfield();
    }
    EXPECT_EQ(fixed, static_cast<int>(q));
  }
}

TEST(Field, ConjugationIsAnAutomorphism) {
  Gen g(3);
  for (unsigned q : kSmallQ) {
    const Field& f = field_q(q);
    for (int i = 0; i < 300; ++i) {
      const Fe a = g.any(f), b = g.any(f);
      ASSERT_EQ((a + b).conj(), a.conj() + b.conj());
      ASSERT_EQ((a * b).conj(), a.conj() * b.conj());
      ASSERT_TRUE((a * a.conj()).in_subfield());
      ASSERT_TRUE((a + a.conj()).in_subfield());
    }
  }
}

TEST(Field, SubfieldClosed) {
  for (unsigned q : kSmallQ) {
    const Field& f = field_q(q);
    const auto sub = f.subfield_elements();
    for (const Fe& a : sub) {
      for (const Fe& b : sub) {
        ASSERT_TRUE((a + b).in_subfield());
        ASSERT_TRUE((a * b).in_subfield());
      }
    }
  }
}

TEST(Field, PrimitiveElementGeneratesTheGroup) {
  for (unsigned q : kSmallQ) {
    const Field& f = field_q(q);
    std::set<Code> seen;
    Fe x = f.one();
    for (unsigned i = 0; i + 1 < f.size(); ++i) {
      seen.insert(x.code());
      x *= f.primitive();
    }
    EXPECT_EQ(x, f.one());
    EXPECT_EQ(seen.size(), f.size() - 1);
  }
}

TEST(Field, PowAndLog) {
  Gen g(5);
  for (unsigned q : kSmallQ) {
    const Field& f = field_q(q);
    for (int i = 0; i < 100; ++i) {
      const Fe x = g.nonzero(f);
      EXPECT_EQ(f.primitive().pow(f.log(x.code())), x);
      EXPECT_EQ(x.pow(f.size() - 1), f.one());
      EXPECT_EQ(x.pow(3), x * x * x);
    }
  }
}

TEST(Field, Squares) {
  for (unsigned q : kSmallQ) {
    const Field& f = field_q(q);
    EXPECT_TRUE(f.is_square(f.zero()));
    EXPECT_TRUE(f.is_square(f.one()));
    std::set<Code> squares;
    for (const Fe& x : f.elements()) squares.insert((x * x).code());
    int nonsquares = 0;
    for (const Fe& x : f.elements()) {
      const bool sq = squares.count(x.code()) > 0;
      ASSERT_EQ(f.is_square(x), sq);
      nonsquares += !sq;
      const auto r = f.sqrt(x);
      ASSERT_EQ(r.has_value(), sq);
      if (r) ASSERT_EQ(*r * *r, x);
    }
    if (f.even()) {
      EXPECT_EQ(nonsquares, 0);
    } else {
      EXPECT_EQ(nonsquares, static_cast<int>((f.size() - 1) / 2));
      EXPECT_FALSE(f.is_square(f.primitive()));
    }
  }
}

TEST(Field, SubfieldSquares) {
  for (unsigned q : {3u, 5u, 7u, 9u, 11u, 13u}) {
    const Field& f = field_q(q);
    const auto sub = f.subfield_elements();
    std::set<Code> squares;
    for (const Fe& x : sub) squares.insert((x * x).code());
    int nonsquares = 0;
    for (const Fe& x : sub) {
      ASSERT_EQ(f.is_square(x, Domain::Subfield), squares.count(x.code()) > 0);
      nonsquares += !f.is_square(x, Domain::Subfield);
      // Every element of GF(q) is a square in GF(q^2).
      ASSERT_TRUE(f.is_square(x));
    }
    EXPECT_EQ(nonsquares, static_cast<int>((q - 1) / 2));
    EXPECT_THROW(f.is_square(f.primitive(), Domain::Subfield), FieldError);
  }
}

TEST(Field, Cubes) {
  for (unsigned q : {2u, 4u, 8u, 16u, 5u}) {
    const Field& f = field_q(q);
    std::set<Code> cubes;
    for (const Fe& x : f.elements()) {
      if (!x.is_zero()) cubes.insert((x * x * x).code());
    }
    for (const Fe& x : f.elements()) {
      if (!x.is_zero()) ASSERT_EQ(f.is_cube(x), cubes.count(x.code()) > 0);
    }
  }
}

TEST(Field, MismatchedFieldsThrow) {
  const Field& a = field_q(3);
  const Field& b = field_q(5);
  EXPECT_THROW(a.one() + b.one(), FieldError);
  EXPECT_THROW(a.one() * b.one(), FieldError);
}

TEST(Field, FromIntAndCoords) {
  const Field& f = field_q(5);
  EXPECT_EQ(f.from_int(7), f.from_int(2));
  EXPECT_EQ(f.from_int(-1), -f.one());
  for (const Fe& x : f.elements()) EXPECT_EQ(f.from_coords(f.coords(x)), x);
}

}  // namespace
}  // namespace hall
