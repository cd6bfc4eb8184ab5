#include <gtest/gtest.h>

#include <set>

#include "hall/inherited.hpp"
#include "hall/oracles.hpp"
#include "support.hpp"

namespace hall {
namespace {

using testing::field_q;
using testing::Gen;
using testing::plane_q;

Conic random_conic(Gen& g, const Field& f) {
  for (;;) {
    if (auto K = Conic::try_make({g.any(f), g.any(f), g.any(f), g.any(f), g.any(f), g.any(f)})) return *K;
  }
}

bool collinear(const ProjPoint& A, const ProjPoint& B, const ProjPoint& C) {
  return (A.x * (B.y * C.z - B.z * C.y) - A.y * (B.x * C.z - B.z * C.x) + A.z * (B.x * C.y - B.y * C.x)).is_zero();
}

/// Ordered vertex triples with A[j]A[k] through T[i], by testing all of them.
std::set<std::array<ProjPoint, 3>> oracle_triangles(const Conic& K, const ProjLine& r, const std::array<ProjPoint, 3>& T,
                                                    Ambient a) {
  std::vector<ProjPoint> pts;
  for (const auto& P : K.points(a)) {
    if (!r.contains(P)) pts.push_back(P);
  }
  std::set<std::array<ProjPoint, 3>> out;
  for (const auto& A1 : pts)
    for (const auto& A2 : pts)
      for (const auto& A3 : pts) {
        if (A1 == A2 || A1 == A3 || A2 == A3) continue;
        if (collinear(A2, A3, T[0]) && collinear(A1, A3, T[1]) && collinear(A1, A2, T[2])) out.insert({A1, A2, A3});
      }
  return out;
}

int expect_triangles_match(const Conic& K, const ProjLine& r, const std::array<ProjPoint, 3>& T, Ambient a) {
  const auto got = count_inscribed_triangles(K, r, T, a);
  std::set<std::array<ProjPoint, 3>> lib;
  for (const auto& t : got.triangles) lib.insert(t.A);
  EXPECT_EQ(got.count, static_cast<int>(got.triangles.size()));
  EXPECT_EQ(lib, oracle_triangles(K, r, T, a));
  return got.count;
}

TEST(Oracles, InscribedTrianglesInTheSubplane) {
  for (unsigned q : {3u, 4u, 5u}) {
    const Field& f = field_q(q);
    const auto sub = f.subfield_elements();
    const Conic K(hyperbola_xy(f.one()));
    int checked = 0, found = 0;
    for (const Fe& a : sub)
      for (const Fe& b : sub) {
        const ProjLine r = ProjLine::make(a, b, f.one());
        std::vector<ProjPoint> off;
        for (const auto& P : r.points()) {
          if (P.rational_over_subfield() && !K.contains(P)) off.push_back(P);
        }
        for (std::size_t i = 0; i + 2 < off.size(); ++i) {
          found += expect_triangles_match(K, r, {off[i], off[i + 1], off[i + 2]}, Ambient::Subfield);
          ++checked;
        }
      }
    EXPECT_GT(checked, 0);
    EXPECT_GT(found, 0);
  }
}

TEST(Oracles, InscribedTrianglesInTheFullPlane) {
  Gen g(51);
  for (unsigned q : {2u, 3u}) {
    const Field& f = field_q(q);
    for (int i = 0; i < 10; ++i) {
      const Conic K = random_conic(g, f);
      const Fe a = g.any(f), b = g.nonzero(f), c = g.any(f);
      const ProjLine r = ProjLine::make(a, b, c);
      std::vector<ProjPoint> off;
      for (const auto& P : r.points()) {
        if (!K.contains(P)) off.push_back(P);
      }
      if (off.size() < 3) continue;
      expect_triangles_match(K, r, {off[0], off[1], off[off.size() - 1]}, Ambient::Full);
    }
  }
}

TEST(Oracles, InscribedTrianglesRejectBadInput) {
  const Field& f = field_q(3);
  const Conic K(hyperbola_xy(f.one()));
  const ProjLine r = ProjLine::at_infinity(f);
  const auto P = ProjPoint::make(f.one(), f.one(), f.zero());
  const auto Q = ProjPoint::make(f.one(), -f.one(), f.zero());
  const auto R = ProjPoint::make(f.primitive(), f.one(), f.zero());
  EXPECT_THROW(count_inscribed_triangles(K, r, {P, P, Q}), GeometryError);
  // (1 : 0 : 0) lies on XY = Z^2.
  EXPECT_THROW(count_inscribed_triangles(K, r, {P, Q, ProjPoint::make(f.one(), f.zero(), f.zero())}), GeometryError);
  EXPECT_THROW(count_inscribed_triangles(K, r, {P, Q, R}, Ambient::Subfield), GeometryError);
  EXPECT_NO_THROW(count_inscribed_triangles(K, r, {P, Q, R}));
}

TEST(Oracles, SecondIntersection) {
  Gen g(52);
  for (unsigned q : {3u, 4u, 5u, 7u}) {
    const Field& f = field_q(q);
    const Conic K = random_conic(g, f);
    for (int i = 0; i < 100; ++i) {
      const ProjPoint A = K.points()[g.pick(K.points().size())];
      const ProjPoint P = ProjPoint::make(g.any(f), g.any(f), f.one());
      if (K.contains(P)) continue;
      const ProjPoint B = second_intersection(K, A, P);
      ASSERT_TRUE(K.contains(B));
      ASSERT_TRUE(collinear(A, B, P));
      ASSERT_EQ(B == A, K.tangent_at(A).contains(P));
    }
    EXPECT_THROW(second_intersection(K, K.points()[0], K.points()[1]), GeometryError);
  }
}

struct OracleParabolas {
  int three = 0;
  int four = 0;
  std::vector<Fe> u_values;
};

/// Every (u, a, b) with c forced by P1, then P2 and P3 tested directly.
OracleParabolas oracle_parabolas(const HallPlane& H, const NewLine& L, AffinePoint P1, AffinePoint P2, AffinePoint P3) {
  const Field& f = H.field();
  OracleParabolas out;
  const auto line = H.points(L);
  for (const Fe& u : f.elements()) {
    if (u.in_subfield()) continue;
    for (const Fe& a : f.elements())
      for (const Fe& b : f.elements()) {
        const Fe s = P1.x + u * P1.y;
        const Fe c = -(s * s + a * P1.x + b * P1.y);
        const auto K = Conic::try_make(parabola(u, a, b, c));
        if (!K || !K->contains(P2) || !K->contains(P3)) continue;
        int on = 0;
        for (const auto& P : line) on += K->contains(P);
        if (on == 3) {
          ++out.three;
          out.u_values.push_back(u);
        } else if (on == 4) {
          ++out.four;
        }
      }
  }
  std::sort(out.u_values.begin(), out.u_values.end());
  return out;
}

TEST(Oracles, ThreeSecantParabolasMatchBruteForce) {
  const Field& f = field_q(3);
  const HallPlane& H = plane_q(3);
  const Fe z = f.zero(), o = f.one();
  const NewLine grid = H.canonical_new_line(o, z, z);
  const AffinePoint P1{z, z}, P2{-o, z}, P3{z, -o};
  const auto lib = count_three_secant_parabolas(H, grid, P1, P2, P3);
  const auto want = oracle_parabolas(H, grid, P1, P2, P3);
  EXPECT_EQ(lib.exactly_three, want.three);
  EXPECT_EQ(lib.four, want.four);
  EXPECT_EQ(lib.u_values, want.u_values);

  Gen g(53);
  int checked = 0;
  while (checked < 6) {
    const NewLine& L = H.new_lines()[g.pick(H.new_line_count())];
    const auto pts = H.points(L);
    const auto A = pts[g.pick(pts.size())], B = pts[g.pick(pts.size())], C = pts[g.pick(pts.size())];
    if (A == B || A == C || B == C) continue;
    if (collinear(ProjPoint::affine(A), ProjPoint::affine(B), ProjPoint::affine(C))) {
      EXPECT_THROW(count_three_secant_parabolas(H, L, A, B, C), GeometryError);
      continue;
    }
    const auto r = count_three_secant_parabolas(H, L, A, B, C);
    const auto o2 = oracle_parabolas(H, L, A, B, C);
    EXPECT_EQ(r.exactly_three, o2.three);
    EXPECT_EQ(r.four, o2.four);
    EXPECT_EQ(r.u_values, o2.u_values);
    ++checked;
  }
  EXPECT_THROW(count_three_secant_parabolas(H, grid, P1, P1, P3), GeometryError);
  EXPECT_THROW(count_three_secant_parabolas(plane_q(4), plane_q(4).new_lines()[0], {field_q(4).zero(), field_q(4).zero()},
                                            {field_q(4).one(), field_q(4).zero()}, {field_q(4).zero(), field_q(4).one()}),
               GeometryError);
}

/// Multiplicity of r as a root of T^3 + bT + bt from the Hasse derivatives
/// p, p' = T^2 + b and p''/2 = T in characteristic 2.
int oracle_multiplicity(Fe r, Fe b, Fe t) {
  if (!(r * r * r + b * r + b * t).is_zero()) return 0;
  if (!(r * r + b).is_zero()) return 1;
  if (!r.is_zero()) return 2;
  return 3;
}

TEST(Oracles, NBetaRootsWithMultiplicity) {
  for (unsigned q : {2u, 4u, 8u, 16u}) {
    const Field& f = field_q(q);
    for (const Fe& beta : f.elements()) {
      if (beta.is_zero()) continue;
      const auto got = count_rational_roots_nbeta(beta);
      const Fe b = beta * beta.conj();
      const Fe t = beta + beta.conj();
      std::vector<Fe> want;
      for (const Fe& r : f.subfield_elements()) {
        for (int m = oracle_multiplicity(r, b, t); m > 0; --m) want.push_back(r);
      }
      std::sort(want.begin(), want.end());
      ASSERT_EQ(got.roots, want);
      ASSERT_NE(got.count(), 2);
      if (beta.in_subfield()) {
        // T(T + beta)^2.
        std::vector<Fe> roots{f.zero(), beta, beta};
        std::sort(roots.begin(), roots.end());
        ASSERT_EQ(got.roots, roots);
      }
    }
  }
  EXPECT_THROW(count_rational_roots_nbeta(field_q(4).zero()), GeometryError);
  EXPECT_THROW(count_rational_roots_nbeta(field_q(3).one()), GeometryError);
}

/// Which hypothesis fails, from the roots of X^2 + beta X + gamma in GF(q^2).
QuadraticHypothesis oracle_hypothesis(Fe beta, Fe gamma) {
  if (beta.is_zero()) return QuadraticHypothesis::RepeatedRoot;
  std::vector<Fe> roots;
  for (const Fe& x : beta.field().elements()) {
    if ((x * x + beta * x + gamma).is_zero()) roots.push_back(x);
  }
  // Irreducible over GF(q^2): x -> x^q cannot swap roots it does not fix.
  if (roots.empty()) return QuadraticHypothesis::Holds;
  if (roots[0].in_subfield() || roots[1].in_subfield()) return QuadraticHypothesis::RootInSubfield;
  if (roots[0].conj() == roots[1]) return QuadraticHypothesis::ConjugateRoots;
  return QuadraticHypothesis::Holds;
}

TEST(Oracles, NormalizeQuadraticBySubstitution) {
  for (unsigned q : {2u, 4u}) {
    const Field& f = field_q(q);
    const QuarticExtension ext(f);
    int holds = 0;
    for (const Fe& beta : f.elements())
      for (const Fe& gamma : f.elements()) {
        const auto want = oracle_hypothesis(beta, gamma);
        ASSERT_EQ(quadratic_roots(ext, beta, gamma).hypothesis, want);
        if (want != QuadraticHypothesis::Holds) {
          try {
            normalize_quadratic(beta, gamma, &ext);
            ADD_FAILURE() << "expected HypothesisViolated";
          } catch (const HypothesisViolated& e) {
            ASSERT_EQ(e.kind, want);
          }
          continue;
        }
        ++holds;
        const auto nf = normalize_quadratic(beta, gamma, &ext);
        const auto& [a, b, c, d] = nf.map;
        ASSERT_TRUE(a.in_subfield() && b.in_subfield() && c.in_subfield() && d.in_subfield());
        ASSERT_FALSE((a * d - b * c).is_zero());
        ASSERT_FALSE(nf.w.in_subfield());
        // (cz + d)^2 ((az + b)/(cz + d))^2 + ... evaluated pointwise.
        auto V = [&](Fe z) {
          const Fe num = a * z + b, den = c * z + d;
          return num * num + beta * num * den + gamma * den * den;
        };
        const Fe A = V(f.zero()) / nf.w;
        ASSERT_FALSE(A.is_zero());
        for (const Fe& z : f.elements()) ASSERT_EQ(V(z), A * (z * z + z + nf.w));
      }
    EXPECT_GT(holds, 0);
  }
  EXPECT_THROW(normalize_quadratic(field_q(3).one(), field_q(3).one()), GeometryError);
}

TEST(Oracles, NormalizeQuadraticBuildsItsOwnExtension) {
  const Field& f = field_q(8);
  const QuarticExtension ext(f);
  Gen g(54);
  for (int i = 0; i < 40; ++i) {
    const Fe beta = g.any(f), gamma = g.any(f);
    if (oracle_hypothesis(beta, gamma) != QuadraticHypothesis::Holds) continue;
    const auto a = normalize_quadratic(beta, gamma, &ext);
    const auto b = normalize_quadratic(beta, gamma);
    EXPECT_EQ(a.w, b.w);
  }
}

TEST(Oracles, KvRationalPoint) {
  for (unsigned q : {3u, 5u, 7u, 9u}) {
    const Field& f = field_q(q);
    const Fe o = f.one(), z = f.zero();
    for (const Fe& u : f.elements()) {
      if (u.in_subfield()) {
        EXPECT_THROW(verify_kv_rational_point(u), GeometryError);
        continue;
      }
      const AffinePoint P = verify_kv_rational_point(u);
      const Conic K(parabola(u, o, u * u, z));
      ASSERT_TRUE(K.contains(P));
      ASSERT_TRUE(P.x.in_subfield() && P.y.in_subfield());
      int rational = 0;
      for (const auto& R : K.affine_points()) rational += R.x.in_subfield() && R.y.in_subfield();
      ASSERT_GE(rational, 3);
    }
  }
  EXPECT_THROW(verify_kv_rational_point(field_q(4).primitive()), GeometryError);
}

TEST(Oracles, EnumeratedTriplesMatchSpectrum) {
  Gen g(55);
  for (unsigned q : {3u, 4u, 5u, 7u, 8u}) {
    const Field& f = field_q(q);
    const HallPlane& H = plane_q(q);
    for (int i = 0; i < 5; ++i) {
      const Conic K = random_conic(g, f);
      EXPECT_EQ(enumerate_collinear_triples(H, K), collinear_triples(H, K));
    }
  }
}

}  // namespace
}  // namespace hall
