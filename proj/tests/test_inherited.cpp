#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "hall/inherited.hpp"
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

std::vector<std::uint64_t> oracle_spectrum(const HallPlane& H, const Conic& K) {
  std::vector<std::uint64_t> a(H.q() + 2, 0);
  for (const auto& L : H.new_lines()) {
    int on = 0;
    for (const auto& P : H.points(L)) on += K.contains(P);
    ++a.at(on);
  }
  return a;
}

std::uint64_t oracle_triples(const HallPlane& H, const Conic& K) {
  const auto& pts = K.affine_points();
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const HallLine L = H.line_through(pts[i], pts[j]);
      if (!is_new(L)) continue;
      for (std::size_t k = j + 1; k < pts.size(); ++k) n += H.contains(L, pts[k]);
    }
  return n;
}

TEST(Inherited, SpectrumMatchesLineByLineCount) {
  Gen g(41);
  for (unsigned q : {3u, 4u, 5u}) {
    const Field& f = field_q(q);
    const HallPlane& H = plane_q(q);
    for (int i = 0; i < 12; ++i) {
      const Conic K = random_conic(g, f);
      const auto s = secant_spectrum(H, K);
      EXPECT_EQ(s.a, oracle_spectrum(H, K));
      EXPECT_EQ(s.lines(), static_cast<std::uint64_t>(q + 1) * q * q);
      EXPECT_EQ(s.incidences(), static_cast<std::uint64_t>(q + 1) * K.affine_points().size());
      EXPECT_EQ(s.affine_points, K.affine_points().size());
      const auto sup = s.support();
      EXPECT_EQ(s.max_line, sup.back());
    }
  }
}

TEST(Inherited, TriplesMatchSubsetEnumeration) {
  Gen g(42);
  for (unsigned q : {3u, 4u, 5u, 7u}) {
    const Field& f = field_q(q);
    const HallPlane& H = plane_q(q);
    for (int i = 0; i < 6; ++i) {
      const Conic K = random_conic(g, f);
      EXPECT_EQ(collinear_triples(H, K), oracle_triples(H, K));
    }
  }
}

TEST(Inherited, SpectrumIndependentOfJobs) {
  Gen g(43);
  for (unsigned q : {5u, 8u, 9u}) {
    const Field& f = field_q(q);
    const HallPlane& H = plane_q(q);
    for (int i = 0; i < 4; ++i) {
      const Conic K = random_conic(g, f);
      const auto one = secant_spectrum(H, K, 1);
      const auto four = secant_spectrum(H, K, 4);
      EXPECT_EQ(one.a, four.a);
      EXPECT_EQ(one.triples, four.triples);
      EXPECT_EQ(new_line_counts(H, K.affine_points(), 1), new_line_counts(H, K.affine_points(), 3));
    }
  }
}

TEST(Inherited, PointSetAdjoinsInfinitePointsOutsideD) {
  const Field& f = field_q(3);
  const HallPlane& H = plane_q(3);
  const Fe u = f.primitive();
  // Parabola with infinite point (-u : 1 : 0) outside D.
  const Conic P(parabola(u, f.one(), f.zero(), f.zero()));
  EXPECT_EQ(inherited_point_set(H, P, false).size(), f.size());
  const auto adj = inherited_point_set(H, P, true);
  ASSERT_EQ(adj.size(), f.size() + 1);
  ASSERT_TRUE(std::holds_alternative<OldDirection>(adj.back()));
  EXPECT_EQ(std::get<OldDirection>(adj.back()).slope, (-u).inv());
  // Both infinite points of XY = 1 lie in D and are never adjoined.
  const Conic X(hyperbola_xy(f.one()));
  EXPECT_EQ(inherited_point_set(H, X, true).size(), f.size() - 1);
}

struct OracleArc {
  int max_line = 0;
  std::vector<std::uint32_t> extension;
};

int max_on_a_line(const HallPlane& H, const std::set<std::uint32_t>& S) {
  int best = 0;
  std::vector<std::uint32_t> pts;
  for (std::uint32_t L = 0; L < H.hall_line_count(); ++L) {
    H.points_on(L, pts);
    int n = 0;
    for (auto p : pts) n += S.count(p) > 0;
    best = std::max(best, n);
  }
  return best;
}

OracleArc oracle_arc(const HallPlane& H, std::span<const HallPoint> S) {
  std::set<std::uint32_t> idx;
  for (const auto& P : S) idx.insert(H.point_index(P));
  OracleArc r;
  r.max_line = max_on_a_line(H, idx);
  if (r.max_line > 2) return r;
  for (std::uint32_t p = 0; p < H.hall_point_count(); ++p) {
    if (idx.count(p)) continue;
    auto T = idx;
    T.insert(p);
    if (max_on_a_line(H, T) <= 2) r.extension.push_back(p);
  }
  return r;
}

TEST(Inherited, ArcReportMatchesOracle) {
  for (unsigned q : {3u, 5u}) {
    const Field& f = field_q(q);
    const HallPlane& H = plane_q(q);
    for (const auto& c : {hyperbola_xy(-f.primitive()), hyperbola_xy(f.one())}) {
      const Conic K(c);
      const auto S = inherited_point_set(H, K, false);
      const auto r = arc_report(H, S);
      const auto o = oracle_arc(H, S);
      EXPECT_EQ(r.size, S.size());
      EXPECT_EQ(r.max_line, o.max_line);
      EXPECT_EQ(r.is_arc, o.max_line <= 2);
      if (!r.is_arc) {
        EXPECT_FALSE(r.is_complete);
        continue;
      }
      std::vector<std::uint32_t> ext;
      for (const auto& P : r.extension_points) ext.push_back(H.point_index(P));
      EXPECT_EQ(ext, o.extension);
      EXPECT_EQ(r.is_complete, o.extension.empty());
    }
  }
  // At q = 5, XY = -d is a complete arc and XY = 1 is not an arc.
  const Field& f = field_q(5);
  EXPECT_TRUE(arc_report(plane_q(5), inherited_point_set(plane_q(5), Conic(hyperbola_xy(-f.primitive())), false)).is_complete);
  EXPECT_FALSE(arc_report(plane_q(5), inherited_point_set(plane_q(5), Conic(hyperbola_xy(f.one())), false)).is_arc);
}

TEST(Inherited, HyperovalPairIsVerified) {
  const Field& f = field_q(4);
  const HallPlane& H = plane_q(4);
  Gen g(44);
  for (int i = 0; i < 4; ++i) {
    // N = (0 : 1 : 0) in D, I = (-u : 1 : 0) outside D.
    const Conic K(parabola(g.nonsub(f), f.one(), f.zero(), g.sub(f)));
    auto S = inherited_point_set(H, K, false);
    const auto r = arc_report(H, S);
    ASSERT_TRUE(r.is_arc);
    ASSERT_TRUE(r.hyperoval_reachable);
    ASSERT_TRUE(r.hyperoval_pair);
    S.push_back(r.hyperoval_pair->first);
    S.push_back(r.hyperoval_pair->second);
    const auto h = arc_report(H, S);
    EXPECT_EQ(h.size, f.size() + 2);
    EXPECT_TRUE(h.is_arc);
    EXPECT_TRUE(h.is_complete);
  }
}

TEST(Inherited, NoInternalNucleusWhenIAndNInD) {
  const Field& f = field_q(4);
  const HallPlane& H = plane_q(4);
  for (const Fe& c : f.subfield_elements()) {
    // I = (0 : 1 : 0), N = (1 : 0 : 0).
    const Conic K(parabola(f.zero(), f.zero(), f.one(), c));
    ASSERT_TRUE(K.classification().infinite_in_d[0]);
    ASSERT_TRUE(K.classification().nucleus_in_d);
    EXPECT_TRUE(internal_nucleus_set(H, inherited_point_set(H, K, false)).empty());
  }
}

TEST(Inherited, InternalNucleusOfAnArcIsEveryPoint) {
  const Field& f = field_q(5);
  const HallPlane& H = plane_q(5);
  const auto S = inherited_point_set(H, Conic(hyperbola_xy(-f.primitive())), false);
  EXPECT_EQ(internal_nucleus_set(H, S).size(), S.size());
}

TEST(Inherited, PerPointDistribution) {
  Gen g(45);
  for (unsigned q : {3u, 4u, 5u}) {
    const Field& f = field_q(q);
    const HallPlane& H = plane_q(q);
    const Conic K = random_conic(g, f);
    for (const auto& P : K.affine_points()) {
      const auto d = per_point_line_distribution(H, K, P);
      std::map<int, int> want;
      for (const auto& L : H.new_lines()) {
        if (!H.contains(L, P)) continue;
        int on = 0;
        for (const auto& R : H.points(L)) on += K.contains(R);
        ++want[on];
      }
      ASSERT_EQ(d, want);
      int total = 0;
      for (const auto& [k, v] : d) total += v;
      ASSERT_EQ(total, static_cast<int>(q) + 1);
    }
    for (const Fe& x : f.elements()) {
      const AffinePoint P{x, f.zero()};
      if (K.contains(P)) continue;
      EXPECT_THROW(per_point_line_distribution(H, K, P), GeometryError);
      break;
    }
  }
}

TEST(Inherited, TangentWitness) {
  Gen g(46);
  for (unsigned q : {4u, 8u}) {
    const Field& f = field_q(q);
    const HallPlane& H = plane_q(q);
    for (int i = 0; i < 10; ++i) {
      const Conic K = random_conic(g, f);
      for (const auto& L : H.new_lines()) {
        const auto w = three_secant_tangent_witness(H, K, L);
        int on = 0;
        std::vector<AffinePoint> want;
        for (const auto& P : H.points(L)) {
          if (!K.contains(P)) continue;
          ++on;
          const auto gr = K.gradient(ProjPoint::affine(P));
          if (H.in_derivation_set(ProjPoint::make(gr[1], -gr[0], f.zero()))) want.push_back(P);
        }
        std::sort(want.begin(), want.end());
        auto got = w.witnesses;
        std::sort(got.begin(), got.end());
        ASSERT_EQ(w.intersection, on);
        ASSERT_EQ(got, want);
        ASSERT_EQ(w.unique().has_value(), on == 3 && want.size() == 1);
      }
    }
  }
  EXPECT_THROW(three_secant_tangent_witness(plane_q(3), Conic(hyperbola_xy(field_q(3).one())), plane_q(3).new_lines()[0]),
               GeometryError);
}

}  // namespace
}  // namespace hall
