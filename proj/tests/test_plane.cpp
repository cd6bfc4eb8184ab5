#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "hall/plane.hpp"
#include "support.hpp"

namespace hall {
namespace {

using testing::field_q;
using testing::Gen;
using testing::plane_q;

using PointSet = std::vector<std::uint32_t>;

PointSet codes_of(const HallPlane& H, const std::vector<AffinePoint>& pts) {
  PointSet out;
  for (const auto& P : pts) out.push_back(H.affine_index(P.x.code(), P.y.code()));
  std::sort(out.begin(), out.end());
  return out;
}

/// Lines of the Hall plane straight from the definition: old lines y = mx + b
/// with m outside GF(q), and the sets {(a + lambda u, b + lambda v)}.
std::set<PointSet> oracle_lines(const HallPlane& H) {
  const Field& f = H.field();
  const auto sub = f.subfield_elements();
  std::set<PointSet> lines;
  for (const Fe& m : f.elements()) {
    if (m.in_subfield()) continue;
    for (const Fe& b : f.elements()) {
      PointSet s;
      for (const Fe& x : f.elements()) s.push_back(H.affine_index(x.code(), (m * x + b).code()));
      std::sort(s.begin(), s.end());
      lines.insert(s);
    }
  }
  for (const Fe& lambda : f.elements()) {
    if (lambda.is_zero()) continue;
    for (const Fe& a : f.elements()) {
      for (const Fe& b : f.elements()) {
        PointSet s;
        for (const Fe& u : sub)
          for (const Fe& v : sub) s.push_back(H.affine_index((a + lambda * u).code(), (b + lambda * v).code()));
        std::sort(s.begin(), s.end());
        lines.insert(s);
      }
    }
  }
  return lines;
}

class PlaneByQ : public ::testing::TestWithParam<unsigned> {};

TEST_P(PlaneByQ, LinesMatchDefinition) {
  const HallPlane& H = plane_q(GetParam());
  const unsigned q = H.q();
  const auto oracle = oracle_lines(H);
  EXPECT_EQ(oracle.size(), (q * q - q) * q * q + (q + 1) * q * q);
  std::set<PointSet> lib;
  for (const auto& L : H.new_lines()) lib.insert(codes_of(H, H.points(L)));
  for (const auto& L : H.old_lines()) lib.insert(codes_of(H, H.points(L)));
  EXPECT_EQ(lib, oracle);
  EXPECT_EQ(H.new_line_count(), (q + 1) * q * q);
  EXPECT_EQ(H.old_line_count(), (q * q - q) * q * q);
}

TEST_P(PlaneByQ, EveryPairOnExactlyOneLine) {
  const HallPlane& H = plane_q(GetParam());
  const Field& f = H.field();
  const unsigned n = H.order();
  const auto oracle = oracle_lines(H);
  std::vector<int> cover(static_cast<std::size_t>(n) * n * n * n, 0);
  for (const auto& L : oracle) {
    for (auto a : L)
      for (auto b : L) {
        if (a < b) ++cover[static_cast<std::size_t>(a) * n * n + b];
      }
  }
  for (std::uint32_t a = 0; a < n * n; ++a) {
    for (std::uint32_t b = a + 1; b < n * n; ++b) ASSERT_EQ(cover[static_cast<std::size_t>(a) * n * n + b], 1);
  }
  Gen g(GetParam());
  for (int i = 0; i < 500; ++i) {
    const AffinePoint P{g.any(f), g.any(f)};
    const AffinePoint Q{g.any(f), g.any(f)};
    if (P == Q) continue;
    const auto L = H.line_through(P, Q);
    EXPECT_TRUE(H.contains(L, P));
    EXPECT_TRUE(H.contains(L, Q));
    const auto pts = codes_of(H, H.points(L));
    EXPECT_TRUE(oracle.count(pts));
    EXPECT_EQ(pts.size(), n);
  }
}

TEST_P(PlaneByQ, CanonicalFormsAreStable) {
  const HallPlane& H = plane_q(GetParam());
  const Field& f = H.field();
  Gen g(100 + GetParam());
  for (int i = 0; i < 300; ++i) {
    const auto& L = H.new_lines()[g.pick(H.new_line_count())];
    const auto pts = H.points(L);
    const auto& P = pts[g.pick(pts.size())];
    const Fe scale = g.sub(f);
    if (scale.is_zero()) continue;
    EXPECT_EQ(H.canonical_new_line(L.lambda * scale, P.x, P.y), L);
    EXPECT_EQ(H.new_lines()[H.new_line_index(L)], L);
    const auto cls = H.lambda_class(L.lambda);
    EXPECT_EQ(H.new_line_index(P.x.code(), P.y.code(), cls), H.new_line_index(L));
  }
}

TEST_P(PlaneByQ, ParallelClasses) {
  const HallPlane& H = plane_q(GetParam());
  const unsigned q = H.q();
  for (unsigned c = 0; c < H.class_count(); ++c) {
    std::set<std::uint32_t> covered;
    for (unsigned i = 0; i < q * q; ++i) {
      const auto& L = H.new_lines()[c * q * q + i];
      EXPECT_EQ(H.lambda_class(L.lambda), c);
      for (const auto& P : H.points(L)) covered.insert(H.affine_index(P.x.code(), P.y.code()));
    }
    EXPECT_EQ(covered.size(), q * q * q * q);
  }
}

TEST_P(PlaneByQ, CanonicalNewLineIsTheSubfieldGrid) {
  const HallPlane& H = plane_q(GetParam());
  const Field& f = H.field();
  std::vector<AffinePoint> grid;
  for (const Fe& x : f.subfield_elements())
    for (const Fe& y : f.subfield_elements()) grid.push_back({x, y});
  EXPECT_EQ(codes_of(H, H.points(H.canonical_new_line(f.one(), f.zero(), f.zero()))), codes_of(H, grid));
}

TEST_P(PlaneByQ, ProjectiveIncidence) {
  const HallPlane& H = plane_q(GetParam());
  const std::uint32_t N = H.hall_point_count();
  const unsigned n = H.order();
  EXPECT_EQ(N, n * n + n + 1);
  std::vector<std::uint32_t> lines, pts;
  for (std::uint32_t P = 0; P < N; ++P) {
    EXPECT_EQ(H.point_index(H.point_at(P)), P);
    H.lines_through(P, lines);
    ASSERT_EQ(lines.size(), n + 1);
    for (auto L : lines) {
      H.points_on(L, pts);
      ASSERT_TRUE(std::binary_search(pts.begin(), pts.end(), P) || std::find(pts.begin(), pts.end(), P) != pts.end());
    }
  }
  // Any two lines meet in exactly one point.
  std::vector<std::vector<std::uint32_t>> all(N);
  for (std::uint32_t L = 0; L < N; ++L) {
    H.points_on(L, all[L]);
    ASSERT_EQ(all[L].size(), n + 1);
    std::sort(all[L].begin(), all[L].end());
  }
  Gen g(9);
  for (int i = 0; i < 4000; ++i) {
    const auto a = g.pick(N), b = g.pick(N);
    if (a == b) continue;
    std::vector<std::uint32_t> common;
    std::set_intersection(all[a].begin(), all[a].end(), all[b].begin(), all[b].end(), std::back_inserter(common));
    ASSERT_EQ(common.size(), 1u);
  }
  for (const auto& L : H.new_lines()) EXPECT_EQ(H.line_index(HallLine{L}), H.new_line_index(L));
}

TEST_P(PlaneByQ, DerivationSet) {
  const HallPlane& H = plane_q(GetParam());
  const Field& f = H.field();
  const auto D = H.derivation_set();
  EXPECT_EQ(D.size(), H.q() + 1);
  for (const auto& P : D) {
    EXPECT_TRUE(P.at_infinity());
    EXPECT_TRUE(P.rational_over_subfield());
    EXPECT_TRUE(H.in_derivation_set(P));
  }
  EXPECT_FALSE(H.in_derivation_set(ProjPoint::make(f.primitive(), f.one(), f.zero())));
}

TEST_P(PlaneByQ, BaerSubplaneOfANewLine) {
  const HallPlane& H = plane_q(GetParam());
  const unsigned q = H.q();
  Gen g(GetParam());
  for (int i = 0; i < 10; ++i) {
    const HallLine L = H.new_lines()[g.pick(H.new_line_count())];
    const auto B = H.baer_subplane_points(L);
    EXPECT_EQ(B.size(), q * q + q + 1);
    // Closed under joins and meets of PG(2,q^2): every join of two points of B
    // meets B in q + 1 points.
    std::set<ProjPoint> Bs(B.begin(), B.end());
    for (int j = 0; j < 20; ++j) {
      const auto& P = B[g.pick(B.size())];
      const auto& Q = B[g.pick(B.size())];
      if (P == Q) continue;
      const auto l = ProjLine::through(P, Q);
      int on = 0;
      for (const auto& R : B) on += l.contains(R);
      EXPECT_EQ(on, static_cast<int>(q) + 1);
    }
  }
}

TEST_P(PlaneByQ, TranslationsPreserveLines) {
  const HallPlane& H = plane_q(GetParam());
  const Field& f = H.field();
  Gen g(77);
  for (int i = 0; i < 200; ++i) {
    const Fe s = g.any(f), t = g.any(f);
    HallLine L = H.new_lines()[g.pick(H.new_line_count())];
    if (i % 2) L = OldLine{g.nonsub(f), g.any(f)};
    const auto M = H.translate(L, s, t);
    for (const auto& P : H.points(L)) ASSERT_TRUE(H.contains(M, {P.x + s, P.y + t}));
  }
}

INSTANTIATE_TEST_SUITE_P(SmallQ, PlaneByQ, ::testing::Values(2u, 3u, 4u));

TEST(Plane, CountsAtLargerQ) {
  for (unsigned q : {5u, 7u, 8u, 9u}) {
    const HallPlane& H = plane_q(q);
    EXPECT_EQ(H.new_line_count(), (q + 1) * q * q);
    std::set<NewLine> distinct(H.new_lines().begin(), H.new_lines().end());
    EXPECT_EQ(distinct.size(), H.new_line_count());
  }
}

TEST(Plane, ProjectiveBasics) {
  const Field& f = field_q(3);
  const auto P = ProjPoint::make(f.from_int(2), f.from_int(2), f.from_int(2));
  EXPECT_EQ(P, ProjPoint::make(f.one(), f.one(), f.one()));
  EXPECT_THROW(ProjPoint::make(f.zero(), f.zero(), f.zero()), GeometryError);
  const auto l = ProjLine::through(P, ProjPoint::make(f.one(), f.zero(), f.zero()));
  EXPECT_TRUE(l.contains(P));
  EXPECT_EQ(l.points().size(), f.size() + 1);
  const auto inf = ProjLine::at_infinity(f);
  EXPECT_TRUE(inf.contains(l.meet(inf)));
  EXPECT_TRUE(l.contains(l.meet(inf)));
  const AffinePoint A{f.one(), f.zero()};
  EXPECT_THROW(plane_q(3).line_through(A, A), GeometryError);
}

}  // namespace
}  // namespace hall
