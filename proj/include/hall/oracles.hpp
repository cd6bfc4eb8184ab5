// Brute-force counting oracles: inscribed triangles, parabolas through three
// points of a new line, rational roots of the cubic N_beta, and the Möbius
// normal form of a quadratic in characteristic 2.
#ifndef HALL_ORACLES_HPP
#define HALL_ORACLES_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "hall/conic.hpp"
#include "hall/field.hpp"
#include "hall/plane.hpp"

namespace hall {

struct Triangle {
  /// A[i] is the vertex opposite T[i]: the side A[j]A[k] passes through T[i].
  std::array<ProjPoint, 3> A;
};

struct TriangleCount {
  int count = 0;
  std::vector<Triangle> triangles;
};

/// Triangles inscribed in K, off r, whose sides meet r in the three given
/// points. Runs in PG(2,q^2) or in the subplane PG(2,q). Walks the chords from
/// each candidate vertex, O(|K|) per triple.
TriangleCount count_inscribed_triangles(const Conic& K, const ProjLine& r, const std::array<ProjPoint, 3>& T,
                                        Ambient a = Ambient::Full);

/// Second point of K on the line through A (on K) and P (off K); A itself when
/// the line is tangent.
ProjPoint second_intersection(const Conic& K, const ProjPoint& A, const ProjPoint& P);

struct ThreeSecantParabolas {
  /// Parabolas K_u meeting L in exactly the three points.
  int exactly_three = 0;
  /// Parabolas through the three points with one more point on L.
  int four = 0;
  /// Values of u whose K_u meets L in exactly the three points, ascending.
  std::vector<Fe> u_values;
};

/// Over all u outside GF(q), the parabolas (X + uY)^2 + aX + bY + c = 0 through
/// P1, P2, P3. q odd; throws if the points are not distinct points of L or lie
/// on one line of PG(2,q^2).
ThreeSecantParabolas count_three_secant_parabolas(const HallPlane& H, const NewLine& L, AffinePoint P1,
                                                  AffinePoint P2, AffinePoint P3);

struct NBetaRoots {
  /// Roots in GF(q) with multiplicity, ascending.
  std::vector<Fe> roots;
  int count() const { return static_cast<int>(roots.size()); }
};

/// Roots in GF(q) of T^3 + b T + b (beta + conj(beta)), b = beta conj(beta). q even, beta != 0.
NBetaRoots count_rational_roots_nbeta(Fe beta);

/// z -> (az + b)/(cz + d) with a, b, c, d in GF(q) and ad - bc != 0.
struct MoebiusMap {
  Fe a, b, c, d;

  bool is_rational() const;
  bool is_invertible() const;
  /// Substituting X = (aZ + b)/(cZ + d) into X^2 + beta X + gamma and
  /// multiplying by (cZ + d)^2 gives A Z^2 + B Z + C; returns {A, B, C}.
  std::array<Fe, 3> transform(Fe beta, Fe gamma) const;
};

enum class QuadraticHypothesis { Holds, RepeatedRoot, RootInSubfield, ConjugateRoots };
const char* to_string(QuadraticHypothesis h);

/// GF(q^4) with an embedding of GF(q^2), for root finding.
class QuarticExtension {
 public:
  explicit QuarticExtension(const Field& base);
  const Field& base() const { return *base_; }
  const Field& field() const { return *big_; }
  Fe embed(Fe x) const;
  /// x -> x^q on GF(q^4).
  Fe frobenius_q(Fe x) const;

 private:
  const Field* base_;
  std::unique_ptr<Field> big_;
  std::vector<Code> image_;
};

struct QuadraticRoots {
  /// The roots in GF(q^4), repeated when double.
  std::array<Fe, 2> roots;
  QuadraticHypothesis hypothesis = QuadraticHypothesis::Holds;
};

/// Roots of X^2 + beta X + gamma in GF(q^4) and which condition on them fails.
QuadraticRoots quadratic_roots(const QuarticExtension& ext, Fe beta, Fe gamma);

class HypothesisViolated : public GeometryError {
 public:
  HypothesisViolated(QuadraticHypothesis h, const std::string& what) : GeometryError(what), kind(h) {}
  QuadraticHypothesis kind;
};

struct NormalForm {
  MoebiusMap map;
  Fe w;
};

/// A GF(q)-rational Möbius map carrying X^2 + beta X + gamma to a multiple of
/// X^2 + X + w, w outside GF(q). q even. Throws HypothesisViolated when the
/// roots are repeated, lie in GF(q), or are swapped by x -> x^q. Builds
/// GF(q^4) unless one is supplied.
NormalForm normalize_quadratic(Fe beta, Fe gamma, const QuarticExtension* ext = nullptr);

/// The fourth GF(q)-rational point of (X + uY)^2 + X + u^2 Y = 0 given by the
/// closed formula, checked to be rational and on the curve. q odd, u outside GF(q).
AffinePoint verify_kv_rational_point(Fe u);

/// Collinear triples of the affine part of K on new lines, by testing every
/// 3-subset.
std::uint64_t enumerate_collinear_triples(const HallPlane& H, const Conic& K);

}  // namespace hall

#endif  // HALL_ORACLES_HPP
