// Conics of PG(2,q^2): classification relative to the line at infinity and
// the derivation set, tangents, nucleus (q even), and the external/internal
// dichotomy (q odd).
#ifndef HALL_CONIC_HPP
#define HALL_CONIC_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hall/field.hpp"
#include "hall/plane.hpp"

namespace hall {

class DegenerateConic : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

enum class ConicKind { Parabola, Hyperbola, Ellipse };
enum class Position { On, External, Internal };

const char* to_string(ConicKind k);
const char* to_string(Position p);

/// Standard derivation set membership for a point of Z = 0.
bool in_standard_derivation_set(const ProjPoint& P);

struct ConicClass {
  ConicKind kind = ConicKind::Ellipse;
  /// Points on Z = 0, ascending.
  std::vector<ProjPoint> infinite_points;
  std::vector<bool> infinite_in_d;
  /// Two infinite points swapped by x -> x^q.
  bool conjugate = false;
  /// Common point of all tangents; q even only.
  std::optional<ProjPoint> nucleus;
  bool nucleus_in_d = false;

  int infinite_in_d_count() const;
};

/// Coefficients of Q = cxx X^2 + cxy XY + cyy Y^2 + cxz XZ + cyz YZ + czz Z^2.
using ConicCoeffs = std::array<Fe, 6>;

/// Which projective plane a conic query lives in: PG(2,q^2), or the Baer
/// subplane PG(2,q) of GF(q)-rational points.
enum class Ambient { Full, Subfield };

/// A nondegenerate conic with its points and classification computed once.
class Conic {
 public:
  /// Throws DegenerateConic unless the conic has q^2+1 points and no singular point.
  explicit Conic(const ConicCoeffs& coeffs);
  static std::optional<Conic> try_make(const ConicCoeffs& coeffs);

  const Field& field() const { return coeffs_[0].field(); }
  const ConicCoeffs& coeffs() const { return coeffs_; }
  const ConicClass& classification() const { return cls_; }
  ConicKind kind() const { return cls_.kind; }

  Fe eval(const ProjPoint& P) const;
  Code eval(Code x, Code y, Code z) const;
  bool contains(const ProjPoint& P) const { return eval(P).is_zero(); }
  bool contains(AffinePoint P) const { return contains(ProjPoint::affine(P)); }

  /// All q^2+1 points, ascending.
  const std::vector<ProjPoint>& points() const { return points_; }
  /// The affine part, ascending.
  const std::vector<AffinePoint>& affine_points() const { return affine_; }
  /// Points in the chosen ambient plane.
  std::vector<ProjPoint> points(Ambient a) const;

  /// Partial derivatives at P.
  std::array<Fe, 3> gradient(const ProjPoint& P) const;
  /// Polar form B(P, R) = Q(P + R) - Q(P) - Q(R).
  Fe polar(const ProjPoint& P, const ProjPoint& R) const;
  /// Tangent line at a point of the conic. Throws if P is not on it.
  ProjLine tangent_at(const ProjPoint& P) const;
  /// Number of points of the line on the conic in the chosen plane.
  int intersection_count(const ProjLine& L, Ambient a = Ambient::Full) const;

  bool has_subfield_coefficients() const;

 private:
  ConicCoeffs coeffs_;
  std::vector<ProjPoint> points_;
  std::vector<AffinePoint> affine_;
  ConicClass cls_;
};

/// Same field for all six coefficients, or throws.
ConicCoeffs make_coeffs(Fe cxx, Fe cxy, Fe cyy, Fe cxz, Fe cyz, Fe czz);

// Named families.
/// (X + uY)^2 + Z(aX + bY + cZ): infinite point (-u : 1 : 0); for q even the
/// nucleus is (b : a : 0).
ConicCoeffs parabola(Fe u, Fe a, Fe b, Fe c);
/// XY = d.
ConicCoeffs hyperbola_xy(Fe d);
/// X^2 + XY + cY^2 + uXZ + vYZ + wZ^2.
ConicCoeffs normalform(Fe c, Fe u, Fe v, Fe w);

/// Counts of tangents through P, P off the conic, in the chosen plane.
int tangents_through(const Conic& K, const ProjPoint& P, Ambient a = Ambient::Full);
/// On / external / internal by counting tangents. q odd only.
Position point_position(const Conic& K, const ProjPoint& P, Ambient a = Ambient::Full);
/// Same decision from the quadratic character of -det(A) Q(P), A the
/// symmetric matrix of Q. q odd only.
Position point_position_by_character(const Conic& K, const ProjPoint& P, Ambient a = Ambient::Full);

struct DerivationSetCounts {
  int external = 0;
  int internal = 0;
  int on = 0;
};
/// Positions of the q+1 points of the standard derivation set. q odd only.
DerivationSetCounts classify_derivation_set(const Conic& K);

enum class ExtensionRelation { TangentToTangent, NonTangentToSecant, Violation };
const char* to_string(ExtensionRelation r);

struct ExtensionCheck {
  int subplane_count = 0;   // |r ∩ K| in PG(2,q)
  int extended_count = 0;   // |r' ∩ K'| in PG(2,q^2)
  ExtensionRelation relation = ExtensionRelation::Violation;
};
/// How a line of the subplane PG(2,q) meets a GF(q)-conic before and after
/// extending both to PG(2,q^2) with the same equations.
ExtensionCheck subconic_extension_check(const Conic& K, const ProjLine& r);

/// Determinant-style invariant 4cxx cyy czz + cxy cxz cyz - cxx cyz^2 - cyy cxz^2 - czz cxy^2.
/// Nonzero iff the conic is nondegenerate, in every characteristic.
Fe discriminant(const ConicCoeffs& c);

}  // namespace hall

#endif  // HALL_CONIC_HPP
