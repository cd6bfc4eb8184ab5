// PG(2,q^2), the standard derivation set D on the line at infinity, and the
// affine Hall plane Hall(q^2) obtained by replacing the lines through D with
// the affine parts of the Baer subplanes containing D.
#ifndef HALL_PLANE_HPP
#define HALL_PLANE_HPP

#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "hall/field.hpp"

namespace hall {

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct AffinePoint {
  Fe x;
  Fe y;
  friend bool operator==(const AffinePoint&, const AffinePoint&) = default;
  friend auto operator<=>(const AffinePoint&, const AffinePoint&) = default;
};

/// Homogeneous triple normalized so that the last nonzero coordinate is 1.
struct ProjPoint {
  Fe x;
  Fe y;
  Fe z;

  /// Normalizes; throws GeometryError on (0,0,0).
  static ProjPoint make(Fe x, Fe y, Fe z);
  static ProjPoint affine(AffinePoint P) { return {P.x, P.y, P.x.field().one()}; }

  bool at_infinity() const { return z.is_zero(); }
  /// The affine point (x, y); throws on points at infinity.
  AffinePoint to_affine() const;
  /// Image under x -> x^q applied to every coordinate.
  ProjPoint conj() const { return make(x.conj(), y.conj(), z.conj()); }
  bool rational_over_subfield() const { return x.in_subfield() && y.in_subfield() && z.in_subfield(); }

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
};

/// A line aX + bY + cZ = 0 of PG(2,q^2), normalized like ProjPoint.
struct ProjLine {
  Fe a;
  Fe b;
  Fe c;

  static ProjLine make(Fe a, Fe b, Fe c);
  static ProjLine through(const ProjPoint& P, const ProjPoint& Q);
  static ProjLine at_infinity(const Field& f) { return {f.zero(), f.zero(), f.one()}; }

  bool contains(const ProjPoint& P) const { return (a * P.x + b * P.y + c * P.z).is_zero(); }
  /// Common point with another line; throws if the lines coincide.
  ProjPoint meet(const ProjLine& o) const;
  /// All q^2 + 1 points.
  std::vector<ProjPoint> points() const;

  friend bool operator==(const ProjLine&, const ProjLine&) = default;
  friend auto operator<=>(const ProjLine&, const ProjLine&) = default;
};

/// Old line Y = slope*X + intercept with slope outside GF(q).
struct OldLine {
  Fe slope;
  Fe intercept;
  friend bool operator==(const OldLine&, const OldLine&) = default;
  friend auto operator<=>(const OldLine&, const OldLine&) = default;
};

/// New line {(a + lambda u, b + lambda v) : u, v in GF(q)}. Canonical form:
/// lambda is the least element of lambda*GF(q)^* and (a, b) is the least point
/// of the line.
struct NewLine {
  Fe lambda;
  Fe a;
  Fe b;
  friend bool operator==(const NewLine&, const NewLine&) = default;
  friend auto operator<=>(const NewLine&, const NewLine&) = default;
};

using HallLine = std::variant<OldLine, NewLine>;

inline bool is_new(const HallLine& L) { return std::holds_alternative<NewLine>(L); }

/// Infinite point (1 : slope : 0) of the projective Hall plane, slope outside GF(q).
struct OldDirection {
  Fe slope;
  friend bool operator==(const OldDirection&, const OldDirection&) = default;
};

/// Infinite point of the projective Hall plane shared by one parallel class of
/// new lines. Classes are numbered 0..q in order of their canonical lambda.
struct NewDirection {
  unsigned cls = 0;
  friend bool operator==(const NewDirection&, const NewDirection&) = default;
};

using HallPoint = std::variant<AffinePoint, OldDirection, NewDirection>;

class HallPlane {
 public:
  explicit HallPlane(const Field& f);

  const Field& field() const { return *field_; }
  unsigned q() const { return field_->q(); }
  /// q^2, the order of the Hall plane.
  unsigned order() const { return field_->size(); }

  // Derivation set.
  std::vector<ProjPoint> derivation_set() const;
  /// P must lie on Z = 0. True iff y/x lies in GF(q) or x = 0.
  bool in_derivation_set(const ProjPoint& P) const;

  // Lines of the affine Hall plane.
  std::size_t new_line_count() const { return new_lines_.size(); }
  std::size_t old_line_count() const { return static_cast<std::size_t>(nonsub_.size()) * order(); }
  /// All (q+1)q^2 new lines in canonical form, in index order.
  const std::vector<NewLine>& new_lines() const { return new_lines_; }
  std::vector<OldLine> old_lines() const;
  NewLine canonical_new_line(Fe lambda, Fe a, Fe b) const;
  /// Position of a new line in new_lines().
  std::size_t new_line_index(const NewLine& L) const;
  /// Index of the new line of class cls through (x, y), on raw codes.
  std::uint32_t new_line_index(Code x, Code y, unsigned cls) const {
    const Code li = class_lambda_inv_[cls];
    const Code xs = field_->mul(x, li);
    const Code ys = field_->mul(y, li);
    return static_cast<std::uint32_t>(cls * order() + image_index_[field_->sub(xs, field_->conj(xs))] * q() +
                                      image_index_[field_->sub(ys, field_->conj(ys))]);
  }
  /// Parallel classes of new lines, one per coset lambda*GF(q)^*.
  unsigned class_count() const { return q() + 1; }
  Fe class_lambda(unsigned cls) const { return field_->elem(class_lambda_[cls]); }
  unsigned lambda_class(Fe lambda) const;

  /// The unique Hall line through two distinct affine points.
  HallLine line_through(AffinePoint P, AffinePoint Q) const;
  bool contains(const HallLine& L, AffinePoint P) const;
  std::vector<AffinePoint> points(const HallLine& L) const;
  /// The q^2 + q + 1 points of the Baer subplane of a new line.
  std::vector<ProjPoint> baer_subplane_points(const HallLine& L) const;
  /// Image under (x, y) -> (x + s, y + t), in canonical form.
  HallLine translate(const HallLine& L, Fe s, Fe t) const;

  // Projective Hall plane with dense indices. Points: affine (x, y) at
  // x*q^2 + y, then old directions, then new directions. Lines: new lines in
  // new_lines() order, then old lines by (slope, intercept), then the line at
  // infinity.
  std::uint32_t hall_point_count() const { return order() * order() + order() + 1; }
  std::uint32_t hall_line_count() const { return hall_point_count(); }
  std::uint32_t point_index(const HallPoint& P) const;
  HallPoint point_at(std::uint32_t idx) const;
  std::uint32_t affine_index(Code x, Code y) const { return static_cast<std::uint32_t>(x) * order() + y; }
  std::uint32_t line_index(const HallLine& L) const;
  std::uint32_t infinity_line_index() const { return hall_line_count() - 1; }
  void lines_through(std::uint32_t point, std::vector<std::uint32_t>& out) const;
  void points_on(std::uint32_t line, std::vector<std::uint32_t>& out) const;

 private:
  Fe lambda_least(Fe lambda) const;

  const Field* field_;
  std::vector<Code> class_lambda_;
  std::vector<Code> class_lambda_inv_;
  std::vector<std::int32_t> class_of_;       // by code; -1 for zero
  std::vector<std::int32_t> image_index_;    // by code; -1 outside the image of z - conj(z)
  std::vector<Code> image_preimage_;         // a preimage of each image element
  std::vector<std::int32_t> nonsub_index_;   // by code; -1 for subfield elements
  std::vector<Code> nonsub_;                 // codes outside GF(q), ascending
  std::vector<NewLine> new_lines_;
};

}  // namespace hall

#endif  // HALL_PLANE_HPP
