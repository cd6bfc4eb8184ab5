// Conics of PG(2,q^2) viewed as point sets of the Hall plane: secant spectra
// against the new lines, collinear triples, arcs and their extensions.
#ifndef HALL_INHERITED_HPP
#define HALL_INHERITED_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hall/conic.hpp"
#include "hall/plane.hpp"

namespace hall {

/// a[i] is the number of new lines meeting the affine part of a conic in
/// exactly i points, 0 <= i <= q+1.
struct SecantSpectrum {
  std::vector<std::uint64_t> a;
  std::uint64_t triples = 0;
  int max_line = 0;
  std::size_t affine_points = 0;

  std::uint64_t at(std::size_t i) const { return i < a.size() ? a[i] : 0; }
  /// Sum of a_i; always (q+1)q^2.
  std::uint64_t lines() const;
  /// Sum of i * a_i; always (q+1) times the number of affine points.
  std::uint64_t incidences() const;
  /// Indices i with a_i > 0.
  std::vector<int> support() const;
};

/// Number of points of the set on each new line, in HallPlane::new_lines()
/// order. New lines may be processed in any order; partial counts from
/// disjoint point subsets merge by addition.
std::vector<std::uint16_t> new_line_counts(const HallPlane& H, std::span<const AffinePoint> pts, unsigned jobs = 1);
SecantSpectrum spectrum_from_counts(const HallPlane& H, std::span<const std::uint16_t> counts, std::size_t affine_points);
SecantSpectrum secant_spectrum(const HallPlane& H, const Conic& K, unsigned jobs = 1);
/// Collinear triples of the affine part on new lines, sum of C(i,3) a_i.
std::uint64_t collinear_triples(const HallPlane& H, const Conic& K);

/// Affine points of K as Hall points; with adjoin_infinite, also the infinite
/// points of K outside D (as old directions). Points of K in D have no
/// counterpart among the points of the projective Hall plane and are never
/// adjoined.
std::vector<HallPoint> inherited_point_set(const HallPlane& H, const Conic& K, bool adjoin_infinite);

struct ArcReport {
  std::size_t size = 0;
  int max_line = 0;
  bool is_arc = false;
  /// Arc contained in no larger arc. False for non-arcs.
  bool is_complete = false;
  /// Points whose addition keeps the set an arc, ascending by index.
  std::vector<HallPoint> extension_points;
  /// q even and |S| = q^2: two successive extensions reach a hyperoval.
  bool hyperoval_reachable = false;
  std::optional<std::pair<HallPoint, HallPoint>> hyperoval_pair;
};

/// Arc test over every line of the projective Hall plane, completeness over all
/// q^4 + q^2 + 1 points, and hyperoval search over all extension pairs.
ArcReport arc_report(const HallPlane& H, std::span<const HallPoint> S);

/// Points P of S such that every Hall line through P has at most one other point of S.
std::vector<HallPoint> internal_nucleus_set(const HallPlane& H, std::span<const HallPoint> S);

/// For an affine point P of K: how many of the q+1 new lines through P meet
/// the affine part of K in i points.
std::map<int, int> per_point_line_distribution(const HallPlane& H, const Conic& K, AffinePoint P);

struct TangentWitness {
  /// |L ∩ K| on the affine part.
  int intersection = 0;
  /// Points P of L ∩ K whose tangent meets D.
  std::vector<AffinePoint> witnesses;
  /// The witness when |L ∩ K| = 3 and it is unique.
  std::optional<AffinePoint> unique() const;
};

/// Points of a new line on K whose tangent meets the derivation set. q even.
TangentWitness three_secant_tangent_witness(const HallPlane& H, const Conic& K, const NewLine& L);

}  // namespace hall

#endif  // HALL_INHERITED_HPP
