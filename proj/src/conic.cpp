#include "hall/conic.hpp"

#include <algorithm>

namespace hall {

const char* to_string(ConicKind k) {
  switch (k) {
    case ConicKind::Parabola: return "parabola";
    case ConicKind::Hyperbola: return "hyperbola";
    case ConicKind::Ellipse: return "ellipse";
  }
  return "?";
}

const char* to_string(Position p) {
  switch (p) {
    case Position::On: return "on";
    case Position::External: return "external";
    case Position::Internal: return "internal";
  }
  return "?";
}

const char* to_string(ExtensionRelation r) {
  switch (r) {
    case ExtensionRelation::TangentToTangent: return "tangent->tangent";
    case ExtensionRelation::NonTangentToSecant: return "non-tangent->secant";
    case ExtensionRelation::Violation: return "violation";
  }
  return "?";
}

bool in_standard_derivation_set(const ProjPoint& P) {
  if (!P.at_infinity()) throw GeometryError("derivation set test needs a point on Z = 0");
  if (P.y.is_zero()) return true;
  return (P.x / P.y).in_subfield();
}

int ConicClass::infinite_in_d_count() const {
  return static_cast<int>(std::count(infinite_in_d.begin(), infinite_in_d.end(), true));
}

ConicCoeffs make_coeffs(Fe cxx, Fe cxy, Fe cyy, Fe cxz, Fe cyz, Fe czz) {
  ConicCoeffs c{cxx, cxy, cyy, cxz, cyz, czz};
  for (const auto& e : c) {
    if (e.field_ptr() == nullptr || e.field_ptr() != cxx.field_ptr()) throw FieldError("conic coefficients from different fields");
  }
  return c;
}

ConicCoeffs parabola(Fe u, Fe a, Fe b, Fe c) {
  const Field& f = u.field();
  return make_coeffs(f.one(), u + u, u * u, a, b, c);
}

ConicCoeffs hyperbola_xy(Fe d) {
  const Field& f = d.field();
  return make_coeffs(f.zero(), f.one(), f.zero(), f.zero(), f.zero(), -d);
}

ConicCoeffs normalform(Fe c, Fe u, Fe v, Fe w) {
  const Field& f = c.field();
  return make_coeffs(f.one(), f.one(), c, u, v, w);
}

Fe discriminant(const ConicCoeffs& c) {
  const Field& f = c[0].field();
  const Fe four = f.from_int(4);
  const auto& [xx, xy, yy, xz, yz, zz] = c;
  return four * xx * yy * zz + xy * xz * yz - xx * yz * yz - yy * xz * xz - zz * xy * xy;
}

Conic::Conic(const ConicCoeffs& coeffs) : coeffs_(coeffs) {
  const Field& f = field();
  for (const auto& e : coeffs_) {
    if (e.field_ptr() != &f) throw FieldError("conic coefficients from different fields");
  }
  const unsigned n = f.size();
  const Code one = 1;
  // Affine points, then the points on Z = 0.
  for (unsigned x = 0; x < n; ++x) {
    for (unsigned y = 0; y < n; ++y) {
      if (eval(static_cast<Code>(x), static_cast<Code>(y), one) == 0) {
        affine_.push_back({f.elem(static_cast<Code>(x)), f.elem(static_cast<Code>(y))});
      }
    }
  }
  std::vector<ProjPoint> inf;
  for (unsigned x = 0; x < n; ++x) {
    if (eval(static_cast<Code>(x), one, 0) == 0) inf.push_back({f.elem(static_cast<Code>(x)), f.one(), f.zero()});
  }
  if (eval(one, 0, 0) == 0) inf.push_back({f.one(), f.zero(), f.zero()});

  if (affine_.size() + inf.size() != static_cast<std::size_t>(n) + 1) {
    throw DegenerateConic("conic has " + std::to_string(affine_.size() + inf.size()) + " points, expected q^2+1");
  }
  points_.reserve(n + 1);
  for (const auto& P : affine_) points_.push_back(ProjPoint::affine(P));
  for (const auto& P : inf) points_.push_back(P);
  for (const auto& P : points_) {
    const auto g = gradient(P);
    if (g[0].is_zero() && g[1].is_zero() && g[2].is_zero()) throw DegenerateConic("conic has a singular point");
  }
  std::sort(points_.begin(), points_.end());
  std::sort(inf.begin(), inf.end());

  cls_.infinite_points = inf;
  switch (inf.size()) {
    case 0: cls_.kind = ConicKind::Ellipse; break;
    case 1: cls_.kind = ConicKind::Parabola; break;
    case 2: cls_.kind = ConicKind::Hyperbola; break;
    default: throw DegenerateConic("conic meets the line at infinity in more than two points");
  }
  for (const auto& P : inf) cls_.infinite_in_d.push_back(in_standard_derivation_set(P));
  cls_.conjugate = inf.size() == 2 && inf[0].conj() == inf[1];
  if (f.even()) {
    const auto& c = coeffs_;
    cls_.nucleus = ProjPoint::make(c[4], c[3], c[1]);
    cls_.nucleus_in_d = cls_.nucleus->at_infinity() && in_standard_derivation_set(*cls_.nucleus);
  }
}

std::optional<Conic> Conic::try_make(const ConicCoeffs& coeffs) {
  try {
    return Conic(coeffs);
  } catch (const DegenerateConic&) {
    return std::nullopt;
  }
}

Code Conic::eval(Code x, Code y, Code z) const {
  const Field& f = field();
  const auto& c = coeffs_;
  Code r = f.mul(c[0].code(), f.sqr(x));
  r = f.add(r, f.mul(c[1].code(), f.mul(x, y)));
  r = f.add(r, f.mul(c[2].code(), f.sqr(y)));
  r = f.add(r, f.mul(c[3].code(), f.mul(x, z)));
  r = f.add(r, f.mul(c[4].code(), f.mul(y, z)));
  r = f.add(r, f.mul(c[5].code(), f.sqr(z)));
  return r;
}

Fe Conic::eval(const ProjPoint& P) const { return field().elem(eval(P.x.code(), P.y.code(), P.z.code())); }

std::vector<ProjPoint> Conic::points(Ambient a) const {
  if (a == Ambient::Full) return points_;
  std::vector<ProjPoint> out;
  for (const auto& P : points_) {
    if (P.rational_over_subfield()) out.push_back(P);
  }
  return out;
}

std::array<Fe, 3> Conic::gradient(const ProjPoint& P) const {
  const auto& [xx, xy, yy, xz, yz, zz] = coeffs_;
  const Fe two = field().from_int(2);
  return {two * xx * P.x + xy * P.y + xz * P.z, xy * P.x + two * yy * P.y + yz * P.z,
          xz * P.x + yz * P.y + two * zz * P.z};
}

Fe Conic::polar(const ProjPoint& P, const ProjPoint& R) const {
  const auto g = gradient(P);
  return g[0] * R.x + g[1] * R.y + g[2] * R.z;
}

ProjLine Conic::tangent_at(const ProjPoint& P) const {
  if (!contains(P)) throw GeometryError("tangent_at: point is not on the conic");
  const auto g = gradient(P);
  return ProjLine::make(g[0], g[1], g[2]);
}

int Conic::intersection_count(const ProjLine& L, Ambient a) const {
  int count = 0;
  for (const auto& P : L.points()) {
    if (a == Ambient::Subfield && !P.rational_over_subfield()) continue;
    if (contains(P)) ++count;
  }
  return count;
}

bool Conic::has_subfield_coefficients() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Fe c) { return c.in_subfield(); });
}

namespace {

void require_odd(const Conic& K, const char* what) {
  if (K.field().even()) throw GeometryError(std::string(what) + ": external/internal points need q odd");
}

void require_subplane(const Conic& K, const ProjPoint& P, Ambient a) {
  if (a != Ambient::Subfield) return;
  if (!K.has_subfield_coefficients()) throw GeometryError("subplane query on a conic not defined over GF(q)");
  if (!P.rational_over_subfield()) throw GeometryError("subplane query on a point outside PG(2,q)");
}

}  // namespace

int tangents_through(const Conic& K, const ProjPoint& P, Ambient a) {
  require_subplane(K, P, a);
  int count = 0;
  for (const auto& C : K.points(a)) {
    if (C == P) continue;
    if (K.polar(C, P).is_zero()) ++count;
  }
  return count;
}

Position point_position(const Conic& K, const ProjPoint& P, Ambient a) {
  require_odd(K, "point_position");
  require_subplane(K, P, a);
  if (K.contains(P)) return Position::On;
  const int t = tangents_through(K, P, a);
  if (t == 2) return Position::External;
  if (t == 0) return Position::Internal;
  throw GeometryError("point off a conic lies on " + std::to_string(t) + " tangents");
}

Position point_position_by_character(const Conic& K, const ProjPoint& P, Ambient a) {
  require_odd(K, "point_position_by_character");
  require_subplane(K, P, a);
  const Fe value = K.eval(P);
  if (value.is_zero()) return Position::On;
  // P is external iff -det(A) Q(P) is a nonzero square, A the symmetric
  // matrix of Q; discriminant() is 4 det(A).
  const Field& f = K.field();
  const Fe t = -discriminant(K.coeffs()) * value;
  const Domain d = a == Ambient::Subfield ? Domain::Subfield : Domain::Full;
  return f.is_square(t, d) ? Position::External : Position::Internal;
}

DerivationSetCounts classify_derivation_set(const Conic& K) {
  require_odd(K, "classify_derivation_set");
  const Field& f = K.field();
  DerivationSetCounts out;
  auto tally = [&](const ProjPoint& P) {
    switch (point_position(K, P)) {
      case Position::On: ++out.on; break;
      case Position::External: ++out.external; break;
      case Position::Internal: ++out.internal; break;
    }
  };
  for (const Fe& u : f.subfield_elements()) tally({u, f.one(), f.zero()});
  tally({f.one(), f.zero(), f.zero()});
  return out;
}

ExtensionCheck subconic_extension_check(const Conic& K, const ProjLine& r) {
  if (!K.has_subfield_coefficients()) throw GeometryError("subconic check needs a conic over GF(q)");
  if (!(r.a.in_subfield() && r.b.in_subfield() && r.c.in_subfield())) {
    throw GeometryError("subconic check needs a line of PG(2,q)");
  }
  ExtensionCheck out;
  out.subplane_count = K.intersection_count(r, Ambient::Subfield);
  out.extended_count = K.intersection_count(r, Ambient::Full);
  if (out.subplane_count == 1 && out.extended_count == 1) {
    out.relation = ExtensionRelation::TangentToTangent;
  } else if (out.subplane_count != 1 && out.extended_count == 2) {
    out.relation = ExtensionRelation::NonTangentToSecant;
  }
  return out;
}

}  // namespace hall
