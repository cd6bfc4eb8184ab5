#include "hall/oracles.hpp"

#include <algorithm>

namespace hall {

ProjPoint second_intersection(const Conic& K, const ProjPoint& A, const ProjPoint& P) {
  // Q(A + tP) = t B(A, P) + t^2 Q(P).
  const Fe qp = K.eval(P);
  if (qp.is_zero()) throw GeometryError("second_intersection: direction point lies on the conic");
  const Fe t = -K.polar(A, P) / qp;
  if (t.is_zero()) return A;
  return ProjPoint::make(A.x + t * P.x, A.y + t * P.y, A.z + t * P.z);
}

TriangleCount count_inscribed_triangles(const Conic& K, const ProjLine& r, const std::array<ProjPoint, 3>& T,
                                        Ambient a) {
  if (T[0] == T[1] || T[0] == T[2] || T[1] == T[2]) throw GeometryError("triangle oracle: points must be distinct");
  for (const auto& P : T) {
    if (!r.contains(P)) throw GeometryError("triangle oracle: point not on r");
    if (K.contains(P)) throw GeometryError("triangle oracle: point on the conic");
  }
  if (a == Ambient::Subfield) {
    if (!K.has_subfield_coefficients()) throw GeometryError("triangle oracle: conic not defined over GF(q)");
    if (!(r.a.in_subfield() && r.b.in_subfield() && r.c.in_subfield())) {
      throw GeometryError("triangle oracle: line not in PG(2,q)");
    }
    for (const auto& P : T) {
      if (!P.rational_over_subfield()) throw GeometryError("triangle oracle: point not in PG(2,q)");
    }
  }
  TriangleCount out;
  for (const auto& A1 : K.points(a)) {
    if (r.contains(A1)) continue;
    const ProjPoint A2 = second_intersection(K, A1, T[2]);
    const ProjPoint A3 = second_intersection(K, A1, T[1]);
    if (A2 == A1 || A3 == A1 || A2 == A3) continue;
    if (r.contains(A2) || r.contains(A3)) continue;
    if (!ProjLine::through(A2, A3).contains(T[0])) continue;
    ++out.count;
    out.triangles.push_back({{A1, A2, A3}});
  }
  return out;
}

ThreeSecantParabolas count_three_secant_parabolas(const HallPlane& H, const NewLine& L, AffinePoint P1,
                                                  AffinePoint P2, AffinePoint P3) {
  const Field& f = H.field();
  if (f.even()) throw GeometryError("count_three_secant_parabolas needs q odd");
  if (P1 == P2 || P1 == P3 || P2 == P3) throw GeometryError("count_three_secant_parabolas: points must be distinct");
  for (const auto& P : {P1, P2, P3}) {
    if (!H.contains(L, P)) throw GeometryError("count_three_secant_parabolas: point not on the line");
  }
  const std::array<AffinePoint, 3> pts{P1, P2, P3};
  // Rows (x, y, 1); the system is singular iff the points are collinear in PG(2,q^2).
  auto det3 = [](const std::array<std::array<Fe, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  std::array<std::array<Fe, 3>, 3> M;
  for (int i = 0; i < 3; ++i) M[i] = {pts[i].x, pts[i].y, f.one()};
  const Fe det = det3(M);
  if (det.is_zero()) throw GeometryError("count_three_secant_parabolas: points lie on one line of PG(2,q^2)");

  const auto line_pts = H.points(L);
  ThreeSecantParabolas out;
  for (const Fe& u : f.elements()) {
    if (u.in_subfield()) continue;
    std::array<Fe, 3> rhs;
    for (int i = 0; i < 3; ++i) {
      const Fe s = pts[i].x + u * pts[i].y;
      rhs[i] = -(s * s);
    }
    // Cramer's rule for a x_i + b y_i + c = rhs_i.
    std::array<Fe, 3> sol;
    for (int j = 0; j < 3; ++j) {
      auto Mj = M;
      for (int i = 0; i < 3; ++i) Mj[i][j] = rhs[i];
      sol[j] = det3(Mj) / det;
    }
    const auto K = Conic::try_make(parabola(u, sol[0], sol[1], sol[2]));
    if (!K) continue;
    int on = 0;
    for (const auto& P : line_pts) {
      if (K->contains(P)) ++on;
    }
    if (on == 3) {
      ++out.exactly_three;
      out.u_values.push_back(u);
    } else if (on == 4) {
      ++out.four;
    }
  }
  return out;
}

NBetaRoots count_rational_roots_nbeta(Fe beta) {
  const Field& f = beta.field();
  if (!f.even()) throw GeometryError("N_beta needs q even");
  if (beta.is_zero()) throw GeometryError("N_beta needs beta != 0");
  const Fe n = beta * beta.conj();
  const Fe t = beta + beta.conj();
  // Coefficients c0 + c1 T + c2 T^2 + T^3, all in GF(q).
  std::vector<Fe> poly{n * t, n, f.zero(), f.one()};
  NBetaRoots out;
  for (const Fe& r : f.subfield_elements()) {
    // Divide out (T - r) while it remains a root.
    while (poly.size() > 1) {
      std::vector<Fe> quot(poly.size() - 1, f.zero());
      Fe carry = f.zero();
      for (std::size_t i = poly.size() - 1; i-- > 0;) {
        carry = poly[i + 1] + carry * r;
        quot[i] = carry;
      }
      if (!(poly[0] + quot[0] * r).is_zero()) break;
      out.roots.push_back(r);
      poly = std::move(quot);
    }
  }
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

bool MoebiusMap::is_rational() const { return a.in_subfield() && b.in_subfield() && c.in_subfield() && d.in_subfield(); }

bool MoebiusMap::is_invertible() const { return !(a * d - b * c).is_zero(); }

std::array<Fe, 3> MoebiusMap::transform(Fe beta, Fe gamma) const {
  const Fe two = beta.field().from_int(2);
  return {a * a + beta * a * c + gamma * c * c, two * a * b + beta * (a * d + b * c) + two * gamma * c * d,
          b * b + beta * b * d + gamma * d * d};
}

const char* to_string(QuadraticHypothesis h) {
  switch (h) {
    case QuadraticHypothesis::Holds: return "holds";
    case QuadraticHypothesis::RepeatedRoot: return "repeated root";
    case QuadraticHypothesis::RootInSubfield: return "root in GF(q)";
    case QuadraticHypothesis::ConjugateRoots: return "roots conjugate under x -> x^q";
  }
  return "?";
}

QuarticExtension::QuarticExtension(const Field& base) : base_(&base) {
  big_ = std::make_unique<Field>(FieldSpec::standard(base.p(), 2 * base.k()));
  const auto& m = base.spec().modulus;
  auto eval_m = [&](Fe x) {
    Fe acc = big_->zero();
    for (std::size_t i = m.size(); i-- > 0;) acc = acc * x + big_->from_int(m[i]);
    return acc;
  };
  Fe alpha = big_->zero();
  bool found = false;
  for (const Fe& x : big_->elements()) {
    if (eval_m(x).is_zero()) {
      alpha = x;
      found = true;
      break;
    }
  }
  if (!found) throw FieldError("no root of the GF(q^2) modulus in GF(q^4)");
  image_.resize(base.size());
  for (unsigned c = 0; c < base.size(); ++c) {
    const auto co = base.coords(static_cast<Code>(c));
    Fe acc = big_->zero();
    for (std::size_t i = co.size(); i-- > 0;) acc = acc * alpha + big_->from_int(co[i]);
    image_[c] = acc.code();
  }
}

Fe QuarticExtension::embed(Fe x) const {
  if (x.field_ptr() != base_) throw FieldError("embed: element of another field");
  return big_->elem(image_[x.code()]);
}

Fe QuarticExtension::frobenius_q(Fe x) const { return x.pow(base_->q()); }

QuadraticRoots quadratic_roots(const QuarticExtension& ext, Fe beta, Fe gamma) {
  const Fe B = ext.embed(beta);
  const Fe C = ext.embed(gamma);
  std::vector<Fe> roots;
  for (const Fe& x : ext.field().elements()) {
    if ((x * x + B * x + C).is_zero()) roots.push_back(x);
  }
  QuadraticRoots out;
  if (roots.size() == 1) {
    out.roots = {roots[0], roots[0]};
    out.hypothesis = QuadraticHypothesis::RepeatedRoot;
    return out;
  }
  if (roots.size() != 2) throw FieldError("quadratic without roots in GF(q^4)");
  out.roots = {roots[0], roots[1]};
  const Fe c0 = ext.frobenius_q(roots[0]);
  const Fe c1 = ext.frobenius_q(roots[1]);
  if (c0 == roots[0] || c1 == roots[1]) {
    out.hypothesis = QuadraticHypothesis::RootInSubfield;
  } else if (c0 == roots[1]) {
    out.hypothesis = QuadraticHypothesis::ConjugateRoots;
  }
  return out;
}

NormalForm normalize_quadratic(Fe beta, Fe gamma, const QuarticExtension* ext) {
  const Field& f = beta.field();
  if (!f.even()) throw GeometryError("normalize_quadratic needs q even");
  if (gamma.field_ptr() != &f) throw FieldError("normalize_quadratic: coefficients from different fields");
  std::unique_ptr<QuarticExtension> own;
  if (ext == nullptr) {
    own = std::make_unique<QuarticExtension>(f);
    ext = own.get();
  } else if (&ext->base() != &f) {
    throw FieldError("normalize_quadratic: extension built over another field");
  }
  const auto roots = quadratic_roots(*ext, beta, gamma);
  if (roots.hypothesis != QuadraticHypothesis::Holds) {
    throw HypothesisViolated(roots.hypothesis, std::string("normalize_quadratic: ") + to_string(roots.hypothesis));
  }

  const Fe zero = f.zero();
  const Fe one = f.one();
  MoebiusMap m{one, zero, zero, one};
  if (beta.in_subfield()) {
    m = {beta, zero, zero, one};
  } else if ((gamma / beta).in_subfield()) {
    m = {zero, gamma / beta, one, zero};
  } else {
    // 1 = t1 beta + t2 gamma with t1, t2 in GF(q).
    const Fe det = beta * gamma.conj() - gamma * beta.conj();
    const Fe t1 = (gamma.conj() - gamma) / det;
    const Fe s = *f.sqrt((beta - beta.conj()) / det);
    const Fe b0 = (t1 + s).inv();
    m = {b0, one, s * b0, one + s};
  }
  const auto [A, B, C] = m.transform(beta, gamma);
  if (A.is_zero() || A != B) throw GeometryError("normalize_quadratic: map does not reach X^2 + X + w");
  NormalForm out{m, C / A};
  if (out.w.in_subfield()) throw GeometryError("normalize_quadratic: w lies in GF(q)");
  return out;
}

AffinePoint verify_kv_rational_point(Fe u) {
  const Field& f = u.field();
  if (f.even()) throw GeometryError("verify_kv_rational_point needs q odd");
  if (u.in_subfield()) throw GeometryError("verify_kv_rational_point needs u outside GF(q)");
  const Fe ub = u.conj();
  const Fe s = u + ub;
  const Fe two = f.from_int(2);
  const Fe den = (u - ub) * (u - ub);
  const AffinePoint P{s * (two * u * ub - s) / den, s * (two - s) / den};
  if (!P.x.in_subfield() || !P.y.in_subfield()) throw GeometryError("verify_kv_rational_point: point not GF(q)-rational");
  const Fe l = P.x + u * P.y;
  if (!(l * l + P.x + u * u * P.y).is_zero()) throw GeometryError("verify_kv_rational_point: point not on the parabola");
  return P;
}

std::uint64_t enumerate_collinear_triples(const HallPlane& H, const Conic& K) {
  const auto& pts = K.affine_points();
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const HallLine L = H.line_through(pts[i], pts[j]);
      if (!is_new(L)) continue;
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        if (H.contains(L, pts[k])) ++count;
      }
    }
  }
  return count;
}

}  // namespace hall
