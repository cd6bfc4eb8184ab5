#include "hall/plane.hpp"

#include <algorithm>

namespace hall {
namespace {

// Normalizes a nonzero triple so its last nonzero entry is 1.
void normalize(Fe& x, Fe& y, Fe& z) {
  Fe s;
  if (!z.is_zero()) {
    s = z.inv();
  } else if (!y.is_zero()) {
    s = y.inv();
  } else if (!x.is_zero()) {
    s = x.inv();
  } else {
    throw GeometryError("all homogeneous coordinates are zero");
  }
  x *= s;
  y *= s;
  z *= s;
}

}  // namespace

ProjPoint ProjPoint::make(Fe x, Fe y, Fe z) {
  normalize(x, y, z);
  return {x, y, z};
}

AffinePoint ProjPoint::to_affine() const {
  if (at_infinity()) throw GeometryError("point at infinity has no affine coordinates");
  return {x, y};
}

ProjLine ProjLine::make(Fe a, Fe b, Fe c) {
  normalize(a, b, c);
  return {a, b, c};
}

ProjLine ProjLine::through(const ProjPoint& P, const ProjPoint& Q) {
  if (P == Q) throw GeometryError("line through a single point is not unique");
  return make(P.y * Q.z - P.z * Q.y, P.z * Q.x - P.x * Q.z, P.x * Q.y - P.y * Q.x);
}

ProjPoint ProjLine::meet(const ProjLine& o) const {
  if (*this == o) throw GeometryError("coincident lines have no unique meet");
  return ProjPoint::make(b * o.c - c * o.b, c * o.a - a * o.c, a * o.b - b * o.a);
}

std::vector<ProjPoint> ProjLine::points() const {
  const Field& f = a.field();
  // Two distinct points span the line; walk P + t Q and add Q.
  std::vector<ProjPoint> basis;
  const ProjPoint cands[] = {{f.one(), f.zero(), f.zero()}, {f.zero(), f.one(), f.zero()},
                             {f.zero(), f.zero(), f.one()}};
  // Points on the line: the kernel of (a, b, c). Pick two independent ones.
  if (!c.is_zero()) {
    basis.push_back(ProjPoint::make(c, f.zero(), -a));
    basis.push_back(ProjPoint::make(f.zero(), c, -b));
  } else if (!b.is_zero()) {
    basis.push_back(ProjPoint::make(b, -a, f.zero()));
    basis.push_back(cands[2]);
  } else {
    basis.push_back(cands[1]);
    basis.push_back(cands[2]);
  }
  std::vector<ProjPoint> out;
  out.reserve(f.size() + 1);
  const ProjPoint& P = basis[0];
  const ProjPoint& Q = basis[1];
  for (const Fe& t : f.elements()) out.push_back(ProjPoint::make(P.x + t * Q.x, P.y + t * Q.y, P.z + t * Q.z));
  out.push_back(Q);
  std::sort(out.begin(), out.end());
  return out;
}

HallPlane::HallPlane(const Field& f) : field_(&f) {
  const unsigned n = f.size();
  const unsigned q = f.q();

  class_of_.assign(n, -1);
  for (unsigned c = 1; c < n; ++c) {
    if (class_of_[c] >= 0) continue;
    const auto cls = static_cast<std::int32_t>(class_lambda_.size());
    class_lambda_.push_back(static_cast<Code>(c));
    class_lambda_inv_.push_back(f.inv(static_cast<Code>(c)));
    for (Code s : f.subfield_codes()) {
      if (s != 0) class_of_[f.mul(static_cast<Code>(c), s)] = cls;
    }
  }
  if (class_lambda_.size() != q + 1) throw GeometryError("unexpected number of new-line directions");

  // z -> z - conj(z) is Z_p-linear with kernel GF(q); its image has q elements.
  image_index_.assign(n, -1);
  for (unsigned z = 0; z < n; ++z) {
    const Code img = f.sub(static_cast<Code>(z), f.conj(static_cast<Code>(z)));
    if (image_index_[img] < 0) {
      image_index_[img] = 0;
    }
  }
  {
    std::int32_t next = 0;
    for (unsigned c = 0; c < n; ++c) {
      if (image_index_[c] >= 0) image_index_[c] = next++;
    }
    image_preimage_.assign(static_cast<std::size_t>(next), 0);
    std::vector<bool> seen(static_cast<std::size_t>(next), false);
    for (unsigned z = 0; z < n; ++z) {
      const auto idx = image_index_[f.sub(static_cast<Code>(z), f.conj(static_cast<Code>(z)))];
      if (!seen[idx]) {
        seen[idx] = true;
        image_preimage_[idx] = static_cast<Code>(z);
      }
    }
    if (static_cast<unsigned>(next) != q) throw GeometryError("unexpected quotient size");
  }

  nonsub_index_.assign(n, -1);
  for (unsigned c = 0; c < n; ++c) {
    if (!f.in_subfield(static_cast<Code>(c))) {
      nonsub_index_[c] = static_cast<std::int32_t>(nonsub_.size());
      nonsub_.push_back(static_cast<Code>(c));
    }
  }

  new_lines_.reserve(static_cast<std::size_t>(q + 1) * n);
  for (unsigned cls = 0; cls <= q; ++cls) {
    const Code lam = class_lambda_[cls];
    for (unsigned i = 0; i < q; ++i) {
      for (unsigned j = 0; j < q; ++j) {
        const Code x = f.mul(lam, image_preimage_[i]);
        const Code y = f.mul(lam, image_preimage_[j]);
        new_lines_.push_back(canonical_new_line(f.elem(lam), f.elem(x), f.elem(y)));
      }
    }
  }
}

std::vector<ProjPoint> HallPlane::derivation_set() const {
  const Field& f = *field_;
  std::vector<ProjPoint> out;
  for (const Fe& u : f.subfield_elements()) out.push_back({u, f.one(), f.zero()});
  out.push_back({f.one(), f.zero(), f.zero()});
  std::sort(out.begin(), out.end());
  return out;
}

bool HallPlane::in_derivation_set(const ProjPoint& P) const {
  if (!P.at_infinity()) throw GeometryError("derivation set test needs a point on Z = 0");
  const ProjPoint N = ProjPoint::make(P.x, P.y, P.z);
  if (N.y.is_zero()) return true;
  return N.x.in_subfield();
}

std::vector<OldLine> HallPlane::old_lines() const {
  std::vector<OldLine> out;
  out.reserve(old_line_count());
  for (Code m : nonsub_) {
    for (const Fe& b : field_->elements()) out.push_back({field_->elem(m), b});
  }
  return out;
}

Fe HallPlane::lambda_least(Fe lambda) const {
  if (lambda.is_zero()) throw GeometryError("new line direction must be nonzero");
  return field_->elem(class_lambda_[static_cast<std::size_t>(class_of_[lambda.code()])]);
}

unsigned HallPlane::lambda_class(Fe lambda) const {
  if (lambda.is_zero()) throw GeometryError("new line direction must be nonzero");
  return static_cast<unsigned>(class_of_[lambda.code()]);
}

NewLine HallPlane::canonical_new_line(Fe lambda, Fe a, Fe b) const {
  const Fe lam = lambda_least(lambda);
  // The x- and y-coordinates range independently over a + lam*GF(q) and
  // b + lam*GF(q), so the least point is (least x, least y).
  Fe best_a = a;
  Fe best_b = b;
  for (Code u : field_->subfield_codes()) {
    const Fe lu = lam * field_->elem(u);
    best_a = std::min(best_a, a + lu);
    best_b = std::min(best_b, b + lu);
  }
  return {lam, best_a, best_b};
}

std::size_t HallPlane::new_line_index(const NewLine& L) const {
  return new_line_index(L.a.code(), L.b.code(), lambda_class(L.lambda));
}

HallLine HallPlane::line_through(AffinePoint P, AffinePoint Q) const {
  if (P == Q) throw GeometryError("line_through needs two distinct points");
  const Fe dx = Q.x - P.x;
  const Fe dy = Q.y - P.y;
  if (dx.is_zero()) return canonical_new_line(dy, P.x, P.y);
  const Fe m = dy / dx;
  if (m.in_subfield()) return canonical_new_line(dx, P.x, P.y);
  return OldLine{m, P.y - m * P.x};
}

bool HallPlane::contains(const HallLine& L, AffinePoint P) const {
  if (const auto* o = std::get_if<OldLine>(&L)) return P.y == o->slope * P.x + o->intercept;
  const auto& nl = std::get<NewLine>(L);
  const Fe li = nl.lambda.inv();
  return ((P.x - nl.a) * li).in_subfield() && ((P.y - nl.b) * li).in_subfield();
}

std::vector<AffinePoint> HallPlane::points(const HallLine& L) const {
  std::vector<AffinePoint> out;
  out.reserve(order());
  if (const auto* o = std::get_if<OldLine>(&L)) {
    for (const Fe& x : field_->elements()) out.push_back({x, o->slope * x + o->intercept});
  } else {
    const auto& nl = std::get<NewLine>(L);
    for (const Fe& u : field_->subfield_elements()) {
      for (const Fe& v : field_->subfield_elements()) out.push_back({nl.a + nl.lambda * u, nl.b + nl.lambda * v});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ProjPoint> HallPlane::baer_subplane_points(const HallLine& L) const {
  if (!is_new(L)) throw GeometryError("Baer subplanes belong to new lines only");
  std::vector<ProjPoint> out;
  for (const auto& P : points(L)) out.push_back(ProjPoint::affine(P));
  for (const auto& P : derivation_set()) out.push_back(P);
  std::sort(out.begin(), out.end());
  return out;
}

HallLine HallPlane::translate(const HallLine& L, Fe s, Fe t) const {
  if (const auto* o = std::get_if<OldLine>(&L)) return OldLine{o->slope, o->intercept + t - o->slope * s};
  const auto& nl = std::get<NewLine>(L);
  return canonical_new_line(nl.lambda, nl.a + s, nl.b + t);
}

std::uint32_t HallPlane::point_index(const HallPoint& P) const {
  const unsigned n = order();
  if (const auto* a = std::get_if<AffinePoint>(&P)) return affine_index(a->x.code(), a->y.code());
  if (const auto* o = std::get_if<OldDirection>(&P)) {
    const auto i = nonsub_index_[o->slope.code()];
    if (i < 0) throw GeometryError("old direction slope must lie outside GF(q)");
    return n * n + static_cast<std::uint32_t>(i);
  }
  const auto& nd = std::get<NewDirection>(P);
  if (nd.cls > q()) throw GeometryError("new direction class out of range");
  return n * n + static_cast<std::uint32_t>(nonsub_.size()) + nd.cls;
}

HallPoint HallPlane::point_at(std::uint32_t idx) const {
  const unsigned n = order();
  if (idx < n * n) return AffinePoint{field_->elem(static_cast<Code>(idx / n)), field_->elem(static_cast<Code>(idx % n))};
  idx -= n * n;
  if (idx < nonsub_.size()) return OldDirection{field_->elem(nonsub_[idx])};
  idx -= static_cast<std::uint32_t>(nonsub_.size());
  if (idx > q()) throw GeometryError("point index out of range");
  return NewDirection{idx};
}

std::uint32_t HallPlane::line_index(const HallLine& L) const {
  if (const auto* nl = std::get_if<NewLine>(&L)) return static_cast<std::uint32_t>(new_line_index(*nl));
  const auto& o = std::get<OldLine>(L);
  const auto i = nonsub_index_[o.slope.code()];
  if (i < 0) throw GeometryError("old line slope must lie outside GF(q)");
  return static_cast<std::uint32_t>(new_lines_.size() + static_cast<std::size_t>(i) * order() + o.intercept.code());
}

void HallPlane::lines_through(std::uint32_t point, std::vector<std::uint32_t>& out) const {
  const Field& f = *field_;
  const unsigned n = order();
  const auto old_base = static_cast<std::uint32_t>(new_lines_.size());
  out.clear();
  if (point < n * n) {
    const auto x = static_cast<Code>(point / n);
    const auto y = static_cast<Code>(point % n);
    for (unsigned c = 0; c < class_count(); ++c) out.push_back(new_line_index(x, y, c));
    for (std::size_t i = 0; i < nonsub_.size(); ++i) {
      const Code b = f.sub(y, f.mul(nonsub_[i], x));
      out.push_back(old_base + static_cast<std::uint32_t>(i * n) + b);
    }
    return;
  }
  const std::uint32_t rel = point - n * n;
  if (rel < nonsub_.size()) {
    for (unsigned b = 0; b < n; ++b) out.push_back(old_base + rel * n + b);
  } else {
    const std::uint32_t cls = rel - static_cast<std::uint32_t>(nonsub_.size());
    for (unsigned j = 0; j < n; ++j) out.push_back(cls * n + j);
  }
  out.push_back(infinity_line_index());
}

void HallPlane::points_on(std::uint32_t line, std::vector<std::uint32_t>& out) const {
  const Field& f = *field_;
  const unsigned n = order();
  out.clear();
  if (line == infinity_line_index()) {
    for (std::uint32_t i = n * n; i < hall_point_count(); ++i) out.push_back(i);
    return;
  }
  if (line < new_lines_.size()) {
    const NewLine& L = new_lines_[line];
    for (Code u : f.subfield_codes()) {
      const Code x = f.add(L.a.code(), f.mul(L.lambda.code(), u));
      for (Code v : f.subfield_codes()) out.push_back(affine_index(x, f.add(L.b.code(), f.mul(L.lambda.code(), v))));
    }
    out.push_back(n * n + static_cast<std::uint32_t>(nonsub_.size()) + line / n);
    return;
  }
  const std::uint32_t rel = line - static_cast<std::uint32_t>(new_lines_.size());
  const std::uint32_t i = rel / n;
  const auto b = static_cast<Code>(rel % n);
  const Code m = nonsub_[i];
  for (unsigned x = 0; x < n; ++x) out.push_back(affine_index(static_cast<Code>(x), f.add(f.mul(m, static_cast<Code>(x)), b)));
  out.push_back(n * n + i);
}

}  // namespace hall
