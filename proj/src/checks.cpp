#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "hall/census.hpp"
#include "hall/oracles.hpp"

namespace hall {
namespace {

using Guard = std::function<std::optional<std::string>(const Field&)>;
using Rule = std::function<ConicCheckOutcome(const Context&, const Conic&)>;
using Instances = std::function<std::vector<ConicCoeffs>(const Context&)>;

std::uint64_t choose(std::uint64_t n, unsigned k) {
  if (n < k) return 0;
  std::uint64_t r = 1;
  for (unsigned i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

long long ll(std::uint64_t v) { return static_cast<long long>(v); }

Quantity eq(std::string key, long long expected, long long actual) { return {std::move(key), expected, actual, "=="}; }
Quantity at_most(std::string key, long long bound, long long actual) { return {std::move(key), bound, actual, "<="}; }
Quantity at_least(std::string key, long long bound, long long actual) { return {std::move(key), bound, actual, ">="}; }
Quantity info(std::string key, long long actual) { return {std::move(key), actual, actual, "info"}; }

ConicCheckOutcome not_applicable(std::string reason) { return {false, std::move(reason), {}}; }
ConicCheckOutcome applies(std::vector<Quantity> q) { return {true, "", std::move(q)}; }

Guard any_q() {
  return [](const Field&) -> std::optional<std::string> { return std::nullopt; };
}
Guard odd_q() {
  return [](const Field& f) -> std::optional<std::string> {
    if (f.even()) return "needs q odd";
    return std::nullopt;
  };
}
Guard even_q() {
  return [](const Field& f) -> std::optional<std::string> {
    if (!f.even()) return "needs q even";
    return std::nullopt;
  };
}
Guard both(Guard a, Guard b) {
  return [a, b](const Field& f) -> std::optional<std::string> {
    if (auto r = a(f)) return r;
    return b(f);
  };
}
Guard q_at_most(unsigned bound, std::string why) {
  return [bound, why](const Field& f) -> std::optional<std::string> {
    if (f.q() > bound) return "needs q <= " + std::to_string(bound) + " (" + why + ")";
    return std::nullopt;
  };
}
Guard q_at_least(unsigned bound) {
  return [bound](const Field& f) -> std::optional<std::string> {
    if (f.q() < bound) return "needs q >= " + std::to_string(bound);
    return std::nullopt;
  };
}

std::vector<Fe> nonsub_elements(const Field& f) {
  std::vector<Fe> out;
  for (const Fe& x : f.elements()) {
    if (!x.in_subfield()) out.push_back(x);
  }
  return out;
}

std::vector<Fe> first(std::vector<Fe> v, std::size_t n) {
  if (v.size() > n) v.resize(n);
  return v;
}

DerivationSetCounts d_counts(const Conic& K) { return classify_derivation_set(K); }

bool no_infinite_point_in_d(const Conic& K) { return K.classification().infinite_in_d_count() == 0; }

bool ellipse_or_nonconjugate_hyperbola(const Conic& K) {
  const auto& c = K.classification();
  return c.kind == ConicKind::Ellipse || (c.kind == ConicKind::Hyperbola && !c.conjugate);
}

std::vector<std::uint32_t> all_hall_line_counts(const HallPlane& H, const Conic& K) {
  std::vector<std::uint32_t> counts(H.hall_line_count(), 0);
  std::vector<std::uint32_t> lines;
  for (const auto& P : K.affine_points()) {
    H.lines_through(H.affine_index(P.x.code(), P.y.code()), lines);
    for (auto L : lines) ++counts[L];
  }
  return counts;
}

/// Lines of the subplane PG(2,q).
std::vector<ProjLine> subplane_lines(const Field& f) {
  std::set<ProjLine> lines;
  const auto sub = f.subfield_elements();
  for (const Fe& a : sub) {
    for (const Fe& b : sub) {
      for (const Fe& c : sub) {
        if (a.is_zero() && b.is_zero() && c.is_zero()) continue;
        lines.insert(ProjLine::make(a, b, c));
      }
    }
  }
  return {lines.begin(), lines.end()};
}

std::vector<ConicCoeffs> subplane_conics(const Field& f) {
  const Fe z = f.zero();
  const Fe o = f.one();
  return {hyperbola_xy(o), parabola(z, z, -o, z)};
}

// ---------------------------------------------------------------------------
// Conic rules.

ConicCheckOutcome rule_spectrum_sanity(const Context& ctx, const Conic& K) {
  const HallPlane& H = ctx.plane;
  const std::uint64_t q = H.q();
  const auto s = secant_spectrum(H, K, ctx.jobs);
  const std::uint64_t n = K.affine_points().size();
  std::uint64_t triples = 0;
  for (std::size_t i = 0; i < s.a.size(); ++i) triples += choose(i, 3) * s.a[i];
  const auto all = all_hall_line_counts(H, K);
  std::uint64_t pairs = 0;
  std::uint32_t old_max = 0;
  for (std::uint32_t L = 0; L < all.size(); ++L) {
    pairs += choose(all[L], 2);
    if (L >= H.new_line_count() && L != H.infinity_line_index()) old_max = std::max(old_max, all[L]);
  }
  return applies({eq("lines", ll((q + 1) * q * q), ll(s.lines())), eq("incidences", ll((q + 1) * n), ll(s.incidences())),
                  eq("pairs_on_hall_lines", ll(choose(n, 2)), ll(pairs)), eq("triples", ll(triples), ll(s.triples)),
                  at_most("old_line_max", 2, old_max)});
}

ConicCheckOutcome rule_a3_a4_parabola_odd(const Context& ctx, const Conic& K) {
  if (K.kind() != ConicKind::Parabola) return not_applicable("not a parabola");
  if (!no_infinite_point_in_d(K)) return not_applicable("infinite point in D");
  const long long q = ctx.plane.q();
  const auto s = secant_spectrum(ctx.plane, K, ctx.jobs);
  return applies({eq("a3", (q * q - 1) / 2, ll(s.at(3))), eq("a4", (q - 3) * (q * q - 1) / 24, ll(s.at(4))),
                  eq("a3+4a4", ll(choose(q + 1, 3)), ll(s.at(3) + 4 * s.at(4)))});
}

ConicCheckOutcome rule_prop_parabola_external(const Context&, const Conic& K) {
  if (K.kind() != ConicKind::Parabola) return not_applicable("not a parabola");
  const auto d = d_counts(K);
  return applies({eq("internal_in_d", 0, d.internal), info("external_in_d", d.external)});
}

ConicCheckOutcome rule_even_parabola_support(const Context& ctx, const Conic& K) {
  const auto& c = K.classification();
  if (c.kind != ConicKind::Parabola) return not_applicable("not a parabola");
  if (c.infinite_in_d[0] || c.nucleus_in_d) return not_applicable("infinite point or nucleus in D");
  const auto s = secant_spectrum(ctx.plane, K, ctx.jobs);
  std::uint64_t outside = 0;
  for (std::size_t i = 0; i < s.a.size(); ++i) {
    if (i != 0 && i != 1 && i != 2 && i != 4) outside += s.a[i];
  }
  return applies({eq("lines_outside_0124", 0, ll(outside)), info("a4", ll(s.at(4)))});
}

ConicCheckOutcome rule_even_parabola_conjugate(const Context& ctx, const Conic& K) {
  const auto& c = K.classification();
  if (c.kind != ConicKind::Parabola) return not_applicable("not a parabola");
  if (c.infinite_in_d[0] || c.nucleus_in_d) return not_applicable("infinite point or nucleus in D");
  if (!(c.nucleus->conj() == c.infinite_points[0])) return not_applicable("nucleus not conjugate to the infinite point");
  const HallPlane& H = ctx.plane;
  const long long q = H.q();
  const long long m = q * q * (q + 1);
  const auto counts = new_line_counts(H, K.affine_points(), ctx.jobs);
  const auto s = spectrum_from_counts(H, counts, K.affine_points().size());
  std::uint64_t others = 0;
  for (std::size_t i = 0; i < s.a.size(); ++i) {
    if (i != 0 && i != 1 && i != 4) others += s.a[i];
  }
  int bad_points = 0;
  for (const auto& P : K.affine_points()) {
    std::map<int, int> dist;
    for (unsigned cl = 0; cl < H.class_count(); ++cl) ++dist[counts[H.new_line_index(P.x.code(), P.y.code(), cl)]];
    const std::map<int, int> want{{1, static_cast<int>(2 * (q + 1) / 3)}, {4, static_cast<int>((q + 1) / 3)}};
    if (dist != want) ++bad_points;
  }
  return applies({eq("a0", m / 4, ll(s.at(0))), eq("a1", 2 * m / 3, ll(s.at(1))), eq("a4", m / 12, ll(s.at(4))),
                  eq("other_lines", 0, ll(others)), eq("points_off_distribution", 0, bad_points)});
}

bool even_normal_class(const Conic& K) { return ellipse_or_nonconjugate_hyperbola(K) && no_infinite_point_in_d(K); }

ConicCheckOutcome rule_thm_a3_even(const Context& ctx, const Conic& K) {
  if (!even_normal_class(K)) return not_applicable("needs an ellipse or non-conjugate hyperbola with no infinite point in D");
  const long long q = ctx.plane.q();
  const auto s = secant_spectrum(ctx.plane, K, ctx.jobs);
  return applies({eq("a3", q * (q - 1) / 2, ll(s.at(3))), eq("triples", ll(choose(q + 1, 3)), ll(s.triples))});
}

ConicCheckOutcome rule_tangent_witness_even(const Context& ctx, const Conic& K) {
  if (!even_normal_class(K)) return not_applicable("needs an ellipse or non-conjugate hyperbola with no infinite point in D");
  const HallPlane& H = ctx.plane;
  const auto counts = new_line_counts(H, K.affine_points(), ctx.jobs);
  int three_without_unique = 0;
  int wide_with_witness = 0;
  int two_with_witness = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 2) continue;
    const auto w = three_secant_tangent_witness(H, K, H.new_lines()[i]);
    if (counts[i] == 3 && !w.unique()) ++three_without_unique;
    if (counts[i] >= 4 && !w.witnesses.empty()) ++wide_with_witness;
    if (counts[i] == 2 && !w.witnesses.empty()) ++two_with_witness;
  }
  return applies({eq("3secants_without_unique_witness", 0, three_without_unique),
                  eq("4plus_secants_with_witness", 0, wide_with_witness), info("2secants_with_witness", two_with_witness)});
}

ConicCheckOutcome rule_even_hyperbola_one_in_d(const Context& ctx, const Conic& K) {
  const auto& c = K.classification();
  if (c.kind != ConicKind::Hyperbola || c.infinite_in_d_count() != 1) return not_applicable("needs a hyperbola with one infinite point in D");
  const auto s = secant_spectrum(ctx.plane, K, ctx.jobs);
  return applies({eq("triples", ll(choose(ctx.plane.q(), 3)), ll(s.triples))});
}

ConicCheckOutcome rule_even_hyperbola_both_in_d(const Context& ctx, const Conic& K) {
  const auto& c = K.classification();
  if (c.kind != ConicKind::Hyperbola || c.infinite_in_d_count() != 2) return not_applicable("needs a hyperbola with both infinite points in D");
  const unsigned q = ctx.plane.q();
  const auto s = secant_spectrum(ctx.plane, K, ctx.jobs);
  std::uint64_t wide = 0;
  for (std::size_t i = 3; i < s.a.size(); ++i) wide += s.a[i];
  return applies({eq("a_{q-1}", 1, ll(s.at(q - 1))), eq("lines_with_3plus", 1, ll(wide))});
}

ConicCheckOutcome rule_conj_hyperbola_even(const Context& ctx, const Conic& K) {
  const auto& c = K.classification();
  if (c.kind != ConicKind::Hyperbola || !c.conjugate) return not_applicable("needs a hyperbola with conjugate infinite points");
  const unsigned q = ctx.plane.q();
  const auto s = secant_spectrum(ctx.plane, K, ctx.jobs);
  return applies({eq("a_{q+1}", 1, ll(s.at(q + 1)))});
}

ConicCheckOutcome rule_conj_hyperbola_external(const Context& ctx, const Conic& K) {
  const auto& c = K.classification();
  if (c.kind != ConicKind::Hyperbola || !c.conjugate) return not_applicable("needs a hyperbola with conjugate infinite points");
  const unsigned q = ctx.plane.q();
  if (d_counts(K).external != static_cast<int>(q) + 1) return not_applicable("D not all external");
  const auto s = secant_spectrum(ctx.plane, K, ctx.jobs);
  return applies({eq("a_{q+1}", 2, ll(s.at(q + 1)))});
}

ConicCheckOutcome rule_prop_hyp0(const Context&, const Conic& K) {
  const auto& c = K.classification();
  if (c.kind != ConicKind::Hyperbola || !(c.conjugate || c.infinite_in_d_count() == 2)) {
    return not_applicable("needs a hyperbola with both infinite points in D or conjugate");
  }
  const auto d = d_counts(K);
  const bool uniform = d.external == 0 || d.internal == 0;
  return applies({eq("mixed_positions", 0, uniform ? 0 : 1), info("external_in_d", d.external)});
}

ConicCheckOutcome rule_hsz_triples(const Context& ctx, const Conic& K) {
  const auto& c = K.classification();
  if (c.kind != ConicKind::Hyperbola || c.infinite_in_d_count() != 1) return not_applicable("needs a hyperbola with one infinite point in D");
  const long long q = ctx.plane.q();
  const long long s = d_counts(K).external;
  const auto sp = secant_spectrum(ctx.plane, K, ctx.jobs);
  const bool half = s == (q + 1) / 2 || s == (q - 1) / 2;
  return applies({info("s", s), eq("s_is_(q+-1)/2", 1, half ? 1 : 0), at_most("max_line", 3, sp.max_line),
                  eq("triples", ll(2 * s * choose(q - s, 2) + 2 * choose(s, 3)), ll(sp.triples))});
}

ConicCheckOutcome rule_sk_triples_odd(const Context& ctx, const Conic& K) {
  if (!no_infinite_point_in_d(K)) return not_applicable("infinite point in D");
  const long long q = ctx.plane.q();
  const auto sp = secant_spectrum(ctx.plane, K, ctx.jobs);
  if (K.kind() == ConicKind::Parabola) return applies({eq("triples", ll(choose(q + 1, 3)), ll(sp.triples))});
  const long long s = d_counts(K).external;
  std::vector<Quantity> out{info("s", s), eq("triples", ll(2 * s * choose(q + 1 - s, 2) + 2 * choose(s, 3)), ll(sp.triples))};
  if (ellipse_or_nonconjugate_hyperbola(K)) out.push_back(at_most("max_line", 4, sp.max_line));
  return applies(std::move(out));
}

ConicCheckOutcome rule_ellipse_s_bounds(const Context& ctx, const Conic& K) {
  if (!(ellipse_or_nonconjugate_hyperbola(K) && no_infinite_point_in_d(K))) {
    return not_applicable("needs an ellipse or non-conjugate hyperbola outside D");
  }
  const double q = ctx.plane.q();
  const auto d = d_counts(K);
  const auto upper = static_cast<long long>(std::floor(q / 2 + 1 + std::sqrt(q)));
  const auto lower = static_cast<long long>(std::ceil(q / 2 - 1 - std::sqrt(q)));
  return applies({at_most("external_in_d", upper, d.external), at_least("internal_in_d", lower, d.internal)});
}

ConicCheckOutcome rule_odd_ellipse_not_oval(const Context& ctx, const Conic& K) {
  if (K.kind() != ConicKind::Ellipse) return not_applicable("not an ellipse");
  const auto s = secant_spectrum(ctx.plane, K, ctx.jobs);
  return applies({at_least("max_line", 3, s.max_line), at_most("max_line", 4, s.max_line)});
}

ConicCheckOutcome rule_odd_triples_from_positions(const Context& ctx, const Conic& K) {
  const long long q = ctx.plane.q();
  const auto d = d_counts(K);
  const long long s = d.external;
  const long long m = d.external + d.internal;
  const auto sp = secant_spectrum(ctx.plane, K, ctx.jobs);
  if (K.kind() == ConicKind::Parabola) {
    return applies({info("s", s), eq("triples", ll(choose(m, 3)), ll(sp.triples))});
  }
  std::vector<Quantity> out{info("s", s), eq("triples", ll(2 * (choose(s, 3) + s * choose(m - s, 2))), ll(sp.triples)),
                            eq("arc_iff_no_triple", sp.triples == 0 ? 1 : 0, sp.max_line <= 2 ? 1 : 0)};
  if (q - 1 - s >= 0) out.push_back(at_least("triples", ll(choose(s, 3) + s * choose(q - 1 - s, 2)), ll(sp.triples)));
  return applies(std::move(out));
}

ConicCheckOutcome rule_triples_cross_check(const Context& ctx, const Conic& K) {
  const HallPlane& H = ctx.plane;
  const Field& f = ctx.field;
  const auto s = secant_spectrum(H, K, ctx.jobs);
  const auto direct = enumerate_collinear_triples(H, K);
  std::vector<ProjPoint> d;
  for (const auto& P : H.derivation_set()) {
    if (!K.contains(P)) d.push_back(P);
  }
  const ProjLine r = ProjLine::at_infinity(f);
  std::uint64_t triangles = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      for (std::size_t k = j + 1; k < d.size(); ++k) triangles += count_inscribed_triangles(K, r, {d[i], d[j], d[k]}).count;
    }
    ctx.poll();
  }
  return applies({eq("direct_triples", ll(s.triples), ll(direct)), eq("triangle_sum", ll(s.triples), ll(triangles))});
}

ConicCheckOutcome rule_internal_nucleus_even(const Context& ctx, const Conic& K) {
  const auto& c = K.classification();
  if (c.kind != ConicKind::Parabola || !c.infinite_in_d[0] || !c.nucleus_in_d) {
    return not_applicable("needs a parabola with infinite point and nucleus in D");
  }
  const HallPlane& H = ctx.plane;
  const auto pts = inherited_point_set(H, K, false);
  const auto s = secant_spectrum(H, K, ctx.jobs);
  return applies({eq("internal_nuclei", 0, ll(internal_nucleus_set(H, pts).size())), eq("a_q", H.q(), ll(s.at(H.q())))});
}

ConicCheckOutcome rule_okp_parabola_hyperoval(const Context& ctx, const Conic& K) {
  const auto& c = K.classification();
  if (c.kind != ConicKind::Parabola || c.infinite_in_d[0] || !c.nucleus_in_d) {
    return not_applicable("needs a parabola with infinite point outside D and nucleus in D");
  }
  const HallPlane& H = ctx.plane;
  const auto pts = inherited_point_set(H, K, false);
  const auto r = arc_report(H, pts);
  return applies({eq("size", H.order(), ll(r.size)), eq("is_arc", 1, r.is_arc), eq("hyperoval_reachable", 1, r.hyperoval_reachable)});
}

// ---------------------------------------------------------------------------
// Instance generators.

std::vector<ConicCoeffs> parabola_sweep(const Field& f, bool nucleus_in_d) {
  const Fe z = f.zero();
  const Fe o = f.one();
  const Fe g = f.primitive();
  std::vector<ConicCoeffs> out;
  for (const Fe& u : first(nonsub_elements(f), 3)) {
    for (const Fe& c : {z, o, g}) {
      if (f.even()) {
        if (nucleus_in_d) {
          out.push_back(parabola(u, o, z, c));
        } else {
          // N = (b : a : 0) outside D, including the conjugate of I = (u : 1 : 0).
          out.push_back(parabola(u, o, g, c));
          out.push_back(parabola(u, o, u.conj(), c));
          out.push_back(parabola(u, g, g * u.conj(), c));
        }
      } else {
        out.push_back(parabola(u, o, z, c));
        out.push_back(parabola(u, g, o, c));
      }
    }
  }
  return out;
}

std::vector<ConicCoeffs> normalform_sweep(const Field& f) {
  std::vector<ConicCoeffs> out;
  const Fe z = f.zero();
  const Fe o = f.one();
  const Fe g = f.primitive();
  auto cs = nonsub_elements(f);
  std::vector<Fe> ws = f.elements();
  if (f.q() > 8) {
    cs = first(cs, 8);
    ws = {z, o, g};
  }
  for (const Fe& c : cs) {
    for (const Fe& u : {z, o, g}) {
      for (const Fe& v : {z, o, g}) {
        for (const Fe& w : ws) out.push_back(normalform(c, u, v, w));
      }
    }
  }
  return out;
}

/// X^2 + aXY + bY^2 + f Z^2 covering every ellipse and hyperbola up to
/// translation (q = 5) or up to translation and homothety (q >= 7); all conics
/// with cxx = 1 at q = 3.
std::vector<ConicCoeffs> quadratic_part_sweep(const Field& f) {
  const Fe z = f.zero();
  const Fe o = f.one();
  const auto all = f.elements();
  std::vector<ConicCoeffs> out;
  if (f.q() == 3) {
    for (const Fe& a : all)
      for (const Fe& b : all)
        for (const Fe& c : all)
          for (const Fe& d : all)
            for (const Fe& e : all) out.push_back(make_coeffs(o, a, b, c, d, e));
    return out;
  }
  std::vector<Fe> cs;
  if (f.q() == 5) {
    for (const Fe& c : all) {
      if (!c.is_zero()) cs.push_back(c);
    }
  } else {
    cs = {o, f.primitive()};
  }
  for (const Fe& a : all)
    for (const Fe& b : all)
      for (const Fe& c : cs) out.push_back(make_coeffs(o, a, b, z, z, c));
  return out;
}

/// X^2 + aXY + bY^2 + c with c in {1, g}: every ellipse and every hyperbola
/// with (1 : 0 : 0) off the conic, up to translation and homothety.
std::vector<ConicCoeffs> reduced_sweep(const Field& f) {
  const Fe z = f.zero();
  const Fe o = f.one();
  std::vector<ConicCoeffs> out;
  for (const Fe& c : {o, f.primitive()})
    for (const Fe& a : f.elements())
      for (const Fe& b : f.elements()) out.push_back(make_coeffs(o, a, b, z, z, c));
  return out;
}

/// Hyperbolas whose infinite points are roots of x^2 + ax + b, a, b in GF(q), irreducible over GF(q).
std::vector<ConicCoeffs> conjugate_hyperbola_sweep(const Field& f) {
  const Fe z = f.zero();
  const Fe o = f.one();
  std::vector<ConicCoeffs> out;
  const auto sub = f.subfield_elements();
  for (const Fe& a : sub) {
    for (const Fe& b : sub) {
      const bool root = std::any_of(sub.begin(), sub.end(), [&](Fe x) { return (x * x + a * x + b).is_zero(); });
      if (root) continue;
      for (const Fe& c : f.elements()) {
        if (!c.is_zero()) out.push_back(make_coeffs(o, a, b, z, z, c));
      }
      if (out.size() > 4 * f.size()) return out;
    }
  }
  return out;
}

/// Y(X - mY) - cZ^2: one infinite point (1 : 0 : 0) in D and (m : 1 : 0) outside.
std::vector<ConicCoeffs> one_in_d_sweep(const Field& f) {
  const Fe z = f.zero();
  const Fe o = f.one();
  std::vector<ConicCoeffs> out;
  for (const Fe& m : first(nonsub_elements(f), 3)) {
    for (const Fe& c : f.elements()) {
      if (!c.is_zero()) out.push_back(make_coeffs(z, o, -m, z, z, -c));
    }
  }
  return out;
}

std::vector<ConicCoeffs> xy_sweep(const Field& f) {
  std::vector<ConicCoeffs> out;
  for (const Fe& d : f.elements()) {
    if (!d.is_zero()) out.push_back(hyperbola_xy(d));
  }
  return out;
}

std::vector<ConicCoeffs> concat(std::vector<ConicCoeffs> a, const std::vector<ConicCoeffs>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<ConicCoeffs> take(std::vector<ConicCoeffs> v, std::size_t n) {
  if (v.size() > n) v.resize(n);
  return v;
}

// ---------------------------------------------------------------------------
// Field-level checks.

std::string describe(const std::vector<Quantity>& qs) {
  std::string out;
  for (const auto& q : qs) {
    if (q.pass()) continue;
    if (!out.empty()) out += "; ";
    out += q.key + ": expected " + q.relation + " " + std::to_string(q.expected) + ", got " + std::to_string(q.actual);
  }
  return out;
}

CheckResult field_result(const Context& ctx, const std::string& name, std::string conic, std::vector<Quantity> qs) {
  CheckResult r;
  r.check = name;
  r.p = ctx.field.p();
  r.q = ctx.field.q();
  r.conic = std::move(conic);
  r.quantities = std::move(qs);
  r.settle();
  if (r.status == Status::Fail) r.reason = describe(r.quantities);
  return r;
}

std::vector<CheckResult> run_hall_axioms(const Context& ctx) {
  const HallPlane& H = ctx.plane;
  const unsigned n = H.order();
  const std::uint64_t q = H.q();
  std::vector<std::uint32_t> lines;
  std::vector<std::uint32_t> pts;
  std::vector<std::uint32_t> mark(n * n);
  long long bad_pairs = 0;
  long long bad_line_sizes = 0;
  long long bad_point_degrees = 0;
  for (std::uint32_t P = 0; P < n * n; ++P) {
    std::fill(mark.begin(), mark.end(), 0);
    H.lines_through(P, lines);
    if (lines.size() != n + 1) ++bad_point_degrees;
    for (auto L : lines) {
      H.points_on(L, pts);
      for (auto R : pts) {
        if (R < n * n) ++mark[R];
      }
    }
    for (std::uint32_t R = 0; R < n * n; ++R) {
      if (R != P && mark[R] != 1) ++bad_pairs;
    }
    if ((P & 63) == 0) ctx.poll();
  }
  for (std::uint32_t L = 0; L < H.hall_line_count(); ++L) {
    H.points_on(L, pts);
    if (pts.size() != n + 1 && !(L < H.infinity_line_index() && pts.size() == n)) ++bad_line_sizes;
  }
  // Affine lines carry q^2 affine points plus one infinite point.
  long long bad_affine_lines = 0;
  for (std::uint32_t L = 0; L < H.infinity_line_index(); ++L) {
    H.points_on(L, pts);
    const auto affine = std::count_if(pts.begin(), pts.end(), [&](auto p) { return p < n * n; });
    if (affine != n) ++bad_affine_lines;
  }
  return {field_result(ctx, "hall_axioms", "",
                       {eq("pairs_not_on_exactly_one_line", 0, bad_pairs), eq("points_not_on_q^2+1_lines", 0, bad_point_degrees),
                        eq("lines_not_of_size_q^2+1", 0, bad_line_sizes), eq("affine_lines_without_q^2_points", 0, bad_affine_lines),
                        eq("new_lines", ll((q + 1) * q * q), ll(H.new_line_count()))})};
}

std::vector<CheckResult> run_new_line_count(const Context& ctx) {
  const HallPlane& H = ctx.plane;
  const std::uint64_t q = H.q();
  std::set<NewLine> distinct(H.new_lines().begin(), H.new_lines().end());
  return {field_result(ctx, "new_line_count", "",
                       {eq("new_lines", ll((q + 1) * q * q), ll(H.new_line_count())), eq("distinct", ll(H.new_line_count()), ll(distinct.size())),
                        eq("old_lines", ll((q * q - q) * q * q), ll(H.old_line_count()))})};
}

template <class F>
void for_each_triple(const std::vector<ProjPoint>& pts, F&& fn) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      for (std::size_t k = j + 1; k < pts.size(); ++k) fn(std::array<ProjPoint, 3>{pts[i], pts[j], pts[k]});
}

std::vector<CheckResult> run_sk(const Context& ctx, bool even) {
  const Field& f = ctx.field;
  std::vector<CheckResult> out;
  const auto lines = subplane_lines(f);
  for (const auto& coeffs : subplane_conics(f)) {
    const Conic K(coeffs);
    long long triples = 0;
    long long mismatches = 0;
    long long tangent_lines = 0;
    for (const auto& r : lines) {
      const bool tangent = K.intersection_count(r, Ambient::Subfield) == 1;
      if (even && tangent) continue;
      if (tangent) ++tangent_lines;
      std::vector<ProjPoint> off;
      for (const auto& P : r.points()) {
        if (P.rational_over_subfield() && !K.contains(P)) off.push_back(P);
      }
      std::map<ProjPoint, bool> external;
      if (!even && !tangent) {
        for (const auto& P : off) external[P] = point_position(K, P, Ambient::Subfield) == Position::External;
      }
      for_each_triple(off, [&](const std::array<ProjPoint, 3>& T) {
        ++triples;
        const int count = count_inscribed_triangles(K, r, T, Ambient::Subfield).count;
        int want = 1;
        if (!even && !tangent) {
          const int ext = external[T[0]] + external[T[1]] + external[T[2]];
          want = (ext == 3 || ext == 1) ? 2 : 0;
        }
        if (count != want) ++mismatches;
      });
      ctx.poll();
    }
    std::vector<Quantity> qs{info("triples", triples), eq("mismatches", 0, mismatches)};
    if (!even) qs.push_back(info("tangent_lines", tangent_lines));
    out.push_back(field_result(ctx, even ? "sk_even_unique" : "sk_odd", "subplane " + format_conic(coeffs), std::move(qs)));
  }
  return out;
}

std::vector<CheckResult> run_lem_3secant(const Context& ctx) {
  const Field& f = ctx.field;
  const HallPlane& H = ctx.plane;
  const long long q = f.q();
  const Fe z = f.zero();
  const Fe o = f.one();
  const NewLine L0 = H.canonical_new_line(o, z, z);
  const auto canonical = count_three_secant_parabolas(H, L0, {z, z}, {-o, z}, {z, -o});
  std::mt19937 rng(20240611u);
  int mismatches = 0;
  int done = 0;
  while (done < 20) {
    const auto& L = H.new_lines()[std::uniform_int_distribution<std::size_t>(0, H.new_line_count() - 1)(rng)];
    const auto pts = H.points(L);
    std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
    const auto a = pick(rng), b = pick(rng), c = pick(rng);
    if (a == b || a == c || b == c) continue;
    try {
      const auto r = count_three_secant_parabolas(H, L, pts[a], pts[b], pts[c]);
      if (r.exactly_three != 3 * (q - 1)) ++mismatches;
      ++done;
    } catch (const GeometryError&) {
      // Collinear in PG(2,q^2); draw again.
    }
    ctx.poll();
  }
  return {field_result(ctx, "lem_3secant_parabolas", "canonical triple and 20 random triples",
                       {eq("canonical", 3 * (q - 1), canonical.exactly_three), info("canonical_4secant", canonical.four),
                        eq("random_mismatches", 0, mismatches)})};
}

std::vector<CheckResult> run_kv_rational_point(const Context& ctx) {
  const Field& f = ctx.field;
  const long long q = f.q();
  const Fe z = f.zero();
  const Fe o = f.one();
  const Fe two = f.from_int(2);
  long long failures = 0;
  long long iff_mismatch = 0;
  long long in_triple = 0;
  for (const Fe& u : nonsub_elements(f)) {
    try {
      const AffinePoint P = verify_kv_rational_point(u);
      const bool hit = P == AffinePoint{z, z} || P == AffinePoint{-o, z} || P == AffinePoint{z, -o};
      const Fe t = u + u.conj();
      const bool cond = t.is_zero() || t == two || u.inv() + u.conj().inv() == two;
      if (hit) ++in_triple;
      if (hit != cond) ++iff_mismatch;
    } catch (const GeometryError&) {
      ++failures;
    }
  }
  return {field_result(ctx, "kv_rational_point", "(X+uY)^2+X+u^2Y, all u outside GF(q)",
                       {eq("failures", 0, failures), eq("iff_mismatches", 0, iff_mismatch), eq("u_with_point_in_triple", 3 * (q - 1), in_triple)})};
}

std::vector<CheckResult> run_nbeta_table(const Context& ctx) {
  const Field& f = ctx.field;
  long long mismatches = 0;
  long long fixed_mismatch = 0;
  std::map<int, long long> hist;
  for (const Fe& b : f.elements()) {
    if (b.is_zero()) continue;
    const auto r = count_rational_roots_nbeta(b);
    int want = 0;
    if (f.q_is_square()) {
      want = b.in_subfield() ? 3 : 1;
    } else {
      want = f.is_cube(b) ? 3 : 0;
    }
    if (r.count() != want) ++mismatches;
    if (b.in_subfield()) {
      std::vector<Fe> expect{f.zero(), b, b};
      std::sort(expect.begin(), expect.end());
      if (r.roots != expect) ++fixed_mismatch;
    }
    ++hist[r.count()];
  }
  return {field_result(ctx, "nbeta_table", f.q_is_square() ? "q square" : "q non-square",
                       {eq("mismatches", 0, mismatches), eq("beta_in_GF(q)_roots_not_0_b_b", 0, fixed_mismatch), info("beta_with_3", hist[3]),
                        info("beta_with_1", hist[1]), info("beta_with_0", hist[0])})};
}

std::vector<CheckResult> run_normalform_lemma(const Context& ctx) {
  const Field& f = ctx.field;
  const QuarticExtension ext(f);
  long long admissible = 0;
  long long failures = 0;
  std::map<QuadraticHypothesis, long long> violated;
  for (const Fe& beta : f.elements()) {
    for (const Fe& gamma : f.elements()) {
      try {
        const auto nf = normalize_quadratic(beta, gamma, &ext);
        ++admissible;
        const auto [A, B, C] = nf.map.transform(beta, gamma);
        const bool ok = nf.map.is_rational() && nf.map.is_invertible() && !A.is_zero() && A == B && C == A * nf.w &&
                        !nf.w.in_subfield();
        if (!ok) ++failures;
      } catch (const HypothesisViolated& e) {
        ++violated[e.kind];
      } catch (const GeometryError&) {
        ++failures;
      }
    }
    ctx.poll();
  }
  return {field_result(ctx, "normalform_lemma", "X^2+bX+c, all b, c",
                       {info("admissible", admissible), eq("failures", 0, failures),
                        info("repeated_root", violated[QuadraticHypothesis::RepeatedRoot]),
                        info("root_in_subfield", violated[QuadraticHypothesis::RootInSubfield]),
                        info("conjugate_roots", violated[QuadraticHypothesis::ConjugateRoots])})};
}

std::vector<CheckResult> run_xy1_not_arc(const Context& ctx) {
  const HallPlane& H = ctx.plane;
  const Conic K(hyperbola_xy(ctx.field.one()));
  const auto r = arc_report(H, inherited_point_set(H, K, false));
  return {field_result(ctx, "okp_hyperbola_xy1_not_arc", format_conic(K.coeffs()), {eq("is_arc", 0, r.is_arc), info("max_line", r.max_line)})};
}

std::vector<CheckResult> run_complete_arc(const Context& ctx) {
  const HallPlane& H = ctx.plane;
  const Fe d = ctx.field.primitive();
  const Conic K(hyperbola_xy(-d));
  const auto r = arc_report(H, inherited_point_set(H, K, false));
  return {field_result(ctx, "okp_complete_arc", format_conic(K.coeffs()),
                       {eq("size", ll(H.order()) - 1, ll(r.size)), eq("is_arc", 1, r.is_arc), eq("is_complete", 1, r.is_complete)})};
}

/// Q(aW + lambda U, bW + lambda V, W), scaled to a leading 1.
ConicCoeffs baer_coordinates(const ConicCoeffs& c, const NewLine& L) {
  const auto& [xx, xy, yy, xz, yz, zz] = c;
  const Fe two = xx.field().from_int(2);
  const Fe l = L.lambda;
  const Fe l2 = l * l;
  const Fe& a = L.a;
  const Fe& b = L.b;
  return {xx * l2,
          xy * l2,
          yy * l2,
          l * (two * a * xx + b * xy + xz),
          l * (a * xy + two * b * yy + yz),
          xx * a * a + xy * a * b + yy * b * b + xz * a + yz * b + zz};
}

bool proportional_to_subfield(const ConicCoeffs& c) {
  const auto lead = std::find_if(c.begin(), c.end(), [](Fe x) { return !x.is_zero(); });
  if (lead == c.end()) return false;
  const Fe s = lead->inv();
  return std::all_of(c.begin(), c.end(), [&](Fe x) { return (x * s).in_subfield(); });
}

std::vector<CheckResult> run_baer_bound(const Context& ctx) {
  const Field& f = ctx.field;
  const HallPlane& H = ctx.plane;
  const unsigned n = f.size();
  const auto d = H.derivation_set();
  long long conics = 0;
  long long wide_pairs = 0;
  long long violations = 0;
  std::string first_violation;
  // All Baer subplanes are equivalent, so every (B, K) pair is covered up to
  // collineation by the subplane PG(2,q) against every conic.
  std::vector<ProjPoint> baer;
  {
    std::set<ProjPoint> pts;
    const auto sub = f.subfield_elements();
    for (const Fe& x : sub)
      for (const Fe& y : sub)
        for (const Fe& z : sub) {
          if (!(x.is_zero() && y.is_zero() && z.is_zero())) pts.insert(ProjPoint::make(x, y, z));
        }
    baer.assign(pts.begin(), pts.end());
  }
  long long subplane_wide = 0;
  long long subplane_violations = 0;

  auto examine = [&](const ConicCoeffs& coeffs) {
    if (discriminant(coeffs).is_zero()) return;
    const auto& [xx, xy, yy, xz, yz, zz] = coeffs;
    long long on_baer = 0;
    for (const auto& P : baer) {
      on_baer += (xx * P.x * P.x + xy * P.x * P.y + yy * P.y * P.y + xz * P.x * P.z + yz * P.y * P.z + zz * P.z * P.z).is_zero();
    }
    if (on_baer > 4) {
      ++subplane_wide;
      if (!proportional_to_subfield(coeffs) || on_baer != static_cast<long long>(f.q()) + 1) {
        ++subplane_violations;
        if (first_violation.empty()) first_violation = format_conic(coeffs);
      }
    }
    const auto K = Conic::try_make(coeffs);
    if (!K) return;
    ++conics;
    long long on_d = 0;
    for (const auto& P : d) on_d += K->contains(P);
    const auto counts = new_line_counts(H, K->affine_points());
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (counts[i] + on_d <= 4) continue;
      ++wide_pairs;
      if (!proportional_to_subfield(baer_coordinates(coeffs, H.new_lines()[i]))) {
        ++violations;
        if (first_violation.empty()) first_violation = format_conic(coeffs);
      }
    }
  };

  std::string label;
  if (f.q() <= 4) {
    // Every conic once: the first nonzero coefficient is 1.
    label = "all conics";
    std::array<Code, 6> c{};
    for (int lead = 0; lead < 6; ++lead) {
      const int free = 5 - lead;
      std::uint64_t total = 1;
      for (int i = 0; i < free; ++i) total *= n;
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t t = idx;
        c.fill(0);
        c[lead] = 1;
        for (int i = lead + 1; i < 6; ++i) {
          c[i] = static_cast<Code>(t % n);
          t /= n;
        }
        examine({f.elem(c[0]), f.elem(c[1]), f.elem(c[2]), f.elem(c[3]), f.elem(c[4]), f.elem(c[5])});
        if ((idx & 1023) == 0) ctx.poll();
      }
    }
  } else {
    label = "3000 random conics";
    std::mt19937 rng(977u);
    std::uniform_int_distribution<unsigned> pick(0, n - 1);
    for (int i = 0; i < 3000; ++i) {
      examine({f.elem(static_cast<Code>(pick(rng))), f.elem(static_cast<Code>(pick(rng))), f.elem(static_cast<Code>(pick(rng))),
               f.elem(static_cast<Code>(pick(rng))), f.elem(static_cast<Code>(pick(rng))), f.elem(static_cast<Code>(pick(rng)))});
      if ((i & 63) == 0) ctx.poll();
    }
  }
  auto r = field_result(ctx, "baer_intersection_bound", label,
                        {info("conics", conics), info("pairs_over_4", wide_pairs), eq("violations", 0, violations),
                         info("subplane_pairs_over_4", subplane_wide), eq("subplane_violations", 0, subplane_violations)});
  if (!first_violation.empty()) r.reason += " first: " + first_violation;
  return {r};
}

std::vector<CheckResult> run_subconic_extension(const Context& ctx) {
  const Field& f = ctx.field;
  std::vector<CheckResult> out;
  const auto lines = subplane_lines(f);
  for (const auto& coeffs : subplane_conics(f)) {
    const Conic K(coeffs);
    long long violations = 0;
    long long tangents = 0;
    for (const auto& r : lines) {
      const auto e = subconic_extension_check(K, r);
      if (e.relation == ExtensionRelation::Violation) ++violations;
      if (e.relation == ExtensionRelation::TangentToTangent) ++tangents;
    }
    out.push_back(field_result(ctx, "subconic_extension", "subplane " + format_conic(coeffs),
                               {eq("violations", 0, violations), eq("tangent_lines", f.q() + 1, tangents)}));
  }
  return out;
}

// ---------------------------------------------------------------------------

CheckResult aggregate(const std::string& name, const Rule& rule, const Context& ctx, const std::vector<ConicCoeffs>& list,
                      const std::string& label) {
  {
    long long applicable = 0;
    long long failing = 0;
    std::vector<Quantity> first_pass;
    std::vector<Quantity> first_fail;
    std::string single;
    std::string fail_conic;
    for (std::size_t i = 0; i < list.size(); ++i) {
      if ((i & 15) == 0) ctx.poll();
      const auto K = Conic::try_make(list[i]);
      if (!K) continue;
      auto o = rule(ctx, *K);
      if (!o.applicable) continue;
      ++applicable;
      const bool ok = std::all_of(o.quantities.begin(), o.quantities.end(), [](const Quantity& q) { return q.pass(); });
      if (applicable == 1) {
        first_pass = o.quantities;
        single = format_conic(K->coeffs());
      }
      if (!ok) {
        if (failing == 0) {
          first_fail = o.quantities;
          fail_conic = format_conic(K->coeffs());
        }
        ++failing;
      }
    }
    CheckResult r;
    r.check = name;
    r.p = ctx.field.p();
    r.q = ctx.field.q();
    if (applicable == 0) {
      r.status = Status::Skip;
      r.conic = label;
      r.reason = "no applicable conic among " + std::to_string(list.size()) + " candidates";
      return r;
    }
    if (applicable == 1) {
      r.conic = single;
      r.quantities = first_pass;
    } else {
      r.conic = label + " (" + std::to_string(list.size()) + " candidates)";
      r.quantities = {at_least("applicable_conics", 1, applicable), eq("failing_conics", 0, failing)};
      for (const auto& q : failing ? first_fail : first_pass) r.quantities.push_back(q);
    }
    r.settle();
    if (r.status == Status::Fail) r.reason = (failing ? "first failure " + fail_conic + ": " : "") + describe(failing ? first_fail : r.quantities);
    return r;
  }
}

std::function<std::vector<CheckResult>(const Context&)> sweep(std::string name, Instances instances, std::string label, Rule rule) {
  return [name, instances, label, rule](const Context& ctx) {
    return std::vector<CheckResult>{aggregate(name, rule, ctx, instances(ctx), label)};
  };
}

CheckDef conic_check(std::string name, std::string summary, Guard guard, Instances instances, std::string label, Rule rule) {
  CheckDef d;
  d.name = name;
  d.summary = std::move(summary);
  d.guard = std::move(guard);
  d.run = sweep(name, std::move(instances), std::move(label), rule);
  d.conic_rule = std::move(rule);
  return d;
}

CheckDef field_check(std::string name, std::string summary, Guard guard, std::function<std::vector<CheckResult>(const Context&)> run) {
  CheckDef d;
  d.name = std::move(name);
  d.summary = std::move(summary);
  d.guard = std::move(guard);
  d.run = std::move(run);
  return d;
}

Instances reps() {
  return [](const Context& ctx) { return representative_conics(ctx.field); };
}

std::vector<CheckDef> build_registry() {
  std::vector<CheckDef> r;
  r.push_back(field_check("hall_axioms", "every pair of affine points on exactly one Hall line", q_at_most(9, "q^8 incidence scan"),
                          run_hall_axioms));
  r.push_back(field_check("new_line_count", "(q+1)q^2 new lines, all distinct", any_q(), run_new_line_count));
  r.push_back(field_check("sk_even_unique", "q even: one inscribed triangle per triple on a non-tangent line",
                          both(even_q(), q_at_most(16, "triple enumeration")), [](const Context& c) { return run_sk(c, true); }));
  r.push_back(field_check("sk_odd", "q odd: triangle counts 1 (tangent), 2 or 0 by external points",
                          both(odd_q(), q_at_most(13, "triple enumeration")), [](const Context& c) { return run_sk(c, false); }));
  r.push_back(field_check("subconic_extension", "tangents stay tangents, other lines become secants", q_at_most(16, "line enumeration"),
                          run_subconic_extension));
  r.push_back(conic_check("spectrum_sanity", "spectrum sums and pair identity over all Hall lines", q_at_most(16, "all-line tally"), reps(),
                          "representative conics", rule_spectrum_sanity));
  r.push_back(conic_check("triples_cross_check", "spectrum triples = direct enumeration = triangle sum over D",
                          q_at_most(8, "cubic enumeration"), reps(), "representative conics", rule_triples_cross_check));
  r.push_back(conic_check("a3_a4_parabola_odd", "q odd parabola, I outside D: a3 and a4 closed forms", odd_q(),
                          [](const Context& c) { return parabola_sweep(c.field, false); }, "parabola sweep", rule_a3_a4_parabola_odd));
  r.push_back(conic_check("prop_parabola_external", "q odd parabola: D minus I is external", odd_q(),
                          [](const Context& c) { return concat(representative_conics(c.field), parabola_sweep(c.field, false)); },
                          "parabolas", rule_prop_parabola_external));
  r.push_back(field_check("lem_3secant_parabolas", "q odd: 3(q-1) parabolas meet a new line in exactly three given points",
                          odd_q(), run_lem_3secant));
  r.push_back(field_check("kv_rational_point", "q odd: fourth rational point formula", odd_q(), run_kv_rational_point));
  r.push_back(conic_check("even_parabola_support", "q even parabola, I and N outside D: lines meet it in 0, 1, 2 or 4 points", even_q(),
                          [](const Context& c) { return parabola_sweep(c.field, false); }, "parabola sweep", rule_even_parabola_support));
  r.push_back(conic_check("even_parabola_conjugate_nonsquare", "q even non-square, N conjugate to I: a0, a1, a4 and per-point counts",
                          both(even_q(),
                               [](const Field& f) -> std::optional<std::string> {
                                 if (f.q_is_square()) return "needs q non-square";
                                 return std::nullopt;
                               }),
                          [](const Context& c) { return parabola_sweep(c.field, false); }, "parabola sweep", rule_even_parabola_conjugate));
  r.push_back(field_check("nbeta_table", "q even: rational roots of the N_beta cubic", even_q(), run_nbeta_table));
  r.push_back(conic_check("internal_nucleus_even_parabola", "q even parabola, I and N in D: no internal nucleus, q parallel q-secants",
                          both(even_q(), q_at_least(4)),
                          [](const Context& c) {
                            const Field& f = c.field;
                            const Fe z = f.zero(), o = f.one(), g = f.primitive();
                            return std::vector<ConicCoeffs>{parabola(z, z, o, z), parabola(z, z, o, g), parabola(o, z, o, o),
                                                            parabola(z, o, o, z)};
                          },
                          "parabolas with I, N in D", rule_internal_nucleus_even));
  r.push_back(conic_check("okp_parabola_hyperoval", "q even parabola, I outside D, N in D: q^2-arc extending to a hyperoval",
                          both(even_q(), q_at_most(8, "pair search")),
                          [](const Context& c) { return take(parabola_sweep(c.field, true), 3); }, "parabolas with N in D",
                          rule_okp_parabola_hyperoval));
  r.push_back(field_check("okp_hyperbola_xy1_not_arc", "q odd, q > 3: XY = 1 is not an arc",
                          both(both(odd_q(), q_at_least(5)), q_at_most(9, "arc scan")),
                          run_xy1_not_arc));
  r.push_back(field_check("okp_complete_arc", "q odd: XY = -d, d a non-square, is a complete (q^2-1)-arc",
                          both(both(odd_q(), q_at_least(5)), q_at_most(9, "completeness scan")), run_complete_arc));
  r.push_back(conic_check("prop_hyp0", "q odd hyperbola, both points in D or conjugate: D uniformly external or internal", odd_q(),
                          [](const Context& c) { return concat(xy_sweep(c.field), take(conjugate_hyperbola_sweep(c.field), 200)); },
                          "hyperbola sweep", rule_prop_hyp0));
  r.push_back(conic_check("conj_hyperbola_external_two_lines", "q odd, q > 3, conjugate hyperbola, D external: two (q+1)-secants",
                          both(odd_q(), q_at_least(5)),
                          [](const Context& c) { return conjugate_hyperbola_sweep(c.field); }, "conjugate hyperbola sweep",
                          rule_conj_hyperbola_external));
  r.push_back(conic_check("conj_hyperbola_even_one_line", "q even conjugate hyperbola: one (q+1)-secant", even_q(),
                          [](const Context& c) { return take(conjugate_hyperbola_sweep(c.field), 64); }, "conjugate hyperbola sweep",
                          rule_conj_hyperbola_even));
  r.push_back(conic_check("even_hyperbola_one_in_d", "q even hyperbola, one point in D: C(q,3) triples", even_q(),
                          [](const Context& c) { return one_in_d_sweep(c.field); }, "hyperbolas with one point in D",
                          rule_even_hyperbola_one_in_d));
  r.push_back(conic_check("even_hyperbola_both_in_d", "q even hyperbola, both points in D: a single (q-1)-secant",
                          both(even_q(), q_at_least(4)), [](const Context& c) { return xy_sweep(c.field); }, "XY = d sweep",
                          rule_even_hyperbola_both_in_d));
  r.push_back(conic_check("hsz_triples", "q odd, q > 5, hyperbola with one point in D: s, max line, triple count",
                          both(odd_q(), q_at_least(7)),
                          [](const Context& c) { return one_in_d_sweep(c.field); }, "hyperbolas with one point in D", rule_hsz_triples));
  r.push_back(conic_check("sk_triples_odd", "q odd, no infinite point in D: triple count from s", odd_q(),
                          [](const Context& c) {
                            return concat(representative_conics(c.field), reduced_sweep(c.field));
                          },
                          "conics outside D", rule_sk_triples_odd));
  r.push_back(conic_check("ellipse_s_bounds", "q odd: external points of D within q/2 +- (1 + sqrt q)", odd_q(),
                          [](const Context& c) { return reduced_sweep(c.field); }, "X^2+aXY+bY^2+c, c in {1, g}",
                          rule_ellipse_s_bounds));
  r.push_back(conic_check("odd_ellipse_not_oval", "q odd: every ellipse has a 3-secant new line", both(odd_q(), q_at_most(9, "sweep size")),
                          [](const Context& c) { return quadratic_part_sweep(c.field); }, "ellipse sweep", rule_odd_ellipse_not_oval));
  r.push_back(conic_check("odd_triples_from_positions", "q odd: collinear triples counted from the external points of D", odd_q(),
                          [](const Context& c) {
                            return concat(concat(representative_conics(c.field), xy_sweep(c.field)), reduced_sweep(c.field));
                          },
                          "conic sweep", rule_odd_triples_from_positions));
  r.push_back(conic_check("thm_a3_even", "q even ellipse or non-conjugate hyperbola outside D: a3 = q(q-1)/2", even_q(),
                          [](const Context& c) { return normalform_sweep(c.field); }, "normal form sweep", rule_thm_a3_even));
  r.push_back(conic_check("tangent_witness_even", "q even: unique tangent witness on each 3-secant", even_q(),
                          [](const Context& c) { return normalform_sweep(c.field); }, "normal form sweep", rule_tangent_witness_even));
  r.push_back(field_check("normalform_lemma", "q even: Möbius normal form X^2 + X + w", both(even_q(), q_at_most(8, "GF(q^4) root scan")),
                          run_normalform_lemma));
  r.push_back(field_check("baer_intersection_bound", "|B cap K| <= 4 unless B cap K is a conic of B", q_at_most(8, "conic sweep"),
                          run_baer_bound));
  return r;
}

}  // namespace

std::vector<ConicCoeffs> representative_conics(const Field& f) {
  const Fe z = f.zero();
  const Fe o = f.one();
  const Fe g = f.primitive();
  const Fe m1 = -o;
  std::vector<ConicCoeffs> cand{parabola(g, o, z, z), parabola(g, o, g, z), parabola(z, z, m1, z), hyperbola_xy(o), hyperbola_xy(-g),
                                make_coeffs(z, o, -g, z, z, m1)};
  const auto sub = f.subfield_elements();
  const auto ns = nonsub_elements(f);
  // Conjugate infinite points: x^2 + ax + b irreducible over GF(q).
  [&] {
    for (const Fe& a : sub) {
      for (const Fe& b : sub) {
        if (std::none_of(sub.begin(), sub.end(), [&](Fe x) { return (x * x + a * x + b).is_zero(); })) {
          cand.push_back(make_coeffs(o, a, b, z, z, m1));
          return;
        }
      }
    }
  }();
  // Two infinite points outside D, not conjugate.
  [&] {
    for (const Fe& a : ns) {
      for (const Fe& b : ns) {
        if (a < b && b != a.conj()) {
          cand.push_back(make_coeffs(o, -(a + b), a * b, z, z, m1));
          return;
        }
      }
    }
  }();
  // No infinite points.
  for (const Fe& b : f.elements()) {
    const auto all = f.elements();
    if (std::none_of(all.begin(), all.end(), [&](Fe x) { return (x * x + x + b).is_zero(); })) {
      cand.push_back(make_coeffs(o, o, b, z, z, m1));
      break;
    }
  }
  std::vector<ConicCoeffs> out;
  for (const auto& c : cand) {
    if (Conic::try_make(c)) out.push_back(c);
  }
  return out;
}

const std::vector<CheckDef>& check_registry() {
  static const std::vector<CheckDef> registry = build_registry();
  return registry;
}

const CheckDef* find_check(const std::string& name) {
  static const std::map<std::string, std::string> aliases{{"a3_even", "thm_a3_even"}};
  const auto it = aliases.find(name);
  const std::string& key = it == aliases.end() ? name : it->second;
  for (const auto& d : check_registry()) {
    if (d.name == key) return &d;
  }
  return nullptr;
}

CheckResult sweep_conic_rule(const CheckDef& def, const Context& ctx, const std::vector<ConicCoeffs>& conics, const std::string& label) {
  return aggregate(def.name, def.conic_rule, ctx, conics, label);
}

}  // namespace hall
