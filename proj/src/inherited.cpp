#include "hall/inherited.hpp"

#include <algorithm>
#include <thread>

namespace hall {
namespace {

std::uint64_t choose3(std::uint64_t n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

void count_chunk(const HallPlane& H, std::span<const AffinePoint> pts, std::vector<std::uint16_t>& counts) {
  for (const auto& P : pts) {
    for (unsigned c = 0; c < H.class_count(); ++c) ++counts[H.new_line_index(P.x.code(), P.y.code(), c)];
  }
}

}  // namespace

std::uint64_t SecantSpectrum::lines() const {
  std::uint64_t s = 0;
  for (auto v : a) s += v;
  return s;
}

std::uint64_t SecantSpectrum::incidences() const {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += i * a[i];
  return s;
}

std::vector<int> SecantSpectrum::support() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > 0) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<std::uint16_t> new_line_counts(const HallPlane& H, std::span<const AffinePoint> pts, unsigned jobs) {
  std::vector<std::uint16_t> counts(H.new_line_count(), 0);
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(pts.size() / 64 + 1)));
  if (jobs == 1) {
    count_chunk(H, pts, counts);
    return counts;
  }
  std::vector<std::vector<std::uint16_t>> partial(jobs, std::vector<std::uint16_t>(H.new_line_count(), 0));
  {
    std::vector<std::jthread> workers;
    const std::size_t step = (pts.size() + jobs - 1) / jobs;
    for (unsigned j = 0; j < jobs; ++j) {
      const std::size_t lo = std::min(pts.size(), j * step);
      const std::size_t hi = std::min(pts.size(), lo + step);
      workers.emplace_back([&, j, lo, hi] { count_chunk(H, pts.subspan(lo, hi - lo), partial[j]); });
    }
  }
  for (const auto& part : partial) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] = static_cast<std::uint16_t>(counts[i] + part[i]);
  }
  return counts;
}

SecantSpectrum spectrum_from_counts(const HallPlane& H, std::span<const std::uint16_t> counts, std::size_t affine_points) {
  SecantSpectrum s;
  s.a.assign(H.q() + 2, 0);
  s.affine_points = affine_points;
  for (auto c : counts) {
    if (c >= s.a.size()) s.a.resize(c + 1, 0);
    ++s.a[c];
    s.triples += choose3(c);
    s.max_line = std::max<int>(s.max_line, c);
  }
  return s;
}

SecantSpectrum secant_spectrum(const HallPlane& H, const Conic& K, unsigned jobs) {
  const auto counts = new_line_counts(H, K.affine_points(), jobs);
  return spectrum_from_counts(H, counts, K.affine_points().size());
}

std::uint64_t collinear_triples(const HallPlane& H, const Conic& K) { return secant_spectrum(H, K).triples; }

std::vector<HallPoint> inherited_point_set(const HallPlane& H, const Conic& K, bool adjoin_infinite) {
  (void)H;
  std::vector<HallPoint> out;
  for (const auto& P : K.affine_points()) out.emplace_back(P);
  if (adjoin_infinite) {
    const auto& cls = K.classification();
    for (std::size_t i = 0; i < cls.infinite_points.size(); ++i) {
      if (cls.infinite_in_d[i]) continue;
      const ProjPoint& P = cls.infinite_points[i];
      // Outside D means x != 0, so the point is (1 : y/x : 0).
      out.emplace_back(OldDirection{P.y / P.x});
    }
  }
  return out;
}

namespace {

struct Incidence {
  std::vector<std::uint8_t> member;
  std::vector<std::uint32_t> line_count;
};

Incidence tally(const HallPlane& H, std::span<const HallPoint> S) {
  Incidence inc;
  inc.member.assign(H.hall_point_count(), 0);
  inc.line_count.assign(H.hall_line_count(), 0);
  std::vector<std::uint32_t> lines;
  for (const auto& P : S) {
    const auto idx = H.point_index(P);
    if (inc.member[idx]) continue;
    inc.member[idx] = 1;
    H.lines_through(idx, lines);
    for (auto L : lines) ++inc.line_count[L];
  }
  return inc;
}

}  // namespace

ArcReport arc_report(const HallPlane& H, std::span<const HallPoint> S) {
  ArcReport r;
  const Incidence inc = tally(H, S);
  r.size = static_cast<std::size_t>(std::count(inc.member.begin(), inc.member.end(), 1));
  for (auto c : inc.line_count) r.max_line = std::max<int>(r.max_line, static_cast<int>(c));
  r.is_arc = r.max_line <= 2;
  if (!r.is_arc) return r;

  // A point extends the arc iff it lies on no 2-secant.
  std::vector<std::uint8_t> blocked(H.hall_point_count(), 0);
  std::vector<std::uint32_t> pts;
  for (std::uint32_t L = 0; L < H.hall_line_count(); ++L) {
    if (inc.line_count[L] < 2) continue;
    H.points_on(L, pts);
    for (auto p : pts) blocked[p] = 1;
  }
  std::vector<std::uint32_t> ext;
  for (std::uint32_t p = 0; p < H.hall_point_count(); ++p) {
    if (!inc.member[p] && !blocked[p]) ext.push_back(p);
  }
  for (auto p : ext) r.extension_points.push_back(H.point_at(p));
  r.is_complete = ext.empty();

  const std::size_t n = H.order();
  if (H.field().even() && r.size == n) {
    std::vector<std::uint32_t> lines;
    std::vector<std::uint8_t> blocked2;
    for (auto X : ext) {
      // Adding X turns every line through X that already meets S into a 2-secant.
      blocked2 = blocked;
      H.lines_through(X, lines);
      for (auto L : lines) {
        if (inc.line_count[L] == 0) continue;
        H.points_on(L, pts);
        for (auto p : pts) blocked2[p] = 1;
      }
      for (auto Y : ext) {
        if (Y != X && !blocked2[Y]) {
          r.hyperoval_reachable = true;
          r.hyperoval_pair = std::make_pair(H.point_at(X), H.point_at(Y));
          return r;
        }
      }
    }
  }
  return r;
}

std::vector<HallPoint> internal_nucleus_set(const HallPlane& H, std::span<const HallPoint> S) {
  const Incidence inc = tally(H, S);
  std::vector<HallPoint> out;
  std::vector<std::uint32_t> lines;
  for (std::uint32_t p = 0; p < H.hall_point_count(); ++p) {
    if (!inc.member[p]) continue;
    H.lines_through(p, lines);
    const bool nucleus = std::all_of(lines.begin(), lines.end(), [&](auto L) { return inc.line_count[L] <= 2; });
    if (nucleus) out.push_back(H.point_at(p));
  }
  return out;
}

std::map<int, int> per_point_line_distribution(const HallPlane& H, const Conic& K, AffinePoint P) {
  if (!K.contains(P)) throw GeometryError("per_point_line_distribution: point is not on the conic");
  const auto counts = new_line_counts(H, K.affine_points());
  std::map<int, int> out;
  for (unsigned c = 0; c < H.class_count(); ++c) ++out[counts[H.new_line_index(P.x.code(), P.y.code(), c)]];
  return out;
}

std::optional<AffinePoint> TangentWitness::unique() const {
  if (intersection == 3 && witnesses.size() == 1) return witnesses.front();
  return std::nullopt;
}

TangentWitness three_secant_tangent_witness(const HallPlane& H, const Conic& K, const NewLine& L) {
  if (!H.field().even()) throw GeometryError("three_secant_tangent_witness needs q even");
  TangentWitness w;
  for (const auto& P : K.affine_points()) {
    if (!H.contains(L, P)) continue;
    ++w.intersection;
    const ProjLine t = K.tangent_at(ProjPoint::affine(P));
    if (t.a.is_zero() && t.b.is_zero()) continue;  // the line at infinity
    if (in_standard_derivation_set(ProjPoint::make(t.b, -t.a, H.field().zero()))) w.witnesses.push_back(P);
  }
  return w;
}

}  // namespace hall
