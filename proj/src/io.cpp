#include "hall/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>

namespace hall {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

long long parse_int(std::string_view s, std::string_view context) {
  s = trim(s);
  long long v = 0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("bad integer '" + std::string(s) + "' in " + std::string(context));
  }
  return v;
}

}  // namespace

std::vector<std::string> split_top_level(std::string_view text) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    const char c = i < text.size() ? text[i] : ',';
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (depth < 0) throw ConfigError("unbalanced brackets in '" + std::string(text) + "'");
    if (c == ',' && depth == 0) {
      out.emplace_back(trim(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) throw ConfigError("unbalanced brackets in '" + std::string(text) + "'");
  return out;
}

Fe parse_element(const Field& f, std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw ConfigError("empty element literal");
  if (s.front() == '-' && s.size() > 1 && (s[1] == 'g' || s[1] == '[')) return -parse_element(f, s.substr(1));
  if (s.front() == '[') {
    if (s.back() != ']') throw ConfigError("bad element literal '" + std::string(s) + "'");
    const auto inner = s.substr(1, s.size() - 2);
    std::vector<unsigned> coords;
    if (!trim(inner).empty()) {
      for (const auto& part : split_top_level(inner)) {
        const long long v = parse_int(part, s);
        if (v < 0 || v >= static_cast<long long>(f.p())) {
          throw ConfigError("coordinate " + part + " outside 0.." + std::to_string(f.p() - 1));
        }
        coords.push_back(static_cast<unsigned>(v));
      }
    }
    if (coords.size() > f.degree()) throw ConfigError("element literal '" + std::string(s) + "' has too many coordinates");
    return f.from_coords(coords);
  }
  if (s.front() == 'g') {
    if (s.size() == 1) return f.primitive();
    if (s.size() < 3 || s[1] != '^') throw ConfigError("bad element literal '" + std::string(s) + "'");
    const long long e = parse_int(s.substr(2), s);
    const long long order = static_cast<long long>(f.size()) - 1;
    return f.primitive().pow(static_cast<std::uint64_t>(((e % order) + order) % order));
  }
  return f.from_int(parse_int(s, "element literal"));
}

std::string format_element(Fe x) {
  std::string out = "[";
  const auto c = x.field().coords(x);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(c[i]);
  }
  return out + "]";
}

json element_json(Fe x) { return x.field().coords(x); }

Fe element_from_json(const Field& f, const json& j) {
  if (j.is_number_integer()) return f.from_int(j.get<long long>());
  if (j.is_string()) return parse_element(f, j.get<std::string>());
  if (j.is_array()) {
    std::vector<unsigned> coords;
    for (const auto& c : j) {
      if (!c.is_number_integer() || c.get<long long>() < 0 || c.get<long long>() >= static_cast<long long>(f.p())) {
        throw ConfigError("bad coordinate in element " + j.dump());
      }
      coords.push_back(c.get<unsigned>());
    }
    if (coords.size() > f.degree()) throw ConfigError("element " + j.dump() + " has too many coordinates");
    return f.from_coords(coords);
  }
  throw ConfigError("bad element " + j.dump());
}

const std::vector<std::string>& family_parameters(const std::string& family) {
  static const std::map<std::string, std::vector<std::string>> table{
      {"Q", {"cxx", "cxy", "cyy", "cxz", "cyz", "czz"}},
      {"parabola", {"u", "a", "b", "c"}},
      {"hyperbola_xy", {"d"}},
      {"normalform", {"c", "u", "v", "w"}},
  };
  const auto it = table.find(family);
  if (it == table.end()) throw ConfigError("unknown conic family '" + family + "'");
  return it->second;
}

ConicCoeffs build_family(const std::string& family, const std::vector<Fe>& args) {
  const auto& names = family_parameters(family);
  if (args.size() != names.size()) {
    throw ConfigError(family + " takes " + std::to_string(names.size()) + " parameters, got " +
                      std::to_string(args.size()));
  }
  if (family == "Q") return make_coeffs(args[0], args[1], args[2], args[3], args[4], args[5]);
  if (family == "parabola") return parabola(args[0], args[1], args[2], args[3]);
  if (family == "hyperbola_xy") return hyperbola_xy(args[0]);
  return normalform(args[0], args[1], args[2], args[3]);
}

ConicCoeffs parse_conic(const Field& f, std::string_view text) {
  const std::string_view s = trim(text);
  std::string family;
  std::string_view body;
  if (s.starts_with("Q:")) {
    family = "Q";
    body = s.substr(2);
  } else {
    const auto open = s.find('(');
    if (open == std::string_view::npos || s.back() != ')') throw ConfigError("bad conic literal '" + std::string(s) + "'");
    family = std::string(trim(s.substr(0, open)));
    body = s.substr(open + 1, s.size() - open - 2);
  }
  std::vector<Fe> args;
  for (const auto& part : split_top_level(body)) args.push_back(parse_element(f, part));
  return build_family(family, args);
}

std::string format_conic(const ConicCoeffs& c) {
  std::string out = "Q: ";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += format_element(c[i]);
  }
  return out;
}

FieldSpec make_field_spec(unsigned p, unsigned k, const std::vector<unsigned>& modulus) {
  if (k == 0) throw ConfigError("k must be positive");
  if (!is_prime(p)) throw ConfigError(std::to_string(p) + " is not prime");
  if (modulus.empty()) {
    try {
      return FieldSpec::standard(p, k);
    } catch (const FieldError& e) {
      throw ConfigError(e.what());
    }
  }
  return FieldSpec{p, k, modulus};
}

FieldSpec field_spec_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("field spec must be an object");
  if (j.contains("q") && !j.contains("p")) {
    const auto pk = prime_power(j.at("q").get<unsigned>());
    if (!pk) throw ConfigError("q = " + j.at("q").dump() + " is not a prime power");
    return make_field_spec(pk->first, pk->second, {});
  }
  if (!j.contains("p") || !j.contains("k")) throw ConfigError("field spec needs p and k (or q)");
  std::vector<unsigned> modulus;
  if (j.contains("modulus")) modulus = j.at("modulus").get<std::vector<unsigned>>();
  return make_field_spec(j.at("p").get<unsigned>(), j.at("k").get<unsigned>(), modulus);
}

json field_spec_json(const FieldSpec& s) { return json{{"p", s.p}, {"k", s.k}, {"modulus", s.modulus}}; }

FieldSpec load_field_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read field spec " + path);
  try {
    return field_spec_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw ConfigError("field spec " + path + ": " + e.what());
  }
}

json point_json(const ProjPoint& P) { return json::array({element_json(P.x), element_json(P.y), element_json(P.z)}); }

json affine_json(AffinePoint P) { return json::array({element_json(P.x), element_json(P.y)}); }

json hall_point_json(const HallPoint& P) {
  if (const auto* a = std::get_if<AffinePoint>(&P)) return json{{"affine", affine_json(*a)}};
  if (const auto* o = std::get_if<OldDirection>(&P)) return json{{"old_direction", element_json(o->slope)}};
  return json{{"new_direction", std::get<NewDirection>(P).cls}};
}

json hall_line_json(const HallPlane& H, const HallLine& L, bool emit_points) {
  json j;
  if (const auto* n = std::get_if<NewLine>(&L)) {
    j = json{{"type", "new"}, {"lambda", element_json(n->lambda)}, {"a", element_json(n->a)}, {"b", element_json(n->b)}};
  } else {
    const auto& o = std::get<OldLine>(L);
    j = json{{"type", "old"}, {"slope", element_json(o.slope)}, {"intercept", element_json(o.intercept)}};
  }
  if (emit_points) {
    json pts = json::array();
    for (const auto& P : H.points(L)) pts.push_back(affine_json(P));
    j["points"] = std::move(pts);
  }
  return j;
}

json class_json(const ConicClass& c) {
  json inf = json::array();
  for (std::size_t i = 0; i < c.infinite_points.size(); ++i) {
    inf.push_back(json{{"point", point_json(c.infinite_points[i])}, {"in_d", static_cast<bool>(c.infinite_in_d[i])}});
  }
  json j{{"kind", to_string(c.kind)}, {"infinite_points", inf}, {"infinite_in_d", c.infinite_in_d_count()},
         {"conjugate", c.conjugate}};
  if (c.nucleus) {
    j["nucleus"] = point_json(*c.nucleus);
    j["nucleus_in_d"] = c.nucleus_in_d;
  }
  return j;
}

}  // namespace hall
