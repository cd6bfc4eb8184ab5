// Text and JSON forms of fields, elements, points, lines and conics.
//
// Element literals: an integer (read mod p), a little-endian coordinate list
// "[c0,c1,...]", or "g^e" / "g" for powers of the primitive element.
// Conic literals: "Q: cxx,cxy,cyy,cxz,cyz,czz" or one of the named families
// parabola(u,a,b,c), hyperbola_xy(d), normalform(c,u,v,w).
#ifndef HALL_IO_HPP
#define HALL_IO_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hall/conic.hpp"
#include "hall/field.hpp"
#include "hall/plane.hpp"

namespace hall {

using json = nlohmann::ordered_json;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Fe parse_element(const Field& f, std::string_view text);
/// "[c0,c1,...]".
std::string format_element(Fe x);
json element_json(Fe x);
/// Accepts an integer, a coordinate array, or a literal string.
Fe element_from_json(const Field& f, const json& j);

/// Splits on commas outside brackets and parentheses, trimming blanks.
std::vector<std::string> split_top_level(std::string_view text);

/// The six parameter names of a family ("Q", "parabola", ...); throws on unknown names.
const std::vector<std::string>& family_parameters(const std::string& family);
ConicCoeffs build_family(const std::string& family, const std::vector<Fe>& args);
ConicCoeffs parse_conic(const Field& f, std::string_view text);
/// "Q: [..],[..],..." form.
std::string format_conic(const ConicCoeffs& c);

FieldSpec field_spec_from_json(const json& j);
json field_spec_json(const FieldSpec& s);
FieldSpec load_field_spec(const std::string& path);
/// Resolves p and k against an optional modulus override.
FieldSpec make_field_spec(unsigned p, unsigned k, const std::vector<unsigned>& modulus);

json point_json(const ProjPoint& P);
json affine_json(AffinePoint P);
json hall_point_json(const HallPoint& P);
json hall_line_json(const HallPlane& H, const HallLine& L, bool emit_points);
json class_json(const ConicClass& c);

}  // namespace hall

#endif  // HALL_IO_HPP
