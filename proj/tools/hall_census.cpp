// hall-census: command-line front end to the Hall plane conic library.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "hall/census.hpp"
#include "hall/oracles.hpp"

using namespace hall;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kConfig = 2;
constexpr int kTimeout = 3;

struct Global {
  unsigned p = 0;
  unsigned k = 1;
  std::vector<unsigned> modulus;
  std::string field_file;
  std::string format = "json";
  std::string out;
  unsigned jobs = 1;
  bool no_timestamp = false;
  double timeout = 60;
};

FieldSpec field_spec(const Global& g) {
  if (!g.field_file.empty()) return load_field_spec(g.field_file);
  if (g.p == 0) throw ConfigError("--p (or --field-file) is required");
  return make_field_spec(g.p, g.k, g.modulus);
}

std::unique_ptr<Field> make_field(const Global& g) {
  try {
    return std::make_unique<Field>(field_spec(g));
  } catch (const FieldError& e) {
    throw ConfigError(e.what());
  }
}

Conic conic_arg(const Field& f, const std::string& text) {
  const auto c = parse_conic(f, text);
  auto K = Conic::try_make(c);
  if (!K) throw ConfigError("degenerate conic '" + text + "'");
  return *K;
}

std::vector<Fe> elements_arg(const Field& f, const std::string& text, std::size_t n, const std::string& what) {
  std::vector<Fe> out;
  for (const auto& part : split_top_level(text)) out.push_back(parse_element(f, part));
  if (out.size() != n) throw ConfigError(what + " needs " + std::to_string(n) + " elements, got '" + text + "'");
  return out;
}

ProjPoint point_arg(const Field& f, const std::string& text) {
  const auto v = elements_arg(f, text, 3, "point");
  return ProjPoint::make(v[0], v[1], v[2]);
}

AffinePoint affine_arg(const Field& f, const std::string& text) {
  const auto v = elements_arg(f, text, 2, "affine point");
  return {v[0], v[1]};
}

void emit(const Global& g, const std::string& name, const std::string& body) {
  if (g.out.empty()) {
    std::cout << body;
    return;
  }
  std::filesystem::create_directories(g.out);
  std::ofstream out(std::filesystem::path(g.out) / name, std::ios::binary);
  if (!out) throw ConfigError("cannot write into " + g.out);
  out << body;
}

void emit_json(const Global& g, const std::string& name, json j) {
  json head{{"schema", 1}};
  for (auto& [k, v] : j.items()) head[k] = v;
  emit(g, name, head.dump(2) + "\n");
}

json triangle_json(const Triangle& t) {
  json j = json::array();
  for (const auto& P : t.A) j.push_back(point_json(P));
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conics of PG(2,q^2) inside the Hall plane of order q^2"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--p", g.p, "characteristic");
  app.add_option("--k", g.k, "q = p^k");
  app.add_option("--modulus", g.modulus, "coefficients of the degree-2k modulus, constant term first")->delimiter(',');
  app.add_option("--field-file", g.field_file, "JSON field spec {p, k, modulus} or {q}");
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", g.out, "output directory");
  app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--no-timestamp", g.no_timestamp, "omit timestamps and timings");
  app.add_option("--timeout", g.timeout, "per-check wall-clock budget in seconds")->check(CLI::PositiveNumber);

  std::string conic_text;
  auto* classify = app.add_subcommand("classify", "kind, infinite points, nucleus and positions of D");
  classify->add_option("conic", conic_text, "conic literal")->required();

  bool with_checks = false;
  auto* spectrum = app.add_subcommand("spectrum", "secant spectrum over the new lines");
  spectrum->add_option("conic", conic_text, "conic literal")->required();
  spectrum->add_flag("--checks", with_checks, "also apply every applicable registered check");

  bool adjoin = false;
  auto* arc = app.add_subcommand("arc", "arc, completeness and hyperoval report for the inherited point set");
  arc->add_option("conic", conic_text, "conic literal")->required();
  arc->add_flag("--adjoin-infinite", adjoin, "add the infinite points outside D");

  std::string line_text;
  std::vector<std::string> point_texts;
  bool subplane = false;
  auto* sk = app.add_subcommand("sk-count", "triangles inscribed in a conic with sides through three points of a line");
  sk->add_option("conic", conic_text, "conic literal")->required();
  sk->add_option("--line", line_text, "line coefficients a,b,c")->required();
  sk->add_option("--point", point_texts, "point x,y,z on the line (three times)")->required()->expected(3);
  sk->add_flag("--subplane", subplane, "count inside PG(2,q)");

  std::vector<std::string> affine_texts;
  auto* pc = app.add_subcommand("parabola-count", "parabolas K_u meeting a new line in exactly three given points (q odd)");
  pc->add_option("--line", line_text, "new line lambda,a,b")->required();
  pc->add_option("--point", affine_texts, "affine point x,y on the line (three times)")->required()->expected(3);

  std::string beta_text;
  std::string gamma_text;
  auto* nbeta = app.add_subcommand("nbeta", "GF(q)-rational roots of the N_beta cubic (q even)");
  nbeta->add_option("--beta", beta_text, "beta; all nonzero beta when omitted");

  auto* nf = app.add_subcommand("normalform", "rational Möbius map to X^2 + X + w (q even)");
  nf->add_option("--beta", beta_text, "beta")->required();
  nf->add_option("--gamma", gamma_text, "gamma")->required();

  std::string config_path;
  auto* census = app.add_subcommand("census", "run a JSON census config");
  census->add_option("config", config_path, "config file")->required()->check(CLI::ExistingFile);

  std::vector<unsigned> q_list;
  auto* verify = app.add_subcommand("verify", "every registered check on each q; prints a pass/fail matrix");
  verify->add_option("q", q_list, "prime powers")->required()->delimiter(',');

  bool emit_points = false;
  auto* lines = app.add_subcommand("lines", "all affine Hall lines as JSON lines");
  lines->add_flag("--emit-points", emit_points, "include the affine points of each line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kConfig;
  }

  try {
    if (census->parsed()) {
      std::ifstream in(config_path);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw ConfigError(config_path + ": " + e.what());
      }
      auto config = CensusConfig::from_json(j);
      if (!g.out.empty()) config.out_dir = g.out;
      if (app.get_option("--format")->count()) config.format = g.format;
      if (app.get_option("--jobs")->count()) config.jobs = g.jobs;
      if (app.get_option("--timeout")->count()) config.timeout_seconds = g.timeout;
      if (g.no_timestamp) config.timestamp = false;
      config.validate();
      const auto report = run_census(config);
      if (config.out_dir.empty()) {
        if (config.format == "csv") {
          std::cout << results_csv(report.results, config.timestamp);
        } else {
          json out{{"schema", 1}, {"results", json::array()}};
          for (const auto& r : report.results) out["results"].push_back(result_json(r, config.timestamp));
          out["spectra"] = report.spectra;
          std::cout << out.dump(2) << "\n";
        }
        if (!report.table.empty()) std::cout << open_question_csv(report.table);
      } else {
        write_report(report, config);
      }
      return report.any_fail() ? kFail : kPass;
    }

    if (verify->parsed()) {
      std::vector<FieldSpec> fields;
      for (unsigned q : q_list) fields.push_back(field_spec_from_json(json{{"q", q}}));
      const auto report = verify_all(fields, g.jobs, g.timeout);
      std::cout << format_matrix(report, fields);
      for (const auto& r : report.results) {
        if (r.status == Status::Fail) std::cout << "FAIL " << r.check << " q=" << r.q << ": " << r.reason << "\n";
      }
      if (!g.out.empty()) {
        CensusConfig c;
        c.out_dir = g.out;
        c.format = g.format;
        c.timestamp = !g.no_timestamp;
        write_report(report, c);
      }
      return report.any_fail() ? kFail : kPass;
    }

    const auto field = make_field(g);
    const Field& f = *field;
    const HallPlane H(f);
    const Context ctx{f, H, g.jobs, std::chrono::steady_clock::now() +
                                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(g.timeout))};

    if (classify->parsed()) {
      const Conic K = conic_arg(f, conic_text);
      json j{{"q", f.q()}, {"conic", format_conic(K.coeffs())}, {"class", class_json(K.classification())}};
      if (!f.even()) {
        const auto d = classify_derivation_set(K);
        j["derivation_set"] = json{{"external", d.external}, {"internal", d.internal}, {"on_conic", d.on}};
      }
      emit_json(g, "classify.json", j);
      return kPass;
    }
    if (spectrum->parsed()) {
      const Conic K = conic_arg(f, conic_text);
      const auto j = spectrum_report(ctx, K, with_checks);
      bool failed = false;
      if (with_checks) {
        for (const auto& r : j.at("checks")) failed |= r.at("status") == "fail";
      }
      if (g.format == "csv") {
        std::string body = "i,a_i\n";
        const auto& a = j.at("spectrum");
        for (std::size_t i = 0; i < a.size(); ++i) body += std::to_string(i) + "," + a[i].dump() + "\n";
        emit(g, "spectrum.csv", body);
      } else {
        emit_json(g, "spectrum.json", j);
      }
      return failed ? kFail : kPass;
    }
    if (arc->parsed()) {
      const Conic K = conic_arg(f, conic_text);
      const auto pts = inherited_point_set(H, K, adjoin);
      const auto r = arc_report(H, pts);
      json ext = json::array();
      for (const auto& P : r.extension_points) ext.push_back(hall_point_json(P));
      json j{{"q", f.q()},         {"conic", format_conic(K.coeffs())}, {"size", r.size},
             {"max_line", r.max_line}, {"is_arc", r.is_arc},          {"is_complete", r.is_complete},
             {"extension_points", ext}, {"hyperoval_reachable", r.hyperoval_reachable}};
      if (r.hyperoval_pair) j["hyperoval_pair"] = json::array({hall_point_json(r.hyperoval_pair->first), hall_point_json(r.hyperoval_pair->second)});
      emit_json(g, "arc.json", j);
      return kPass;
    }
    if (sk->parsed()) {
      const Conic K = conic_arg(f, conic_text);
      const auto l = elements_arg(f, line_text, 3, "line");
      const ProjLine r = ProjLine::make(l[0], l[1], l[2]);
      const std::array<ProjPoint, 3> T{point_arg(f, point_texts[0]), point_arg(f, point_texts[1]), point_arg(f, point_texts[2])};
      const auto res = count_inscribed_triangles(K, r, T, subplane ? Ambient::Subfield : Ambient::Full);
      json w = json::array();
      for (const auto& t : res.triangles) w.push_back(triangle_json(t));
      json inputs{{"conic", format_conic(K.coeffs())},
                  {"line", json::array({element_json(r.a), element_json(r.b), element_json(r.c)})},
                  {"points", json::array({point_json(T[0]), point_json(T[1]), point_json(T[2])})},
                  {"ambient", subplane ? "subplane" : "full"}};
      emit_json(g, "sk-count.json", json{{"inputs", inputs}, {"count", res.count}, {"witnesses", w}});
      return kPass;
    }
    if (pc->parsed()) {
      const auto l = elements_arg(f, line_text, 3, "new line");
      const NewLine L = H.canonical_new_line(l[0], l[1], l[2]);
      const AffinePoint P1 = affine_arg(f, affine_texts[0]), P2 = affine_arg(f, affine_texts[1]), P3 = affine_arg(f, affine_texts[2]);
      const auto res = count_three_secant_parabolas(H, L, P1, P2, P3);
      json us = json::array();
      for (const auto& u : res.u_values) us.push_back(element_json(u));
      json inputs{{"line", hall_line_json(H, L, false)}, {"points", json::array({affine_json(P1), affine_json(P2), affine_json(P3)})}};
      emit_json(g, "parabola-count.json",
                json{{"inputs", inputs}, {"count", res.exactly_three}, {"four_secant", res.four}, {"witnesses", us}});
      return kPass;
    }
    if (nbeta->parsed()) {
      std::vector<Fe> betas;
      if (beta_text.empty()) {
        for (const Fe& b : f.elements()) {
          if (!b.is_zero()) betas.push_back(b);
        }
      } else {
        betas.push_back(parse_element(f, beta_text));
      }
      json rows = json::array();
      for (const Fe& b : betas) {
        const auto r = count_rational_roots_nbeta(b);
        json roots = json::array();
        for (const auto& x : r.roots) roots.push_back(element_json(x));
        rows.push_back(json{{"beta", element_json(b)}, {"in_subfield", b.in_subfield()}, {"count", r.count()}, {"roots", roots}});
      }
      emit_json(g, "nbeta.json", json{{"q", f.q()}, {"q_square", f.q_is_square()}, {"rows", rows}});
      return kPass;
    }
    if (nf->parsed()) {
      const Fe beta = parse_element(f, beta_text);
      const Fe gamma = parse_element(f, gamma_text);
      const QuarticExtension ext(f);
      json inputs{{"beta", element_json(beta)}, {"gamma", element_json(gamma)}};
      try {
        const auto r = normalize_quadratic(beta, gamma, &ext);
        json map = json::array({element_json(r.map.a), element_json(r.map.b), element_json(r.map.c), element_json(r.map.d)});
        emit_json(g, "normalform.json", json{{"inputs", inputs}, {"map", map}, {"w", element_json(r.w)}});
        return kPass;
      } catch (const HypothesisViolated& e) {
        emit_json(g, "normalform.json", json{{"inputs", inputs}, {"hypothesis", to_string(e.kind)}, {"error", e.what()}});
        return kFail;
      }
    }
    if (lines->parsed()) {
      std::ostringstream body;
      for (const auto& L : H.new_lines()) body << hall_line_json(H, L, emit_points).dump() << "\n";
      for (const Fe& m : f.elements()) {
        if (m.in_subfield()) continue;
        for (const Fe& b : f.elements()) body << hall_line_json(H, OldLine{m, b}, emit_points).dump() << "\n";
      }
      emit(g, "lines.jsonl", body.str());
      return kPass;
    }
  } catch (const TimeoutError& e) {
    std::cerr << "timeout: " << e.what() << "\n";
    return kTimeout;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const FieldError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const DegenerateConic& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }
  return kPass;
}
