#include "hall/census.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace hall {

bool Quantity::pass() const {
  if (relation == "==") return actual == expected;
  if (relation == "<=") return actual <= expected;
  if (relation == ">=") return actual >= expected;
  return true;
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skip: return "skip";
  }
  return "?";
}

void CheckResult::settle() {
  status = std::all_of(quantities.begin(), quantities.end(), [](const Quantity& q) { return q.pass(); }) ? Status::Pass
                                                                                                          : Status::Fail;
}

void Context::poll() const {
  if (std::chrono::steady_clock::now() > deadline) throw TimeoutError("time budget exceeded");
}

bool CensusReport::any_fail() const {
  return std::any_of(results.begin(), results.end(), [](const CheckResult& r) { return r.status == Status::Fail; });
}

namespace {

CheckResult skipped(const CheckDef& def, const Context& ctx, std::string conic, std::string reason) {
  CheckResult r;
  r.check = def.name;
  r.p = ctx.field.p();
  r.q = ctx.field.q();
  r.conic = std::move(conic);
  r.status = Status::Skip;
  r.reason = std::move(reason);
  return r;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Fe> expand_values(const Field& f, const json& v, const std::string& name) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    std::vector<Fe> out;
    if (s == "all" || s == "nonzero") {
      for (const Fe& x : f.elements()) {
        if (s == "all" || !x.is_zero()) out.push_back(x);
      }
      return out;
    }
    if (s == "sub") return f.subfield_elements();
    if (s == "nonsub") {
      for (const Fe& x : f.elements()) {
        if (!x.in_subfield()) out.push_back(x);
      }
      return out;
    }
    return {parse_element(f, s)};
  }
  if (v.is_array()) {
    std::vector<Fe> out;
    for (const auto& e : v) out.push_back(element_from_json(f, e));
    if (out.empty()) throw ConfigError("empty value list for parameter " + name);
    return out;
  }
  return {element_from_json(f, v)};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string iso_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct FieldState {
  std::unique_ptr<Field> field;
  std::unique_ptr<HallPlane> plane;
  std::vector<ConicCoeffs> conics;
  std::vector<std::string> labels;
};

FieldState prepare(const FieldSpec& spec, const CensusConfig& config) {
  FieldState st;
  try {
    st.field = std::make_unique<Field>(spec);
  } catch (const FieldError& e) {
    throw ConfigError(e.what());
  }
  st.plane = std::make_unique<HallPlane>(*st.field);
  for (const auto& text : config.conics) {
    const auto c = parse_conic(*st.field, text);
    if (!Conic::try_make(c)) throw ConfigError("degenerate conic '" + text + "' over q = " + std::to_string(st.field->q()));
    st.conics.push_back(c);
    st.labels.push_back(text);
  }
  for (const auto& fam : config.families) {
    for (const auto& c : expand_family(*st.field, fam)) {
      st.conics.push_back(c);
      st.labels.push_back(format_conic(c));
    }
  }
  return st;
}

std::string conic_label(const CensusConfig& config) {
  std::string out;
  for (const auto& c : config.conics) out += (out.empty() ? "" : "; ") + c;
  for (const auto& f : config.families) out += (out.empty() ? "" : "; ") + f.family + " family";
  return out;
}

}  // namespace

std::vector<CheckResult> run_check(const CheckDef& def, const Context& ctx) {
  if (auto why = def.guard(ctx.field)) return {skipped(def, ctx, "", *why)};
  const auto t0 = std::chrono::steady_clock::now();
  auto out = def.run(ctx);
  const double dt = seconds_since(t0);
  for (auto& r : out) r.wall_seconds = dt / static_cast<double>(out.size());
  return out;
}

CheckResult run_conic_check(const CheckDef& def, const Context& ctx, const Conic& K) {
  const auto label = format_conic(K.coeffs());
  if (auto why = def.guard(ctx.field)) return skipped(def, ctx, label, *why);
  if (!def.conic_rule) return skipped(def, ctx, label, "check has no single-conic form");
  const auto t0 = std::chrono::steady_clock::now();
  auto o = def.conic_rule(ctx, K);
  if (!o.applicable) return skipped(def, ctx, label, o.reason);
  CheckResult r;
  r.check = def.name;
  r.p = ctx.field.p();
  r.q = ctx.field.q();
  r.conic = label;
  r.quantities = std::move(o.quantities);
  r.settle();
  r.wall_seconds = seconds_since(t0);
  return r;
}

std::vector<ConicCoeffs> expand_family(const Field& f, const FamilySweep& sweep) {
  const auto& names = family_parameters(sweep.family);
  std::vector<std::vector<Fe>> values(names.size());
  std::vector<bool> given(names.size(), false);
  for (const auto& [key, v] : sweep.params) {
    const auto it = std::find(names.begin(), names.end(), key);
    if (it == names.end()) throw ConfigError("family " + sweep.family + " has no parameter '" + key + "'");
    const auto i = static_cast<std::size_t>(it - names.begin());
    values[i] = expand_values(f, v, key);
    given[i] = true;
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!given[i]) throw ConfigError("family " + sweep.family + " is missing parameter '" + names[i] + "'");
  }
  std::vector<ConicCoeffs> out;
  std::vector<std::size_t> idx(names.size(), 0);
  for (;;) {
    std::vector<Fe> args;
    for (std::size_t i = 0; i < names.size(); ++i) args.push_back(values[i][idx[i]]);
    const auto c = build_family(sweep.family, args);
    if (Conic::try_make(c)) out.push_back(c);
    std::size_t i = names.size();
    while (i > 0) {
      --i;
      if (++idx[i] < values[i].size()) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
    if (names.empty()) return out;
  }
}

CensusConfig CensusConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("census config must be a JSON object");
  static const std::set<std::string> known{"fields", "q",      "conics", "families", "checks",    "open_question_table",
                                           "out",    "format", "jobs",   "timeout",  "timestamp"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  CensusConfig c;
  try {
    if (j.contains("fields")) {
      for (const auto& f : j.at("fields")) {
        c.fields.push_back(f.is_number_integer() ? field_spec_from_json(json{{"q", f}}) : field_spec_from_json(f));
      }
    }
    if (j.contains("q")) {
      for (const auto& q : j.at("q")) c.fields.push_back(field_spec_from_json(json{{"q", q}}));
    }
    if (j.contains("conics")) c.conics = j.at("conics").get<std::vector<std::string>>();
    if (j.contains("families")) {
      for (const auto& f : j.at("families")) {
        FamilySweep s;
        s.family = f.at("family").get<std::string>();
        if (f.contains("params")) {
          for (const auto& [k, v] : f.at("params").items()) s.params.emplace_back(k, v);
        }
        c.families.push_back(std::move(s));
      }
    }
    if (j.contains("checks")) {
      const auto& ch = j.at("checks");
      if (ch.is_string() && ch.get<std::string>() == "all") {
        for (const auto& d : check_registry()) c.checks.push_back(d.name);
      } else {
        c.checks = ch.get<std::vector<std::string>>();
      }
    }
    c.open_question_table = j.value("open_question_table", false);
    c.out_dir = j.value("out", std::string());
    c.format = j.value("format", std::string("json"));
    c.jobs = j.value("jobs", 1u);
    c.timeout_seconds = j.value("timeout", 60.0);
    c.timestamp = j.value("timestamp", true);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("census config: ") + e.what());
  }
  c.validate();
  return c;
}

void CensusConfig::validate() const {
  if (format != "json" && format != "csv") throw ConfigError("format must be json or csv, got '" + format + "'");
  if (jobs == 0) throw ConfigError("jobs must be at least 1");
  if (!(timeout_seconds > 0)) throw ConfigError("timeout must be positive");
  for (const auto& name : checks) {
    if (!find_check(name)) throw ConfigError("unknown check '" + name + "'");
  }
  for (const auto& f : families) family_parameters(f.family);
  if (open_question_table) {
    for (const auto& f : fields) {
      if (f.p == 2) throw ConfigError("the open question table needs odd q");
    }
  }
}

json spectrum_report(const Context& ctx, const Conic& K, bool with_checks) {
  const HallPlane& H = ctx.plane;
  const auto s = secant_spectrum(H, K, ctx.jobs);
  json j;
  j["q"] = H.q();
  j["p"] = ctx.field.p();
  j["conic"] = format_conic(K.coeffs());
  j["class"] = class_json(K.classification());
  j["affine_points"] = s.affine_points;
  j["spectrum"] = s.a;
  j["lines"] = s.lines();
  j["triples"] = s.triples;
  j["max_line"] = s.max_line;
  if (ctx.field.even()) {
    j["s_external"] = nullptr;
  } else {
    j["s_external"] = classify_derivation_set(K).external;
  }
  if (with_checks) {
    json checks = json::array();
    for (const auto& def : check_registry()) {
      if (!def.conic_rule || def.guard(ctx.field)) continue;
      const auto r = run_conic_check(def, ctx, K);
      if (r.status != Status::Skip) checks.push_back(result_json(r, false));
    }
    j["checks"] = std::move(checks);
  }
  return j;
}

std::vector<OpenQuestionRow> emit_open_question_table(const Context& ctx) {
  const Field& f = ctx.field;
  if (f.even()) throw ConfigError("the open question table needs odd q");
  const Fe z = f.zero();
  const Fe o = f.one();
  std::vector<OpenQuestionRow> rows;
  // Up to translation and homothety, X^2 + aXY + bY^2 + c with c in {1, g}
  // reaches every such conic; the leading X^2 is forced since (1:0:0) is in D.
  for (const Fe& c : {o, f.primitive()}) {
    for (const Fe& a : f.elements()) {
      for (const Fe& b : f.elements()) {
        const auto K = Conic::try_make(make_coeffs(o, a, b, z, z, c));
        if (!K) continue;
        const auto& cls = K->classification();
        const bool wanted = cls.kind == ConicKind::Ellipse || (cls.kind == ConicKind::Hyperbola && !cls.conjugate);
        if (!wanted || cls.infinite_in_d_count() != 0) continue;
        const auto s = secant_spectrum(ctx.plane, *K, ctx.jobs);
        OpenQuestionRow row;
        row.q = f.q();
        row.conic = format_conic(K->coeffs());
        row.kind = to_string(cls.kind);
        row.s = classify_derivation_set(*K).external;
        row.a3 = s.at(3);
        row.a4 = s.at(4);
        row.triples = s.triples;
        rows.push_back(std::move(row));
      }
      ctx.poll();
    }
  }
  return rows;
}

CensusReport run_census(const CensusConfig& config) {
  config.validate();
  std::vector<FieldState> states;
  for (const auto& spec : config.fields) states.push_back(prepare(spec, config));

  struct Task {
    std::size_t field;
    const CheckDef* def;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (const auto& name : config.checks) tasks.push_back({i, find_check(name)});
  }
  const unsigned workers = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(tasks.size())));
  const unsigned inner_jobs = workers > 1 ? 1 : config.jobs;
  const auto budget = std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(config.timeout_seconds));
  const std::string family_label = conic_label(config);

  std::vector<std::vector<CheckResult>> slots(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex err_mu;
  std::exception_ptr error;

  auto work = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size() || stop) return;
      const auto& task = tasks[t];
      const auto& st = states[task.field];
      Context ctx{*st.field, *st.plane, inner_jobs, std::chrono::steady_clock::now() + budget};
      try {
        if (!st.conics.empty() && task.def->conic_rule) {
          if (auto why = task.def->guard(*st.field)) {
            slots[t] = {skipped(*task.def, ctx, family_label, *why)};
          } else {
            const auto t0 = std::chrono::steady_clock::now();
            auto r = sweep_conic_rule(*task.def, ctx, st.conics, family_label);
            r.wall_seconds = seconds_since(t0);
            slots[t] = {std::move(r)};
          }
        } else {
          slots[t] = run_check(*task.def, ctx);
        }
      } catch (const TimeoutError&) {
        std::lock_guard lock(err_mu);
        if (!error) {
          error = std::make_exception_ptr(TimeoutError(task.def->name + " at q = " + std::to_string(st.field->q()) +
                                                       " exceeded " + std::to_string(config.timeout_seconds) + " s"));
        }
        stop = true;
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!error) error = std::current_exception();
        stop = true;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < workers; ++i) pool.emplace_back(work);
    work();
  }
  if (error) std::rethrow_exception(error);

  CensusReport report;
  for (auto& s : slots) {
    for (auto& r : s) report.results.push_back(std::move(r));
  }
  for (const auto& st : states) {
    Context ctx{*st.field, *st.plane, config.jobs, std::chrono::steady_clock::now() + budget};
    for (const auto& c : st.conics) report.spectra.push_back(spectrum_report(ctx, Conic(c), false));
    if (config.open_question_table) {
      auto rows = emit_open_question_table(ctx);
      report.table.insert(report.table.end(), rows.begin(), rows.end());
    }
  }
  return report;
}

CensusReport verify_all(const std::vector<FieldSpec>& fields, unsigned jobs, double timeout_seconds) {
  CensusConfig c;
  c.fields = fields;
  for (const auto& d : check_registry()) c.checks.push_back(d.name);
  c.jobs = jobs;
  c.timeout_seconds = timeout_seconds;
  return run_census(c);
}

std::string format_matrix(const CensusReport& report, const std::vector<FieldSpec>& fields) {
  std::vector<unsigned> qs;
  for (const auto& f : fields) {
    unsigned q = 1;
    for (unsigned i = 0; i < f.k; ++i) q *= f.p;
    qs.push_back(q);
  }
  std::vector<std::string> names;
  std::map<std::pair<std::string, unsigned>, Status> cell;
  for (const auto& r : report.results) {
    if (std::find(names.begin(), names.end(), r.check) == names.end()) names.push_back(r.check);
    const auto key = std::make_pair(r.check, r.q);
    const auto it = cell.find(key);
    if (it == cell.end()) {
      cell[key] = r.status;
    } else if (r.status == Status::Fail || (r.status == Status::Pass && it->second == Status::Skip)) {
      it->second = r.status;
    }
  }
  std::size_t width = 5;
  for (const auto& n : names) width = std::max(width, n.size());
  std::ostringstream out;
  out << std::string(width, ' ');
  for (unsigned q : qs) out << "  q=" << q << std::string(q < 10 ? 2 : 1, ' ');
  out << '\n';
  for (const auto& n : names) {
    out << n << std::string(width - n.size(), ' ');
    for (unsigned q : qs) {
      const auto it = cell.find({n, q});
      out << "  " << (it == cell.end() ? "-   " : it->second == Status::Pass ? "PASS" : it->second == Status::Fail ? "FAIL" : "skip");
    }
    out << '\n';
  }
  return out.str();
}

json result_json(const CheckResult& r, bool with_time) {
  json qs = json::array();
  for (const auto& q : r.quantities) {
    qs.push_back(json{{"key", q.key}, {"relation", q.relation}, {"expected", q.expected}, {"actual", q.actual}, {"pass", q.pass()}});
  }
  json j{{"check", r.check}, {"p", r.p}, {"q", r.q}, {"conic", r.conic}, {"status", to_string(r.status)}, {"pass", r.status != Status::Fail},
         {"quantities", qs}};
  if (!r.reason.empty()) j["reason"] = r.reason;
  if (with_time) j["wall_seconds"] = r.wall_seconds;
  return j;
}

std::string results_csv(const std::vector<CheckResult>& results, bool with_time) {
  std::ostringstream out;
  out << "check,p,q,conic,quantity,relation,expected,actual,pass,status,reason";
  if (with_time) out << ",wall_seconds";
  out << '\n';
  auto row = [&](const CheckResult& r, const Quantity* q) {
    out << r.check << ',' << r.p << ',' << r.q << ',' << csv_field(r.conic) << ',';
    if (q) {
      out << csv_field(q->key) << ',' << q->relation << ',' << q->expected << ',' << q->actual << ',' << (q->pass() ? "true" : "false");
    } else {
      out << ",,,,";
    }
    out << ',' << to_string(r.status) << ',' << csv_field(r.reason);
    if (with_time) out << ',' << r.wall_seconds;
    out << '\n';
  };
  for (const auto& r : results) {
    if (r.quantities.empty()) row(r, nullptr);
    for (const auto& q : r.quantities) row(r, &q);
  }
  return out.str();
}

std::string open_question_csv(const std::vector<OpenQuestionRow>& rows) {
  std::ostringstream out;
  out << "q,conic,kind,s,a3,a4,triples\n";
  for (const auto& r : rows) {
    out << r.q << ',' << csv_field(r.conic) << ',' << r.kind << ',' << r.s << ',' << r.a3 << ',' << r.a4 << ',' << r.triples << '\n';
  }
  return out.str();
}

void write_report(const CensusReport& report, const CensusConfig& config) {
  namespace fs = std::filesystem;
  if (config.out_dir.empty()) return;
  fs::create_directories(config.out_dir);
  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream out(fs::path(config.out_dir) / name, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + (fs::path(config.out_dir) / name).string());
    out << body;
  };
  if (config.format == "json") {
    json head{{"schema", 1}};
    if (config.timestamp) head["generated"] = iso_now();
    json results = head;
    results["results"] = json::array();
    for (const auto& r : report.results) results["results"].push_back(result_json(r, config.timestamp));
    write("results.json", results.dump(2) + "\n");
    json spectra = head;
    spectra["spectra"] = report.spectra;
    write("spectra.json", spectra.dump(2) + "\n");
  } else {
    std::string prefix = config.timestamp ? "# generated " + iso_now() + "\n" : "";
    write("results.csv", prefix + results_csv(report.results, config.timestamp));
    std::ostringstream sp;
    sp << "q,conic,kind,i,a_i\n";
    for (const auto& s : report.spectra) {
      const auto& a = s.at("spectrum");
      for (std::size_t i = 0; i < a.size(); ++i) {
        sp << s.at("q").get<unsigned>() << ',' << csv_field(s.at("conic").get<std::string>()) << ','
           << s.at("class").at("kind").get<std::string>() << ',' << i << ',' << a[i].get<std::uint64_t>() << '\n';
      }
    }
    write("spectra.csv", prefix + sp.str());
  }
  if (!report.table.empty()) write("open_question.csv", open_question_csv(report.table));
}

}  // namespace hall
