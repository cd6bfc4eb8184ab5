// Registered verifications, the census runner, and report persistence.
#ifndef HALL_CENSUS_HPP
#define HALL_CENSUS_HPP

#include <chrono>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hall/conic.hpp"
#include "hall/field.hpp"
#include "hall/inherited.hpp"
#include "hall/io.hpp"
#include "hall/plane.hpp"

namespace hall {

class TimeoutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One compared value. "info" quantities are reported and always pass.
struct Quantity {
  std::string key;
  long long expected = 0;
  long long actual = 0;
  std::string relation = "==";

  bool pass() const;
};

enum class Status { Pass, Fail, Skip };
const char* to_string(Status s);

struct CheckResult {
  std::string check;
  unsigned p = 0;
  unsigned q = 0;
  /// Conic literal, or a sweep description.
  std::string conic;
  std::vector<Quantity> quantities;
  Status status = Status::Skip;
  std::string reason;
  double wall_seconds = 0;

  /// Sets status from the quantities.
  void settle();
};

/// Immutable per-field state shared by all checks on that field.
struct Context {
  const Field& field;
  const HallPlane& plane;
  unsigned jobs = 1;
  std::chrono::steady_clock::time_point deadline = std::chrono::steady_clock::time_point::max();

  /// Throws TimeoutError past the deadline.
  void poll() const;
};

struct ConicCheckOutcome {
  bool applicable = false;
  std::string reason;
  std::vector<Quantity> quantities;
};

struct CheckDef {
  std::string name;
  std::string summary;
  /// Skip reason when the field does not meet the hypotheses.
  std::function<std::optional<std::string>(const Field&)> guard;
  /// Field-level run with built-in instances.
  std::function<std::vector<CheckResult>(const Context&)> run;
  /// Present for checks that apply to a single conic; used for config conics.
  std::function<ConicCheckOutcome(const Context&, const Conic&)> conic_rule;
};

const std::vector<CheckDef>& check_registry();
/// One conic per class reachable over the field: parabolas with I in and out
/// of D, hyperbolas with 2, 1, 0 infinite points in D (conjugate and not), an
/// ellipse.
std::vector<ConicCoeffs> representative_conics(const Field& f);
const CheckDef* find_check(const std::string& name);

/// Runs one check on a field with its built-in instances, honoring guards.
std::vector<CheckResult> run_check(const CheckDef& def, const Context& ctx);
/// Applies a conic rule to one conic; Skip when not applicable.
CheckResult run_conic_check(const CheckDef& def, const Context& ctx, const Conic& K);
/// One aggregated result for a conic rule over a list: the single conic's
/// quantities when exactly one applies, otherwise applicable/failing counts
/// followed by the first failing (or first) conic's quantities.
CheckResult sweep_conic_rule(const CheckDef& def, const Context& ctx, const std::vector<ConicCoeffs>& conics,
                             const std::string& label);

/// A named family with each parameter given as a list of literals or one of
/// "all", "nonzero", "sub", "nonsub".
struct FamilySweep {
  std::string family;
  std::vector<std::pair<std::string, json>> params;
};

std::vector<ConicCoeffs> expand_family(const Field& f, const FamilySweep& sweep);

struct CensusConfig {
  std::vector<FieldSpec> fields;
  std::vector<std::string> conics;
  std::vector<FamilySweep> families;
  std::vector<std::string> checks;
  bool open_question_table = false;
  std::string out_dir;
  std::string format = "json";
  unsigned jobs = 1;
  double timeout_seconds = 60;
  bool timestamp = true;

  /// Validates check names, families and formats; throws ConfigError.
  static CensusConfig from_json(const json& j);
  void validate() const;
};

struct OpenQuestionRow {
  unsigned q = 0;
  std::string conic;
  std::string kind;
  int s = 0;
  std::uint64_t a3 = 0;
  std::uint64_t a4 = 0;
  std::uint64_t triples = 0;
};

struct CensusReport {
  std::vector<CheckResult> results;
  std::vector<json> spectra;
  std::vector<OpenQuestionRow> table;

  bool any_fail() const;
};

/// Spectrum report for one conic: {q, p, conic, class, spectrum, triples,
/// s_external, checks}. s_external is null for q even.
json spectrum_report(const Context& ctx, const Conic& K, bool with_checks = true);

/// (q, s, a3, a4) rows for ellipses and hyperbolas with non-conjugate
/// infinite points outside D. Throws ConfigError for even q.
std::vector<OpenQuestionRow> emit_open_question_table(const Context& ctx);

CensusReport run_census(const CensusConfig& config);
/// Every registered check on every field with built-in instances.
CensusReport verify_all(const std::vector<FieldSpec>& fields, unsigned jobs = 1, double timeout_seconds = 60);
/// Text matrix, one row per check and one column per q.
std::string format_matrix(const CensusReport& report, const std::vector<FieldSpec>& fields);

json result_json(const CheckResult& r, bool with_time);
std::string results_csv(const std::vector<CheckResult>& results, bool with_time);
std::string open_question_csv(const std::vector<OpenQuestionRow>& rows);
/// Writes results, spectra and table files into config.out_dir.
void write_report(const CensusReport& report, const CensusConfig& config);

}  // namespace hall

#endif  // HALL_CENSUS_HPP
