// Scenario checks behind the command-line tool: each returns a CheckReport
// with a pass/fail/recorded verdict and a JSON payload.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "parasurf/conjugacy.hpp"

namespace parasurf {

/// Bad flags, bad macro use or budget refusals; the tool exits with 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CheckOptions {
  CommutatorConvention convention = CommutatorConvention::kInverseFirst;
  std::vector<std::pair<std::string, std::string>> lets;  // --let name=EXPR, in order
  int max_class = 6;
  double timeout_s = 900;
  unsigned threads = 0;  // 0: hardware concurrency
  bool allow_large = false;
};

enum class Verdict { kPass, kFail, kRecorded, kBudget };

const char* to_string(Verdict v);

struct CheckReport {
  std::string name;
  std::string anchor;  // the mathematical statement being checked
  nlohmann::json params = nlohmann::json::object();
  Verdict verdict = Verdict::kFail;
  nlohmann::json payload = nlohmann::json::object();
  double duration_ms = 0;

  [[nodiscard]] nlohmann::json to_json() const;
};

/// Textual macro expansion: `w` becomes the surface relator of genus k/2
/// (odd k is rejected), then each --let name in turn. Names are whole
/// identifiers; generator tokens a<n>/A<n> are never macros.
std::string expand_macros(std::string_view text, int rank, const CheckOptions& opts);
Word parse_expr(std::string_view text, int rank, const CheckOptions& opts);

CheckReport cmd_witt(int rank, int max_degree, const CheckOptions& opts);
CheckReport cmd_word(int rank, std::string_view expr, const CheckOptions& opts);
CheckReport cmd_hypothesis(std::string_view kind, int rank, std::string_view expr, const CheckOptions& opts);
CheckReport cmd_closure_eq(int rank, int cls, std::string_view r1, std::string_view r2, const CheckOptions& opts);
CheckReport cmd_ranks(int rank, int cls, std::string_view relator, const CheckOptions& opts);
CheckReport cmd_parasurface(int rank, int cls, std::string_view delta, const CheckOptions& opts);
/// Classes >= kOpenConjugacyClass are reported as "recorded"; `expect`, when
/// given, is asserted only below that class.
CheckReport cmd_conjugacy(int rank, int cls_min, int cls_max, std::string_view x, std::string_view y,
                          const CheckOptions& opts, std::optional<ConjugacyKind> expect = std::nullopt);
std::vector<CheckReport> cmd_paper_suite(int cls, const CheckOptions& opts);

inline constexpr int kOpenConjugacyClass = 6;

/// True when no report failed; "recorded" verdicts do not count against it.
bool all_passed(const std::vector<CheckReport>& reports);

std::string format_human(const CheckReport& r);

/// Number of computations abandoned at their time budget that are still running.
int abandoned_workers();

/// Free rank of gamma_j/gamma_{j+1} of the genus-g surface group.
Int surface_layer_rank(int genus, int degree);

}  // namespace parasurf
