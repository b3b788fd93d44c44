// parasurf: exact checks on free nilpotent quotients and one-relator groups.
//
// Exit status: 0 when no check failed, 1 when one did, 2 on usage or parse errors.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "parasurf/checks.hpp"

using namespace parasurf;

namespace {

std::optional<ConjugacyKind> parse_expect(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "equal") return ConjugacyKind::kEqual;
  if (s == "conjugate") return ConjugacyKind::kConjugate;
  if (s == "not-conjugate") return ConjugacyKind::kNotConjugate;
  throw UsageError("--expect must be equal, conjugate or not-conjugate");
}

std::pair<std::string, std::string> split_let(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos) throw UsageError("--let expects name=EXPR, got '" + s + "'");
  return {s.substr(0, eq), s.substr(eq + 1)};
}

int finish(int code) {
  std::cout.flush();
  std::cerr.flush();
  // Workers abandoned at their time budget cannot be joined.
  if (abandoned_workers() > 0) std::_Exit(code);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in free nilpotent groups F_{k,c} and their one-relator quotients"};
  app.require_subcommand(1);
  app.fallthrough();

  int k = 4;
  int cls = 4;
  bool as_json = false;
  std::vector<std::string> lets;
  double timeout = 900;
  unsigned threads = 0;
  int max_class = 6;
  std::string out_path;
  std::string convention = "inverse-first";

  app.add_option("--k", k, "Rank of the free group");
  app.add_option("--class", cls, "Nilpotency class c of F_{k,c} (monomials of degree >= c dropped)");
  app.add_flag("--json", as_json, "Emit a JSON array of reports");
  app.add_option("--let", lets, "Word macro name=EXPR (repeatable)")->allow_extra_args(false);
  app.add_option("--timeout", timeout, "Per-check time budget in seconds")->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "Parallel checks in paper-suite (0: all cores)");
  app.add_option("--max-class", max_class, "Largest class computed before a check is recorded as over budget");
  app.add_option("--out", out_path, "Write the report here instead of stdout");
  app.add_option("--convention", convention, "Commutator convention")
      ->check(CLI::IsMember({"inverse-first", "inverse-last"}));

  int degree = 7;
  bool allow_large = false;
  auto* witt = app.add_subcommand("witt", "Witt ranks against Lyndon word counts");
  witt->add_option("--degree", degree, "Largest degree j");
  witt->add_flag("--allow-large", allow_large, "Lift the k <= 4, j <= 10 budget");

  std::string expr1, expr2, kind, expect;
  auto* word = app.add_subcommand("word", "Reduce a word and report lengths and proper-power structure");
  word->add_option("word", expr1, "Word expression")->required();

  auto* hyp = app.add_subcommand("hypothesis", "Cyclic-reduction and length hypotheses for the two relator families");
  hyp->add_option("kind", kind, "type2 (gamma) or type3 (delta)")->required()->check(CLI::IsMember({"type2", "type3"}));
  hyp->add_option("word", expr1, "gamma or delta")->required();

  auto* ceq = app.add_subcommand("closure-eq", "Compare normal closures <<r1>> and <<r2>> in F_{k,c}");
  ceq->add_option("r1", expr1)->required();
  ceq->add_option("r2", expr2)->required();

  auto* ranks = app.add_subcommand("ranks", "Lower central layer invariants of F_k/<<r>>");
  ranks->add_option("relator", expr1)->required();

  auto* para = app.add_subcommand("parasurface", "Certificate for the relator [a1 delta,a2][a3,a4]...");
  para->add_option("delta", expr1)->required();

  int min_class = 2;
  auto* conj = app.add_subcommand("conjugacy", "Decide conjugacy of x and y in F_{k,c} for a range of classes");
  conj->add_option("x", expr1)->required();
  conj->add_option("y", expr2)->required();
  conj->add_option("--min-class", min_class, "Smallest class scanned (--class is the largest)");
  conj->add_option("--expect", expect, "Assert this verdict below the open-outcome class");

  auto* suite = app.add_subcommand("paper-suite", "Run every scenario up to --class");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CheckOptions opts;
  opts.max_class = max_class;
  opts.timeout_s = timeout;
  opts.threads = threads;
  opts.allow_large = allow_large;

  std::vector<CheckReport> reports;
  try {
    opts.convention = convention_from_string(convention);
    for (const std::string& l : lets) opts.lets.push_back(split_let(l));

    if (*witt) {
      reports.push_back(cmd_witt(k, degree, opts));
    } else if (*word) {
      reports.push_back(cmd_word(k, expr1, opts));
    } else if (*hyp) {
      reports.push_back(cmd_hypothesis(kind, k, expr1, opts));
    } else if (*ceq) {
      reports.push_back(cmd_closure_eq(k, cls, expr1, expr2, opts));
    } else if (*ranks) {
      reports.push_back(cmd_ranks(k, cls, expr1, opts));
    } else if (*para) {
      reports.push_back(cmd_parasurface(k, cls, expr1, opts));
    } else if (*conj) {
      reports.push_back(cmd_conjugacy(k, min_class, cls, expr1, expr2, opts, parse_expect(expect)));
    } else if (*suite) {
      reports = cmd_paper_suite(cls, opts);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return finish(2);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return finish(2);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return finish(2);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return finish(1);
  }

  std::ostringstream text;
  if (as_json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(r.to_json());
    text << arr.dump(2) << '\n';
  } else {
    for (const auto& r : reports) text << format_human(r);
    int pass = 0, fail = 0, recorded = 0;
    for (const auto& r : reports) {
      if (r.verdict == Verdict::kPass) ++pass;
      else if (r.verdict == Verdict::kFail) ++fail;
      else ++recorded;
    }
    if (reports.size() > 1) text << pass << " passed, " << fail << " failed, " << recorded << " recorded\n";
  }

  if (out_path.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "cannot write " << out_path << '\n';
      return finish(2);
    }
    f << text.str();
  }
  return finish(all_passed(reports) ? 0 : 1);
}
