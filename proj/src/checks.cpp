#include "parasurf/checks.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <functional>
#include <future>
#include <memory>
#include <sstream>
#include <thread>

namespace parasurf {

using nlohmann::json;

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kRecorded:
      return "recorded";
    case Verdict::kBudget:
      return "recorded: budget";
  }
  return "?";
}

json CheckReport::to_json() const {
  return json{{"name", name},       {"anchor", anchor},   {"params", params},
              {"verdict", to_string(verdict)}, {"payload", payload}, {"duration_ms", duration_ms}};
}

namespace {

std::atomic<int> g_abandoned{0};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool is_generator_token(std::string_view s) {
  if (s.size() < 2 || (s[0] != 'a' && s[0] != 'A')) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::string substitute(std::string_view text, std::string_view name, const std::string& replacement) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_ident_start(text[i])) {
      out += text[i++];
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_ident_char(text[j])) ++j;
    const std::string_view ident = text.substr(i, j - i);
    if (ident == name) {
      out += '(' + replacement + ')';
    } else {
      out += ident;
    }
    i = j;
  }
  return out;
}

bool mentions(std::string_view text, std::string_view name) {
  return substitute(text, name, "") != text;
}

std::string conv_name(const CheckOptions& opts) { return std::string(to_string(opts.convention)); }

void require_class(int cls) {
  if (cls < 2) throw UsageError("class must be >= 2");
  if (cls > kMaxSeriesClass) throw UsageError("class above the supported maximum " + std::to_string(kMaxSeriesClass));
}

void require_rank(int rank) {
  if (rank < 1) throw UsageError("k must be >= 1");
}

struct Outcome {
  Verdict verdict;
  json payload;
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Runs fn on a worker thread; past the time budget the worker is abandoned
// and the report says so. fn must own everything it touches.
CheckReport budgeted(CheckReport report, double timeout_s, std::function<Outcome()> fn) {
  auto promise = std::make_shared<std::promise<Outcome>>();
  auto future = promise->get_future();
  // 0 running, 1 finished, 2 abandoned
  auto state = std::make_shared<std::atomic<int>>(0);
  const auto t0 = Clock::now();
  std::thread worker([promise, state, fn = std::move(fn)]() {
    try {
      promise->set_value(fn());
    } catch (...) {
      promise->set_exception(std::current_exception());
    }
    if (state->exchange(1) == 2) --g_abandoned;
  });
  const auto budget = std::chrono::duration<double>(timeout_s);
  if (future.wait_for(budget) == std::future_status::ready) {
    worker.join();
    Outcome o = future.get();
    report.verdict = o.verdict;
    report.payload = std::move(o.payload);
  } else {
    ++g_abandoned;
    if (state->exchange(2) == 1) --g_abandoned;
    worker.detach();
    report.verdict = Verdict::kBudget;
    report.payload = json{{"budget", "timeout"}, {"timeout_s", timeout_s}};
  }
  report.duration_ms = ms_since(t0);
  return report;
}

CheckReport over_class_budget(CheckReport report, int cls, const CheckOptions& opts) {
  report.verdict = Verdict::kBudget;
  report.payload = json{{"budget", "max-class"}, {"class", cls}, {"max_class", opts.max_class}};
  return report;
}

json torsion_json(const std::vector<Int>& t) {
  json out = json::array();
  for (const Int& x : t) out.push_back(x.get_str());
  return out;
}

json layer_json(const LayerInvariant& l) {
  return json{{"degree", l.degree},
              {"witt", l.free_baseline.get_str()},
              {"relation_rank", l.relation_rank},
              {"free_rank", l.free_rank},
              {"torsion", torsion_json(l.torsion)}};
}

json matrix_json(const IntMatrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (const Int& x : m.row(r)) row.push_back(x.get_str());
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

int abandoned_workers() { return g_abandoned.load(); }

std::string expand_macros(std::string_view text, int rank, const CheckOptions& opts) {
  std::vector<std::pair<std::string, std::string>> table;
  for (const auto& [name, expr] : opts.lets) {
    if (name.empty() || !is_ident_start(name[0]) ||
        !std::all_of(name.begin(), name.end(), is_ident_char)) {
      throw UsageError("--let: bad macro name '" + name + "'");
    }
    if (is_generator_token(name) || name == "w") throw UsageError("--let: '" + name + "' is reserved");
    table.emplace_back(name, expr);
  }
  // Later definitions may use earlier ones; expand from the last backwards.
  std::string out(text);
  for (auto it = table.rbegin(); it != table.rend(); ++it) out = substitute(out, it->first, it->second);
  if (mentions(out, "w")) {
    if (rank % 2 != 0) throw UsageError("macro 'w' needs even k, got k=" + std::to_string(rank));
    out = substitute(out, "w", format_word(surface_relator(rank / 2, opts.convention)));
  }
  return out;
}

Word parse_expr(std::string_view text, int rank, const CheckOptions& opts) {
  return parse_word(expand_macros(text, rank, opts), rank, opts.convention);
}

Int surface_layer_rank(int genus, int degree) {
  // a_n = trace of the n-th power of the companion of 1 - k t + t^2, then
  // Moebius inversion as for necklaces.
  const int k = 2 * genus;
  std::vector<Int> a{Int(2), Int(k)};
  for (int n = 2; n <= degree; ++n) a.push_back(k * a[n - 1] - a[n - 2]);
  auto mobius = [](int n) {
    int r = 1;
    for (int p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      n /= p;
      if (n % p == 0) return 0;
      r = -r;
    }
    return n > 1 ? -r : r;
  };
  Int sum = 0;
  for (int d = 1; d <= degree; ++d) {
    if (degree % d == 0) sum += mobius(degree / d) * a[static_cast<std::size_t>(d)];
  }
  return sum / degree;
}

CheckReport cmd_witt(int rank, int max_degree, const CheckOptions& opts) {
  require_rank(rank);
  if (max_degree < 1) throw UsageError("degree must be >= 1");
  if (!opts.allow_large && (rank > 4 || max_degree > 10)) {
    throw UsageError("witt table beyond k <= 4, j <= 10 needs --allow-large");
  }
  CheckReport r;
  r.name = "witt";
  r.anchor = "rank of gamma_j(F_k)/gamma_{j+1}(F_k) = number of Lyndon words of length j";
  r.params = json{{"k", rank}, {"max_degree", max_degree}};
  return budgeted(std::move(r), opts.timeout_s, [rank, max_degree] {
    json rows = json::array();
    bool ok = true;
    for (int j = 1; j <= max_degree; ++j) {
      const Int w = witt_rank(rank, j);
      const std::size_t n = lyndon_words(rank, j).size();
      ok = ok && w == n;
      rows.push_back(json{{"degree", j}, {"witt", w.get_str()}, {"lyndon", n}});
    }
    return Outcome{ok ? Verdict::kPass : Verdict::kFail, json{{"rows", rows}}};
  });
}

CheckReport cmd_word(int rank, std::string_view expr, const CheckOptions& opts) {
  require_rank(rank);
  const Word w = parse_expr(expr, rank, opts);
  CheckReport r;
  r.name = "word";
  r.anchor = "free and cyclic reduction of a word in F_k";
  r.params = json{{"k", rank}, {"word", std::string(expr)}, {"convention", conv_name(opts)}};
  const auto t0 = Clock::now();
  const CyclicReduction cr = cyclic_reduce(w);
  json p{{"reduced", format_word(w)},
         {"length", w.length()},
         {"cyclic_core", format_word(cr.core)},
         {"cyclic_conjugator", format_word(cr.conjugator)},
         {"cyclic_length", cr.core.length()},
         {"cyclically_reduced", is_cyclically_reduced(w)},
         {"exponent_sums", exponent_sums(w)},
         {"in_commutator_subgroup", in_commutator_subgroup(w)}};
  if (w.length() > 0) {
    if (auto pp = is_proper_power(w)) {
      p["proper_power"] = json{{"root", format_word(pp->root)}, {"exponent", pp->exponent}};
    } else {
      p["proper_power"] = nullptr;
    }
  }
  r.payload = std::move(p);
  r.verdict = Verdict::kPass;
  r.duration_ms = ms_since(t0);
  return r;
}

CheckReport cmd_hypothesis(std::string_view kind, int rank, std::string_view expr, const CheckOptions& opts) {
  if (rank % 2 != 0 || rank <= 2) throw UsageError("hypothesis checks need even k > 2");
  const Word param = parse_expr(expr, rank, opts);
  CheckReport r;
  r.params = json{{"k", rank}, {"convention", conv_name(opts)}};
  const auto t0 = Clock::now();
  if (kind == "type2") {
    r.name = "hypothesis-type2";
    r.anchor = "w[w, gamma w gamma^-1] is cyclically reduced and |w[w, gamma w gamma^-1]| != |w|";
    r.params["gamma"] = std::string(expr);
    const Type2Report h = check_hypothesis_type2(rank, param, opts.convention);
    r.payload = json{{"gamma", format_word(h.gamma)},
                     {"relator", format_word(h.relator)},
                     {"cyclically_reduced", h.cyclically_reduced},
                     {"relator_length", h.relator_length},
                     {"relator_cyclic_length", h.relator_cyclic_length},
                     {"surface_length", h.surface_length}};
    r.verdict = h.pass ? Verdict::kPass : Verdict::kFail;
  } else if (kind == "type3") {
    r.name = "hypothesis-type3";
    r.anchor = "delta in [F,F], [a1 delta, a2] cyclically reduced and |[a1 delta, a2]| != 4";
    r.params["delta"] = std::string(expr);
    const Type3Report h = check_hypothesis_type3(rank, param, opts.convention);
    r.payload = json{{"delta", format_word(h.delta)},
                     {"commutator", format_word(h.commutator)},
                     {"cyclically_reduced", h.cyclically_reduced},
                     {"length", h.length},
                     {"base_length", h.base_length},
                     {"delta_in_commutator_subgroup", h.delta_in_commutator_subgroup}};
    r.verdict = h.pass ? Verdict::kPass : Verdict::kFail;
  } else {
    throw UsageError("hypothesis kind must be type2 or type3");
  }
  r.duration_ms = ms_since(t0);
  return r;
}

CheckReport cmd_closure_eq(int rank, int cls, std::string_view r1, std::string_view r2, const CheckOptions& opts) {
  require_rank(rank);
  require_class(cls);
  const Word w1 = parse_expr(r1, rank, opts);
  const Word w2 = parse_expr(r2, rank, opts);
  CheckReport r;
  r.name = "closure-eq";
  r.anchor = "<<r1>> = <<r2>> in F_{k,c}";
  r.params = json{{"k", rank}, {"class", cls}, {"r1", std::string(r1)}, {"r2", std::string(r2)},
                  {"convention", conv_name(opts)}};
  if (cls > opts.max_class) return over_class_budget(std::move(r), cls, opts);
  return budgeted(std::move(r), opts.timeout_s, [w1, w2, rank, cls] {
    const NormalClosure n1 = normal_closure(w1, rank, cls);
    const NormalClosure n2 = normal_closure(w2, rank, cls);
    const Membership m12 = member(w1, n2);
    const Membership m21 = member(w2, n1);
    json layers = json::array();
    for (int d = 1; d < cls; ++d) {
      layers.push_back(json{{"degree", d},
                            {"rank_r1", n1.layer(d).rank()},
                            {"rank_r2", n2.layer(d).rank()},
                            {"hnf_equal", n1.layer(d) == n2.layer(d)}});
    }
    json p{{"r1_reduced_length", w1.length()},
           {"r2_reduced_length", w2.length()},
           {"r1_in_closure_of_r2", m12.member},
           {"r2_in_closure_of_r1", m21.member},
           {"layers", layers}};
    if (!m12.member) p["r1_obstructed_degree"] = m12.certificate.failed_degree;
    if (!m21.member) p["r2_obstructed_degree"] = m21.certificate.failed_degree;
    return Outcome{m12.member && m21.member ? Verdict::kPass : Verdict::kFail, std::move(p)};
  });
}

CheckReport cmd_ranks(int rank, int cls, std::string_view relator, const CheckOptions& opts) {
  require_rank(rank);
  require_class(cls);
  const Word w = parse_expr(relator, rank, opts);
  CheckReport r;
  r.name = "ranks";
  r.anchor = "abelian invariants of gamma_j(G)/gamma_{j+1}(G), G = F_k/<<r>>";
  r.params = json{{"k", rank}, {"class", cls}, {"relator", std::string(relator)}, {"convention", conv_name(opts)}};
  if (cls > opts.max_class) return over_class_budget(std::move(r), cls, opts);
  return budgeted(std::move(r), opts.timeout_s, [w, rank, cls] {
    json rows = json::array();
    bool ok = true;
    for (const LayerInvariant& l : lcs_rank_table(w, rank, cls)) {
      ok = ok && l.relation_rank + l.free_rank == l.free_baseline;
      rows.push_back(layer_json(l));
    }
    return Outcome{ok ? Verdict::kPass : Verdict::kFail, json{{"layers", rows}}};
  });
}

CheckReport cmd_parasurface(int rank, int cls, std::string_view delta, const CheckOptions& opts) {
  if (rank % 2 != 0 || rank <= 2) throw UsageError("parasurface check needs even k > 2");
  require_class(cls);
  const Word d = parse_expr(delta, rank, opts);
  CheckReport r;
  r.name = "parasurface";
  r.anchor = "a1 -> a1 delta induces F_{k,c}/<<w>> = F_{k,c}/<<[a1 delta,a2][a3,a4]...>>; layers torsion-free";
  r.params = json{{"k", rank}, {"class", cls}, {"delta", std::string(delta)}, {"convention", conv_name(opts)}};
  if (cls > opts.max_class) return over_class_budget(std::move(r), cls, opts);
  const CommutatorConvention conv = opts.convention;
  return budgeted(std::move(r), opts.timeout_s, [d, rank, cls, conv] {
    const Type3Report h = check_hypothesis_type3(rank, d, conv);
    json p{{"hypothesis",
            json{{"commutator", format_word(h.commutator)},
                 {"cyclically_reduced", h.cyclically_reduced},
                 {"length", h.length},
                 {"delta_in_commutator_subgroup", h.delta_in_commutator_subgroup},
                 {"pass", h.pass}}}};
    if (!h.pass) {
      p["failed_at"] = "hypothesis";
      return Outcome{Verdict::kFail, std::move(p)};
    }
    const Word relator = type3_relator(rank, d, conv);
    const ParasurfaceCertificate c = parasurface_certificate(relator, type3_map(rank, d), rank / 2, cls, conv);
    json layers = json::array();
    for (std::size_t i = 0; i < c.relator_layers.size(); ++i) {
      json row = layer_json(c.relator_layers[i]);
      row["surface_free_rank"] = c.surface_layers[i].free_rank;
      row["surface_torsion"] = torsion_json(c.surface_layers[i].torsion);
      layers.push_back(std::move(row));
    }
    p["relator"] = format_word(relator);
    p["mapped_surface_relator"] = format_word(c.mapped_surface_relator);
    p["abelianization"] = matrix_json(c.abelianization);
    p["unimodular"] = c.unimodular;
    p["closures_equal"] = c.closures_equal;
    p["layers"] = layers;
    p["layers_consistent"] = c.layers_consistent;
    p["torsion_free"] = c.torsion_free;
    p["isomorphism_certified"] = c.isomorphism_certified();
    const bool ok = c.pass() && c.torsion_free;
    if (!ok) {
      p["failed_at"] = !c.unimodular         ? "unimodular"
                       : !c.closures_equal   ? "closures_equal"
                       : !c.layers_consistent ? "layers"
                                              : "torsion";
    }
    return Outcome{ok ? Verdict::kPass : Verdict::kFail, std::move(p)};
  });
}

namespace {

bool conjugate_or_equal(const ConjugacyVerdict& v) { return v.kind != ConjugacyKind::kNotConjugate; }

json verdict_json(const ConjugacyScanRow& row) {
  json j{{"class", row.cls},
         {"verdict", to_string(row.verdict.kind)},
         {"closures_equal", row.closures_equal},
         {"conjugacy_ms", row.conjugacy_ms},
         {"closure_ms", row.closure_ms}};
  if (row.verdict.kind == ConjugacyKind::kNotConjugate) j["obstructed_layer"] = row.verdict.obstructed_layer;
  if (row.verdict.witness) {
    j["witness"] = format_word(*row.verdict.witness);
    j["witness_length"] = row.verdict.witness->length();
  }
  return j;
}

}  // namespace

CheckReport cmd_conjugacy(int rank, int cls_min, int cls_max, std::string_view x, std::string_view y,
                          const CheckOptions& opts, std::optional<ConjugacyKind> expect) {
  require_rank(rank);
  require_class(cls_min);
  require_class(cls_max);
  if (cls_max < cls_min) throw UsageError("class range is empty");
  const Word wx = parse_expr(x, rank, opts);
  const Word wy = parse_expr(y, rank, opts);
  CheckReport r;
  r.name = "conjugacy";
  r.anchor = "x and y are conjugate in F_{k,c}; conjugate elements have equal normal closures";
  r.params = json{{"k", rank},
                   {"class_min", cls_min},
                   {"class_max", cls_max},
                   {"x", std::string(x)},
                   {"y", std::string(y)},
                   {"convention", conv_name(opts)}};
  if (expect) r.params["expect"] = to_string(*expect);
  const int top = std::min(cls_max, opts.max_class);
  if (top < cls_min) return over_class_budget(std::move(r), cls_max, opts);
  const bool truncated = top < cls_max;
  return budgeted(std::move(r), opts.timeout_s, [wx, wy, rank, cls_min, top, expect, truncated, cls_max] {
    const auto rows = conjugacy_scan(wx, wy, rank, cls_min, top);
    json table = json::array();
    std::vector<std::string> problems;
    bool open = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const ConjugacyScanRow& row = rows[i];
      table.push_back(verdict_json(row));
      const std::string at = "class " + std::to_string(row.cls) + ": ";
      if (conjugate_or_equal(row.verdict) && !row.closures_equal) {
        problems.push_back(at + "conjugate elements with different normal closures");
      }
      if (i > 0) {
        const ConjugacyScanRow& prev = rows[i - 1];
        if (conjugate_or_equal(row.verdict) && !conjugate_or_equal(prev.verdict)) {
          problems.push_back(at + "conjugate here but not at a lower class");
        }
        if (!conjugate_or_equal(prev.verdict) && !conjugate_or_equal(row.verdict) &&
            prev.verdict.obstructed_layer != row.verdict.obstructed_layer) {
          problems.push_back(at + "obstructed layer moved");
        }
      }
      if (row.cls >= kOpenConjugacyClass) {
        open = true;
      } else if (expect && row.verdict.kind != *expect) {
        problems.push_back(at + "expected " + to_string(*expect) + ", got " + to_string(row.verdict.kind));
      }
    }
    json p{{"rows", table}, {"problems", problems}};
    if (truncated) p["skipped_above_max_class"] = json{{"from", top + 1}, {"to", cls_max}};
    Verdict v = Verdict::kPass;
    if (!problems.empty()) {
      v = Verdict::kFail;
    } else if (truncated) {
      v = Verdict::kBudget;
    } else if (open) {
      v = Verdict::kRecorded;
    }
    return Outcome{v, std::move(p)};
  });
}

namespace {

CheckReport convention_degeneracy(const CheckOptions& opts) {
  CheckReport r;
  r.name = "convention-degeneracy";
  r.anchor = "with [u,v] = u^-1 v^-1 u v: w[w,X] = X^-1 w X in F_4, so w[w, a2 w a2^-1] is conjugate to w";
  r.params = json{{"k", 4}, {"convention", "inverse-first"}};
  return budgeted(std::move(r), opts.timeout_s, [] {
    const auto conv = CommutatorConvention::kInverseFirst;
    const Word w = surface_relator(2, conv);
    const Word b = Word::generator(4, 2);
    const Word y = w * commutator(w, b * w * b.inverse(), conv);
    const Word m = b * w * b.inverse();
    const bool holds = conjugate(w, m) == y;
    return Outcome{holds ? Verdict::kPass : Verdict::kFail,
                   json{{"y", format_word(y)}, {"m", format_word(m)}, {"identity_holds", holds}}};
  });
}

CheckReport relators_not_proper_powers(const CheckOptions& opts) {
  CheckReport r;
  r.name = "relators-not-proper-powers";
  r.anchor = "the relators w[w, a2 w a2^-1] and [a1 delta, a2][a3,a4] are not proper powers in F_4";
  r.params = json{{"k", 4}, {"gamma", "a2"}, {"delta", "[[a1,a2],a1]"}};
  return budgeted(std::move(r), opts.timeout_s, [] {
    json p = json::object();
    bool ok = true;
    for (auto conv : {CommutatorConvention::kInverseFirst, CommutatorConvention::kInverseLast}) {
      const Word t2 = type2_relator(4, Word::generator(4, 2), conv);
      const Word t3 = type3_relator(4, parse_word("[[a1,a2],a1]", 4, conv), conv);
      const bool p2 = is_proper_power(t2).has_value();
      const bool p3 = is_proper_power(t3).has_value();
      ok = ok && !p2 && !p3;
      p[std::string(to_string(conv))] = json{{"type2_proper_power", p2}, {"type3_proper_power", p3}};
    }
    return Outcome{ok ? Verdict::kPass : Verdict::kFail, std::move(p)};
  });
}

CheckReport surface_layers(int cls, const CheckOptions& opts) {
  CheckReport r;
  r.name = "surface-layers";
  r.anchor = "gamma_j/gamma_{j+1} of the genus-2 surface group is free abelian of the necklace rank";
  r.params = json{{"k", 4}, {"class", cls}, {"convention", conv_name(opts)}};
  if (cls > opts.max_class) return over_class_budget(std::move(r), cls, opts);
  const CommutatorConvention conv = opts.convention;
  return budgeted(std::move(r), opts.timeout_s, [cls, conv] {
    json rows = json::array();
    bool ok = true;
    for (const LayerInvariant& l : lcs_rank_table(surface_relator(2, conv), 4, cls)) {
      const Int expected = surface_layer_rank(2, l.degree);
      ok = ok && l.torsion.empty() && expected == l.free_rank;
      json row = layer_json(l);
      row["expected_free_rank"] = expected.get_str();
      rows.push_back(std::move(row));
    }
    return Outcome{ok ? Verdict::kPass : Verdict::kFail, json{{"layers", rows}}};
  });
}

}  // namespace

std::vector<CheckReport> cmd_paper_suite(int cls, const CheckOptions& opts) {
  require_class(cls);
  CheckOptions last = opts;
  last.convention = CommutatorConvention::kInverseLast;

  std::vector<std::function<CheckReport()>> tasks;
  for (int k = 1; k <= 4; ++k) tasks.emplace_back([k, opts] { return cmd_witt(k, 7, opts); });
  tasks.emplace_back([last] { return cmd_hypothesis("type2", 4, "a2", last); });
  tasks.emplace_back([opts] { return cmd_hypothesis("type3", 4, "[[a1,a2],a1]", opts); });
  tasks.emplace_back([opts] { return relators_not_proper_powers(opts); });
  tasks.emplace_back([opts] { return convention_degeneracy(opts); });
  for (int c = 2; c <= cls; ++c) {
    tasks.emplace_back([c, last] { return cmd_closure_eq(4, c, "w", "w*[w,a2*w*A2]", last); });
  }
  tasks.emplace_back([cls, opts] { return cmd_parasurface(4, cls, "[[a1,a2],a1]", opts); });
  tasks.emplace_back([cls, opts] { return surface_layers(cls, opts); });
  tasks.emplace_back([cls, last] {
    return cmd_conjugacy(4, 2, cls, "w", "w*[w,a2*w*A2]", last, ConjugacyKind::kEqual);
  });

  std::vector<CheckReport> reports(tasks.size());
  unsigned n = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(tasks.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(tasks.size());
  auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        reports[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return reports;
}

bool all_passed(const std::vector<CheckReport>& reports) {
  return std::none_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.verdict == Verdict::kFail; });
}

std::string format_human(const CheckReport& r) {
  std::ostringstream out;
  out << '[' << to_string(r.verdict) << "] " << r.name << ' ' << r.params.dump() << "  (" << std::fixed;
  out.precision(1);
  out << r.duration_ms << " ms)\n";
  out << "    " << r.anchor << '\n';
  for (const auto& [key, value] : r.payload.items()) {
    if (value.is_array() && !value.empty() && value.front().is_object()) {
      out << "    " << key << ":\n";
      for (const auto& row : value) out << "      " << row.dump() << '\n';
    } else {
      out << "    " << key << ": " << value.dump() << '\n';
    }
  }
  return out.str();
}

}  // namespace parasurf
