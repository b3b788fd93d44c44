#include "parasurf/magnus.hpp"

#include <algorithm>
#include <stdexcept>

namespace parasurf {

SeriesContext::SeriesContext(int rank, int cls) : rank_(rank), cls_(cls) {
  if (rank < 1) throw std::invalid_argument("series context needs rank >= 1");
  if (cls < 1 || cls > kMaxSeriesClass) {
    throw std::invalid_argument("series class must be in 1.." + std::to_string(kMaxSeriesClass));
  }
  pow_.assign(static_cast<std::size_t>(cls) + 1, 1);
  offset_.assign(static_cast<std::size_t>(cls) + 1, 0);
  for (std::size_t d = 1; d <= static_cast<std::size_t>(cls); ++d) {
    pow_[d] = pow_[d - 1] * static_cast<std::uint64_t>(rank);
    const std::uint64_t next = offset_[d - 1] + pow_[d - 1];
    if (next > UINT32_MAX / 2) throw std::invalid_argument("series context too large");
    offset_[d] = static_cast<std::uint32_t>(next);
  }
}

int SeriesContext::degree(std::uint32_t key) const {
  auto it = std::upper_bound(offset_.begin(), offset_.end(), key);
  return static_cast<int>(it - offset_.begin()) - 1;
}

Monomial SeriesContext::monomial(std::uint32_t key) const {
  const int d = degree(key);
  std::uint64_t index = key - offset(d);
  Monomial m;
  m.letters.assign(static_cast<std::size_t>(d), 0);
  for (int i = d - 1; i >= 0; --i) {
    m.letters[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::uint64_t>(rank_)) + 1;
    index /= static_cast<std::uint64_t>(rank_);
  }
  return m;
}

std::uint64_t monomial_index(const std::vector<int>& letters, int rank) {
  std::uint64_t index = 0;
  for (int l : letters) {
    if (l < 1 || l > rank) throw std::out_of_range("monomial letter outside alphabet");
    index = index * static_cast<std::uint64_t>(rank) + static_cast<std::uint64_t>(l - 1);
  }
  return index;
}

std::uint32_t SeriesContext::key_of(const Monomial& m) const {
  if (m.degree() >= cls_) throw std::out_of_range("monomial degree beyond truncation class");
  return key(m.degree(), monomial_index(m.letters, rank_));
}

TruncSeries::TruncSeries(SeriesContext ctx, std::vector<Term> terms)
    : ctx_(std::move(ctx)), terms_(std::move(terms)) {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> merged;
  for (Term& t : terms_) {
    if (t.first >= ctx_.dimension()) continue;
    if (!merged.empty() && merged.back().first == t.first) {
      merged.back().second += t.second;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term& t) { return sgn(t.second) == 0; });
  terms_ = std::move(merged);
}

TruncSeries TruncSeries::one(const SeriesContext& ctx) {
  TruncSeries s(ctx);
  s.terms_.emplace_back(0u, Int(1));
  return s;
}

Int TruncSeries::coefficient(std::uint32_t key) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                             [](const Term& t, std::uint32_t k) { return t.first < k; });
  if (it != terms_.end() && it->first == key) return it->second;
  return 0;
}

namespace {

void require_same(const SeriesContext& a, const SeriesContext& b) {
  if (!(a == b)) {
    throw std::invalid_argument("series context mismatch: (k=" + std::to_string(a.rank()) +
                                ",c=" + std::to_string(a.cls()) + ") vs (k=" +
                                std::to_string(b.rank()) + ",c=" + std::to_string(b.cls()) + ")");
  }
}

// Dense accumulator reused across products on the same thread.
struct Accumulator {
  std::vector<Int> values;
  std::vector<std::uint8_t> touched_flag;
  std::vector<std::uint32_t> touched;

  void prepare(std::uint32_t dim) {
    if (values.size() < dim) {
      values.resize(dim);
      touched_flag.resize(dim, 0);
    }
    touched.clear();
  }

  Int& at(std::uint32_t key) {
    if (!touched_flag[key]) {
      touched_flag[key] = 1;
      touched.push_back(key);
    }
    return values[key];
  }

  std::vector<TruncSeries::Term> drain() {
    std::sort(touched.begin(), touched.end());
    std::vector<TruncSeries::Term> out;
    out.reserve(touched.size());
    for (std::uint32_t key : touched) {
      touched_flag[key] = 0;
      if (sgn(values[key]) != 0) out.emplace_back(key, std::move(values[key]));
      values[key] = 0;
    }
    touched.clear();
    return out;
  }
};

thread_local Accumulator tl_acc;

}  // namespace

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  require_same(a.ctx_, b.ctx_);
  const SeriesContext& ctx = a.ctx_;
  const int c = ctx.cls();
  if (a.terms_.empty() || b.terms_.empty()) return TruncSeries(ctx);

  // Start of each degree block in b.
  std::vector<std::size_t> block(static_cast<std::size_t>(c) + 1, b.terms_.size());
  {
    std::size_t i = 0;
    for (int d = 0; d < c; ++d) {
      while (i < b.terms_.size() && b.terms_[i].first < ctx.offset(d)) ++i;
      block[static_cast<std::size_t>(d)] = i;
    }
  }

  Accumulator& acc = tl_acc;
  acc.prepare(ctx.dimension());
  int da = 0;
  for (const auto& [ka, ca] : a.terms_) {
    while (ka >= ctx.offset(da + 1)) ++da;
    const std::uint64_t ia = ka - ctx.offset(da);
    const std::size_t end = block[static_cast<std::size_t>(c - da)];
    int db = 0;
    for (std::size_t j = 0; j < end; ++j) {
      const auto& [kb, cb] = b.terms_[j];
      while (kb >= ctx.offset(db + 1)) ++db;
      const std::uint64_t ib = kb - ctx.offset(db);
      const std::uint32_t key = ctx.key(da + db, ia * ctx.layer_size(db) + ib);
      mpz_addmul(acc.at(key).get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    }
  }
  TruncSeries out(ctx);
  out.terms_ = acc.drain();
  return out;
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
  require_same(a.ctx_, b.ctx_);
  std::vector<TruncSeries::Term> terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return TruncSeries(a.ctx_, std::move(terms));
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + b.scaled(-1); }

TruncSeries TruncSeries::scaled(const Int& factor) const {
  TruncSeries out(ctx_);
  if (sgn(factor) == 0) return out;
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.second *= factor;
  return out;
}

NilElement::NilElement(TruncSeries series, std::optional<Word> witness)
    : series_(std::move(series)), witness_(std::move(witness)) {
  const auto& terms = series_.terms();
  if (terms.empty() || terms.front().first != 0 || terms.front().second != 1) {
    throw std::invalid_argument("nilpotent element needs constant term 1");
  }
}

NilElement NilElement::identity(const SeriesContext& ctx) {
  return NilElement(TruncSeries::one(ctx), Word(ctx.rank()));
}

namespace {

// Words longer than this are not carried as witnesses.
constexpr std::size_t kWitnessLimit = 1u << 14;

std::optional<Word> join(const std::optional<Word>& a, const std::optional<Word>& b) {
  if (!a || !b || a->length() + b->length() > kWitnessLimit) return std::nullopt;
  return *a * *b;
}

// The series X with x = 1 + X.
TruncSeries augmentation(const NilElement& x) {
  const auto& terms = x.series().terms();
  return TruncSeries(x.context(), std::vector<TruncSeries::Term>(terms.begin() + 1, terms.end()));
}

}  // namespace

NilElement embed_word(const Word& w, const SeriesContext& ctx) {
  if (ctx.cls() < 2) throw std::invalid_argument("embed_word needs class c >= 2");
  if (w.rank() > ctx.rank()) throw std::invalid_argument("word alphabet exceeds series rank");
  // Letter series: a_i -> 1 + x_i, a_i^-1 -> sum_m (-x_i)^m.
  std::vector<TruncSeries> pos;
  std::vector<TruncSeries> neg;
  for (int i = 1; i <= ctx.rank(); ++i) {
    std::vector<TruncSeries::Term> p{{0u, Int(1)}, {ctx.key(1, static_cast<std::uint64_t>(i - 1)), Int(1)}};
    std::vector<TruncSeries::Term> n;
    std::uint64_t index = 0;
    for (int m = 0; m < ctx.cls(); ++m) {
      n.emplace_back(ctx.key(m, index), Int(m % 2 == 0 ? 1 : -1));
      index = index * static_cast<std::uint64_t>(ctx.rank()) + static_cast<std::uint64_t>(i - 1);
    }
    pos.emplace_back(ctx, std::move(p));
    neg.emplace_back(ctx, std::move(n));
  }
  TruncSeries s = TruncSeries::one(ctx);
  for (Letter l : w.letters()) {
    s = s * (l.sign > 0 ? pos : neg)[static_cast<std::size_t>(l.index - 1)];
  }
  return NilElement(std::move(s), w.with_rank(ctx.rank()));
}

NilElement embed_word(const Word& w, int rank, int cls) { return embed_word(w, SeriesContext(rank, cls)); }

NilElement nil_mul(const NilElement& a, const NilElement& b) {
  return NilElement(a.series() * b.series(), join(a.witness(), b.witness()));
}

NilElement nil_inv(const NilElement& a) {
  // (1 + X)^-1 = 1 - X + X^2 - ..., finite because X is nilpotent.
  const TruncSeries x = augmentation(a);
  const TruncSeries neg_x = x.scaled(-1);
  TruncSeries sum = TruncSeries::one(a.context());
  TruncSeries power = sum;
  for (;;) {
    power = power * neg_x;
    if (power.is_zero()) break;
    sum = sum + power;
  }
  std::optional<Word> w;
  if (a.witness()) w = a.witness()->inverse();
  return NilElement(std::move(sum), std::move(w));
}

NilElement nil_pow(const NilElement& a, const Int& n) {
  // (1 + X)^n = sum_m binom(n, m) X^m for every integer n.
  const TruncSeries x = augmentation(a);
  TruncSeries sum = TruncSeries::one(a.context());
  TruncSeries power = sum;
  Int binom = 1;
  for (long m = 1;; ++m) {
    power = power * x;
    if (power.is_zero()) break;
    binom *= n - (m - 1);
    mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), static_cast<unsigned long>(m));
    if (sgn(binom) == 0) break;
    sum = sum + power.scaled(binom);
  }
  std::optional<Word> w;
  if (a.witness() && abs(n) <= 64 && a.witness()->length() * Int(abs(n)).get_ui() <= kWitnessLimit) {
    w = a.witness()->pow(n.get_si());
  }
  return NilElement(std::move(sum), std::move(w));
}

NilElement nil_commutator(const NilElement& a, const NilElement& b, CommutatorConvention conv) {
  if (conv == CommutatorConvention::kInverseFirst) {
    return nil_mul(nil_mul(nil_inv(a), nil_inv(b)), nil_mul(a, b));
  }
  return nil_mul(nil_mul(a, b), nil_mul(nil_inv(a), nil_inv(b)));
}

NilElement nil_conjugate(const NilElement& a, const NilElement& b) {
  return nil_mul(nil_mul(nil_inv(b), a), b);
}

std::optional<int> weight(const NilElement& x) {
  const auto& terms = x.series().terms();
  if (terms.size() < 2) return std::nullopt;
  return x.context().degree(terms[1].first);
}

int depth(const NilElement& x) {
  auto w = weight(x);
  return w ? *w : x.context().cls();
}

IntVector lie_component(const NilElement& x, int degree) {
  const SeriesContext& ctx = x.context();
  if (degree < 1) throw std::domain_error("lie_component: degree must be >= 1");
  if (depth(x) < degree) {
    throw std::domain_error("lie_component: element has weight " + std::to_string(depth(x)) +
                            " < " + std::to_string(degree));
  }
  if (degree >= ctx.cls()) {
    throw std::domain_error("lie_component: degree " + std::to_string(degree) +
                            " is truncated at class " + std::to_string(ctx.cls()));
  }
  IntVector v(ctx.layer_size(degree));
  const std::uint32_t lo = ctx.offset(degree);
  const std::uint32_t hi = ctx.offset(degree + 1);
  const auto& terms = x.series().terms();
  auto it = std::lower_bound(terms.begin(), terms.end(), lo,
                             [](const TruncSeries::Term& t, std::uint32_t k) { return t.first < k; });
  for (; it != terms.end() && it->first < hi; ++it) v[it->first - lo] = it->second;
  return v;
}

}  // namespace parasurf
