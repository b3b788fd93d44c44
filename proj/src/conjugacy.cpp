#include "parasurf/conjugacy.hpp"

#include <chrono>
#include <stdexcept>

namespace parasurf {

const char* to_string(ConjugacyKind kind) {
  switch (kind) {
    case ConjugacyKind::kEqual:
      return "equal";
    case ConjugacyKind::kConjugate:
      return "conjugate";
    case ConjugacyKind::kNotConjugate:
      return "not-conjugate";
  }
  return "?";
}

namespace {

NilElement power_product(const std::vector<NilElement>& gens, std::span<const Int> exps, const SeriesContext& ctx) {
  NilElement out = NilElement::identity(ctx);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (sgn(exps[i]) != 0) out = nil_mul(out, nil_pow(gens[i], exps[i])).without_witness();
  }
  return out;
}

// Next centralizer: the kernel of u -> lie_j([z, u]) on <gens>. It is
// generated by the kernel combinations together with [<gens>, <gens>], closed
// under conjugation by gens.
std::vector<NilElement> next_centralizer(const std::vector<NilElement>& gens, const HermiteBasis& kernel,
                                         int degree, const SeriesContext& ctx) {
  const int top = ctx.cls() - 1;
  std::vector<NilElement> closing;
  for (const NilElement& g : gens) {
    closing.push_back(g);
    closing.push_back(nil_inv(g).without_witness());
  }
  LayeredClosure h(ctx, top, std::move(closing));
  for (const IntVector& k : kernel.rows) h.add(power_product(gens, k, ctx));
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = a + 1; b < gens.size(); ++b) h.add(nil_commutator(gens[a], gens[b]));
  }
  if (degree < top) {
    for (const NilElement& e : bracket_basis(ctx.rank(), ctx.cls()).elements(degree)) h.add(e);
  }
  h.run();
  return h.witnesses();
}

}  // namespace

ConjugacyVerdict decide_conjugacy(const Word& x, const Word& y, int rank, int cls, ConjugacyTrace* trace) {
  if (cls < 2) throw std::invalid_argument("decide_conjugacy needs class >= 2");
  if (x.rank() != rank || y.rank() != rank) throw std::invalid_argument("decide_conjugacy: word rank differs from k");
  const SeriesContext ctx(rank, cls);
  const NilElement X = embed_word(x, ctx).without_witness();
  const NilElement Y = embed_word(y, ctx).without_witness();
  if (trace) *trace = ConjugacyTrace{};
  if (X == Y) return ConjugacyVerdict::equal();

  NilElement t = NilElement::identity(ctx);
  std::vector<NilElement> gens;
  for (int i = 1; i <= rank; ++i) gens.push_back(embed_word(Word::generator(rank, i), ctx).without_witness());

  for (int j = 1; j < cls; ++j) {
    if (trace) trace->centralizers.push_back({j, gens});
    const NilElement z = nil_conjugate(X, t).without_witness();
    const NilElement defect = nil_mul(nil_inv(z), Y);
    if (depth(defect) < j) throw std::logic_error("decide_conjugacy: lifting invariant broken");
    const IntVector kappa = lie_component(defect, j);

    IntMatrix images(gens.size(), ctx.layer_size(j));
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const IntVector v = lie_component(nil_commutator(z, gens[i]), j);
      for (std::size_t col = 0; col < v.size(); ++col) images(i, col) = v[col];
    }
    const auto sol = solve_in_image(images, kappa);
    if (trace) trace->defect_rank.push_back(static_cast<int>(hnf(images).rank()));
    if (!sol) return ConjugacyVerdict::not_conjugate(j);
    t = nil_mul(t, power_product(gens, *sol, ctx)).without_witness();

    if (j + 1 < cls) gens = next_centralizer(gens, kernel_basis(images), j, ctx);
  }

  const MalcevCoordinates coords = malcev_coordinates(t);
  Word witness = malcev_word(coords);
  if (nil_conjugate(X, embed_word(witness, ctx)) != Y) {
    throw std::logic_error("decide_conjugacy: conjugator failed re-verification");
  }
  if (trace) trace->conjugator = coords;
  return ConjugacyVerdict::conjugate(std::move(witness));
}

std::vector<ConjugacyScanRow> conjugacy_scan(const Word& x, const Word& y, int rank, int cls_min, int cls_max) {
  if (cls_min < 2 || cls_max < cls_min) throw std::invalid_argument("conjugacy_scan needs 2 <= c_min <= c_max");
  using clock = std::chrono::steady_clock;
  std::vector<ConjugacyScanRow> rows;
  for (int c = cls_min; c <= cls_max; ++c) {
    ConjugacyScanRow row;
    row.cls = c;
    auto t0 = clock::now();
    row.verdict = decide_conjugacy(x, y, rank, c);
    auto t1 = clock::now();
    row.closures_equal = closures_equal(x, y, rank, c);
    auto t2 = clock::now();
    row.conjugacy_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    row.closure_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace parasurf
