#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "parasurf/conjugacy.hpp"
#include "support.hpp"

using namespace parasurf;
using testsupport::Heis;
using testsupport::HeisVerdict;
using testsupport::heis_conjugacy;
using testsupport::heis_of;
using testsupport::random_word;
using testsupport::uniform;

namespace {

Word W(const char* s, int rank) { return parse_word(s, rank); }

void check_witness(const Word& x, const Word& y, const ConjugacyVerdict& v, int rank, int cls) {
  REQUIRE(v.witness);
  const Word& t = *v.witness;
  CHECK(embed_word(t.inverse() * x * t, rank, cls) == embed_word(y, rank, cls));
}

}  // namespace

TEST_CASE("heisenberg oracle self-check") {
  for (int i = 0; i < 200; ++i) {
    const Word w = random_word(2, 10);
    CHECK(embed_word(w, 2, 3).is_identity() == (heis_of(w) == Heis{0, 0, 0}));
  }
}

TEST_CASE("small examples") {
  const auto v = decide_conjugacy(W("a1^2", 2), W("a1^2 [a1,a2]", 2), 2, 3);
  CHECK(v.kind == ConjugacyKind::kNotConjugate);
  CHECK(v.obstructed_layer == 2);
  const auto c = decide_conjugacy(W("a1^2", 2), W("a1^2 [a1,a2]^2", 2), 2, 3);
  CHECK(c.kind == ConjugacyKind::kConjugate);
  check_witness(W("a1^2", 2), W("a1^2 [a1,a2]^2", 2), c, 2, 3);
  CHECK(decide_conjugacy(W("a1", 2), W("a1", 2), 2, 4).kind == ConjugacyKind::kEqual);
  const auto first = decide_conjugacy(W("a1", 2), W("a2", 2), 2, 4);
  CHECK(first.kind == ConjugacyKind::kNotConjugate);
  CHECK(first.obstructed_layer == 1);
  CHECK(decide_conjugacy(W("a1", 2), W("a2^-1 a1 a2", 2), 2, 5).kind == ConjugacyKind::kConjugate);
  CHECK(decide_conjugacy(W("", 2), W("[a1,a2]", 2), 2, 4).kind == ConjugacyKind::kNotConjugate);
  CHECK(decide_conjugacy(W("[a1,a2]", 2), W("[a1,a2]", 2), 2, 2).kind == ConjugacyKind::kEqual);
  CHECK_THROWS_AS(decide_conjugacy(W("a1", 2), W("a1", 2), 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(decide_conjugacy(W("a1", 2), W("a1", 3), 2, 3), std::invalid_argument);
}

TEST_CASE("agrees with the heisenberg oracle") {
  int conj = 0, not_conj = 0, equal = 0;
  for (int i = 0; i < 200; ++i) {
    const Word x = random_word(2, 6);
    Word y(2);
    switch (uniform(0, 2)) {
      case 0:
        y = x * W("[a1,a2]", 2).pow(uniform(-4, 4));
        break;
      case 1: {
        const Word t = random_word(2, 5);
        y = t.inverse() * x * t;
        break;
      }
      default:
        y = random_word(2, 6);
    }
    const Heis hx = heis_of(x);
    const Heis hy = heis_of(y);
    if (hx[0] != hy[0] || hx[1] != hy[1]) {
      CHECK(decide_conjugacy(x, y, 2, 3).kind == ConjugacyKind::kNotConjugate);
      ++not_conj;
      continue;
    }
    const HeisVerdict o = heis_conjugacy(hx, hy);
    REQUIRE(o != HeisVerdict::kOutsideBox);
    const ConjugacyVerdict v = decide_conjugacy(x, y, 2, 3);
    switch (o) {
      case HeisVerdict::kEqual:
        CHECK(v.kind == ConjugacyKind::kEqual);
        ++equal;
        break;
      case HeisVerdict::kConjugate:
        CHECK(v.kind == ConjugacyKind::kConjugate);
        if (v.kind == ConjugacyKind::kConjugate) check_witness(x, y, v, 2, 3);
        ++conj;
        break;
      case HeisVerdict::kNotConjugate:
        CHECK(v.kind == ConjugacyKind::kNotConjugate);
        CHECK(v.obstructed_layer == 2);
        ++not_conj;
        break;
      case HeisVerdict::kOutsideBox:
        break;
    }
  }
  CHECK(conj > 10);
  CHECK(not_conj > 10);
  CHECK(equal > 0);
}

TEST_CASE("random conjugates are found with verified witnesses") {
  for (int cls = 3; cls <= 5; ++cls) {
    for (int i = 0; i < 25; ++i) {
      const Word x = random_word(3, 8);
      const Word t = random_word(3, 6);
      const Word y = t.inverse() * x * t;
      const ConjugacyVerdict v = decide_conjugacy(x, y, 3, cls);
      if (embed_word(x, 3, cls) == embed_word(y, 3, cls)) {
        CHECK(v.kind == ConjugacyKind::kEqual);
      } else {
        REQUIRE(v.kind == ConjugacyKind::kConjugate);
        check_witness(x, y, v, 3, cls);
      }
    }
  }
}

TEST_CASE("verdicts are symmetric and monotone in the class") {
  for (int i = 0; i < 40; ++i) {
    const Word x = random_word(2, 6);
    Word y = x * random_word(2, 3).pow(2);
    if (uniform(0, 1)) {
      const Word t = random_word(2, 4);
      y = t.inverse() * x * t * W("[[a1,a2],a2]", 2).pow(uniform(-2, 2));
    }
    std::optional<int> obstructed;
    for (int cls = 2; cls <= 5; ++cls) {
      const ConjugacyVerdict fwd = decide_conjugacy(x, y, 2, cls);
      const ConjugacyVerdict back = decide_conjugacy(y, x, 2, cls);
      CHECK(fwd.kind == back.kind);
      if (fwd.kind == ConjugacyKind::kNotConjugate) {
        CHECK(fwd.obstructed_layer == back.obstructed_layer);
        if (obstructed) CHECK(fwd.obstructed_layer == *obstructed);
        obstructed = fwd.obstructed_layer;
        CHECK(fwd.obstructed_layer < cls);
      } else {
        // Once non-conjugate in a quotient, never conjugate in a larger one.
        CHECK_FALSE(obstructed);
      }
    }
  }
}

TEST_CASE("trace records one centralizer per layer") {
  ConjugacyTrace trace;
  const Word x = W("a1 a2", 2);
  const Word y = W("a2 a1", 2);
  const auto v = decide_conjugacy(x, y, 2, 5, &trace);
  CHECK(v.kind == ConjugacyKind::kConjugate);
  CHECK(trace.centralizers.size() == 4);
  for (std::size_t j = 0; j < trace.centralizers.size(); ++j) {
    CHECK(trace.centralizers[j].level == static_cast<int>(j) + 1);
    // Every generator commutes with y modulo the matching layer (y agrees with
    // the conjugate tracked at that stage modulo that layer).
    for (const NilElement& g : trace.centralizers[j].generators) {
      const NilElement c = nil_commutator(embed_word(y, 2, 5), g);
      CHECK(depth(c) >= static_cast<int>(j) + 1);
    }
  }
  CHECK(from_malcev(trace.conjugator) == embed_word(*v.witness, 2, 5));
}

TEST_CASE("conjugacy scan") {
  const Word x = W("a1^2", 2);
  const Word y = W("a1^2 [a1,a2]^2", 2);
  const auto rows = conjugacy_scan(x, y, 2, 2, 4);
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) {
    if (row.verdict.kind != ConjugacyKind::kNotConjugate) CHECK(row.closures_equal);
  }
  CHECK(rows[0].cls == 2);
  CHECK(rows[0].verdict.kind == ConjugacyKind::kEqual);
  CHECK(rows[1].verdict.kind == ConjugacyKind::kConjugate);
}
