// Conjugacy in F_{k,c} by lifting a conjugator one lower-central layer at a
// time while tracking the centralizer of x modulo the current layer.
#pragma once

#include <optional>
#include <vector>

#include "parasurf/closure.hpp"

namespace parasurf {

enum class ConjugacyKind { kEqual, kConjugate, kNotConjugate };

const char* to_string(ConjugacyKind kind);

struct ConjugacyVerdict {
  ConjugacyKind kind = ConjugacyKind::kEqual;
  std::optional<Word> witness;  // t with t^-1 x t = y, for kConjugate
  int obstructed_layer = 0;     // for kNotConjugate

  static ConjugacyVerdict equal() { return {}; }
  static ConjugacyVerdict conjugate(Word t) { return {ConjugacyKind::kConjugate, std::move(t), 0}; }
  static ConjugacyVerdict not_conjugate(int layer) { return {ConjugacyKind::kNotConjugate, std::nullopt, layer}; }
};

/// Generators of C_j = {u : [x, u] has weight >= j}, modulo gamma_{c-1}.
struct CentralizerApprox {
  int level = 1;
  std::vector<NilElement> generators;
};

struct ConjugacyTrace {
  std::vector<CentralizerApprox> centralizers;  // C_1 .. C_{c-1}
  std::vector<int> defect_rank;                 // rank of the image lattice at each layer
  MalcevCoordinates conjugator;                 // of the final t
};

ConjugacyVerdict decide_conjugacy(const Word& x, const Word& y, int rank, int cls, ConjugacyTrace* trace = nullptr);

struct ConjugacyScanRow {
  int cls = 0;
  ConjugacyVerdict verdict;
  bool closures_equal = false;  // <<x>> = <<y>> in F_{k,c}
  double conjugacy_ms = 0;
  double closure_ms = 0;
};

std::vector<ConjugacyScanRow> conjugacy_scan(const Word& x, const Word& y, int rank, int cls_min, int cls_max);

}  // namespace parasurf
