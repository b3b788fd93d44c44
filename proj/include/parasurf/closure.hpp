// Normal closures <<r>> inside F_{k,c}, layer invariants of one-relator
// quotients, and the parasurface certificate.
#pragma once

#include <deque>
#include <vector>

#include "parasurf/echelon.hpp"
#include "parasurf/lyndon.hpp"
#include "parasurf/magnus.hpp"
#include "parasurf/word.hpp"

namespace parasurf {

/// Tag algebra for lattices whose rows carry group elements: a row's tag is
/// always an element whose leading Lie component is that row.
struct NilTagOps {
  NilElement combine(const NilElement& a, const Int& x, const NilElement& b, const Int& y) const;
  NilElement scale(const NilElement& a, const Int& x) const;
};

using WitnessLattice = Echelon<NilElement, NilTagOps>;

struct MembershipCertificate {
  struct Step {
    int degree;
    IntVector coefficients;  // against the witness rows of that degree
  };
  bool member = false;
  int failed_degree = 0;  // degree whose Lie component left a remainder
  std::vector<Step> steps;
};

/// Subgroup of F_{k,c} modulo gamma_top, stored as one witness lattice per
/// degree 1..top-1 and closed under commutation with a fixed set of elements.
///
/// Worklist: an element of weight j is reduced against the degree-j lattice.
/// A zero remainder leaves a residual of higher weight that is requeued;
/// otherwise the lattice grows and [u, g] is queued for every closing element
/// g. When the queue empties, seeds and witness commutators are re-checked and
/// failures requeued (each failure grows a lattice, so this terminates).
///
/// Once every witness commutes with every closing element into the reducible
/// set, that set is the subgroup generated by the seeds and their conjugates
/// under the closing elements, provided seeds lie in the group the closing
/// elements generate.
class LayeredClosure {
 public:
  LayeredClosure(SeriesContext ctx, int top, std::vector<NilElement> closing);

  void add(const NilElement& x);
  void run();

  [[nodiscard]] bool contains(const NilElement& x, MembershipCertificate* cert = nullptr) const;

  [[nodiscard]] const SeriesContext& context() const { return ctx_; }
  [[nodiscard]] int top() const { return top_; }
  [[nodiscard]] const WitnessLattice& layer(int degree) const;
  [[nodiscard]] std::vector<NilElement> witnesses() const;
  [[nodiscard]] const std::vector<NilElement>& closing() const { return closing_; }
  [[nodiscard]] std::size_t processed() const { return processed_; }

  /// Re-checks every witness/closing-element commutator; true iff all of them
  /// already lie in the subgroup.
  [[nodiscard]] bool saturated() const;

 private:
  void push(NilElement x);
  void drain();
  [[nodiscard]] std::vector<NilElement> failures() const;

  SeriesContext ctx_;
  int top_;
  std::vector<NilElement> closing_;
  std::vector<int> closing_depth_;
  std::vector<WitnessLattice> layers_;
  std::vector<NilElement> seeds_;
  std::vector<std::deque<NilElement>> queue_;  // by weight
  std::size_t processed_ = 0;
};

class NormalClosure {
 public:
  NormalClosure(const Word& relator, int rank, int cls);

  [[nodiscard]] const Word& relator() const { return relator_; }
  [[nodiscard]] int rank() const { return ctx_.rank(); }
  [[nodiscard]] int cls() const { return ctx_.cls(); }
  [[nodiscard]] const SeriesContext& context() const { return ctx_; }

  /// Canonical HNF of the degree-j lattice M_j in ambient monomial coordinates.
  [[nodiscard]] const HermiteBasis& layer(int degree) const;
  /// Echelon rows of M_j with one witness element per row.
  [[nodiscard]] const WitnessLattice& witness_layer(int degree) const { return engine_.layer(degree); }
  [[nodiscard]] const LayeredClosure& engine() const { return engine_; }

 private:
  Word relator_;
  SeriesContext ctx_;
  LayeredClosure engine_;
  std::vector<HermiteBasis> bases_;
};

NormalClosure normal_closure(const Word& relator, int rank, int cls);

struct Membership {
  bool member = false;
  MembershipCertificate certificate;
};

Membership member(const Word& x, const NormalClosure& n);
Membership member(const NilElement& x, const NormalClosure& n);

bool closures_equal(const Word& r1, const Word& r2, int rank, int cls);
bool closures_equal(const NormalClosure& n1, const NormalClosure& n2);

struct LayerInvariant {
  int degree = 0;
  Int free_baseline;          // witt_rank(k, j)
  std::size_t relation_rank = 0;  // rank of M_j
  std::size_t free_rank = 0;
  std::vector<Int> torsion;
  friend bool operator==(const LayerInvariant&, const LayerInvariant&) = default;
};

/// Abelian invariants of gamma_j(G)/gamma_{j+1}(G), G = F/<<r>>, for j < c.
std::vector<LayerInvariant> layer_invariants(const NormalClosure& n);

/// Same table, computed from scratch.
std::vector<LayerInvariant> lcs_rank_table(const Word& relator, int rank, int cls);

/// Entry (i, j): exponent sum of a_{j+1} in the image of a_{i+1}.
IntMatrix abelianization_matrix(const Endomorphism& e);

struct ParasurfaceCertificate {
  int genus = 0;
  int cls = 0;
  Word relator;
  Word mapped_surface_relator;  // e(surface_relator(g))
  IntMatrix abelianization;
  bool unimodular = false;
  bool closures_equal = false;
  std::vector<LayerInvariant> relator_layers;
  std::vector<LayerInvariant> surface_layers;
  bool layers_consistent = false;
  bool torsion_free = false;

  /// e induces an automorphism of F_{2g,c} carrying <<surface relator>> onto
  /// <<relator>>, so the class-c quotients are isomorphic.
  [[nodiscard]] bool isomorphism_certified() const { return unimodular && closures_equal; }
  [[nodiscard]] bool pass() const { return isomorphism_certified() && layers_consistent; }
};

ParasurfaceCertificate parasurface_certificate(
    const Word& relator, const Endomorphism& e, int genus, int cls,
    CommutatorConvention conv = CommutatorConvention::kInverseFirst);

}  // namespace parasurf
