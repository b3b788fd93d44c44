#include "parasurf/word.hpp"

namespace parasurf {

namespace {

void require_even_rank(int rank) {
  if (rank <= 2 || rank % 2 != 0) {
    throw std::invalid_argument("hypothesis checks need an even rank k > 2, got " +
                                std::to_string(rank));
  }
}

Word gen(int rank, int index) { return Word::generator(rank, index); }

}  // namespace

Word type2_relator(int rank, const Word& gamma, CommutatorConvention conv) {
  require_even_rank(rank);
  if (gamma.rank() != rank) throw std::invalid_argument("gamma over wrong alphabet");
  const Word w = surface_relator(rank / 2, conv);
  return w * commutator(w, gamma * w * gamma.inverse(), conv);
}

Endomorphism type3_map(int rank, const Word& delta) {
  if (delta.rank() != rank) throw std::invalid_argument("delta over wrong alphabet");
  return Endomorphism::identity(rank).with_image(1, gen(rank, 1) * delta);
}

Word type3_relator(int rank, const Word& delta, CommutatorConvention conv) {
  require_even_rank(rank);
  if (delta.rank() != rank) throw std::invalid_argument("delta over wrong alphabet");
  Word r = commutator(gen(rank, 1) * delta, gen(rank, 2), conv);
  for (int i = 3; i < rank; i += 2) r = r * commutator(gen(rank, i), gen(rank, i + 1), conv);
  return r;
}

Type2Report check_hypothesis_type2(int rank, const Word& gamma, CommutatorConvention conv) {
  Type2Report report;
  report.rank = rank;
  report.gamma = gamma;
  report.relator = type2_relator(rank, gamma, conv);
  report.cyclically_reduced = is_cyclically_reduced(report.relator);
  report.relator_length = report.relator.length();
  report.relator_cyclic_length = cyclic_length(report.relator);
  report.surface_length = surface_relator(rank / 2, conv).length();
  report.pass = report.cyclically_reduced && report.relator_length != report.surface_length;
  return report;
}

Type3Report check_hypothesis_type3(int rank, const Word& delta, CommutatorConvention conv) {
  require_even_rank(rank);
  if (delta.rank() != rank) throw std::invalid_argument("delta over wrong alphabet");
  Type3Report report;
  report.rank = rank;
  report.delta = delta;
  report.commutator = commutator(gen(rank, 1) * delta, gen(rank, 2), conv);
  report.cyclically_reduced = is_cyclically_reduced(report.commutator);
  report.length = report.commutator.length();
  report.base_length = commutator(gen(rank, 1), gen(rank, 2), conv).length();
  report.delta_in_commutator_subgroup = in_commutator_subgroup(delta);
  report.pass = report.delta_in_commutator_subgroup && report.cyclically_reduced &&
                report.length != report.base_length;
  return report;
}

}  // namespace parasurf
