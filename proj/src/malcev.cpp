#include <stdexcept>

#include "parasurf/lyndon.hpp"

namespace parasurf {

MalcevCoordinates malcev_coordinates(const NilElement& x) {
  const SeriesContext& ctx = x.context();
  const BracketBasis& basis = bracket_basis(ctx.rank(), ctx.cls());
  MalcevCoordinates out{ctx.rank(), ctx.cls(), {}};
  NilElement rest = x.without_witness();
  for (int d = 1; d < ctx.cls(); ++d) {
    IntVector e = to_lyndon_coords(lie_component(rest, d), ctx.rank(), d);
    NilElement layer = NilElement::identity(ctx);
    const auto& elems = basis.elements(d);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (sgn(e[i]) != 0) layer = nil_mul(layer, nil_pow(elems[i], e[i]));
    }
    rest = nil_mul(nil_inv(layer), rest).without_witness();
    out.layers.push_back(std::move(e));
  }
  if (!rest.is_identity()) throw std::logic_error("malcev_coordinates: peeling left a remainder");
  return out;
}

NilElement from_malcev(const MalcevCoordinates& coords) {
  const BracketBasis& basis = bracket_basis(coords.rank, coords.cls);
  if (coords.layers.size() != static_cast<std::size_t>(coords.cls - 1)) {
    throw std::invalid_argument("from_malcev: wrong number of layers");
  }
  NilElement x = NilElement::identity(basis.context()).without_witness();
  for (int d = 1; d < coords.cls; ++d) {
    const auto& e = coords.layers[static_cast<std::size_t>(d - 1)];
    const auto& elems = basis.elements(d);
    if (e.size() != elems.size()) throw std::invalid_argument("from_malcev: wrong layer size");
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (sgn(e[i]) != 0) x = nil_mul(x, nil_pow(elems[i], e[i]));
    }
  }
  return x;
}

Word malcev_word(const MalcevCoordinates& coords) {
  const BracketBasis& basis = bracket_basis(coords.rank, coords.cls);
  Word w(coords.rank);
  for (int d = 1; d < coords.cls; ++d) {
    const auto& e = coords.layers[static_cast<std::size_t>(d - 1)];
    const auto& words = basis.words(d);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (sgn(e[i]) == 0) continue;
      if (!e[i].fits_slong_p()) throw std::overflow_error("malcev_word: exponent too large for a word");
      w = w * bracket_word(words[i], coords.rank).pow(e[i].get_si());
    }
  }
  return w;
}

}  // namespace parasurf
