#include "parasurf/closure.hpp"

#include <stdexcept>

namespace parasurf {

NilElement NilTagOps::combine(const NilElement& a, const Int& x, const NilElement& b, const Int& y) const {
  const bool use_a = sgn(x) != 0;
  const bool use_b = sgn(y) != 0;
  if (!use_a && !use_b) return NilElement::identity(a.context());
  if (!use_a) return scale(b, y);
  if (!use_b) return scale(a, x);
  return nil_mul(scale(a, x), scale(b, y)).without_witness();
}

NilElement NilTagOps::scale(const NilElement& a, const Int& x) const {
  if (x == 1) return a.without_witness();
  if (x == -1) return nil_inv(a).without_witness();
  return nil_pow(a, x).without_witness();
}

LayeredClosure::LayeredClosure(SeriesContext ctx, int top, std::vector<NilElement> closing)
    : ctx_(std::move(ctx)), top_(top), closing_(std::move(closing)) {
  if (top < 1 || top > ctx_.cls()) throw std::invalid_argument("LayeredClosure: top outside 1..c");
  for (NilElement& g : closing_) {
    if (!(g.context() == ctx_)) throw std::invalid_argument("LayeredClosure: closing element from another group");
    g = g.without_witness();
    closing_depth_.push_back(depth(g));
  }
  layers_.reserve(static_cast<std::size_t>(top_));
  layers_.emplace_back(0);  // degree 0 is never used
  for (int d = 1; d < top_; ++d) layers_.emplace_back(ctx_.layer_size(d));
  queue_.resize(static_cast<std::size_t>(top_));
}

const WitnessLattice& LayeredClosure::layer(int degree) const {
  if (degree < 1 || degree >= top_) throw std::out_of_range("LayeredClosure::layer: degree outside 1..top-1");
  return layers_[static_cast<std::size_t>(degree)];
}

void LayeredClosure::push(NilElement x) {
  const int d = depth(x);
  if (d >= top_) return;
  queue_[static_cast<std::size_t>(d)].push_back(x.without_witness());
}

void LayeredClosure::add(const NilElement& x) {
  if (!(x.context() == ctx_)) throw std::invalid_argument("LayeredClosure::add: element from another group");
  seeds_.push_back(x.without_witness());
  push(x);
}

void LayeredClosure::drain() {
  for (;;) {
    int d = 1;
    while (d < top_ && queue_[static_cast<std::size_t>(d)].empty()) ++d;
    if (d >= top_) return;
    NilElement x = std::move(queue_[static_cast<std::size_t>(d)].front());
    queue_[static_cast<std::size_t>(d)].pop_front();
    ++processed_;

    auto ins = layers_[static_cast<std::size_t>(d)].insert(lie_component(x, d), x);
    if (ins.absorbed) push(std::move(ins.residual));
    if (ins.changed) {
      for (std::size_t i = 0; i < closing_.size(); ++i) {
        if (d + closing_depth_[i] >= top_) continue;
        push(nil_commutator(x, closing_[i]));
      }
    }
  }
}

std::vector<NilElement> LayeredClosure::failures() const {
  std::vector<NilElement> out;
  for (const NilElement& s : seeds_) {
    if (!contains(s)) out.push_back(s);
  }
  for (int d = 1; d < top_; ++d) {
    for (const auto& row : layers_[static_cast<std::size_t>(d)].rows()) {
      for (std::size_t i = 0; i < closing_.size(); ++i) {
        if (d + closing_depth_[i] >= top_) continue;
        NilElement comm = nil_commutator(row.tag, closing_[i]);
        if (!contains(comm)) out.push_back(std::move(comm));
      }
    }
  }
  return out;
}

void LayeredClosure::run() {
  for (;;) {
    drain();
    std::vector<NilElement> missing = failures();
    if (missing.empty()) return;
    for (NilElement& x : missing) push(std::move(x));
  }
}

bool LayeredClosure::contains(const NilElement& x, MembershipCertificate* cert) const {
  if (cert) *cert = MembershipCertificate{};
  NilElement cur = x.without_witness();
  for (;;) {
    const int d = depth(cur);
    if (d >= top_) {
      if (cert) cert->member = true;
      return true;
    }
    const auto red = layers_[static_cast<std::size_t>(d)].reduce(lie_component(cur, d));
    if (cert) cert->steps.push_back({d, red.coefficients});
    if (!is_zero(red.remainder)) {
      if (cert) cert->failed_degree = d;
      return false;
    }
    cur = nil_mul(cur, nil_inv(red.product)).without_witness();
  }
}

std::vector<NilElement> LayeredClosure::witnesses() const {
  std::vector<NilElement> out;
  for (int d = 1; d < top_; ++d) {
    for (const auto& row : layers_[static_cast<std::size_t>(d)].rows()) out.push_back(row.tag);
  }
  return out;
}

bool LayeredClosure::saturated() const { return failures().empty(); }

namespace {

std::vector<NilElement> generators_and_inverses(const SeriesContext& ctx) {
  std::vector<NilElement> out;
  for (int i = 1; i <= ctx.rank(); ++i) {
    const Word g = Word::generator(ctx.rank(), i);
    out.push_back(embed_word(g, ctx));
    out.push_back(embed_word(g.inverse(), ctx));
  }
  return out;
}

}  // namespace

NormalClosure::NormalClosure(const Word& relator, int rank, int cls)
    : relator_(relator),
      ctx_(rank, cls),
      engine_(ctx_, cls, generators_and_inverses(ctx_)) {
  if (relator.rank() != rank) throw std::invalid_argument("normal_closure: relator rank differs from k");
  engine_.add(embed_word(relator, ctx_));
  engine_.run();
  for (int d = 1; d < cls; ++d) bases_.push_back(engine_.layer(d).hermite());
}

const HermiteBasis& NormalClosure::layer(int degree) const {
  if (degree < 1 || degree >= cls()) throw std::out_of_range("NormalClosure::layer: degree outside 1..c-1");
  return bases_[static_cast<std::size_t>(degree - 1)];
}

NormalClosure normal_closure(const Word& relator, int rank, int cls) { return NormalClosure(relator, rank, cls); }

Membership member(const NilElement& x, const NormalClosure& n) {
  if (!(x.context() == n.context())) throw std::invalid_argument("member: element from another group");
  Membership m;
  m.member = n.engine().contains(x, &m.certificate);
  return m;
}

Membership member(const Word& x, const NormalClosure& n) {
  if (x.rank() != n.rank()) throw std::invalid_argument("member: word rank differs from k");
  return member(embed_word(x, n.context()), n);
}

bool closures_equal(const NormalClosure& n1, const NormalClosure& n2) {
  if (!(n1.context() == n2.context())) throw std::invalid_argument("closures_equal: different groups");
  return member(n1.relator(), n2).member && member(n2.relator(), n1).member;
}

bool closures_equal(const Word& r1, const Word& r2, int rank, int cls) {
  return closures_equal(normal_closure(r1, rank, cls), normal_closure(r2, rank, cls));
}

std::vector<LayerInvariant> layer_invariants(const NormalClosure& n) {
  std::vector<LayerInvariant> out;
  for (int d = 1; d < n.cls(); ++d) {
    LayerInvariant inv;
    inv.degree = d;
    inv.free_baseline = witt_rank(n.rank(), d);
    const auto dim = static_cast<std::size_t>(inv.free_baseline.get_ui());

    HermiteBasis ambient;
    ambient.dim = dim;
    for (std::size_t i = 0; i < dim; ++i) {
      IntVector e(dim);
      e[i] = 1;
      ambient.rows.push_back(std::move(e));
      ambient.pivots.push_back(i);
    }

    const HermiteBasis& m = n.layer(d);
    IntMatrix coords(m.rank(), dim);
    for (std::size_t r = 0; r < m.rank(); ++r) {
      IntVector c = to_lyndon_coords(m.rows[r], n.rank(), d);
      for (std::size_t i = 0; i < dim; ++i) coords(r, i) = c[i];
    }
    const QuotientInvariants q = quotient_invariants(ambient, hnf(coords));
    inv.relation_rank = m.rank();
    inv.free_rank = q.free_rank;
    inv.torsion = q.torsion();
    out.push_back(std::move(inv));
  }
  return out;
}

std::vector<LayerInvariant> lcs_rank_table(const Word& relator, int rank, int cls) {
  return layer_invariants(normal_closure(relator, rank, cls));
}

IntMatrix abelianization_matrix(const Endomorphism& e) {
  const int k = e.rank();
  IntMatrix m(static_cast<std::size_t>(k), static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const auto sums = exponent_sums(e.image(i + 1));
    for (int j = 0; j < k; ++j) {
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = sums[static_cast<std::size_t>(j)];
    }
  }
  return m;
}

ParasurfaceCertificate parasurface_certificate(const Word& relator, const Endomorphism& e, int genus, int cls,
                                               CommutatorConvention conv) {
  const int k = 2 * genus;
  if (relator.rank() != k || e.rank() != k) {
    throw std::invalid_argument("parasurface_certificate: relator and map must have rank 2g");
  }
  ParasurfaceCertificate cert;
  cert.genus = genus;
  cert.cls = cls;
  cert.relator = relator;
  cert.mapped_surface_relator = apply_endomorphism(e, surface_relator(genus, conv));
  cert.abelianization = abelianization_matrix(e);
  cert.unimodular = is_unimodular(cert.abelianization);

  const NormalClosure nr = normal_closure(relator, k, cls);
  const NormalClosure ns = normal_closure(surface_relator(genus, conv), k, cls);
  const NormalClosure nm = normal_closure(cert.mapped_surface_relator, k, cls);
  cert.closures_equal = closures_equal(nm, nr);
  cert.relator_layers = layer_invariants(nr);
  cert.surface_layers = layer_invariants(ns);
  cert.layers_consistent = cert.relator_layers == cert.surface_layers;
  cert.torsion_free = true;
  for (const auto& l : cert.relator_layers) {
    if (!l.torsion.empty()) cert.torsion_free = false;
  }
  return cert;
}

}  // namespace parasurf
