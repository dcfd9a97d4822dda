#include "masa/reflexivity.hpp"

#include "masa/error.hpp"

namespace masa {

PhiMap::PhiMap(SupportRelation source) : source_(std::move(source)) {
  const std::size_t n = source_.ground();
  atoms_.assign(n, IndexSet(n));
  for (auto [g, h] : source_.pairs()) atoms_[g].set(h);
}

IndexSet PhiMap::operator()(const IndexSet& subset) const {
  IndexSet image(source_.ground());
  for (std::size_t g : members_of(subset)) image |= atoms_[g];
  return image;
}

IndexSet map_phi(const SupportRelation& omega, const IndexSet& subset) {
  if (subset.size() != omega.ground()) throw InputError("map_phi: subset has wrong ground size");
  return PhiMap(omega)(subset);
}

SupportRelation bimodule_support(std::span<const DenseMatrix> generators, double tolerance) {
  if (generators.empty()) throw InputError("bimodule_support: no generators");
  const auto n = generators.front().rows();
  SupportRelation omega(static_cast<std::size_t>(n));
  for (const DenseMatrix& t : generators) {
    if (t.rows() != n || t.cols() != n) {
      throw InputError("bimodule_support: generators must be square of equal size");
    }
    for (Eigen::Index h = 0; h < n; ++h)
      for (Eigen::Index g = 0; g < n; ++g)
        if (std::abs(t(h, g)) > tolerance) {
          omega.insert(static_cast<std::size_t>(g), static_cast<std::size_t>(h));
        }
  }
  return omega;
}

SupportRelation ref_hull(const SupportRelation& omega) {
  const PhiMap phi(omega);
  SupportRelation hull(omega.ground());
  for (std::size_t g = 0; g < omega.ground(); ++g)
    for (std::size_t h : members_of(phi.atom(g))) hull.insert(g, h);
  return hull;
}

namespace {

void require_unital(const SupportRelation& omega, const char* op) {
  if (!omega.contains_diagonal()) {
    throw InputError(std::string(op) + ": the bimodule must be unital (diagonal ⊆ Ω)");
  }
}

void require_subset_ground(const SupportRelation& omega, const IndexSet& subset, const char* op) {
  if (subset.size() != omega.ground()) {
    throw InputError(std::string(op) + ": subset has wrong ground size");
  }
}

// {(g,h) : g ∈ from ⇒ h ∈ to}, i.e. the support of Alg-style constraint
// to^⊥ T from = 0.
SupportRelation implication_support(const IndexSet& from, const IndexSet& to) {
  const std::size_t n = from.size();
  SupportRelation r = SupportRelation::full(n);
  for (std::size_t g : members_of(from))
    for (std::size_t h : members_of(~to)) r.erase(g, h);
  return r;
}

bool is_algebra_support(const SupportRelation& r) {
  return r.contains_diagonal() && compose(r, r).is_subset_of(r);
}

}  // namespace

SupportRelation x_space(const SupportRelation& omega, const IndexSet& subset) {
  require_unital(omega, "x_space");
  require_subset_ground(omega, subset, "x_space");
  return implication_support(subset, map_phi(omega, subset));
}

CslSummands csl_summands(const SupportRelation& omega, const IndexSet& subset) {
  const SupportRelation x = x_space(omega, subset);
  IndexSet q = map_phi(omega, subset) - subset;
  SupportRelation a1 = x & implication_support(q, q);
  SupportRelation a2 = x & implication_support(~q, ~q);
  return {std::move(q), std::move(a1), std::move(a2)};
}

SupportRelation delta_decomposition(const SupportRelation& omega, const IndexSet& subset) {
  require_unital(omega, "delta_decomposition");
  require_subset_ground(omega, subset, "delta_decomposition");
  if (!omega.is_symmetric()) {
    throw InputError("delta_decomposition: the bimodule must be self-adjoint (Ω symmetric)");
  }
  const IndexSet image = map_phi(omega, subset);
  return implication_support(subset, subset) & implication_support(~image, ~image);
}

bool is_csl_algebra_support(const SupportRelation& omega) {
  return is_algebra_support(omega) && ref_hull(omega) == omega;
}

std::vector<DecompositionCertificate> full_decomposition(const SupportRelation& omega) {
  require_unital(omega, "full_decomposition");
  const bool selfadjoint = omega.is_symmetric();
  const std::size_t n = omega.ground();

  std::vector<DecompositionCertificate> out;
  out.reserve(n);
  for (std::size_t g = 0; g < n; ++g) {
    IndexSet atom(n);
    atom.set(g);
    DecompositionCertificate cert;
    cert.atom = g;
    cert.x_support = x_space(omega, atom);
    CslSummands parts = csl_summands(omega, atom);
    cert.q_set = std::move(parts.q);
    cert.summand_a1 = std::move(parts.a1);
    cert.summand_a2 = std::move(parts.a2);

    cert.verified.union_identity = (cert.summand_a1 | cert.summand_a2) == cert.x_support;
    cert.verified.a1_algebra = is_algebra_support(cert.summand_a1);
    cert.verified.a2_algebra = is_algebra_support(cert.summand_a2);

    if (selfadjoint) {
      SupportRelation b = delta_decomposition(omega, atom);
      const SupportRelation delta = cert.x_support & adjoint_support(cert.x_support);
      cert.verified.b_identity = (b | adjoint_support(b)) == delta;
      cert.verified.b_algebra = is_algebra_support(b);
      cert.selfadjoint_summand_b = std::move(b);
    }
    out.push_back(std::move(cert));
  }
  return out;
}

SupportRelation intersect_csl_sums(std::span<const DecompositionCertificate> certificates,
                                   std::size_t ground) {
  SupportRelation acc = SupportRelation::full(ground);
  for (const auto& c : certificates) acc = acc & (c.summand_a1 | c.summand_a2);
  return acc;
}

SupportRelation intersect_selfadjoint_sums(
    std::span<const DecompositionCertificate> certificates, std::size_t ground) {
  SupportRelation acc = SupportRelation::full(ground);
  for (const auto& c : certificates) {
    if (!c.selfadjoint_summand_b) {
      throw InputError("certificate for atom " + std::to_string(c.atom) + " carries no B summand");
    }
    acc = acc & (*c.selfadjoint_summand_b | adjoint_support(*c.selfadjoint_summand_b));
  }
  return acc;
}

}  // namespace masa
