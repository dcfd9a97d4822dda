#include "masa/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "masa/error.hpp"

namespace masa {

namespace {

DenseVector vectorize(const DenseMatrix& m) {
  return Eigen::Map<const DenseVector>(m.data(), m.size());
}

DenseMatrix unvectorize(const DenseVector& v, Eigen::Index rows, Eigen::Index cols) {
  return Eigen::Map<const DenseMatrix>(v.data(), rows, cols);
}

// Gram-Schmidt against `basis`, applied twice for stability.
DenseVector project_out(const std::vector<DenseVector>& basis, DenseVector v) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& q : basis) v -= q * q.dot(v);
  return v;
}

// Orthonormal basis of the null space of `a`. Tall systems are first reduced
// to their square R factor.
Eigen::MatrixXcd null_space(const Eigen::MatrixXcd& a, double tolerance) {
  const Eigen::Index cols = a.cols();
  if (cols == 0) return Eigen::MatrixXcd(0, 0);
  Eigen::MatrixXcd reduced;
  if (a.rows() > cols) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    reduced = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  } else {
    reduced = Eigen::MatrixXcd::Zero(cols, cols);
    reduced.topRows(a.rows()) = a;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(reduced, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double threshold = tolerance * std::max(1.0, s.size() ? s(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > threshold) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

std::size_t rank_of_columns(const Eigen::MatrixXcd& a, double tolerance) {
  return static_cast<std::size_t>(a.cols() - null_space(a, tolerance).cols());
}

}  // namespace

SpanSpace::SpanSpace(std::size_t n, double tolerance) : n_(n), tolerance_(tolerance) {}

SpanSpace SpanSpace::from_matrices(std::span<const DenseMatrix> matrices, double tolerance) {
  SpanSpace space(matrices.empty() ? 0 : static_cast<std::size_t>(matrices.front().rows()),
                  tolerance);
  for (const auto& m : matrices) space.try_add(m);
  return space;
}

double SpanSpace::residual(const DenseMatrix& m) const {
  const DenseVector v = vectorize(m);
  const double norm = v.norm();
  if (norm == 0.0) return 0.0;
  if (!orthonormal_.empty() && orthonormal_.front().size() != v.size()) {
    throw InputError("span membership: matrix shape differs from the span's");
  }
  return project_out(orthonormal_, v).norm() / norm;
}

bool SpanSpace::try_add(const DenseMatrix& m) {
  const DenseVector v = vectorize(m);
  const double norm = v.norm();
  if (norm == 0.0) return false;
  if (!orthonormal_.empty() && orthonormal_.front().size() != v.size()) {
    throw InputError("span: matrix shape differs from the span's");
  }
  const DenseVector r = project_out(orthonormal_, v);
  const double rel = r.norm() / norm;
  if (rel <= tolerance_) return false;
  if (rel < 100.0 * tolerance_) {
    throw ToleranceError("span: independence test is ill-conditioned (relative residual " +
                         std::to_string(rel) + ")");
  }
  if (basis_.empty()) n_ = static_cast<std::size_t>(m.rows());
  basis_.push_back(m);
  orthonormal_.push_back(r / r.norm());
  return true;
}

DenseMatrix matrix_unit(std::size_t n, std::size_t g, std::size_t h) {
  DenseMatrix m = DenseMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  m(static_cast<Eigen::Index>(h), static_cast<Eigen::Index>(g)) = 1.0;
  return m;
}

SpanSpace matrix_unit_space(const SupportRelation& omega) {
  SpanSpace space(omega.ground());
  for (auto [g, h] : omega.pairs()) space.try_add(matrix_unit(omega.ground(), g, h));
  return space;
}

namespace {

struct CenterSplit {
  std::vector<DenseMatrix> projections;
  bool ok = false;
};

CenterSplit split_center(const std::vector<DenseMatrix>& center, const SpanSpace& algebra,
                         std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto coefficient = [&rng] { return static_cast<double>(1 + rng() % 997) / 997.0; };

  DenseMatrix h = DenseMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const auto& z : center) {
    const DenseMatrix herm = z + z.adjoint();
    const DenseMatrix skew = Complex(0.0, 1.0) * (z - z.adjoint());
    h += coefficient() * herm + coefficient() * skew;
  }
  h = 0.5 * (h + h.adjoint());

  Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(h);
  const auto& values = eig.eigenvalues();
  const auto& vectors = eig.eigenvectors();
  const double scale = std::max(values.cwiseAbs().maxCoeff(), 1e-300);
  const double gap = 1e-6 * scale;

  CenterSplit split;
  Eigen::Index start = 0;
  while (start < values.size()) {
    Eigen::Index end = start + 1;
    while (end < values.size() && values(end) - values(end - 1) <= gap) ++end;
    const double mean = values.segment(start, end - start).mean();
    if (std::abs(mean) > gap) {
      const auto block = vectors.middleCols(start, end - start);
      DenseMatrix p = block * block.adjoint();
      if (!algebra.contains(p)) return split;
      split.projections.push_back(std::move(p));
    }
    start = end;
  }
  split.ok = split.projections.size() == center.size();
  return split;
}

std::size_t first_support_coordinate(const DenseMatrix& p) {
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    if (std::abs(p(i, i)) > 1e-6) return static_cast<std::size_t>(i);
  return static_cast<std::size_t>(p.rows());
}

}  // namespace

AlgebraStructure algebra_closure(const SpanSpace& generators, bool unital,
                                 const NumericConfig& config) {
  if (generators.size() == 0) throw InputError("algebra_closure: empty generating set");
  const std::size_t n = generators.matrix_dimension();
  if (n > config.max_dimension) {
    throw UnsupportedSize("algebra_closure: dimension " + std::to_string(n) + " exceeds cap " +
                          std::to_string(config.max_dimension));
  }
  const auto dim = static_cast<Eigen::Index>(n);

  // Generators closed under adjoint; words in them span the algebra.
  SpanSpace gens(n, config.rank_tolerance);
  for (const auto& m : generators.basis()) {
    gens.try_add(m);
    gens.try_add(m.adjoint());
  }
  if (unital) gens.try_add(DenseMatrix::Identity(dim, dim));

  SpanSpace algebra(n, config.rank_tolerance);
  for (const auto& m : gens.basis()) algebra.try_add(m);
  for (std::size_t i = 0; i < algebra.size(); ++i) {
    const DenseMatrix current = algebra.basis()[i];
    for (const auto& t : gens.basis()) algebra.try_add(t * current);
  }

  // Center: elements of the algebra commuting with every generator.
  const std::size_t a_dim = algebra.size();
  const auto n2 = dim * dim;
  Eigen::MatrixXcd system(n2 * static_cast<Eigen::Index>(gens.size()),
                          static_cast<Eigen::Index>(a_dim));
  std::vector<DenseMatrix> unit_basis;
  for (const auto& b : algebra.basis()) unit_basis.push_back(b / b.norm());
  for (std::size_t j = 0; j < a_dim; ++j) {
    const DenseMatrix& b = unit_basis[j];
    for (std::size_t t = 0; t < gens.size(); ++t) {
      const DenseMatrix& g = gens.basis()[t];
      system.block(static_cast<Eigen::Index>(t) * n2, static_cast<Eigen::Index>(j), n2, 1) =
          vectorize(b * g - g * b);
    }
  }
  const Eigen::MatrixXcd kernel = null_space(system, config.rank_tolerance);
  std::vector<DenseMatrix> center;
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    DenseMatrix z = DenseMatrix::Zero(dim, dim);
    for (std::size_t j = 0; j < a_dim; ++j) z += kernel(static_cast<Eigen::Index>(j), c) * unit_basis[j];
    center.push_back(std::move(z));
  }

  AlgebraStructure out{algebra, {}, {}, center.size()};
  for (std::uint64_t attempt = 0; attempt < 2; ++attempt) {
    CenterSplit split = split_center(center, algebra, n, config.seed + attempt);
    if (!split.ok) continue;
    std::sort(split.projections.begin(), split.projections.end(),
              [](const DenseMatrix& a, const DenseMatrix& b) {
                return first_support_coordinate(a) < first_support_coordinate(b);
              });
    std::vector<std::size_t> dims;
    std::size_t total = 0;
    bool square = true;
    for (const auto& p : split.projections) {
      SpanSpace cut(n, config.rank_tolerance);
      for (const auto& b : algebra.basis()) cut.try_add(p * b);
      const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(cut.size()))));
      square = square && d * d == cut.size();
      dims.push_back(d);
      total += cut.size();
    }
    if (!square || total != a_dim) continue;
    out.central_projections = std::move(split.projections);
    out.block_dims = std::move(dims);
    return out;
  }
  throw ToleranceError("algebra_closure: could not split the center into minimal projections");
}

std::size_t intersection_with_ideal(const SpanSpace& space, const DenseMatrix& central_projection,
                                    double tolerance) {
  const auto dim = central_projection.rows();
  const DenseMatrix complement = DenseMatrix::Identity(dim, dim) - central_projection;
  Eigen::MatrixXcd columns(dim * dim, static_cast<Eigen::Index>(space.size()));
  for (std::size_t i = 0; i < space.size(); ++i) {
    DenseMatrix u = space.basis()[i];
    u /= u.norm();
    columns.col(static_cast<Eigen::Index>(i)) = vectorize(complement * u);
  }
  return space.size() - rank_of_columns(columns, tolerance);
}

NumericTipResult numeric_tip_check(const SpanSpace& space, const NumericConfig& config) {
  const std::size_t n = space.matrix_dimension();
  const auto dim = static_cast<Eigen::Index>(n);
  if (space.size() == 0 || !space.contains(DenseMatrix::Identity(dim, dim))) {
    throw InputError("numeric_tip_check: the space must contain the identity");
  }
  NumericTipResult result{
      .holds = true, .witness = std::nullopt, .all_witnesses = {}, .cstar = algebra_closure(space, true, config)};
  const std::size_t k = result.cstar.central_projections.size();
  if (k > kMaxIdealClasses) {
    throw UnsupportedSize("numeric_tip_check: too many central blocks to enumerate");
  }
  const std::uint64_t limit = std::uint64_t{1} << k;
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    DenseMatrix p = DenseMatrix::Zero(dim, dim);
    IdealMask ideal;
    for (std::size_t i = 0; i < k; ++i) {
      if ((mask >> i) & 1U) {
        p += result.cstar.central_projections[i];
        ideal.blocks.push_back(i);
      }
    }
    if (intersection_with_ideal(space, p, config.rank_tolerance) == 0) {
      result.all_witnesses.push_back(ideal);
      if (!result.witness) result.witness = ideal;
    }
  }
  result.holds = !result.witness.has_value();
  return result;
}

std::vector<DenseMatrix> commutant(std::span<const DenseMatrix> generators, double tolerance) {
  if (generators.empty()) throw InputError("commutant: no generators");
  const auto n = generators.front().rows();
  const DenseMatrix id = DenseMatrix::Identity(n, n);
  Eigen::MatrixXcd system(n * n * static_cast<Eigen::Index>(2 * generators.size()), n * n);
  Eigen::Index row = 0;
  for (const auto& a : generators) {
    for (const DenseMatrix& m : {DenseMatrix(a), DenseMatrix(a.adjoint())}) {
      // vec(XA − AX) = (Aᵀ ⊗ I − I ⊗ A) vec(X), column-major.
      Eigen::MatrixXcd op(n * n, n * n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
          op.block(i * n, j * n, n, n) = m(j, i) * id - (i == j ? m : DenseMatrix::Zero(n, n));
      system.middleRows(row, n * n) = op;
      row += n * n;
    }
  }
  const Eigen::MatrixXcd kernel = null_space(system, tolerance);
  std::vector<DenseMatrix> out;
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) out.push_back(unvectorize(kernel.col(c), n, n));
  return out;
}

EnvelopeHypotheses enve_hypotheses_check(const SpanSpace& space,
                                         std::span<const DenseMatrix> subset,
                                         const NumericConfig& config) {
  for (const auto& s : subset) {
    if (!space.contains(s)) throw InputError("enve_hypotheses_check: S is not contained in U");
  }
  const auto dim = static_cast<Eigen::Index>(space.matrix_dimension());
  // C*(U)′ is the commutant of U ∪ U^*.
  const std::vector<DenseMatrix> comm = commutant(space.basis(), config.rank_tolerance);

  EnvelopeHypotheses h;
  h.commutant_products_in_space = true;
  for (const auto& s : subset)
    for (const auto& c : comm)
      if (!space.contains(s * c)) h.commutant_products_in_space = false;

  SpanSpace sym(space.matrix_dimension(), config.rank_tolerance);
  for (const auto& s : subset) {
    sym.try_add(s);
    sym.try_add(s.adjoint());
  }
  h.identity_in_selfadjoint_span = sym.size() > 0 && sym.contains(DenseMatrix::Identity(dim, dim));
  h.holds = h.commutant_products_in_space && h.identity_in_selfadjoint_span;
  if (h.holds) h.tip_holds = numeric_tip_check(space, config).holds;
  return h;
}

SupportRelation ref_oracle(std::span<const DenseMatrix> generators, double tolerance) {
  if (generators.empty()) throw InputError("ref_oracle: no generators");
  const auto n = generators.front().rows();
  if (static_cast<std::size_t>(n) > kMaxOracleGround) {
    throw UnsupportedSize("ref_oracle: ground size above " + std::to_string(kMaxOracleGround));
  }
  for (const auto& t : generators) {
    if (t.rows() != n || t.cols() != n) throw InputError("ref_oracle: generators differ in size");
  }

  // D·S·D through products with the atoms of the masa.
  SpanSpace bimodule(static_cast<std::size_t>(n), tolerance);
  for (const auto& t : generators) {
    for (Eigen::Index h = 0; h < n; ++h) {
      for (Eigen::Index g = 0; g < n; ++g) {
        const DenseMatrix left = matrix_unit(static_cast<std::size_t>(n), static_cast<std::size_t>(h),
                                             static_cast<std::size_t>(h));
        const DenseMatrix right = matrix_unit(static_cast<std::size_t>(n), static_cast<std::size_t>(g),
                                              static_cast<std::size_t>(g));
        const DenseMatrix m = left * t * right;
        if (m.cwiseAbs().maxCoeff() > kEntryTolerance) bimodule.try_add(m);
      }
    }
  }

  const std::size_t ground = static_cast<std::size_t>(n);
  SupportRelation hull = SupportRelation::full(ground);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << ground); ++mask) {
    DenseVector chi = DenseVector::Zero(n);
    for (std::size_t i = 0; i < ground; ++i)
      if ((mask >> i) & 1U) chi(static_cast<Eigen::Index>(i)) = 1.0;
    SpanSpace image(ground, tolerance);
    for (const auto& m : bimodule.basis()) image.try_add(DenseMatrix(m * chi));

    for (std::size_t g = 0; g < ground; ++g) {
      if (!((mask >> g) & 1U)) continue;  // (e_h⊗e_g^*)χ_A = 0
      for (std::size_t h = 0; h < ground; ++h) {
        if (!hull.contains(g, h)) continue;
        const DenseMatrix tx = matrix_unit(ground, g, h) * chi;
        if (image.residual(tx) > tolerance) hull.erase(g, h);
      }
    }
  }
  return hull;
}

DenseMatrix random_support_matrix(const SupportRelation& omega, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> modulus(0.5, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const auto n = static_cast<Eigen::Index>(omega.ground());
  DenseMatrix m = DenseMatrix::Zero(n, n);
  for (auto [g, h] : omega.pairs()) {
    const double r = modulus(rng);
    m(static_cast<Eigen::Index>(h), static_cast<Eigen::Index>(g)) = std::polar(r, phase(rng));
  }
  return m;
}

SupportRelation numeric_support(const DenseMatrix& m, double tolerance) {
  SupportRelation r(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index h = 0; h < m.rows(); ++h)
    for (Eigen::Index g = 0; g < m.cols(); ++g)
      if (std::abs(m(h, g)) > tolerance) r.insert(static_cast<std::size_t>(g), static_cast<std::size_t>(h));
  return r;
}

SpanSpace annihilation_space(const SupportRelation& omega, double tolerance) {
  const std::size_t ground = omega.ground();
  if (ground > kMaxOracleGround) {
    throw UnsupportedSize("annihilation_space: ground size above " +
                          std::to_string(kMaxOracleGround));
  }
  const auto n = static_cast<Eigen::Index>(ground);
  const SupportRelation outside = omega.complement();
  const auto projection = [&](std::uint64_t mask) {
    DenseMatrix p = DenseMatrix::Zero(n, n);
    for (std::size_t i = 0; i < ground; ++i)
      if ((mask >> i) & 1U) p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    return p;
  };

  std::vector<Eigen::MatrixXcd> blocks;
  const std::uint64_t limit = std::uint64_t{1} << ground;
  for (std::uint64_t kappa = 1; kappa < limit; ++kappa) {
    for (std::uint64_t lambda = 1; lambda < limit; ++lambda) {
      bool inside = true;
      for (std::size_t g = 0; g < ground && inside; ++g) {
        if (!((kappa >> g) & 1U)) continue;
        for (std::size_t h = 0; h < ground && inside; ++h)
          if ((lambda >> h) & 1U) inside = outside.contains(g, h);
      }
      if (!inside) continue;
      // vec(M_λ T M_κ) = (M_κᵀ ⊗ M_λ) vec(T)
      const DenseMatrix mk = projection(kappa);
      const DenseMatrix ml = projection(lambda);
      Eigen::MatrixXcd op(n * n, n * n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) op.block(i * n, j * n, n, n) = mk(j, i) * ml;
      blocks.push_back(std::move(op));
    }
  }

  Eigen::MatrixXcd system(static_cast<Eigen::Index>(blocks.size()) * n * n, n * n);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    system.middleRows(static_cast<Eigen::Index>(b) * n * n, n * n) = blocks[b];
  const Eigen::MatrixXcd kernel =
      blocks.empty() ? Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(n * n, n * n))
                     : null_space(system, tolerance);

  SpanSpace space(ground, tolerance);
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) space.try_add(unvectorize(kernel.col(c), n, n));
  return space;
}

SpaceComparison compare_spaces(const SpanSpace& left, const SpanSpace& right) {
  SpaceComparison cmp{left.size(), right.size(), 0.0};
  for (const auto& m : left.basis()) cmp.max_residual = std::max(cmp.max_residual, right.residual(m));
  for (const auto& m : right.basis()) cmp.max_residual = std::max(cmp.max_residual, left.residual(m));
  return cmp;
}

DenseMatrix permutation_unitary(std::span<const std::size_t> f) {
  const auto n = static_cast<Eigen::Index>(f.size());
  DenseMatrix u = DenseMatrix::Zero(n, n);
  for (std::size_t g = 0; g < f.size(); ++g) u(static_cast<Eigen::Index>(f[g]), static_cast<Eigen::Index>(g)) = 1.0;
  return u;
}

bool verify_unitary_conjugation(std::span<const std::size_t> f, const SupportRelation& from,
                                const SupportRelation& to, double tolerance) {
  if (f.size() != from.ground() || from.ground() != to.ground()) return false;
  const DenseMatrix u = permutation_unitary(f);
  const auto n = static_cast<Eigen::Index>(f.size());
  if (!(u * u.adjoint()).isApprox(DenseMatrix::Identity(n, n))) return false;

  const SpanSpace target = matrix_unit_space(to);
  SpanSpace image(from.ground(), tolerance);
  for (auto [g, h] : from.pairs()) {
    const DenseMatrix m = u * matrix_unit(from.ground(), g, h) * u.adjoint();
    if (target.residual(m) > tolerance) return false;
    image.try_add(m);
  }
  return image.size() == target.size();
}

}  // namespace masa
