#include "nclp/jordan.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <map>
#include <sstream>

namespace nclp {

namespace {

AlgebraElement jordan_product(const AlgebraElement& a, const AlgebraElement& b) {
  return 0.5 * (a * b + b * a);
}

}  // namespace

// ---------------------------------------------------------------------------
// JordanMono basics

JordanMono::JordanMono(AlgebraDescriptor src, AlgebraDescriptor dst,
                       std::vector<JordanSlot> slot_list, AlgebraElement u)
    : source(std::move(src)), target(std::move(dst)), slots(std::move(slot_list)),
      conjugator(std::move(u)) {
  if (conjugator.algebra.block_dims != target.block_dims)
    throw DimensionMismatch("jordan: conjugator lives in the wrong algebra");
  std::vector<bool> covered(source.num_blocks(), false);
  std::vector<std::vector<std::pair<int, int>>> occupied(target.num_blocks());
  for (auto& s : slots) {
    if (s.src_block < 0 || s.src_block >= source.num_blocks() || s.dst_block < 0 ||
        s.dst_block >= target.num_blocks())
      throw DimensionMismatch("jordan: slot block index out of range");
    const int n = source.block_dims[s.src_block];
    const int m = target.block_dims[s.dst_block];
    if (s.offset < 0 || s.offset + n > m)
      throw DimensionMismatch("jordan: slot does not fit in its target block");
    for (auto& [lo, hi] : occupied[s.dst_block])
      if (s.offset < hi && lo < s.offset + n)
        throw DimensionMismatch("jordan: slots overlap inside a target block");
    occupied[s.dst_block].push_back({s.offset, s.offset + n});
    covered[s.src_block] = true;
    if (n == 1) s.mode = SlotMode::Mult;  // transpose is trivial on C
  }
  for (bool c : covered)
    if (!c) throw DimensionMismatch("jordan: a source block appears in no slot");
}

JordanMono::JordanMono(AlgebraDescriptor src, AlgebraDescriptor dst,
                       std::vector<JordanSlot> slot_list)
    : JordanMono(std::move(src), dst, std::move(slot_list), AlgebraElement::identity(dst)) {}

JordanMono JordanMono::identity_inclusion(const AlgebraDescriptor& alg) {
  std::vector<JordanSlot> slots;
  for (int i = 0; i < alg.num_blocks(); ++i) slots.push_back({i, i, 0, SlotMode::Mult});
  return JordanMono(alg, alg, std::move(slots));
}

JordanMono JordanMono::transpose_map(const AlgebraDescriptor& alg) {
  std::vector<JordanSlot> slots;
  for (int i = 0; i < alg.num_blocks(); ++i) slots.push_back({i, i, 0, SlotMode::Anti});
  return JordanMono(alg, alg, std::move(slots));
}

AlgebraElement JordanMono::apply(const AlgebraElement& x) const {
  if (x.algebra.block_dims != source.block_dims)
    throw DimensionMismatch("jordan apply: element not in the source algebra");
  AlgebraElement y = AlgebraElement::zero(target);
  for (const auto& s : slots) {
    const int n = source.block_dims[s.src_block];
    const Matrix& b = x.blocks[s.src_block];
    if (s.mode == SlotMode::Mult)
      y.blocks[s.dst_block].block(s.offset, s.offset, n, n) = b;
    else
      y.blocks[s.dst_block].block(s.offset, s.offset, n, n) = b.transpose();
  }
  for (int i = 0; i < target.num_blocks(); ++i)
    y.blocks[i] = (conjugator.blocks[i] * y.blocks[i] * conjugator.blocks[i].adjoint()).eval();
  return y;
}

AlgebraElement JordanMono::unit() const { return apply(AlgebraElement::identity(source)); }

Superop JordanMono::to_superop() const {
  return Superop::from_function(source, target,
                                [this](const AlgebraElement& x) { return apply(x); });
}

AlgebraElement JordanMono::mult_support() const {
  AlgebraElement z = AlgebraElement::zero(source);
  for (const auto& s : slots)
    if (s.mode == SlotMode::Mult)
      z.blocks[s.src_block] = Matrix::Identity(source.block_dims[s.src_block],
                                               source.block_dims[s.src_block]);
  return z;
}

AlgebraElement JordanMono::anti_support() const {
  AlgebraElement z = AlgebraElement::zero(source);
  for (const auto& s : slots)
    if (s.mode == SlotMode::Anti)
      z.blocks[s.src_block] = Matrix::Identity(source.block_dims[s.src_block],
                                               source.block_dims[s.src_block]);
  return z;
}

// ---------------------------------------------------------------------------
// verification

bool JordanReport::passed(double tol) const {
  return jordan_product_residual <= tol && star_residual <= tol && linearity_residual <= tol &&
         injectivity_ok && unit_is_projection;
}

JordanReport verify_jordan_action(const Superop& op) {
  JordanReport rep;
  const auto basis = matrix_unit_basis(op.domain);
  std::vector<AlgebraElement> images;
  images.reserve(basis.size());
  for (const auto& b : basis) images.push_back(op.apply(b));

  double scale = 1.0;
  for (const auto& im : images) scale = std::max(scale, im.op_norm());

  for (size_t a = 0; a < basis.size(); ++a) {
    rep.star_residual = std::max(
        rep.star_residual, (op.apply(basis[a].adjoint()) - images[a].adjoint()).op_norm() / scale);
    for (size_t b = 0; b < basis.size(); ++b) {
      const AlgebraElement lhs = op.apply(jordan_product(basis[a], basis[b]));
      const AlgebraElement rhs = jordan_product(images[a], images[b]);
      rep.jordan_product_residual =
          std::max(rep.jordan_product_residual, (lhs - rhs).op_norm() / scale);
    }
  }
  rep.linearity_residual = 0.0;  // linear by superoperator representation
  rep.min_singular_value = op.min_singular();
  rep.injectivity_ok = rep.min_singular_value > 1e-9;

  const AlgebraElement ju = op.apply(AlgebraElement::identity(op.domain));
  const auto proj = is_projection(ju, 1e-9);
  rep.unit_is_projection = proj.ok;
  rep.unit_residual = proj.residual;
  return rep;
}

JordanReport verify_jordan_mono(const JordanMono& j) { return verify_jordan_action(j.to_superop()); }

// ---------------------------------------------------------------------------
// image algebra and structure

SubalgebraBasis image_bicommutant(const JordanMono& j, double tol) {
  std::vector<AlgebraElement> images;
  for (const auto& b : matrix_unit_basis(j.source)) images.push_back(j.apply(b));
  SubalgebraBasis alg = generated_algebra(j.target, images, /*include_parent_unit=*/false, tol);
  alg.unit = j.unit();  // same projection, avoid a rank decision
  return alg;
}

namespace {

// Classify a central summand of the image algebra as multiplicative or
// antimultiplicative by compressing the defect of multiplicativity.
struct SummandClass {
  double mult_residual;
  double anti_residual;
};

SummandClass classify_summand(const Superop& op, const AlgebraElement& z,
                              const std::vector<AlgebraElement>& basis,
                              const std::vector<AlgebraElement>& images) {
  SummandClass out{0.0, 0.0};
  double scale = 1.0;
  for (size_t a = 0; a < basis.size(); ++a)
    for (size_t b = 0; b < basis.size(); ++b) {
      const AlgebraElement jxy = op.apply(basis[a] * basis[b]);
      const AlgebraElement fwd = images[a] * images[b];
      const AlgebraElement rev = images[b] * images[a];
      out.mult_residual = std::max(out.mult_residual, (z * (jxy - fwd)).op_norm());
      out.anti_residual = std::max(out.anti_residual, (z * (jxy - rev)).op_norm());
      scale = std::max(scale, (z * jxy).op_norm());
    }
  out.mult_residual /= scale;
  out.anti_residual /= scale;
  return out;
}

}  // namespace

StructureDecomposition structure_decompose(const JordanMono& j, double tol) {
  const Superop op = j.to_superop();
  const SubalgebraBasis alg = image_bicommutant(j, tol);
  const auto zs = minimal_central_projections(alg, tol);
  const auto basis = matrix_unit_basis(j.source);
  std::vector<AlgebraElement> images;
  for (const auto& b : basis) images.push_back(j.apply(b));

  StructureDecomposition out{AlgebraElement::zero(j.target), AlgebraElement::zero(j.target)};
  const double thr = 1e-7;
  for (const auto& z : zs) {
    const SummandClass c = classify_summand(op, z, basis, images);
    const bool mult_ok = c.mult_residual <= thr;
    const bool anti_ok = c.anti_residual <= thr;
    if (mult_ok) {
      out.z_mult += z;  // abelian summands land here by convention
    } else if (anti_ok) {
      out.z_anti += z;
    } else {
      std::ostringstream os;
      os << "structure_decompose: central summand is neither multiplicative nor "
            "antimultiplicative (residuals "
         << c.mult_residual << ", " << c.anti_residual << ")";
      throw AmbiguousBlock(os.str());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// matching a raw action to slot form

namespace {

// Completes a partial isometry v (v^* v = p0, v v^* = p1) to a unitary,
// blockwise, by matching orthonormal bases of the kernels.
AlgebraElement complete_to_unitary(const AlgebraElement& v, double tol) {
  AlgebraElement u = v;
  for (auto& b : u.blocks) {
    const int n = static_cast<int>(b.rows());
    const Matrix right = Matrix::Identity(n, n) - b.adjoint() * b;  // kernel projection
    const Matrix left = Matrix::Identity(n, n) - b * b.adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> er(right), el(left);
    std::vector<int> ir, il;
    for (int k = 0; k < n; ++k) {
      if (er.eigenvalues()(k) > 0.5) ir.push_back(k);
      if (el.eigenvalues()(k) > 0.5) il.push_back(k);
    }
    if (ir.size() != il.size())
      throw DecompositionFailure("unitary completion: kernel ranks disagree");
    for (size_t k = 0; k < ir.size(); ++k)
      b += el.eigenvectors().col(il[k]) * er.eigenvectors().col(ir[k]).adjoint();
    if ((b * b.adjoint() - Matrix::Identity(n, n)).norm() > scaled_tol(tol, 1.0) * 1e3)
      throw DecompositionFailure("unitary completion failed");
  }
  return u;
}

}  // namespace

JordanMono jordan_from_action(const Superop& op, double tol) {
  const AlgebraDescriptor& src = op.domain;
  const AlgebraDescriptor& dst = op.codomain;

  const JordanReport rep = verify_jordan_action(op);
  if (!rep.passed(1e-7)) {
    std::ostringstream os;
    os << "action is not a Jordan *-monomorphism (jordan residual "
       << rep.jordan_product_residual << ", star residual " << rep.star_residual
       << ", unit residual " << rep.unit_residual << ", min singular value "
       << rep.min_singular_value << ")";
    throw DecompositionFailure(os.str());
  }

  // Per source block: split its image algebra into mult/anti central parts
  // and read off multiplicities per target block.
  struct Part {
    int src_block;
    SlotMode mode;
    AlgebraElement z;  // central projection of the image summand
  };
  std::vector<Part> parts;
  for (int i = 0; i < src.num_blocks(); ++i) {
    const int n = src.block_dims[i];
    std::vector<AlgebraElement> blk_basis, blk_images;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        AlgebraElement e = AlgebraElement::zero(src);
        e.blocks[i](r, c) = 1.0;
        blk_basis.push_back(e);
        blk_images.push_back(op.apply(e));
      }
    const SubalgebraBasis alg_i =
        generated_algebra(dst, blk_images, /*include_parent_unit=*/false, tol);
    const auto zs = minimal_central_projections(alg_i, tol);
    for (const auto& z : zs) {
      const SummandClass c = classify_summand(op, z, blk_basis, blk_images);
      if (c.mult_residual <= 1e-7)
        parts.push_back({i, SlotMode::Mult, z});
      else if (c.anti_residual <= 1e-7)
        parts.push_back({i, SlotMode::Anti, z});
      else
        throw DecompositionFailure("image summand is neither multiplicative nor transposed");
    }
  }

  // Slot allocation: multiplicity of part (i, mode) in target block j is
  // rank(z restricted to j) / n_i.
  std::vector<JordanSlot> slots;
  std::vector<int> next_offset(dst.num_blocks(), 0);
  std::sort(parts.begin(), parts.end(), [](const Part& a, const Part& b) {
    if (a.src_block != b.src_block) return a.src_block < b.src_block;
    return a.mode == SlotMode::Mult && b.mode == SlotMode::Anti;
  });
  for (const auto& part : parts) {
    const int n = src.block_dims[part.src_block];
    for (int j = 0; j < dst.num_blocks(); ++j) {
      const double tr = part.z.blocks[j].trace().real();
      const int rank = static_cast<int>(std::lround(tr));
      if (std::abs(tr - rank) > 1e-6)
        throw DecompositionFailure("central projection has non-integer block rank");
      if (rank == 0) continue;
      if (rank % n != 0)
        throw DecompositionFailure("image multiplicity is not a whole number of copies");
      for (int copy = 0; copy < rank / n; ++copy) {
        slots.push_back({part.src_block, j, next_offset[j], part.mode});
        next_offset[j] += n;
      }
    }
  }

  // Canonical map with those slots; solve for the intertwiner u with
  // op(x) = u J0(x) u^*.
  JordanMono canonical(src, dst, slots);
  const AlgebraElement q0 = canonical.unit();
  const AlgebraElement q1 = op.apply(AlgebraElement::identity(src));
  const auto basis = matrix_unit_basis(src);
  std::vector<AlgebraElement> j0x, j1x;
  for (const auto& b : basis) {
    j0x.push_back(canonical.apply(b));
    j1x.push_back(op.apply(b));
  }

  AlgebraElement isom = AlgebraElement::zero(dst);
  for (int j = 0; j < dst.num_blocks(); ++j) {
    const int m = dst.block_dims[j];
    // L(x) U = U J0(x) for all basis x, plus U = q1 U q0.
    const int rows_per = m * m;
    Matrix cons(static_cast<long>(rows_per) * (basis.size() + 2), m * m);
    long row0 = 0;
    auto emit = [&](const Matrix& lhs_of_u, const Matrix& rhs_of_u) {
      // constraint lhs * U - U * rhs = 0
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
          Matrix e = Matrix::Zero(m, m);
          e(r, c) = 1.0;
          const Matrix val = lhs_of_u * e - e * rhs_of_u;
          for (int rr = 0; rr < m; ++rr)
            for (int cc = 0; cc < m; ++cc) cons(row0 + rr * m + cc, r * m + c) = val(rr, cc);
        }
      row0 += rows_per;
    };
    for (size_t k = 0; k < basis.size(); ++k) emit(j1x[k].blocks[j], j0x[k].blocks[j]);
    // corner constraints: (1-q1) U = 0 and U (1-q0) = 0  ->  use
    // lhs = (1-q1), rhs = 0 and lhs = 0, rhs = ... encode directly:
    {
      const Matrix p1 = Matrix::Identity(m, m) - q1.blocks[j];
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
          Matrix e = Matrix::Zero(m, m);
          e(r, c) = 1.0;
          const Matrix val = p1 * e;
          for (int rr = 0; rr < m; ++rr)
            for (int cc = 0; cc < m; ++cc) cons(row0 + rr * m + cc, r * m + c) = val(rr, cc);
        }
      row0 += rows_per;
      const Matrix p0 = Matrix::Identity(m, m) - q0.blocks[j];
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
          Matrix e = Matrix::Zero(m, m);
          e(r, c) = 1.0;
          const Matrix val = e * p0;
          for (int rr = 0; rr < m; ++rr)
            for (int cc = 0; cc < m; ++cc) cons(row0 + rr * m + cc, r * m + c) = val(rr, cc);
        }
      row0 += rows_per;
    }
    Eigen::JacobiSVD<Matrix> svd(cons, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    const double thr = (smax < 1e-14) ? 1e-14 : smax * 1e-8;
    int rank = 0;
    while (rank < sv.size() && sv(rank) > thr) ++rank;
    const int nullity = m * m - rank;
    const int target_rank = static_cast<int>(std::lround(q0.blocks[j].trace().real()));
    if (nullity == 0 && target_rank > 0)
      throw DecompositionFailure("no intertwiner between the action and the slot form");

    // generic element of the solution space, then its polar isometry
    bool done = (target_rank == 0);
    if (done) continue;
    for (int attempt = 0; attempt < 8 && !done; ++attempt) {
      CounterRng rng(0xBEEF, "jordan-intertwiner", static_cast<std::uint64_t>(attempt) * 64 + j);
      Matrix g = Matrix::Zero(m, m);
      for (int k = rank; k < m * m; ++k) {
        const Complex c = rng.cnormal();
        for (int r = 0; r < m; ++r)
          for (int cc = 0; cc < m; ++cc) g(r, cc) += c * svd.matrixV()(r * m + cc, k);
      }
      Eigen::JacobiSVD<Matrix> pol(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const auto& ps = pol.singularValues();
      int prank = 0;
      const double pthr = (ps.size() && ps(0) > 1e-14) ? ps(0) * 1e-7 : 1e-14;
      while (prank < ps.size() && ps(prank) > pthr) ++prank;
      if (prank != target_rank) continue;
      isom.blocks[j] = pol.matrixU().leftCols(prank) * pol.matrixV().leftCols(prank).adjoint();
      done = true;
    }
    if (!done) throw DecompositionFailure("could not extract a partial-isometry intertwiner");
  }

  // verify the intertwining on the basis before completing to a unitary
  double worst = 0.0;
  for (size_t k = 0; k < basis.size(); ++k)
    worst = std::max(worst, (isom * j0x[k] * isom.adjoint() - j1x[k]).op_norm());
  if (worst > 1e-6)
    throw DecompositionFailure("intertwiner does not reproduce the action (residual " +
                               std::to_string(worst) + ")");

  JordanMono out(src, dst, slots, complete_to_unitary(isom, tol));
  double res = 0.0;
  for (size_t k = 0; k < basis.size(); ++k)
    res = std::max(res, (out.apply(basis[k]) - j1x[k]).op_norm());
  if (res > 1e-6)
    throw DecompositionFailure("slot form does not reproduce the action (residual " +
                               std::to_string(res) + ")");
  return out;
}

// ---------------------------------------------------------------------------
// standard form of a concrete subalgebra

StandardForm standard_form(const SubalgebraBasis& sub, double tol) {
  const auto closure = subalgebra_closure_check(sub, tol);
  if (!closure.ok)
    throw NotSubalgebra("standard_form: span is not a *-subalgebra (residual " +
                        std::to_string(closure.residual) + ")");
  const auto zs = minimal_central_projections(sub, tol);
  if (zs.empty()) throw NotSubalgebra("standard_form: trivial algebra");

  std::vector<int> dims;
  std::vector<double> weights;
  // matrix units for every central summand
  std::vector<std::vector<std::vector<AlgebraElement>>> units;  // [summand][r][c]

  for (size_t ci = 0; ci < zs.size(); ++ci) {
    const AlgebraElement& z = zs[ci];
    // dimension of the summand span (orthonormalize the compressed set)
    int sd = 0;
    {
      Matrix q(sub.parent.coord_dim(), 0);
      for (const auto& b : sub.basis) {
        Vector v = coords(z * b);
        for (int pass = 0; pass < 2; ++pass)
          for (int j = 0; j < q.cols(); ++j) v -= q.col(j).dot(v) * q.col(j);
        if (v.norm() > 1e-8) {
          q.conservativeResize(sub.parent.coord_dim(), q.cols() + 1);
          q.col(q.cols() - 1) = v / v.norm();
        }
      }
      sd = static_cast<int>(q.cols());
    }
    const int m = static_cast<int>(std::lround(std::sqrt(static_cast<double>(sd))));
    if (m * m != sd)
      throw NotSubalgebra("standard_form: summand dimension is not a perfect square");

    // minimal projections from a generic Hermitian element of the summand
    AlgebraElement f1 = AlgebraElement::zero(sub.parent);
    std::vector<AlgebraElement> fs;
    bool got = false;
    for (int attempt = 0; attempt < 8 && !got; ++attempt) {
      CounterRng rng(0xF00D, "standard-form", attempt * 97 + static_cast<int>(ci));
      AlgebraElement g = AlgebraElement::zero(sub.parent);
      for (const auto& b : sub.basis) {
        const Complex c = rng.cnormal();
        g += c * (z * b) + std::conj(c) * (z * b).adjoint();
      }
      // eigenvalues come in m clusters of equal size
      std::vector<std::pair<double, std::pair<int, int>>> eigs;
      std::vector<Eigen::SelfAdjointEigenSolver<Matrix>> solvers;
      for (const auto& blk : g.blocks) solvers.emplace_back(blk);
      for (int i = 0; i < sub.parent.num_blocks(); ++i)
        for (int k = 0; k < sub.parent.block_dims[i]; ++k) {
          // only keep directions inside z
          const Vector v = solvers[i].eigenvectors().col(k);
          const double w = (v.adjoint() * z.blocks[i] * v).real()(0, 0);
          if (w > 0.5) eigs.push_back({solvers[i].eigenvalues()(k), {i, k}});
        }
      const int total = static_cast<int>(eigs.size());
      if (total % m != 0) continue;
      const int mult = total / m;
      std::sort(eigs.begin(), eigs.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      // check the clusters are separated
      bool sep = true;
      for (int r = 1; r < m; ++r) {
        const double gap = eigs[r * mult].first - eigs[r * mult - 1].first;
        if (gap < 1e-6) sep = false;
      }
      if (!sep) continue;
      fs.clear();
      for (int r = 0; r < m; ++r) {
        AlgebraElement f = AlgebraElement::zero(sub.parent);
        for (int k = 0; k < mult; ++k) {
          const auto [bi, ki] = eigs[r * mult + k].second;
          const Vector v = solvers[bi].eigenvectors().col(ki);
          f.blocks[bi] += v * v.adjoint();
        }
        if (distance_to_span(sub.basis, f) > 1e-7) { sep = false; break; }
        fs.push_back(std::move(f));
      }
      if (!sep || static_cast<int>(fs.size()) != m) continue;
      got = true;
    }
    if (!got) throw DegenerateBasis("standard_form: could not split a summand into minimal projections");
    f1 = fs[0];

    // partial isometries e_{r,1} via a second generic element
    std::vector<std::vector<AlgebraElement>> e(m, std::vector<AlgebraElement>(m, AlgebraElement::zero(sub.parent)));
    e[0][0] = f1;
    CounterRng rng2(0xF00D + 1, "standard-form-links", ci);
    AlgebraElement g2 = AlgebraElement::zero(sub.parent);
    for (const auto& b : sub.basis) g2 += rng2.cnormal() * (z * b);
    std::vector<AlgebraElement> er1(m);
    er1[0] = f1;
    for (int r = 1; r < m; ++r) {
      const AlgebraElement v = fs[r] * g2 * f1;
      const auto pd = polar(v, tol);
      er1[r] = pd.isometry;
      if (((er1[r].adjoint() * er1[r]) - f1).op_norm() > 1e-6)
        throw DegenerateBasis("standard_form: link partial isometry is rank-deficient");
    }
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) e[r][c] = er1[r] * er1[c].adjoint();

    dims.push_back(m);
    weights.push_back(f1.trace().real());
    units.push_back(std::move(e));
  }

  AlgebraDescriptor alg(dims, weights);
  // inclusion as a raw action, then matched to slot form
  const Superop incl_op = Superop::from_function(alg, sub.parent, [&](const AlgebraElement& x) {
    AlgebraElement y = AlgebraElement::zero(sub.parent);
    for (size_t ci = 0; ci < units.size(); ++ci) {
      const int m = dims[ci];
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) y += x.blocks[ci](r, c) * units[ci][r][c];
    }
    return y;
  });
  return StandardForm{alg, jordan_from_action(incl_op, tol)};
}

CheckResult is_antiautomorphism(const JordanMono& j, double tol) {
  if (j.source.coord_dim() != j.target.coord_dim()) return {false, 1.0};
  const Superop op = j.to_superop();
  if (op.min_singular() <= 1e-9) return {false, 1.0};
  // antimultiplicative on the whole algebra: J(xy) = J(y)J(x), J(1) = 1
  const auto basis = matrix_unit_basis(j.source);
  double r = (j.unit() - AlgebraElement::identity(j.target)).op_norm();
  for (const auto& a : basis)
    for (const auto& b : basis)
      r = std::max(r, (j.apply(a * b) - j.apply(b) * j.apply(a)).op_norm());
  return {r <= scaled_tol(tol, 1.0) * 1e2, r};
}

}  // namespace nclp
