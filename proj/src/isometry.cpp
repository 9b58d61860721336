#include "nclp/isometry.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace nclp {

// ---------------------------------------------------------------------------
// triple invariants

bool TripleReport::passed(double tol) const {
  return w_partial_isometry <= tol && w_initial_projection <= tol && b_positive <= tol &&
         b_support <= tol && b_commutes <= tol && trace_condition <= tol;
}

TripleReport verify_yeadon_triple(const YeadonTriple& t, double tol) {
  TripleReport rep;
  const AlgebraElement ju = t.jordan.unit();
  rep.w_partial_isometry = is_partial_isometry(t.w, tol).residual;
  rep.w_initial_projection = (t.w.adjoint() * t.w - ju).op_norm();
  rep.b_positive = is_positive(t.B, tol).residual;
  rep.b_support = (support_projection(t.B, tol) - ju).op_norm();
  const AlgebraElement bp = support_power(t.B, t.p, tol);
  for (const auto& x : matrix_unit_basis(t.jordan.source)) {
    const AlgebraElement jx = t.jordan.apply(x);
    rep.b_commutes = std::max(rep.b_commutes, (t.B * jx - jx * t.B).op_norm() /
                                                  std::max(1.0, t.B.op_norm()));
    rep.trace_condition =
        std::max(rep.trace_condition, std::abs(x.trace() - bp.pairing(jx)));
  }
  return rep;
}

LpMap construct_yeadon(const YeadonTriple& t, double tol) {
  const TripleReport rep = verify_yeadon_triple(t, tol);
  if (!rep.passed(1e-7)) {
    std::ostringstream os;
    os << "yeadon triple invalid: w_pi " << rep.w_partial_isometry << ", w*w-J(1) "
       << rep.w_initial_projection << ", B>=0 " << rep.b_positive << ", s(B) " << rep.b_support
       << ", [B,J] " << rep.b_commutes << ", trace " << rep.trace_condition;
    throw InvalidTriple(os.str());
  }
  const AlgebraElement wb = t.w * t.B;
  LpMap out;
  out.p = t.p;
  out.op = Superop::from_function(t.jordan.source, t.jordan.target,
                                  [&](const AlgebraElement& x) { return wb * t.jordan.apply(x); });
  return out;
}

// ---------------------------------------------------------------------------
// isometry verification

IsometryReport verify_isometry(const LpMap& t, int trials, std::uint64_t seed) {
  IsometryReport rep;
  const AlgebraDescriptor& dom = t.op.domain;
  auto check = [&](const AlgebraElement& xi) {
    const double n = lp_norm(xi, t.p);
    if (n < 1e-12) return;
    const double m = lp_norm(t.apply(xi), t.p);
    rep.max_rel_deviation = std::max(rep.max_rel_deviation, std::abs(m - n) / n);
  };

  // structured deterministic suite
  const auto units = matrix_unit_basis(dom);
  for (const auto& u : units) check(u);
  for (size_t a = 0; a < units.size(); ++a)
    for (size_t b = a + 1; b < units.size(); ++b) {
      check(units[a] + units[b]);
      check(units[a] - units[b]);
    }
  check(AlgebraElement::identity(dom));

  // random suite: generic, positive, partial isometries, orthogonal sums
  rep.positive_on_cone = true;
  for (int k = 0; k < trials; ++k) {
    CounterRng rng(seed, "isometry-verify", k);
    check(random_element(dom, rng));
    const AlgebraElement h = random_psd(dom, rng);
    check(h);
    const AlgebraElement th = t.apply(h);
    const double neg = std::max(0.0, -min_eigenvalue(0.5 * (th + th.adjoint()))) +
                       (th - th.adjoint()).op_norm();
    const double rel = neg / std::max(1.0, h.op_norm());
    rep.cone_residual = std::max(rep.cone_residual, rel);
    const AlgebraElement pr = random_projection(dom, rng);
    check(polar(random_element(dom, rng)).isometry);
    // orthogonal sum supported by complementary projections
    const AlgebraElement one = AlgebraElement::identity(dom);
    const AlgebraElement g1 = pr * random_element(dom, rng) * pr;
    const AlgebraElement g2 = (one - pr) * random_element(dom, rng) * (one - pr);
    check(g1 + g2);
  }
  rep.positive_on_cone = rep.cone_residual <= 1e-8;
  return rep;
}

// ---------------------------------------------------------------------------
// decomposition

YeadonTriple decompose_isometry(const LpMap& t, double tol) {
  const IsometryReport iso = verify_isometry(t, 64, 3);
  if (iso.max_rel_deviation > 1e-7)
    throw NotIsometry("decompose_isometry: input deviates from isometry by " +
                      std::to_string(iso.max_rel_deviation));

  const AlgebraElement t1 = t.apply(AlgebraElement::identity(t.op.domain));
  const PolarDecomposition pd = polar(t1, tol);
  const AlgebraElement& w = pd.isometry;
  const AlgebraElement& b = pd.positive;
  const AlgebraElement b_pinv = support_power(b, -1.0, tol);
  const AlgebraElement ws = w.adjoint();

  const Superop j_action =
      Superop::from_function(t.op.domain, t.op.codomain, [&](const AlgebraElement& x) {
        return b_pinv * (ws * t.apply(x));
      });
  JordanMono j = [&] {
    try {
      return jordan_from_action(j_action, tol);
    } catch (const DecompositionFailure& e) {
      throw DecompositionFailure(
          std::string("decompose_isometry: the map is numerically isometric but not "
                      "structurally Yeadon (at finite dimension this indicates p = 2 or a "
                      "numerical artifact, not a counterexample): ") +
          e.what());
    }
  }();

  YeadonTriple out{w, b, std::move(j), t.p};
  const TripleReport rep = verify_yeadon_triple(out, tol);
  if (!rep.passed(1e-7))
    throw DecompositionFailure("decompose_isometry: extracted triple fails its invariants");
  const LpMap rebuilt = construct_yeadon(out, tol);
  const double res = (rebuilt.op - t.op).op_norm();
  if (res > 1e-8)
    throw DecompositionFailure("decompose_isometry: reconstruction differs by " +
                               std::to_string(res));
  return out;
}

TypicalTriple decompose_l1(const LpMap& t, double tol) {
  if (t.p != 1.0) throw ExponentMismatch("decompose_l1: the map must act on L^1");
  const IsometryReport iso = verify_isometry(t, 64, 4);
  if (iso.max_rel_deviation > 1e-7)
    throw NotIsometry("decompose_l1: input deviates from isometry by " +
                      std::to_string(iso.max_rel_deviation));

  const AlgebraDescriptor& dom = t.op.domain;
  const AlgebraDescriptor& cod = t.op.codomain;

  // w from the polar decomposition of the image of a faithful positive
  const PolarDecomposition pd = polar(t.apply(AlgebraElement::identity(dom)), tol);
  const AlgebraElement& w = pd.isometry;
  const Superop pos_map = Superop::left_multiplier(w.adjoint()) * t.op;

  // J on spectral projections: J(q) = s(T+(q)); extended spectrally
  auto support_image = [&](const AlgebraElement& q) {
    return support_projection(pos_map.apply(q), tol);
  };
  auto j_eval_hermitian = [&](const AlgebraElement& h) {
    AlgebraElement out = AlgebraElement::zero(cod);
    // per-block spectral decomposition with exact-cluster grouping
    struct Eig {
      double val;
      int block, idx;
    };
    std::vector<Eig> eigs;
    std::vector<Eigen::SelfAdjointEigenSolver<Matrix>> solvers;
    for (const auto& blk : h.blocks) solvers.emplace_back((blk + blk.adjoint()) / 2.0);
    for (int i = 0; i < dom.num_blocks(); ++i)
      for (int k = 0; k < dom.block_dims[i]; ++k)
        eigs.push_back({solvers[i].eigenvalues()(k), i, k});
    std::sort(eigs.begin(), eigs.end(), [](const Eig& a, const Eig& b) { return a.val < b.val; });
    const double cl = 1e-8 * std::max(1.0, h.op_norm());
    size_t start = 0;
    while (start < eigs.size()) {
      size_t stop = start + 1;
      while (stop < eigs.size() && eigs[stop].val - eigs[stop - 1].val <= cl) ++stop;
      const double val = eigs[start].val;
      if (std::abs(val) > cl) {
        AlgebraElement q = AlgebraElement::zero(dom);
        for (size_t k = start; k < stop; ++k) {
          const Vector v = solvers[eigs[k].block].eigenvectors().col(eigs[k].idx);
          q.blocks[eigs[k].block] += v * v.adjoint();
        }
        out += val * support_image(q);
      }
      start = stop;
    }
    return out;
  };
  const Superop j_action = Superop::from_function(dom, cod, [&](const AlgebraElement& x) {
    const AlgebraElement re = 0.5 * (x + x.adjoint());
    const AlgebraElement im = Complex(0, -0.5) * (x - x.adjoint());
    return j_eval_hermitian(re) + Complex(0, 1) * j_eval_hermitian(im);
  });
  JordanMono j = [&] {
    try {
      return jordan_from_action(j_action, tol);
    } catch (const DecompositionFailure& e) {
      throw NotIsometry(std::string("decompose_l1: support map does not extend to a Jordan "
                                    "*-monomorphism: ") +
                        e.what());
    }
  }();

  // P = J o T^*; T^*(1) = 1 is part of the contract
  const Superop t_adj = pos_map.adjoint_pairing();
  const double unital = (t_adj.apply(AlgebraElement::identity(cod)) -
                         AlgebraElement::identity(dom))
                            .op_norm();
  if (unital > 1e-7)
    throw NotIsometry("decompose_l1: T^*(1) deviates from 1 by " + std::to_string(unital));

  PositiveProjection p;
  p.parent = cod;
  p.jordan = j;
  p.op = j.to_superop() * t_adj;

  // support convention s(P) = P(1) = J(1)
  const AlgebraElement ju = j.unit();
  const double sup_res =
      std::max((p.apply(AlgebraElement::identity(cod)) - ju).op_norm(),
               (p.op - p.op * Superop::conjugation(ju)).op_norm());
  if (sup_res > 1e-7)
    throw NotIsometry("decompose_l1: s(P) = P(1) = J(1) fails by " + std::to_string(sup_res));

  return TypicalTriple{w, std::move(j), std::move(p), 1.0};
}

// ---------------------------------------------------------------------------
// conversions

TypicalTriple yeadon_to_typical(const YeadonTriple& y, double tol) {
  const TripleReport rep = verify_yeadon_triple(y, tol);
  if (!rep.passed(1e-7)) throw InvalidTriple("yeadon_to_typical: invalid input triple");
  const JordanMono& j = y.jordan;

  // phi = tau2(B^p .) is a state of support J(1) commuting with the image
  const AlgebraElement bp = support_power(y.B, y.p, tol);
  StateDensity phi{bp};

  const SubalgebraBasis img = image_bicommutant(j, tol);
  if (check_centralizer(phi, img, tol) > 1e-7)
    throw InvalidTriple("yeadon_to_typical: B^p does not centralize the image");
  const ConditionalExpectation f = state_ce(img, phi, tol);

  // lambda = density w.r.t. tau1 of x -> phi(pi(x))
  const StructureDecomposition sd = structure_decompose(j, tol);
  const AlgebraElement lam = functional_density(j.source, [&](const AlgebraElement& x) {
    return bp.pairing(sd.z_mult * j.apply(x));
  });
  return TypicalTriple{y.w, j, build_positive_projection(j, f, lam, tol), y.p};
}

YeadonTriple typical_to_yeadon(const TypicalTriple& t, double tol) {
  const JordanMono& j = t.jordan;
  // B = (density of tau1 o J^{-1} o P)^{1/p}
  const Superop q = j.to_superop().pinv(tol) * t.projection.op;
  const AlgebraElement dens = q.adjoint_pairing().apply(AlgebraElement::identity(j.source));
  const AlgebraElement b = fc_power(dens, 1.0 / t.p, tol);
  YeadonTriple out{t.w, b, j, t.p};
  const TripleReport rep = verify_yeadon_triple(out, tol);
  if (!rep.passed(1e-7))
    throw InvalidTriple("typical_to_yeadon: converted triple fails its invariants");
  return out;
}

// ---------------------------------------------------------------------------
// typical construction

LpMap construct_typical(const TypicalTriple& t, double tol) {
  const JordanMono& j = t.jordan;
  const auto wpi = is_partial_isometry(t.w, tol);
  if (!wpi.ok || (t.w.adjoint() * t.w - j.unit()).op_norm() > 1e-7)
    throw InvalidTriple("construct_typical: w is not a partial isometry with w^*w = J(1)");

  // validate P and obtain the two-summand data
  const ProjectionFactorization fac = factor_projection(t.projection, tol);
  const StructureDecomposition sd = structure_decompose(j, tol);
  const Superop pi = Superop::from_function(j.source, j.target, [&](const AlgebraElement& x) {
    return sd.z_mult * j.apply(x);
  });
  const Superop pi_anti = Superop::from_function(j.source, j.target, [&](const AlgebraElement& x) {
    return sd.z_anti * j.apply(x);
  });
  // pushforward of densities under pi, pi' (adjoint of the inverse map)
  const Superop push_m = pi.pinv(tol).adjoint_pairing();
  const Superop push_a = pi_anti.pinv(tol).adjoint_pairing();
  const AlgebraElement one_minus = AlgebraElement::identity(j.source) - fac.lambda;

  auto on_positive = [&](const AlgebraElement& h) {
    // h >= 0 in L^p(M1): image has density lambda (phi o pi^{-1}) plus
    // (1-lambda) (phi o pi'^{-1}) with phi = tau_{h^p}
    const AlgebraElement hp = fc_power(h, t.p, 1e-7);
    AlgebraElement dens = push_m.apply(fac.lambda * hp) + push_a.apply(one_minus * hp);
    return fc_power(dens, 1.0 / t.p, 1e-7);
  };

  const Superop w_left = Superop::left_multiplier(t.w);
  LpMap out;
  out.p = t.p;
  out.op = w_left * Superop::from_function(j.source, j.target, [&](const AlgebraElement& x) {
             const auto parts = positive_decompose(x);
             return on_positive(parts[0]) - on_positive(parts[1]) +
                    Complex(0, 1) * (on_positive(parts[2]) - on_positive(parts[3]));
           });
  return out;
}

// ---------------------------------------------------------------------------
// embeddings

CEEmbedding embed_via_ce(const ConditionalExpectation& e, double p, double tol) {
  CEEmbedding out;
  out.domain = standard_form(e.range, tol);
  const AlgebraDescriptor& n_alg = out.domain.algebra;
  const Superop incl_pinv = out.domain.inclusion.to_superop().pinv(tol);
  // density pushforward of phi -> phi o incl^{-1} o E
  const Superop push = (incl_pinv * e.op).adjoint_pairing();

  auto on_positive = [&](const AlgebraElement& h) {
    const AlgebraElement hp = fc_power(h, p, 1e-7);
    return fc_power(push.apply(hp), 1.0 / p, 1e-7);
  };
  out.map.p = p;
  out.map.op = Superop::from_function(n_alg, e.parent, [&](const AlgebraElement& x) {
    const auto parts = positive_decompose(x);
    return on_positive(parts[0]) - on_positive(parts[1]) +
           Complex(0, 1) * (on_positive(parts[2]) - on_positive(parts[3]));
  });
  return out;
}

LpMap isometry_from_antiiso(const JordanMono& alpha, double p, const StateDensity* reference,
                            double tol) {
  const auto anti = is_antiautomorphism(alpha, tol);
  if (!anti.ok)
    throw NotAntiauto("isometry_from_antiiso: not a surjective *-antiautomorphism (residual " +
                      std::to_string(anti.residual) + ")");
  StateDensity phi;
  if (reference) {
    phi = *reference;
  } else {
    AlgebraElement d = AlgebraElement::identity(alpha.source);
    d *= Complex(1.0 / d.trace().real(), 0);
    phi = StateDensity{d};
  }
  if (!phi.faithful(tol).ok) throw NotFaithful("isometry_from_antiiso: reference state");

  const Superop a_op = alpha.to_superop();
  const Superop a_inv = a_op.pinv(tol);
  const StateDensity phi_a = pullback_state(a_inv, phi);

  // spanning family x d^{1/p} -> (phi o alpha^{-1})^{1/p} alpha(x)
  const AlgebraElement root = fc_power(phi.d, 1.0 / p, tol);
  const AlgebraElement root_a = fc_power(phi_a.d, 1.0 / p, tol);
  const int dim = alpha.source.coord_dim();
  Matrix v(dim, dim), u(dim, dim);
  const auto basis = matrix_unit_basis(alpha.source);
  for (int k = 0; k < dim; ++k) {
    v.col(k) = coords(basis[k] * root);
    u.col(k) = coords(root_a * alpha.apply(basis[k]));
  }
  LpMap out;
  out.p = p;
  out.op = Superop(alpha.source, alpha.target, u * v.inverse());
  return out;
}

SymmetricEmbedding symmetric_embedding(const JordanMono& j, const PositiveProjection& p,
                                       const StateDensity& phi, double exponent, double tol) {
  if (!phi.faithful(tol).ok)
    throw NotFaithful("symmetric_embedding: reference state must be faithful");
  // the factorization through a conditional expectation is the finite-
  // dimensional form of the compatibility hypothesis; it also validates P
  (void)factor_projection(p, tol);

  const Superop jp = j.to_superop().pinv(tol) * p.op;  // J^{-1} o P
  const StateDensity bar = pullback_state(jp, phi);    // phi o J^{-1} o P

  const double e = 1.0 / (2.0 * exponent);
  const AlgebraElement root = fc_power(phi.d, e, tol);
  const AlgebraElement root_bar = fc_power(bar.d, e, tol);

  const AlgebraDescriptor& dom = j.source;
  const AlgebraDescriptor& cod = j.target;
  const auto dom_basis = matrix_unit_basis(dom);
  Matrix v(dom.coord_dim(), dom.coord_dim()), u(cod.coord_dim(), dom.coord_dim());
  for (size_t k = 0; k < dom_basis.size(); ++k) {
    v.col(static_cast<int>(k)) = coords(root * dom_basis[k] * root);
    u.col(static_cast<int>(k)) = coords(root_bar * j.apply(dom_basis[k]) * root_bar);
  }
  SymmetricEmbedding out;
  out.embed.p = exponent;
  out.embed.op = Superop(dom, cod, u * v.inverse());

  // companion projection bar^{1/2p} y bar^{1/2p} -> phi^{1/2p} (J^{-1}P(y)) phi^{1/2p},
  // extended by zero off the corner via the pseudoinverse
  const auto cod_basis = matrix_unit_basis(cod);
  Matrix vb(cod.coord_dim(), cod.coord_dim()), ub(dom.coord_dim(), cod.coord_dim());
  for (size_t k = 0; k < cod_basis.size(); ++k) {
    vb.col(static_cast<int>(k)) = coords(root_bar * cod_basis[k] * root_bar);
    ub.col(static_cast<int>(k)) = coords(root * jp.apply(cod_basis[k]) * root);
  }
  Eigen::JacobiSVD<Matrix> svd(vb, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thr = scaled_tol(tol, sv.size() ? sv(0) : 1.0);
  Vector inv(sv.size());
  for (int k = 0; k < sv.size(); ++k) inv(k) = (sv(k) > thr) ? 1.0 / sv(k) : 0.0;
  out.project.p = exponent;
  out.project.op = Superop(
      cod, dom, ub * (svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint()));
  return out;
}

// ---------------------------------------------------------------------------
// uniqueness

UniquenessReport uniqueness_roundtrip(const LpMap& t, double tol) {
  auto decompose = [&](const LpMap& m) {
    if (m.p == 1.0) return decompose_l1(m, tol);
    return yeadon_to_typical(decompose_isometry(m, tol), tol);
  };
  const TypicalTriple t1 = decompose(t);
  const LpMap rebuilt = construct_typical(t1, tol);
  const TypicalTriple t2 = decompose(rebuilt);

  UniquenessReport rep;
  rep.w_deviation = (t1.w - t2.w).op_norm();
  rep.jordan_deviation = (t1.jordan.to_superop() - t2.jordan.to_superop()).op_norm();
  rep.projection_deviation = (t1.projection.op - t2.projection.op).op_norm();
  const double thr = 1e-9 * std::max(1.0, t.op.op_norm());
  rep.unique = rep.w_deviation <= thr * 10 && rep.jordan_deviation <= thr * 10 &&
               rep.projection_deviation <= thr * 10;
  return rep;
}

}  // namespace nclp
