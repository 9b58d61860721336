#include <doctest.h>

#include "test_util.hpp"

using namespace nclp;
using test::diag;
using test::unit;

namespace {

ModularContext random_ctx(const AlgebraDescriptor& alg, CounterRng& rng) {
  return ModularContext(alg, StateDensity{random_density(alg, rng)});
}

}  // namespace

TEST_CASE("modular automorphisms") {
  const auto m2 = AlgebraDescriptor::full(2);
  SUBCASE("tracial density acts trivially") {
    AlgebraElement d = AlgebraElement::identity(m2);
    d *= Complex(0.5, 0);
    const ModularContext ctx(m2, StateDensity{d});
    CounterRng rng(501, "mod-tracial");
    const AlgebraElement x = random_element(m2, rng);
    for (double t : {0.3, 1.7, -2.2}) CHECK((ctx.modular_auto(t, x) - x).op_norm() < 1e-12);
  }
  SUBCASE("t = 0 is the identity") {
    CounterRng rng(502, "mod-zero");
    const auto ctx = random_ctx(m2, rng);
    const AlgebraElement x = random_element(m2, rng);
    CHECK((ctx.modular_auto(0.0, x) - x).op_norm() < 1e-13);
  }
  SUBCASE("frozen phase: d = diag(2/3, 1/3), x = e12, t = 1") {
    const ModularContext ctx(m2, StateDensity{diag(m2, {2.0 / 3.0, 1.0 / 3.0})});
    const AlgebraElement out = ctx.modular_auto(1.0, unit(m2, 0, 0, 1));
    // phase (d1/d2)^{i} = 2^{i} = exp(i ln 2)
    const Complex expected(std::cos(std::log(2.0)), std::sin(std::log(2.0)));
    CHECK(std::abs(out.blocks[0](0, 1) - expected) < 1e-12);
  }
  SUBCASE("group law") {
    CounterRng rng(503, "mod-group");
    const auto alg = AlgebraDescriptor({2, 2}, {1.0, 0.5});
    const auto ctx = random_ctx(alg, rng);
    for (int k = 0; k < 20; ++k) {
      const AlgebraElement x = random_element(alg, rng);
      const double s = rng.uniform(-2, 2), t = rng.uniform(-2, 2);
      CHECK((ctx.modular_auto(s, ctx.modular_auto(t, x)) - ctx.modular_auto(s + t, x)).op_norm() <=
            1e-10 * std::max(1.0, x.op_norm()));
    }
  }
  SUBCASE("non-faithful densities are rejected") {
    CHECK_THROWS_AS(ModularContext(m2, StateDensity{diag(m2, {1.0, 0.0})}), NotFaithful);
  }
}

TEST_CASE("cosine family") {
  const auto m2 = AlgebraDescriptor::full(2);
  CounterRng rng(504, "cosine");
  const auto ctx = random_ctx(m2, rng);
  SUBCASE("t = 0 anchor and tracial collapse") {
    const AlgebraElement x = random_element(m2, rng);
    CHECK((ctx.cosine_family(0.0, x) - x).op_norm() < 1e-13);
  }
  SUBCASE("cosine law rho_s rho_t = (rho_{s+t} + rho_{s-t})/2") {
    for (int k = 0; k < 25; ++k) {
      const AlgebraElement x = random_element(m2, rng);
      const double s = rng.uniform(-2, 2), t = rng.uniform(-2, 2);
      const AlgebraElement lhs = ctx.cosine_family(s, ctx.cosine_family(t, x));
      const AlgebraElement rhs =
          0.5 * (ctx.cosine_family(s + t, x) + ctx.cosine_family(s - t, x));
      CHECK((lhs - rhs).op_norm() <= 1e-10 * std::max(1.0, x.op_norm()));
    }
  }
  SUBCASE("symmetry phi(rho_t(a) o b) = phi(a o rho_t(b))") {
    for (int k = 0; k < 25; ++k) {
      const AlgebraElement a = random_element(m2, rng), b = random_element(m2, rng);
      const double t = rng.uniform(-2, 2);
      const AlgebraElement ra = ctx.cosine_family(t, a), rb = ctx.cosine_family(t, b);
      const Complex lhs = ctx.state().d.pairing(0.5 * (ra * b + b * ra));
      const Complex rhs = ctx.state().d.pairing(0.5 * (a * rb + rb * a));
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, a.op_norm() * b.op_norm()));
    }
  }
}

TEST_CASE("phi transform") {
  const auto m2 = AlgebraDescriptor::full(2);
  SUBCASE("tracial density gives the identity transform") {
    AlgebraElement d = AlgebraElement::identity(m2);
    d *= Complex(0.5, 0);
    const ModularContext ctx(m2, StateDensity{d});
    CounterRng rng(505, "phi-tracial");
    const AlgebraElement x = random_element(m2, rng);
    CHECK((ctx.phi_transform(x) - x).op_norm() < 1e-12);
  }
  SUBCASE("frozen off-diagonal factor for d = diag(2/3, 1/3)") {
    const ModularContext ctx(m2, StateDensity{diag(m2, {2.0 / 3.0, 1.0 / 3.0})});
    const AlgebraElement out = ctx.phi_transform(unit(m2, 0, 0, 1));
    CHECK(std::abs(out.blocks[0](0, 1).real() - 2.0 * std::sqrt(2.0) / 3.0) < 1e-12);
    CHECK(std::abs(out.blocks[0](0, 1).real() - 0.94281) < 1e-5);
    // quadrature cross-check of the sech average
    const AlgebraElement quad = phi_transform_quadrature(ctx, unit(m2, 0, 0, 1));
    CHECK((out - quad).op_norm() < 1e-6);
  }
  SUBCASE("closed form vs quadrature on random data") {
    for (int k = 0; k < 6; ++k) {
      CounterRng rng(506, "phi-quad", k);
      const auto alg = AlgebraDescriptor({2, 1}, {1.0, 2.0});
      const auto ctx = random_ctx(alg, rng);
      const AlgebraElement x = random_element(alg, rng);
      CHECK((ctx.phi_transform(x) - phi_transform_quadrature(ctx, x)).op_norm() <=
            1e-6 * std::max(1.0, x.op_norm()));
    }
  }
  SUBCASE("Jordan derivative identity d^{1/2} x d^{1/2} = phi o Phi(x)") {
    for (int k = 0; k < 20; ++k) {
      CounterRng rng(507, "phi-ident", k);
      const auto alg = AlgebraDescriptor::full(3);
      const auto ctx = random_ctx(alg, rng);
      const AlgebraElement x = random_element(alg, rng);
      const AlgebraElement half = fc_power(ctx.state().d, 0.5);
      const AlgebraElement lhs = half * x * half;
      const AlgebraElement px = ctx.phi_transform(x);
      const AlgebraElement rhs = 0.5 * (px * ctx.state().d + ctx.state().d * px);
      CHECK((lhs - rhs).op_norm() <= 1e-10 * std::max(1.0, x.op_norm()));
    }
  }
}

TEST_CASE("self-polar form") {
  const auto m2 = AlgebraDescriptor::full(2);
  SUBCASE("normalized at the identity") {
    CounterRng rng(508, "sp");
    const auto ctx = random_ctx(m2, rng);
    const AlgebraElement one = AlgebraElement::identity(m2);
    CHECK(std::abs(ctx.self_polar_form(one, one) - Complex(1.0)) < 1e-12);
  }
  SUBCASE("tracial collapse to the weighted trace form") {
    AlgebraElement d = AlgebraElement::identity(m2);
    d *= Complex(0.5, 0);
    const ModularContext ctx(m2, StateDensity{d});
    CounterRng rng(509, "sp-tracial");
    const AlgebraElement a = random_element(m2, rng), b = random_element(m2, rng);
    CHECK(std::abs(ctx.self_polar_form(a, b) - 0.5 * a.inner(b)) < 1e-12);
  }
  SUBCASE("positivity and the quadrature route") {
    for (int k = 0; k < 6; ++k) {
      CounterRng rng(510, "sp-quad", k);
      const auto ctx = random_ctx(m2, rng);
      const AlgebraElement a = random_element(m2, rng), b = random_element(m2, rng);
      CHECK(ctx.self_polar_form(a, a).real() >= -1e-12);
      CHECK(std::abs(ctx.self_polar_form(a, b) - self_polar_quadrature(ctx, a, b)) < 1e-6);
      // positivity on the positive cone: s(a, b) >= 0 for a, b >= 0
      const AlgebraElement ha = random_psd(m2, rng), hb = random_psd(m2, rng);
      CHECK(ctx.self_polar_form(ha, hb).real() >= -1e-12);
    }
  }
}

TEST_CASE("connes cocycles") {
  const auto alg = AlgebraDescriptor({2, 2}, {1.0, 1.5});
  SUBCASE("identical states give 1, and t = 0 gives 1") {
    CounterRng rng(511, "cc");
    const StateDensity phi{random_density(alg, rng)}, psi{random_density(alg, rng)};
    CHECK((connes_cocycle(phi, phi, 0.9) - AlgebraElement::identity(alg)).op_norm() < 1e-12);
    CHECK((connes_cocycle(phi, psi, 0.0) - AlgebraElement::identity(alg)).op_norm() < 1e-12);
  }
  SUBCASE("chain rule and the cocycle identity") {
    for (int k = 0; k < 15; ++k) {
      CounterRng rng(512, "cc-chain", k);
      const StateDensity phi{random_density(alg, rng)}, psi{random_density(alg, rng)},
          theta{random_density(alg, rng)};
      const double s = rng.uniform(-1.5, 1.5), t = rng.uniform(-1.5, 1.5);
      // chain rule at equal times
      const AlgebraElement chain = connes_cocycle(phi, psi, t) * connes_cocycle(psi, theta, t);
      CHECK((chain - connes_cocycle(phi, theta, t)).op_norm() < 1e-10);
      // (Dphi:Dpsi)_{s+t} = (Dphi:Dpsi)_s sigma^psi_s((Dphi:Dpsi)_t)
      const ModularContext ctx(alg, psi);
      const AlgebraElement rhs =
          connes_cocycle(phi, psi, s) * ctx.modular_auto(s, connes_cocycle(phi, psi, t));
      CHECK((connes_cocycle(phi, psi, s + t) - rhs).op_norm() < 1e-10);
    }
  }
}

TEST_CASE("anticocycle identity for antiautomorphisms") {
  const auto m2 = AlgebraDescriptor::full(2);
  SUBCASE("transpose with equal states at any t") {
    CounterRng rng(513, "ac");
    const StateDensity phi{random_density(m2, rng)};
    const auto rep = check_anticocycle(JordanMono::transpose_map(m2), phi, phi, 0.8);
    CHECK(rep.cocycle_residual < 1e-10);
    CHECK(rep.modaut_residual < 1e-10);
  }
  SUBCASE("transpose and unitarily conjugated transpose, random states") {
    for (int k = 0; k < 10; ++k) {
      CounterRng rng(514, "ac-rand", k);
      const StateDensity phi{random_density(m2, rng)}, psi{random_density(m2, rng)};
      JordanMono alpha = JordanMono::transpose_map(m2);
      if (k % 2) alpha.conjugator = random_unitary(m2, rng);
      const auto rep = check_anticocycle(alpha, phi, psi, 0.7);
      CHECK(rep.cocycle_residual <= 1e-10);
      CHECK(rep.modaut_residual <= 1e-10);
    }
  }
  SUBCASE("multiplicative maps are rejected") {
    CounterRng rng(515, "ac-bad");
    const StateDensity phi{random_density(m2, rng)};
    CHECK_THROWS_AS(check_anticocycle(JordanMono::identity_inclusion(m2), phi, phi, 0.5),
                    NotAntiauto);
  }
}

TEST_CASE("cocycle absolute-value relation through a factored projection") {
  // |(D phibar : D psibar)_{-i/2}| = J(|(D phi : D psi)_{-i/2}|)
  const auto j = test::m2_to_m4();
  const auto f = trace_ce(image_bicommutant(j));
  const auto p = build_positive_projection(j, f, 0.5 * AlgebraElement::identity(j.source));
  const Superop jp = j.to_superop().pinv() * p.op;
  for (int k = 0; k < 10; ++k) {
    CounterRng rng(516, "cc-abs", k);
    const StateDensity phi{random_density(j.source, rng)}, psi{random_density(j.source, rng)};
    const AlgebraElement y =
        fc_power(phi.d, 0.5) * support_power(psi.d, -0.5);  // (Dphi:Dpsi)_{-i/2}
    const StateDensity phib = pullback_state(jp, phi), psib = pullback_state(jp, psi);
    const AlgebraElement z = fc_power(phib.d, 0.5) * support_power(psib.d, -0.5);
    const AlgebraElement abs_y = fc_power(y.adjoint() * y, 0.5);
    const AlgebraElement abs_z = fc_power(z.adjoint() * z, 0.5);
    CHECK((abs_z - j.apply(abs_y)).op_norm() <= 1e-8 * std::max(1.0, abs_y.op_norm()));
  }
}

TEST_CASE("haagerup-stormer conditions") {
  const auto j = test::m2_to_m4();
  SUBCASE("tracial state on M_4: conditions hold, P is the pinching average") {
    AlgebraElement d = AlgebraElement::identity(j.target);
    d *= Complex(0.25, 0);
    const auto rep = check_hs_conditions(j, StateDensity{d});
    CHECK(rep.conditions_hold);
    CHECK(rep.cond2_residual < 1e-10);
    CHECK(rep.cond3_residual < 1e-10);
    REQUIRE(rep.projection.has_value());
    const auto f = trace_ce(image_bicommutant(j));
    const auto expected = build_positive_projection(j, f, 0.5 * AlgebraElement::identity(j.source));
    CHECK((rep.projection->op - expected.op).op_norm() < 1e-9);
    CHECK(rep.state_match_residual < 1e-10);
    CHECK(rep.projection_law_residual < 1e-9);
    CHECK(rep.positivity_residual < 1e-9);
  }
  SUBCASE("identity inclusion: everything trivially holds") {
    const auto m2 = AlgebraDescriptor::full(2);
    CounterRng rng(517, "hs-id");
    const auto rep =
        check_hs_conditions(JordanMono::identity_inclusion(m2), StateDensity{random_density(m2, rng)});
    CHECK(rep.conditions_hold);
    REQUIRE(rep.projection.has_value());
    CHECK((rep.projection->op - Superop::identity(m2)).op_norm() < 1e-9);
  }
  SUBCASE("generic state: conditions fail and no valid projection exists") {
    CounterRng rng(518, "hs-neg");
    const auto rep = check_hs_conditions(j, StateDensity{random_density(j.target, rng)});
    CHECK_FALSE(rep.conditions_hold);
    // the failing condition residuals are the certificate: any valid P
    // would force them to vanish
    CHECK(std::max(rep.cond2_residual, rep.cond3_residual) > 1e-3);
    // the unique candidate solving the self-polar system still matches the
    // state and fixes the image, so what it loses is positivity
    CHECK(rep.state_match_residual < 1e-10);
    CHECK(rep.positivity_residual > 1e-6);
  }
  SUBCASE("states of the compatible form pass and recover their projection") {
    for (int k = 0; k < 6; ++k) {
      CounterRng rng(519, "hs-pos", k);
      // psi = phi o J^{-1} o P for a random faithful phi and built P
      const auto f = trace_ce(image_bicommutant(j));
      const double lam = rng.uniform(0.2, 0.8);
      const auto p = build_positive_projection(j, f, lam * AlgebraElement::identity(j.source));
      const StateDensity phi{random_density(j.source, rng)};
      const StateDensity psi = pullback_state(j.to_superop().pinv() * p.op, phi);
      const auto rep = check_hs_conditions(j, psi);
      CHECK(rep.conditions_hold);
      REQUIRE(rep.projection.has_value());
      CHECK((rep.projection->op - p.op).op_norm() < 1e-8);
      CHECK(rep.state_match_residual < 1e-9);
    }
  }
}

TEST_CASE("centralizer check") {
  const auto m2 = AlgebraDescriptor::full(2);
  const auto full = generated_algebra(m2, matrix_unit_basis(m2), true);
  SUBCASE("commuting density centralizes") {
    const auto diag_sub = generated_algebra(
        m2, std::vector<AlgebraElement>{test::diag(m2, {1.0, 0.0}), test::diag(m2, {0.0, 1.0})},
        false);
    const StateDensity phi{test::diag(m2, {0.7, 0.3})};
    CHECK(check_centralizer(phi, diag_sub) < 1e-12);
  }
  SUBCASE("non-tracial density moves the full algebra") {
    const StateDensity phi{test::diag(m2, {0.7, 0.3})};
    CHECK(check_centralizer(phi, full) > 1e-3);
  }
  SUBCASE("block-scalar density centralizes block algebras") {
    const auto alg = AlgebraDescriptor({2, 2}, {1.0, 1.0});
    AlgebraElement d = AlgebraElement::zero(alg);
    d.blocks[0] = 0.4 * Matrix::Identity(2, 2);
    d.blocks[1] = 0.1 * Matrix::Identity(2, 2);
    const auto fullb = generated_algebra(alg, matrix_unit_basis(alg), true);
    CHECK(check_centralizer(StateDensity{d}, fullb) < 1e-12);
  }
}
