#include <doctest.h>

#include "test_util.hpp"

using namespace nclp;
using test::diag;
using test::unit;

TEST_CASE("construct_yeadon on the canonical example") {
  const auto j = test::m2_to_m4();
  for (double p : {1.0, 3.0}) {
    const AlgebraElement b =
        std::pow(2.0, -1.0 / p) * AlgebraElement::identity(j.target);
    const YeadonTriple t{AlgebraElement::identity(j.target), b, j, p};
    CHECK(verify_yeadon_triple(t).passed(1e-10));
    const LpMap map = construct_yeadon(t);
    const auto rep = verify_isometry(map, 128, 41);
    CHECK(rep.max_rel_deviation <= 1e-9);
  }
}

TEST_CASE("construct_yeadon identity and invalid data") {
  const auto m2 = AlgebraDescriptor::full(2);
  const auto j = JordanMono::identity_inclusion(m2);
  const YeadonTriple t{AlgebraElement::identity(m2), AlgebraElement::identity(m2), j, 3.0};
  const LpMap map = construct_yeadon(t);
  CHECK((map.op - Superop::identity(m2)).op_norm() < 1e-12);

  // breaking the trace condition must be refused
  YeadonTriple bad = t;
  bad.B = 1.3 * bad.B;
  CHECK_THROWS_AS(construct_yeadon(bad), InvalidTriple);
}

TEST_CASE("verify_isometry flags a scaled map") {
  const auto m2 = AlgebraDescriptor::full(2);
  LpMap t{Superop::identity(m2), 3.0};
  t.op.mat *= 1.01;
  const auto rep = verify_isometry(t, 64, 42);
  CHECK(rep.max_rel_deviation == doctest::Approx(0.01).epsilon(1e-6));
}

TEST_CASE("yeadon isometries over random data") {
  for (double p : {1.0, 1.5, 3.0}) {
    for (int k = 0; k < 8; ++k) {
      CounterRng rng(601, "yeadon-rand", k + static_cast<int>(100 * p));
      const JordanMono j = scenarios::random_mixed_jordan(rng);
      const YeadonTriple t = test::random_yeadon(j, p, rng);
      CHECK(verify_yeadon_triple(t).passed(1e-8));
      const LpMap map = construct_yeadon(t);
      CHECK(verify_isometry(map, 128, 43 + k).max_rel_deviation <= 1e-9);
    }
  }
}

TEST_CASE("orthogonality preservation by constructed isometries") {
  CounterRng rng(602, "orth-pres");
  const JordanMono j = test::m2_to_m4();
  const YeadonTriple t = test::random_yeadon(j, 3.0, rng);
  const LpMap map = construct_yeadon(t);
  for (int k = 0; k < 30; ++k) {
    CounterRng r2(603, "orth-pres-pair", k);
    // orthogonal pair via complementary diagonal corners + common unitaries
    AlgebraElement xi = AlgebraElement::zero(j.source), eta = AlgebraElement::zero(j.source);
    xi.blocks[0](0, 0) = r2.cnormal();
    eta.blocks[0](1, 1) = r2.cnormal();
    const AlgebraElement u = random_unitary(j.source, r2), v = random_unitary(j.source, r2);
    xi = u * xi * v;
    eta = u * eta * v;
    REQUIRE(orthogonal({xi, map.p}, {eta, map.p}).ok);
    CHECK(orthogonal({map.apply(xi), map.p}, {map.apply(eta), map.p}, 1e-9).ok);
  }
}

TEST_CASE("decompose_isometry") {
  SUBCASE("identity decomposes trivially") {
    const auto m2 = AlgebraDescriptor::full(2);
    const auto t = decompose_isometry({Superop::identity(m2), 3.0});
    CHECK((t.w - AlgebraElement::identity(m2)).op_norm() < 1e-10);
    CHECK((t.B - AlgebraElement::identity(m2)).op_norm() < 1e-10);
    CHECK((t.jordan.to_superop() - Superop::identity(m2)).op_norm() < 1e-10);
  }
  SUBCASE("transpose map on M_2 at p = 3 is a pure-Anti triple") {
    const auto m2 = AlgebraDescriptor::full(2);
    const auto tr = JordanMono::transpose_map(m2);
    const auto t = decompose_isometry({tr.to_superop(), 3.0});
    CHECK((t.w - AlgebraElement::identity(m2)).op_norm() < 1e-10);
    CHECK((t.B - AlgebraElement::identity(m2)).op_norm() < 1e-10);
    const auto sd = structure_decompose(t.jordan);
    CHECK(sd.z_mult.op_norm() < 1e-9);
  }
  SUBCASE("round-trip recovers random triples") {
    for (double p : {1.0, 3.0}) {
      for (int k = 0; k < 10; ++k) {
        CounterRng rng(604, "dec-roundtrip", k + static_cast<int>(p));
        const JordanMono j = scenarios::random_mixed_jordan(rng);
        const YeadonTriple t = test::random_yeadon(j, p, rng);
        const LpMap map = construct_yeadon(t);
        const YeadonTriple back = decompose_isometry(map);
        CHECK((back.w - t.w).op_norm() < 1e-8);
        CHECK((back.B - t.B).op_norm() < 1e-8);
        CHECK((back.jordan.to_superop() - t.jordan.to_superop()).op_norm() < 1e-8);
      }
    }
  }
  SUBCASE("a rotation mixing matrix units is L^2-isometric but not Yeadon") {
    const auto m2 = AlgebraDescriptor::full(2);
    const double a = 0.7;
    Superop rot = Superop::identity(m2);
    // rotate in the span of e11, e12 (coordinates 0 and 1)
    rot.mat(0, 0) = std::cos(a);
    rot.mat(0, 1) = -std::sin(a);
    rot.mat(1, 0) = std::sin(a);
    rot.mat(1, 1) = std::cos(a);
    const LpMap t{rot, 2.0};
    CHECK(verify_isometry(t, 64, 44).max_rel_deviation < 1e-10);
    CHECK_THROWS_AS(decompose_isometry(t), DecompositionFailure);
  }
  SUBCASE("non-isometries are rejected up front") {
    const auto m2 = AlgebraDescriptor::full(2);
    LpMap t{Superop::identity(m2), 3.0};
    t.op.mat *= 1.05;
    CHECK_THROWS_AS(decompose_isometry(t), NotIsometry);
  }
}

TEST_CASE("decompose_l1") {
  SUBCASE("identity") {
    const auto m2 = AlgebraDescriptor::full(2);
    const auto t = decompose_l1({Superop::identity(m2), 1.0});
    CHECK((t.w - AlgebraElement::identity(m2)).op_norm() < 1e-10);
    CHECK((t.projection.op - Superop::identity(m2)).op_norm() < 1e-10);
  }
  SUBCASE("unitary phase: T = u . gives w = u, J = id, P = id") {
    const auto m2 = AlgebraDescriptor::full(2);
    AlgebraElement u = AlgebraElement::zero(m2);
    u.blocks[0](0, 0) = Complex(0, 1);
    u.blocks[0](1, 1) = 1.0;
    const LpMap t{Superop::left_multiplier(u), 1.0};
    const auto d = decompose_l1(t);
    CHECK((d.w - u).op_norm() < 1e-9);
    CHECK((d.jordan.to_superop() - Superop::identity(m2)).op_norm() < 1e-9);
    CHECK((d.projection.op - Superop::identity(m2)).op_norm() < 1e-9);
  }
  SUBCASE("agrees with the Yeadon route on random L^1 isometries") {
    for (int k = 0; k < 8; ++k) {
      CounterRng rng(605, "l1-cross", k);
      const JordanMono j = scenarios::random_mixed_jordan(rng);
      const YeadonTriple t = test::random_yeadon(j, 1.0, rng);
      const LpMap map = construct_yeadon(t);
      const TypicalTriple via_l1 = decompose_l1(map);
      const TypicalTriple via_yeadon = yeadon_to_typical(decompose_isometry(map));
      CHECK((via_l1.w - via_yeadon.w).op_norm() < 1e-8);
      CHECK((via_l1.jordan.to_superop() - via_yeadon.jordan.to_superop()).op_norm() < 1e-8);
      CHECK((via_l1.projection.op - via_yeadon.projection.op).op_norm() < 1e-8);
    }
  }
}

TEST_CASE("typical/yeadon conversions") {
  SUBCASE("M_2 -> M_4 with lambda = 1/2 corresponds to B = 2^{-1/p}") {
    const auto j = test::m2_to_m4();
    for (double p : {1.0, 3.0}) {
      const auto f = trace_ce(image_bicommutant(j));
      const auto proj = build_positive_projection(j, f, 0.5 * AlgebraElement::identity(j.source));
      const TypicalTriple t{AlgebraElement::identity(j.target), j, proj, p};
      const YeadonTriple y = typical_to_yeadon(t);
      CHECK((y.B - std::pow(2.0, -1.0 / p) * AlgebraElement::identity(j.target)).op_norm() <
            1e-9);
      const TypicalTriple back = yeadon_to_typical(y);
      CHECK((back.projection.op - proj.op).op_norm() < 1e-9);
    }
  }
  SUBCASE("lambda = 2/3 gives block weights (2/3, 1/3)^{1/p}") {
    const auto j = test::m2_to_m4();
    const double p = 2.5;
    const auto f = trace_ce(image_bicommutant(j));
    const auto proj =
        build_positive_projection(j, f, (2.0 / 3.0) * AlgebraElement::identity(j.source));
    const TypicalTriple t{AlgebraElement::identity(j.target), j, proj, p};
    const YeadonTriple y = typical_to_yeadon(t);
    const double a = std::pow(2.0 / 3.0, 1.0 / p), b = std::pow(1.0 / 3.0, 1.0 / p);
    CHECK((y.B - diag(j.target, {a, a, b, b})).op_norm() < 1e-9);
  }
  SUBCASE("round-trips on random data") {
    for (int k = 0; k < 8; ++k) {
      CounterRng rng(606, "conv-roundtrip", k);
      const JordanMono j = scenarios::random_mixed_jordan(rng);
      const YeadonTriple y = test::random_yeadon(j, 3.0, rng);
      const TypicalTriple t = yeadon_to_typical(y);
      const YeadonTriple back = typical_to_yeadon(t);
      CHECK((back.B - y.B).op_norm() < 1e-9);
      CHECK((back.w - y.w).op_norm() < 1e-12);
    }
  }
}

TEST_CASE("construct_typical") {
  SUBCASE("identity data give the identity map") {
    const auto m2 = AlgebraDescriptor::full(2);
    const auto j = JordanMono::identity_inclusion(m2);
    PositiveProjection p;
    p.parent = m2;
    p.jordan = j;
    p.op = Superop::identity(m2);
    const TypicalTriple t{AlgebraElement::identity(m2), j, p, 3.0};
    CHECK((construct_typical(t).op - Superop::identity(m2)).op_norm() < 1e-9);
  }
  SUBCASE("positive cone formula on the canonical example at p = 1") {
    const auto j = test::m2_to_m4();
    const auto f = trace_ce(image_bicommutant(j));
    const auto proj = build_positive_projection(j, f, 0.5 * AlgebraElement::identity(j.source));
    const TypicalTriple t{AlgebraElement::identity(j.target), j, proj, 1.0};
    const LpMap map = construct_typical(t);
    CounterRng rng(607, "ct-p1");
    const AlgebraElement h = random_psd(j.source, rng);
    // at p = 1 a positive h maps to diag(h, h^t)/2
    const AlgebraElement expected = 0.5 * j.apply(h);
    CHECK((map.apply(h) - expected).op_norm() < 1e-9);
    CHECK(lp_norm(map.apply(h), 1.0) == doctest::Approx(lp_norm(h, 1.0)).epsilon(1e-10));
  }
  SUBCASE("agreement with construct_yeadon across conversions") {
    for (double p : {1.0, 1.5, 3.0, 4.0}) {
      for (int k = 0; k < 5; ++k) {
        CounterRng rng(608, "ct-agree", k + static_cast<int>(10 * p));
        const JordanMono j = scenarios::random_mixed_jordan(rng);
        const YeadonTriple y = test::random_yeadon(j, p, rng);
        const TypicalTriple t = yeadon_to_typical(y);
        const LpMap via_typical = construct_typical(t);
        const LpMap via_yeadon = construct_yeadon(y);
        CHECK((via_typical.op - via_yeadon.op).op_norm() < 1e-9);
      }
    }
  }
}

TEST_CASE("embed_via_ce") {
  SUBCASE("identity expectation embeds as the identity") {
    const auto m2 = AlgebraDescriptor::full(2);
    const auto full = generated_algebra(m2, matrix_unit_basis(m2), true);
    const auto e = trace_ce(full);
    const auto emb = embed_via_ce(e, 3.0);
    // the standard form may reshuffle coordinates; the composite with the
    // inclusion must be the identity on the parent
    const Superop incl = emb.domain.inclusion.to_superop();
    CHECK(((emb.map.op * incl.pinv()) - Superop::identity(m2)).op_norm() < 1e-8);
  }
  SUBCASE("diagonal pinching embedding is isometric and duality-preserving") {
    const auto m2 = AlgebraDescriptor::full(2);
    std::vector<AlgebraElement> gens{diag(m2, {1.0, 0.0}), diag(m2, {0.0, 1.0})};
    const auto e = trace_ce(generated_algebra(m2, gens, false));
    const double p = 3.0, q = 1.5;
    const auto emb_p = embed_via_ce(e, p);
    const auto emb_q = embed_via_ce(e, q);
    CHECK(verify_isometry(emb_p.map, 128, 45).max_rel_deviation <= 1e-10);
    for (int k = 0; k < 30; ++k) {
      CounterRng rng(609, "ce-duality", k);
      const AlgebraElement xi = random_element(emb_p.domain.algebra, rng);
      const AlgebraElement eta = random_element(emb_q.domain.algebra, rng);
      const Complex before = dual_pairing({xi, p}, {eta, q});
      const Complex after = dual_pairing({emb_p.map.apply(xi), p}, {emb_q.map.apply(eta), q});
      CHECK(std::abs(before - after) < 1e-10 * std::max(1.0, std::abs(before)));
    }
  }
  SUBCASE("matches construct_typical with J = inclusion, P = E, w = 1") {
    const auto alg = AlgebraDescriptor({3}, {1.0});
    std::vector<AlgebraElement> gens{diag(alg, {1.0, 1.0, 0.0}), diag(alg, {0.0, 0.0, 1.0}),
                                     unit(alg, 0, 0, 1), unit(alg, 0, 1, 0)};
    const auto e = trace_ce(generated_algebra(alg, gens, false));
    const double p = 2.5;
    const auto emb = embed_via_ce(e, p);
    PositiveProjection proj;
    proj.parent = alg;
    proj.jordan = emb.domain.inclusion;
    proj.op = e.op;
    const TypicalTriple t{e.range.unit, emb.domain.inclusion, proj, p};
    CHECK((construct_typical(t).op - emb.map.op).op_norm() < 1e-9);
  }
}

TEST_CASE("isometry_from_antiiso") {
  const auto m2 = AlgebraDescriptor::full(2);
  SUBCASE("transpose with the tracial reference is the transpose map") {
    const auto t = isometry_from_antiiso(JordanMono::transpose_map(m2), 1.0);
    CHECK((t.op - JordanMono::transpose_map(m2).to_superop()).op_norm() < 1e-10);
    CHECK(verify_isometry(t, 64, 46).max_rel_deviation <= 1e-10);
  }
  SUBCASE("independence of the reference state") {
    for (int k = 0; k < 8; ++k) {
      CounterRng rng(610, "anti-state", k);
      JordanMono alpha = JordanMono::transpose_map(m2);
      if (k % 2) alpha.conjugator = random_unitary(m2, rng);
      const StateDensity phi{random_density(m2, rng)}, psi{random_density(m2, rng)};
      const auto t1 = isometry_from_antiiso(alpha, 3.0, &phi);
      const auto t2 = isometry_from_antiiso(alpha, 3.0, &psi);
      CHECK((t1.op - t2.op).op_norm() < 1e-10);
      CHECK(verify_isometry(t1, 64, 47 + k).max_rel_deviation <= 1e-9);
    }
  }
  SUBCASE("multiplicative maps are rejected") {
    CHECK_THROWS_AS(isometry_from_antiiso(JordanMono::identity_inclusion(m2), 2.0), NotAntiauto);
  }
}

TEST_CASE("symmetric embedding") {
  SUBCASE("identity data give the identity and its inverse") {
    const auto m2 = AlgebraDescriptor::full(2);
    const auto j = JordanMono::identity_inclusion(m2);
    PositiveProjection p;
    p.parent = m2;
    p.jordan = j;
    p.op = Superop::identity(m2);
    CounterRng rng(611, "se-id");
    const StateDensity phi{random_density(m2, rng)};
    const auto se = symmetric_embedding(j, p, phi, 3.0);
    CHECK((se.embed.op - Superop::identity(m2)).op_norm() < 1e-9);
    CHECK((se.project.op - Superop::identity(m2)).op_norm() < 1e-9);
  }
  SUBCASE("matches construct_typical (w = 1) and is state-independent") {
    for (double p : {1.0, 2.5}) {
      for (int k = 0; k < 6; ++k) {
        CounterRng rng(612, "se-agree", k + static_cast<int>(p * 10));
        const JordanMono j = scenarios::random_mixed_jordan(rng);
        const auto f = test::random_ce_onto_image(j, rng);
        const AlgebraElement lam = test::random_lambda(j, rng);
        const auto proj = build_positive_projection(j, f, lam);
        const StateDensity phi{random_density(j.source, rng)};
        const auto se = symmetric_embedding(j, proj, phi, p);
        const TypicalTriple t{j.unit(), j, proj, p};
        CHECK((se.embed.op - construct_typical(t).op).op_norm() < 1e-9);
        // second reference state gives the same embedding
        const StateDensity psi{random_density(j.source, rng)};
        const auto se2 = symmetric_embedding(j, proj, psi, p);
        CHECK((se.embed.op - se2.embed.op).op_norm() < 1e-9);
        // companion is a norm-one left inverse
        CHECK(((se.project.op * se.embed.op) - Superop::identity(j.source)).op_norm() < 1e-8);
        double sup = 0.0;
        for (int s = 0; s < 40; ++s) {
          CounterRng r3(613, "se-norm", s);
          const AlgebraElement y = random_element(j.target, r3);
          const double ny = lp_norm(y, p);
          if (ny > 1e-9) sup = std::max(sup, lp_norm(se.project.apply(y), p) / ny);
        }
        CHECK(sup <= 1.0 + 1e-9);
      }
    }
  }
}

TEST_CASE("uniqueness of typical data") {
  SUBCASE("identity is unique") {
    const auto m2 = AlgebraDescriptor::full(2);
    CHECK(uniqueness_roundtrip({Superop::identity(m2), 3.0}).unique);
    CHECK(uniqueness_roundtrip({Superop::identity(m2), 1.0}).unique);
  }
  SUBCASE("random typical maps recover the normalized triple") {
    for (double p : {1.0, 3.0}) {
      for (int k = 0; k < 6; ++k) {
        CounterRng rng(614, "uniq", k + static_cast<int>(p));
        const JordanMono j = scenarios::random_mixed_jordan(rng);
        const YeadonTriple y = test::random_yeadon(j, p, rng);
        const LpMap map = construct_yeadon(y);
        const auto rep = uniqueness_roundtrip(map);
        CHECK(rep.unique);
        CHECK(rep.w_deviation < 1e-8);
        CHECK(rep.jordan_deviation < 1e-8);
        CHECK(rep.projection_deviation < 1e-8);
      }
    }
  }
}
