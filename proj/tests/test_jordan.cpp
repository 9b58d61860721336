#include <doctest.h>

#include "test_util.hpp"

using namespace nclp;
using test::diag;
using test::unit;

namespace {

// random slot-form Jordan monomorphism between small algebras
JordanMono random_jordan(CounterRng& rng, bool force_mixed = false) {
  // source M_2, or M_1 + M_2; target large enough for a couple of slots
  const bool small_src = !force_mixed && rng.uniform() < 0.3;
  const AlgebraDescriptor src = small_src
                                    ? AlgebraDescriptor({1, 2}, {rng.uniform(0.5, 2.0), 1.0})
                                    : AlgebraDescriptor::full(2, rng.uniform(0.5, 2.0));
  std::vector<JordanSlot> slots;
  AlgebraDescriptor dst;
  if (small_src) {
    dst = AlgebraDescriptor({3, 2}, {1.0, rng.uniform(0.5, 2.0)});
    slots = {{0, 0, 0, SlotMode::Mult},
             {1, 0, 1, rng.uniform() < 0.5 ? SlotMode::Mult : SlotMode::Anti},
             {1, 1, 0, SlotMode::Anti}};
  } else if (force_mixed || rng.uniform() < 0.6) {
    dst = AlgebraDescriptor::full(4, rng.uniform(0.5, 2.0));
    slots = {{0, 0, 0, SlotMode::Mult}, {0, 0, 2, SlotMode::Anti}};
  } else {
    dst = AlgebraDescriptor({2, 2, 1}, {1.0, 1.5, 1.0});
    slots = {{0, 0, 0, SlotMode::Mult}, {0, 1, 0, SlotMode::Anti}};
  }
  return JordanMono(src, dst, slots, random_unitary(dst, rng));
}

}  // namespace

TEST_CASE("jordan apply on the canonical M_2 -> M_4 example") {
  const auto j = test::m2_to_m4();
  const AlgebraElement x = unit(j.source, 0, 0, 1);  // e12
  const AlgebraElement jx = j.apply(x);
  AlgebraElement expected = AlgebraElement::zero(j.target);
  expected.blocks[0](0, 1) = 1.0;  // e12 in the first corner
  expected.blocks[0](3, 2) = 1.0;  // its transpose in the second
  CHECK((jx - expected).op_norm() < 1e-14);
}

TEST_CASE("identity inclusion acts as identity") {
  const auto alg = AlgebraDescriptor({2, 2}, {1.0, 2.0});
  const auto j = JordanMono::identity_inclusion(alg);
  CounterRng rng(301, "jid");
  const AlgebraElement x = random_element(alg, rng);
  CHECK((j.apply(x) - x).op_norm() < 1e-14);
}

TEST_CASE("random Jordan monos preserve the Jordan product") {
  for (int k = 0; k < 30; ++k) {
    CounterRng rng(302, "jrand", k);
    const auto j = random_jordan(rng);
    const AlgebraElement x = random_element(j.source, rng), y = random_element(j.source, rng);
    const AlgebraElement lhs = j.apply(0.5 * (x * y + y * x));
    const AlgebraElement jx = j.apply(x), jy = j.apply(y);
    const AlgebraElement rhs = 0.5 * (jx * jy + jy * jx);
    CHECK((lhs - rhs).op_norm() <= 1e-10 * std::max(1.0, x.op_norm() * y.op_norm()));
    // Jordan monomorphisms are isometric for the operator norm
    CHECK(j.apply(x).op_norm() == doctest::Approx(x.op_norm()).epsilon(1e-10));
  }
}

TEST_CASE("verify_jordan_mono on positive and negative examples") {
  SUBCASE("the M_2 -> M_4 example passes") {
    const auto rep = verify_jordan_mono(test::m2_to_m4());
    CHECK(rep.jordan_product_residual <= 1e-12);
    CHECK(rep.star_residual <= 1e-12);
    CHECK(rep.injectivity_ok);
    CHECK(rep.unit_is_projection);
  }
  SUBCASE("x -> x (+) x into M_2 + M_2 passes") {
    const auto m2 = AlgebraDescriptor::full(2);
    const auto m22 = AlgebraDescriptor({2, 2}, {1.0, 1.0});
    const JordanMono j(m2, m22, {{0, 0, 0, SlotMode::Mult}, {0, 1, 0, SlotMode::Mult}});
    CHECK(verify_jordan_mono(j).passed());
  }
  SUBCASE("a non-unitary conjugator is caught") {
    auto j = test::m2_to_m4();
    CounterRng rng(303, "corrupt");
    j.conjugator = AlgebraElement::identity(j.target) + 0.3 * random_hermitian(j.target, rng);
    const auto rep = verify_jordan_mono(j);
    CHECK(rep.jordan_product_residual > 1e-3);
  }
}

TEST_CASE("structure decomposition") {
  SUBCASE("M_2 -> M_4 example splits into the two corners") {
    const auto j = test::m2_to_m4();
    const auto sd = structure_decompose(j);
    CHECK((sd.z_mult - test::diag(j.target, {1, 1, 0, 0})).op_norm() < 1e-9);
    CHECK((sd.z_anti - test::diag(j.target, {0, 0, 1, 1})).op_norm() < 1e-9);
  }
  SUBCASE("identity inclusion is all multiplicative") {
    const auto alg = AlgebraDescriptor({3}, {1.0});
    const auto sd = structure_decompose(JordanMono::identity_inclusion(alg));
    CHECK((sd.z_mult - AlgebraElement::identity(alg)).op_norm() < 1e-9);
    CHECK(sd.z_anti.op_norm() < 1e-9);
  }
  SUBCASE("pure transpose is all antimultiplicative") {
    const auto alg = AlgebraDescriptor::full(3);
    const auto sd = structure_decompose(JordanMono::transpose_map(alg));
    CHECK(sd.z_mult.op_norm() < 1e-9);
    CHECK((sd.z_anti - AlgebraElement::identity(alg)).op_norm() < 1e-9);
  }
  SUBCASE("abelian blocks default to the multiplicative side") {
    const auto src = AlgebraDescriptor({1}, {1.0});
    const auto dst = AlgebraDescriptor({2}, {1.0});
    const JordanMono j(src, dst, {{0, 0, 0, SlotMode::Mult}, {0, 0, 1, SlotMode::Anti}});
    const auto sd = structure_decompose(j);
    CHECK((sd.z_mult - j.unit()).op_norm() < 1e-9);
    CHECK(sd.z_anti.op_norm() < 1e-9);
  }
  SUBCASE("mult and anti supports are orthogonal and sum to J(1)") {
    for (int k = 0; k < 12; ++k) {
      CounterRng rng(304, "sd-prop", k);
      const auto j = random_jordan(rng);
      const auto sd = structure_decompose(j);
      CHECK((sd.z_mult * sd.z_anti).op_norm() < 1e-9);
      CHECK((sd.z_mult + sd.z_anti - j.unit()).op_norm() < 1e-9);
      // stability under a change of conjugator
      CounterRng rng2(305, "sd-gauge", k);
      JordanMono jg = j;
      const AlgebraElement u = random_unitary(j.target, rng2);
      jg.conjugator = u * j.conjugator;
      const auto sdg = structure_decompose(jg);
      CHECK((sdg.z_mult - u * sd.z_mult * u.adjoint()).op_norm() < 1e-8);
    }
  }
}

TEST_CASE("image bicommutant dimensions") {
  CHECK(image_bicommutant(test::m2_to_m4()).dim() == 8);
  CHECK(image_bicommutant(JordanMono::identity_inclusion(AlgebraDescriptor::full(3))).dim() == 9);
  // multiplicity-2 Mult slots into M_6: image generates one M_2 copy
  const auto m2 = AlgebraDescriptor::full(2);
  const auto m6 = AlgebraDescriptor::full(6);
  const JordanMono j(m2, m6, {{0, 0, 0, SlotMode::Mult}, {0, 0, 2, SlotMode::Mult}});
  CHECK(image_bicommutant(j).dim() == 4);
}

TEST_CASE("jordan_from_action round-trips random slot maps") {
  for (int k = 0; k < 25; ++k) {
    CounterRng rng(306, "jfa", k);
    const auto j = random_jordan(rng, k % 3 == 0);
    const Superop op = j.to_superop();
    const JordanMono back = jordan_from_action(op);
    CHECK((back.to_superop() - op).op_norm() < 1e-8);
    CHECK(back.source == j.source);
    CHECK(back.target.block_dims == j.target.block_dims);
  }
}

TEST_CASE("jordan_from_action rejects a non-Jordan action") {
  const auto m2 = AlgebraDescriptor::full(2);
  CounterRng rng(307, "jfa-bad");
  Superop op = JordanMono::identity_inclusion(m2).to_superop();
  op.mat(1, 2) += 0.05;  // breaks multiplicativity
  CHECK_THROWS_AS(jordan_from_action(op), DecompositionFailure);
}

TEST_CASE("standard form of concrete subalgebras") {
  SUBCASE("diagonal subalgebra of M_2") {
    const auto m2 = AlgebraDescriptor::full(2);
    std::vector<AlgebraElement> gens{diag(m2, {1.0, 0.0}), diag(m2, {0.0, 1.0})};
    const auto sub = generated_algebra(m2, gens, false);
    const auto sf = standard_form(sub);
    CHECK(sf.algebra.block_dims == std::vector<int>{1, 1});
    CHECK(verify_jordan_mono(sf.inclusion).passed(1e-8));
  }
  SUBCASE("image bicommutant of the M_2 -> M_4 example is M_2 + M_2") {
    const auto sub = image_bicommutant(test::m2_to_m4());
    const auto sf = standard_form(sub);
    CHECK(sf.algebra.block_dims == std::vector<int>{2, 2});
    // inclusion hits the span: every image basis element reconstructs
    for (const auto& b : sub.basis) {
      const Superop incl = sf.inclusion.to_superop();
      const AlgebraElement back = incl.apply(incl.pinv().apply(b));
      CHECK((back - b).op_norm() < 1e-8);
    }
  }
  SUBCASE("multiplicity-two copy of M_2 inside M_4") {
    const auto m2 = AlgebraDescriptor::full(2);
    const auto m4 = AlgebraDescriptor::full(4);
    const JordanMono j(m2, m4, {{0, 0, 0, SlotMode::Mult}, {0, 0, 2, SlotMode::Mult}});
    CounterRng rng(308, "sf-mult");
    JordanMono jg = j;
    jg.conjugator = random_unitary(m4, rng);
    const auto sub = image_bicommutant(jg);
    const auto sf = standard_form(sub);
    CHECK(sf.algebra.block_dims == std::vector<int>{2});
    CHECK(sf.algebra.trace_weights[0] == doctest::Approx(2.0));  // each minimal projection has rank 2
  }
}

TEST_CASE("antiautomorphism recognition") {
  const auto m2 = AlgebraDescriptor::full(2);
  CHECK(is_antiautomorphism(JordanMono::transpose_map(m2)).ok);
  CHECK_FALSE(is_antiautomorphism(JordanMono::identity_inclusion(m2)).ok);
  CHECK_FALSE(is_antiautomorphism(test::m2_to_m4()).ok);
  CounterRng rng(309, "anti");
  JordanMono t = JordanMono::transpose_map(m2);
  t.conjugator = random_unitary(m2, rng);
  CHECK(is_antiautomorphism(t).ok);
}
