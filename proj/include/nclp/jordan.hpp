#pragma once

#include "nclp/algebra.hpp"
#include "nclp/superop.hpp"

namespace nclp {

// Normal Jordan *-monomorphism in constructive form: each slot copies one
// source block into a diagonal sub-block of a target block, either as-is
// (Mult) or transposed (Anti); the whole picture is then conjugated by a
// unitary of the target.  Every finite-dimensional Jordan *-monomorphism
// factors this way.
enum class SlotMode { Mult, Anti };

struct JordanSlot {
  int src_block = 0;
  int dst_block = 0;
  int offset = 0;
  SlotMode mode = SlotMode::Mult;
};

class JordanMono {
 public:
  AlgebraDescriptor source, target;
  std::vector<JordanSlot> slots;
  AlgebraElement conjugator;  // unitary in the target (checked by verify)

  JordanMono() = default;
  // Validates the slot geometry: slots fit in their target blocks, distinct
  // slots occupy disjoint diagonal sub-blocks, every source block appears.
  // Anti slots on 1x1 blocks are normalized to Mult.
  JordanMono(AlgebraDescriptor src, AlgebraDescriptor dst, std::vector<JordanSlot> slot_list,
             AlgebraElement u);
  JordanMono(AlgebraDescriptor src, AlgebraDescriptor dst, std::vector<JordanSlot> slot_list);

  static JordanMono identity_inclusion(const AlgebraDescriptor& alg);
  // The transpose map as a pure-Anti monomorphism of alg onto itself.
  static JordanMono transpose_map(const AlgebraDescriptor& alg);

  AlgebraElement apply(const AlgebraElement& x) const;
  AlgebraElement unit() const;  // J(1)
  Superop to_superop() const;

  // Central projections of the source carrying at least one Mult / Anti slot
  // (abelian blocks count as Mult).
  AlgebraElement mult_support() const;
  AlgebraElement anti_support() const;
};

struct JordanReport {
  double jordan_product_residual = 0.0;
  double star_residual = 0.0;
  double linearity_residual = 0.0;
  bool injectivity_ok = false;
  double min_singular_value = 0.0;
  bool unit_is_projection = false;
  double unit_residual = 0.0;
  bool passed(double tol = 1e-9) const;
};

JordanReport verify_jordan_mono(const JordanMono& j);
// Same residuals for a raw linear action given as a superoperator.
JordanReport verify_jordan_action(const Superop& op);

// Splits the image algebra into its multiplicative and antimultiplicative
// halves: z_mult + z_anti = J(1), both central in the image bicommutant.
// Abelian summands (where both residuals vanish) are assigned to Mult.
struct StructureDecomposition {
  AlgebraElement z_mult, z_anti;
};
StructureDecomposition structure_decompose(const JordanMono& j, double tol = default_tol());

// The von Neumann algebra generated by the image, with unit J(1).
SubalgebraBasis image_bicommutant(const JordanMono& j, double tol = default_tol());

// Matches a raw superoperator that acts as a Jordan *-monomorphism to the
// constructive slot form.  Throws DecompositionFailure when the action is
// not (numerically) a Jordan *-monomorphism or cannot be matched.
JordanMono jordan_from_action(const Superop& op, double tol = default_tol());

// Realizes a concrete *-subalgebra as a standard direct sum of matrix
// blocks; the inclusion is a pure-Mult JordanMono onto the subalgebra and
// the descriptor carries the trace weights pulled back from the parent.
struct StandardForm {
  AlgebraDescriptor algebra;
  JordanMono inclusion;
};
StandardForm standard_form(const SubalgebraBasis& sub, double tol = default_tol());

// Surjective *-antiautomorphism check (pure Anti, bijective).
CheckResult is_antiautomorphism(const JordanMono& j, double tol = default_tol());

}  // namespace nclp
